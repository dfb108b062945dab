#include "pnglab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pnglab/errors.hpp"
#include "pnglab/rng.hpp"

namespace pnglab::sampler {

namespace {

using rng::CounterRng;

// Knuth's product method, chunked so exp(-lambda) never underflows.
std::int64_t poisson(CounterRng& g, double lambda) {
    std::int64_t total = 0;
    while (lambda > 0.0) {
        const double chunk = std::min(lambda, 500.0);
        const double limit = std::exp(-chunk);
        double prod = g.next_open01();
        while (prod > limit) {
            ++total;
            prod *= g.next_open01();
        }
        lambda -= chunk;
    }
    return total;
}

// g(p): P(k) = (1-p) p^k, sampled by inversion floor(ln U / ln p).
std::int64_t geometric(CounterRng& g, double p) {
    if (p <= 0.0) return 0;
    return (std::int64_t)std::floor(std::log(g.next_open01()) / std::log(p));
}

}  // namespace

PointConfiguration sample_png_config(double t, double alpha_plus, double alpha_minus,
                                     std::uint64_t seed, std::uint64_t index) {
    if (!(t > 0.0) || alpha_plus < 0.0 || alpha_minus < 0.0)
        throw std::invalid_argument("sample_png_config: need t > 0 and alpha_pm >= 0");
    CounterRng g(seed, index, /*stream=*/1);
    PointConfiguration cfg;
    const std::int64_t n_int = poisson(g, t * t);
    const std::int64_t n_bot = poisson(g, alpha_plus * t);
    const std::int64_t n_left = poisson(g, alpha_minus * t);
    cfg.interior.reserve((std::size_t)n_int);
    for (std::int64_t i = 0; i < n_int; ++i) {
        const double x = g.next_open01();
        const double y = g.next_open01();
        cfg.interior.emplace_back(x, y);
    }
    cfg.bottom.reserve((std::size_t)n_bot);
    for (std::int64_t i = 0; i < n_bot; ++i) cfg.bottom.push_back(g.next_open01());
    cfg.left.reserve((std::size_t)n_left);
    for (std::int64_t i = 0; i < n_left; ++i) cfg.left.push_back(g.next_open01());
    return cfg;
}

std::size_t longest_weak_chain(const PointConfiguration& cfg) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(cfg.interior.size() + cfg.bottom.size() + cfg.left.size());
    for (const auto& p : cfg.interior) pts.push_back(p);
    for (double x : cfg.bottom) pts.emplace_back(x, 0.0);
    for (double y : cfg.left) pts.emplace_back(0.0, y);
    std::sort(pts.begin(), pts.end());
    // Longest non-decreasing subsequence in y via patience sorting.
    std::vector<double> tails;
    for (const auto& p : pts) {
        auto it = std::upper_bound(tails.begin(), tails.end(), p.second);
        if (it == tails.end())
            tails.push_back(p.second);
        else
            *it = p.second;
    }
    return tails.size();
}

LppInstance sample_lpp(std::size_t n, double q, double alpha_plus, double alpha_minus,
                       std::uint64_t seed, std::uint64_t index) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("sample_lpp: need 0 < q < 1");
    if (n == 0) throw std::invalid_argument("sample_lpp: need n >= 1");
    const double sq = std::sqrt(q);
    if (alpha_plus < 0.0 || alpha_minus < 0.0 || alpha_plus * sq >= 1.0 ||
        alpha_minus * sq >= 1.0)
        throw std::invalid_argument(
            "sample_lpp: geometric parameter alpha_pm sqrt(q) must lie in [0, 1)");
    CounterRng g(seed, index, /*stream=*/2);
    LppInstance inst;
    inst.n = n;
    inst.q = q;
    inst.alpha_plus = alpha_plus;
    inst.alpha_minus = alpha_minus;
    inst.weights.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            if (i == 0 && j == 0) continue;  // w(0,0) = 0
            const double p = (i == 0)   ? alpha_plus * sq
                             : (j == 0) ? alpha_minus * sq
                                        : q;
            inst.weights[i][j] = geometric(g, p);
        }
    }
    // Corner variate for the X+ construction, drawn from the same stream so
    // paired (X, X+) samples share the random field. Unusable (and unused)
    // when alpha_plus * alpha_minus >= 1.
    const double pc = alpha_plus * alpha_minus;
    inst.corner_weight = (pc < 1.0) ? geometric(g, pc) : 0;
    return inst;
}

std::int64_t lpp_last_passage(const LppInstance& inst, bool include_corner_weight) {
    if (include_corner_weight && inst.alpha_plus * inst.alpha_minus >= 1.0)
        throw std::invalid_argument(
            "lpp_last_passage: corner weight needs alpha_plus * alpha_minus < 1");
    const std::size_t m = inst.n + 1;
    if (inst.weights.size() != m)
        throw std::invalid_argument("lpp_last_passage: malformed instance");
    std::vector<std::int64_t> row(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (inst.weights[i].size() != m)
            throw std::invalid_argument("lpp_last_passage: malformed instance");
        for (std::size_t j = 0; j < m; ++j) {
            std::int64_t best = 0;
            if (i > 0 && j > 0)
                best = std::max(row[j], row[j - 1]);
            else if (i > 0)
                best = row[j];
            else if (j > 0)
                best = row[j - 1];
            row[j] = inst.weights[i][j] + best;
            if (i == 0 && j == 0 && include_corner_weight) row[j] += inst.corner_weight;
        }
    }
    return row[m - 1];
}

namespace {

struct TasepCtx {
    std::vector<bool>& occ;
    std::int64_t lo;
    std::int64_t hi;
    bool at(std::int64_t s) const { return occ[(std::size_t)(s - lo)]; }
    void set(std::int64_t s, bool v) { occ[(std::size_t)(s - lo)] = v; }
};

}  // namespace

TasepState tasep_run(double q, double alpha_plus, double alpha_minus,
                     std::int64_t steps, std::int64_t window_halfwidth,
                     TasepRule rule, std::uint64_t seed, std::uint64_t index) {
    const double sq = std::sqrt(q);
    const double p_bulk = 1.0 - q;
    const double p_right = 1.0 - alpha_plus * sq;
    const double p_hole = 1.0 - alpha_minus * sq;
    if (!(q >= 0.0 && q <= 1.0) || p_right < 0.0 || p_right > 1.0 || p_hole < 0.0 ||
        p_hole > 1.0)
        throw std::invalid_argument("tasep_run: jump probabilities must lie in [0, 1]");
    if (steps < 0 || window_halfwidth < 2)
        throw std::invalid_argument("tasep_run: need steps >= 0, window_halfwidth >= 2");

    TasepState st;
    st.site_lo = -window_halfwidth;
    st.site_hi = window_halfwidth;
    st.q = q;
    st.alpha_plus = alpha_plus;
    st.alpha_minus = alpha_minus;
    st.occupied.assign((std::size_t)(2 * window_halfwidth + 1), false);
    TasepCtx c{st.occupied, st.site_lo, st.site_hi};
    for (std::int64_t s = st.site_lo; s <= -2; ++s) c.set(s, true);
    c.set(0, true);

    CounterRng g(seed, index, /*stream=*/3);
    for (std::int64_t step = 0; step < steps; ++step) {
        std::int64_t rightmost = st.site_lo - 1;
        for (std::int64_t s = st.site_hi; s >= st.site_lo; --s)
            if (c.at(s)) {
                rightmost = s;
                break;
            }
        std::int64_t hole = st.site_hi + 1;
        for (std::int64_t s = st.site_lo; s <= st.site_hi; ++s)
            if (!c.at(s)) {
                hole = s;
                break;
            }
        if (rightmost >= st.site_hi)
            throw window_overflow_error("tasep_run: rightmost particle reached window edge");
        if (hole <= st.site_lo)
            throw window_overflow_error("tasep_run: leftmost hole reached window edge");

        // Jump probability by role, with the roles fixed at the start of
        // the step. The rightmost particle and the particle behind the
        // leftmost hole can never coincide from this initial condition.
        const auto jump_prob = [&](std::int64_t s) {
            if (s == rightmost) return p_right;
            if (s == hole - 1) return p_hole;
            return p_bulk;
        };
        if (rule == TasepRule::sequential_right_to_left) {
            for (std::int64_t s = rightmost; s >= st.site_lo; --s) {
                if (!c.at(s) || c.at(s + 1)) continue;
                if (g.next_bernoulli(jump_prob(s))) {
                    c.set(s, false);
                    c.set(s + 1, true);
                }
            }
        } else {
            std::vector<std::int64_t> movers;
            for (std::int64_t s = rightmost; s >= st.site_lo; --s) {
                if (!c.at(s) || c.at(s + 1)) continue;
                if (g.next_bernoulli(jump_prob(s))) movers.push_back(s);
            }
            for (std::int64_t s : movers) {
                c.set(s, false);
                c.set(s + 1, true);
            }
        }
        ++st.time;
    }
    if (c.at(st.site_hi))
        throw window_overflow_error("tasep_run: rightmost particle reached window edge");
    if (!c.at(st.site_lo))
        throw window_overflow_error("tasep_run: leftmost hole reached window edge");
    return st;
}

}  // namespace pnglab::sampler
