#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pnglab/errors.hpp"
#include "pnglab/rng.hpp"
#include "pnglab/sampler.hpp"

using namespace pnglab;
using namespace pnglab::sampler;

namespace {

// Brute-force longest-chain oracle: longest path in the weak-dominance DAG
// over all points, with memoized DFS; also reports whether some maximum
// chain avoids mixing bottom-edge and left-edge points.
struct OraclePoint {
    double x, y;
    int kind;  // 0 interior, 1 bottom, 2 left
};

struct Oracle {
    std::vector<OraclePoint> pts;
    std::vector<int> memo;        // longest chain starting at i
    std::vector<int> mask_memo;   // edge kinds used by one such chain

    bool leq(std::size_t i, std::size_t j) const {  // i weakly before j
        return pts[i].x <= pts[j].x && pts[i].y <= pts[j].y;
    }
    std::pair<int, int> best_from(std::size_t i) {
        if (memo[i] >= 0) return {memo[i], mask_memo[i]};
        int best = 1;
        int mask = (pts[i].kind == 1) ? 1 : (pts[i].kind == 2) ? 2 : 0;
        int base_mask = mask;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i || !leq(i, j)) continue;
            if (leq(j, i) && j < i) continue;  // tie-break identical points
            auto [l, m] = best_from(j);
            if (1 + l > best) {
                best = 1 + l;
                mask = base_mask | m;
            }
        }
        memo[i] = best;
        mask_memo[i] = mask;
        return {best, mask};
    }
};

std::pair<int, int> brute_force_chain(const PointConfiguration& cfg) {
    Oracle o;
    for (const auto& p : cfg.interior) o.pts.push_back({p.first, p.second, 0});
    for (double x : cfg.bottom) o.pts.push_back({x, 0.0, 1});
    for (double y : cfg.left) o.pts.push_back({0.0, y, 2});
    o.memo.assign(o.pts.size(), -1);
    o.mask_memo.assign(o.pts.size(), 0);
    int best = 0, mask = 0;
    for (std::size_t i = 0; i < o.pts.size(); ++i) {
        auto [l, m] = o.best_from(i);
        if (l > best) {
            best = l;
            mask = m;
        }
    }
    return {best, mask};
}

}  // namespace

TEST_CASE("sample_png_config determinism and trivial cases") {
    const auto a = sample_png_config(5.0, 1.0, 0.5, 42, 7);
    const auto b = sample_png_config(5.0, 1.0, 0.5, 42, 7);
    CHECK(a.interior == b.interior);
    CHECK(a.bottom == b.bottom);
    CHECK(a.left == b.left);
    const auto c = sample_png_config(5.0, 1.0, 0.5, 42, 8);
    CHECK(a.interior != c.interior);

    const auto tiny = sample_png_config(1e-9, 1.0, 1.0, 1, 0);
    CHECK(tiny.interior.empty());
    CHECK(tiny.bottom.empty());
    CHECK(tiny.left.empty());

    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto cfg = sample_png_config(10.0, 0.0, 0.0, 3, i);
        CHECK(cfg.bottom.empty());
        CHECK(cfg.left.empty());
    }

    for (const auto& p : a.interior) {
        CHECK((p.first > 0.0 && p.first < 1.0));
        CHECK((p.second > 0.0 && p.second < 1.0));
    }
}

TEST_CASE("sample_png_config Poisson mean") {
    const std::size_t reps = 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i)
        sum += (double)sample_png_config(5.0, 0.0, 0.0, 2024, i).interior.size();
    const double mean = sum / (double)reps;
    CHECK(std::abs(mean - 25.0) < 3.0 * 5.0 / std::sqrt((double)reps));
}

TEST_CASE("longest_weak_chain examples") {
    CHECK(longest_weak_chain({}) == 0);

    PointConfiguration edge;
    edge.bottom = {0.1, 0.4, 0.7};
    CHECK(longest_weak_chain(edge) == 3);

    PointConfiguration mixed;
    mixed.interior = {{0.3, 0.2}, {0.5, 0.6}, {0.7, 0.4}};
    mixed.bottom = {0.1, 0.4};
    mixed.left = {0.25};
    CHECK(longest_weak_chain(mixed) == 3);
}

TEST_CASE("longest_weak_chain matches brute force on small configurations") {
    rng::CounterRng g(99, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        PointConfiguration cfg;
        const int ni = (int)(g.next_u64() % 9);
        const int nb = (int)(g.next_u64() % 3);
        const int nl = (int)(g.next_u64() % 3);
        for (int i = 0; i < ni && i + nb + nl < 12; ++i) {
            // coarse coordinates make weak ties common
            const double x = (1.0 + (double)(g.next_u64() % 8)) / 9.0;
            const double y = (1.0 + (double)(g.next_u64() % 8)) / 9.0;
            cfg.interior.emplace_back(x, y);
        }
        for (int i = 0; i < nb; ++i)
            cfg.bottom.push_back((1.0 + (double)(g.next_u64() % 8)) / 9.0);
        for (int i = 0; i < nl; ++i)
            cfg.left.push_back((1.0 + (double)(g.next_u64() % 8)) / 9.0);
        const auto [len, mask] = brute_force_chain(cfg);
        CHECK(longest_weak_chain(cfg) == (std::size_t)len);
        CHECK(mask != 3);  // no maximum chain mixes bottom and left points
    }
}

TEST_CASE("sample_lpp structure and determinism") {
    const auto inst = sample_lpp(2, 0.5, 0.5, 0.5, 11, 3);
    CHECK(inst.weights.size() == 3);
    CHECK(inst.weights[0][0] == 0);
    for (const auto& row : inst.weights)
        for (auto wgt : row) CHECK(wgt >= 0);
    const auto inst2 = sample_lpp(2, 0.5, 0.5, 0.5, 11, 3);
    CHECK(inst.weights == inst2.weights);
    CHECK(inst.corner_weight == inst2.corner_weight);

    // q -> 0+: all bulk weights 0 with overwhelming probability
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto z = sample_lpp(3, 1e-12, 0.5, 0.5, 5, i);
        for (const auto& row : z.weights)
            for (auto wgt : row) CHECK(wgt == 0);
    }

    CHECK_THROWS_AS(sample_lpp(2, 0.25, 2.5, 0.5, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_lpp(2, 1.5, 0.5, 0.5, 0, 0), std::invalid_argument);
}

TEST_CASE("geometric sample mean") {
    // mean of g(0.5) is q/(1-q) = 1; variance q/(1-q)^2 = 2
    const std::size_t reps = 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i)
        sum += (double)sample_lpp(1, 0.5, 0.0, 0.0, 77, i).weights[1][1];
    const double mean = sum / (double)reps;
    CHECK(std::abs(mean - 1.0) < 3.0 * std::sqrt(2.0 / (double)reps));
}

TEST_CASE("lpp_last_passage examples and monotonicity") {
    LppInstance z;
    z.n = 3;
    z.q = 0.5;
    z.weights.assign(4, std::vector<std::int64_t>(4, 0));
    CHECK(lpp_last_passage(z, false) == 0);

    LppInstance e;
    e.n = 1;
    e.q = 0.5;
    e.weights = {{0, 2}, {1, 3}};
    CHECK(lpp_last_passage(e, false) == 5);

    auto inst = sample_lpp(4, 0.4, 0.5, 0.5, 21, 9);
    const auto base = lpp_last_passage(inst, false);
    for (std::size_t i = 0; i <= 4; ++i)
        for (std::size_t j = 0; j <= 4; ++j) {
            if (i == 0 && j == 0) continue;
            auto bumped = inst;
            bumped.weights[i][j] += 1;
            const auto d = lpp_last_passage(bumped, false) - base;
            CHECK((d == 0 || d == 1));
        }

    auto bad = inst;
    bad.alpha_plus = 2.0;
    bad.alpha_minus = 1.0;
    CHECK_THROWS_AS(lpp_last_passage(bad, true), std::invalid_argument);
}

TEST_CASE("corner weight pairing: mean of X+ - X") {
    const std::size_t reps = 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        const auto inst = sample_lpp(5, 0.25, 0.5, 0.5, 314, i);
        sum += (double)(lpp_last_passage(inst, true) - lpp_last_passage(inst, false));
    }
    const double mean = sum / (double)reps;
    const double want = 0.25 / 0.75;  // alpha+ alpha- / (1 - alpha+ alpha-)
    const double sigma = std::sqrt(0.25 / (0.75 * 0.75) / (double)reps);
    CHECK(std::abs(mean - want) < 3.0 * sigma);
}

TEST_CASE("lpp superadditivity on nested instances") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto big = sample_lpp(8, 0.3, 0.5, 0.5, 55, i);
        LppInstance small;
        small.n = 4;
        small.q = big.q;
        small.alpha_plus = big.alpha_plus;
        small.alpha_minus = big.alpha_minus;
        small.weights.assign(5, std::vector<std::int64_t>(5, 0));
        for (std::size_t a = 0; a <= 4; ++a)
            for (std::size_t b = 0; b <= 4; ++b) small.weights[a][b] = big.weights[a][b];
        CHECK(lpp_last_passage(big, false) >= lpp_last_passage(small, false));
    }
}

TEST_CASE("tasep_run basics and invariants") {
    const auto init = tasep_run(0.5, 0.5, 0.5, 0, 30, TasepRule::sequential_right_to_left,
                                1, 0);
    CHECK(init.time == 0);
    for (std::int64_t s = init.site_lo; s <= init.site_hi; ++s) {
        const bool occ = init.occupied[(std::size_t)(s - init.site_lo)];
        CHECK(occ == (s <= -2 || s == 0));
    }

    for (TasepRule rule : {TasepRule::sequential_right_to_left, TasepRule::parallel}) {
        const auto st = tasep_run(0.5, 0.5, 0.5, 20, 60, rule, 9, 4);
        CHECK(st.time == 20);
        // exclusion is structural (bool per site); particle count conserved
        std::size_t count = 0;
        for (bool b : st.occupied) count += b ? 1 : 0;
        CHECK(count == (std::size_t)(60 - 2 + 1) + 1);
    }

    // q = 0.99, alpha = 1: every jump probability is 1 - sqrt(0.99) or 0.01,
    // so displacements are rare; compare total displacement after 10 steps.
    const auto slow = tasep_run(0.99, 1.0, 1.0, 10, 40,
                                TasepRule::sequential_right_to_left, 12, 0);
    std::int64_t disp = 0;
    for (std::int64_t s = slow.site_lo; s <= slow.site_hi; ++s) {
        const bool occ = slow.occupied[(std::size_t)(s - slow.site_lo)];
        const bool was = (s <= -2 || s == 0);
        if (occ && !was) disp += 1;
    }
    CHECK(disp <= 10);

    CHECK_THROWS_AS(tasep_run(0.5, 0.0, 0.0, 500, 5,
                              TasepRule::sequential_right_to_left, 3, 1),
                    window_overflow_error);
    CHECK_THROWS_AS(tasep_run(0.25, 3.0, 0.0, 1, 10,
                              TasepRule::sequential_right_to_left, 3, 1),
                    std::invalid_argument);
}
