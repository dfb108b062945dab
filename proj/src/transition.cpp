#include "pnglab/transition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnglab/errors.hpp"
#include "pnglab/specfun.hpp"

namespace pnglab::transition {

namespace {

using painleve2::PainleveTable;
using LD = long double;
using State = std::array<double, 2>;  // (a, b) for the w-direction route

double phase(double x, double w) { return (8.0 / 3.0) * w * w * w - 2.0 * x * w; }

LD phase_l(LD x, LD w) { return (8.0L / 3.0L) * w * w * w - 2.0L * x * w; }

// log Ai(x) for x >= 6 via the asymptotic expansion (series factor is O(1)).
LD log_ai(LD x) {
    const LD zeta = (2.0L / 3.0L) * x * sqrtl(x);
    LD sc = 0.0L, ck = 1.0L, prev = 1e30L;
    int sign = 1;
    for (int k = 0; k < 40; ++k) {
        const LD tc = ck / powl(zeta, (LD)k);
        if (fabsl(tc) > prev) break;
        prev = fabsl(tc);
        sc += sign * tc;
        if (prev < 1e-20L) break;
        ck *= (6.0L * k + 1.0L) * (6.0L * k + 3.0L) * (6.0L * k + 5.0L) /
              (216.0L * (k + 1.0L) * (2.0L * k + 1.0L));
        sign = -sign;
    }
    return -zeta - 1.2655121234846454L - 0.25L * logl(x) + logl(sc);
}

// Hastings-McLeod u everywhere: table inside, -Ai above, left asymptote below.
LD u_val(const PainleveTable& pt, LD x) {
    if (x > (LD)pt.grid.x_hi) return -expl(log_ai(x));
    if (x < (LD)pt.grid.x_lo) {
        const LD s = -x;
        return -sqrtl(s / 2.0L) * (1.0L - 1.0L / (8.0L * s * s * s));
    }
    return painleve2::eval_painleve(pt, (double)x).u;
}

// ---------------------------------------------------------------------------
// x-direction machinery in scaled variables (a, bh = b e^{-phi}):
//   a' = u e^{phi} bh,   bh' = u e^{-phi} a,   phi = (8/3)w^3 - 2xw.
// Started deep enough that (a, bh) = (1, -1) holds to ~e^{-45-amplification},
// so the contamination reaching any output point stays below ~1e-9.
// ---------------------------------------------------------------------------

// Amplification exponent of an initial-data error transported to x_stop:
// conversion e^{(8/3)w^3} plus parasitic growth over the negative-x stretch.
LD amp_exponent(LD w, LD x_stop) {
    LD amp = (8.0L / 3.0L) * w * w * w;
    if (x_stop < 0.0L) {
        const int n = 64;
        const LD h = -x_stop / n;  // integrate w + sqrt(w^2 + |s|/2) on [x_stop, 0]
        LD acc = 0.0L;
        for (int i = 0; i < n; ++i) {
            const LD s = (i + 0.5L) * h;
            acc += w + sqrtl(w * w + s / 2.0L);
        }
        amp += acc * h;
    }
    return amp;
}

// Deepest abscissa reached determines how far right the sweep must start.
LD tail_start(LD w, LD x_stop, LD x_hi) {
    const LD need = 45.0L + amp_exponent(w, x_stop);
    LD x = std::max({x_hi + 4.0L, 12.0L, x_stop + 4.0L});
    auto decay = [&](LD xx) {
        return (2.0L / 3.0L) * xx * sqrtl(xx) - 2.0L * w * xx + (8.0L / 3.0L) * w * w * w;
    };
    while (decay(x) < need) x += 1.0L;
    return x;
}

struct ScaledPoint {
    LD a;
    LD bh;  // b = bh * e^{phi}
};

// Leftward RK4 sweep of the scaled system, reporting at descending targets.
std::vector<ScaledPoint> sweep_scaled(const PainleveTable& pt, LD w,
                                      const std::vector<LD>& targets) {
    const LD x_hi = pt.grid.x_hi;
    const LD x0 = tail_start(w, targets.empty() ? 0.0L : targets.back(), x_hi);
    LD a = 1.0L, bh = -1.0L;
    LD x = x0;
    std::vector<ScaledPoint> out;
    out.reserve(targets.size());

    auto deriv = [&](LD xx, LD aa, LD bb, LD& da, LD& db) {
        const LD ph = phase_l(xx, w);
        LD cp, cm;
        if (xx > x_hi) {
            const LD la = log_ai(xx);
            cp = -expl(la + ph);
            cm = -expl(la - ph);
        } else {
            const LD u = u_val(pt, xx);
            cp = u * expl(ph);
            cm = u * expl(-ph);
        }
        da = cp * bb;
        db = cm * aa;
    };
    auto rate = [&](LD xx) {
        return 2.0L * w + (xx < 0.0L ? sqrtl(-xx / 2.0L) : 0.0L) + 0.05L;
    };

    for (LD xt : targets) {
        while (x > xt + 1e-15L) {
            LD h = 1.2e-3L / rate(x);
            if (x - h < xt) h = x - xt;
            const LD hh = -h;
            LD k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
            deriv(x, a, bh, k1a, k1b);
            deriv(x + hh / 2, a + hh / 2 * k1a, bh + hh / 2 * k1b, k2a, k2b);
            deriv(x + hh / 2, a + hh / 2 * k2a, bh + hh / 2 * k2b, k3a, k3b);
            deriv(x + hh, a + hh * k3a, bh + hh * k3b, k4a, k4b);
            a += hh / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
            bh += hh / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
            x -= h;
        }
        x = xt;
        out.push_back({a, bh});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Deep-left evaluation via the recessive direction. Below the matching point
// the true solution is (numerically verified) purely the leftward-recessive
// mode, whose direction r = b/a obeys the Riccati equation
//   r' = u - 2 w r - u r^2
// and is attracting under rightward integration. Starting well below the
// table purifies any seed direction, after which a(x) = c exp(int u r).
// ---------------------------------------------------------------------------

struct RiccatiNode {
    LD r;  // recessive direction b/a
    LD I;  // running int u r (an antiderivative of (ln a)')
};

// Rightward pass from x_lo - 12, reporting at ascending targets.
std::vector<RiccatiNode> riccati_rightward(const PainleveTable& pt, LD w,
                                           const std::vector<LD>& targets_asc) {
    LD x = (LD)pt.grid.x_lo - 12.0L;
    LD r = -1.0L, I = 0.0L;
    const LD h0 = (LD)pt.grid.step / 4.0L;
    std::vector<RiccatiNode> out;
    out.reserve(targets_asc.size());
    auto f = [&](LD xx, LD rr, LD& dr, LD& dI) {
        const LD u = u_val(pt, xx);
        dr = u - 2.0L * w * rr - u * rr * rr;
        dI = u * rr;
    };
    for (LD xt : targets_asc) {
        while (x < xt - 1e-15L) {
            LD h = h0;
            if (x + h > xt) h = xt - x;
            LD k1r, k1i, k2r, k2i, k3r, k3i, k4r, k4i;
            f(x, r, k1r, k1i);
            f(x + h / 2, r + h / 2 * k1r, k2r, k2i);
            f(x + h / 2, r + h / 2 * k2r, k3r, k3i);
            f(x + h, r + h * k3r, k4r, k4i);
            r += h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r);
            I += h / 6 * (k1i + 2 * k2i + 2 * k3i + k4i);
            x += h;
        }
        x = xt;
        out.push_back({r, I});
    }
    return out;
}

// Matching abscissa: low enough to be useful, high enough that the sweep's
// b-value there is clean (contamination ~3e-18 e^{phi} versus |b| ~ Ai/2w).
LD matching_point(LD w, LD x_hi) {
    LD x = 2.0L;
    auto ok = [&](LD xx) {
        const LD lb = (xx >= 6.0L ? log_ai(xx)
                                  : logl((LD)std::abs(specfun::airy_ai((double)xx).ai))) -
                      logl(2.0L * w);
        return phase_l(xx, w) - lb < 23.0L;
    };
    while (!ok(x)) x += 0.5L;
    (void)x_hi;
    return x;
}

// Evaluate (a, b) at every requested descending abscissa for one w >= 0.
// Sweep above the matching point; recessive-direction continuation (which
// the sweep's contamination cannot reach) below it. Where the sweep's
// scaled b is a heavy cancellation (|bh| tiny against its O(1) transient),
// b is taken from the recessive direction as well.
std::vector<std::pair<LD, LD>> profile_values(const PainleveTable& pt, LD w,
                                              const std::vector<LD>& targets_desc) {
    const std::size_t n = targets_desc.size();
    std::vector<std::pair<LD, LD>> out(n);
    if (w == 0.0L) {
        for (std::size_t i = 0; i < n; ++i) {
            const double E = painleve2::eval_painleve(pt, (double)targets_desc[i]).E;
            out[i] = {(LD)E * E, -(LD)E * E};
        }
        return out;
    }
    const LD xs = matching_point(w, pt.grid.x_hi);
    std::vector<std::size_t> upper, lower;  // indices into targets_desc
    for (std::size_t i = 0; i < n; ++i)
        (targets_desc[i] >= xs ? upper : lower).push_back(i);
    std::vector<LD> sweep_t;
    for (std::size_t i : upper) sweep_t.push_back(targets_desc[i]);
    sweep_t.push_back(xs);
    const auto sw = sweep_scaled(pt, w, sweep_t);
    // Riccati pass covers the lower targets, the matching point, and any
    // upper target whose sweep b needs the direction-based replacement.
    std::vector<LD> ric_t;
    std::vector<std::size_t> ric_idx;  // target index, or n for the match point
    for (std::size_t j = lower.size(); j-- > 0;) {
        ric_t.push_back(targets_desc[lower[j]]);
        ric_idx.push_back(lower[j]);
    }
    ric_t.push_back(xs);
    ric_idx.push_back(n);
    for (std::size_t j = upper.size(); j-- > 0;) {
        if (fabsl(sw[j].bh) < 1e-6L) {
            ric_t.push_back(targets_desc[upper[j]]);
            ric_idx.push_back(upper[j]);
        }
    }
    const auto rn = riccati_rightward(pt, w, ric_t);
    std::size_t star_pos = 0;
    while (ric_idx[star_pos] != n) ++star_pos;
    const RiccatiNode star = rn[star_pos];
    const LD a_star = sw.back().a;
    const LD b_star = sw.back().bh * expl(phase_l(xs, w));
    // Dominant direction at the matching point (a/b ratio of the left-growing
    // mode); only enters as a second-order correction to the amplitude.
    const LD us = u_val(pt, xs);
    const LD rho = us / (-w - sqrtl(w * w + us * us));
    const LD c = (a_star - rho * b_star) / (1.0L - rho * star.r);
    for (std::size_t j = 0; j < upper.size(); ++j)
        out[upper[j]] = {sw[j].a, sw[j].bh * expl(phase_l(targets_desc[upper[j]], w))};
    for (std::size_t k = 0; k < ric_t.size(); ++k) {
        if (ric_idx[k] == n) continue;
        if (k < star_pos) {  // below the matching point: full continuation
            const LD av = c * expl(rn[k].I - star.I);
            out[ric_idx[k]] = {av, rn[k].r * av};
        } else {  // upper target: keep the sweep a, replace only b
            out[ric_idx[k]].second = rn[k].r * out[ric_idx[k]].first;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// w-direction route (the independent cross-check) with a conditioning guard.
// ---------------------------------------------------------------------------

// Dormand-Prince 5(4) adaptive integrator for the 2-state linear systems.
template <class Rhs>
State dopri5(Rhs&& rhs, double t0, double t1, State y, double rtol, double atol) {
    static constexpr double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static constexpr double b5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784,  11.0 / 84,  0.0};
    static constexpr double b4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                                     -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(0.1, std::abs(t1 - t0));
    std::array<State, 7> k;
    int guard = 0;
    while (dir * (t1 - t) > 1e-14 && ++guard < 1000000) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        for (int s = 0; s < 7; ++s) {
            State ys = y;
            for (int j = 0; j < s; ++j)
                for (int d = 0; d < 2; ++d) ys[d] += h * A[s][j] * k[j][d];
            k[s] = rhs(t + c[s] * h, ys);
        }
        State y5 = y, y4 = y;
        for (int s = 0; s < 7; ++s)
            for (int d = 0; d < 2; ++d) {
                y5[d] += h * b5[s] * k[s][d];
                y4[d] += h * b4[s] * k[s][d];
            }
        double err = 0.0;
        for (int d = 0; d < 2; ++d) {
            const double sc = atol + rtol * std::max(std::abs(y[d]), std::abs(y5[d]));
            const double e = (y5[d] - y4[d]) / sc;
            err += e * e;
        }
        err = std::sqrt(0.5 * err);
        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
        h *= fac;
    }
    return y;
}

// Worst-case growth exponent of the w-direction system over [0, w]: integral
// of the largest eigenvalue of the (symmetric-part) coefficient matrix.
// Gauges how much table/roundoff noise the route can amplify.
double w_route_exponent(double x, double u, double up, double w) {
    const int n = 64;
    const double h = w / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) * h;
        const double m11 = 2.0 * u * u;
        const double m22 = 8.0 * s * s - 2.0 * x - 2.0 * u * u;
        const double m12 = -(4.0 * s * u + 2.0 * up);
        const double m21 = -4.0 * s * u + 2.0 * up;
        const double disc = (m11 - m22) * (m11 - m22) + 4.0 * m12 * m21;
        double lam = 0.5 * (m11 + m22);
        if (disc > 0.0) lam += 0.5 * std::sqrt(disc);
        acc += std::max(lam, 0.0);
    }
    return acc * h;
}

}  // namespace

AbValue ab_at(const PainleveTable& pt, double x, double w) {
    if (std::abs(w) > 6.0)
        throw envelope_error("ab_at: |w| > 6 is outside the accuracy envelope");
    const auto p = painleve2::eval_painleve(pt, x);  // throws out_of_range as required
    const double e2 = p.E * p.E;
    if (w == 0.0) return {e2, -e2};
    if (w < 0.0) {
        const AbValue pos = ab_at(pt, x, -w);
        const double f = std::exp(phase(x, w));
        return {-pos.b * f, -pos.a * f};
    }
    // The forward w-integration amplifies input noise by ~e^{exponent}; use it
    // only while that stays harmless, otherwise fall back to the x-direction
    // machinery (which is stable for all parameters).
    if (w_route_exponent(x, p.u, p.u_prime, w) <= 6.0) {
        auto rhs = [&](double ww, const State& y) -> State {
            const double u = p.u, up = p.u_prime, a = y[0], b = y[1];
            return {2.0 * u * u * a - (4.0 * ww * u + 2.0 * up) * b,
                    (-4.0 * ww * u + 2.0 * up) * a +
                        (8.0 * ww * ww - 2.0 * x - 2.0 * u * u) * b};
        };
        const State y = dopri5(rhs, 0.0, w, State{e2, -e2}, 1e-10, 1e-14);
        return {y[0], y[1]};
    }
    const auto v = profile_values(pt, (LD)w, {(LD)x});
    return {(double)v[0].first, (double)v[0].second};
}

TransitionProfile ab_profile_x(const PainleveTable& pt, double w) {
    if (w < 0.0)
        throw std::invalid_argument("ab_profile_x: w must be >= 0 (use the reflection identity)");
    const RealGrid& g = pt.grid;
    TransitionProfile prof;
    prof.w = w;
    prof.grid = g;
    prof.a.resize(g.count);
    prof.b.resize(g.count);
    std::vector<LD> targets(g.count);
    for (std::size_t i = 0; i < g.count; ++i) targets[i] = (LD)g.x(g.count - 1 - i);
    const auto vals = profile_values(pt, (LD)w, targets);
    for (std::size_t i = 0; i < g.count; ++i) {
        prof.a[g.count - 1 - i] = (double)vals[i].first;
        prof.b[g.count - 1 - i] = (double)vals[i].second;
    }
    return prof;
}

namespace {

void check_targets(const char* who, const RealGrid& g, const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] <= xs[i - 1]))
            throw std::invalid_argument(std::string(who) + ": abscissae must be non-increasing");
    if (xs.empty()) return;
    if (xs.front() > 100.0)
        throw std::out_of_range(std::string(who) + ": abscissa beyond extended capacity");
    if (xs.back() < g.x_lo)
        throw std::out_of_range(std::string(who) + ": abscissa below table range");
}

}  // namespace

std::vector<AbValue> ab_values(const PainleveTable& pt, double w,
                               const std::vector<double>& x_desc) {
    if (w < 0.0) throw std::invalid_argument("ab_values: w must be >= 0");
    check_targets("ab_values", pt.grid, x_desc);
    std::vector<LD> t(x_desc.begin(), x_desc.end());
    const auto vals = profile_values(pt, (LD)w, t);
    std::vector<AbValue> out(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        out[i] = {(double)vals[i].first, (double)vals[i].second};
    return out;
}

std::vector<double> a_reflected(const PainleveTable& pt, double w,
                                const std::vector<double>& x_desc) {
    if (!(w < 0.0)) throw std::invalid_argument("a_reflected: w must be < 0");
    check_targets("a_reflected", pt.grid, x_desc);
    // Reflection in scaled variables: a(x, w) = -b(x, -w) e^{phase(x, w)} with
    // phase(x, w) = -phase(x, -w), so a(x, w) is exactly -bh(x, -w).
    std::vector<LD> t(x_desc.begin(), x_desc.end());
    const auto sw = sweep_scaled(pt, (LD)(-w), t);
    std::vector<double> out(sw.size());
    for (std::size_t i = 0; i < sw.size(); ++i) out[i] = (double)(-sw[i].bh);
    return out;
}

std::vector<double> a_extended(const PainleveTable& pt, double w,
                               const std::vector<double>& x_targets) {
    if (!(w <= -1.5)) throw std::invalid_argument("a_extended: require w <= -1.5");
    if (x_targets.empty()) return {};
    return a_reflected(pt, w, x_targets);
}

double erf_limit_check(const PainleveTable& pt, double w, double y) {
    const double xt = 2.0 * y * std::sqrt(std::abs(w)) + 4.0 * w * w;
    return a_extended(pt, w, {xt}).front();
}

}  // namespace pnglab::transition
