#include "pnglab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnglab/errors.hpp"
#include "pnglab/specfun.hpp"
#include "pnglab/transition.hpp"

namespace pnglab::distributions {

namespace {

using painleve2::PainleveTable;

double phase(double x, double w) { return (8.0 / 3.0) * w * w * w - 2.0 * x * w; }

// Painleve quantities at x, continued by the Airy asymptotics past the
// table's right edge (where u = -Ai to super-exponential accuracy and
// v = x Ai^2 - Ai'^2 <= 0 for that approximation).
struct Base {
    double u, up, v, E, F, fgue;
};

Base base_at(const PainleveTable& pt, double x) {
    if (x <= pt.grid.x_hi) {
        const auto p = painleve2::eval_painleve(pt, x);
        return {p.u, p.u_prime, p.v, p.E, p.F, p.F * p.F};
    }
    const auto ai = specfun::airy_ai(x);
    const double v = -std::max(ai.ai_prime * ai.ai_prime - x * ai.ai * ai.ai, 0.0);
    // E = exp(-1/2 int_x^inf |u|) with int Ai ~ Ai/sqrt(x), anchored to the
    // table-edge value so the continuation is exactly continuous there.
    // F deviates from 1 by less than 1e-16 beyond the edge.
    const double xh = pt.grid.x_hi;
    const auto pe = painleve2::eval_painleve(pt, xh);
    const auto aih = specfun::airy_ai(xh);
    const double J = ai.ai / std::sqrt(x);
    const double Jh = aih.ai / std::sqrt(xh);
    const double E = std::min(pe.E * std::exp(-0.5 * (J - Jh)), 1.0);
    return {-ai.ai, -ai.ai_prime, v, E, 1.0, 1.0};
}

std::size_t arity(Kind kind) {
    switch (kind) {
        case Kind::G: return 1;
        case Kind::H: return 2;
        default: return 0;
    }
}

void validate(Kind kind, const std::vector<double>& params) {
    if (params.size() != arity(kind))
        throw std::invalid_argument("cdf_table: parameter arity mismatch for kind");
    for (double w : params)
        if (std::abs(w) > 4.0)
            throw envelope_error("cdf_table: shift parameter outside |w| <= 4 envelope");
}

// Columns of a(x, w) and log|b(x, w)| at descending abscissae, for either
// sign of w. b < 0 throughout, so the log carries the full information;
// for w < 0 the value b = -a(x,-w) e^{phase(x,w)} can overflow a double,
// which is why only the log form is kept.
struct AbCols {
    std::vector<double> a, b, lnb;
};

AbCols ab_cols(const PainleveTable& pt, double w, const std::vector<double>& xd) {
    AbCols c;
    const std::size_t n = xd.size();
    c.a.resize(n);
    c.b.resize(n);
    c.lnb.resize(n);
    if (w >= 0.0) {
        const auto vals = transition::ab_values(pt, w, xd);
        for (std::size_t i = 0; i < n; ++i) {
            c.a[i] = vals[i].a;
            c.b[i] = vals[i].b;
            c.lnb[i] = std::log(-vals[i].b);
        }
    } else {
        c.a = transition::a_reflected(pt, w, xd);
        const auto pos = transition::ab_values(pt, -w, xd);
        for (std::size_t i = 0; i < n; ++i) {
            c.lnb[i] = phase(xd[i], w) + std::log(pos[i].a);
            c.b[i] = -std::exp(c.lnb[i]);  // may overflow to -inf; callers use lnb
        }
    }
    return c;
}

std::vector<double> assemble(const PainleveTable& pt, Kind kind,
                             const std::vector<double>& params,
                             const std::vector<double>& xd) {
    const std::size_t n = xd.size();
    std::vector<double> out(n);
    switch (kind) {
        case Kind::NORMAL:
            for (std::size_t i = 0; i < n; ++i) out[i] = specfun::normal_cdf(xd[i]);
            return out;
        case Kind::NORMAL_SQUARED:
            for (std::size_t i = 0; i < n; ++i) {
                const double p = specfun::normal_cdf(xd[i]);
                out[i] = p * p;
            }
            return out;
        default: break;
    }
    std::vector<Base> bs(n);
    for (std::size_t i = 0; i < n; ++i) bs[i] = base_at(pt, xd[i]);
    switch (kind) {
        case Kind::GUE:
            for (std::size_t i = 0; i < n; ++i) out[i] = bs[i].fgue;
            return out;
        case Kind::GOE:
            // The GOE convention with mean -0.76007: argument rescaled by
            // 2^{2/3} relative to F E (whose own square is GOE_SQUARED).
            for (std::size_t i = 0; i < n; ++i) {
                const double cx = std::cbrt(4.0) * xd[i];
                if (cx < pt.grid.x_lo) {
                    out[i] = 0.0;  // F E < 1e-18 here already
                } else {
                    const Base b = base_at(pt, cx);
                    out[i] = b.F * b.E;
                }
            }
            return out;
        case Kind::GOE_SQUARED:
            for (std::size_t i = 0; i < n; ++i) {
                const double g = bs[i].F * bs[i].E;
                out[i] = g * g;
            }
            return out;
        case Kind::GSE:
            for (std::size_t i = 0; i < n; ++i)
                out[i] = bs[i].F * (bs[i].E + 1.0 / bs[i].E) / 2.0;
            return out;
        case Kind::F0:
            for (std::size_t i = 0; i < n; ++i) {
                const Base& b = bs[i];
                const double y = xd[i] + 2.0 * b.up + 2.0 * b.u * b.u;
                const double e2 = b.E * b.E;
                out[i] = (1.0 - y * b.v) * e2 * e2 * b.fgue;
            }
            return out;
        case Kind::G: {
            const double w = params[0];
            std::vector<double> a;
            if (w >= 0.0) {
                const auto vals = transition::ab_values(pt, w, xd);
                a.resize(n);
                for (std::size_t i = 0; i < n; ++i) a[i] = vals[i].a;
            } else {
                a = transition::a_reflected(pt, w, xd);
            }
            for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * bs[i].fgue;
            return out;
        }
        case Kind::H: {
            // Canonical parameter order makes the w+ <-> w- exchange
            // symmetry exact to the bit.
            const double wp = std::max(params[0], params[1]);
            const double wm = std::min(params[0], params[1]);
            if (std::abs(wp + wm) >= 1e-3) {
                const AbCols cp = ab_cols(pt, wp, xd);
                const AbCols cm = (wp == wm) ? cp : ab_cols(pt, wm, xd);
                for (std::size_t i = 0; i < n; ++i) {
                    const double aa = cp.a[i] * cm.a[i];
                    const double t1 = bs[i].v * aa;
                    // v * b+ * b- in log space (b's are negative, so their
                    // product is positive; v <= 0).
                    const double mv = std::max(-bs[i].v, 0.0);
                    const double t2 =
                        -std::exp(std::log(mv) + cp.lnb[i] + cm.lnb[i]);
                    out[i] = (aa - (t1 - t2) / (2.0 * (wp + wm))) * bs[i].fgue;
                }
            } else {
                // Antisymmetric-point formula at w = (w+ - w-)/2 >= 0.
                const double w = (wp - wm) / 2.0;
                const auto vp = transition::ab_values(pt, w, xd);
                std::vector<double> am(n, 0.0);
                if (w > 0.0) {
                    am = transition::a_reflected(pt, -w, xd);
                } else {
                    for (std::size_t i = 0; i < n; ++i) am[i] = vp[i].a;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Base& b = bs[i];
                    const double x = xd[i];
                    const double aa = vp[i].a * am[i];
                    const double t1 =
                        (2.0 * b.u * b.u + x - 4.0 * w * w) * aa * b.v;
                    const double t2 = (b.up + 2.0 * w * b.u) * vp[i].b * am[i] * b.v;
                    // (u' - 2wu) a+ (b- v) with b- v = a+ e^{-phase(x,w)} |v|
                    // assembled in log space (b- alone can overflow).
                    const double mv = std::max(-b.v, 0.0);
                    const double bmv =
                        vp[i].a * std::exp(std::log(mv) - phase(x, w));
                    const double t3 = (b.up - 2.0 * w * b.u) * vp[i].a * bmv;
                    out[i] = (aa - (t1 - t2 - t3)) * b.fgue;
                }
            }
            return out;
        }
        default: break;
    }
    throw std::logic_error("cdf_table: unhandled kind");
}

}  // namespace

DistributionTable cdf_table(const PainleveTable& pt, Kind kind,
                            const std::vector<double>& params, const RealGrid& grid) {
    validate(kind, params);
    if (grid.x_lo < pt.grid.x_lo)
        throw std::out_of_range("cdf_table: grid extends below the Painleve table");
    if (grid.x_hi > 100.0)
        throw std::out_of_range("cdf_table: grid beyond extended capacity");
    std::vector<double> xd(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) xd[i] = grid.x(grid.count - 1 - i);
    const auto vals = assemble(pt, kind, params, xd);
    DistributionTable dt;
    dt.kind = kind;
    dt.params = params;
    dt.grid = grid;
    dt.cdf.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
        dt.cdf[grid.count - 1 - i] = std::clamp(vals[i], 0.0, 1.0);
    return dt;
}

DistributionTable cdf_table(const PainleveTable& pt, Kind kind,
                            const std::vector<double>& params) {
    validate(kind, params);
    double x_hi = pt.grid.x_hi;
    if (kind == Kind::G || kind == Kind::H) {
        const double wmin = *std::min_element(params.begin(), params.end());
        if (wmin < 0.0) {
            // A negative shift pushes the mass toward 4 w^2; cover it plus
            // ten Gaussian widths so the right-tail invariant holds.
            const double need = 4.0 * wmin * wmin + 10.0 * std::sqrt(-wmin);
            if (need > x_hi) {
                const std::size_t extra =
                    (std::size_t)std::ceil((need - x_hi) / pt.grid.step);
                x_hi += (double)extra * pt.grid.step;
            }
        }
    }
    return cdf_table(pt, kind, params, RealGrid(pt.grid.x_lo, x_hi, pt.grid.step));
}

std::pair<double, double> mean_variance(const DistributionTable& dt) {
    const RealGrid& g = dt.grid;
    const std::size_t n = g.count;
    // Survival form, with the two tail integrals merged into single smooth
    // integrands: mean = x_hi - int F dx, E[X^2] = x_hi^2 - int 2xF dx
    // (exact when the CDF has reached 0/1 at the grid ends; the truncated
    // tails contribute < 1e-8 on the default domains).
    std::vector<double> m2(n);
    for (std::size_t i = 0; i < n; ++i) m2[i] = 2.0 * g.x(i) * dt.cdf[i];
    const auto Af = specfun::integrate_sampled(g, dt.cdf);
    const auto Am = specfun::integrate_sampled(g, m2);
    const double mean = g.x(n - 1) - Af[0];
    const double ex2 = g.x(n - 1) * g.x(n - 1) - Am[0];
    return {mean, ex2 - mean * mean};
}

std::vector<double> density(const DistributionTable& dt) {
    const std::vector<double>& c = dt.cdf;
    const std::size_t n = dt.grid.count;
    if (n < 5) throw std::invalid_argument("density: need at least 5 grid points");
    const double h = dt.grid.step;
    std::vector<double> d(n);
    d[0] = (-25.0 * c[0] + 48.0 * c[1] - 36.0 * c[2] + 16.0 * c[3] - 3.0 * c[4]) / (12.0 * h);
    d[1] = (-3.0 * c[0] - 10.0 * c[1] + 18.0 * c[2] - 6.0 * c[3] + c[4]) / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-c[i + 2] + 8.0 * c[i + 1] - 8.0 * c[i - 1] + c[i - 2]) / (12.0 * h);
    d[n - 2] = (3.0 * c[n - 1] + 10.0 * c[n - 2] - 18.0 * c[n - 3] + 6.0 * c[n - 4] -
                c[n - 5]) /
               (12.0 * h);
    d[n - 1] = (25.0 * c[n - 1] - 48.0 * c[n - 2] + 36.0 * c[n - 3] - 16.0 * c[n - 4] +
                3.0 * c[n - 5]) /
               (12.0 * h);
    for (double& v : d) {
        if (v < -1e-9)
            throw precision_error("density: CDF decreasing beyond tolerance (solver failure)");
        if (v < 0.0) v = 0.0;
    }
    return d;
}

}  // namespace pnglab::distributions
