#include "pnglab/painleve2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pnglab/errors.hpp"
#include "pnglab/specfun.hpp"

namespace pnglab::painleve2 {

namespace {

using specfun::airy_ai;

double rhs_f(double x, double u) { return 2.0 * u * u * u + x * u; }
double rhs_fu(double x, double u) { return 6.0 * u * u + x; }

// Numerov residual at interior point i for u'' = f(x, u).
double numerov_residual(const RealGrid& g, const std::vector<double>& u, std::size_t i) {
    const double h2 = g.step * g.step;
    return u[i + 1] - 2.0 * u[i] + u[i - 1] -
           h2 / 12.0 *
               (rhs_f(g.x(i + 1), u[i + 1]) + 10.0 * rhs_f(g.x(i), u[i]) +
                rhs_f(g.x(i - 1), u[i - 1]));
}

double residual_norm(const RealGrid& g, const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < g.count; ++i) {
        const double r = numerov_residual(g, u, i);
        s += r * r;
    }
    return std::sqrt(s);
}

// Tridiagonal solve (Thomas); a = sub, b = diag, c = super, d = rhs (overwritten).
void thomas_solve(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c,
                  std::vector<double>& d) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

// Simpson quadrature of fn over [a, b] with an even number of panels ~ step.
template <class Fn>
double simpson(Fn&& fn, double a, double b, double step) {
    std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / step));
    if (n % 2 != 0) ++n;
    if (n < 2) n = 2;
    const double h = (b - a) / static_cast<double>(n);
    long double s = fn(a) + fn(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * fn(a + h * (double)i);
    return (double)(s * h / 3.0L);
}

double hermite(double y0, double y1, double d0, double d1, double h, double s) {
    // s in [0,1] across the cell.
    const double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 +
           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

PainleveTable solve_hastings_mcleod(double x_lo, double x_hi, double step, double tol) {
    if (!(x_lo <= -8.0) || !(x_hi >= 6.0))
        throw std::invalid_argument("solve_hastings_mcleod: require x_lo <= -8, x_hi >= 6");
    if (!(step <= 0.01 && step > 0.0))
        throw std::invalid_argument("solve_hastings_mcleod: require 0 < step <= 0.01");
    if (!(tol >= 1e-13)) throw std::invalid_argument("solve_hastings_mcleod: require tol >= 1e-13");

    const RealGrid g(x_lo, x_hi, step);
    const std::size_t n = g.count;

    // Boundary data: -Ai on the right, left-tail asymptote with its first
    // correction -sqrt(-x/2)(1 - 1/(8x^3)) on the left.
    const auto ar = airy_ai(x_hi);
    const double s_lo = -x_lo;
    const double u_left = -std::sqrt(s_lo / 2.0) * (1.0 - 1.0 / (8.0 * s_lo * s_lo * s_lo));
    const double u_right = -ar.ai;

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.x(i);
        if (x >= 0.0)
            u[i] = -airy_ai(x).ai;
        else if (x <= -2.0)
            u[i] = -std::sqrt(-x / 2.0);
        else {
            const double w = (x + 2.0) / 2.0;
            u[i] = w * (-airy_ai(x).ai) + (1.0 - w) * (-std::sqrt(-x / 2.0));
        }
    }
    u[0] = u_left;
    u[n - 1] = u_right;

    const double h2 = step * step;
    std::vector<double> sub(n - 2), diag(n - 2), sup(n - 2), rhs(n - 2);
    double last_norm = residual_norm(g, u);
    bool converged = false;
    for (int iter = 0; iter < 50 && !converged; ++iter) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rhs[i - 1] = -numerov_residual(g, u, i);
            diag[i - 1] = -2.0 - 10.0 * h2 / 12.0 * rhs_fu(g.x(i), u[i]);
            sub[i - 1] = (i > 1) ? 1.0 - h2 / 12.0 * rhs_fu(g.x(i - 1), u[i - 1]) : 0.0;
            sup[i - 1] = (i + 2 < n) ? 1.0 - h2 / 12.0 * rhs_fu(g.x(i + 1), u[i + 1]) : 0.0;
        }
        thomas_solve(sub, diag, sup, rhs);

        double lambda = 1.0;
        std::vector<double> trial(n);
        double trial_norm = 0.0;
        for (int halving = 0; halving < 25; ++halving) {
            trial = u;
            for (std::size_t i = 1; i + 1 < n; ++i) trial[i] += lambda * rhs[i - 1];
            trial_norm = residual_norm(g, trial);
            if (trial_norm < last_norm || last_norm == 0.0) break;
            lambda *= 0.5;
        }
        u.swap(trial);
        last_norm = trial_norm;
        double dmax = 0.0;
        for (std::size_t i = 0; i + 2 < n; ++i) dmax = std::max(dmax, std::abs(lambda * rhs[i]));
        if (dmax < tol) converged = true;
    }
    if (!converged)
        throw solver_error("solve_hastings_mcleod: Newton did not converge", last_norm);

    // u' by 5-point finite differences (one-sided at the ends).
    std::vector<double> up(n);
    const double ih = 1.0 / (12.0 * step);
    for (std::size_t i = 2; i + 2 < n; ++i)
        up[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) * ih;
    auto onesided = [&](std::size_t i, int dir) {
        const double d = static_cast<double>(dir);
        return d * ih *
               (-25.0 * u[i] + 48.0 * u[i + dir] - 36.0 * u[i + 2 * dir] +
                16.0 * u[i + 3 * dir] - 3.0 * u[i + 4 * dir]);
    };
    up[0] = onesided(0, 1);
    up[1] = onesided(1, 1);
    up[n - 1] = -ar.ai_prime;  // exact boundary derivative
    up[n - 2] = onesided(n - 2, -1);

    // Tail corrections beyond x_hi, where u is -Ai to working precision.
    const double cut = x_hi + 12.0;
    const double tail_u = -simpson([](double t) { return airy_ai(t).ai; }, x_hi, cut, 1e-3);
    const double tail_u2 = simpson(
        [](double t) { const double a = airy_ai(t).ai; return a * a; }, x_hi, cut, 1e-3);
    const double tail_v = -simpson(
        [&](double t) { const double a = airy_ai(t).ai; return (t - x_hi) * a * a; }, x_hi, cut,
        1e-3);

    std::vector<double> u2(n);
    for (std::size_t i = 0; i < n; ++i) u2[i] = u[i] * u[i];
    const auto run_u = specfun::integrate_sampled(g, u);
    const auto run_u2 = specfun::integrate_sampled(g, u2);

    PainleveTable t;
    t.grid = g;
    t.u = std::move(u);
    t.u_prime = std::move(up);
    t.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.v[i] = -(run_u2[i] + tail_u2);
    const auto run_v = specfun::integrate_sampled(g, t.v);
    t.E.resize(n);
    t.F.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.E[i] = std::exp(0.5 * (run_u[i] + tail_u));
        t.F[i] = std::exp(0.5 * (run_v[i] + tail_v));
    }
    return t;
}

PainleveValue eval_painleve(const PainleveTable& table, double x) {
    const RealGrid& g = table.grid;
    if (!g.contains(x)) throw std::out_of_range("eval_painleve: x outside table range");
    const std::size_t i = g.cell(x);
    const double s = (x - g.x(i)) / g.step;
    const double h = g.step;

    const double u0 = table.u[i], u1 = table.u[i + 1];
    const double d0 = table.u_prime[i], d1 = table.u_prime[i + 1];
    PainleveValue out;
    out.u = hermite(u0, u1, d0, d1, h, s);
    // u'' = 2u^3 + xu supplies the Hermite slopes for u'.
    out.u_prime = hermite(d0, d1, rhs_f(g.x(i), u0), rhs_f(g.x(i + 1), u1), h, s);
    out.v = hermite(table.v[i], table.v[i + 1], u0 * u0, u1 * u1, h, s);
    out.E = hermite(table.E[i], table.E[i + 1], -0.5 * u0 * table.E[i],
                    -0.5 * u1 * table.E[i + 1], h, s);
    out.F = hermite(table.F[i], table.F[i + 1], -0.5 * table.v[i] * table.F[i],
                    -0.5 * table.v[i + 1] * table.F[i + 1], h, s);
    return out;
}

double aux_y(const PainleveTable& table, double x) {
    const auto p = eval_painleve(table, x);
    return x + 2.0 * p.u_prime + 2.0 * p.u * p.u;
}

}  // namespace pnglab::painleve2
