#include "pnglab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnglab/errors.hpp"

namespace pnglab::exact {

namespace {

long double lchoose(std::size_t n, std::size_t k) {
    return std::lgammal((long double)n + 1.0L) - std::lgammal((long double)k + 1.0L) -
           std::lgammal((long double)(n - k) + 1.0L);
}

// Cholesky factor (row-major lower triangle) of the s×s Toeplitz section of
// ĉ. Throws precision_error naming the failing leading dimension.
std::vector<long double> cholesky_section(const ToeplitzWeight& w, std::size_t s) {
    std::vector<long double> L(s * s, 0.0L);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            long double sum = w.cl((std::int64_t)i - (std::int64_t)j);
            for (std::size_t k = 0; k < j; ++k) sum -= L[i * s + k] * L[j * s + k];
            if (i == j) {
                if (!(sum > 0.0L))
                    throw precision_error(
                        "toeplitz: lost positive definiteness at section l = " +
                        std::to_string(i + 1));
                L[i * s + i] = std::sqrt(sum);
            } else {
                L[i * s + j] = sum / L[j * s + j];
            }
        }
    }
    return L;
}

std::vector<long double> logdets_l(const ToeplitzWeight& w, std::size_t l_max) {
    std::vector<long double> out(l_max + 1, 0.0L);
    if (l_max == 0) return out;
    const auto L = cholesky_section(w, l_max);
    const long double s = w.log_scale_l();
    long double acc = 0.0L;
    for (std::size_t l = 1; l <= l_max; ++l) {
        acc += 2.0L * std::log(L[(l - 1) * l_max + (l - 1)]);
        out[l] = (long double)l * s + acc;
    }
    return out;
}

struct OpEvalL {
    long double pi, pi_prime, pi_star;
};

OpEvalL op_eval_l(const ToeplitzWeight& w, std::size_t l, long double z) {
    std::vector<long double> a(l + 1, 0.0L);
    a[l] = 1.0L;
    if (l > 0) {
        const auto L = cholesky_section(w, l);
        std::vector<long double> y(l);
        // forward: L y = b, b_m = -ĉ_{m-l}
        for (std::size_t m = 0; m < l; ++m) {
            long double sum = -w.cl((std::int64_t)m - (std::int64_t)l);
            for (std::size_t k = 0; k < m; ++k) sum -= L[m * l + k] * y[k];
            y[m] = sum / L[m * l + m];
        }
        // backward: L^T a = y
        for (std::size_t mi = l; mi-- > 0;) {
            long double sum = y[mi];
            for (std::size_t k = mi + 1; k < l; ++k) sum -= L[k * l + mi] * a[k];
            a[mi] = sum / L[mi * l + mi];
        }
    }
    // Horner for π, π′ and the reversed polynomial π*.
    long double p = 0.0L, dp = 0.0L, ps = 0.0L;
    for (std::size_t k = l + 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
        ps = ps * z + a[l - k];
    }
    return {p, dp, ps};
}

long double dprime_ratio_l(const ToeplitzWeight& w, std::size_t l, double alpha_plus,
                           double alpha_minus) {
    if (alpha_plus < 0.0 || alpha_minus < 0.0)
        throw std::invalid_argument("dprime_ratio: need alpha_pm >= 0");
    const long double prod = (long double)alpha_plus * (long double)alpha_minus;
    if (std::abs((double)prod - 1.0) >= 1e-8) {
        const auto ep = op_eval_l(w, l, -(long double)alpha_plus);
        const auto em = op_eval_l(w, l, -(long double)alpha_minus);
        return (ep.pi_star * em.pi_star - prod * ep.pi * em.pi) / (1.0L - prod);
    }
    // l'Hôpital form of (e-in10) at α₊α₋ = 1, with α = α₊.
    const long double a = (long double)alpha_plus;
    const auto ep = op_eval_l(w, l, -a);
    const auto em = op_eval_l(w, l, -1.0L / a);
    return (1.0L - (long double)l) * ep.pi * em.pi - a * ep.pi_prime * em.pi -
           (1.0L / a) * ep.pi * em.pi_prime;
}

ExactCdf assemble_cdf(const ToeplitzWeight& w, long double log_prefactor, double ap,
                      double am, std::size_t l_max, const char* who) {
    const auto logdet = logdets_l(w, l_max);
    ExactCdf out;
    out.cdf.resize(l_max + 1);
    out.precision_flag.assign(l_max + 1, false);
    const long double c = (long double)ap * (long double)am;
    long double r_prev = 0.0L;  // D'_{-1} := 0
    long double logdet_prev = 0.0L;
    for (std::size_t l = 0; l <= l_max; ++l) {
        const long double r_l = dprime_ratio_l(w, l, ap, am);
        const long double term =
            (l == 0) ? 0.0L : c * r_prev * std::exp(logdet_prev - logdet[l]);
        const long double bracket = r_l - term;
        const long double scale = std::max(std::abs(r_l), std::abs(term));
        const double p = (double)(std::exp(log_prefactor + logdet[l]) * bracket);
        if (p < -1e-12)
            throw precision_error(std::string(who) +
                                  ": negative probability beyond tolerance at l = " +
                                  std::to_string(l));
        out.cdf[l] = p;
        out.precision_flag[l] =
            (scale > 0.0L && std::abs(bracket) < 1e-8L * scale);
        r_prev = r_l;
        logdet_prev = logdet[l];
    }
    return out;
}

}  // namespace

ToeplitzWeight ToeplitzWeight::exponential(double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("ToeplitzWeight::exponential: need t > 0");
    ToeplitzWeight w;
    w.kind_ = Kind::EXPONENTIAL;
    w.t_ = t;
    return w;
}

ToeplitzWeight ToeplitzWeight::geometric(std::size_t n, double q) {
    if (n == 0 || !(q > 0.0 && q < 1.0))
        throw std::invalid_argument(
            "ToeplitzWeight::geometric: need n >= 1 and 0 < q < 1");
    ToeplitzWeight w;
    w.kind_ = Kind::GEOMETRIC;
    w.n_ = n;
    w.q_ = q;
    long double c0 = 0.0L;
    const long double lq = std::log((long double)q);
    for (std::size_t k = 0; k <= n; ++k)
        c0 += std::exp(2.0L * lchoose(n, k) + (long double)k * lq);
    w.log_c0_ = std::log(c0);
    return w;
}

long double ToeplitzWeight::cl(std::int64_t j) const {
    const std::size_t aj = (std::size_t)(j < 0 ? -j : j);
    if (kind_ == Kind::EXPONENTIAL)
        return std::exp(-2.0L * (long double)t_) *
               std::cyl_bessel_il((long double)aj, 2.0L * (long double)t_);
    if (aj > n_) return 0.0L;
    const long double lq = std::log((long double)q_);
    long double cj = 0.0L;
    for (std::size_t k = 0; k + aj <= n_; ++k)
        cj += std::exp(lchoose(n_, k) + lchoose(n_, k + aj) +
                       ((long double)k + (long double)aj / 2.0L) * lq - log_c0_);
    return cj;
}

long double ToeplitzWeight::log_scale_l() const {
    return kind_ == Kind::EXPONENTIAL ? 2.0L * (long double)t_ : log_c0_;
}

double ToeplitzWeight::c(std::int64_t j) const { return (double)cl(j); }

double ToeplitzWeight::log_scale() const { return (double)log_scale_l(); }

std::vector<double> toeplitz_logdet(const ToeplitzWeight& w, std::size_t l_max) {
    const auto ld = logdets_l(w, l_max);
    std::vector<double> out(ld.size());
    for (std::size_t i = 0; i < ld.size(); ++i) out[i] = (double)ld[i];
    return out;
}

OpEval monic_op_eval(const ToeplitzWeight& w, std::size_t l, double z) {
    const auto e = op_eval_l(w, l, (long double)z);
    OpEval ev;
    ev.l = l;
    ev.z = z;
    ev.pi = (double)e.pi;
    ev.pi_prime = (double)e.pi_prime;
    ev.pi_star = (double)e.pi_star;
    return ev;
}

double dprime_ratio(const ToeplitzWeight& w, std::size_t l, double alpha_plus,
                    double alpha_minus) {
    return (double)dprime_ratio_l(w, l, alpha_plus, alpha_minus);
}

ExactCdf png_cdf_exact(double t, double alpha_plus, double alpha_minus,
                       std::size_t l_max) {
    if (!(t > 0.0) || alpha_plus < 0.0 || alpha_minus < 0.0)
        throw std::invalid_argument("png_cdf_exact: need t > 0, alpha_pm >= 0");
    if (t > 12.0)
        throw envelope_error("png_cdf_exact: t > 12 exceeds the precision envelope");
    const auto w = ToeplitzWeight::exponential(t);
    const long double tl = (long double)t;
    const long double log_pref =
        -((long double)alpha_plus + (long double)alpha_minus) * tl - tl * tl;
    return assemble_cdf(w, log_pref, alpha_plus, alpha_minus, l_max, "png_cdf_exact");
}

ExactCdf lpp_cdf_exact(std::size_t n, double q, double alpha_plus,
                       double alpha_minus, std::size_t l_max) {
    if (n == 0 || !(q > 0.0 && q < 1.0) || alpha_plus < 0.0 || alpha_minus < 0.0)
        throw std::invalid_argument(
            "lpp_cdf_exact: need n >= 1, 0 < q < 1, alpha_pm >= 0");
    const double sq = std::sqrt(q);
    if (alpha_plus * sq >= 1.0 || alpha_minus * sq >= 1.0)
        throw std::invalid_argument("lpp_cdf_exact: need alpha_pm sqrt(q) < 1");
    const double nn = (double)n;
    if (nn * nn * std::abs(std::log1p(-q)) > 700.0)
        throw envelope_error("lpp_cdf_exact: N^2 log(1-q) outside exponent range");
    // Bracket cancellation grows with the effective t = N sqrt(q); N > 40 is
    // only admitted in the Poissonization regime of small q.
    if (n > 40 && q > 0.01)
        throw envelope_error("lpp_cdf_exact: N > 40 exceeds the envelope at this q");
    const auto w = ToeplitzWeight::geometric(n, q);
    const long double nl = (long double)n;
    const long double log_pref =
        nl * std::log1p(-(long double)alpha_plus * (long double)sq) +
        nl * std::log1p(-(long double)alpha_minus * (long double)sq) +
        nl * nl * std::log1p(-(long double)q);
    return assemble_cdf(w, log_pref, alpha_plus, alpha_minus, l_max, "lpp_cdf_exact");
}

}  // namespace pnglab::exact
