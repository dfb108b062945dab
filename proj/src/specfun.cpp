#include "pnglab/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pnglab::specfun {

namespace {

constexpr long double kAi0 = 0.35502805388781723926006318600418317640L;   // 3^{-2/3}/Gamma(2/3)
constexpr long double kAip0 = -0.25881940379280679840518356018920396348L;  // -3^{-1/3}/Gamma(1/3)

// Maclaurin series; valid everywhere, used for |x| <= 4.5.
AiryValue airy_series(double x) {
    if (x == 0.0) return {(double)kAi0, (double)kAip0};
    const long double xl = x;
    const long double x3 = xl * xl * xl;
    long double f = 1.0L, fp = 0.0L;   // f  = sum a_k x^{3k},   fp = f'
    long double g = xl, gp = 1.0L;     // g  = sum b_k x^{3k+1}, gp = g'
    long double ta = 1.0L, tb = xl;    // current terms of f and g
    for (int k = 0; k < 200; ++k) {
        ta *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        tb *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += ta;
        g += tb;
        fp += (3.0L * k + 3.0L) * ta / xl;  // d/dx of a_{k+1} x^{3k+3}
        gp += (3.0L * k + 4.0L) * tb / xl;
        if (std::abs((double)ta) < 1e-20 * std::abs((double)f) &&
            std::abs((double)tb) < 1e-20 * std::max(1.0, std::abs((double)g)))
            break;
    }
    return {(double)(kAi0 * f + kAip0 * g), (double)(kAi0 * fp + kAip0 * gp)};
}

// Coefficients of the Airy asymptotic series: c_0 = 1,
// c_{k+1} = c_k (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1)),
// and d_k = -(6k+1)/(6k-1) c_k for the derivative series.
AiryValue airy_asymptotic_pos(double x) {
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    long double sc = 0.0L, sd = 0.0L;
    long double ck = 1.0L;
    long double term_prev = std::numeric_limits<long double>::max();
    int sign = 1;
    for (int k = 0; k < 60; ++k) {
        const long double zk = std::pow((long double)zeta, (long double)k);
        const long double tc = ck / zk;
        if (std::abs((double)tc) > (double)term_prev) break;  // divergence onset
        term_prev = std::abs((double)tc);
        const long double dk = -ck * (6.0L * k + 1.0L) / (6.0L * k - 1.0L);
        sc += sign * tc;
        sd += sign * dk / zk;
        if ((double)term_prev < 1e-19 * std::abs((double)sc)) break;
        ck *= (6.0L * k + 1.0L) * (6.0L * k + 3.0L) * (6.0L * k + 5.0L) /
              (216.0L * (k + 1.0L) * (2.0L * k + 1.0L));
        sign = -sign;
    }
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    const double x14 = std::pow(x, 0.25);
    return {pref / x14 * (double)sc, -pref * x14 * (double)sd};
}

AiryValue airy_asymptotic_neg(double x) {
    const double z = -x;
    const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
    // Even/odd splits of the c and d series with alternating signs in k.
    long double ce = 0.0L, co = 0.0L, de = 0.0L, doo = 0.0L;
    long double ck = 1.0L;
    long double term_prev = std::numeric_limits<long double>::max();
    for (int k = 0; k < 60; ++k) {
        const long double zk = std::pow((long double)zeta, (long double)k);
        const long double tc = ck / zk;
        if (std::abs((double)tc) > (double)term_prev) break;
        term_prev = std::abs((double)tc);
        const long double td = -ck * (6.0L * k + 1.0L) / (6.0L * k - 1.0L) / zk;
        const int half = k / 2;
        const long double s = (half % 2 == 0) ? 1.0L : -1.0L;  // (-1)^{floor(k/2)}
        if (k % 2 == 0) { ce += s * tc; de += s * td; }
        else            { co += s * tc; doo += s * td; }
        if ((double)term_prev < 1e-19) break;
        ck *= (6.0L * k + 1.0L) * (6.0L * k + 3.0L) * (6.0L * k + 5.0L) /
              (216.0L * (k + 1.0L) * (2.0L * k + 1.0L));
    }
    const double phase = zeta + 0.25 * M_PI;
    const double sn = std::sin(phase), cs = std::cos(phase);
    const double z14 = std::pow(z, 0.25);
    const double ai = (sn * (double)ce - cs * (double)co) / (std::sqrt(M_PI) * z14);
    const double aip = -z14 / std::sqrt(M_PI) * (cs * (double)de + sn * (double)doo);
    return {ai, aip};
}

}  // namespace

AiryValue airy_ai(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("airy_ai: x must be finite");
    // Series/asymptotic seams chosen where both branches agree to ~1e-11:
    // the positive seam is limited by series cancellation, the negative one
    // by the alternating-series error of the asymptotic expansion.
    if (x > 5.5) return airy_asymptotic_pos(x);
    if (x < -8.0) return airy_asymptotic_neg(x);
    return airy_series(x);
}

double normal_cdf(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("normal_cdf: x must be finite");
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

std::vector<double> bessel_i_scaled(std::size_t n_max, double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel_i_scaled: require z > 0");
    const std::size_t start =
        n_max + static_cast<std::size_t>(2.0 * std::sqrt(40.0 * z)) + 40;
    std::vector<long double> raw(n_max + 1, 0.0L);
    long double ip = 0.0L;    // I_{k+1}, unnormalized
    long double ic = 1e-30L;  // I_k
    long double sum = 0.0L;   // accumulates i_0 + 2 sum_{k>=1} i_k
    for (std::size_t k = start; k >= 1; --k) {
        const long double im1 = ip + (2.0L * (long double)k / z) * ic;  // I_{k-1}
        if (k <= n_max) raw[k] = ic;
        sum += 2.0L * ic;
        ip = ic;
        ic = im1;
        if (std::abs((double)ic) > 1e280) {  // rescale to avoid overflow
            const long double s = 1e-280L;
            ic *= s; ip *= s; sum *= s;
            for (auto& r : raw) r *= s;
        }
    }
    raw[0] = ic;
    sum += ic;  // sum = i_0 + 2 sum_{k>=1} i_k = e^{z} * scale
    std::vector<double> out(n_max + 1);
    for (std::size_t k = 0; k <= n_max; ++k) out[k] = (double)(raw[k] / sum);
    return out;
}

std::vector<double> integrate_sampled(const RealGrid& grid, const std::vector<double>& values) {
    const std::size_t n = grid.count;
    if (values.size() != n)
        throw std::invalid_argument("integrate_sampled: values length must equal grid.count");
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    const double h = grid.step;
    // Per-panel quadrature, cubic (4-point) rule in the interior so the
    // running antiderivative is 4th order at every grid point.
    std::vector<long double> panel(n - 1);
    if (n == 2) {
        panel[0] = 0.5L * h * ((long double)values[0] + values[1]);
    } else if (n == 3) {
        panel[0] = h / 12.0L * (5.0L * values[0] + 8.0L * values[1] - values[2]);
        panel[1] = h / 12.0L * (-(long double)values[0] + 8.0L * values[1] + 5.0L * values[2]);
    } else {
        panel[0] = h / 24.0L *
                   (9.0L * values[0] + 19.0L * values[1] - 5.0L * values[2] + values[3]);
        for (std::size_t i = 1; i + 2 < n; ++i)
            panel[i] = h / 24.0L * (-(long double)values[i - 1] + 13.0L * values[i] +
                                    13.0L * values[i + 1] - values[i + 2]);
        panel[n - 2] = h / 24.0L * ((long double)values[n - 4] - 5.0L * values[n - 3] +
                                    19.0L * values[n - 2] + 9.0L * values[n - 1]);
    }
    long double acc = 0.0L;
    out[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        acc += panel[i];
        out[i] = (double)acc;
    }
    return out;
}

}  // namespace pnglab::specfun
