#ifndef PNGLAB_EXACT_HPP
#define PNGLAB_EXACT_HPP

#include <cstdint>
#include <vector>

namespace pnglab::exact {

// Scaled Fourier coefficients of a positive symbol on the unit circle.
// EXPONENTIAL(t):  symbol e^{2t cos θ}, ĉ_j = e^{-2t} I_j(2t), scale s = 2t.
// GEOMETRIC(n,q):  symbol (1+√q z)^n (1+√q z^{-1})^n, ĉ_j = c_j / c_0 with
//                  c_j = Σ_k C(n,k) C(n,k+j) q^{k+j/2}, scale s = log c_0.
// Either way the true Toeplitz determinant satisfies
// log D_l = l·s + log det(ĉ_{j-k})_{0≤j,k<l}; the monic-polynomial system is
// homogeneous in c, so the normalization is exact.
class ToeplitzWeight {
  public:
    enum class Kind { EXPONENTIAL, GEOMETRIC };

    static ToeplitzWeight exponential(double t);
    static ToeplitzWeight geometric(std::size_t n, double q);

    Kind kind() const { return kind_; }
    double t() const { return t_; }
    std::size_t n() const { return n_; }
    double q() const { return q_; }

    double c(std::int64_t j) const;  // ĉ_j = ĉ_{-j}
    double log_scale() const;        // s

    // Internal extended-precision accessors: the D'_l - α₊α₋ D'_{l-1}
    // bracket amplifies rounding of the polynomial values by the
    // cancellation ratio, so all moments and solves run in long double.
    long double cl(std::int64_t j) const;
    long double log_scale_l() const;

  private:
    ToeplitzWeight() = default;
    Kind kind_ = Kind::EXPONENTIAL;
    double t_ = 0.0;
    std::size_t n_ = 0;
    double q_ = 0.0;
    long double log_c0_ = 0.0L;  // GEOMETRIC only
};

// Monic orthogonal polynomial of the weight, evaluated at a real point:
// π_l(z), its derivative, and the reversed polynomial π*_l(z) = z^l π_l(1/z).
struct OpEval {
    std::size_t l = 0;
    double z = 0.0;
    double pi = 1.0;
    double pi_prime = 0.0;
    double pi_star = 1.0;
};

// log D_l for l = 0..l_max (log D_0 := 0), by one Cholesky factorization of
// the ĉ-section accumulated in log space. Throws precision_error naming the
// failing l if a pivot is not positive.
std::vector<double> toeplitz_logdet(const ToeplitzWeight& w, std::size_t l_max);

// Coefficients from the l×l Toeplitz system Σ_k a_k ĉ_{m-k} = -ĉ_{m-l}
// (Cholesky), values by Horner.
OpEval monic_op_eval(const ToeplitzWeight& w, std::size_t l, double z);

// D′_l / D_l: the general formula when |α₊α₋ - 1| >= 1e-8, the l'Hôpital
// form (with α = α₊) otherwise.
double dprime_ratio(const ToeplitzWeight& w, std::size_t l, double alpha_plus,
                    double alpha_minus);

// Probability sequence plus a per-entry cancellation flag: flagged entries
// lost more than 8 digits in the bracket D′_l - α₊α₋ D′_{l-1} despite the
// compensated accumulation.
struct ExactCdf {
    std::vector<double> cdf;
    std::vector<bool> precision_flag;
};

// Prob(L(t) ≤ l) for l = 0..l_max. Envelope t ≤ 12 (envelope_error beyond);
// precision_error if a computed probability falls below -1e-12.
ExactCdf png_cdf_exact(double t, double alpha_plus, double alpha_minus,
                       std::size_t l_max);

// Prob(X(N) ≤ l) for the geometric-weight polymer, same conventions.
// Requires α±√q < 1 (std::invalid_argument); envelope_error when
// N² |log(1-q)| leaves the double exponent range or N > 40 at q > 0.01.
ExactCdf lpp_cdf_exact(std::size_t n, double q, double alpha_plus,
                       double alpha_minus, std::size_t l_max);

}  // namespace pnglab::exact

#endif
