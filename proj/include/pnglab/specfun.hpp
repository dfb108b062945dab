#ifndef PNGLAB_SPECFUN_HPP
#define PNGLAB_SPECFUN_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "pnglab/grid.hpp"

namespace pnglab::specfun {

struct AiryValue {
    double ai;
    double ai_prime;
};

// Airy function Ai and its derivative. Maclaurin series for |x| <= 4.5,
// asymptotic expansions beyond.
AiryValue airy_ai(double x);

// Standard normal distribution function Phi(x).
double normal_cdf(double x);

// Scaled modified Bessel values e^{-z} I_k(z), k = 0..n_max, by backward
// recurrence normalized with e^{-z}(I_0 + 2 sum I_k) = 1. Requires z > 0.
std::vector<double> bessel_i_scaled(std::size_t n_max, double z);

// Running antiderivative from the right end: out[i] = integral_{x_i}^{x_hi}
// of the sampled values, out[count-1] = 0. Fourth order in the grid step.
std::vector<double> integrate_sampled(const RealGrid& grid, const std::vector<double>& values);

}  // namespace pnglab::specfun

#endif
