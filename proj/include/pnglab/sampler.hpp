#ifndef PNGLAB_SAMPLER_HPP
#define PNGLAB_SAMPLER_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace pnglab::sampler {

// A Poisson point realization in the open unit square with edge sources.
struct PointConfiguration {
    std::vector<std::pair<double, double>> interior;  // (x, y) in (0,1)^2
    std::vector<double> bottom;                       // x-coordinates, y = 0
    std::vector<double> left;                         // y-coordinates, x = 0
};

// One realization of the geometric-weight lattice polymer on the
// (n+1) x (n+1) grid. weights[0][0] is always 0; the corner variate
// (distributed g(alpha_plus * alpha_minus), drawn from the same stream)
// is stashed separately and only added by lpp_last_passage on request.
struct LppInstance {
    std::size_t n = 0;
    double q = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    std::vector<std::vector<std::int64_t>> weights;
    std::int64_t corner_weight = 0;
};

enum class TasepRule { parallel, sequential_right_to_left };

// Discrete exclusion process state on a finite window.
struct TasepState {
    std::int64_t site_lo = 0;
    std::int64_t site_hi = 0;
    std::vector<bool> occupied;  // indexed by site - site_lo
    std::int64_t time = 0;
    double q = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
};

// Poisson(t^2) interior points, Poisson(alpha_plus t) bottom-edge and
// Poisson(alpha_minus t) left-edge points, i.i.d. uniform coordinates;
// fully determined by (seed, index).
PointConfiguration sample_png_config(double t, double alpha_plus, double alpha_minus,
                                     std::uint64_t seed, std::uint64_t index);

// Length of the longest weakly up/right chain through the configuration,
// edge points included at (x,0) and (0,y). O(n log n): sort (x asc, y asc),
// then longest non-decreasing subsequence in y.
std::size_t longest_weak_chain(const PointConfiguration& cfg);

// Geometric-weight instance: bulk w(i,j) ~ g(q), row 0 / column 0 ~
// g(alpha_pm sqrt(q)), w(0,0) = 0. Geometric variates by inversion,
// floor(ln U / ln p). Throws std::invalid_argument unless 0 < q < 1 and
// alpha_pm sqrt(q) < 1 with alpha_pm >= 0.
LppInstance sample_lpp(std::size_t n, double q, double alpha_plus, double alpha_minus,
                       std::uint64_t seed, std::uint64_t index);

// Last-passage value M[n][n] of the DP M[i][j] = w[i][j] +
// max(M[i-1][j], M[i][j-1]). With include_corner_weight the stashed
// g(alpha_plus alpha_minus) corner variate is added at (0,0); requesting
// it with alpha_plus * alpha_minus >= 1 throws std::invalid_argument.
std::int64_t lpp_last_passage(const LppInstance& inst, bool include_corner_weight);

// Evolve the discrete exclusion process `steps` time steps from the
// initial condition (particles at {..., -4, -3, -2} and {0}) on the window
// [-window_halfwidth, window_halfwidth]. The rightmost particle jumps
// right with probability 1 - alpha_plus sqrt(q); the particle behind the
// leftmost hole jumps with probability 1 - alpha_minus sqrt(q); bulk
// particles jump right with probability 1 - q when the right site is
// vacant. Throws window_overflow_error if the dynamics touches the window
// boundary, std::invalid_argument if any jump probability is outside [0,1].
TasepState tasep_run(double q, double alpha_plus, double alpha_minus,
                     std::int64_t steps, std::int64_t window_halfwidth,
                     TasepRule rule, std::uint64_t seed, std::uint64_t index);

}  // namespace pnglab::sampler

#endif
