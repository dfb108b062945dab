#ifndef PNGLAB_TRANSITION_HPP
#define PNGLAB_TRANSITION_HPP

#include <utility>
#include <vector>

#include "pnglab/painleve2.hpp"

namespace pnglab::transition {

// Sampled a(x,w), b(x,w) on the Painleve grid for one shift parameter w.
struct TransitionProfile {
    double w = 0.0;
    RealGrid grid;
    std::vector<double> a;
    std::vector<double> b;
};

struct AbValue {
    double a;
    double b;
};

// (a,b) at a single point by integrating the w-direction linear ODE system
// from the w = 0 data (E^2, -E^2). Negative w goes through the reflection
// identity a(x,w) = -b(x,-w) e^{(8/3)w^3 - 2xw} (and likewise for b), with
// the exponent kept separate to avoid overflow. When the w-direction system
// is too ill-conditioned (its worst-case growth exponent over [0,w] exceeds
// a fixed budget) the value comes from the x-direction machinery instead.
// Envelope |w| <= 6.
AbValue ab_at(const painleve2::PainleveTable& pt, double x, double w);

// Whole-grid profile from the x-direction ODE system in the scaled
// variables (a, b e^{2xw - (8/3)w^3}), swept leftward from a start point
// deep enough in the right tail that the asymptotic data (1, -1) carries a
// truncation error too small to survive the sweep's amplification. Below a
// matching point the solution is continued along the recessive direction
// (a Riccati equation for b/a plus an amplitude integral), which is immune
// to the parasitic growth of the linear system. Requires w >= 0; negative
// w must go through the reflection identity.
TransitionProfile ab_profile_x(const painleve2::PainleveTable& pt, double w);

// (a,b) at arbitrary non-increasing abscissae for one w >= 0, sharing a
// single x-direction sweep. Abscissae may exceed the table's right edge
// (up to x <= 100, u = -Ai beyond the table) but not its left edge.
std::vector<AbValue> ab_values(const painleve2::PainleveTable& pt, double w,
                               const std::vector<double>& x_desc);

// a(x, w) for w < 0 at non-increasing abscissae: the reflection identity
// a(x,w) = -b(x,-w) e^{(8/3)w^3-2xw} evaluated in scaled variables (where
// the exponential factors cancel exactly), sharing one sweep. Same
// abscissa range as ab_values.
std::vector<double> a_reflected(const painleve2::PainleveTable& pt, double w,
                                const std::vector<double>& x_desc);

// a(2y sqrt|w| + 4w^2, w) for w <= -1.5, via the reflection identity plus
// x-direction integration on an extended grid (u = -Ai beyond the table).
double erf_limit_check(const painleve2::PainleveTable& pt, double w, double y);

// a at scaled abscissae x_target (all >= some minimum), w <= -1.5; the
// vector form shares one extended integration sweep. Entries must be given
// in decreasing order of x_target.
std::vector<double> a_extended(const painleve2::PainleveTable& pt, double w,
                               const std::vector<double>& x_targets);

}  // namespace pnglab::transition

#endif
