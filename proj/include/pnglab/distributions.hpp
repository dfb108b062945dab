#ifndef PNGLAB_DISTRIBUTIONS_HPP
#define PNGLAB_DISTRIBUTIONS_HPP

#include <utility>
#include <vector>

#include "pnglab/grid.hpp"
#include "pnglab/painleve2.hpp"

namespace pnglab::distributions {

enum class Kind { GUE, GOE, GOE_SQUARED, GSE, F0, G, H, NORMAL, NORMAL_SQUARED };

// A limiting distribution sampled on a grid. params is empty except for
// G (one shift parameter w) and H (two shift parameters w_plus, w_minus).
struct DistributionTable {
    Kind kind = Kind::GUE;
    std::vector<double> params;
    RealGrid grid;
    std::vector<double> cdf;  // non-decreasing, clamped to [0, 1]
};

// Assemble the CDF table for one kind on an explicit grid. The grid may
// extend past the Painleve table's right edge (asymptotic continuation is
// used there); it must not extend past the left edge. H uses the general
// two-parameter formula when |w_plus + w_minus| >= 1e-3 and the
// antisymmetric-point formula (evaluated at w = (w_plus - w_minus)/2)
// otherwise. Throws std::invalid_argument on parameter arity mismatch and
// envelope_error when a shift parameter exceeds |w| <= 4.
DistributionTable cdf_table(const painleve2::PainleveTable& pt, Kind kind,
                            const std::vector<double>& params, const RealGrid& grid);

// Same on the default grid: the Painleve grid, extended rightward when a
// negative shift parameter pushes probability mass past its right edge.
DistributionTable cdf_table(const painleve2::PainleveTable& pt, Kind kind,
                            const std::vector<double>& params);

// Mean and variance by tail integration of the CDF (survival form); the
// truncated-tail correction is below 1e-8 on the default domains.
std::pair<double, double> mean_variance(const DistributionTable& dt);

// Density by 4th-order central differences (one-sided at the ends).
// Values in (-1e-9, 0) are clamped to 0; anything more negative signals an
// upstream monotonicity failure and throws precision_error.
std::vector<double> density(const DistributionTable& dt);

}  // namespace pnglab::distributions

#endif
