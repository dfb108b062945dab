#ifndef PNGLAB_PAINLEVE2_HPP
#define PNGLAB_PAINLEVE2_HPP

#include <vector>

#include "pnglab/grid.hpp"

namespace pnglab::painleve2 {

// Tabulated Hastings-McLeod data. u is the Painleve II solution with
// u ~ -Ai at +infinity, v its integrated square taken from +infinity,
// E and F the half-exponential integrals entering the Tracy-Widom laws.
struct PainleveTable {
    RealGrid grid;
    std::vector<double> u;
    std::vector<double> u_prime;
    std::vector<double> v;
    std::vector<double> E;
    std::vector<double> F;
};

struct PainleveValue {
    double u;
    double u_prime;
    double v;
    double E;
    double F;
};

// Solve the Hastings-McLeod boundary-value problem on [x_lo, x_hi] and
// tabulate u, u', v, E, F. Requires x_lo <= -8, x_hi >= 6, step <= 0.01,
// tol >= 1e-13. Throws solver_error on Newton non-convergence.
PainleveTable solve_hastings_mcleod(double x_lo, double x_hi, double step, double tol);

// Default table: domain [-10, 8], step 0.005.
inline PainleveTable solve_default() { return solve_hastings_mcleod(-10.0, 8.0, 0.005, 1e-11); }

// Piecewise-cubic Hermite interpolation on the table. x must be inside the
// grid; tails are the caller's job via the asymptotic formulas.
PainleveValue eval_painleve(const PainleveTable& table, double x);

// y(x) = x + 2u'(x) + 2u(x)^2.
double aux_y(const PainleveTable& table, double x);

}  // namespace pnglab::painleve2

#endif
