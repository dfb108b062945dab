#ifndef PNGLAB_HARNESS_HPP
#define PNGLAB_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnglab/distributions.hpp"

namespace pnglab::harness {

enum class Model { PNG, LPP };

// Scaling regimes of the two limit theorems and their critical windows:
//   PNG_TW       x = (L - 2t) / t^{1/3}                params t, alpha_plus, alpha_minus
//   PNG_GAUSS    x = (L - (a+1/a)t) / sqrt((a-1/a)t)   a = max(alpha_plus, alpha_minus) > 1
//   LPP_TW       x = (X - mu N) / (sigma N^{1/3})      params q, n, alpha_plus, alpha_minus
//   LPP_GAUSS    x = (X - eta N) / (rho sqrt(N))       1 < a < 1/sqrt(q)
//   CRITICAL_PNG alpha_pm = 1 - 2 w_pm / t^{1/3}, TW scaling; params t, w_plus,
//                and either w_minus or a fixed alpha_minus
//   CRITICAL_LPP alpha_pm = 1 - 2 w_pm / (sigma N^{1/3}), TW scaling
struct ScalingSpec {
    enum class Regime {
        PNG_TW,
        PNG_GAUSS,
        LPP_TW,
        LPP_GAUSS,
        CRITICAL_PNG,
        CRITICAL_LPP
    };
    Regime regime = Regime::PNG_TW;
    std::map<std::string, double> params;
};

// mu, sigma always; eta, rho only for 1 < alpha < 1/sqrt(q). Throws
// std::invalid_argument when alpha >= 1/sqrt(q).
struct LppScaling {
    double mu = 0.0;
    double sigma = 0.0;
    std::optional<double> eta;
    std::optional<double> rho;
};
LppScaling lpp_scaling_params(double q, double alpha);

struct EcdfSummary {
    std::vector<double> samples;  // scaled, sorted ascending
    std::size_t count = 0;
    double mean = 0.0;      // of the scaled samples
    double variance = 0.0;  // unbiased
    double raw_mean = 0.0;  // of the unscaled observable
    ScalingSpec spec;
    std::uint64_t seed = 0;
};

// Draw `samples` independent realizations (fanned out over sample indices,
// optionally across threads; the result is identical for any thread count),
// apply the regime's scaling map, and summarize. Throws
// std::invalid_argument for missing/inconsistent parameters or a critical
// scaling that produces alpha < 0.
EcdfSummary run_mc(Model model, const ScalingSpec& spec, std::size_t samples,
                   std::uint64_t seed, unsigned threads = 1);

// Two-sided Kolmogorov-Smirnov distance between the ECDF and a CDF table
// (linear interpolation inside the grid, 0/1 outside).
double ks_distance(const EcdfSummary& ecdf, const distributions::DistributionTable& dt);

struct CompareReport {
    Model model = Model::PNG;
    EcdfSummary ecdf;
    double ks = 0.0;
    double target_mean = 0.0;
    double target_variance = 0.0;
    double mean_delta = 0.0;
    double variance_delta = 0.0;
    bool exact_available = false;
    std::vector<double> exact_cdf;  // P(raw <= l), l = 0.., when available
    double runtime_ms = 0.0;
};

// run_mc + ks_distance + moment deltas, plus the exact finite-size CDF when
// the parameters are inside the exact module's envelope.
CompareReport compare_report(Model model, const ScalingSpec& spec, std::size_t samples,
                             std::uint64_t seed,
                             const distributions::DistributionTable& target,
                             unsigned threads = 1);

// {model, regime, params{}, n, seed, mean, variance, ks, exact_available,
// runtime_ms} as a JSON object.
std::string report_json(const CompareReport& report);

// "sample_index,value" lines of the scaled, sorted samples.
std::string samples_csv(const EcdfSummary& ecdf);

}  // namespace pnglab::harness

#endif
