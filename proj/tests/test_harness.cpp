#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pnglab/distributions.hpp"
#include "pnglab/harness.hpp"
#include "pnglab/rng.hpp"
#include "pnglab/specfun.hpp"

using namespace pnglab;
using namespace pnglab::harness;
using distributions::Kind;

namespace {

const painleve2::PainleveTable& table() {
    static auto t = painleve2::solve_default();
    return t;
}

// Inverse-CDF sampling from a DistributionTable (for KS null checks).
double inv_cdf(const distributions::DistributionTable& dt, double u) {
    std::size_t lo = 0, hi = dt.cdf.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (dt.cdf[mid] < u ? lo : hi) = mid;
    }
    const double c0 = dt.cdf[lo], c1 = dt.cdf[hi];
    const double th = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    return dt.grid.x(lo) + th * dt.grid.step;
}

EcdfSummary synthetic(const std::vector<double>& sorted) {
    EcdfSummary e;
    e.samples = sorted;
    e.count = sorted.size();
    return e;
}

}  // namespace

TEST_CASE("lpp_scaling_params closed forms") {
    const auto s = lpp_scaling_params(0.25, 0.0);
    CHECK(std::abs(s.mu - 2.0) < 1e-14);
    CHECK(std::abs(s.sigma - std::pow(0.25, 1.0 / 6.0) * std::cbrt(1.5) / 0.5) < 1e-14);
    CHECK(!s.eta);
    CHECK(!s.rho);

    const auto g = lpp_scaling_params(0.25, 1.5);
    REQUIRE(g.eta.has_value());
    CHECK(*g.eta > g.mu);  // eta(q, alpha) > mu(q) for alpha > 1
    CHECK(*g.rho > 0.0);

    CHECK_THROWS_AS(lpp_scaling_params(0.25, 2.0), std::invalid_argument);
}

TEST_CASE("ks_distance: single sample, shifted Gaussian, KS null") {
    const auto& pt = table();
    const auto nrm = distributions::cdf_table(pt, Kind::NORMAL, {});

    const double x = 0.3;
    const double ks1 = ks_distance(synthetic({x}), nrm);
    const double phi = specfun::normal_cdf(x);
    CHECK(std::abs(ks1 - std::max(phi, 1.0 - phi)) < 1e-9);

    const std::size_t n = 10000;
    std::vector<double> draws(n), shifted(n);
    rng::CounterRng g(5150, 0);
    for (std::size_t i = 0; i < n; ++i) {
        draws[i] = inv_cdf(nrm, g.next_open01());
        shifted[i] = draws[i] + 0.5;
    }
    std::sort(draws.begin(), draws.end());
    std::sort(shifted.begin(), shifted.end());
    CHECK(ks_distance(synthetic(draws), nrm) < 1.63 / std::sqrt((double)n));
    // sup_x |Phi(x - 0.5) - Phi(x)| = 2 Phi(0.25) - 1 = 0.19741
    CHECK(std::abs(ks_distance(synthetic(shifted), nrm) - 0.19741) < 0.02);
}

TEST_CASE("run_mc PNG_TW converges toward F_GUE and is reproducible") {
    const auto& pt = table();
    ScalingSpec spec;
    spec.regime = ScalingSpec::Regime::PNG_TW;
    spec.params = {{"t", 30.0}};
    const auto e = run_mc(Model::PNG, spec, 800, 99, 4);
    CHECK(e.count == 800);
    CHECK(std::abs(e.mean + 1.771) < 0.5);
    CHECK(ks_distance(e, distributions::cdf_table(pt, Kind::GUE, {})) < 0.2);

    // affine consistency between raw and scaled means
    CHECK(std::abs(e.raw_mean - (2.0 * 30.0 + std::cbrt(30.0) * e.mean)) < 1e-9);

    // bitwise reproducibility, independent of thread count
    const auto e1 = run_mc(Model::PNG, spec, 800, 99, 1);
    CHECK(e1.samples == e.samples);
}

TEST_CASE("run_mc LPP_TW converges toward F_GUE") {
    const auto& pt = table();
    ScalingSpec spec;
    spec.regime = ScalingSpec::Regime::LPP_TW;
    spec.params = {{"q", 0.25}, {"n", 50.0}};
    const auto e = run_mc(Model::LPP, spec, 800, 17, 4);
    CHECK(ks_distance(e, distributions::cdf_table(pt, Kind::GUE, {})) < 0.2);
}

TEST_CASE("run_mc Gaussian regimes match Phi and Phi^2") {
    const auto& pt = table();
    ScalingSpec spec;
    spec.regime = ScalingSpec::Regime::PNG_GAUSS;
    spec.params = {{"t", 40.0}, {"alpha_plus", 2.0}, {"alpha_minus", 0.0}};
    const auto e1 = run_mc(Model::PNG, spec, 800, 31, 4);
    CHECK(ks_distance(e1, distributions::cdf_table(pt, Kind::NORMAL, {})) < 0.1);

    spec.params["alpha_minus"] = 2.0;
    const auto e2 = run_mc(Model::PNG, spec, 800, 32, 4);
    CHECK(ks_distance(e2, distributions::cdf_table(pt, Kind::NORMAL_SQUARED, {})) < 0.1);

    spec.params["alpha_minus"] = 0.5;
    spec.params["alpha_plus"] = 0.5;
    CHECK_THROWS_AS(run_mc(Model::PNG, spec, 400, 1, 1), std::invalid_argument);
}

TEST_CASE("run_mc critical window targets G(.; w)") {
    const auto& pt = table();
    ScalingSpec spec;
    spec.regime = ScalingSpec::Regime::CRITICAL_PNG;
    spec.params = {{"t", 30.0}, {"w_plus", 0.0}, {"alpha_minus", 0.0}};
    const auto e = run_mc(Model::PNG, spec, 800, 21, 4);
    CHECK(ks_distance(e, distributions::cdf_table(pt, Kind::GOE_SQUARED, {})) < 0.25);

    // critical scaling must reject negative alpha
    spec.params["w_plus"] = 5.0;  // alpha_plus = 1 - 10/30^{1/3} < 0
    CHECK_THROWS_AS(run_mc(Model::PNG, spec, 400, 1, 1), std::invalid_argument);
    // model/regime mismatch
    spec.params["w_plus"] = 0.0;
    CHECK_THROWS_AS(run_mc(Model::LPP, spec, 400, 1, 1), std::invalid_argument);
}

TEST_CASE("compare_report bundles KS, deltas, exact CDF, JSON and CSV") {
    const auto& pt = table();
    ScalingSpec spec;
    spec.regime = ScalingSpec::Regime::PNG_TW;
    spec.params = {{"t", 8.0}};
    const auto gue = distributions::cdf_table(pt, Kind::GUE, {});
    const auto rep = compare_report(Model::PNG, spec, 400, 77, gue, 4);
    CHECK(rep.ks > 0.0);
    CHECK(std::abs(rep.mean_delta - (rep.ecdf.mean - rep.target_mean)) < 1e-15);
    CHECK(rep.exact_available);  // t = 8 is inside the exact envelope
    CHECK(rep.exact_cdf.back() > 1.0 - 1e-6);

    const auto js = report_json(rep);
    for (const char* key : {"\"model\"", "\"regime\"", "\"params\"", "\"seed\"",
                            "\"mean\"", "\"variance\"", "\"ks\"", "\"exact_available\"",
                            "\"runtime_ms\""})
        CHECK(js.find(key) != std::string::npos);

    const auto csv = samples_csv(rep.ecdf);
    CHECK(csv.rfind("sample_index,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 401);

    // identical inputs reproduce everything but the timing field
    const auto rep2 = compare_report(Model::PNG, spec, 400, 77, gue, 1);
    CHECK(rep2.ecdf.samples == rep.ecdf.samples);
    CHECK(rep2.ks == rep.ks);

    ScalingSpec far;
    far.regime = ScalingSpec::Regime::PNG_TW;
    far.params = {{"t", 30.0}};
    CHECK(!compare_report(Model::PNG, far, 400, 77, gue, 4).exact_available);
}
