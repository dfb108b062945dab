#include "pnglab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pnglab/errors.hpp"
#include "pnglab/exact.hpp"
#include "pnglab/sampler.hpp"

namespace pnglab::harness {

namespace {

using Regime = ScalingSpec::Regime;

double get(const ScalingSpec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end())
        throw std::invalid_argument("run_mc: missing parameter '" + key + "'");
    return it->second;
}

double get_or(const ScalingSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

// Everything run_mc needs: the raw-observable sampler inputs and the affine
// scaling map x = (raw - loc) / scale.
struct Plan {
    Model model;
    double t = 0.0;  // PNG
    double q = 0.0;  // LPP
    std::size_t n = 0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double loc = 0.0;
    double scale = 1.0;
};

std::size_t get_n(const ScalingSpec& spec) {
    const double n = get(spec, "n");
    if (!(n >= 1.0) || n != std::floor(n))
        throw std::invalid_argument("run_mc: n must be a positive integer");
    return (std::size_t)n;
}

Plan make_plan(Model model, const ScalingSpec& spec) {
    Plan p;
    p.model = model;
    const bool is_png = spec.regime == Regime::PNG_TW ||
                        spec.regime == Regime::PNG_GAUSS ||
                        spec.regime == Regime::CRITICAL_PNG;
    if (is_png != (model == Model::PNG))
        throw std::invalid_argument("run_mc: regime does not match model");
    switch (spec.regime) {
        case Regime::PNG_TW: {
            p.t = get(spec, "t");
            p.alpha_plus = get_or(spec, "alpha_plus", 0.0);
            p.alpha_minus = get_or(spec, "alpha_minus", 0.0);
            p.loc = 2.0 * p.t;
            p.scale = std::cbrt(p.t);
            break;
        }
        case Regime::PNG_GAUSS: {
            p.t = get(spec, "t");
            p.alpha_plus = get(spec, "alpha_plus");
            p.alpha_minus = get(spec, "alpha_minus");
            const double a = std::max(p.alpha_plus, p.alpha_minus);
            if (!(a > 1.0))
                throw std::invalid_argument(
                    "run_mc: PNG_GAUSS needs max(alpha_plus, alpha_minus) > 1");
            p.loc = (a + 1.0 / a) * p.t;
            p.scale = std::sqrt((a - 1.0 / a) * p.t);
            break;
        }
        case Regime::LPP_TW: {
            p.q = get(spec, "q");
            p.n = get_n(spec);
            p.alpha_plus = get_or(spec, "alpha_plus", 0.0);
            p.alpha_minus = get_or(spec, "alpha_minus", 0.0);
            const auto s = lpp_scaling_params(p.q, 0.0);
            p.loc = s.mu * (double)p.n;
            p.scale = s.sigma * std::cbrt((double)p.n);
            break;
        }
        case Regime::LPP_GAUSS: {
            p.q = get(spec, "q");
            p.n = get_n(spec);
            p.alpha_plus = get(spec, "alpha_plus");
            p.alpha_minus = get(spec, "alpha_minus");
            const double a = std::max(p.alpha_plus, p.alpha_minus);
            if (!(a > 1.0))
                throw std::invalid_argument(
                    "run_mc: LPP_GAUSS needs max(alpha_plus, alpha_minus) > 1");
            const auto s = lpp_scaling_params(p.q, a);
            if (!s.eta)
                throw std::invalid_argument("run_mc: LPP_GAUSS scaling unavailable");
            p.loc = *s.eta * (double)p.n;
            p.scale = *s.rho * std::sqrt((double)p.n);
            break;
        }
        case Regime::CRITICAL_PNG: {
            p.t = get(spec, "t");
            const double t13 = std::cbrt(p.t);
            p.alpha_plus = 1.0 - 2.0 * get(spec, "w_plus") / t13;
            p.alpha_minus = spec.params.count("w_minus")
                                ? 1.0 - 2.0 * get(spec, "w_minus") / t13
                                : get(spec, "alpha_minus");
            p.loc = 2.0 * p.t;
            p.scale = t13;
            break;
        }
        case Regime::CRITICAL_LPP: {
            p.q = get(spec, "q");
            p.n = get_n(spec);
            const auto s = lpp_scaling_params(p.q, 0.0);
            const double sn13 = s.sigma * std::cbrt((double)p.n);
            p.alpha_plus = 1.0 - 2.0 * get(spec, "w_plus") / sn13;
            p.alpha_minus = spec.params.count("w_minus")
                                ? 1.0 - 2.0 * get(spec, "w_minus") / sn13
                                : get(spec, "alpha_minus");
            p.loc = s.mu * (double)p.n;
            p.scale = sn13;
            break;
        }
    }
    if (p.alpha_plus < 0.0 || p.alpha_minus < 0.0)
        throw std::invalid_argument("run_mc: scaling produced alpha < 0");
    return p;
}

double raw_observable(const Plan& p, std::uint64_t seed, std::uint64_t index) {
    if (p.model == Model::PNG) {
        const auto cfg =
            sampler::sample_png_config(p.t, p.alpha_plus, p.alpha_minus, seed, index);
        return (double)sampler::longest_weak_chain(cfg);
    }
    const auto inst =
        sampler::sample_lpp(p.n, p.q, p.alpha_plus, p.alpha_minus, seed, index);
    return (double)sampler::lpp_last_passage(inst, false);
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::PNG_TW: return "PNG_TW";
        case Regime::PNG_GAUSS: return "PNG_GAUSS";
        case Regime::LPP_TW: return "LPP_TW";
        case Regime::LPP_GAUSS: return "LPP_GAUSS";
        case Regime::CRITICAL_PNG: return "CRITICAL_PNG";
        case Regime::CRITICAL_LPP: return "CRITICAL_LPP";
    }
    return "?";
}

}  // namespace

LppScaling lpp_scaling_params(double q, double alpha) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("lpp_scaling_params: need 0 < q < 1");
    const double sq = std::sqrt(q);
    if (alpha >= 1.0 / sq)
        throw std::invalid_argument("lpp_scaling_params: need alpha < 1/sqrt(q)");
    LppScaling s;
    s.mu = 2.0 * sq / (1.0 - sq);
    s.sigma = std::pow(q, 1.0 / 6.0) * std::cbrt(1.0 + sq) / (1.0 - sq);
    if (alpha > 1.0) {
        const double d = (1.0 - sq * alpha) * (1.0 - sq / alpha);
        s.eta = sq * (alpha + 1.0 / alpha - 2.0 * sq) / d;
        s.rho = sq * std::sqrt((alpha - 1.0 / alpha) * (1.0 / sq - sq)) / d;
    }
    return s;
}

EcdfSummary run_mc(Model model, const ScalingSpec& spec, std::size_t samples,
                   std::uint64_t seed, unsigned threads) {
    if (samples < 100) throw std::invalid_argument("run_mc: need samples >= 100");
    const Plan plan = make_plan(model, spec);
    std::vector<double> raw(samples);
    const unsigned nt = std::max(1u, threads);
    if (nt == 1) {
        for (std::size_t i = 0; i < samples; ++i)
            raw[i] = raw_observable(plan, seed, i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < samples; i += nt)
                    raw[i] = raw_observable(plan, seed, i);
            });
        for (auto& th : pool) th.join();
    }
    EcdfSummary out;
    out.spec = spec;
    out.seed = seed;
    out.count = samples;
    out.samples.resize(samples);
    for (std::size_t i = 0; i < samples; ++i)
        out.samples[i] = (raw[i] - plan.loc) / plan.scale;
    std::sort(out.samples.begin(), out.samples.end());
    double s1 = 0.0, r1 = 0.0;
    for (double v : out.samples) s1 += v;
    std::sort(raw.begin(), raw.end());
    for (double v : raw) r1 += v;
    out.mean = s1 / (double)samples;
    out.raw_mean = r1 / (double)samples;
    double s2 = 0.0;
    for (double v : out.samples) s2 += (v - out.mean) * (v - out.mean);
    out.variance = s2 / (double)(samples - 1);
    return out;
}

double ks_distance(const EcdfSummary& ecdf, const distributions::DistributionTable& dt) {
    const auto cdf_at = [&dt](double x) {
        if (x <= dt.grid.x_lo) return dt.cdf.front();
        if (x >= dt.grid.x_hi) return dt.cdf.back();
        const double t = (x - dt.grid.x_lo) / dt.grid.step;
        const std::size_t k = std::min((std::size_t)t, dt.grid.count - 2);
        const double th = t - (double)k;
        return dt.cdf[k] + th * (dt.cdf[k + 1] - dt.cdf[k]);
    };
    const double n = (double)ecdf.count;
    double ks = 0.0;
    for (std::size_t i = 0; i < ecdf.count; ++i) {
        const double c = cdf_at(ecdf.samples[i]);
        ks = std::max(ks, std::max(c - (double)i / n, (double)(i + 1) / n - c));
    }
    return ks;
}

CompareReport compare_report(Model model, const ScalingSpec& spec, std::size_t samples,
                             std::uint64_t seed,
                             const distributions::DistributionTable& target,
                             unsigned threads) {
    const auto t0 = std::chrono::steady_clock::now();
    CompareReport rep;
    rep.model = model;
    rep.ecdf = run_mc(model, spec, samples, seed, threads);
    rep.ks = ks_distance(rep.ecdf, target);
    const auto [tm, tv] = distributions::mean_variance(target);
    rep.target_mean = tm;
    rep.target_variance = tv;
    rep.mean_delta = rep.ecdf.mean - tm;
    rep.variance_delta = rep.ecdf.variance - tv;
    try {
        const Plan plan = make_plan(model, spec);
        if (model == Model::PNG) {
            const std::size_t l_max =
                (std::size_t)std::ceil(2.0 * plan.t + 8.0 * std::cbrt(plan.t)) + 4;
            rep.exact_cdf =
                exact::png_cdf_exact(plan.t, plan.alpha_plus, plan.alpha_minus, l_max)
                    .cdf;
        } else {
            const auto s = lpp_scaling_params(plan.q, 0.0);
            const std::size_t l_max =
                (std::size_t)std::ceil(s.mu * (double)plan.n +
                                       8.0 * s.sigma * std::cbrt((double)plan.n)) + 4;
            rep.exact_cdf = exact::lpp_cdf_exact(plan.n, plan.q, plan.alpha_plus,
                                                 plan.alpha_minus, l_max)
                                .cdf;
        }
        rep.exact_available = true;
    } catch (const envelope_error&) {
        rep.exact_available = false;
        rep.exact_cdf.clear();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

std::string report_json(const CompareReport& report) {
    nlohmann::json j;
    j["model"] = report.model == Model::PNG ? "PNG" : "LPP";
    j["regime"] = regime_name(report.ecdf.spec.regime);
    j["params"] = report.ecdf.spec.params;
    j["n"] = report.ecdf.count;
    j["seed"] = report.ecdf.seed;
    j["mean"] = report.ecdf.mean;
    j["variance"] = report.ecdf.variance;
    j["ks"] = report.ks;
    j["exact_available"] = report.exact_available;
    j["runtime_ms"] = report.runtime_ms;
    return j.dump(2);
}

std::string samples_csv(const EcdfSummary& ecdf) {
    std::ostringstream os;
    os << "sample_index,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < ecdf.count; ++i)
        os << i << "," << ecdf.samples[i] << "\n";
    return os.str();
}

}  // namespace pnglab::harness
