// pnglab: CLI over the distribution tables, samplers, exact finite-size
// formulas and the Monte Carlo comparison harness.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "pnglab/distributions.hpp"
#include "pnglab/errors.hpp"
#include "pnglab/exact.hpp"
#include "pnglab/harness.hpp"
#include "pnglab/painleve2.hpp"
#include "pnglab/sampler.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using pnglab::RealGrid;
using pnglab::distributions::Kind;
namespace dist = pnglab::distributions;
namespace harness = pnglab::harness;

const pnglab::painleve2::PainleveTable& table() {
    static auto t = pnglab::painleve2::solve_default();
    return t;
}

// Write atomically: temp file next to the target, then rename. "-" streams
// to standard output.
void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::invalid_argument("cannot open output file: " + tmp);
        os << content;
        if (!os) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void manifest(const std::string& command, std::uint64_t seed,
              const std::map<std::string, std::string>& params) {
    std::ostringstream os;
    os << "pnglab " << kVersion << " | " << command << " | seed=" << seed;
    for (const auto& [k, v] : params) os << " | " << k << "=" << v;
    std::cerr << os.str() << "\n";
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct KindSpec {
    Kind kind;
    std::vector<double> params;
};

KindSpec resolve_kind(const std::string& which, bool has_w, double w, bool has_wp,
                      double wp, bool has_wm, double wm) {
    if (which == "fgue") return {Kind::GUE, {}};
    if (which == "fgoe") return {Kind::GOE, {}};
    if (which == "fgoe2") return {Kind::GOE_SQUARED, {}};
    if (which == "fgse") return {Kind::GSE, {}};
    if (which == "f0") return {Kind::F0, {}};
    if (which == "normal") return {Kind::NORMAL, {}};
    if (which == "normal2") return {Kind::NORMAL_SQUARED, {}};
    if (which == "g") {
        if (!has_w) throw std::invalid_argument("--which g requires --w");
        return {Kind::G, {w}};
    }
    if (which == "h") {
        if (!(has_wp && has_wm))
            throw std::invalid_argument("--which h requires --w-plus and --w-minus");
        return {Kind::H, {wp, wm}};
    }
    throw std::invalid_argument("unknown distribution: " + which);
}

unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

int run(int argc, char** argv) {
    CLI::App app{"PNG/LPP limiting distributions, samplers and exact formulas"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key = value config file (# comments)");
    app.require_subcommand(1);

    // ---- dist ----------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("dist", "distribution tables and moments");
    dist_cmd->require_subcommand(1);
    dist_cmd->fallthrough();
    std::string which;
    double w = 0.0, wp = 0.0, wm = 0.0;
    double xmin = 0.0, xmax = 0.0, xstep = 0.0;
    std::string out = "-";
    dist_cmd->add_option("--which", which,
                         "fgue|fgoe|fgoe2|fgse|f0|g|h|normal|normal2")
        ->required();
    auto* ow = dist_cmd->add_option("--w", w, "shift parameter for g");
    auto* owp = dist_cmd->add_option("--w-plus", wp, "first shift parameter for h");
    auto* owm = dist_cmd->add_option("--w-minus", wm, "second shift parameter for h");
    auto* oxmin = dist_cmd->add_option("--xmin", xmin, "grid lower end");
    auto* oxmax = dist_cmd->add_option("--xmax", xmax, "grid upper end");
    auto* oxstep = dist_cmd->add_option("--step", xstep, "grid step");
    dist_cmd->add_option("--out", out, "output path, - for stdout");
    auto* dist_table = dist_cmd->add_subcommand("table", "emit x,cdf CSV");
    auto* dist_mean = dist_cmd->add_subcommand("mean", "emit mean,variance CSV");

    // ---- sim -----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("sim", "draw model realizations");
    sim_cmd->require_subcommand(1);
    sim_cmd->fallthrough();
    double t = 0.0, q = 0.0, alpha_plus = 0.0, alpha_minus = 0.0;
    std::size_t n = 0, samples = 1;
    std::uint64_t seed = 0;
    std::int64_t steps = 0, window = 0;
    std::string update_rule = "parallel";
    bool include_corner = false;
    sim_cmd->add_option("--alpha-plus", alpha_plus, "bottom/row source intensity");
    sim_cmd->add_option("--alpha-minus", alpha_minus, "left/column source intensity");
    sim_cmd->add_option("--samples", samples, "number of realizations");
    sim_cmd->add_option("--seed", seed, "RNG seed");
    sim_cmd->add_option("--out", out, "output path, - for stdout");
    auto* sim_png = sim_cmd->add_subcommand("png", "Poisson point model");
    sim_png->add_option("--t", t, "model time")->required();
    auto* sim_lpp = sim_cmd->add_subcommand("lpp", "geometric last-passage model");
    sim_lpp->add_option("--n", n, "lattice size N")->required();
    sim_lpp->add_option("--q", q, "bulk geometric parameter")->required();
    sim_lpp->add_flag("--include-corner", include_corner,
                      "add the g(alpha_plus alpha_minus) corner variate");
    auto* sim_tasep = sim_cmd->add_subcommand("tasep", "discrete exclusion process");
    sim_tasep->add_option("--q", q, "bulk stay probability")->required();
    sim_tasep->add_option("--steps", steps, "time steps")->required();
    sim_tasep->add_option("--window", window, "window halfwidth")->required();
    sim_tasep->add_option("--update-rule", update_rule, "parallel|sequential");

    // ---- exact ---------------------------------------------------------
    auto* exact_cmd = app.add_subcommand("exact", "finite-size exact CDFs");
    exact_cmd->require_subcommand(1);
    exact_cmd->fallthrough();
    std::size_t l_max = 0;
    exact_cmd->add_option("--alpha-plus", alpha_plus, "source intensity");
    exact_cmd->add_option("--alpha-minus", alpha_minus, "source intensity");
    exact_cmd->add_option("--l-max", l_max, "largest level")->required();
    exact_cmd->add_option("--out", out, "output path, - for stdout");
    auto* exact_png = exact_cmd->add_subcommand("png", "P(L(t) <= l)");
    exact_png->add_option("--t", t, "model time")->required();
    auto* exact_lpp = exact_cmd->add_subcommand("lpp", "P(X(N) <= l)");
    exact_lpp->add_option("--n", n, "lattice size N")->required();
    exact_lpp->add_option("--q", q, "bulk geometric parameter")->required();

    // ---- compare -------------------------------------------------------
    auto* cmp_cmd = app.add_subcommand("compare", "MC vs limit-law report");
    std::string model_s, regime_s, target_s;
    unsigned threads = default_threads();
    cmp_cmd->add_option("--model", model_s, "png|lpp")->required();
    cmp_cmd->add_option("--regime", regime_s,
                        "png_tw|png_gauss|lpp_tw|lpp_gauss|critical_png|critical_lpp")
        ->required();
    cmp_cmd->add_option("--samples", samples, "number of realizations")->required();
    cmp_cmd->add_option("--seed", seed, "RNG seed");
    cmp_cmd->add_option("--target", target_s,
                        "fgue|fgoe|fgoe2|fgse|f0|g|h|normal|normal2")
        ->required();
    auto* ct = cmp_cmd->add_option("--t", t, "PNG model time");
    auto* cq = cmp_cmd->add_option("--q", q, "LPP geometric parameter");
    auto* cn = cmp_cmd->add_option("--n", n, "LPP lattice size");
    auto* cap = cmp_cmd->add_option("--alpha-plus", alpha_plus, "source intensity");
    auto* cam = cmp_cmd->add_option("--alpha-minus", alpha_minus, "source intensity");
    auto* cwp = cmp_cmd->add_option("--w-plus", wp, "critical window parameter");
    auto* cwm = cmp_cmd->add_option("--w-minus", wm, "critical window parameter");
    auto* cw = cmp_cmd->add_option("--w", w, "shift parameter for target g");
    cmp_cmd->add_option("--threads", threads, "worker cap")
        ->envname("PNGLAB_THREADS");
    cmp_cmd->add_option("--out", out, "output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return 2;
    }

    std::ostringstream body;
    body.precision(17);

    if (dist_table->parsed() || dist_mean->parsed()) {
        const KindSpec ks = resolve_kind(which, ow->count() > 0, w, owp->count() > 0,
                                         wp, owm->count() > 0, wm);
        const bool custom = oxmin->count() || oxmax->count() || oxstep->count();
        if (custom && !(oxmin->count() && oxmax->count() && oxstep->count()))
            throw std::invalid_argument("--xmin, --xmax, --step must be given together");
        std::map<std::string, std::string> mp{{"which", which}};
        for (std::size_t i = 0; i < ks.params.size(); ++i)
            mp["w" + std::to_string(i)] = num(ks.params[i]);
        if (custom) {
            mp["xmin"] = num(xmin);
            mp["xmax"] = num(xmax);
            mp["step"] = num(xstep);
        }
        manifest(dist_table->parsed() ? "dist table" : "dist mean", 0, mp);
        const auto dt = custom
                            ? dist::cdf_table(table(), ks.kind, ks.params,
                                              RealGrid(xmin, xmax, xstep))
                            : dist::cdf_table(table(), ks.kind, ks.params);
        if (dist_table->parsed()) {
            body << "x,cdf\n";
            for (std::size_t i = 0; i < dt.cdf.size(); ++i)
                body << dt.grid.x(i) << "," << dt.cdf[i] << "\n";
        } else {
            const auto [m, v] = dist::mean_variance(dt);
            body << "mean,variance\n" << m << "," << v << "\n";
        }
        write_output(out, body.str());
        return 0;
    }

    if (sim_png->parsed() || sim_lpp->parsed() || sim_tasep->parsed()) {
        std::map<std::string, std::string> mp{{"samples", std::to_string(samples)},
                                              {"alpha_plus", num(alpha_plus)},
                                              {"alpha_minus", num(alpha_minus)}};
        if (sim_png->parsed()) {
            mp["t"] = num(t);
            manifest("sim png", seed, mp);
            body << "sample_index,value\n";
            for (std::size_t i = 0; i < samples; ++i) {
                const auto cfg = pnglab::sampler::sample_png_config(
                    t, alpha_plus, alpha_minus, seed, i);
                body << i << "," << pnglab::sampler::longest_weak_chain(cfg) << "\n";
            }
        } else if (sim_lpp->parsed()) {
            mp["n"] = std::to_string(n);
            mp["q"] = num(q);
            mp["include_corner"] = include_corner ? "1" : "0";
            manifest("sim lpp", seed, mp);
            body << "sample_index,value\n";
            for (std::size_t i = 0; i < samples; ++i) {
                const auto inst = pnglab::sampler::sample_lpp(n, q, alpha_plus,
                                                              alpha_minus, seed, i);
                body << i << ","
                     << pnglab::sampler::lpp_last_passage(inst, include_corner)
                     << "\n";
            }
        } else {
            mp["q"] = num(q);
            mp["steps"] = std::to_string(steps);
            mp["window"] = std::to_string(window);
            mp["update_rule"] = update_rule;
            manifest("sim tasep", seed, mp);
            pnglab::sampler::TasepRule rule;
            if (update_rule == "parallel")
                rule = pnglab::sampler::TasepRule::parallel;
            else if (update_rule == "sequential")
                rule = pnglab::sampler::TasepRule::sequential_right_to_left;
            else
                throw std::invalid_argument("--update-rule must be parallel or sequential");
            body << "sample_index,rightmost,leftmost,particles\n";
            for (std::size_t i = 0; i < samples; ++i) {
                const auto st = pnglab::sampler::tasep_run(
                    q, alpha_plus, alpha_minus, steps, window, rule, seed, i);
                std::int64_t lo = 0, hi = 0, cnt = 0;
                bool any = false;
                for (std::size_t s = 0; s < st.occupied.size(); ++s)
                    if (st.occupied[s]) {
                        const std::int64_t site = st.site_lo + (std::int64_t)s;
                        if (!any) lo = site;
                        hi = site;
                        ++cnt;
                        any = true;
                    }
                body << i << "," << hi << "," << lo << "," << cnt << "\n";
            }
        }
        write_output(out, body.str());
        return 0;
    }

    if (exact_png->parsed() || exact_lpp->parsed()) {
        std::map<std::string, std::string> mp{{"alpha_plus", num(alpha_plus)},
                                              {"alpha_minus", num(alpha_minus)},
                                              {"l_max", std::to_string(l_max)}};
        pnglab::exact::ExactCdf cdf;
        if (exact_png->parsed()) {
            mp["t"] = num(t);
            manifest("exact png", 0, mp);
            cdf = pnglab::exact::png_cdf_exact(t, alpha_plus, alpha_minus, l_max);
        } else {
            mp["n"] = std::to_string(n);
            mp["q"] = num(q);
            manifest("exact lpp", 0, mp);
            cdf = pnglab::exact::lpp_cdf_exact(n, q, alpha_plus, alpha_minus, l_max);
        }
        body << "l,cdf,precision_flag\n";
        for (std::size_t l = 0; l < cdf.cdf.size(); ++l)
            body << l << "," << cdf.cdf[l] << "," << (cdf.precision_flag[l] ? 1 : 0)
                 << "\n";
        write_output(out, body.str());
        return 0;
    }

    // compare
    harness::Model model;
    if (model_s == "png")
        model = harness::Model::PNG;
    else if (model_s == "lpp")
        model = harness::Model::LPP;
    else
        throw std::invalid_argument("--model must be png or lpp");

    harness::ScalingSpec spec;
    using Regime = harness::ScalingSpec::Regime;
    const std::map<std::string, Regime> regimes{
        {"png_tw", Regime::PNG_TW},         {"png_gauss", Regime::PNG_GAUSS},
        {"lpp_tw", Regime::LPP_TW},         {"lpp_gauss", Regime::LPP_GAUSS},
        {"critical_png", Regime::CRITICAL_PNG},
        {"critical_lpp", Regime::CRITICAL_LPP}};
    const auto rit = regimes.find(regime_s);
    if (rit == regimes.end())
        throw std::invalid_argument("unknown regime: " + regime_s);
    spec.regime = rit->second;
    if (ct->count()) spec.params["t"] = t;
    if (cq->count()) spec.params["q"] = q;
    if (cn->count()) spec.params["n"] = (double)n;
    if (cap->count()) spec.params["alpha_plus"] = alpha_plus;
    if (cam->count()) spec.params["alpha_minus"] = alpha_minus;
    if (cwp->count()) spec.params["w_plus"] = wp;
    if (cwm->count()) spec.params["w_minus"] = wm;

    const KindSpec ks =
        resolve_kind(target_s, cw->count() > 0, w, cwp->count() > 0, wp,
                     cwm->count() > 0, wm);
    std::map<std::string, std::string> mp{{"model", model_s},
                                          {"regime", regime_s},
                                          {"samples", std::to_string(samples)},
                                          {"target", target_s},
                                          {"threads", std::to_string(threads)}};
    for (const auto& [k, v] : spec.params) mp[k] = num(v);
    manifest("compare", seed, mp);

    const auto target = dist::cdf_table(table(), ks.kind, ks.params);
    const auto rep =
        harness::compare_report(model, spec, samples, seed, target, threads);
    write_output(out, harness::report_json(rep) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const pnglab::envelope_error& e) {
        std::cerr << "envelope error: " << e.what() << "\n";
        return 3;
    } catch (const pnglab::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const pnglab::window_overflow_error& e) {
        std::cerr << "window overflow: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
