// kconn command-line front end: breakdown-probability estimation, parameter
// sweeps, closed-form theory queries, mean-field evaluation, and the
// verification suites. Outputs are machine-readable (JSON or CSV) and
// deterministic given the full argument vector including the seed.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kconn/connectivity.hpp"
#include "kconn/ensembles.hpp"
#include "kconn/fault.hpp"
#include "kconn/io.hpp"
#include "kconn/mc.hpp"
#include "kconn/meanfield.hpp"
#include "kconn/theory.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

struct CommonArgs {
    std::string family;
    int n = 0;
    double p = -1.0;
    double r = -1.0;
    std::int64_t pool = 0;
    int key_size = 0;
    std::string key_pmf;
    int k = 1;
    double eps = 0.0;
    std::int64_t trials = 10'000;
    std::uint64_t seed = 0;
    int threads = 0;
    std::optional<int> survivors;
    double confidence = 0.95;
    bool quenched = false;
    bool tiny_connected = false;
    std::string format = "json";
    std::string out_path;
};

kconn::EnsembleSpec build_ensemble(const CommonArgs& a) {
    kconn::EnsembleSpec spec;
    if (a.family == "er") {
        if (a.p < 0.0) throw std::invalid_argument("er family requires --p");
        spec.family = kconn::ErSpec{a.n, a.p};
    } else if (a.family == "rig") {
        if (a.pool < 1) throw std::invalid_argument("rig family requires --pool");
        kconn::KeyDistribution dist = kconn::KeyDistribution::constant(1);
        if (!a.key_pmf.empty()) {
            std::vector<std::pair<int, double>> pmf;
            for (const auto& entry : json::parse(a.key_pmf))
                pmf.emplace_back(entry.at(0).get<int>(), entry.at(1).get<double>());
            dist = kconn::KeyDistribution::general(std::move(pmf));
        } else if (a.key_size >= 1) {
            dist = kconn::KeyDistribution::constant(a.key_size);
        } else {
            throw std::invalid_argument("rig family requires --key-size or --key-pmf");
        }
        spec.family = kconn::RigSpec{a.n, a.pool, dist};
    } else if (a.family == "rgg") {
        if (a.r <= 0.0) throw std::invalid_argument("rgg family requires --r");
        spec.family = kconn::RggSpec{a.n, a.r};
    } else {
        throw std::invalid_argument("unknown family: " + a.family);
    }
    spec.validate();
    return spec;
}

kconn::mc::EstimateRequest build_request(const CommonArgs& a) {
    kconn::mc::EstimateRequest req;
    req.ensemble = build_ensemble(a);
    req.k = a.k;
    req.epsilon = a.eps;
    req.trials = a.trials;
    req.master_seed = a.seed;
    req.fixed_survivors = a.survivors;
    req.confidence = a.confidence;
    req.threads = a.threads;
    req.quenched = a.quenched;
    if (a.tiny_connected)
        req.policy.tiny_graph_rule = kconn::TinyGraphRule::empty_graph_is_connected;
    req.validate();
    return req;
}

/// Run manifest embedded in every output. Volatile fields (thread count,
/// wall-clock duration) are kept out so identical seeds give identical bytes;
/// duration is logged to stderr instead.
json make_manifest(const std::string& command, const json& parameters, std::uint64_t seed) {
    return {{"tool", "kconn"},
            {"version", kVersion},
            {"command", command},
            {"parameters", parameters},
            {"master_seed", seed}};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << text;
    }
}

std::string manifest_csv_comment(const json& manifest) {
    std::string text = "# kconn v" + manifest.at("version").get<std::string>() +
                       " command=" + manifest.at("command").get<std::string>() +
                       " seed=" + std::to_string(manifest.at("master_seed").get<std::uint64_t>()) +
                       "\n# params=" + manifest.at("parameters").dump() + "\n";
    return text;
}

json estimate_to_json(const kconn::mc::Estimate& est) {
    return {{"p_hat", est.p_hat},
            {"successes", est.successes},
            {"trials", est.trials},
            {"ci_low", est.ci_low},
            {"ci_high", est.ci_high},
            {"confidence", est.confidence},
            {"seed", est.master_seed}};
}

class Stopwatch {
  public:
    explicit Stopwatch(std::string label) : label_(std::move(label)) {}
    ~Stopwatch() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        std::cerr << label_ << " took "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
                  << " ms\n";
    }

  private:
    std::string label_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_estimate(const CommonArgs& args) {
    Stopwatch watch("estimate");
    const auto req = build_request(args);
    const auto est = req.fixed_survivors ? kconn::mc::estimate_breakdown_conditional(req)
                                         : kconn::mc::estimate_breakdown(req);

    json params = {{"ensemble", kconn::ensemble_to_json(req.ensemble)},
                   {"k", req.k},
                   {"epsilon", req.epsilon},
                   {"trials", req.trials},
                   {"confidence", req.confidence},
                   {"quenched", req.quenched}};
    if (req.fixed_survivors) params["survivors"] = *req.fixed_survivors;
    const json manifest = make_manifest("estimate", params, req.master_seed);

    if (args.format == "csv") {
        std::string text = manifest_csv_comment(manifest);
        text += "p_hat,successes,trials,ci_low,ci_high,confidence,seed\n";
        text += kconn::format_double(est.p_hat) + ',' + std::to_string(est.successes) + ',' +
                std::to_string(est.trials) + ',' + kconn::format_double(est.ci_low) + ',' +
                kconn::format_double(est.ci_high) + ',' + kconn::format_double(est.confidence) +
                ',' + std::to_string(est.master_seed) + '\n';
        emit(text, args.out_path);
    } else {
        json doc = {{"manifest", manifest}, {"estimate", estimate_to_json(est)}};
        emit(doc.dump(2) + "\n", args.out_path);
    }
    return 0;
}

struct SweepArgs {
    std::string axis;
    double from = 0.0, to = 0.0;
    int points = 0;
    std::string values_csv;
    bool couple = false;
};

std::vector<double> axis_values(const SweepArgs& s) {
    std::vector<double> values;
    if (!s.values_csv.empty()) {
        std::stringstream ss(s.values_csv);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    } else {
        if (s.points < 1) throw std::invalid_argument("sweep needs --points >= 1 or --values");
        if (s.points == 1) {
            values.push_back(s.from);
        } else {
            for (int i = 0; i < s.points; ++i)
                values.push_back(s.from + (s.to - s.from) * i / (s.points - 1));
        }
    }
    if (values.empty()) throw std::invalid_argument("sweep: empty axis");
    return values;
}

int cmd_sweep(const CommonArgs& args, const SweepArgs& sweep_args) {
    Stopwatch watch("sweep");
    const auto req = build_request(args);
    const auto axis = kconn::mc::axis_from_name(sweep_args.axis);
    const auto values = axis_values(sweep_args);
    const auto rows = kconn::mc::sweep(req, axis, values, sweep_args.couple);

    json params = {{"ensemble", kconn::ensemble_to_json(req.ensemble)},
                   {"k", req.k},
                   {"epsilon", req.epsilon},
                   {"trials", req.trials},
                   {"axis", kconn::mc::axis_name(axis)},
                   {"values", values},
                   {"coupled", sweep_args.couple}};
    const json manifest = make_manifest("sweep", params, req.master_seed);

    if (args.format == "json") {
        json out_rows = json::array();
        for (const auto& row : rows) {
            out_rows.push_back({{"axis_name", row.axis},
                                {"axis_value", row.axis_value},
                                {"n", row.n},
                                {"k", row.k},
                                {"epsilon", row.epsilon},
                                {"trials", row.trials},
                                {"successes", row.successes},
                                {"p_hat", row.p_hat},
                                {"ci_low", row.ci_low},
                                {"ci_high", row.ci_high},
                                {"seed", row.seed}});
        }
        json doc = {{"manifest", manifest}, {"rows", out_rows}};
        emit(doc.dump(2) + "\n", args.out_path);
    } else {
        std::string text = manifest_csv_comment(manifest);
        text += kconn::mc::sweep_csv_header() + "\n";
        for (const auto& row : rows) text += kconn::mc::sweep_csv_row(row) + "\n";
        emit(text, args.out_path);
    }
    return 0;
}

int cmd_theory(const CommonArgs& args, std::optional<double> value) {
    const auto prediction = kconn::theory::predict(args.family, args.n, args.k, args.eps, value);
    json params = {{"family", args.family}, {"n", args.n}, {"k", args.k}, {"epsilon", args.eps}};
    if (value) params["value"] = *value;
    json doc = {{"manifest", make_manifest("theory", params, 0)},
                {"family", prediction.family},
                {"n", prediction.n},
                {"k", prediction.k},
                {"epsilon", prediction.epsilon},
                {"threshold", prediction.threshold},
                {"limit_paper", prediction.limit_paper},
                {"limit_standard", prediction.limit_standard}};
    if (prediction.xi) doc["xi"] = *prediction.xi;
    if (prediction.regime) {
        doc["regime"] = kconn::theory::regime_name(prediction.regime->regime);
        doc["offset"] = prediction.regime->offset;
        doc["regime_note"] = "finite-n heuristic; asymptotic statements need |offset| -> infinity";
    }
    emit(doc.dump(2) + "\n", args.out_path);
    return 0;
}

int cmd_meanfield(const CommonArgs& args, double tolerance, std::int64_t max_iterations) {
    kconn::meanfield::MeanFieldSpec spec{args.n, args.p, args.eps, tolerance, max_iterations};
    const auto fp = kconn::meanfield::solve_fixed_point(spec);
    const double breakdown = kconn::meanfield::mf_breakdown(spec);
    json params = {{"n", args.n}, {"p", args.p}, {"epsilon", args.eps},
                   {"tolerance", tolerance}, {"max_iterations", max_iterations}};
    json doc = {{"manifest", make_manifest("meanfield", params, 0)},
                {"n", args.n},
                {"p", args.p},
                {"epsilon", args.eps},
                {"I_tilde", fp.i_tilde},
                {"residual", fp.residual},
                {"iterations", fp.iterations},
                {"P_mf", breakdown}};
    emit(doc.dump(2) + "\n", args.out_path);
    return 0;
}

struct VerifyArgs {
    std::string suite;
    int n = 4;
    double p = 0.5;
    double eps = 0.3;
    int k = 1;
    double kappa = 0.5;
    double delta = -1.0;
    int max_n = 8;
    int samples = 1000;
    int k_max = 3;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int cmd_verify(const VerifyArgs& v) {
    bool all_pass = true;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        all_pass = all_pass && pass;
    };

    if (v.suite == "mixture") {
        const auto rep = kconn::mc::verify_mixture_identity(kconn::ErSpec{v.n, v.p}, v.k, v.eps);
        report("mixture",
               rep.abs_error <= 1e-12,
               "lhs=" + kconn::format_double(rep.lhs) + " rhs=" + kconn::format_double(rep.rhs) +
                   " abs_error=" + kconn::format_double(rep.abs_error));
    } else if (v.suite == "typicality") {
        kconn::theory::TypicalSetSpec spec{v.n, v.kappa,
                                           v.delta > 0.0
                                               ? v.delta
                                               : kconn::theory::TypicalSetSpec::default_delta(v.n)};
        const auto mass = kconn::theory::typicality_mass(spec);
        report("typicality",
               mass.mass >= mass.lower_bound && mass.mass <= 1.0,
               "mass=" + kconn::format_double(mass.mass) +
                   " bound=" + kconn::format_double(mass.lower_bound));
    } else if (v.suite == "oracle") {
        if (!v.seed_given) throw std::invalid_argument("verify oracle requires --seed");
        kconn::RngStream rng(v.seed, 0);
        std::int64_t checked = 0, mismatches = 0;
        for (int i = 0; i < v.samples; ++i) {
            const int n = 1 + static_cast<int>(rng.next_below(v.max_n));
            const double p = rng.next_double();
            kconn::RngStream gstream(v.seed, static_cast<std::uint64_t>(i) + 1);
            const kconn::Graph g = kconn::sample_er(kconn::ErSpec{n, p}, gstream);
            for (int k = 1; k <= v.k_max; ++k) {
                ++checked;
                if (kconn::is_k_connected(g, k) != kconn::is_k_connected_bruteforce(g, k))
                    ++mismatches;
            }
        }
        report("oracle", mismatches == 0,
               "checked=" + std::to_string(checked) +
                   " mismatches=" + std::to_string(mismatches));
    } else if (v.suite == "lemma1") {
        const double delta = v.delta > 0.0 ? v.delta : 0.45;
        kconn::theory::TypicalSetSpec spec{v.n, 1.0 - v.eps, delta};
        const auto exact = kconn::mc::exact_breakdown_enumerate(kconn::ErSpec{v.n, v.p}, v.k, v.eps);
        std::map<std::int64_t, double> conditionals;
        for (int s = 0; s <= v.n; ++s) conditionals[s] = exact.conditional[s];
        const auto [lower, upper] = kconn::theory::lemma1_bounds(spec, conditionals);
        report("lemma1",
               exact.joint >= lower - 1e-12 && exact.joint <= upper + 1e-12,
               "lower=" + kconn::format_double(lower) + " exact=" +
                   kconn::format_double(exact.joint) + " upper=" + kconn::format_double(upper));
    } else {
        throw std::invalid_argument("unknown verify suite: " + v.suite);
    }
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"node-fault k-connectivity toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    SweepArgs sweep_args;
    VerifyArgs verify_args;
    std::optional<double> theory_value;
    double mf_tolerance = 1e-12;
    std::int64_t mf_max_iterations = 1'000'000;

    auto add_common = [&](CLI::App* cmd, bool needs_seed) {
        cmd->add_option("--family", args.family, "er | rig | rgg")->required();
        cmd->add_option("--n", args.n, "node count")->required();
        cmd->add_option("--p", args.p, "er edge probability");
        cmd->add_option("--r", args.r, "rgg radius");
        cmd->add_option("--pool", args.pool, "rig key pool size");
        cmd->add_option("--key-size", args.key_size, "rig constant key ring size");
        cmd->add_option("--key-pmf", args.key_pmf, "rig key pmf as JSON [[size,prob],...]");
        cmd->add_option("--k", args.k, "connectivity order");
        cmd->add_option("--eps", args.eps, "node breakdown probability");
        cmd->add_option("--trials", args.trials, "Monte Carlo trials");
        auto* seed = cmd->add_option("--seed", args.seed, "master seed");
        if (needs_seed) seed->required();
        cmd->add_option("--threads", args.threads, "worker count (0 = all cores)");
        cmd->add_option("--survivors", args.survivors, "condition on fixed survivor count");
        cmd->add_option("--confidence", args.confidence, "CI confidence level");
        cmd->add_flag("--quenched", args.quenched, "fix one graph, resample faults only");
        cmd->add_flag("--tiny-connected", args.tiny_connected,
                      "treat the empty graph as connected");
        cmd->add_option("--format", args.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", args.out_path, "output file (default stdout)");
    };

    auto* estimate = app.add_subcommand("estimate", "single-point breakdown estimate");
    add_common(estimate, true);

    auto* sweep = app.add_subcommand("sweep", "estimate along a parameter axis");
    add_common(sweep, true);
    sweep->add_option("--axis", sweep_args.axis, "p | r | key_ratio | epsilon | n")->required();
    sweep->add_option("--from", sweep_args.from, "axis start");
    sweep->add_option("--to", sweep_args.to, "axis end");
    sweep->add_option("--points", sweep_args.points, "number of axis points");
    sweep->add_option("--values", sweep_args.values_csv, "explicit comma-separated axis values");
    sweep->add_flag("--couple", sweep_args.couple, "monotone coupled sampling (er, p axis)");

    auto* theory = app.add_subcommand("theory", "thresholds, regimes, and limits");
    theory->add_option("--family", args.family, "er | rig | rgg")->required();
    theory->add_option("--n", args.n)->required();
    theory->add_option("--k", args.k);
    theory->add_option("--eps", args.eps);
    theory->add_option("--value", theory_value, "parameter value (p, r, or E[X]^2/P_n)");
    theory->add_option("--out", args.out_path);

    auto* meanfield = app.add_subcommand("meanfield", "cavity approximation for er, k=1");
    meanfield->add_option("--n", args.n)->required();
    meanfield->add_option("--p", args.p)->required();
    meanfield->add_option("--eps", args.eps);
    meanfield->add_option("--tol", mf_tolerance);
    meanfield->add_option("--max-iter", mf_max_iterations);
    meanfield->add_option("--out", args.out_path);

    auto* verify = app.add_subcommand("verify", "exactness and oracle checks");
    verify->add_option("suite", verify_args.suite, "mixture | typicality | oracle | lemma1")
        ->required();
    verify->add_option("--n", verify_args.n);
    verify->add_option("--p", verify_args.p);
    verify->add_option("--eps", verify_args.eps);
    verify->add_option("--k", verify_args.k);
    verify->add_option("--kappa", verify_args.kappa);
    verify->add_option("--delta", verify_args.delta);
    verify->add_option("--max-n", verify_args.max_n);
    verify->add_option("--samples", verify_args.samples);
    verify->add_option("--k-max", verify_args.k_max);
    verify->add_option("--seed", verify_args.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(args);
        if (sweep->parsed()) return cmd_sweep(args, sweep_args);
        if (theory->parsed()) return cmd_theory(args, theory_value);
        if (meanfield->parsed()) return cmd_meanfield(args, mf_tolerance, mf_max_iterations);
        if (verify->parsed()) {
            verify_args.seed_given = verify->count("--seed") > 0;
            return cmd_verify(verify_args);
        }
    } catch (const kconn::meanfield::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
