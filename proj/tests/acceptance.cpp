// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line with the measured numbers; run with a criterion id (1..10, "rig") to
// execute one, or with no arguments to execute all.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kconn/connectivity.hpp"
#include "kconn/ensembles.hpp"
#include "kconn/fault.hpp"
#include "kconn/io.hpp"
#include "kconn/mc.hpp"
#include "kconn/meanfield.hpp"
#include "kconn/rng.hpp"
#include "kconn/theory.hpp"

namespace {

namespace mc = kconn::mc;
namespace theory = kconn::theory;
using kconn::format_double;

bool report(const std::string& id, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    return pass;
}

bool report(int id, bool pass, const std::string& detail) {
    return report(std::to_string(id), pass, detail);
    return pass;
}

mc::EstimateRequest make_request(kconn::EnsembleSpec ensemble, int k, double eps,
                                 std::int64_t trials, std::uint64_t seed) {
    mc::EstimateRequest req;
    req.ensemble = std::move(ensemble);
    req.k = k;
    req.epsilon = eps;
    req.trials = trials;
    req.master_seed = seed;
    return req;
}

// 1. Fast k-connectivity decision vs. exhaustive subset-removal oracle on
//    10^4 random graphs, n <= 8, k in {1,2,3}, 100% agreement.
bool criterion1() {
    const int graphs = 10'000;
    std::int64_t checked = 0, mismatches = 0;
    kconn::RngStream meta(1001, 0);
    for (int i = 0; i < graphs; ++i) {
        const int n = 1 + static_cast<int>(meta.next_below(8));
        const double p = meta.next_double();
        kconn::RngStream gstream(1001, 1 + i);
        const kconn::Graph g = kconn::sample_er(kconn::ErSpec{n, p}, gstream);
        for (int k = 1; k <= 3; ++k) {
            ++checked;
            if (kconn::is_k_connected(g, k) != kconn::is_k_connected_bruteforce(g, k))
                ++mismatches;
        }
    }
    return report(1, mismatches == 0,
                  "oracle agreement on " + std::to_string(checked) + " decisions, " +
                      std::to_string(mismatches) + " mismatches");
}

// 2. Joint breakdown probability equals the binomial mixture of conditional
//    ones to 1e-12 on the (n, p, eps, k) lattice, both sides exact.
bool criterion2() {
    double worst = 0.0;
    int cells = 0;
    for (int n = 2; n <= 5; ++n) {
        for (double p : {0.2, 0.5, 0.8}) {
            for (double eps : {0.1, 0.5}) {
                for (int k : {1, 2}) {
                    const auto rep = mc::verify_mixture_identity(kconn::ErSpec{n, p}, k, eps);
                    worst = std::max(worst, rep.abs_error);
                    ++cells;
                }
            }
        }
    }
    return report(2, worst <= 1e-12,
                  "mixture identity on " + std::to_string(cells) +
                      " cells, max |lhs-rhs| = " + format_double(worst));
}

// 3. Binomial mass of the typical survivor window dominates 1 - 1/(2 n delta)
//    for n in {1e2..1e5}, kappa in {0.3, 0.5, 0.9}, delta = n^(-1/3).
bool criterion3() {
    bool ok = true;
    double worst_margin = 1.0;
    for (std::int64_t n : {100, 1'000, 10'000, 100'000}) {
        for (double kappa : {0.3, 0.5, 0.9}) {
            theory::TypicalSetSpec spec{n, kappa, theory::TypicalSetSpec::default_delta(n)};
            const auto mass = theory::typicality_mass(spec);
            ok = ok && mass.mass >= mass.lower_bound && mass.mass <= 1.0;
            worst_margin = std::min(worst_margin, mass.mass - mass.lower_bound);
        }
    }
    return report(3, ok, "typicality mass beats the bound on all 12 cells, min margin = " +
                             format_double(worst_margin));
}

// 4. ER k=1 critical value: p_hat at p*(4000, 1, 0.5) within 0.05 of
//    1 - e^{-kappa} = 0.39347.
bool criterion4() {
    const double target = 1.0 - std::exp(-0.5);
    const double pstar = theory::er_threshold(4000, 1, 0.5);
    const auto est = mc::estimate_breakdown(
        make_request({kconn::ErSpec{4000, pstar}}, 1, 0.5, 20'000, 40'001));
    const double dev = std::abs(est.p_hat - target);
    return report(4, dev <= 0.05,
                  "er n=4000 k=1 at p*=" + format_double(pstar) + ": p_hat=" +
                      format_double(est.p_hat) + ", target=" + format_double(target) +
                      ", |dev|=" + format_double(dev));
}

// 5. Variant adjudication at k=3: report which limit form the 95% CI is
//    closer to; the criterion passes by producing the report.
bool criterion5() {
    const double paper_form = theory::er_limit_at_threshold(3, 0.5, theory::LimitVariant::paper);
    const double standard_form =
        theory::er_limit_at_threshold(3, 0.5, theory::LimitVariant::standard);
    const double pstar = theory::er_threshold(4000, 3, 0.5);
    const auto est = mc::estimate_breakdown(
        make_request({kconn::ErSpec{4000, pstar}}, 3, 0.5, 20'000, 40'005));
    auto ci_distance = [&](double v) {
        if (v < est.ci_low) return est.ci_low - v;
        if (v > est.ci_high) return v - est.ci_high;
        return 0.0;
    };
    const double d_paper = ci_distance(paper_form);
    const double d_standard = ci_distance(standard_form);
    const char* verdict = d_paper < d_standard   ? "theorem-as-printed form"
                          : d_paper > d_standard ? "standard min-degree form"
                                                 : "inconclusive";
    return report(5, true,
                  "adjudication: p_hat=" + format_double(est.p_hat) + " CI=[" +
                      format_double(est.ci_low) + "," + format_double(est.ci_high) +
                      "]; CI distance " + format_double(d_paper) + " to " +
                      format_double(paper_form) + " vs " + format_double(d_standard) + " to " +
                      format_double(standard_form) + "; closer to the " + verdict);
}

// 6. RGG k=1 critical value: p_hat at r*(4000, 1, 0.5) within 0.06 of
//    0.39347. Boundary effects on the unit square decay only like
//    1/sqrt(ln n), so an honest run at n = 4000 sits far above the limit.
bool criterion6() {
    const double target = 1.0 - std::exp(-0.5);
    const double rstar = theory::rgg_threshold_radius(4000, 1, 0.5);
    const auto est = mc::estimate_breakdown(
        make_request({kconn::RggSpec{4000, rstar}}, 1, 0.5, 20'000, 40'006));
    const double dev = std::abs(est.p_hat - target);
    return report(6, dev <= 0.06,
                  "rgg n=4000 k=1 at r*=" + format_double(rstar) + ": p_hat=" +
                      format_double(est.p_hat) + ", target=" + format_double(target) +
                      ", |dev|=" + format_double(dev) +
                      " (finite-size boundary effect, see README)");
}

// Linear interpolation of the p value where a decreasing curve crosses level.
std::optional<double> crossing(const std::vector<mc::SweepRow>& rows, double level) {
    for (std::size_t j = 1; j < rows.size(); ++j) {
        const double a = rows[j - 1].p_hat, b = rows[j].p_hat;
        if (a >= level && b <= level) {
            if (a == b) return rows[j].axis_value;
            const double t = (a - level) / (a - b);
            return rows[j - 1].axis_value + t * (rows[j].axis_value - rows[j - 1].axis_value);
        }
    }
    return std::nullopt;
}

// 7. Coupled ER sweeps at n in {500, 2000, 8000}: monotone decreasing curves
//    and strictly shrinking [0.1, 0.9] breakdown-band width.
bool criterion7() {
    std::vector<double> widths;
    bool monotone = true;
    std::string detail;
    for (int n : {500, 2000, 8000}) {
        const double pstar = theory::er_threshold(n, 1, 0.5);
        std::vector<double> ps;
        const int points = 25;
        for (int j = 0; j < points; ++j)
            ps.push_back(0.5 * pstar + 1.5 * pstar * j / (points - 1));
        const auto req = make_request({kconn::ErSpec{n, 0.0}}, 1, 0.5, 4000,
                                      40'007 + static_cast<std::uint64_t>(n));
        const auto rows = mc::sweep(req, mc::SweepAxis::edge_probability, ps, /*coupled=*/true);
        for (std::size_t j = 1; j < rows.size(); ++j)
            monotone = monotone && rows[j].successes <= rows[j - 1].successes;
        const auto hi = crossing(rows, 0.9);
        const auto lo = crossing(rows, 0.1);
        if (!hi || !lo) {
            return report(7, false, "band crossing not bracketed at n=" + std::to_string(n));
        }
        widths.push_back(*lo - *hi);
        detail += " w(" + std::to_string(n) + ")=" + format_double(*lo - *hi);
    }
    const bool shrinking = widths[0] > widths[1] && widths[1] > widths[2];
    return report(7, monotone && shrinking,
                  std::string("coupled sweeps: curves ") +
                      (monotone ? "monotone" : "NOT monotone") + "; band widths" + detail +
                      (shrinking ? " strictly shrinking" : " NOT shrinking"));
}

// 8. Mean-field vs. Monte Carlo at n = 500, eps = 0.3, 10 p-points around p*:
//    max |P_mf - p_hat| <= 0.1.
bool criterion8() {
    const int n = 500;
    const double eps = 0.3;
    const double pstar = theory::er_threshold(n, 1, 1.0 - eps);
    double worst = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double p = 0.5 * pstar + 1.5 * pstar * j / 9.0;
        const auto est = mc::estimate_breakdown(
            make_request({kconn::ErSpec{n, p}}, 1, eps, 10'000, 40'008 + j));
        const double mf = kconn::meanfield::mf_breakdown({n, p, eps});
        worst = std::max(worst, std::abs(mf - est.p_hat));
    }
    return report(8, worst <= 0.1,
                  "mean-field vs monte carlo on 10 points around p*: max |dev| = " +
                      format_double(worst));
}

// 9. Exact joint breakdown probability lies inside the lemma1 sandwich
//    whenever the typical window is non-degenerate (non-empty and its mass
//    actually meets the typicality bound, which is asymptotic).
bool criterion9() {
    const int n = 6;
    int checked = 0, skipped = 0;
    bool ok = true;
    for (double p : {0.2, 0.5, 0.8}) {
        for (double eps : {0.1, 0.5}) {
            for (int k : {1, 2}) {
                const auto exact = mc::exact_breakdown_enumerate(kconn::ErSpec{n, p}, k, eps);
                std::map<std::int64_t, double> cond;
                for (int s = 0; s <= n; ++s) cond[s] = exact.conditional[s];
                for (double delta : {0.3, 0.45}) {
                    theory::TypicalSetSpec spec{n, 1.0 - eps, delta};
                    const auto mass = theory::typicality_mass(spec);
                    if (mass.mass < mass.lower_bound) {
                        ++skipped;
                        continue;
                    }
                    const auto [lower, upper] = theory::lemma1_bounds(spec, cond);
                    ok = ok && exact.joint >= lower - 1e-12 && exact.joint <= upper + 1e-12;
                    ++checked;
                }
            }
        }
    }
    return report(9, ok && checked > 0,
                  "lemma1 sandwich holds on " + std::to_string(checked) +
                      " non-degenerate cells (" + std::to_string(skipped) +
                      " degenerate cells skipped)");
}

#ifdef KCONN_CLI_PATH
std::string run_cli(const std::string& args, int* exit_code) {
    const std::string cmd = std::string(KCONN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return {};
    }
    std::string output;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return output;
}
#endif

// 10. Identical seeds give byte-identical CSV output for --threads 1, 4, max.
bool criterion10() {
#ifndef KCONN_CLI_PATH
    return report(10, false, "CLI binary path not configured");
#else
    const std::string base =
        "sweep --family er --n 200 --p 0 --k 2 --eps 0.4 --axis p "
        "--values 0.02,0.04,0.06 --trials 2000 --seed 31337 --format csv";
    int c1 = 0, c4 = 0, cmax = 0;
    const std::string one = run_cli(base + " --threads 1", &c1);
    const std::string four = run_cli(base + " --threads 4", &c4);
    const std::string all = run_cli(base + " --threads 0", &cmax);
    const bool ok = c1 == 0 && c4 == 0 && cmax == 0 && one == four && one == all &&
                    !one.empty();
    return report(10, ok,
                  "csv bytes across --threads {1,4,max}: " +
                      std::string(ok ? "identical" : "DIFFER") + " (" +
                      std::to_string(one.size()) + " bytes)");
#endif
}

// RIG substitute: exact threshold equality plus a finite-n critical-value run
// with a constant key distribution chosen so E[X]^2 / P_n = p*.
bool criterion_rig() {
    const double pstar = theory::er_threshold(2000, 1, 0.5);
    const bool threshold_equal = theory::rig_threshold(2000, 1, 0.5) == pstar;
    const int key_size = 8;
    const auto pool = static_cast<std::int64_t>(std::llround(key_size * key_size / pstar));
    const double target = 1.0 - std::exp(-0.5);
    kconn::RigSpec spec{2000, pool, kconn::KeyDistribution::constant(key_size)};
    const auto est =
        mc::estimate_breakdown(make_request({spec}, 1, 0.5, 20'000, 40'011));
    const double dev = std::abs(est.p_hat - target);
    return report("rig", threshold_equal && dev <= 0.1,
                  "rig substitute: rig_threshold == er_threshold " +
                      std::string(threshold_equal ? "exactly" : "MISMATCH") +
                      "; n=2000 key_size=8 pool=" + std::to_string(pool) + ": p_hat=" +
                      format_double(est.p_hat) + ", target=" + format_double(target) +
                      ", |dev|=" + format_double(dev));
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, bool (*)()> criteria = {
        {"1", criterion1}, {"2", criterion2},  {"3", criterion3},    {"4", criterion4},
        {"5", criterion5}, {"6", criterion6},  {"7", criterion7},    {"8", criterion8},
        {"9", criterion9}, {"10", criterion10}, {"rig", criterion_rig},
    };
    bool all_pass = true;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) {
            const auto it = criteria.find(argv[i]);
            if (it == criteria.end()) {
                std::cerr << "unknown criterion: " << argv[i] << "\n";
                return 1;
            }
            all_pass = it->second() && all_pass;
        }
    } else {
        for (const char* id : {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "rig"})
            all_pass = criteria.at(id)() && all_pass;
    }
    return all_pass ? 0 : 1;
}
