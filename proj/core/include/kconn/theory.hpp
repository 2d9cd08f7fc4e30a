#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace kconn::theory {

/// The critical-point limit formulas exist in two algebraically different
/// shapes for k >= 3: the form written in the source theorems (exponent
/// kappa^(1/(k-1)!), inner exponent e^(-c/m!)) and the standard
/// minimum-degree form (kappa/(k-1)!, e^(-c)/m!). They coincide for k <= 2.
/// Both are exposed; Monte Carlo adjudicates empirically.
enum class LimitVariant { paper, standard };

enum class Regime { subcritical, critical, supercritical };

std::string regime_name(Regime r);
double factorial(int m);

/// ER / RIG k-connectivity threshold p* = (ln n + (k-1) ln ln n) / (kappa n).
double er_threshold(std::int64_t n, int k, double kappa);

/// Limiting breakdown probability at p = p*.
double er_limit_at_threshold(int k, double kappa, LimitVariant variant);

struct RegimeResult {
    Regime regime;
    /// Signed finite-n offset: kappa*n*p - ln n - (k-1) ln ln n. The
    /// asymptotic statements need |offset| -> infinity; at fixed n the label
    /// is a heuristic classification of the sign.
    double offset;
};
RegimeResult er_regime(double p, std::int64_t n, int k, double kappa);

/// Limiting minimum-degree probabilities for G(n,p) at
/// p = (ln n + m ln ln n + c + o(1))/n: returns (Pr[delta=m], Pr[delta=m+1]).
std::pair<double, double> bollobas_min_degree_limit(int m, double c, LimitVariant variant);

/// RIG transition point for E[X]^2 / P_n; numerically equal to er_threshold.
double rig_threshold(std::int64_t n, int k, double kappa);

/// Finite-n diagnostics for the RIG theorem hypotheses. The asymptotic
/// conditions have no exact finite-n meaning; the flags are heuristics.
struct RigConditions {
    double mean_ratio;  // E[X] / sqrt(ln n)
    double var_ratio;   // Var[X] * n (ln n)^2 / E[X]^2
    bool mean_pass;
    bool var_pass;
};
RigConditions rig_conditions_check(double mean_key, double var_key, std::int64_t n);

/// Limiting probability of k-connectedness of the RIG at offset alpha*;
/// +/-infinity inputs map to the 1 / 0 branches.
double zhao_limit(double alpha_star, int k);

/// Limiting Pr[min degree >= 1] of the RGG at r_n = sqrt((ln n + c)/(pi n)).
double penrose_limit(double c);

/// Hitting radius for min degree >= k+1 on the unit square at constant c.
double wan_xi(int k, double c);
double wan_radius(std::int64_t n, int k, double c);

/// RGG breakdown threshold radius r* and its xi constant.
double rgg_xi(int k);
double rgg_threshold_radius(std::int64_t n, int k, double kappa);

/// Limiting breakdown probability of the RGG at r = r*.
double rgg_limit_at_threshold(int k, double kappa);

/// Strongly typical survivor-count window [s-, s+] with s(+/-) = (kappa +/- delta) n.
struct TypicalSetSpec {
    std::int64_t n;
    double kappa;
    double delta;  // default schedule n^(-1/3)

    static double default_delta(std::int64_t n);
    void validate() const;
};

/// Inward-rounded integer window; rounding inward keeps the typicality
/// inequality intact. Throws if the window is empty.
std::pair<std::int64_t, std::int64_t> typical_range(const TypicalSetSpec& spec);

struct TypicalityMass {
    double mass;         // sum of B(s; n, kappa) over [s-, s+]
    double lower_bound;  // 1 - 1/(2 n delta)
};
TypicalityMass typicality_mass(const TypicalSetSpec& spec);

/// Breakdown-probability sandwich from the typical window:
///   lower = (1 - 1/(2 n delta)) * min, upper = 1/(2 n delta) + max,
/// both clamped to [0,1]. `conditional_probs` must cover every s in range.
std::pair<double, double> lemma1_bounds(const TypicalSetSpec& spec,
                                        const std::map<std::int64_t, double>& conditional_probs);

/// One-stop evaluation for the CLI.
struct TheoryPrediction {
    std::string family;
    std::int64_t n;
    int k;
    double epsilon;
    double threshold;
    double limit_paper;
    double limit_standard;
    std::optional<double> xi;               // rgg only
    std::optional<RegimeResult> regime;     // present when a parameter value is given
};
TheoryPrediction predict(const std::string& family, std::int64_t n, int k, double epsilon,
                         std::optional<double> parameter_value);

}  // namespace kconn::theory
