#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kconn/ensembles.hpp"
#include "kconn/graph.hpp"

namespace kconn::mc {

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double confidence);

struct EstimateRequest {
    EnsembleSpec ensemble;
    int k = 1;
    double epsilon = 0.0;
    std::int64_t trials = 10'000;
    std::uint64_t master_seed = 0;
    /// When set, every trial conditions on exactly this many survivors
    /// (uniform fault set) instead of Bernoulli faults at epsilon.
    std::optional<int> fixed_survivors;
    double confidence = 0.95;
    int threads = 0;  // 0 = hardware concurrency
    /// Diagnostic mode: one fixed graph, fault-only resampling. Not the
    /// ensemble-averaged quantity, which redraws the graph every trial.
    bool quenched = false;
    ConnectivityPolicy policy{};

    void validate() const;
};

struct Estimate {
    double p_hat = 0.0;
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = 0.95;
    std::uint64_t master_seed = 0;
};

/// Breakdown-probability estimate: per trial, a fresh graph and a fresh fault
/// set; breakdown iff the survival graph is not k-connected. Annealed average
/// over both randomness sources. Deterministic given the request, independent
/// of worker count.
Estimate estimate_breakdown(const EstimateRequest& req);

/// Same, conditioning each trial on a fixed survivor count (requires
/// fixed_survivors to be set).
Estimate estimate_breakdown_conditional(const EstimateRequest& req);

/// Exhaustive-enumeration oracle for tiny ER instances (n <= 6): all labeled
/// graphs with their ER weights crossed with all fault subsets.
struct ExactBreakdown {
    double joint = 0.0;                // Bernoulli-weighted fault subsets
    std::vector<double> conditional;   // index s: uniform (n-s)-subset faults
};
ExactBreakdown exact_breakdown_enumerate(const ErSpec& spec, int k, double epsilon,
                                         ConnectivityPolicy policy = {});
double exact_breakdown_small(const ErSpec& spec, int k, double epsilon,
                             std::optional<int> fixed_survivors = {},
                             ConnectivityPolicy policy = {});

/// Checks that the joint breakdown probability equals the binomial mixture of
/// the conditional ones, both sides computed by exhaustive enumeration.
struct MixtureReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_error = 0.0;
};
MixtureReport verify_mixture_identity(const ErSpec& spec, int k, double epsilon,
                                      ConnectivityPolicy policy = {});

enum class SweepAxis { edge_probability, radius, key_ratio, epsilon, node_count };

std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

struct SweepRow {
    std::string axis;
    double axis_value = 0.0;
    int n = 0;
    int k = 1;
    double epsilon = 0.0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t seed = 0;
};

/// One estimate per axis value. Plain mode gives each point its own derived
/// seed (point 0 keeps the master seed, so a one-point sweep reproduces
/// estimate_breakdown). Coupled mode (ER, edge-probability axis only) shares
/// per-trial uniforms across all points, which makes each trial's breakdown
/// indicator non-increasing in p.
std::vector<SweepRow> sweep(const EstimateRequest& base, SweepAxis axis,
                            const std::vector<double>& values, bool coupled = false);

/// CSV rendering of sweep rows (schema: axis_name, axis_value, n, k, epsilon,
/// trials, successes, p_hat, ci_low, ci_high, seed).
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace kconn::mc
