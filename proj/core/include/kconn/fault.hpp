#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kconn/graph.hpp"
#include "kconn/rng.hpp"

namespace kconn {

/// Node fault process: each node independently fails with probability epsilon.
struct FaultSpec {
    double epsilon = 0.0;

    double kappa() const { return 1.0 - epsilon; }
    void validate() const;
};

/// One survival-graph draw: the failed nodes, the survivor count, and the
/// induced subgraph on the survivors (relabeled 0..s-1). Immutable value.
struct FaultTrial {
    std::vector<int> fault_set;
    int survivor_count = 0;
    Graph survival_graph;
};

/// Bernoulli fault set at epsilon; survivor count is Binomial(n, kappa).
FaultTrial sample_survival(const Graph& g, const FaultSpec& spec, RngStream& rng);

/// Uniformly random (n-s)-subset fault set; all C(n, n-s) choices equiprobable.
FaultTrial sample_survival_conditional(const Graph& g, int survivors, RngStream& rng);

/// B(s; n, kappa) = C(n,s) (1-kappa)^(n-s) kappa^s, evaluated in log space.
double binomial_pmf(int s, int n, double kappa);

/// Debug dump: {"fault_set":[...], "s":int}.
nlohmann::json fault_trial_to_json(const FaultTrial& trial);

}  // namespace kconn
