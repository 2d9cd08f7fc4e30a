#include "kconn/fault.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kconn {

void FaultSpec::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("fault: epsilon must be in [0,1]");
}

namespace {

FaultTrial make_trial(const Graph& g, std::vector<int> fault_set) {
    std::sort(fault_set.begin(), fault_set.end());
    std::vector<int> keep;
    keep.reserve(g.node_count() - fault_set.size());
    std::size_t fi = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        if (fi < fault_set.size() && fault_set[fi] == v) {
            ++fi;
        } else {
            keep.push_back(v);
        }
    }
    FaultTrial trial;
    trial.survivor_count = static_cast<int>(keep.size());
    trial.survival_graph = induced_subgraph(g, keep);
    trial.fault_set = std::move(fault_set);
    return trial;
}

}  // namespace

FaultTrial sample_survival(const Graph& g, const FaultSpec& spec, RngStream& rng) {
    spec.validate();
    std::vector<int> faults;
    for (int v = 0; v < g.node_count(); ++v)
        if (rng.bernoulli(spec.epsilon)) faults.push_back(v);
    return make_trial(g, std::move(faults));
}

FaultTrial sample_survival_conditional(const Graph& g, int survivors, RngStream& rng) {
    const int n = g.node_count();
    if (survivors < 0 || survivors > n)
        throw std::invalid_argument("conditional survival: s out of range");
    // Partial Fisher-Yates over node indices selects the fault set uniformly.
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    const int fail_count = n - survivors;
    for (int i = 0; i < fail_count; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(nodes[i], nodes[j]);
    }
    nodes.resize(fail_count);
    return make_trial(g, std::move(nodes));
}

double binomial_pmf(int s, int n, double kappa) {
    if (s < 0 || s > n) throw std::invalid_argument("binomial_pmf: s out of range");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw std::invalid_argument("binomial_pmf: kappa must be in [0,1]");
    if (kappa == 0.0) return s == 0 ? 1.0 : 0.0;
    if (kappa == 1.0) return s == n ? 1.0 : 0.0;
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
    return std::exp(log_choose + s * std::log(kappa) + (n - s) * std::log1p(-kappa));
}

nlohmann::json fault_trial_to_json(const FaultTrial& trial) {
    return {{"fault_set", trial.fault_set}, {"s", trial.survivor_count}};
}

}  // namespace kconn
