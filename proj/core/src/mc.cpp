#include "kconn/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "kconn/connectivity.hpp"
#include "kconn/fault.hpp"
#include "kconn/io.hpp"

namespace kconn::mc {

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double confidence) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("wilson_interval: confidence must be in (0,1)");
    const double z = normal_quantile(0.5 * (1.0 + confidence));
    const double t = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (p_hat + z2 / (2.0 * t)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / t + z2 / (4.0 * t * t)) / denom;
    return {std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
}

void EstimateRequest::validate() const {
    ensemble.validate();
    if (k < 1) throw std::invalid_argument("estimate: k must be positive");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("estimate: epsilon must be in [0,1]");
    if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
    if (fixed_survivors &&
        (*fixed_survivors < 0 || *fixed_survivors > ensemble.node_count()))
        throw std::invalid_argument("estimate: fixed survivor count out of range");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("estimate: confidence must be in (0,1)");
}

namespace {

int worker_count(int requested, std::int64_t trials) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int w = requested > 0 ? requested : hw;
    return static_cast<int>(std::min<std::int64_t>(w, trials));
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // true if the union merged two components
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

/// Breakdown for k = 1 without materializing the induced subgraph.
bool k1_breakdown(const Graph& g, const std::vector<char>& alive, int alive_count,
                  ConnectivityPolicy policy) {
    const bool vacuous = policy.tiny_graph_rule == TinyGraphRule::empty_graph_is_connected;
    if (alive_count == 0) return !vacuous;
    if (alive_count == 1) return !vacuous;
    UnionFind uf(g.node_count());
    int components = alive_count;
    for (int u = 0; u < g.node_count(); ++u) {
        if (!alive[u]) continue;
        for (int v : g.neighbors(u)) {
            if (u < v && alive[v] && uf.unite(u, v)) --components;
        }
    }
    return components > 1;
}

bool breakdown_trial(const Graph& g, int k, double epsilon, std::optional<int> fixed_survivors,
                     ConnectivityPolicy policy, RngStream& rng) {
    const int n = g.node_count();
    std::vector<char> alive(n, 1);
    int alive_count = n;
    if (fixed_survivors) {
        std::vector<int> nodes(n);
        std::iota(nodes.begin(), nodes.end(), 0);
        const int fail_count = n - *fixed_survivors;
        for (int i = 0; i < fail_count; ++i) {
            const auto j =
                i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(nodes[i], nodes[j]);
            alive[nodes[i]] = 0;
        }
        alive_count = *fixed_survivors;
    } else {
        for (int v = 0; v < n; ++v) {
            if (rng.bernoulli(epsilon)) {
                alive[v] = 0;
                --alive_count;
            }
        }
    }

    if (k == 1) return k1_breakdown(g, alive, alive_count, policy);

    std::vector<int> keep;
    keep.reserve(alive_count);
    for (int v = 0; v < n; ++v)
        if (alive[v]) keep.push_back(v);
    return !is_k_connected(induced_subgraph(g, keep), k, policy);
}

Estimate run_estimate(const EstimateRequest& req) {
    req.validate();

    // Quenched diagnostic mode fixes one graph for all trials.
    std::optional<Graph> quenched_graph;
    if (req.quenched) {
        RngStream graph_stream(req.master_seed, std::numeric_limits<std::uint64_t>::max());
        quenched_graph = sample_graph(req.ensemble, graph_stream);
    }

    const int workers = worker_count(req.threads, req.trials);
    std::vector<std::int64_t> successes(workers, 0);
    auto work = [&](int w) {
        std::int64_t count = 0;
        for (std::int64_t i = w; i < req.trials; i += workers) {
            RngStream rng(req.master_seed, static_cast<std::uint64_t>(i));
            const Graph* g = quenched_graph ? &*quenched_graph : nullptr;
            Graph fresh;
            if (!g) {
                fresh = sample_graph(req.ensemble, rng);
                g = &fresh;
            }
            if (breakdown_trial(*g, req.k, req.epsilon, req.fixed_survivors, req.policy, rng))
                ++count;
        }
        successes[w] = count;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    Estimate est;
    est.successes = std::accumulate(successes.begin(), successes.end(), std::int64_t{0});
    est.trials = req.trials;
    est.p_hat = static_cast<double>(est.successes) / static_cast<double>(est.trials);
    est.confidence = req.confidence;
    std::tie(est.ci_low, est.ci_high) =
        wilson_interval(est.successes, est.trials, req.confidence);
    est.master_seed = req.master_seed;
    return est;
}

}  // namespace

Estimate estimate_breakdown(const EstimateRequest& req) {
    if (req.fixed_survivors)
        throw std::invalid_argument(
            "estimate_breakdown: use estimate_breakdown_conditional for fixed survivors");
    return run_estimate(req);
}

Estimate estimate_breakdown_conditional(const EstimateRequest& req) {
    if (!req.fixed_survivors)
        throw std::invalid_argument("estimate_breakdown_conditional: fixed_survivors not set");
    return run_estimate(req);
}

// --- exact enumeration oracle ------------------------------------------------

ExactBreakdown exact_breakdown_enumerate(const ErSpec& spec, int k, double epsilon,
                                         ConnectivityPolicy policy) {
    spec.validate();
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("exact oracle: epsilon must be in [0,1]");
    if (k < 1) throw std::invalid_argument("exact oracle: k must be positive");
    if (spec.n > 6) throw std::invalid_argument("exact oracle guarded to n <= 6");

    const int n = spec.n;
    const int pair_count = n * (n - 1) / 2;
    const double kappa = 1.0 - epsilon;

    // pair index -> endpoints, lexicographic
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

    std::vector<double> pow_p(pair_count + 1, 1.0), pow_q(pair_count + 1, 1.0);
    std::vector<double> pow_eps(n + 1, 1.0), pow_kap(n + 1, 1.0);
    for (int i = 1; i <= pair_count; ++i) {
        pow_p[i] = pow_p[i - 1] * spec.p;
        pow_q[i] = pow_q[i - 1] * (1.0 - spec.p);
    }
    for (int i = 1; i <= n; ++i) {
        pow_eps[i] = pow_eps[i - 1] * epsilon;
        pow_kap[i] = pow_kap[i - 1] * kappa;
    }
    std::vector<double> choose(n + 1);
    for (int s = 0; s <= n; ++s)
        choose[s] = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(s + 1.0) -
                                        std::lgamma(n - s + 1.0)));

    ExactBreakdown out;
    out.conditional.assign(n + 1, 0.0);
    std::vector<bitgraph::Mask> adj(n);

    const std::uint32_t graph_masks = 1u << pair_count;
    const std::uint32_t surv_masks = n == 0 ? 1u : (1u << n);
    for (std::uint32_t gm = 0; gm < graph_masks; ++gm) {
        const int edge_count = std::popcount(gm);
        const double weight_g = pow_p[edge_count] * pow_q[pair_count - edge_count];
        if (weight_g == 0.0) continue;
        std::fill(adj.begin(), adj.end(), 0u);
        for (std::uint32_t bits = gm; bits; bits &= bits - 1) {
            const auto [u, v] = pairs[std::countr_zero(bits)];
            adj[u] |= bitgraph::Mask{1} << v;
            adj[v] |= bitgraph::Mask{1} << u;
        }
        for (std::uint32_t surv = 0; surv < surv_masks; ++surv) {
            if (bitgraph::k_connected_in(adj, surv, k, policy)) continue;
            const int s = std::popcount(surv);
            out.joint += weight_g * pow_eps[n - s] * pow_kap[s];
            out.conditional[s] += weight_g / choose[s];
        }
    }
    // Accumulating 2^M graph weights can overshoot 1 by a few ulps; these are
    // probabilities, so clamp.
    out.joint = std::clamp(out.joint, 0.0, 1.0);
    for (double& c : out.conditional) c = std::clamp(c, 0.0, 1.0);
    return out;
}

double exact_breakdown_small(const ErSpec& spec, int k, double epsilon,
                             std::optional<int> fixed_survivors, ConnectivityPolicy policy) {
    const auto result = exact_breakdown_enumerate(spec, k, epsilon, policy);
    if (fixed_survivors) {
        if (*fixed_survivors < 0 || *fixed_survivors > spec.n)
            throw std::invalid_argument("exact oracle: s out of range");
        return result.conditional[*fixed_survivors];
    }
    return result.joint;
}

MixtureReport verify_mixture_identity(const ErSpec& spec, int k, double epsilon,
                                      ConnectivityPolicy policy) {
    const auto result = exact_breakdown_enumerate(spec, k, epsilon, policy);
    double rhs = 0.0;
    for (int s = 0; s <= spec.n; ++s)
        rhs += binomial_pmf(s, spec.n, 1.0 - epsilon) * result.conditional[s];
    return {result.joint, rhs, std::abs(result.joint - rhs)};
}

// --- sweeps -------------------------------------------------------------------

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::edge_probability: return "p";
        case SweepAxis::radius: return "r";
        case SweepAxis::key_ratio: return "key_ratio";
        case SweepAxis::epsilon: return "epsilon";
        case SweepAxis::node_count: return "n";
    }
    return "?";
}

SweepAxis axis_from_name(const std::string& name) {
    if (name == "p") return SweepAxis::edge_probability;
    if (name == "r") return SweepAxis::radius;
    if (name == "key_ratio") return SweepAxis::key_ratio;
    if (name == "epsilon" || name == "eps") return SweepAxis::epsilon;
    if (name == "n") return SweepAxis::node_count;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

namespace {

EstimateRequest apply_axis(const EstimateRequest& base, SweepAxis axis, double value) {
    EstimateRequest req = base;
    switch (axis) {
        case SweepAxis::edge_probability: {
            auto* er = std::get_if<ErSpec>(&req.ensemble.family);
            if (!er) throw std::invalid_argument("p axis requires the er family");
            er->p = value;
            break;
        }
        case SweepAxis::radius: {
            auto* rgg = std::get_if<RggSpec>(&req.ensemble.family);
            if (!rgg) throw std::invalid_argument("r axis requires the rgg family");
            rgg->radius = value;
            break;
        }
        case SweepAxis::key_ratio: {
            auto* rig = std::get_if<RigSpec>(&req.ensemble.family);
            if (!rig) throw std::invalid_argument("key_ratio axis requires the rig family");
            if (!(value > 0.0)) throw std::invalid_argument("key_ratio must be positive");
            const double mean = rig->key_dist.mean();
            rig->pool_size = std::max<std::int64_t>(
                rig->key_dist.max_size(), std::llround(mean * mean / value));
            break;
        }
        case SweepAxis::epsilon:
            req.epsilon = value;
            break;
        case SweepAxis::node_count: {
            const int n = static_cast<int>(std::llround(value));
            std::visit([n](auto& s) { s.n = n; }, req.ensemble.family);
            break;
        }
    }
    req.ensemble.validate();
    return req;
}

SweepRow make_row(const EstimateRequest& req, SweepAxis axis, double value, const Estimate& est) {
    SweepRow row;
    row.axis = axis_name(axis);
    row.axis_value = value;
    row.n = req.ensemble.node_count();
    row.k = req.k;
    row.epsilon = req.epsilon;
    row.trials = est.trials;
    row.successes = est.successes;
    row.p_hat = est.p_hat;
    row.ci_low = est.ci_low;
    row.ci_high = est.ci_high;
    row.seed = est.master_seed;
    return row;
}

/// Coupled ER sweep over p: every point shares each trial's fault draw and
/// edge uniforms. Edges are sampled once at max(p) and tagged with a uniform
/// weight in [0, max(p)); the graph at p is the subset with weight <= p, so
/// per-trial indicators are monotone in p by construction.
std::vector<SweepRow> sweep_coupled_er(const EstimateRequest& base,
                                       const std::vector<double>& values) {
    const auto* er = std::get_if<ErSpec>(&base.ensemble.family);
    if (!er) throw std::invalid_argument("coupled sweep requires the er family");
    if (base.quenched) throw std::invalid_argument("coupled sweep cannot be quenched");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("coupled sweep: p out of [0,1]");

    const int n = er->n;
    const std::size_t points = values.size();
    std::vector<std::size_t> order(points);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ascending(points);
    for (std::size_t i = 0; i < points; ++i) ascending[i] = values[order[i]];
    const double p_max = ascending.back();

    const int workers = worker_count(base.threads, base.trials);
    std::vector<std::vector<std::int64_t>> successes(
        workers, std::vector<std::int64_t>(points, 0));

    auto work = [&](int w) {
        ErSpec top{n, p_max};
        std::vector<std::vector<std::pair<int, int>>> buckets(points);
        for (std::int64_t i = w; i < base.trials; i += workers) {
            RngStream fault_rng(base.master_seed, 2 * static_cast<std::uint64_t>(i));
            RngStream edge_rng(base.master_seed, 2 * static_cast<std::uint64_t>(i) + 1);

            std::vector<char> alive(n, 1);
            int alive_count = n;
            if (base.fixed_survivors) {
                std::vector<int> nodes(n);
                std::iota(nodes.begin(), nodes.end(), 0);
                const int fail_count = n - *base.fixed_survivors;
                for (int j = 0; j < fail_count; ++j) {
                    const auto r = j + static_cast<int>(fault_rng.next_below(
                                           static_cast<std::uint64_t>(n - j)));
                    std::swap(nodes[j], nodes[r]);
                    alive[nodes[j]] = 0;
                }
                alive_count = *base.fixed_survivors;
            } else {
                for (int v = 0; v < n; ++v) {
                    if (fault_rng.bernoulli(base.epsilon)) {
                        alive[v] = 0;
                        --alive_count;
                    }
                }
            }

            for (auto& b : buckets) b.clear();
            if (p_max > 0.0) {
                Graph at_max = sample_er(top, edge_rng);
                for (auto [u, v] : at_max.edges()) {
                    const double weight = p_max * edge_rng.next_double();
                    const auto slot = static_cast<std::size_t>(
                        std::lower_bound(ascending.begin(), ascending.end(), weight) -
                        ascending.begin());
                    if (slot < points) buckets[slot].emplace_back(u, v);
                }
            }

            if (base.k == 1) {
                UnionFind uf(n);
                int components = alive_count;
                const bool vacuous = base.policy.tiny_graph_rule ==
                                     TinyGraphRule::empty_graph_is_connected;
                for (std::size_t j = 0; j < points; ++j) {
                    for (auto [u, v] : buckets[j])
                        if (alive[u] && alive[v] && uf.unite(u, v)) --components;
                    const bool broken =
                        alive_count <= 1 ? !vacuous : components > 1;
                    if (broken) ++successes[w][order[j]];
                }
            } else {
                std::vector<int> keep;
                keep.reserve(alive_count);
                for (int v = 0; v < n; ++v)
                    if (alive[v]) keep.push_back(v);
                std::vector<std::pair<int, int>> prefix;
                for (std::size_t j = 0; j < points; ++j) {
                    prefix.insert(prefix.end(), buckets[j].begin(), buckets[j].end());
                    const Graph g = Graph::from_edges(n, prefix);
                    if (!is_k_connected(induced_subgraph(g, keep), base.k, base.policy))
                        ++successes[w][order[j]];
                }
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::vector<SweepRow> rows;
    rows.reserve(points);
    for (std::size_t j = 0; j < points; ++j) {
        std::int64_t count = 0;
        for (int w = 0; w < workers; ++w) count += successes[w][j];
        Estimate est;
        est.successes = count;
        est.trials = base.trials;
        est.p_hat = static_cast<double>(count) / static_cast<double>(base.trials);
        est.confidence = base.confidence;
        std::tie(est.ci_low, est.ci_high) =
            wilson_interval(count, base.trials, base.confidence);
        est.master_seed = base.master_seed;
        rows.push_back(make_row(apply_axis(base, SweepAxis::edge_probability, values[j]),
                                SweepAxis::edge_probability, values[j], est));
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> sweep(const EstimateRequest& base, SweepAxis axis,
                            const std::vector<double>& values, bool coupled) {
    if (values.empty()) throw std::invalid_argument("sweep: empty axis");
    if (coupled) {
        if (axis != SweepAxis::edge_probability)
            throw std::invalid_argument("coupled sweep supports the p axis only");
        return sweep_coupled_er(base, values);
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        EstimateRequest req;
        try {
            req = apply_axis(base, axis, values[j]);
        } catch (const std::exception& e) {
            throw std::invalid_argument("sweep point " + std::to_string(j) + ": " + e.what());
        }
        // Point 0 keeps the master seed so a one-point sweep matches
        // estimate_breakdown byte for byte.
        req.master_seed = base.master_seed + j;
        const Estimate est = run_estimate(req);
        rows.push_back(make_row(req, axis, values[j], est));
    }
    return rows;
}

std::string sweep_csv_header() {
    return "axis_name,axis_value,n,k,epsilon,trials,successes,p_hat,ci_low,ci_high,seed";
}

std::string sweep_csv_row(const SweepRow& row) {
    std::string out = row.axis;
    out += ',';
    out += format_double(row.axis_value);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += format_double(row.epsilon);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += std::to_string(row.successes);
    out += ',';
    out += format_double(row.p_hat);
    out += ',';
    out += format_double(row.ci_low);
    out += ',';
    out += format_double(row.ci_high);
    out += ',';
    out += std::to_string(row.seed);
    return out;
}

}  // namespace kconn::mc
