#include "kconn/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "kconn/io.hpp"

namespace kconn {

// --- specs -------------------------------------------------------------------

void ErSpec::validate() const {
    if (n < 0) throw std::invalid_argument("er: n must be non-negative");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er: p must be in [0,1]");
}

KeyDistribution KeyDistribution::constant(int size) {
    return general({{size, 1.0}});
}

KeyDistribution KeyDistribution::general(std::vector<std::pair<int, double>> pmf) {
    if (pmf.empty()) throw std::invalid_argument("key distribution: empty pmf");
    std::sort(pmf.begin(), pmf.end());
    KeyDistribution d;
    double total = 0.0;
    for (auto [size, prob] : pmf) {
        if (size < 1) throw std::invalid_argument("key distribution: sizes must be >= 1");
        if (prob < 0.0) throw std::invalid_argument("key distribution: negative probability");
        d.sizes_.push_back(size);
        d.probs_.push_back(prob);
        total += prob;
        d.cdf_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("key distribution: probabilities must sum to 1");
    d.cdf_.back() = 1.0;
    return d;
}

int KeyDistribution::sample(RngStream& rng) const {
    if (sizes_.size() == 1) return sizes_[0];
    const double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return sizes_[static_cast<std::size_t>(it - cdf_.begin())];
}

double KeyDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) m += sizes_[i] * probs_[i];
    return m;
}

double KeyDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        const double d = sizes_[i] - m;
        v += d * d * probs_[i];
    }
    return v;
}

int KeyDistribution::max_size() const { return sizes_.back(); }

const std::vector<std::pair<int, double>>& KeyDistribution::pmf() const {
    if (pmf_cache_.size() != sizes_.size()) {
        pmf_cache_.clear();
        for (std::size_t i = 0; i < sizes_.size(); ++i)
            pmf_cache_.emplace_back(sizes_[i], probs_[i]);
    }
    return pmf_cache_;
}

void RigSpec::validate() const {
    if (n < 0) throw std::invalid_argument("rig: n must be non-negative");
    if (pool_size < 1) throw std::invalid_argument("rig: pool_size must be >= 1");
    if (key_dist.max_size() > pool_size)
        throw std::invalid_argument("rig: key ring size exceeds pool size");
}

void RggSpec::validate() const {
    if (n < 0) throw std::invalid_argument("rgg: n must be non-negative");
    if (!(radius > 0.0)) throw std::invalid_argument("rgg: radius must be positive");
}

int EnsembleSpec::node_count() const {
    return std::visit([](const auto& s) { return s.n; }, family);
}

std::string EnsembleSpec::family_name() const {
    if (std::holds_alternative<ErSpec>(family)) return "er";
    if (std::holds_alternative<RigSpec>(family)) return "rig";
    return "rgg";
}

void EnsembleSpec::validate() const {
    std::visit([](const auto& s) { s.validate(); }, family);
}

// --- samplers ------------------------------------------------------------------

Graph sample_er(const ErSpec& spec, RngStream& rng) {
    spec.validate();
    const int n = spec.n;
    std::vector<std::pair<int, int>> edges;
    if (spec.p >= 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return Graph::from_edges(n, edges);
    }
    if (spec.p > 0.0) {
        // Geometric skipping over the linearized pair index: near-threshold p
        // this costs O(n log n) instead of C(n,2) Bernoulli draws.
        const double log_q = std::log1p(-spec.p);
        const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        std::uint64_t idx = 0;
        int row = 0;                       // pair (row, col), col > row
        std::uint64_t row_start = 0;       // linear index of (row, row+1)
        bool first = true;
        while (true) {
            double u = rng.next_double();
            // skip >= 0 pairs, then take the next one
            const double skip_d = std::floor(std::log1p(-u) / log_q);
            if (skip_d >= static_cast<double>(total)) break;
            idx += static_cast<std::uint64_t>(skip_d) + (first ? 0 : 1);
            first = false;
            if (idx >= total) break;
            while (idx - row_start >= static_cast<std::uint64_t>(n - 1 - row)) {
                row_start += n - 1 - row;
                ++row;
            }
            const int col = row + 1 + static_cast<int>(idx - row_start);
            edges.emplace_back(row, col);
        }
    }
    return Graph::from_edges(n, edges);
}

namespace {

/// Uniform s-subset of {0, ..., pool-1} by partial Fisher-Yates over a sparse
/// view of the index space; the pool is never materialized.
std::vector<std::int64_t> sample_subset(std::int64_t pool, int s, RngStream& rng) {
    std::unordered_map<std::int64_t, std::int64_t> moved;
    moved.reserve(static_cast<std::size_t>(s) * 2);
    std::vector<std::int64_t> out;
    out.reserve(s);
    for (int i = 0; i < s; ++i) {
        const std::int64_t j =
            i + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(pool - i)));
        auto it_j = moved.find(j);
        const std::int64_t value_j = it_j == moved.end() ? j : it_j->second;
        auto it_i = moved.find(i);
        const std::int64_t value_i = it_i == moved.end() ? i : it_i->second;
        moved[j] = value_i;
        out.push_back(value_j);
    }
    return out;
}

}  // namespace

Graph sample_rig(const RigSpec& spec, RngStream& rng) {
    spec.validate();
    const int n = spec.n;
    // key -> holders inverted index; rings are sparse relative to the pool,
    // so edges come from per-key holder lists.
    std::unordered_map<std::int64_t, std::vector<int>> holders;
    for (int i = 0; i < n; ++i) {
        const int s_i = spec.key_dist.sample(rng);
        if (s_i > spec.pool_size)
            throw std::invalid_argument("rig: key ring size exceeds pool size");
        for (std::int64_t key : sample_subset(spec.pool_size, s_i, rng))
            holders[key].push_back(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [key, nodes] : holders) {
        for (std::size_t a = 0; a < nodes.size(); ++a)
            for (std::size_t b = a + 1; b < nodes.size(); ++b)
                edges.emplace_back(nodes[a], nodes[b]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(n, edges);
}

PointSet sample_points(int n, RngStream& rng) {
    if (n < 0) throw std::invalid_argument("sample_points: n must be non-negative");
    PointSet points(n);
    for (auto& pt : points) {
        pt.x = rng.next_double();
        pt.y = rng.next_double();
    }
    return points;
}

Graph rgg_from_points(const PointSet& points, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("rgg_from_points: radius must be positive");
    const int n = static_cast<int>(points.size());
    // Uniform grid with cell width >= radius; all candidate pairs lie in the
    // 3x3 cell neighborhood. Cell count capped so memory stays O(n).
    int cells = radius >= 1.0 ? 1 : static_cast<int>(std::floor(1.0 / radius));
    cells = std::clamp(cells, 1, static_cast<int>(std::sqrt(static_cast<double>(n))) + 1);
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(cells) * cells);
    auto cell_of = [&](const Point& p) {
        int cx = std::min(static_cast<int>(p.x * cells), cells - 1);
        int cy = std::min(static_cast<int>(p.y * cells), cells - 1);
        return cy * cells + cx;
    };
    for (int i = 0; i < n; ++i) grid[cell_of(points[i])].push_back(i);

    const double r2 = radius * radius;
    std::vector<std::pair<int, int>> edges;
    for (int cy = 0; cy < cells; ++cy) {
        for (int cx = 0; cx < cells; ++cx) {
            const auto& base = grid[cy * cells + cx];
            for (int dy = 0; dy <= 1; ++dy) {
                for (int dx = dy == 0 ? 0 : -1; dx <= 1; ++dx) {
                    const int ny = cy + dy, nx = cx + dx;
                    if (ny >= cells || nx < 0 || nx >= cells) continue;
                    const auto& other = grid[ny * cells + nx];
                    const bool same = dy == 0 && dx == 0;
                    for (std::size_t a = 0; a < base.size(); ++a) {
                        for (std::size_t b = same ? a + 1 : 0; b < other.size(); ++b) {
                            const int i = base[a], j = other[b];
                            const double ddx = points[i].x - points[j].x;
                            const double ddy = points[i].y - points[j].y;
                            if (ddx * ddx + ddy * ddy <= r2)
                                edges.emplace_back(std::min(i, j), std::max(i, j));
                        }
                    }
                }
            }
        }
    }
    return Graph::from_edges(n, edges);
}

std::pair<Graph, PointSet> sample_rgg(const RggSpec& spec, RngStream& rng) {
    spec.validate();
    PointSet points = sample_points(spec.n, rng);
    Graph g = rgg_from_points(points, spec.radius);
    return {std::move(g), std::move(points)};
}

Graph sample_graph(const EnsembleSpec& spec, RngStream& rng) {
    if (const auto* er = std::get_if<ErSpec>(&spec.family)) return sample_er(*er, rng);
    if (const auto* rig = std::get_if<RigSpec>(&spec.family)) return sample_rig(*rig, rng);
    return sample_rgg(std::get<RggSpec>(spec.family), rng).first;
}

// --- serialization ----------------------------------------------------------

nlohmann::json ensemble_to_json(const EnsembleSpec& spec) {
    nlohmann::json j;
    if (const auto* er = std::get_if<ErSpec>(&spec.family)) {
        j["family"] = "er";
        j["n"] = er->n;
        j["p"] = er->p;
    } else if (const auto* rig = std::get_if<RigSpec>(&spec.family)) {
        j["family"] = "rig";
        j["n"] = rig->n;
        j["pool_size"] = rig->pool_size;
        if (rig->key_dist.is_constant()) {
            j["key_dist"] = {{"type", "constant"}, {"size", rig->key_dist.max_size()}};
        } else {
            nlohmann::json pmf = nlohmann::json::array();
            for (auto [size, prob] : rig->key_dist.pmf()) pmf.push_back({size, prob});
            j["key_dist"] = {{"type", "general"}, {"pmf", pmf}};
        }
    } else {
        const auto& rgg = std::get<RggSpec>(spec.family);
        j["family"] = "rgg";
        j["n"] = rgg.n;
        j["radius"] = rgg.radius;
    }
    return j;
}

EnsembleSpec ensemble_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    EnsembleSpec spec;
    if (family == "er") {
        spec.family = ErSpec{j.at("n").get<int>(), j.at("p").get<double>()};
    } else if (family == "rig") {
        const auto& kd = j.at("key_dist");
        KeyDistribution dist = KeyDistribution::constant(1);
        if (kd.at("type").get<std::string>() == "constant") {
            dist = KeyDistribution::constant(kd.at("size").get<int>());
        } else {
            std::vector<std::pair<int, double>> pmf;
            for (const auto& entry : kd.at("pmf"))
                pmf.emplace_back(entry.at(0).get<int>(), entry.at(1).get<double>());
            dist = KeyDistribution::general(std::move(pmf));
        }
        spec.family = RigSpec{j.at("n").get<int>(), j.at("pool_size").get<std::int64_t>(), dist};
    } else if (family == "rgg") {
        spec.family = RggSpec{j.at("n").get<int>(), j.at("radius").get<double>()};
    } else {
        throw std::invalid_argument("unknown ensemble family: " + family);
    }
    spec.validate();
    return spec;
}

void write_points_csv(const PointSet& points, std::ostream& out) {
    out << "x,y\n";
    for (const auto& p : points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

PointSet read_points_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,y")
        throw std::invalid_argument("points csv: bad header");
    PointSet points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("points csv: bad row");
        points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return points;
}

}  // namespace kconn
