#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kconn/graph.hpp"
#include "kconn/rng.hpp"

namespace kconn {

/// Erdos-Renyi G(n, p): each of the C(n,2) pairs is an edge independently
/// with probability p.
struct ErSpec {
    int n = 0;
    double p = 0.0;
    void validate() const;
};

/// Key-ring size distribution for random intersection graphs: either a fixed
/// ring size or a general pmf over sizes.
class KeyDistribution {
  public:
    static KeyDistribution constant(int size);
    /// pmf entries are (size, probability); probabilities must sum to 1
    /// within 1e-12 and sizes must be >= 1.
    static KeyDistribution general(std::vector<std::pair<int, double>> pmf);

    int sample(RngStream& rng) const;
    double mean() const;
    double variance() const;
    int max_size() const;
    bool is_constant() const { return sizes_.size() == 1; }
    const std::vector<std::pair<int, double>>& pmf() const;

  private:
    std::vector<int> sizes_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
    mutable std::vector<std::pair<int, double>> pmf_cache_;
};

/// Random intersection graph G(n, P_n, D): each node draws a key ring from a
/// pool of pool_size keys; nodes are adjacent iff their rings intersect.
struct RigSpec {
    int n = 0;
    std::int64_t pool_size = 1;
    KeyDistribution key_dist = KeyDistribution::constant(1);
    void validate() const;
};

/// Random geometric graph on the unit-area square with connection radius r.
struct RggSpec {
    int n = 0;
    double radius = 0.0;
    void validate() const;
};

struct Point {
    double x = 0.0, y = 0.0;
};
using PointSet = std::vector<Point>;

/// Tagged union over the three supported families.
struct EnsembleSpec {
    std::variant<ErSpec, RigSpec, RggSpec> family;

    int node_count() const;
    std::string family_name() const;
    void validate() const;
};

Graph sample_er(const ErSpec& spec, RngStream& rng);
Graph sample_rig(const RigSpec& spec, RngStream& rng);
PointSet sample_points(int n, RngStream& rng);
Graph rgg_from_points(const PointSet& points, double radius);
std::pair<Graph, PointSet> sample_rgg(const RggSpec& spec, RngStream& rng);

/// Samples a graph from any family.
Graph sample_graph(const EnsembleSpec& spec, RngStream& rng);

/// JSON schema: {"family":"er"|"rig"|"rgg", plus family fields}.
nlohmann::json ensemble_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_from_json(const nlohmann::json& j);

/// PointSet CSV: header "x,y" then one point per line.
void write_points_csv(const PointSet& points, std::ostream& out);
PointSet read_points_csv(std::istream& in);

}  // namespace kconn
