#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cdforge/errors.hpp"

namespace cdforge {

struct VertexInput {
  std::string id;
  double mu = 1.0;
};

struct EdgeInput {
  std::string u;
  std::string v;
  double w = 1.0;
};

struct Neighbor {
  int vertex;
  double weight;
};

// Undirected weighted graph with positive symmetric edge weights and a
// positive vertex measure.  Immutable after construction.  Vertices carry
// dense indices assigned in sorted-id order, so every matrix assembled from
// the graph is deterministic across runs.
class WeightedGraph {
 public:
  // Validates: unique ids, mu > 0, w > 0, no self-loops, no duplicate edges,
  // endpoints exist, graph connected.
  WeightedGraph(std::vector<VertexInput> vertices, std::vector<EdgeInput> edges);

  int num_vertices() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
  // -1 if absent.
  int find(const std::string& id) const noexcept;
  // Throws validation_error if absent.
  int index_of(const std::string& id) const;

  double mu(int v) const { return mu_[v]; }
  const Eigen::VectorXd& mu_vector() const { return mu_; }
  // m(x) = sum of incident edge weights.
  double weighted_degree(int v) const { return degree_[v]; }

  // Sorted by neighbor index.
  std::span<const Neighbor> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  struct EdgeRecord {
    int u, v;  // u < v
    double w;
  };
  // Sorted by (u, v).
  const std::vector<EdgeRecord>& edges() const { return edges_; }

 private:
  std::vector<std::string> ids_;
  Eigen::VectorXd mu_;
  Eigen::VectorXd degree_;
  std::vector<EdgeRecord> edges_;
  std::vector<Neighbor> adj_;
  std::vector<int> offsets_;
};

struct GraphStats {
  int num_vertices;
  int num_edges;
  double omega_min;  // min edge weight
  double d_mu;       // max over x of m(x)/mu(x)
};

GraphStats graph_stats(const WeightedGraph& g);

// Ordered vertex subset; holds graph indices, ascending (= canonical
// sorted-id order), no duplicates.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<int> indices);
  static VertexSet all(const WeightedGraph& g);

  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  int operator[](int i) const { return idx_[static_cast<std::size_t>(i)]; }
  bool contains(int v) const { return position_of(v) >= 0; }
  // -1 if absent.
  int position_of(int v) const;

  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  const std::vector<int>& indices() const { return idx_; }

 private:
  std::vector<int> idx_;
};

// All vertices at hop distance <= radius from center.
VertexSet ball(const WeightedGraph& g, int center, int radius);
VertexSet ball(const WeightedGraph& g, const std::string& center, int radius);

// interior = {x in U : every neighbor of x lies in U}; boundary = U \ interior.
std::pair<VertexSet, VertexSet> interior_boundary(const WeightedGraph& g, const VertexSet& u);

enum class Family { path, cycle, complete, star, hypercube, lattice_ball };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct GenerateParams {
  int n = 0;        // path/cycle/complete: vertex count; star: leaf count
  int dim = 0;      // hypercube/lattice_ball
  int radius = -1;  // lattice_ball
  double omega = 1.0;
  double mu = 1.0;
};

// Deterministic generator with canonical vertex ids.
WeightedGraph generate(Family family, const GenerateParams& params);

// Increasing ball radii around a center; consecutive radii must step by >= 1
// so each ball lies in the interior of the next.
struct ExhaustionPlan {
  std::string center;
  std::vector<int> radii;
};

void validate_plan(const WeightedGraph& g, const ExhaustionPlan& plan);

}  // namespace cdforge
