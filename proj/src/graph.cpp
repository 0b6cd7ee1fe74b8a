#include "cdforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace cdforge {

WeightedGraph::WeightedGraph(std::vector<VertexInput> vertices, std::vector<EdgeInput> edges) {
  if (vertices.empty()) throw validation_error("graph has no vertices");

  std::sort(vertices.begin(), vertices.end(),
            [](const VertexInput& a, const VertexInput& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i].id == vertices[i - 1].id)
      throw validation_error("duplicate vertex id: " + vertices[i].id);

  const int n = static_cast<int>(vertices.size());
  ids_.reserve(vertices.size());
  mu_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!(vertices[i].mu > 0.0) || !std::isfinite(vertices[i].mu))
      throw validation_error("mu must be positive and finite at vertex " + vertices[i].id);
    ids_.push_back(std::move(vertices[i].id));
    mu_[i] = vertices[i].mu;
  }

  std::set<std::pair<int, int>> seen;
  edges_.reserve(edges.size());
  for (const EdgeInput& e : edges) {
    int u = find(e.u);
    int v = find(e.v);
    if (u < 0) throw validation_error("edge references unknown vertex: " + e.u);
    if (v < 0) throw validation_error("edge references unknown vertex: " + e.v);
    if (u == v) throw validation_error("self-loop at vertex " + e.u);
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw validation_error("edge weight must be positive and finite on (" + e.u + ", " + e.v + ")");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw validation_error("duplicate edge (" + id(u) + ", " + id(v) + ")");
    edges_.push_back({u, v, e.w});
  }
  std::sort(edges_.begin(), edges_.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::pair{a.u, a.v} < std::pair{b.u, b.v};
  });

  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (const EdgeRecord& e : edges_) {
    ++count[e.u];
    ++count[e.v];
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + count[i];
  adj_.resize(static_cast<std::size_t>(offsets_[n]));
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const EdgeRecord& e : edges_) {
    adj_[cursor[e.u]++] = {e.v, e.w};
    adj_[cursor[e.v]++] = {e.u, e.w};
  }
  for (int i = 0; i < n; ++i)
    std::sort(adj_.begin() + offsets_[i], adj_.begin() + offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });

  degree_.resize(n);
  for (int i = 0; i < n; ++i) {
    double m = 0.0;
    for (const Neighbor& nb : neighbors(i)) m += nb.weight;
    degree_[i] = m;
  }

  // Connectivity (standing assumption of everything downstream).
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{0};
  visited[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : neighbors(x)) {
      if (!visited[nb.vertex]) {
        visited[nb.vertex] = 1;
        ++reached;
        queue.push_back(nb.vertex);
      }
    }
  }
  if (reached != n) throw validation_error("graph is disconnected");
}

int WeightedGraph::find(const std::string& id) const noexcept {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return static_cast<int>(it - ids_.begin());
}

int WeightedGraph::index_of(const std::string& id) const {
  int v = find(id);
  if (v < 0) throw validation_error("unknown vertex: " + id);
  return v;
}

GraphStats graph_stats(const WeightedGraph& g) {
  GraphStats s{g.num_vertices(), g.num_edges(),
               std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& e : g.edges()) s.omega_min = std::min(s.omega_min, e.w);
  if (g.num_edges() == 0) s.omega_min = 0.0;
  for (int x = 0; x < g.num_vertices(); ++x)
    s.d_mu = std::max(s.d_mu, g.weighted_degree(x) / g.mu(x));
  return s;
}

VertexSet::VertexSet(std::vector<int> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
    throw validation_error("vertex set contains duplicates");
}

VertexSet VertexSet::all(const WeightedGraph& g) {
  std::vector<int> idx(static_cast<std::size_t>(g.num_vertices()));
  for (int i = 0; i < g.num_vertices(); ++i) idx[i] = i;
  return VertexSet(std::move(idx));
}

int VertexSet::position_of(int v) const {
  auto it = std::lower_bound(idx_.begin(), idx_.end(), v);
  if (it == idx_.end() || *it != v) return -1;
  return static_cast<int>(it - idx_.begin());
}

VertexSet ball(const WeightedGraph& g, int center, int radius) {
  if (center < 0 || center >= g.num_vertices()) throw validation_error("unknown center vertex");
  if (radius < 0) throw validation_error("ball radius must be nonnegative");
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::deque<int> queue{center};
  dist[center] = 0;
  std::vector<int> members{center};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (dist[x] == radius) continue;
    for (const Neighbor& nb : g.neighbors(x)) {
      if (dist[nb.vertex] < 0) {
        dist[nb.vertex] = dist[x] + 1;
        members.push_back(nb.vertex);
        queue.push_back(nb.vertex);
      }
    }
  }
  return VertexSet(std::move(members));
}

VertexSet ball(const WeightedGraph& g, const std::string& center, int radius) {
  return ball(g, g.index_of(center), radius);
}

std::pair<VertexSet, VertexSet> interior_boundary(const WeightedGraph& g, const VertexSet& u) {
  std::vector<int> interior, boundary;
  for (int v : u) {
    if (v < 0 || v >= g.num_vertices())
      throw validation_error("vertex set is not a subset of the graph");
    bool inside = true;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!u.contains(nb.vertex)) {
        inside = false;
        break;
      }
    }
    (inside ? interior : boundary).push_back(v);
  }
  return {VertexSet(std::move(interior)), VertexSet(std::move(boundary))};
}

Family parse_family(const std::string& name) {
  if (name == "path") return Family::path;
  if (name == "cycle") return Family::cycle;
  if (name == "complete") return Family::complete;
  if (name == "star") return Family::star;
  if (name == "hypercube") return Family::hypercube;
  if (name == "lattice_ball") return Family::lattice_ball;
  throw validation_error("unknown graph family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::hypercube: return "hypercube";
    case Family::lattice_ball: return "lattice_ball";
  }
  return "?";
}

namespace {

std::string padded(int i, int width) {
  std::string s = std::to_string(i);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

int id_width(int n) { return static_cast<int>(std::to_string(n > 1 ? n - 1 : 1).size()); }

}  // namespace

WeightedGraph generate(Family family, const GenerateParams& params) {
  if (!(params.omega > 0.0)) throw validation_error("omega override must be positive");
  if (!(params.mu > 0.0)) throw validation_error("mu override must be positive");
  std::vector<VertexInput> vs;
  std::vector<EdgeInput> es;
  const double w = params.omega;
  const double mu = params.mu;

  switch (family) {
    case Family::path: {
      if (params.n < 1) throw validation_error("path requires n >= 1");
      int width = id_width(params.n);
      for (int i = 0; i < params.n; ++i) vs.push_back({"v" + padded(i, width), mu});
      for (int i = 0; i + 1 < params.n; ++i)
        es.push_back({vs[i].id, vs[i + 1].id, w});
      break;
    }
    case Family::cycle: {
      if (params.n < 3) throw validation_error("cycle requires n >= 3");
      int width = id_width(params.n);
      for (int i = 0; i < params.n; ++i) vs.push_back({"v" + padded(i, width), mu});
      for (int i = 0; i < params.n; ++i)
        es.push_back({vs[i].id, vs[(i + 1) % params.n].id, w});
      break;
    }
    case Family::complete: {
      if (params.n < 1) throw validation_error("complete requires n >= 1");
      int width = id_width(params.n);
      for (int i = 0; i < params.n; ++i) vs.push_back({"v" + padded(i, width), mu});
      for (int i = 0; i < params.n; ++i)
        for (int j = i + 1; j < params.n; ++j) es.push_back({vs[i].id, vs[j].id, w});
      break;
    }
    case Family::star: {
      // n = number of leaves; n+1 vertices with v0 the center.
      if (params.n < 1) throw validation_error("star requires n >= 1 leaves");
      int width = id_width(params.n + 1);
      for (int i = 0; i <= params.n; ++i) vs.push_back({"v" + padded(i, width), mu});
      for (int i = 1; i <= params.n; ++i) es.push_back({vs[0].id, vs[i].id, w});
      break;
    }
    case Family::hypercube: {
      if (params.dim < 1) throw validation_error("hypercube requires dim >= 1");
      if (params.dim > 20) throw validation_error("hypercube dim too large");
      const int n = 1 << params.dim;
      auto bits = [&](int v) {
        std::string s(static_cast<std::size_t>(params.dim), '0');
        for (int b = 0; b < params.dim; ++b)
          if (v & (1 << b)) s[params.dim - 1 - b] = '1';
        return "b" + s;
      };
      for (int v = 0; v < n; ++v) vs.push_back({bits(v), mu});
      for (int v = 0; v < n; ++v)
        for (int b = 0; b < params.dim; ++b) {
          int u = v ^ (1 << b);
          if (v < u) es.push_back({bits(v), bits(u), w});
        }
      break;
    }
    case Family::lattice_ball: {
      // l1 ball of Z^dim in its graph metric; ids are comma-joined coordinates.
      if (params.dim < 1) throw validation_error("lattice_ball requires dim >= 1");
      if (params.radius < 0) throw validation_error("lattice_ball requires radius >= 0");
      std::vector<std::vector<int>> points;
      std::vector<int> cur(static_cast<std::size_t>(params.dim), 0);
      auto rec = [&](auto&& self, int coord, int budget) -> void {
        if (coord == params.dim) {
          points.push_back(cur);
          return;
        }
        for (int c = -budget; c <= budget; ++c) {
          cur[coord] = c;
          self(self, coord + 1, budget - std::abs(c));
        }
      };
      rec(rec, 0, params.radius);
      auto name = [](const std::vector<int>& p) {
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (i) s.push_back(',');
          s += std::to_string(p[i]);
        }
        return s;
      };
      std::map<std::vector<int>, bool> inside;
      for (const auto& p : points) inside[p] = true;
      for (const auto& p : points) vs.push_back({name(p), mu});
      for (const auto& p : points) {
        for (int d = 0; d < params.dim; ++d) {
          std::vector<int> q = p;
          q[d] += 1;
          if (inside.count(q)) es.push_back({name(p), name(q), w});
        }
      }
      break;
    }
  }
  return WeightedGraph(std::move(vs), std::move(es));
}

void validate_plan(const WeightedGraph& g, const ExhaustionPlan& plan) {
  g.index_of(plan.center);
  if (plan.radii.empty()) throw validation_error("exhaustion plan has no radii");
  if (plan.radii.front() < 0) throw validation_error("exhaustion radii must be nonnegative");
  for (std::size_t i = 1; i < plan.radii.size(); ++i)
    if (plan.radii[i] < plan.radii[i - 1] + 1)
      throw validation_error("exhaustion radii must increase by at least 1");
}

}  // namespace cdforge
