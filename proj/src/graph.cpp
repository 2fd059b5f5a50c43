#include "lnelab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace lnelab::geodesy {

namespace {

// Uniform hash grid over the cloud's bounding box. Dimensions here are small
// (2..4), so ring enumeration over cells is cheap.
class GridIndex {
 public:
  GridIndex(const PointMatrix& pts, double cell) : pts_(pts), cell_(cell) {
    if (cell_ <= 0.0) cell_ = 1.0;
    lo_ = pts.colwise().minCoeff();
    const int n = static_cast<int>(pts.rows());
    for (int i = 0; i < n; ++i) cells_[key_of(pts.row(i))].push_back(i);
  }

  template <typename F>
  void for_each_in_radius(const Eigen::RowVectorXd& x, double r, F&& fn) const {
    const int d = static_cast<int>(pts_.cols());
    std::vector<int> klo(d), khi(d), k(d);
    for (int c = 0; c < d; ++c) {
      klo[c] = static_cast<int>(std::floor((x[c] - r - lo_[c]) / cell_));
      khi[c] = static_cast<int>(std::floor((x[c] + r - lo_[c]) / cell_));
      k[c] = klo[c];
    }
    const double r2 = r * r;
    while (true) {
      auto it = cells_.find(pack(k));
      if (it != cells_.end()) {
        for (int j : it->second) {
          const double d2 = (pts_.row(j) - x).squaredNorm();
          if (d2 <= r2) fn(j, d2);
        }
      }
      int c = 0;
      while (c < d) {
        if (++k[c] <= khi[c]) break;
        k[c] = klo[c];
        ++c;
      }
      if (c == d) break;
    }
  }

  // k nearest neighbors of node i (excluding i), sorted by distance
  std::vector<std::pair<double, int>> k_nearest(int i, int k) const {
    const Eigen::RowVectorXd x = pts_.row(i);
    double r = cell_;
    std::vector<std::pair<double, int>> found;
    for (int round = 0; round < 64; ++round) {
      found.clear();
      for_each_in_radius(x, r, [&](int j, double d2) {
        if (j != i) found.emplace_back(d2, j);
      });
      // neighbors within radius r are complete, so accept once the k-th
      // candidate is closer than the scanned radius
      std::sort(found.begin(), found.end());
      if (static_cast<int>(found.size()) >= k && std::sqrt(found[k - 1].first) <= r) {
        found.resize(k);
        return found;
      }
      if (static_cast<int>(found.size()) >= static_cast<int>(pts_.rows()) - 1) {
        if (static_cast<int>(found.size()) > k) found.resize(k);
        return found;
      }
      r *= 2.0;
    }
    if (static_cast<int>(found.size()) > k) found.resize(k);
    return found;
  }

 private:
  std::uint64_t key_of(const Eigen::RowVectorXd& x) const {
    const int d = static_cast<int>(pts_.cols());
    std::vector<int> k(d);
    for (int c = 0; c < d; ++c)
      k[c] = static_cast<int>(std::floor((x[c] - lo_[c]) / cell_));
    return pack(k);
  }

  static std::uint64_t pack(const std::vector<int>& k) {
    // 16 bits per axis, offset to keep coordinates positive
    std::uint64_t key = 0;
    for (std::size_t c = 0; c < k.size(); ++c)
      key |= static_cast<std::uint64_t>(static_cast<std::uint16_t>(k[c] + 32000)) << (16 * c);
    return key;
  }

  const PointMatrix& pts_;
  double cell_;
  Eigen::RowVectorXd lo_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

double heuristic_cell(const PointMatrix& pts) {
  const int n = static_cast<int>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  if (n < 2) return 1.0;
  const Eigen::RowVectorXd span =
      pts.colwise().maxCoeff() - pts.colwise().minCoeff();
  const double extent = std::max(span.maxCoeff(), 1e-300);
  return std::max(extent / std::max(1.0, std::pow(double(n), 1.0 / d)), extent * 1e-6);
}

GeodesicGraph assemble(const PointMatrix& points,
                       std::vector<std::vector<std::pair<int, double>>>& adj,
                       ConnectionRule rule) {
  GeodesicGraph g;
  g.node_points = points;
  g.rule = rule;
  const int n = static_cast<int>(points.rows());
  g.offsets.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    g.offsets[i + 1] = g.offsets[i] + static_cast<int>(adj[i].size());
  }
  g.adjacency.reserve(g.offsets[n]);
  for (int i = 0; i < n; ++i)
    g.adjacency.insert(g.adjacency.end(), adj[i].begin(), adj[i].end());
  return g;
}

}  // namespace

ConnectionRule ConnectionRule::refined() const {
  if (kind == Kind::epsilon_ball) return epsilon_ball(epsilon * 0.5);
  return k_nearest(std::max(1, k / 2));
}

GeodesicGraph build_graph(const PointMatrix& points, ConnectionRule rule) {
  const int n = static_cast<int>(points.rows());
  if (n == 0) throw std::invalid_argument("build_graph: empty cloud");
  std::vector<std::vector<std::pair<int, double>>> adj(n);

  if (rule.kind == ConnectionRule::Kind::epsilon_ball) {
    const double eps = rule.epsilon;
    if (eps > 0.0) {
      GridIndex grid(points, eps);
      for (int i = 0; i < n; ++i) {
        grid.for_each_in_radius(points.row(i), eps, [&](int j, double d2) {
          if (j > i) {
            const double w = std::sqrt(d2);
            adj[i].emplace_back(j, w);
            adj[j].emplace_back(i, w);
          }
        });
      }
    }
  } else {
    const int k = std::max(1, rule.k);
    GridIndex grid(points, heuristic_cell(points));
    for (int i = 0; i < n; ++i) {
      for (const auto& [d2, j] : grid.k_nearest(i, k)) {
        const double w = std::sqrt(d2);
        adj[i].emplace_back(j, w);
        adj[j].emplace_back(i, w);  // undirected union of k-NN relations
      }
    }
  }
  return assemble(points, adj, rule);
}

GeodesicGraph build_graph(const variety::SampleCloud& cloud, ConnectionRule rule) {
  return build_graph(cloud.points, rule);
}

namespace {

std::vector<double> nn_spacings(const PointMatrix& points) {
  const int n = static_cast<int>(points.rows());
  GridIndex grid(points, heuristic_cell(points));
  std::vector<double> nn(n, 0.0);
  for (int i = 0; i < n; ++i) {
    auto best = grid.k_nearest(i, 1);
    if (!best.empty()) nn[i] = std::sqrt(best[0].first);
  }
  return nn;
}

}  // namespace

double median_nn_spacing(const PointMatrix& points) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) return 0.0;
  std::vector<double> nn = nn_spacings(points);
  std::nth_element(nn.begin(), nn.begin() + n / 2, nn.end());
  return nn[n / 2];
}

ConnectionRule default_rule(const PointMatrix& points, double scale) {
  const double med = median_nn_spacing(points);
  double eps = 3.0 * med;
  if (std::isfinite(scale)) eps = std::min(eps, 0.5 * scale);
  if (eps <= 0.0) eps = 1.0;
  return ConnectionRule::epsilon_ball(eps);
}

ConnectionRule curve_rule(const PointMatrix& points, double scale) {
  if (points.rows() < 2) return ConnectionRule::epsilon_ball(1.0);
  std::vector<double> nn = nn_spacings(points);
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  const double med = nn[nn.size() / 2];
  const double widest = *std::max_element(nn.begin(), nn.end());
  double eps = std::max(3.0 * med, 2.5 * widest);
  if (std::isfinite(scale)) eps = std::min(eps, 0.5 * scale);
  if (eps <= 0.0) eps = 1.0;
  return ConnectionRule::epsilon_ball(eps);
}

std::vector<double> shortest_paths(const GeodesicGraph& graph, int source, int target) {
  const int n = graph.node_count();
  if (source < 0 || source >= n || target >= n)
    throw std::out_of_range("shortest_paths: node index out of range");
  std::vector<double> dist(n, kUnreachable);
  std::vector<char> settled(n, 0);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == target) break;
    for (int e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
      const auto& [v, w] = graph.adjacency[e];
      const double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

double inner_distance(const GeodesicGraph& graph, int i, int j) {
  if (i == j) {
    if (i < 0 || i >= graph.node_count()) throw std::out_of_range("inner_distance");
    return 0.0;
  }
  return shortest_paths(graph, i, j)[j];
}

ComponentPartition components(const GeodesicGraph& graph) {
  const int n = graph.node_count();
  ComponentPartition parts;
  parts.labels.assign(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (parts.labels[s] >= 0) continue;
    parts.labels[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
        const int v = graph.adjacency[e].first;
        if (parts.labels[v] < 0) {
          parts.labels[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  parts.component_count = next;
  parts.d0 = kNoSeparation;
  if (next >= 2) {
    // exhaustive inter-component nearest-pair scan
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (parts.labels[i] != parts.labels[j])
          parts.d0 = std::min(parts.d0,
                              (graph.node_points.row(i) - graph.node_points.row(j)).norm());
  }
  return parts;
}

GeodesicGraph component_subgraph(const GeodesicGraph& graph, const ComponentPartition& parts,
                                 int label, std::vector<int>* original_indices) {
  std::vector<int> keep;
  std::vector<int> remap(graph.node_count(), -1);
  for (int i = 0; i < graph.node_count(); ++i) {
    if (parts.labels[i] == label) {
      remap[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  GeodesicGraph sub;
  sub.rule = graph.rule;
  sub.node_points.resize(keep.size(), graph.dim());
  for (std::size_t r = 0; r < keep.size(); ++r)
    sub.node_points.row(r) = graph.node_points.row(keep[r]);
  sub.offsets.assign(keep.size() + 1, 0);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const int u = keep[r];
    for (int e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e)
      if (remap[graph.adjacency[e].first] >= 0) ++sub.offsets[r + 1];
    sub.offsets[r + 1] += sub.offsets[r];
  }
  sub.adjacency.resize(sub.offsets.back());
  std::vector<int> cursor(keep.size(), 0);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const int u = keep[r];
    for (int e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
      const auto& [v, w] = graph.adjacency[e];
      if (remap[v] >= 0) sub.adjacency[sub.offsets[r] + cursor[r]++] = {remap[v], w};
    }
  }
  if (original_indices) *original_indices = std::move(keep);
  return sub;
}

int nearest_node(const PointMatrix& points, const Vec& x) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points.rows(); ++i) {
    const double d = (points.row(i).transpose() - x).norm();
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::vector<std::pair<double, int>>> k_nearest_all(const PointMatrix& points,
                                                               int k) {
  const int n = static_cast<int>(points.rows());
  GridIndex grid(points, heuristic_cell(points));
  std::vector<std::vector<std::pair<double, int>>> out(n);
  for (int i = 0; i < n; ++i) {
    auto knn = grid.k_nearest(i, k);
    out[i].reserve(knn.size());
    for (auto& [d2, j] : knn) out[i].emplace_back(std::sqrt(d2), j);
  }
  return out;
}

}  // namespace lnelab::geodesy
