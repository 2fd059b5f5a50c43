#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "lnelab/germ.hpp"

namespace lnelab::geodesy {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr double kNoSeparation = std::numeric_limits<double>::infinity();

struct ConnectionRule {
  enum class Kind { epsilon_ball, k_nearest };
  Kind kind = Kind::epsilon_ball;
  double epsilon = 0.0;
  int k = 0;

  static ConnectionRule epsilon_ball(double eps) { return {Kind::epsilon_ball, eps, 0}; }
  static ConnectionRule k_nearest(int k) { return {Kind::k_nearest, 0.0, k}; }

  /// The same rule at half resolution, for stability validation.
  ConnectionRule refined() const;
};

// Undirected proximity graph over a cloud; edge weights are the Euclidean
// distances of their endpoints. Adjacency is stored CSR-style.
struct GeodesicGraph {
  PointMatrix node_points;
  std::vector<int> offsets;                      // size node_count + 1
  std::vector<std::pair<int, double>> adjacency;  // (neighbor, weight)
  ConnectionRule rule;

  int node_count() const { return static_cast<int>(node_points.rows()); }
  int dim() const { return static_cast<int>(node_points.cols()); }
  std::size_t edge_count() const { return adjacency.size() / 2; }
  int degree(int i) const { return offsets[i + 1] - offsets[i]; }
  Vec point(int i) const { return node_points.row(i).transpose(); }
};

GeodesicGraph build_graph(const PointMatrix& points, ConnectionRule rule);
GeodesicGraph build_graph(const variety::SampleCloud& cloud, ConnectionRule rule);

double median_nn_spacing(const PointMatrix& points);

// Default connectivity: three median nearest-neighbor spacings, capped at
// half the feature scale so sparse slices do not get bridged across gaps.
ConnectionRule default_rule(const PointMatrix& points,
                            double scale = std::numeric_limits<double>::infinity());

// Connectivity for curve-like clouds (links, sections): random samples of a
// curve leave gaps well beyond the median spacing, so the radius also covers
// the largest nearest-neighbor distance.
ConnectionRule curve_rule(const PointMatrix& points,
                          double scale = std::numeric_limits<double>::infinity());

/// Single-source shortest-path lengths; stops early once `target` is settled
/// when target >= 0. Unreachable nodes report kUnreachable.
std::vector<double> shortest_paths(const GeodesicGraph& graph, int source, int target = -1);

double inner_distance(const GeodesicGraph& graph, int i, int j);

struct ComponentPartition {
  std::vector<int> labels;
  int component_count = 0;
  double d0 = kNoSeparation;  // min inter-component Euclidean distance
};

ComponentPartition components(const GeodesicGraph& graph);

/// Induced subgraph on the nodes with the given component label.
GeodesicGraph component_subgraph(const GeodesicGraph& graph, const ComponentPartition& parts,
                                 int label, std::vector<int>* original_indices = nullptr);

int nearest_node(const PointMatrix& points, const Vec& x);

/// Per-node k nearest neighbors as (distance, index), grid-accelerated.
std::vector<std::vector<std::pair<double, int>>> k_nearest_all(const PointMatrix& points,
                                                               int k);

}  // namespace lnelab::geodesy
