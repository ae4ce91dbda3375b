#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bucketforge/factor.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

/// Simple undirected graph over nodes 0..n-1.
class GraphView {
 public:
  GraphView() = default;
  explicit GraphView(std::size_t n) : adj_(n) {}

  std::size_t size() const { return adj_.size(); }
  void add_edge(VarId a, VarId b);
  void add_clique(std::span<const VarId> nodes);
  bool has_edge(VarId a, VarId b) const;
  const std::set<VarId>& neighbors(VarId v) const { return adj_.at(static_cast<std::size_t>(v)); }
  std::size_t degree(VarId v) const { return neighbors(v).size(); }
  std::size_t edge_count() const;
  /// Sorted (a < b) edge list.
  std::vector<std::pair<VarId, VarId>> edges() const;
  /// Same node numbering with every edge touching `removed` dropped.
  GraphView without(std::span<const VarId> removed) const;

 private:
  std::vector<std::set<VarId>> adj_;
};

/// A total order of nodes; `sequence[0]` is position 1 (processed last in a
/// backward pass), `sequence.back()` is position n (processed first).
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(std::vector<VarId> sequence);

  static Ordering identity(std::size_t n);

  const std::vector<VarId>& sequence() const { return sequence_; }
  std::size_t size() const { return sequence_.size(); }
  /// 0-based position of `v`.
  std::size_t position(VarId v) const { return position_.at(static_cast<std::size_t>(v)); }
  VarId at(std::size_t position) const { return sequence_.at(position); }
  Ordering reversed() const;
  /// One line of space-separated ids, position 1 first.
  std::string to_string() const;
  static Ordering parse(std::string_view text, std::size_t n);

 private:
  std::vector<VarId> sequence_;
  std::vector<std::size_t> position_;
};

struct WidthReport {
  std::vector<int> width;          // earlier neighbours in the original graph, by node id
  std::vector<int> induced_width;  // earlier neighbours in the induced graph, by node id
  int w = 0;
  int wstar = 0;
  int fill_edges = 0;
  GraphView induced;  // the original graph plus fill edges

  std::string to_string() const;
};

GraphView moral_graph(const BeliefNetwork& net);
GraphView augmented_graph(const InfluenceDiagram& id);
GraphView interaction_graph(const CnfTheory& cnf);

/// Width and induced width of `g` along `d`. Nodes listed in `ignore` are
/// treated as absent (their edges are dropped) and report width 0.
WidthReport induced_width(const GraphView& g, const Ordering& d,
                          std::span<const VarId> ignore = {});

enum class OrderKind { kMinDegree, kMinFill, kGiven };

const char* to_string(OrderKind kind);

/// Greedy elimination ordering built from position n down to 1. kGiven
/// returns the identity ordering.
Ordering order_heuristic(const GraphView& g, OrderKind kind);

/// Ordering whose first positions are `prefix` (in the given order) and whose
/// last positions are `suffix` (in the given order); the remaining nodes are
/// placed by the greedy heuristic.
Ordering constrained_order(const GraphView& g, std::span<const VarId> prefix,
                           std::span<const VarId> suffix, OrderKind kind);

/// Greedy w-cutset: repeatedly removes the highest-degree remaining node
/// (ties to the lowest id) until the induced width of the remaining graph is
/// at most `w_target`. Width is measured along `along` when given, otherwise
/// along a fresh min-fill ordering of the remaining graph.
std::vector<VarId> cutset_heuristic(const GraphView& g, int w_target,
                                    const std::optional<Ordering>& along = std::nullopt);

}  // namespace bucketforge
