#include "bucketforge/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "bucketforge/error.hpp"

namespace bucketforge {

void GraphView::add_edge(VarId a, VarId b) {
  if (a == b) return;
  adj_.at(static_cast<std::size_t>(a)).insert(b);
  adj_.at(static_cast<std::size_t>(b)).insert(a);
}

void GraphView::add_clique(std::span<const VarId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) add_edge(nodes[i], nodes[j]);
}

bool GraphView::has_edge(VarId a, VarId b) const {
  return adj_.at(static_cast<std::size_t>(a)).count(b) > 0;
}

std::size_t GraphView::edge_count() const {
  std::size_t twice = 0;
  for (const auto& s : adj_) twice += s.size();
  return twice / 2;
}

std::vector<std::pair<VarId, VarId>> GraphView::edges() const {
  std::vector<std::pair<VarId, VarId>> out;
  for (std::size_t a = 0; a < adj_.size(); ++a)
    for (VarId b : adj_[a])
      if (static_cast<VarId>(a) < b) out.emplace_back(static_cast<VarId>(a), b);
  return out;
}

GraphView GraphView::without(std::span<const VarId> removed) const {
  std::vector<bool> gone(adj_.size(), false);
  for (VarId v : removed) gone.at(static_cast<std::size_t>(v)) = true;
  GraphView out(adj_.size());
  for (auto [a, b] : edges())
    if (!gone[static_cast<std::size_t>(a)] && !gone[static_cast<std::size_t>(b)]) out.add_edge(a, b);
  return out;
}

Ordering::Ordering(std::vector<VarId> sequence) : sequence_(std::move(sequence)) {
  position_.assign(sequence_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    VarId v = sequence_[i];
    if (v < 0 || static_cast<std::size_t>(v) >= sequence_.size())
      fail(ErrorCode::kUsage, "ordering entry " + std::to_string(v) + " out of range");
    auto& slot = position_[static_cast<std::size_t>(v)];
    if (slot != std::numeric_limits<std::size_t>::max())
      fail(ErrorCode::kUsage, "ordering lists node " + std::to_string(v) + " twice");
    slot = i;
  }
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<VarId> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  return Ordering(std::move(seq));
}

Ordering Ordering::reversed() const {
  return Ordering(std::vector<VarId>(sequence_.rbegin(), sequence_.rend()));
}

std::string Ordering::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(sequence_[i]);
  }
  return out;
}

Ordering Ordering::parse(std::string_view text, std::size_t n) {
  std::vector<VarId> seq;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    int v = -1;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, v);
    if (ec != std::errc() || ptr != text.data() + j)
      fail(ErrorCode::kParse, "ordering: bad id '" + std::string(text.substr(i, j - i)) + "'");
    seq.push_back(v);
    i = j;
  }
  if (seq.size() != n)
    fail(ErrorCode::kUsage, "ordering has " + std::to_string(seq.size()) + " entries, expected " +
                                std::to_string(n));
  return Ordering(std::move(seq));
}

std::string WidthReport::to_string() const {
  return "w=" + std::to_string(w) + " wstar=" + std::to_string(wstar) +
         " fill=" + std::to_string(fill_edges);
}

GraphView moral_graph(const BeliefNetwork& net) {
  GraphView g(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    std::vector<VarId> family = net.parents[v];
    family.push_back(static_cast<VarId>(v));
    g.add_clique(family);
  }
  return g;
}

GraphView augmented_graph(const InfluenceDiagram& id) {
  GraphView g = moral_graph(id.network);
  for (const auto& u : id.utilities) g.add_clique(u.scope());
  return g;
}

GraphView interaction_graph(const CnfTheory& cnf) {
  GraphView g(static_cast<std::size_t>(cnf.num_props));
  for (const auto& clause : cnf.clauses) {
    std::vector<VarId> props;
    for (int lit : clause) props.push_back(std::abs(lit) - 1);
    g.add_clique(props);
  }
  return g;
}

WidthReport induced_width(const GraphView& g, const Ordering& d, std::span<const VarId> ignore) {
  const std::size_t n = g.size();
  if (d.size() != n)
    fail(ErrorCode::kUsage, "ordering covers " + std::to_string(d.size()) + " nodes, graph has " +
                                std::to_string(n));
  std::vector<bool> skip(n, false);
  for (VarId v : ignore) skip.at(static_cast<std::size_t>(v)) = true;

  WidthReport r;
  r.width.assign(n, 0);
  r.induced_width.assign(n, 0);
  r.induced = g.without(ignore);
  for (std::size_t v = 0; v < n; ++v) {
    if (skip[v]) continue;
    const auto pv = d.position(static_cast<VarId>(v));
    for (VarId u : r.induced.neighbors(static_cast<VarId>(v)))
      if (d.position(u) < pv) ++r.width[v];
    r.w = std::max(r.w, r.width[v]);
  }
  for (std::size_t p = n; p-- > 0;) {
    const VarId v = d.at(p);
    if (skip[static_cast<std::size_t>(v)]) continue;
    std::vector<VarId> earlier;
    for (VarId u : r.induced.neighbors(v))
      if (d.position(u) < p) earlier.push_back(u);
    r.induced_width[static_cast<std::size_t>(v)] = static_cast<int>(earlier.size());
    r.wstar = std::max(r.wstar, static_cast<int>(earlier.size()));
    for (std::size_t i = 0; i < earlier.size(); ++i)
      for (std::size_t j = i + 1; j < earlier.size(); ++j)
        if (!r.induced.has_edge(earlier[i], earlier[j])) {
          r.induced.add_edge(earlier[i], earlier[j]);
          ++r.fill_edges;
        }
  }
  return r;
}

const char* to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::kMinDegree: return "min-degree";
    case OrderKind::kMinFill: return "min-fill";
    case OrderKind::kGiven: return "given";
  }
  return "?";
}

namespace {

// Working graph for greedy elimination.
class Eliminator {
 public:
  explicit Eliminator(const GraphView& g) : adj_(g.size()), alive_(g.size(), true) {
    for (std::size_t v = 0; v < g.size(); ++v)
      for (VarId u : g.neighbors(static_cast<VarId>(v))) adj_[v].insert(u);
  }

  void eliminate(VarId v) {
    auto& nb = adj_[static_cast<std::size_t>(v)];
    std::vector<VarId> list(nb.begin(), nb.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      adj_[static_cast<std::size_t>(list[i])].erase(v);
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        adj_[static_cast<std::size_t>(list[i])].insert(list[j]);
        adj_[static_cast<std::size_t>(list[j])].insert(list[i]);
      }
    }
    nb.clear();
    alive_[static_cast<std::size_t>(v)] = false;
  }

  std::size_t score(VarId v, OrderKind kind) const {
    const auto& nb = adj_[static_cast<std::size_t>(v)];
    if (kind == OrderKind::kMinDegree) return nb.size();
    std::size_t missing = 0;
    for (auto i = nb.begin(); i != nb.end(); ++i)
      for (auto j = std::next(i); j != nb.end(); ++j)
        if (!adj_[static_cast<std::size_t>(*i)].count(*j)) ++missing;
    return missing;
  }

  // Lowest-scoring candidate, ties to the lowest id.
  VarId pick(const std::vector<bool>& candidate, OrderKind kind) const {
    VarId best = -1;
    std::size_t best_score = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (!alive_[v] || !candidate[v]) continue;
      std::size_t s = score(static_cast<VarId>(v), kind);
      if (s < best_score) {
        best_score = s;
        best = static_cast<VarId>(v);
      }
    }
    return best;
  }

 private:
  std::vector<std::set<VarId>> adj_;
  std::vector<bool> alive_;
};

}  // namespace

Ordering order_heuristic(const GraphView& g, OrderKind kind) {
  return constrained_order(g, {}, {}, kind);
}

Ordering constrained_order(const GraphView& g, std::span<const VarId> prefix,
                           std::span<const VarId> suffix, OrderKind kind) {
  const std::size_t n = g.size();
  std::vector<int> role(n, 0);  // 1 prefix, 2 suffix
  for (VarId v : prefix) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      fail(ErrorCode::kUsage, "ordering constraint names unknown node " + std::to_string(v));
    if (role[static_cast<std::size_t>(v)] != 0)
      fail(ErrorCode::kUsage, "node " + std::to_string(v) + " constrained twice");
    role[static_cast<std::size_t>(v)] = 1;
  }
  for (VarId v : suffix) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      fail(ErrorCode::kUsage, "ordering constraint names unknown node " + std::to_string(v));
    if (role[static_cast<std::size_t>(v)] != 0)
      fail(ErrorCode::kUsage, "node " + std::to_string(v) + " constrained twice");
    role[static_cast<std::size_t>(v)] = 2;
  }

  std::vector<VarId> seq(n, -1);
  if (kind == OrderKind::kGiven) {
    std::size_t p = 0;
    for (VarId v : prefix) seq[p++] = v;
    for (std::size_t v = 0; v < n; ++v)
      if (role[v] == 0) seq[p++] = static_cast<VarId>(v);
    for (VarId v : suffix) seq[p++] = v;
    return Ordering(std::move(seq));
  }

  Eliminator work(g);
  std::size_t slot = n;
  for (std::size_t i = suffix.size(); i-- > 0;) {
    seq[--slot] = suffix[i];
    work.eliminate(suffix[i]);
  }
  std::vector<bool> free(n);
  for (std::size_t v = 0; v < n; ++v) free[v] = role[v] == 0;
  while (slot > prefix.size()) {
    VarId v = work.pick(free, kind);
    seq[--slot] = v;
    work.eliminate(v);
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) seq[i] = prefix[i];
  return Ordering(std::move(seq));
}

std::vector<VarId> cutset_heuristic(const GraphView& g, int w_target,
                                    const std::optional<Ordering>& along) {
  if (w_target < 0) fail(ErrorCode::kUsage, "cutset width bound must be >= 0");
  std::vector<VarId> cut;
  std::vector<bool> in_cut(g.size(), false);
  while (true) {
    GraphView rest = g.without(cut);
    int w = 0;
    if (along) {
      w = induced_width(g, *along, cut).wstar;
    } else {
      w = induced_width(rest, order_heuristic(rest, OrderKind::kMinFill), cut).wstar;
    }
    if (w <= w_target || cut.size() == g.size()) break;
    VarId best = -1;
    std::size_t best_degree = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (in_cut[v]) continue;
      std::size_t d = rest.degree(static_cast<VarId>(v));
      if (best < 0 || d > best_degree) {
        best = static_cast<VarId>(v);
        best_degree = d;
      }
    }
    cut.push_back(best);
    in_cut[static_cast<std::size_t>(best)] = true;
  }
  std::sort(cut.begin(), cut.end());
  return cut;
}

}  // namespace bucketforge
