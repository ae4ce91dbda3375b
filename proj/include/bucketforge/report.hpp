#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bucketforge/engines.hpp"
#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"
#include "bucketforge/resolution.hpp"

namespace bucketforge {

/// 12 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double x);

struct ReportOptions {
  bool json = false;
  bool trace = false;
};

/// Line-oriented `key=value` text (or one JSON object) for a query result.
/// With `oracle`, the reference result and the largest absolute deviation
/// are appended.
std::string render_query(const QueryResult& r, const BeliefNetwork& net, const Ordering& d,
                         const QueryResult* oracle, const ReportOptions& options);

struct OracleVerdict {
  bool satisfiable = false;
  bool same_models = false;  // extension and theory have identical model sets
};

std::string render_resolution(const DirectionalExtension& ext,
                              const std::optional<std::vector<bool>>& model,
                              const ReportOptions& options,
                              const std::optional<OracleVerdict>& oracle = std::nullopt);

struct WidthLine {
  std::string label;  // heuristic name, empty for a given ordering
  Ordering order;
  WidthReport report;
};

using NodeNamer = std::function<std::string(VarId)>;

std::string render_widths(const GraphView& g, const std::vector<WidthLine>& lines,
                          const NodeNamer& name, const ReportOptions& options);

/// Largest absolute difference between the numeric payloads of two results
/// of the same kind (belief entries, value, evidence mass).
double max_abs_diff(const QueryResult& a, const QueryResult& b);

}  // namespace bucketforge
