#pragma once

// Unweighted graph over dense node indices plus edge-list ingestion.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ned/error.hpp"

namespace ned {

using NodeIndex = std::uint32_t;

enum class Direction { undirected, out, in };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::undirected: return "undirected";
    case Direction::out: return "out";
    case Direction::in: return "in";
  }
  return "?";
}

class Graph {
 public:
  Graph() = default;

  bool directed() const noexcept { return directed_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  // Undirected: number of unordered pairs. Directed: number of arcs.
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Sorted by internal index. `mode` must agree with the graph kind.
  std::span<const NodeIndex> neighbors(NodeIndex v, Direction mode) const {
    if (v >= size()) throw UsageError("node index out of range");
    if ((mode == Direction::undirected) == directed_)
      throw UsageError(std::string("direction mode '") + to_string(mode) +
                       "' does not match a " +
                       (directed_ ? "directed" : "undirected") + " graph");
    const auto& csr = mode == Direction::in ? in_ : out_;
    return {csr.targets.data() + csr.offsets[v],
            csr.offsets[v + 1] - csr.offsets[v]};
  }

  // Undirected neighbors or out-neighbors; no mode check.
  std::span<const NodeIndex> adjacent(NodeIndex v) const {
    return {out_.targets.data() + out_.offsets[v],
            out_.offsets[v + 1] - out_.offsets[v]};
  }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    auto n = adjacent(a);
    return std::binary_search(n.begin(), n.end(), b);
  }

  const std::string& label(NodeIndex v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  NodeIndex index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
      throw UsageError("unknown node label '" + std::string(label) + "'");
    return it->second;
  }

  bool contains(std::string_view label) const {
    return index_.count(std::string(label)) != 0;
  }

  // Each edge once: (a, b) with a < b for undirected graphs, arcs a -> b
  // otherwise; ordered by (a, b).
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    out.reserve(edge_count_);
    for (NodeIndex a = 0; a < size(); ++a)
      for (NodeIndex b : adjacent(a))
        if (directed_ || a < b) out.emplace_back(a, b);
    return out;
  }

  // Self-loops and duplicate edges are dropped. For undirected graphs each
  // pair may be given in either orientation.
  static Graph from_edges(bool directed, std::vector<std::string> labels,
                          std::vector<std::pair<NodeIndex, NodeIndex>> edges) {
    Graph g;
    g.directed_ = directed;
    g.labels_ = std::move(labels);
    const auto n = static_cast<NodeIndex>(g.labels_.size());
    g.index_.reserve(n);
    for (NodeIndex i = 0; i < n; ++i)
      if (!g.index_.emplace(g.labels_[i], i).second)
        throw UsageError("duplicate node label '" + g.labels_[i] + "'");

    std::vector<std::pair<NodeIndex, NodeIndex>> arcs;
    arcs.reserve(edges.size() * (directed ? 1 : 2));
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw UsageError("edge endpoint out of range");
      if (a == b) continue;
      arcs.emplace_back(a, b);
      if (!directed) arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    g.edge_count_ = directed ? arcs.size() : arcs.size() / 2;

    g.out_ = Csr::build(n, arcs);
    if (directed) {
      for (auto& [a, b] : arcs) std::swap(a, b);
      std::sort(arcs.begin(), arcs.end());
      g.in_ = Csr::build(n, arcs);
    }
    return g;
  }

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<NodeIndex> targets;

    static Csr build(NodeIndex n,
                     const std::vector<std::pair<NodeIndex, NodeIndex>>& sorted) {
      Csr c;
      c.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
      c.targets.reserve(sorted.size());
      for (auto [a, b] : sorted) {
        ++c.offsets[a + 1];
        c.targets.push_back(b);
      }
      for (std::size_t i = 0; i < n; ++i) c.offsets[i + 1] += c.offsets[i];
      return c;
    }
  };

  bool directed_ = false;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  Csr out_;
  Csr in_;
  std::size_t edge_count_ = 0;
};

// Incremental construction keyed by external labels; first appearance of a
// label fixes its internal index.
class GraphBuilder {
 public:
  explicit GraphBuilder(bool directed) : directed_(directed) {}

  NodeIndex add_node(std::string_view label) {
    auto [it, inserted] =
        index_.try_emplace(std::string(label), static_cast<NodeIndex>(labels_.size()));
    if (inserted) labels_.emplace_back(label);
    return it->second;
  }

  void add_edge(std::string_view a, std::string_view b) {
    NodeIndex ia = add_node(a);
    NodeIndex ib = add_node(b);
    edges_.emplace_back(ia, ib);
  }

  Graph build() && {
    return Graph::from_edges(directed_, std::move(labels_), std::move(edges_));
  }

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
};

// One edge per line, two whitespace-separated labels. Lines starting with
// '#' or '%' and blank lines are skipped. SNAP and KONECT exports load as-is.
inline Graph parse_edge_list(std::istream& in, bool directed) {
  GraphBuilder builder(directed);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    tokens >> a >> b;
    if (b.empty() || (tokens >> extra))
      throw ParseError("edge list line " + std::to_string(line_no) +
                           ": expected exactly two node labels",
                       line_no);
    builder.add_edge(a, b);
  }
  return std::move(builder).build();
}

inline Graph parse_edge_list(std::string_view text, bool directed) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, directed);
}

// Inverse of parse_edge_list up to internal index order. Isolated nodes are
// written as self-loop lines, which the parser registers as nodes and drops
// as edges.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<bool> touched(g.size(), false);
  for (auto [a, b] : g.edges()) {
    touched[a] = touched[b] = true;
    out << g.label(a) << ' ' << g.label(b) << '\n';
  }
  for (NodeIndex v = 0; v < g.size(); ++v)
    if (!touched[v]) out << g.label(v) << ' ' << g.label(v) << '\n';
}

}  // namespace ned
