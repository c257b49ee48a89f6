#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace edgecons {

/// Directed edge tail -> head with positive weight. Node indices are 0-based
/// in memory; the edge-list file format is 1-based.
struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted digraph with a fixed, ordered edge list. Construction validates
/// index range, self-loops, weight sign and duplicate ordered pairs.
class Digraph {
 public:
  Digraph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_.at(k); }

 private:
  std::size_t num_nodes_;
  std::vector<Edge> edges_;
};

/// Parses `tail head weight` lines (1-based, `#` starts a comment). The node
/// count is the largest index seen. Errors carry `source:line` context.
Digraph parse_edge_list(std::istream& in, const std::string& source = "<input>");
Digraph parse_edge_list(const std::string& text, const std::string& source);
Digraph load_edge_list(const std::filesystem::path& path);

/// Writes the 1-based edge-list format accepted by parse_edge_list.
void write_edge_list(std::ostream& out, const Digraph& g);

/// Smallest-index node from which every node is reachable along edge
/// directions, or nullopt when the graph has no directed spanning tree.
std::optional<std::size_t> find_root(const Digraph& g);

inline bool is_quasi_strongly_connected(const Digraph& g) {
  return find_root(g).has_value();
}

}  // namespace edgecons
