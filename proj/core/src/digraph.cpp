#include "edgecons/digraph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "edgecons/errors.hpp"

namespace edgecons {

Digraph::Digraph(std::size_t num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ == 0) {
    throw Error(ErrorCode::InvalidGraph, "graph must have at least one node");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const std::string where = "edge " + std::to_string(k + 1) + " (" +
                              std::to_string(e.tail + 1) + "->" +
                              std::to_string(e.head + 1) + ")";
    if (e.tail >= num_nodes_ || e.head >= num_nodes_) {
      throw Error(ErrorCode::InvalidGraph, where + ": node index out of range");
    }
    if (e.tail == e.head) {
      throw Error(ErrorCode::InvalidGraph, where + ": self-loop");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::InvalidGraph, where + ": weight must be positive and finite");
    }
    if (!seen.emplace(e.tail, e.head).second) {
      throw Error(ErrorCode::InvalidGraph, where + ": duplicate edge");
    }
  }
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

template <typename T>
bool parse_token(const std::string& token, T& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Digraph parse_edge_list(std::istream& in, const std::string& source) {
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    const std::string where = source + ":" + std::to_string(line_no);
    if (tokens.size() != 3) {
      throw Error(ErrorCode::InvalidGraph, where + ": expected 'tail head weight'");
    }
    std::size_t tail = 0, head = 0;
    double weight = 0.0;
    if (!parse_token(tokens[0], tail) || !parse_token(tokens[1], head) || tail == 0 || head == 0) {
      throw Error(ErrorCode::InvalidGraph, where + ": node indices must be integers >= 1");
    }
    if (!parse_token(tokens[2], weight)) {
      throw Error(ErrorCode::InvalidGraph, where + ": malformed weight '" + tokens[2] + "'");
    }
    if (tail == head) throw Error(ErrorCode::InvalidGraph, where + ": self-loop " + tokens[0]);
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw Error(ErrorCode::InvalidGraph, where + ": weight must be positive and finite");
    }
    if (!seen.emplace(tail, head).second) {
      throw Error(ErrorCode::InvalidGraph,
                  where + ": duplicate edge " + tokens[0] + "->" + tokens[1]);
    }
    max_index = std::max({max_index, tail, head});
    edges.push_back({tail - 1, head - 1, weight});
  }
  if (edges.empty()) {
    throw Error(ErrorCode::InvalidGraph, source + ": no edges");
  }
  return Digraph(max_index, std::move(edges));
}

Digraph parse_edge_list(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_edge_list(in, source);
}

Digraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open graph file '" + path.string() + "'");
  }
  return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  for (const Edge& e : g.edges()) {
    char buf[32];
    const auto end = std::to_chars(buf, buf + sizeof buf, e.weight).ptr;
    out << e.tail + 1 << ' ' << e.head + 1 << ' ' << std::string_view(buf, end - buf) << '\n';
  }
}

std::optional<std::size_t> find_root(const Digraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::size_t>> out(n);
  for (const Edge& e : g.edges()) out[e.tail].push_back(e.head);

  for (std::size_t root = 0; root < n; ++root) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    seen[root] = true;
    frontier.push(root);
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v : out[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          frontier.push(v);
        }
      }
    }
    if (reached == n) return root;
  }
  return std::nullopt;
}

}  // namespace edgecons
