#pragma once

// Undirected simple graphs on nodes 1..n, the full property report used to
// verify generated networks, text I/O, and canonical labeling for n <= 12.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netgen/milp.hpp"

namespace netgen {

// Nodes are 1-based in every external surface; storage is 0-based.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 2) throw Error("graph needs at least 2 nodes");
  }

  Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [i, j] : edges) add_edge(i, j);
  }

  [[nodiscard]] int n() const { return n_; }

  void add_edge(int i, int j) {
    check_pair(i, j);
    if (has_edge(i, j)) throw Error("duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
    set(i, j, true);
  }
  void remove_edge(int i, int j) {
    check_pair(i, j);
    set(i, j, false);
  }
  void set_edge(int i, int j, bool on) {
    check_pair(i, j);
    set(i, j, on);
  }
  [[nodiscard]] bool has_edge(int i, int j) const {
    return adj_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] != 0;
  }

  // Normalized (i < j), lexicographically ordered.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }
  [[nodiscard]] std::size_t num_edges() const {
    std::size_t c = 0;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j) c += has_edge(i, j);
    return c;
  }
  [[nodiscard]] int degree(int i) const {
    int d = 0;
    for (int j = 1; j <= n_; ++j) d += (j != i && has_edge(i, j));
    return d;
  }
  [[nodiscard]] std::vector<int> neighbors(int i) const {
    std::vector<int> out;
    for (int j = 1; j <= n_; ++j)
      if (j != i && has_edge(i, j)) out.push_back(j);
    return out;
  }

  // Graph with node perm[i-1] in place of node i.
  [[nodiscard]] Graph relabeled(const std::vector<int>& perm) const {
    Graph g(n_);
    for (auto [i, j] : edges()) g.set_edge(perm[i - 1], perm[j - 1], true);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void check_pair(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw Error("node index out of range: " + std::to_string(i) + "-" + std::to_string(j));
    if (i == j) throw Error("self-loop at node " + std::to_string(i));
  }
  void set(int i, int j, bool on) {
    adj_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] = on;
    adj_[static_cast<std::size_t>(j - 1) * n_ + (i - 1)] = on;
  }

  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct PropertyReport {
  int n = 0;
  std::vector<int> degrees;
  std::vector<long> triplets;   // 2-paths centred at each node, C(deg,2)
  std::vector<long> triangles;  // triangles through each node
  std::vector<std::optional<double>> local_cc;  // defined for degree >= 2
  double avg_cc = 0.0;  // mean over all nodes; nodes of degree < 2 count as 0
  std::optional<double> global_cc;
  std::vector<std::vector<int>> dist;  // kUnreachable when disconnected
  bool connected = false;
  std::optional<int> diameter;
  std::optional<double> apl;
  std::optional<Interval> cpl;  // median rule; a point for odd pair counts
  std::vector<std::optional<double>> closeness;
  std::vector<long> sdn;             // sum of neighbour degrees
  std::vector<long> nnd;             // nodes per degree, index q = 0..n-1
  std::vector<std::optional<double>> adn;  // mean neighbour degree per class

  [[nodiscard]] long total_triangles() const {
    return std::accumulate(triangles.begin(), triangles.end(), 0L) / 3;
  }
  [[nodiscard]] long total_triplets() const {
    return std::accumulate(triplets.begin(), triplets.end(), 0L);
  }
};

inline std::vector<std::vector<int>> bfs_distances(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> nbr(n + 1);
  for (int i = 1; i <= n; ++i) nbr[i] = g.neighbors(i);
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (int s = 1; s <= n; ++s) {
    auto& d = dist[s - 1];
    d[s - 1] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : nbr[u]) {
        if (d[v - 1] == kUnreachable) {
          d[v - 1] = d[u - 1] + 1;
          q.push(v);
        }
      }
    }
  }
  return dist;
}

// Median of a sorted multiset: the middle element for odd sizes, the closed
// interval between the two middle elements otherwise.
inline Interval median_interval(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  if (k % 2 == 1) return {values[k / 2], values[k / 2]};
  return {values[k / 2 - 1], values[k / 2]};
}

inline PropertyReport compute_report(const Graph& g) {
  const int n = g.n();
  PropertyReport r;
  r.n = n;
  r.degrees.resize(n);
  for (int i = 1; i <= n; ++i) r.degrees[i - 1] = g.degree(i);

  r.triplets.resize(n);
  r.triangles.assign(n, 0);
  for (int i = 0; i < n; ++i) r.triplets[i] = static_cast<long>(r.degrees[i]) * (r.degrees[i] - 1) / 2;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!g.has_edge(i, j)) continue;
      for (int k = j + 1; k <= n; ++k)
        if (g.has_edge(i, k) && g.has_edge(j, k)) {
          ++r.triangles[i - 1];
          ++r.triangles[j - 1];
          ++r.triangles[k - 1];
        }
    }

  r.local_cc.resize(n);
  double cc_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (r.triplets[i] > 0) {
      r.local_cc[i] = static_cast<double>(r.triangles[i]) / static_cast<double>(r.triplets[i]);
      cc_sum += *r.local_cc[i];
    }
  }
  r.avg_cc = cc_sum / n;
  if (r.total_triplets() > 0)
    r.global_cc = 3.0 * static_cast<double>(r.total_triangles()) /
                  static_cast<double>(r.total_triplets());

  r.dist = bfs_distances(g);
  r.connected = true;
  std::vector<double> pair_d;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (r.dist[i][j] == kUnreachable) r.connected = false;
      pair_d.push_back(r.dist[i][j]);
    }
  r.closeness.resize(n);
  if (r.connected) {
    r.diameter = static_cast<int>(*std::max_element(pair_d.begin(), pair_d.end()));
    r.apl = std::accumulate(pair_d.begin(), pair_d.end(), 0.0) / static_cast<double>(pair_d.size());
    r.cpl = median_interval(pair_d);
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int j = 0; j < n; ++j) s += r.dist[i][j];
      r.closeness[i] = static_cast<double>(n - 1) / static_cast<double>(s);
    }
  }

  r.sdn.assign(n, 0);
  for (int i = 1; i <= n; ++i)
    for (int j : g.neighbors(i)) r.sdn[i - 1] += r.degrees[j - 1];
  r.nnd.assign(n, 0);
  for (int d : r.degrees) ++r.nnd[d];
  r.adn.resize(n);
  for (int q = 1; q < n; ++q) {
    if (r.nnd[q] == 0) continue;
    long s = 0;
    for (int i = 0; i < n; ++i)
      if (r.degrees[i] == q) s += r.sdn[i];
    r.adn[q] = static_cast<double>(s) / (static_cast<double>(q) * r.nnd[q]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text formats

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << "\n";
  for (auto [i, j] : g.edges()) out << i << " " << j << "\n";
  return out.str();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Graph> g;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<long> nums;
    long v;
    while (ls >> v) nums.push_back(v);
    if (!ls.eof()) throw Error("edge list line " + std::to_string(lineno) + ": not an integer");
    if (nums.empty()) continue;
    if (!g) {
      if (nums.size() != 1) throw Error("edge list must start with the node count");
      g.emplace(static_cast<int>(nums[0]));
      continue;
    }
    if (nums.size() != 2)
      throw Error("edge list line " + std::to_string(lineno) + ": expected 'i j'");
    int i = static_cast<int>(nums[0]), j = static_cast<int>(nums[1]);
    if (i > j) std::swap(i, j);
    g->add_edge(i, j);
  }
  if (!g) throw Error("empty edge list");
  return *g;
}

// Node labels carry degrees.
inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int i = 1; i <= g.n(); ++i)
    out << "  " << i << " [label=\"" << g.degree(i) << "\"];\n";
  for (auto [i, j] : g.edges()) out << "  " << i << " -- " << j << ";\n";
  out << "}\n";
  return out.str();
}

// Reads the subset written by to_dot: node statements "i [...];" and edge
// statements "i -- j;". The node count is the largest node mentioned.
inline Graph parse_dot(const std::string& text) {
  const auto open = text.find('{'), close = text.rfind('}');
  if (text.find("digraph") != std::string::npos || text.find("graph") == std::string::npos)
    throw Error("DOT: expected an undirected 'graph'");
  if (open == std::string::npos || close == std::string::npos || close < open) throw Error("DOT: missing braces");
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  std::istringstream body(text.substr(open + 1, close - open - 1));
  std::string stmt;
  auto node_id = [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw Error("DOT: node ids must be integers, got '" + s + "'");
    }
    if (used != s.size() || v < 1) throw Error("DOT: bad node id '" + s + "'");
    return v;
  };
  while (std::getline(body, stmt, ';')) {
    if (auto b = stmt.find('['); b != std::string::npos) stmt.erase(b);
    std::istringstream ss(stmt);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 1) {
      n = std::max(n, node_id(tok[0]));
    } else if (tok.size() == 3 && tok[1] == "--") {
      const int i = node_id(tok[0]), j = node_id(tok[2]);
      n = std::max({n, i, j});
      edges.emplace_back(std::min(i, j), std::max(i, j));
    } else {
      throw Error("DOT: unsupported statement '" + stmt + "'");
    }
  }
  Graph g(n);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

inline Graph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 5, "graph") == 0) return parse_dot(text);
  return parse_edge_list(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

// ---------------------------------------------------------------------------
// Canonical labeling: individualization-refinement over an equitable
// colouring; the key is the lexicographically smallest adjacency string over
// all leaves of the search tree.

inline constexpr int kCanonicalMaxNodes = 12;

namespace detail {

inline int compress_colors(std::vector<int>& color) {
  auto uniq = color;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (int& c : color)
    c = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), c) - uniq.begin());
  return static_cast<int>(uniq.size());
}

inline std::vector<int> refine_colors(const Graph& g, std::vector<int> color) {
  const int n = g.n();
  int ncol = compress_colors(color);
  for (;;) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> counts(ncol, 0);
      for (int u = 0; u < n; ++u)
        if (u != v && g.has_edge(u + 1, v + 1)) ++counts[color[u]];
      sig[v].push_back(color[v]);
      sig[v].insert(sig[v].end(), counts.begin(), counts.end());
    }
    auto uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    const int nnext = static_cast<int>(uniq.size());
    if (nnext == ncol) return color;
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    ncol = nnext;
  }
}

inline std::string adjacency_string(const Graph& g, const std::vector<int>& pos) {
  // pos[v] = canonical position of vertex v
  const int n = g.n();
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::string bits;
  bits.reserve(n * (n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) bits.push_back(g.has_edge(at[a] + 1, at[b] + 1) ? '1' : '0');
  return bits;
}

inline void canonical_search(const Graph& g, const std::vector<int>& color, std::string& best,
                             bool& have) {
  const int n = g.n();
  std::vector<int> size(n, 0);
  for (int c : color) ++size[c];
  int target = -1;
  for (int c = 0; c < n; ++c)
    if (size[c] > 1) {
      target = c;
      break;
    }
  if (target < 0) {
    auto s = adjacency_string(g, color);
    if (!have || s > best) {
      best = std::move(s);
      have = true;
    }
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u) next[u] = 2 * color[u] + 1;
    next[v] = 2 * color[v];
    canonical_search(g, refine_colors(g, next), best, have);
  }
}

}  // namespace detail

inline std::string canonical_key(const Graph& g) {
  if (g.n() > kCanonicalMaxNodes)
    throw Error("canonical_key supports at most " + std::to_string(kCanonicalMaxNodes) + " nodes");
  std::vector<int> color(g.n(), 0);
  color = detail::refine_colors(g, color);
  std::string best;
  bool have = false;
  detail::canonical_search(g, color, best, have);
  return std::to_string(g.n()) + ":" + best;
}

}  // namespace netgen
