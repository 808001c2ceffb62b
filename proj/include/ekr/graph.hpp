#pragma once

// Simple undirected graphs with one adjacency bitset per vertex, plus the
// DIMACS and DOT text formats.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ekr/errors.hpp"

namespace ekr {

class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::uint64_t* data() noexcept { return words_.data(); }
  const std::uint64_t* data() const noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void set_all() noexcept {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    trim();
  }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool none() const noexcept { return !any(); }

  std::size_t first() const noexcept { return next(0); }
  /// Least set index >= i, or npos.
  std::size_t next(std::size_t i) const noexcept {
    if (i >= n_) return npos;
    std::size_t w = i >> 6;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w == words_.size()) return npos;
      cur = words_[w];
    }
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i != npos; i = next(i + 1)) out.push_back(i);
    return out;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bitset& andnot(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  void flip() noexcept {
    for (auto& w : words_) w = ~w;
    trim();
  }

  std::size_t count_and(const Bitset& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void trim() noexcept {
    if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}

  std::size_t vertex_count() const noexcept { return adj_.size(); }

  /// Loops are rejected; repeated edges are harmless.
  void add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= adj_.size()) throw BadParams("edge endpoint out of range");
    if (u == v) throw BadParams("loop at vertex " + std::to_string(u));
    adj_[u].set(v);
    adj_[v].set(u);
  }

  bool has_edge(std::size_t u, std::size_t v) const noexcept { return adj_[u].test(v); }
  const Bitset& neighbors(std::size_t v) const noexcept { return adj_[v]; }
  std::size_t degree(std::size_t v) const noexcept { return adj_[v].count(); }

  std::size_t edge_count() const noexcept {
    std::size_t s = 0;
    for (const auto& row : adj_) s += row.count();
    return s / 2;
  }

  /// Sorted (u < v) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      for (std::size_t v = adj_[u].next(u + 1); v != Bitset::npos; v = adj_[u].next(v + 1)) out.emplace_back(u, v);
    }
    return out;
  }

  /// Same degree everywhere (the cheap necessary condition for vertex-transitivity).
  bool is_regular() const noexcept {
    if (adj_.empty()) return true;
    std::size_t d = adj_[0].count();
    return std::all_of(adj_.begin(), adj_.end(), [d](const Bitset& b) { return b.count() == d; });
  }

  Graph complement() const {
    Graph c(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      c.adj_[v] = adj_[v];
      c.adj_[v].flip();
      c.adj_[v].reset(v);
    }
    return c;
  }

  Graph induced(const std::vector<std::size_t>& vs) const {
    Graph h(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (has_edge(vs[i], vs[j])) h.add_edge(i, j);
      }
    }
    return h;
  }

  bool is_clique(const std::vector<std::size_t>& vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i] >= adj_.size()) return false;
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (vs[i] == vs[j] || !has_edge(vs[i], vs[j])) return false;
      }
    }
    return true;
  }

  bool is_coclique(const std::vector<std::size_t>& vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i] >= adj_.size()) return false;
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (vs[i] == vs[j] || has_edge(vs[i], vs[j])) return false;
      }
    }
    return true;
  }

  /// Direct row access for builders that fill whole rows at once. The
  /// caller keeps the matrix symmetric and loop-free.
  Bitset& row(std::size_t v) noexcept { return adj_[v]; }

  std::vector<std::string> labels;  // optional, one per vertex

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<Bitset> adj_;
};

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph empty_graph(std::size_t n) { return Graph(n); }

// ---------------------------------------------------------------------------
// Text formats

enum class GraphFormat { Dimacs, Dot };

inline void write_dimacs(const Graph& g, std::ostream& os) {
  auto es = g.edges();
  os << "p edge " << g.vertex_count() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  if (!os) throw IoError("write failure while emitting DIMACS");
}

inline void write_dot(const Graph& g, std::ostream& os) {
  os << "graph G {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v;
    if (v < g.labels.size() && !g.labels[v].empty()) {
      os << " [label=\"";
      for (char ch : g.labels[v]) {
        if (ch == '"' || ch == '\\') os << '\\';
        os << ch;
      }
      os << "\"]";
    }
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  if (!os) throw IoError("write failure while emitting DOT");
}

inline void export_graph(const Graph& g, GraphFormat format, std::ostream& os) {
  if (format == GraphFormat::Dimacs)
    write_dimacs(g, os);
  else
    write_dot(g, os);
}

inline std::string export_graph(const Graph& g, GraphFormat format) {
  std::ostringstream os;
  export_graph(g, format, os);
  return os.str();
}

/// Reads "c" comments, one "p edge n m" (or "p col") header and 1-based
/// "e u v" lines.
inline Graph parse_dimacs(std::istream& is) {
  std::string line;
  Graph g;
  bool have_header = false;
  std::size_t declared_edges = 0, lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (tag == "p") {
      std::string kind;
      long long n = -1, m = -1;
      if (have_header || !(ls >> kind >> n >> m) || n < 0 || m < 0) throw ParseError("bad DIMACS header" + where);
      g = Graph(static_cast<std::size_t>(n));
      declared_edges = static_cast<std::size_t>(m);
      have_header = true;
    } else if (tag == "e") {
      long long u = 0, v = 0;
      if (!have_header || !(ls >> u >> v)) throw ParseError("bad DIMACS edge" + where);
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > g.vertex_count() ||
          static_cast<std::size_t>(v) > g.vertex_count() || u == v) {
        throw ParseError("DIMACS edge out of range or loop" + where);
      }
      g.add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    } else {
      throw ParseError("unknown DIMACS line tag '" + tag + "'" + where);
    }
  }
  if (!have_header) throw ParseError("DIMACS input has no header");
  (void)declared_edges;  // duplicate edges make the declared count unreliable
  return g;
}

inline Graph parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

}  // namespace ekr
