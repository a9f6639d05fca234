#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpsl/error.hpp"

namespace qpsl {

struct Arrow {
  std::string id;
  int tail = -1;
  int head = -1;
  bool operator==(const Arrow&) const = default;
};

/// Loop-free quiver with named vertices and named arrows.
class Quiver {
public:
  Quiver() = default;
  explicit Quiver(std::vector<std::string> vertex_labels) : vertices_(std::move(vertex_labels)) {
    for (int i = 0; i < int(vertices_.size()); ++i) vertex_index_[vertices_[i]] = i;
  }

  int num_vertices() const { return int(vertices_.size()); }
  int num_arrows() const { return int(arrows_.size()); }
  const std::vector<std::string>& vertex_labels() const { return vertices_; }
  const std::string& vertex_label(int v) const { return vertices_[v]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int a) const { return arrows_[a]; }

  int vertex(const std::string& label) const {
    auto it = vertex_index_.find(label);
    require(it != vertex_index_.end(), errc::invalid_input, "unknown vertex: " + label);
    return it->second;
  }
  bool has_vertex(const std::string& label) const { return vertex_index_.count(label) > 0; }

  int add_arrow(const std::string& id, int tail, int head) {
    require(tail != head, errc::invalid_input, "loop arrow rejected: " + id);
    require(!arrow_index_.count(id), errc::invalid_input, "duplicate arrow id: " + id);
    arrows_.push_back({id, tail, head});
    arrow_index_[id] = int(arrows_.size()) - 1;
    return int(arrows_.size()) - 1;
  }
  int add_arrow(const std::string& id, const std::string& tail, const std::string& head) {
    return add_arrow(id, vertex(tail), vertex(head));
  }

  int arrow_index(const std::string& id) const {
    auto it = arrow_index_.find(id);
    require(it != arrow_index_.end(), errc::invalid_input, "unknown arrow: " + id);
    return it->second;
  }
  bool has_arrow(const std::string& id) const { return arrow_index_.count(id) > 0; }

  std::vector<int> arrows_into(int v) const {
    std::vector<int> r;
    for (int a = 0; a < num_arrows(); ++a)
      if (arrows_[a].head == v) r.push_back(a);
    return r;
  }
  std::vector<int> arrows_out_of(int v) const {
    std::vector<int> r;
    for (int a = 0; a < num_arrows(); ++a)
      if (arrows_[a].tail == v) r.push_back(a);
    return r;
  }

  bool has_two_cycle_at(int v) const {
    for (const Arrow& a : arrows_)
      for (const Arrow& b : arrows_)
        if (a.tail == v && b.head == v && a.head == b.tail && b.tail != v) return true;
    return false;
  }

  bool is_two_acyclic() const {
    for (int v = 0; v < num_vertices(); ++v)
      if (has_two_cycle_at(v)) return false;
    return true;
  }

  /// Total order used everywhere a canonical arrow order is needed:
  /// rank in the id-sorted arrow list.
  std::vector<int> arrow_ranks() const {
    std::vector<int> order(num_arrows());
    for (int i = 0; i < num_arrows(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return arrows_[a].id < arrows_[b].id; });
    std::vector<int> rank(num_arrows());
    for (int i = 0; i < num_arrows(); ++i) rank[order[i]] = i;
    return rank;
  }

  std::string dot() const {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto& v : vertices_) os << "  \"" << v << "\";\n";
    for (const Arrow& a : arrows_)
      os << "  \"" << vertices_[a.tail] << "\" -> \"" << vertices_[a.head] << "\" [label=\""
         << a.id << "\"];\n";
    os << "}\n";
    return os.str();
  }

private:
  std::vector<std::string> vertices_;
  std::map<std::string, int> vertex_index_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> arrow_index_;
};

/// Extended exchange matrix: (n+r) x n integers, top n x n block skew-symmetric.
class ExchangeMatrix {
public:
  ExchangeMatrix() = default;
  ExchangeMatrix(int total_rows, int cols)
      : rows_(total_rows), cols_(cols), a_(size_t(total_rows) * cols, 0) {
    require(total_rows >= cols, errc::invalid_input, "exchange matrix needs at least n rows");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  long long& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  long long operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  bool operator==(const ExchangeMatrix&) const = default;

  bool top_block_skew_symmetric() const {
    for (int i = 0; i < cols_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  /// Matrix mutation in direction i (columns and the full set of rows).
  ExchangeMatrix mutated(int dir) const {
    require(dir >= 0 && dir < cols_, errc::invalid_input, "mutation index out of range");
    ExchangeMatrix r(rows_, cols_);
    for (int k = 0; k < rows_; ++k)
      for (int j = 0; j < cols_; ++j) {
        if (k == dir || j == dir) {
          r(k, j) = -(*this)(k, j);
        } else {
          long long bki = (*this)(k, dir), bij = (*this)(dir, j);
          r(k, j) = (*this)(k, j) + (bki * std::abs(bij) + std::abs(bki) * bij) / 2;
        }
      }
    return r;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<long long> a_;
};

/// Quiver mutation: add a composite arrow per hook through the vertex,
/// reverse the incident arrows, then drop a maximal disjoint set of 2-cycles
/// (pairs cancelled in lexicographic (tail, head, id) order).
inline Quiver mutate_quiver(const Quiver& q, int v) {
  require(!q.has_two_cycle_at(v), errc::two_cycle_at_vertex,
          "quiver mutation requires no 2-cycle at " + q.vertex_label(v));
  Quiver r(q.vertex_labels());
  std::vector<Arrow> pending;
  for (const Arrow& a : q.arrows()) {
    if (a.tail == v) {
      pending.push_back({a.id + "*", a.head, v});
    } else if (a.head == v) {
      pending.push_back({a.id + "*", v, a.tail});
    } else {
      pending.push_back(a);
    }
  }
  for (const Arrow& a : q.arrows())
    if (a.tail == v)
      for (const Arrow& b : q.arrows())
        if (b.head == v) pending.push_back({"[" + a.id + "," + b.id + "]", b.tail, a.head});

  std::vector<int> order(pending.size());
  for (size_t i = 0; i < pending.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const Arrow &a = pending[x], &b = pending[y];
    return std::tie(a.tail, a.head, a.id) < std::tie(b.tail, b.head, b.id);
  });
  std::vector<bool> removed(pending.size(), false);
  for (int i : order) {
    if (removed[i]) continue;
    for (int j : order) {
      if (removed[j] || i == j) continue;
      if (pending[i].tail == pending[j].head && pending[i].head == pending[j].tail) {
        removed[i] = removed[j] = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < pending.size(); ++i)
    if (!removed[i]) r.add_arrow(pending[i].id, pending[i].tail, pending[i].head);
  return r;
}

inline ExchangeMatrix matrix_of_quiver(const Quiver& q) {
  int n = q.num_vertices();
  ExchangeMatrix b(n, n);
  for (const Arrow& a : q.arrows()) {
    b(a.head, a.tail) += 1;
    b(a.tail, a.head) -= 1;
  }
  return b;
}

/// Vertex i receives b_ij arrows from j whenever b_ij > 0.
inline Quiver quiver_of_matrix(const ExchangeMatrix& b, std::vector<std::string> labels = {}) {
  int n = b.cols();
  require(b.top_block_skew_symmetric(), errc::invalid_input, "matrix is not skew-symmetric");
  if (labels.empty())
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  require(int(labels.size()) == n, errc::invalid_input, "label count mismatch");
  Quiver q(labels);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (long long m = 0; m < b(i, j); ++m) {
        std::string id = labels[j] + ">" + labels[i];
        if (b(i, j) > 1) id += "#" + std::to_string(m + 1);
        q.add_arrow(id, j, i);
      }
  return q;
}

/// Quivers agree as unlabeled directed graphs (arrow multiplicities match).
inline bool same_arrow_multiplicities(const Quiver& a, const Quiver& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) return false;
  std::map<std::pair<int, int>, int> ca, cb;
  for (const Arrow& x : a.arrows()) ca[{x.tail, x.head}]++;
  for (const Arrow& x : b.arrows()) cb[{x.tail, x.head}]++;
  return ca == cb;
}

} // namespace qpsl
