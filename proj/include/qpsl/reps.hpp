#pragma once

#include <functional>
#include <random>

#include "qpsl/laurent.hpp"
#include "qpsl/matrix.hpp"
#include "qpsl/qp.hpp"

namespace qpsl {

using FPolynomial = LaurentPoly;            // polynomial in vertex-indexed variables
using GVector = std::vector<long long>;

/// Decorated representation: one exact matrix per arrow plus a decoration
/// dimension per vertex.
class DecoratedRep {
public:
  DecoratedRep() = default;
  DecoratedRep(QP qp, std::vector<int> dims, std::map<int, Mat> action, std::vector<int> dec)
      : qp_(std::move(qp)), dims_(std::move(dims)), action_(std::move(action)),
        dec_(std::move(dec)) {
    const Quiver& q = qp_.quiver();
    require(int(dims_.size()) == q.num_vertices() && int(dec_.size()) == q.num_vertices(),
            errc::invalid_input, "dimension vectors must match the vertex count");
    for (int a = 0; a < q.num_arrows(); ++a) {
      auto it = action_.find(a);
      if (it == action_.end()) {
        action_[a] = Mat(dims_[q.arrow(a).head], dims_[q.arrow(a).tail]);
      } else {
        require(it->second.rows() == dims_[q.arrow(a).head] &&
                    it->second.cols() == dims_[q.arrow(a).tail],
                errc::invalid_input, "arrow matrix has wrong shape: " + q.arrow(a).id);
      }
    }
  }

  static DecoratedRep negative_simple(const QP& qp, int vertex) {
    std::vector<int> dims(qp.quiver().num_vertices(), 0);
    std::vector<int> dec(qp.quiver().num_vertices(), 0);
    dec[vertex] = 1;
    return DecoratedRep(qp, dims, {}, dec);
  }

  static DecoratedRep zero(const QP& qp) {
    std::vector<int> none(qp.quiver().num_vertices(), 0);
    return DecoratedRep(qp, none, {}, none);
  }

  const QP& qp() const { return qp_; }
  const Quiver& quiver() const { return qp_.quiver(); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<int>& decoration() const { return dec_; }
  const Mat& action(int arrow) const { return action_.at(arrow); }

  int total_dim() const {
    int d = 0;
    for (int x : dims_) d += x;
    return d;
  }
  bool positive_part_zero() const { return total_dim() == 0; }

  /// Action of a path (paths act like function composition).
  Mat path_action(const Path& p) const {
    if (p.empty()) return Mat::identity(dims_[p.base]);
    Mat m = action_.at(p.arrows.back());
    for (int k = int(p.arrows.size()) - 2; k >= 0; --k) m = action_.at(p.arrows[k]) * m;
    return m;
  }

  /// Action of a parallel-path element.
  Mat element_action(const AlgebraElement& e, int from_vertex, int to_vertex) const {
    Mat m(dims_[to_vertex], dims_[from_vertex]);
    const Quiver& q = quiver();
    for (const auto& [p, c] : e.terms()) {
      require(p.tail(q) == from_vertex && p.head(q) == to_vertex, errc::invalid_input,
              "element action needs parallel paths");
      Mat pm = path_action(p);
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) += c * pm(i, j);
    }
    return m;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    const Quiver& q = quiver();
    for (int a = 0; a < q.num_arrows(); ++a) {
      AlgebraElement d = cyclic_derivative(qp_.potential(), a);
      if (d.is_zero()) continue;
      Mat m = element_action(d, q.arrow(a).head, q.arrow(a).tail);
      if (!m.is_zero()) out.push_back("relation for arrow " + q.arrow(a).id + " does not act as zero");
    }
    // nilpotency via the total endomorphism on the direct sum
    int total = total_dim();
    std::vector<int> offset(q.num_vertices() + 1, 0);
    for (int v = 0; v < q.num_vertices(); ++v) offset[v + 1] = offset[v] + dims_[v];
    Mat big(total, total);
    for (int a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrow(a);
      const Mat& m = action_.at(a);
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) big(offset[ar.head] + i, offset[ar.tail] + j) += m(i, j);
    }
    Mat p = Mat::identity(total);
    for (int k = 0; k < total; ++k) p = p * big;
    if (!p.is_zero()) out.push_back("arrow actions are not nilpotent");
    return out;
  }

private:
  QP qp_;
  std::vector<int> dims_;
  std::map<int, Mat> action_;
  std::vector<int> dec_;
};

inline std::vector<std::string> validate_rep(const DecoratedRep& m) { return m.validate(); }

// ---------------------------------------------------------------------------
// The triple (alpha, beta, gamma) at a vertex.

namespace detail {

/// Split "[out,in]" at its top-level comma (ids may nest brackets).
inline std::pair<std::string, std::string> split_composite_id(const std::string& id) {
  require(id.size() > 2 && id.front() == '[' && id.back() == ']', errc::internal,
          "not a composite arrow id: " + id);
  int depth = 0;
  for (size_t k = 1; k + 1 < id.size(); ++k) {
    if (id[k] == '[') ++depth;
    if (id[k] == ']') --depth;
    if (id[k] == ',' && depth == 0)
      return {id.substr(1, k - 1), id.substr(k + 1, id.size() - k - 2)};
  }
  fail(errc::internal, "malformed composite arrow id: " + id);
}

struct VertexTriple {
  std::vector<int> in_arrows;  // arrows ending at the vertex
  std::vector<int> out_arrows; // arrows starting at the vertex
  std::vector<int> in_offsets, out_offsets;
  int in_dim = 0, out_dim = 0;
  Mat alpha; // M_in -> M_i
  Mat beta;  // M_i -> M_out
  Mat gamma; // M_out -> M_in
};

/// Build alpha, beta and the hook-derivative map gamma for a representation
/// at a vertex (the quiver must have no 2-cycle there).
inline VertexTriple vertex_triple(const DecoratedRep& m, int vertex,
                                  const PremutationResult& pre) {
  const Quiver& q = m.quiver();
  const Quiver& mq = pre.qp.quiver();
  VertexTriple t;
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (q.arrow(a).head == vertex) t.in_arrows.push_back(a);
    if (q.arrow(a).tail == vertex) t.out_arrows.push_back(a);
  }
  t.in_offsets.assign(t.in_arrows.size() + 1, 0);
  for (size_t k = 0; k < t.in_arrows.size(); ++k)
    t.in_offsets[k + 1] = t.in_offsets[k] + m.dims()[q.arrow(t.in_arrows[k]).tail];
  t.in_dim = t.in_offsets.back();
  t.out_offsets.assign(t.out_arrows.size() + 1, 0);
  for (size_t l = 0; l < t.out_arrows.size(); ++l)
    t.out_offsets[l + 1] = t.out_offsets[l] + m.dims()[q.arrow(t.out_arrows[l]).head];
  t.out_dim = t.out_offsets.back();

  int di = m.dims()[vertex];
  t.alpha = Mat(di, t.in_dim);
  for (size_t k = 0; k < t.in_arrows.size(); ++k) {
    const Mat& blk = m.action(t.in_arrows[k]);
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) t.alpha(i, t.in_offsets[k] + j) = blk(i, j);
  }
  t.beta = Mat(t.out_dim, di);
  for (size_t l = 0; l < t.out_arrows.size(); ++l) {
    const Mat& blk = m.action(t.out_arrows[l]);
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) t.beta(t.out_offsets[l] + i, j) = blk(i, j);
  }

  // gamma_{k,l} = action of the derivative of the hook-replaced potential by
  // the composite arrow, evaluated back on M by expanding composites. The
  // hook-replaced part is exactly the set of cycles avoiding the vertex.
  AlgebraElement bracket_s(&mq);
  for (const auto& [cyc, c] : pre.qp.potential().terms()) {
    bool through_vertex = false;
    for (int a : cyc.arrows)
      if (mq.arrow(a).tail == vertex || mq.arrow(a).head == vertex) through_vertex = true;
    if (!through_vertex) bracket_s.add_term(cyc, c);
  }
  auto action_on_m = [&](const AlgebraElement& e, int from, int to) {
    Mat out(m.dims()[to], m.dims()[from]);
    for (const auto& [p, c] : e.terms()) {
      Mat cur = Mat::identity(m.dims()[from]);
      for (int k = int(p.arrows.size()) - 1; k >= 0; --k) {
        const std::string& id = mq.arrow(p.arrows[k]).id;
        if (q.has_arrow(id)) {
          cur = m.action(q.arrow_index(id)) * cur;
        } else {
          auto [out_id, in_id] = split_composite_id(id);
          cur = m.action(q.arrow_index(out_id)) * (m.action(q.arrow_index(in_id)) * cur);
        }
      }
      for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) += c * cur(i, j);
    }
    return out;
  };

  t.gamma = Mat(t.in_dim, t.out_dim);
  for (size_t k = 0; k < t.in_arrows.size(); ++k)
    for (size_t l = 0; l < t.out_arrows.size(); ++l) {
      const Arrow& ak = q.arrow(t.in_arrows[k]);
      const Arrow& bl = q.arrow(t.out_arrows[l]);
      std::string comp = "[" + bl.id + "," + ak.id + "]";
      AlgebraElement d = cyclic_derivative(bracket_s, mq.arrow_index(comp));
      Mat blk = action_on_m(d, bl.head, ak.tail);
      for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j)
          t.gamma(t.in_offsets[k] + i, t.out_offsets[l] + j) = blk(i, j);
    }
  return t;
}

/// Pick representatives extending a subspace to a larger one: returns the
/// columns of `space` completing `sub` to a basis of the column span.
inline Mat quotient_representatives(const Mat& sub, const Mat& space) {
  Mat cur = sub;
  Mat reps(space.rows(), 0);
  int rank = cur.rank();
  for (int j = 0; j < space.cols(); ++j) {
    Mat col(space.rows(), 1);
    for (int i = 0; i < space.rows(); ++i) col(i, 0) = space(i, j);
    Mat ext = Mat::hcat(cur, col);
    if (ext.rank() > rank) {
      cur = ext;
      reps = Mat::hcat(reps, col);
      ++rank;
    }
  }
  return reps;
}

/// Coordinates of v in the column basis [sub | reps]; returns the rep part.
inline Mat quotient_project(const Mat& sub, const Mat& reps, const Mat& vectors) {
  Mat basis = Mat::hcat(sub, reps);
  Mat out(reps.cols(), vectors.cols());
  for (int j = 0; j < vectors.cols(); ++j) {
    Mat col(vectors.rows(), 1);
    for (int i = 0; i < vectors.rows(); ++i) col(i, 0) = vectors(i, j);
    auto sol = basis.solve(col);
    require(sol.has_value(), errc::internal, "vector outside the quotient presentation");
    for (int i = 0; i < reps.cols(); ++i) out(i, j) = (*sol)(sub.cols() + i, 0);
  }
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Representation mutation.

/// Mutation of a decorated representation: build the premutated spaces from
/// kernels and images of (alpha, beta, gamma) with echelon-pivot splittings,
/// then transport the action along the inverse of the reduction witness.
inline DecoratedRep mutate_rep(const DecoratedRep& m, int vertex) {
  const Quiver& q = m.quiver();
  QPMutation mu = mutate_qp(m.qp(), vertex);
  const PremutationResult& pre = mu.premut;
  const Quiver& mq = pre.qp.quiver();

  detail::VertexTriple t = detail::vertex_triple(m, vertex, pre);
  require((t.alpha * t.gamma).is_zero(), errc::internal, "alpha gamma != 0");
  require((t.gamma * t.beta).is_zero(), errc::internal, "gamma beta != 0");

  Mat ker_gamma = t.gamma.kernel();        // subspace of M_out
  Mat im_beta = t.beta.column_space();     // inside ker gamma
  Mat im_gamma = t.gamma.column_space();   // subspace of M_in
  Mat ker_alpha = t.alpha.kernel();        // contains im gamma

  Mat q1_reps = detail::quotient_representatives(im_beta, ker_gamma); // ker g / im b
  Mat q3_reps = detail::quotient_representatives(im_gamma, ker_alpha); // ker a / im g
  int d1 = q1_reps.cols(), d2 = im_gamma.cols(), d3 = q3_reps.cols(), d4 = m.decoration()[vertex];
  int new_dim_i = d1 + d2 + d3 + d4;

  // retraction rho: M_out -> ker gamma coordinates
  Mat ext = detail::quotient_representatives(ker_gamma, Mat::identity(t.out_dim));
  Mat basis_out = Mat::hcat(ker_gamma, ext);
  auto rho_coords = [&](const Mat& vectors) { // ker-gamma coordinates of columns
    Mat out(ker_gamma.cols(), vectors.cols());
    for (int j = 0; j < vectors.cols(); ++j) {
      Mat col(vectors.rows(), 1);
      for (int i = 0; i < vectors.rows(); ++i) col(i, 0) = vectors(i, j);
      auto sol = basis_out.solve(col);
      require(sol.has_value(), errc::internal, "missing retraction solve");
      for (int i = 0; i < ker_gamma.cols(); ++i) out(i, j) = (*sol)(i, 0);
    }
    return out;
  };

  // new dimensions and decorations
  std::vector<int> dims = m.dims();
  std::vector<int> dec = m.decoration();
  dims[vertex] = new_dim_i;
  // V-bar: ker beta / (ker beta cap im alpha)
  Mat ker_beta = t.beta.kernel();
  Mat im_alpha = t.alpha.column_space();
  int sum_rank = Mat::hcat(ker_beta, im_alpha).rank();
  int cap = ker_beta.cols() + im_alpha.cols() - sum_rank;
  dec[vertex] = ker_beta.cols() - cap;

  // actions over the premutated quiver
  std::map<int, Mat> action;
  for (int a = 0; a < mq.num_arrows(); ++a) {
    const std::string& id = mq.arrow(a).id;
    if (q.has_arrow(id)) { // untouched arrow
      action[a] = m.action(q.arrow_index(id));
      continue;
    }
    if (id.back() == '*' && q.has_arrow(id.substr(0, id.size() - 1))) {
      action[a] = Mat(); // fresh star; filled from alpha-bar / beta-bar below
      continue;
    }
    // composite acts as the original hook
    auto [out_id, in_id] = detail::split_composite_id(id);
    action[a] = m.action(q.arrow_index(out_id)) * m.action(q.arrow_index(in_id));
  }

  // alpha-bar components give the actions of the starred out-arrows,
  // beta-bar components the starred in-arrows
  Mat rho_on_out = rho_coords(Mat::identity(t.out_dim));
  Mat pi_rho = detail::quotient_project(im_beta, q1_reps, ker_gamma * rho_on_out);
  // gamma in im-gamma coordinates
  Mat gamma_coords(im_gamma.cols(), t.out_dim);
  for (int j = 0; j < t.out_dim; ++j) {
    Mat col(t.in_dim, 1);
    for (int i = 0; i < t.in_dim; ++i) col(i, 0) = t.gamma(i, j);
    auto sol = im_gamma.solve(col);
    require(sol.has_value(), errc::internal, "gamma outside its image basis");
    for (int i = 0; i < im_gamma.cols(); ++i) gamma_coords(i, j) = (*sol)(i, 0);
  }
  Mat alpha_bar(new_dim_i, t.out_dim);
  for (int j = 0; j < t.out_dim; ++j) {
    for (int i = 0; i < d1; ++i) alpha_bar(i, j) = -pi_rho(i, j);
    for (int i = 0; i < d2; ++i) alpha_bar(d1 + i, j) = -gamma_coords(i, j);
  }
  Mat beta_bar(t.in_dim, new_dim_i);
  for (int j = 0; j < d2; ++j)
    for (int i = 0; i < t.in_dim; ++i) beta_bar(i, d1 + j) = im_gamma(i, j);
  for (int j = 0; j < d3; ++j)
    for (int i = 0; i < t.in_dim; ++i) beta_bar(i, d1 + d2 + j) = q3_reps(i, j);

  for (size_t l = 0; l < t.out_arrows.size(); ++l) {
    const Arrow& bl = q.arrow(t.out_arrows[l]);
    int idx = mq.arrow_index(bl.id + "*");
    Mat blk(new_dim_i, m.dims()[bl.head]);
    for (int i = 0; i < new_dim_i; ++i)
      for (int j = 0; j < blk.cols(); ++j) blk(i, j) = alpha_bar(i, t.out_offsets[l] + j);
    action[idx] = blk;
  }
  for (size_t k = 0; k < t.in_arrows.size(); ++k) {
    const Arrow& ak = q.arrow(t.in_arrows[k]);
    int idx = mq.arrow_index(ak.id + "*");
    Mat blk(m.dims()[ak.tail], new_dim_i);
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < new_dim_i; ++j) blk(i, j) = beta_bar(t.in_offsets[k] + i, j);
    action[idx] = blk;
  }

  DecoratedRep premutated(pre.qp, dims, std::move(action), dec);

  // reduction: transport the action along the inverse witness
  const QP& red = mu.result();
  const Quiver& rq = red.quiver();
  std::map<int, Mat> red_action;
  for (int a = 0; a < rq.num_arrows(); ++a) {
    const Arrow& ar = rq.arrow(a);
    AlgebraElement img = mu.splitting.witness_inverse.image(mq.arrow_index(ar.id));
    red_action[a] = premutated.element_action(img, ar.tail, ar.head);
  }
  return DecoratedRep(red, premutated.dims(), std::move(red_action), premutated.decoration());
}

// ---------------------------------------------------------------------------
// Invariants of decorated representations.

inline GVector g_vector(const DecoratedRep& m) {
  const Quiver& q = m.quiver();
  GVector g(q.num_vertices(), 0);
  for (int v = 0; v < q.num_vertices(); ++v) {
    PremutationResult pre = premutate(m.qp(), v);
    detail::VertexTriple t = detail::vertex_triple(m, v, pre);
    int ker = t.out_dim - t.gamma.rank();
    g[v] = ker - m.dims()[v] + m.decoration()[v];
  }
  return g;
}

/// Dimension of the intertwiner space between two representations of the
/// same QP (relations act as zero, so plain quiver morphisms suffice).
inline int hom_dim(const DecoratedRep& m, const DecoratedRep& n) {
  const Quiver& q = m.quiver();
  require(q.num_vertices() == n.quiver().num_vertices() &&
              q.num_arrows() == n.quiver().num_arrows(),
          errc::invalid_input, "representations over different quivers");
  // unknowns: phi_v entries
  std::vector<int> offset(q.num_vertices() + 1, 0);
  for (int v = 0; v < q.num_vertices(); ++v)
    offset[v + 1] = offset[v] + m.dims()[v] * n.dims()[v];
  int unknowns = offset.back();
  std::vector<std::vector<Rat>> rows;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    const Mat& am = m.action(a);
    const Mat& an = n.action(a);
    int dt_m = m.dims()[ar.tail], dh_m = m.dims()[ar.head];
    int dt_n = n.dims()[ar.tail], dh_n = n.dims()[ar.head];
    // phi_head * a_m - a_n * phi_tail = 0, entry (i, j): i < dh_n, j < dt_m
    for (int i = 0; i < dh_n; ++i)
      for (int j = 0; j < dt_m; ++j) {
        std::vector<Rat> row(unknowns, Rat(0));
        for (int k = 0; k < dh_m; ++k)
          row[offset[ar.head] + i * dh_m + k] += am(k, j);
        for (int k = 0; k < dt_n; ++k)
          row[offset[ar.tail] + k * dt_m + j] -= an(i, k);
        rows.push_back(std::move(row));
      }
  }
  Mat sys(int(rows.size()), unknowns);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < unknowns; ++j) sys(int(i), j) = rows[i][j];
  return unknowns - sys.rank();
}

inline long long e_inj(const DecoratedRep& m, const DecoratedRep& n) {
  GVector g = g_vector(n);
  long long dot = 0;
  for (size_t i = 0; i < g.size(); ++i) dot += (long long)m.dims()[i] * g[i];
  return hom_dim(m, n) + dot;
}

inline long long e_invariant(const DecoratedRep& m) { return e_inj(m, m); }

/// F-polynomial of a thin representation: every subrepresentation is a
/// coordinate subset, so the Grassmannians are finite sets counted directly.
inline FPolynomial f_polynomial_thin(const DecoratedRep& m) {
  const Quiver& q = m.quiver();
  int n = q.num_vertices();
  for (int v = 0; v < n; ++v)
    require(m.dims()[v] <= 1, errc::not_thin,
            "vertex " + q.vertex_label(v) + " has dimension > 1");
  std::vector<int> supp;
  for (int v = 0; v < n; ++v)
    if (m.dims()[v] == 1) supp.push_back(v);
  FPolynomial f(n);
  for (unsigned mask = 0; mask < (1u << supp.size()); ++mask) {
    std::vector<bool> in(n, false);
    for (size_t k = 0; k < supp.size(); ++k)
      if (mask & (1u << k)) in[supp[k]] = true;
    bool closed = true;
    for (int a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrow(a);
      if (m.dims()[ar.tail] == 1 && m.dims()[ar.head] == 1 && !m.action(a).is_zero())
        if (in[ar.tail] && !in[ar.head]) closed = false;
    }
    if (!closed) continue;
    LaurentPoly::Exp e(n, 0);
    for (int v = 0; v < n; ++v) e[v] = in[v] ? 1 : 0;
    f.add_term(std::move(e), 1);
  }
  return f;
}

/// Enumerate subrepresentation dimension vectors of a thin representation.
inline std::vector<std::vector<int>> thin_subrep_dimensions(const DecoratedRep& m) {
  FPolynomial f = f_polynomial_thin(m);
  std::vector<std::vector<int>> out;
  for (const auto& [e, c] : f.terms()) out.push_back(e);
  return out;
}

/// Isomorphism test: the quivers are matched vertex-label-wise with arrows
/// paired by endpoints (ids may differ after mutations), then an invertible
/// intertwiner is sought by sampling the solution space.
inline bool isomorphic_reps(const DecoratedRep& m, const DecoratedRep& n) {
  const Quiver& qm = m.quiver();
  const Quiver& qn = n.quiver();
  if (m.dims() != n.dims() || m.decoration() != n.decoration()) return false;
  if (qm.num_vertices() != qn.num_vertices() || qm.num_arrows() != qn.num_arrows()) return false;
  for (int v = 0; v < qm.num_vertices(); ++v)
    if (qn.vertex_label(v) != qm.vertex_label(v)) return false;
  int total = m.total_dim();
  if (total == 0) return true;

  std::map<std::pair<int, int>, std::pair<std::vector<int>, std::vector<int>>> groups;
  for (int a = 0; a < qm.num_arrows(); ++a)
    groups[{qm.arrow(a).tail, qm.arrow(a).head}].first.push_back(a);
  for (int a = 0; a < qn.num_arrows(); ++a)
    groups[{qn.arrow(a).tail, qn.arrow(a).head}].second.push_back(a);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> group_list;
  long long combos = 1;
  for (auto& [key, g] : groups) {
    if (g.first.size() != g.second.size()) return false;
    for (size_t k = 2; k <= g.first.size(); ++k) combos *= static_cast<long long>(k);
    if (combos > 1000) return false;
    group_list.push_back(g);
  }

  std::vector<int> match(qm.num_arrows(), -1);
  std::function<bool(size_t)> attempt = [&](size_t gi) -> bool {
    if (gi == group_list.size()) {
      std::vector<int> offset(qm.num_vertices() + 1, 0);
      for (int v = 0; v < qm.num_vertices(); ++v)
        offset[v + 1] = offset[v] + m.dims()[v] * n.dims()[v];
      int unknowns = offset.back();
      std::vector<std::vector<Rat>> rows;
      for (int a = 0; a < qm.num_arrows(); ++a) {
        const Arrow& ar = qm.arrow(a);
        const Mat& am = m.action(a);
        const Mat& an = n.action(match[a]);
        int dt_m = m.dims()[ar.tail], dh_m = m.dims()[ar.head];
        int dh_n = n.dims()[ar.head], dt_n = n.dims()[ar.tail];
        for (int i = 0; i < dh_n; ++i)
          for (int j = 0; j < dt_m; ++j) {
            std::vector<Rat> row(unknowns, Rat(0));
            for (int k = 0; k < dh_m; ++k) row[offset[ar.head] + i * dh_m + k] += am(k, j);
            for (int k = 0; k < dt_n; ++k) row[offset[ar.tail] + k * dt_m + j] -= an(i, k);
            rows.push_back(std::move(row));
          }
      }
      Mat sys(int(rows.size()), unknowns);
      for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < unknowns; ++j) sys(int(i), j) = rows[i][j];
      Mat ker = sys.kernel();
      if (ker.cols() == 0) return false;
      std::mt19937 rng(12345);
      std::uniform_int_distribution<int> coef(-5, 5);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> combo(unknowns, Rat(0));
        for (int j = 0; j < ker.cols(); ++j) {
          int c = coef(rng);
          for (int i = 0; i < unknowns; ++i) combo[i] += ker(i, j) * c;
        }
        bool all_invertible = true;
        for (int v = 0; v < qm.num_vertices() && all_invertible; ++v) {
          int d = m.dims()[v];
          if (d == 0) continue;
          Mat phi(d, d);
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) phi(i, j) = combo[offset[v] + i * d + j];
          if (!phi.inverse()) all_invertible = false;
        }
        if (all_invertible) return true;
      }
      return false;
    }
    auto& [fa, ta] = group_list[gi];
    std::vector<int> perm(ta);
    std::sort(perm.begin(), perm.end());
    do {
      for (size_t k = 0; k < fa.size(); ++k) match[fa[k]] = perm[k];
      if (attempt(gi + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return attempt(0);
}

} // namespace qpsl
