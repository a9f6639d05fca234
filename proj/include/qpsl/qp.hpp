#pragma once

#include <memory>
#include <set>

#include "qpsl/path_algebra.hpp"

namespace qpsl {

/// Quiver with potential. The quiver is shared so that elements referencing
/// it stay valid across copies; quivers are immutable once inside a QP.
class QP {
public:
  QP() = default;
  QP(std::shared_ptr<const Quiver> quiver, AlgebraElement potential,
     std::map<std::string, Rat> weights = {})
      : quiver_(std::move(quiver)), weights_(std::move(weights)) {
    require(is_potential(potential), errc::invalid_input,
            "potential must be supported on cycles");
    for (const auto& [p, w] : weights_)
      require(w != 0, errc::invalid_input, "puncture weight must be nonzero: " + p);
    potential_ = cyclic_normal_form(potential);
  }

  static QP make(Quiver q, AlgebraElement potential, std::map<std::string, Rat> weights = {}) {
    auto shared = std::make_shared<Quiver>(std::move(q));
    // re-anchor the element on the shared copy
    AlgebraElement pot(shared.get());
    for (const auto& [p, c] : potential.terms()) pot.add_term(p, c);
    return QP(shared, std::move(pot), std::move(weights));
  }

  const Quiver& quiver() const { return *quiver_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return quiver_; }
  const AlgebraElement& potential() const { return potential_; }
  const std::map<std::string, Rat>& weights() const { return weights_; }

  bool is_reduced() const {
    for (const auto& [p, c] : potential_.terms())
      if (p.length() == 2) return false;
    return true;
  }

private:
  std::shared_ptr<const Quiver> quiver_;
  AlgebraElement potential_;
  std::map<std::string, Rat> weights_;
};

/// Rebuild an element over another quiver, matching arrows by id.
inline AlgebraElement remap_element(const AlgebraElement& e, const Quiver& target) {
  AlgebraElement r(&target);
  for (const auto& [p, c] : e.terms()) {
    Path q;
    if (p.empty()) {
      q = Path::idempotent(target.vertex(e.quiver().vertex_label(p.base)));
    } else {
      for (int a : p.arrows) q.arrows.push_back(target.arrow_index(e.quiver().arrow(a).id));
    }
    r.add_term(std::move(q), c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Premutation.

struct PremutationResult {
  QP qp;                                 // (premutated quiver, [S] + sum of hook cycles)
  int vertex = -1;                       // mutated vertex
  std::vector<std::pair<int, int>> hooks; // (arrow out of vertex, arrow into vertex), old indices
};

namespace detail {

/// Rotate a cycle so that it does not begin at the given vertex; among the
/// valid rotations pick the lexicographically least one.
inline Path rotate_cycle_away_from(const Path& p, const Quiver& q, int vertex,
                                   const std::vector<int>& rank) {
  int d = p.length();
  auto base_of = [&](int s) { return q.arrow(p.arrows[s]).head; };
  auto rotation_less = [&](int s, int t) {
    for (int k = 0; k < d; ++k) {
      int a = rank[p.arrows[(s + k) % d]], b = rank[p.arrows[(t + k) % d]];
      if (a != b) return a < b;
    }
    return false;
  };
  int best = -1;
  for (int s = 0; s < d; ++s) {
    if (base_of(s) == vertex) continue;
    if (best < 0 || rotation_less(s, best)) best = s;
  }
  require(best >= 0, errc::rotation_impossible,
          "support cycle passes through the mutated vertex at every junction");
  Path r = p;
  std::rotate(r.arrows.begin(), r.arrows.begin() + best, r.arrows.end());
  return r;
}

} // namespace detail

/// First two steps of QP-mutation: composite arrows for the hooks through
/// the vertex, reversal of incident arrows, and the potential [S] + sum over
/// hooks of reversed-pair-times-composite cycles.
inline PremutationResult premutate(const QP& p, int vertex) {
  const Quiver& q = p.quiver();
  require(vertex >= 0 && vertex < q.num_vertices(), errc::invalid_input, "vertex out of range");
  require(!q.has_two_cycle_at(vertex), errc::two_cycle_at_vertex,
          "premutation requires no 2-cycle at " + q.vertex_label(vertex));

  auto shared = std::make_shared<Quiver>(q.vertex_labels());
  std::map<int, std::string> renamed; // old arrow index -> new id
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (ar.tail == vertex) {
      shared->add_arrow(ar.id + "*", ar.head, vertex);
      renamed[a] = ar.id + "*";
    } else if (ar.head == vertex) {
      shared->add_arrow(ar.id + "*", vertex, ar.tail);
      renamed[a] = ar.id + "*";
    } else {
      shared->add_arrow(ar.id, ar.tail, ar.head);
      renamed[a] = ar.id;
    }
  }
  std::vector<std::pair<int, int>> hooks;
  std::map<std::pair<int, int>, std::string> composite;
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (q.arrow(a).tail != vertex) continue;
    for (int b = 0; b < q.num_arrows(); ++b) {
      if (q.arrow(b).head != vertex) continue;
      std::string id = "[" + q.arrow(a).id + "," + q.arrow(b).id + "]";
      shared->add_arrow(id, q.arrow(b).tail, q.arrow(a).head);
      hooks.push_back({a, b});
      composite[{a, b}] = id;
    }
  }

  std::vector<int> rank = q.arrow_ranks();
  AlgebraElement pot(shared.get());
  for (const auto& [cycle, c] : p.potential().terms()) {
    Path rotated = detail::rotate_cycle_away_from(cycle, q, vertex, rank);
    Path out;
    for (size_t j = 0; j < rotated.arrows.size();) {
      int cur = rotated.arrows[j];
      if (j + 1 < rotated.arrows.size()) {
        int nxt = rotated.arrows[j + 1];
        if (q.arrow(cur).tail == vertex && q.arrow(nxt).head == vertex) {
          out.arrows.push_back(shared->arrow_index(composite.at({cur, nxt})));
          j += 2;
          continue;
        }
      }
      require(q.arrow(cur).tail != vertex && q.arrow(cur).head != vertex, errc::internal,
              "unreplaced arrow through the mutated vertex");
      out.arrows.push_back(shared->arrow_index(renamed.at(cur)));
      ++j;
    }
    pot.add_term(std::move(out), c);
  }
  for (const auto& [a, b] : hooks) {
    Path cyc;
    cyc.arrows.push_back(shared->arrow_index(q.arrow(b).id + "*"));
    cyc.arrows.push_back(shared->arrow_index(q.arrow(a).id + "*"));
    cyc.arrows.push_back(shared->arrow_index(composite.at({a, b})));
    pot.add_term(std::move(cyc), 1);
  }

  return PremutationResult{QP(shared, std::move(pot), p.weights()), vertex, std::move(hooks)};
}

// ---------------------------------------------------------------------------
// Reduction (splitting off the trivial part).

struct SplitResult {
  QP reduced;
  QP trivial;
  Substitution witness;         // on the input quiver; maps S to S_red + S_triv
  Substitution witness_inverse; // inverse of the witness, also on the input quiver
  std::vector<std::pair<int, int>> pairs; // marked (a, b) arrow indices in the input quiver
};

namespace detail {

enum class MarkRole { none, a_role, b_role };

inline int marked_count(const Path& p, const std::vector<MarkRole>& role) {
  int n = 0;
  for (int a : p.arrows)
    if (role[a] != MarkRole::none) ++n;
  return n;
}

/// Rotate so the cycle starts with the given arrow (first occurrence).
inline Path rotate_to_front(const Path& p, int arrow) {
  auto it = std::find(p.arrows.begin(), p.arrows.end(), arrow);
  Path r = p;
  std::rotate(r.arrows.begin(), r.arrows.begin() + (it - p.arrows.begin()), r.arrows.end());
  return r;
}

inline Quiver subquiver_excluding(const Quiver& q, const std::set<int>& removed) {
  Quiver r(q.vertex_labels());
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!removed.count(a)) r.add_arrow(q.arrow(a).id, q.arrow(a).tail, q.arrow(a).head);
  return r;
}

inline Quiver subquiver_of(const Quiver& q, const std::set<int>& kept) {
  Quiver r(q.vertex_labels());
  for (int a = 0; a < q.num_arrows(); ++a)
    if (kept.count(a)) r.add_arrow(q.arrow(a).id, q.arrow(a).tail, q.arrow(a).head);
  return r;
}

} // namespace detail

/// Constructive reduction: iterate the substitution that absorbs the terms
/// hanging off each trivial 2-cycle until the potential splits as
/// S_red + sum of 2-cycles. The composed substitution is returned as an
/// explicit witness together with its inverse.
inline SplitResult split(const QP& p) {
  using detail::MarkRole;
  const Quiver& q = p.quiver();
  AlgebraElement s = p.potential(); // already cyclically normalized

  // Collect the 2-cycle pairs.
  std::vector<std::pair<int, int>> pairs;
  std::vector<Rat> pair_coef;
  std::vector<MarkRole> role(q.num_arrows(), MarkRole::none);
  std::vector<int> pair_of(q.num_arrows(), -1);
  for (const auto& [cyc, c] : s.terms()) {
    if (cyc.length() != 2) continue;
    int u = cyc.arrows[0], v = cyc.arrows[1];
    require(role[u] == MarkRole::none && role[v] == MarkRole::none, errc::non_trivial_degree2,
            "degree-2 terms are not pairable into distinct-arrow 2-cycles");
    role[u] = MarkRole::a_role;
    role[v] = MarkRole::b_role;
    pair_of[u] = pair_of[v] = int(pairs.size());
    pairs.push_back({u, v});
    pair_coef.push_back(c);
  }

  // A cycle carrying two or more marked arrows forces all of them into the
  // a-role (the b-partners must stay clear of further terms). Conflicting
  // forces inside one pair mean the normal form fails.
  if (!pairs.empty()) {
    std::set<int> forced_a;
    for (const auto& [cyc, c] : s.terms()) {
      if (cyc.length() == 2) continue;
      if (detail::marked_count(cyc, role) < 2) continue;
      for (int a : cyc.arrows)
        if (role[a] != MarkRole::none) forced_a.insert(a);
    }
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [u, v] = pairs[k];
      require(!(forced_a.count(u) && forced_a.count(v)), errc::normal_form_violation,
              "potential does not match the reduction normal form");
      if (forced_a.count(v)) pairs[k] = {v, u};
      role[pairs[k].first] = MarkRole::a_role;
      role[pairs[k].second] = MarkRole::b_role;
    }
  }

  std::vector<Substitution> rounds;
  int prev_metric = -1;
  for (int iter = 0;; ++iter) {
    require(iter < 200, errc::internal, "reduction did not terminate");

    // Attribute terms: u_k (after a_k), v_k (before b_k), untouched rest.
    std::vector<AlgebraElement> u(pairs.size(), AlgebraElement(&q));
    std::vector<AlgebraElement> v(pairs.size(), AlgebraElement(&q));
    bool any = false;
    int metric = 0;
    for (const auto& [cyc, c] : s.terms()) {
      if (cyc.length() == 2 && role[cyc.arrows[0]] != MarkRole::none) continue;
      int marked = detail::marked_count(cyc, role);
      if (marked == 0) continue;
      any = true;
      int first_marked = -1;
      for (int a : cyc.arrows)
        if (role[a] != MarkRole::none) { first_marked = a; break; }
      if (role[first_marked] == MarkRole::b_role) {
        require(marked == 1, errc::normal_form_violation,
                "potential does not match the reduction normal form");
        Path rot = detail::rotate_to_front(cyc, first_marked);
        // cycle = b_k . prefix ; store v_k with the cycle written prefix . b_k
        Path prefix;
        prefix.arrows.assign(rot.arrows.begin() + 1, rot.arrows.end());
        v[pair_of[first_marked]].add_term(prefix, c);
      } else {
        Path rot = detail::rotate_to_front(cyc, first_marked);
        Path rest;
        rest.arrows.assign(rot.arrows.begin() + 1, rot.arrows.end());
        int deg_a = 0;
        for (int a : rest.arrows)
          if (role[a] == MarkRole::a_role) ++deg_a;
        metric = std::max(metric, deg_a);
        u[pair_of[first_marked]].add_term(rest, c);
      }
    }
    if (!any) break;
    require(prev_metric < 0 || metric < prev_metric, errc::internal,
            "reduction metric failed to decrease");
    prev_metric = metric;

    Substitution phi(&q, &q);
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [ak, bk] = pairs[k];
      Rat inv = Rat(1) / pair_coef[k];
      if (!v[k].is_zero())
        phi.set_image(q.arrow(ak).id, AlgebraElement::arrow(q, ak) - v[k] * inv);
      if (!u[k].is_zero())
        phi.set_image(q.arrow(bk).id, AlgebraElement::arrow(q, bk) - u[k] * inv);
    }
    s = cyclic_normal_form(substitute(phi, s));
    rounds.push_back(std::move(phi));
  }

  // Assemble outputs.
  std::set<int> marked;
  for (auto [a, b] : pairs) {
    marked.insert(a);
    marked.insert(b);
  }
  auto reduced_quiver = std::make_shared<Quiver>(detail::subquiver_excluding(q, marked));
  auto trivial_quiver = std::make_shared<Quiver>(detail::subquiver_of(q, marked));
  AlgebraElement s_red(reduced_quiver.get()), s_triv(trivial_quiver.get());
  for (const auto& [cyc, c] : s.terms()) {
    bool is_pair = cyc.length() == 2 && role[cyc.arrows[0]] != MarkRole::none;
    require(is_pair || cyc.length() != 2, errc::normal_form_violation,
            "reduction left a 2-cycle outside the trivial pairs");
    Path out;
    const Quiver& target = is_pair ? *trivial_quiver : *reduced_quiver;
    for (int a : cyc.arrows) out.arrows.push_back(target.arrow_index(q.arrow(a).id));
    if (is_pair)
      s_triv.add_term(std::move(out), c);
    else
      s_red.add_term(std::move(out), c);
  }

  // Compose the rounds into one witness and build its inverse.
  Substitution witness(&q, &q);
  for (const auto& phi : rounds) witness = compose(phi, witness);
  Substitution inverse(&q, &q);
  for (auto it = rounds.rbegin(); it != rounds.rend(); ++it) {
    const Substitution& phi = *it;
    Substitution phi_inv(&q, &q);
    for (const auto& [id, img] : phi.explicit_images()) {
      int arrow = q.arrow_index(id);
      AlgebraElement correction = img - AlgebraElement::arrow(q, arrow); // = -x^{-1} u or -x^{-1} v
      // acc = sum_{l >= 0} (-1)^l w_l with w_0 = -correction, w_{l+1} = phi(w_l) - w_l
      AlgebraElement w = correction * Rat(-1);
      AlgebraElement acc(&q);
      int sign = 1, guard = 0;
      while (!w.is_zero()) {
        require(++guard < 200, errc::internal, "witness inversion did not terminate");
        acc += w * Rat(sign);
        w = substitute(phi, w) - w;
        sign = -sign;
      }
      phi_inv.set_image(id, AlgebraElement::arrow(q, arrow) + acc);
    }
    inverse = compose(phi_inv, inverse);
  }

  // The inverse really is an inverse on arrows.
  for (int a = 0; a < q.num_arrows(); ++a) {
    AlgebraElement back = substitute(inverse, witness.image(a));
    require(back == AlgebraElement::arrow(q, a), errc::internal,
            "split witness inverse failed on arrow " + q.arrow(a).id);
  }

  return SplitResult{QP(reduced_quiver, std::move(s_red), p.weights()),
                     QP(trivial_quiver, std::move(s_triv), p.weights()), std::move(witness),
                     std::move(inverse), std::move(pairs)};
}

// ---------------------------------------------------------------------------
// QP-mutation = premutation followed by reduction.

struct QPMutation {
  PremutationResult premut;
  SplitResult splitting;
  const QP& result() const { return splitting.reduced; }
};

inline QPMutation mutate_qp(const QP& p, int vertex) {
  PremutationResult pre = premutate(p, vertex);
  SplitResult sp = split(pre.qp);
  return QPMutation{std::move(pre), std::move(sp)};
}

/// phi is a right-equivalence from P to P': an R-algebra isomorphism with
/// phi(S) cyclically equivalent to S'.
inline bool verify_right_equivalence(const Substitution& phi, const QP& p, const QP& p_prime) {
  if (!is_algebra_iso(phi)) return false;
  AlgebraElement lhs = cyclic_normal_form(substitute(phi, p.potential()));
  AlgebraElement rhs = remap_element(p_prime.potential(), phi.to());
  return lhs == cyclic_normal_form(rhs);
}

} // namespace qpsl
