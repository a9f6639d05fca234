#pragma once

#include "qpsl/jacobian.hpp"
#include "qpsl/qp.hpp"
#include "qpsl/surface.hpp"

namespace qpsl {

using PunctureWeights = std::map<std::string, Rat>;

inline PunctureWeights unit_weights(const IdealTriangulation& t) {
  PunctureWeights w;
  for (const auto& p : t.puncture_labels()) w[p] = 1;
  return w;
}

namespace detail {

/// One quiver arrow per corner of a non-self-folded triangle where two arc
/// sides meet, doubled through the radius when a side is the loop of a
/// self-folded triangle. Arrow ids: t<triangle>c<corner> with suffix "h"
/// (head through the radius) and/or "t" (tail through the radius).
struct CornerArrows {
  std::shared_ptr<Quiver> quiver;
  // arrow index by (triangle, corner, head_radius, tail_radius)
  std::map<std::tuple<int, int, bool, bool>, int> at;
};

inline CornerArrows corner_arrows(const IdealTriangulation& t) {
  require(t.valid(), errc::invalid_input, "triangulation must validate cleanly");
  std::vector<std::string> vertices = t.arc_labels();
  std::sort(vertices.begin(), vertices.end());
  CornerArrows out;
  out.quiver = std::make_shared<Quiver>(vertices);
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    if (t.triangles()[tri].self_folded) continue;
    for (int corner = 0; corner < 3; ++corner) {
      int in = t.triangles()[tri].sides[corner];
      int outside = t.triangles()[tri].sides[(corner + 1) % 3];
      if (!t.side_is_arc(in) || !t.side_is_arc(outside)) continue;
      std::vector<std::pair<int, bool>> heads{{in, false}}, tails{{outside, false}};
      if (t.is_sf_loop(in)) heads.push_back({t.folded_of_loop(in), true});
      if (t.is_sf_loop(outside)) tails.push_back({t.folded_of_loop(outside), true});
      for (auto [h, hr] : heads)
        for (auto [tl, tr] : tails) {
          std::string id = "t" + std::to_string(tri) + "c" + std::to_string(corner);
          if (hr) id += "h";
          if (tr) id += "t";
          int idx = out.quiver->add_arrow(id, t.side_label(tl), t.side_label(h));
          out.at[{tri, corner, hr, tr}] = idx;
        }
    }
  }
  return out;
}

} // namespace detail

struct SurfaceQuivers {
  Quiver reduced;     // signed adjacency quiver (2-cycles deleted)
  Quiver unreduced;   // all corner arrows
  ExchangeMatrix b;   // rows/columns ordered by sorted arc labels
  std::vector<std::string> vertex_order;
};

/// Signed adjacency data of an ideal triangulation.
inline SurfaceQuivers build_quivers(const IdealTriangulation& t) {
  detail::CornerArrows ca = detail::corner_arrows(t);
  const Quiver& hat = *ca.quiver;
  ExchangeMatrix b(hat.num_vertices(), hat.num_vertices());
  for (const Arrow& a : hat.arrows()) {
    b(a.head, a.tail) += 1;
    b(a.tail, a.head) -= 1;
  }
  // delete all 2-cycles: pair opposite arrows greedily in id order
  std::vector<bool> removed(hat.num_arrows(), false);
  std::vector<int> order(hat.num_arrows());
  for (int i = 0; i < hat.num_arrows(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return hat.arrow(x).id < hat.arrow(y).id; });
  for (int i : order) {
    if (removed[i]) continue;
    for (int j : order) {
      if (removed[j] || j == i) continue;
      if (hat.arrow(i).tail == hat.arrow(j).head && hat.arrow(i).head == hat.arrow(j).tail) {
        removed[i] = removed[j] = true;
        break;
      }
    }
  }
  Quiver reduced(hat.vertex_labels());
  for (int i = 0; i < hat.num_arrows(); ++i)
    if (!removed[i]) reduced.add_arrow(hat.arrow(i).id, hat.arrow(i).tail, hat.arrow(i).head);
  return SurfaceQuivers{std::move(reduced), hat, std::move(b), hat.vertex_labels()};
}

struct SurfacePotential {
  QP unreduced; // (all corner arrows, triangle + puncture terms)
  QP reduced;   // reduced part
  SplitResult splitting;
};

/// Potential of an ideal triangulation: one 3-cycle per interior triangle,
/// the radius-level correction for triangles flanked by two self-folded
/// triangles, the negative radius cycle for enclosed punctures, and one
/// weighted cycle around every other puncture.
inline SurfacePotential potential_of_ideal(const IdealTriangulation& t,
                                           const PunctureWeights& weights) {
  require(t.valid(), errc::invalid_input, "triangulation must validate cleanly");
  for (const auto& p : t.puncture_labels()) {
    auto it = weights.find(p);
    require(it != weights.end(), errc::missing_weight, "missing weight for puncture " + p);
    require(it->second != 0, errc::missing_weight, "weight must be nonzero at " + p);
  }
  detail::CornerArrows ca = detail::corner_arrows(t);
  const Quiver& hat = *ca.quiver;
  AlgebraElement s(&hat);

  auto corner_arrow = [&](int tri, int corner, bool head_radius, bool tail_radius) {
    auto it = ca.at.find({tri, corner, head_radius, tail_radius});
    require(it != ca.at.end(), errc::internal, "missing corner arrow");
    return it->second;
  };

  // triangle terms
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    const auto& tr = t.triangles()[tri];
    if (tr.self_folded) continue;
    bool interior = true;
    int loops = 0;
    for (int i = 0; i < 3; ++i) {
      interior &= t.side_is_arc(tr.sides[i]);
      if (t.side_is_arc(tr.sides[i]) && t.is_sf_loop(tr.sides[i])) ++loops;
    }
    if (!interior) continue;
    // plain oriented triangle
    s.add_term(Path::of({corner_arrow(tri, 0, false, false), corner_arrow(tri, 1, false, false),
                         corner_arrow(tri, 2, false, false)}),
               1);
    if (loops >= 2) {
      require(loops == 2, errc::invalid_input,
              "triangle with three self-folded neighbors is not supported");
      // radius-level cycle divided by both enclosed-puncture weights
      Rat coef = 1;
      std::array<int, 3> arr;
      for (int corner = 0; corner < 3; ++corner) {
        int in = tr.sides[corner], outside = tr.sides[(corner + 1) % 3];
        bool hr = t.is_sf_loop(in), trr = t.is_sf_loop(outside);
        arr[corner] = corner_arrow(tri, corner, hr, trr);
      }
      for (int i = 0; i < 3; ++i)
        if (t.is_sf_loop(tr.sides[i]))
          coef /= weights.at(t.vertex_label(t.puncture_inside_loop(tr.sides[i])));
      s.add_term(Path::of({arr[0], arr[1], arr[2]}), coef);
    }
  }

  // puncture terms
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (!t.vertex_is_puncture(v)) continue;
    const std::string p = t.vertex_label(v);
    const Rat& xp = weights.at(p);

    // enclosed puncture: the cycle through its radius in the triangle on the
    // other side of the loop, provided that triangle's other sides are arcs
    bool enclosed = false;
    for (const auto& tr : t.triangles())
      if (tr.self_folded && tr.puncture == p) enclosed = true;
    if (enclosed) {
      int radius = -1, loop = -1;
      for (const auto& tr : t.triangles()) {
        if (!tr.self_folded || tr.puncture != p) continue;
        for (int i = 0; i < 3; ++i)
          if (tr.sides[i] == tr.sides[(i + 1) % 3]) radius = tr.sides[i];
        for (int i = 0; i < 3; ++i)
          if (tr.sides[i] != radius) loop = tr.sides[i];
      }
      // locate the non-self-folded triangle containing the loop
      int tri_out = -1;
      for (int tri = 0; tri < t.num_triangles(); ++tri) {
        if (t.triangles()[tri].self_folded) continue;
        for (int i = 0; i < 3; ++i)
          if (t.triangles()[tri].sides[i] == loop) tri_out = tri;
      }
      require(tri_out >= 0, errc::internal, "loop without an outer triangle");
      const auto& tr = t.triangles()[tri_out];
      bool all_arcs = true;
      for (int i = 0; i < 3; ++i) all_arcs &= t.side_is_arc(tr.sides[i]);
      if (all_arcs) {
        std::array<int, 3> arr;
        for (int corner = 0; corner < 3; ++corner) {
          int in = tr.sides[corner], outside = tr.sides[(corner + 1) % 3];
          arr[corner] = corner_arrow(tri_out, corner, in == loop, outside == loop);
        }
        s.add_term(Path::of({arr[0], arr[1], arr[2]}), Rat(-1) / xp);
      }
      continue;
    }

    // ordinary puncture: the counterclockwise round, skipping loops that
    // enclose self-folded triangles and splicing through their radii
    std::vector<int> cycle;
    for (const auto& c : t.corners_around(v)) {
      if (t.triangles()[c.tri].self_folded) continue;
      int in = t.corner_in_side(c), outside = t.corner_out_side(c);
      cycle.push_back(corner_arrow(c.tri, c.pos, t.is_sf_loop(in), t.is_sf_loop(outside)));
    }
    require(cycle.size() >= 2, errc::internal, "puncture cycle too short");
    std::reverse(cycle.begin(), cycle.end()); // paths compose like functions
    s.add_term(Path::of(cycle), xp);
  }

  QP unreduced(ca.quiver, std::move(s), weights);
  SplitResult sp = split(unreduced);
  QP reduced = sp.reduced;
  return SurfacePotential{std::move(unreduced), std::move(reduced), std::move(sp)};
}

/// Tagged version: the sign function is a relabeling of vertices by tagged
/// arcs, which the stable arc labels make the identity here.
inline SurfacePotential potential_of_tagged(const TaggedTriangulation& t,
                                            const PunctureWeights& weights) {
  return potential_of_ideal(t.base(), weights);
}

// ---------------------------------------------------------------------------
// Flip <-> mutation verification.

struct FlipMutationReport {
  bool quiver_ok = false;
  bool jacobian_ok = false;
  std::string requiv = "not_searched"; // found | not_found | not_searched
  Int jacobian_dim_mutated = 0;
  Int jacobian_dim_flipped = 0;
};

namespace detail {

/// Diagonal change-of-arrows search: match support cycles through an
/// endpoint-respecting quiver bijection, then solve the multiplicative
/// system for per-arrow scalars prime by prime.
bool find_diagonal_right_equivalence(const QP& from, const QP& to, Substitution& out);

} // namespace detail

/// Flip the tagged arc, mutate the QP, and compare: exchange matrices,
/// Jacobian dimensions with their bigraded refinement, and (same-stratum,
/// best effort) an explicit right-equivalence witness.
inline FlipMutationReport verify_flip_mutation(const TaggedTriangulation& tau,
                                               const std::string& arc,
                                               const PunctureWeights& weights,
                                               int max_degree = kDefaultMaxDegree,
                                               bool search_requiv = true) {
  FlipMutationReport rep;
  TaggedTriangulation sigma = tau.flip(arc);

  // (a) exchange matrices: flip then build vs build then mutate
  SurfaceQuivers qt = build_quivers(tau.base());
  SurfaceQuivers qs = build_quivers(sigma.base());
  int dir = -1;
  for (size_t i = 0; i < qt.vertex_order.size(); ++i)
    if (qt.vertex_order[i] == arc) dir = int(i);
  require(dir >= 0, errc::unknown_arc, "arc not found: " + arc);
  rep.quiver_ok = (qs.b == qt.b.mutated(dir)) && (qs.vertex_order == qt.vertex_order);

  // (b) Jacobian dimensions and bigraded dims
  SurfacePotential pt = potential_of_tagged(tau, weights);
  SurfacePotential ps = potential_of_tagged(sigma, weights);
  QPMutation mu = mutate_qp(pt.reduced, pt.reduced.quiver().vertex(arc));
  JacobianSummary jm = jacobian_dim(mu.result(), max_degree);
  JacobianSummary jf = jacobian_dim(ps.reduced, max_degree);
  rep.jacobian_dim_mutated = jm.dimension;
  rep.jacobian_dim_flipped = jf.dimension;
  rep.jacobian_ok = jm.finite && jf.finite && jm.dimension == jf.dimension;
  if (rep.jacobian_ok) {
    // align bigraded matrices through the vertex labels
    const Quiver& qm = mu.result().quiver();
    const Quiver& qfq = ps.reduced.quiver();
    for (int i = 0; i < qm.num_vertices() && rep.jacobian_ok; ++i)
      for (int j = 0; j < qm.num_vertices() && rep.jacobian_ok; ++j) {
        int fi = qfq.vertex(qm.vertex_label(i)), fj = qfq.vertex(qm.vertex_label(j));
        if (jm.bigraded[i][j] != jf.bigraded[fi][fj]) rep.jacobian_ok = false;
      }
  }

  // (c) right-equivalence witness, searched within a stratum only
  auto stratum = [](const TaggedTriangulation& t) {
    std::map<std::string, int> s;
    for (const auto& [p, d] : t.signature()) s[p] = (d == -1 ? -1 : 1);
    return s;
  };
  if (!search_requiv || stratum(tau) != stratum(sigma)) {
    rep.requiv = "not_searched";
  } else {
    Substitution phi;
    if (detail::find_diagonal_right_equivalence(ps.reduced, mu.result(), phi))
      rep.requiv = "found";
    else
      rep.requiv = "not_found";
  }
  return rep;
}

} // namespace qpsl

#include "qpsl/detail/requiv_search.hpp"
