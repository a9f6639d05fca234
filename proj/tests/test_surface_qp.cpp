#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "qpsl/catalog.hpp"
#include "qpsl/surface_qp.hpp"

using namespace qpsl;

namespace {

Path word(const Quiver& q, std::initializer_list<const char*> ids) {
  Path p;
  for (const char* id : ids) p.arrows.push_back(q.arrow_index(id));
  return p;
}

AlgebraElement term(const Quiver& q, Rat coef, std::initializer_list<const char*> ids) {
  return AlgebraElement::path(q, word(q, ids), coef);
}

} // namespace

TEST_CASE("hexagon fan: zero potential and tridiagonal exchange matrix") {
  IdealTriangulation fan = catalog::hexagon_fan();
  SurfaceQuivers sq = build_quivers(fan);
  CHECK(sq.vertex_order == std::vector<std::string>{"a1", "a2", "a3"});
  CHECK(sq.b(1, 0) * sq.b(1, 0) == 1);
  CHECK(sq.b(2, 1) * sq.b(2, 1) == 1);
  CHECK(sq.b(2, 0) == 0);
  CHECK(sq.b.top_block_skew_symmetric());
  CHECK(matrix_of_quiver(sq.reduced) == sq.b);

  SurfacePotential sp = potential_of_ideal(fan, unit_weights(fan));
  CHECK(sp.reduced.potential().is_zero());
  CHECK(sp.unreduced.potential().is_zero());
}

TEST_CASE("once-punctured square: oriented 4-cycle with the full cycle potential") {
  IdealTriangulation sq = catalog::once_punctured_square();
  SurfaceQuivers q = build_quivers(sq);
  CHECK(q.reduced.num_arrows() == 4);
  for (const Arrow& a : q.reduced.arrows()) {
    (void)a;
  }
  CHECK(matrix_of_quiver(q.reduced) == q.b);
  SurfacePotential sp = potential_of_ideal(sq, unit_weights(sq));
  REQUIRE(sp.reduced.potential().num_terms() == 1);
  CHECK(sp.reduced.potential().terms().begin()->first.length() == 4);
  CHECK(sp.reduced.potential().terms().begin()->second == 1);
  // weight shows up as the cycle coefficient
  PunctureWeights w{{"q", Rat(7)}};
  SurfacePotential sp7 = potential_of_ideal(sq, w);
  CHECK(sp7.reduced.potential().terms().begin()->second == 7);
}

TEST_CASE("annulus with one marked point per boundary: double arrows") {
  SurfaceQuivers q = build_quivers(catalog::annulus_1_1());
  bool has2 = false;
  for (int i = 0; i < q.b.cols(); ++i)
    for (int j = 0; j < q.b.cols(); ++j) has2 |= q.b(i, j) == 2;
  CHECK(has2);
  CHECK(q.reduced.num_arrows() == 2);
}

TEST_CASE("once-punctured digon: no arrows survive reduction") {
  IdealTriangulation d = catalog::once_punctured_digon();
  SurfacePotential sp = potential_of_ideal(d, unit_weights(d));
  CHECK(sp.reduced.potential().is_zero());
  CHECK(sp.reduced.quiver().num_arrows() == 0);

  IdealTriangulation two = d.flip("a2");
  SurfacePotential sp2 = potential_of_ideal(two, unit_weights(two));
  CHECK(sp2.reduced.potential().is_zero());
  CHECK(sp2.reduced.quiver().num_arrows() == 0);
  CHECK(sp2.unreduced.quiver().num_arrows() == 2); // the 2-cycle at the puncture
}

TEST_CASE("three-punctured hexagon reproduces the displayed potential") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  SurfacePotential sp = potential_of_ideal(hex, w);
  const Quiver& q = sp.reduced.quiver();
  CHECK(q.num_arrows() == 17);

  // dictionary: alpha=t1c1, beta=t1c2, gamma=t1c0, delta=t1c2h, eps=t1c0h,
  // a1..a5 = t2c0,t4c0,t5c0,t6c0,t3c0, d1..d5 = t3c1,t7c0,t8c0,t9c0,t2c2,
  // nu=t2c1, eta=t3c2
  AlgebraElement expected(&q);
  expected += term(q, 1, {"t1c1", "t1c2", "t1c0"});                                // alpha beta gamma
  expected += term(q, 1, {"t2c0", "t2c1", "t2c2"});                                // a1 nu d5
  expected += term(q, 1, {"t3c0", "t3c1", "t3c2"});                                // a5 d1 eta
  expected += term(q, 2, {"t1c1", "t2c0", "t4c0", "t5c0", "t6c0", "t3c0"});        // x1 alpha a1..a5
  expected += term(q, Rat(-1, 3), {"t1c1", "t1c2t", "t1c0h"});                     // -x2^-1 alpha delta eps
  expected += term(q, 5, {"t1c2t", "t1c0h", "t3c1", "t7c0", "t8c0", "t9c0", "t2c2"}); // x3 delta eps d1..d5

  CHECK(sp.reduced.potential() == cyclic_normal_form(expected));
  // no two-arc punctures here, so nothing was split off
  CHECK(sp.splitting.trivial.quiver().num_arrows() == 0);
}

TEST_CASE("flipping the tagged arc over the folded side matches the displayed data") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
  TaggedTriangulation sigma = tau.flip("a4");
  CHECK(sigma.epsilon().at("p2") == -1);
  CHECK(sigma.signature().at("p2") == -1);

  SurfacePotential ps = potential_of_tagged(sigma, w);
  const Quiver& q = ps.reduced.quiver();
  CHECK(q.num_arrows() == 16);

  // sigma dictionary: eps* = t0c2, delta* = t1c0, beta = t1c1, gamma = t0c1
  AlgebraElement expected(&q);
  expected += term(q, 1, {"t2c0", "t2c1", "t2c2"});                            // a1 nu d5
  expected += term(q, 1, {"t3c0", "t3c1", "t3c2"});                            // a5 d1 eta
  expected += term(q, 2, {"t0c2", "t1c0", "t2c0", "t4c0", "t5c0", "t6c0", "t3c0"}); // x1 e* d* a1..a5
  expected += term(q, Rat(-1, 3), {"t0c2", "t1c0", "t1c1", "t0c1"});           // -x2^-1 e* d* beta gamma
  expected += term(q, 5, {"t1c1", "t0c1", "t3c1", "t7c0", "t8c0", "t9c0", "t2c2"}); // x3 beta gamma d1..d5
  CHECK(ps.reduced.potential() == cyclic_normal_form(expected));
}

TEST_CASE("mutating the hexagon QP at the radius reproduces the displayed result") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
  SurfacePotential pt = potential_of_tagged(tau, w);
  QPMutation mu = mutate_qp(pt.reduced, pt.reduced.quiver().vertex("a4"));
  const Quiver& q = mu.result().quiver();
  CHECK(q.num_arrows() == 16);

  // names after mutation: eps* = t1c0h*, delta* = t1c2t*
  AlgebraElement expected(&q);
  expected += term(q, 1, {"t2c0", "t2c1", "t2c2"});
  expected += term(q, 1, {"t3c0", "t3c1", "t3c2"});
  expected += term(q, 6, {"t1c0h*", "t1c2t*", "t2c0", "t4c0", "t5c0", "t6c0", "t3c0"}); // x1 x2
  expected += term(q, 3, {"t1c0h*", "t1c2t*", "t1c2", "t1c0"});                         // x2
  expected += term(q, 15, {"t1c2", "t1c0", "t3c1", "t7c0", "t8c0", "t9c0", "t2c2"});    // x2 x3
  expected += term(q, 30, {"t3c1", "t7c0", "t8c0", "t9c0", "t2c2", "t2c0", "t4c0",
                           "t5c0", "t6c0", "t3c0"});                                    // x1 x2 x3
  CHECK(mu.result().potential() == cyclic_normal_form(expected));

  // quiver agreement with the flipped triangulation
  TaggedTriangulation sigma = tau.flip("a4");
  SurfaceQuivers qs = build_quivers(sigma.base());
  CHECK(same_arrow_multiplicities(mu.result().quiver(), qs.reduced));
}

TEST_CASE("the displayed substitution certifies the hexagon right-equivalence") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
  TaggedTriangulation sigma = tau.flip("a4");
  SurfacePotential pt = potential_of_tagged(tau, w);
  SurfacePotential ps = potential_of_tagged(sigma, w);
  QPMutation mu = mutate_qp(pt.reduced, pt.reduced.quiver().vertex("a4"));

  const Quiver& qs = ps.reduced.quiver();
  const Quiver& qm = mu.result().quiver();
  Rat x1 = 2, x2 = 3, x3 = 5;

  Substitution phi(&qs, &qm);
  // a1 -> -a1
  phi.set_image("t2c0", AlgebraElement::arrow(qm, qm.arrow_index("t2c0")) * Rat(-1));
  // nu -> -nu - x1 x2 x3 a2 a3 a4 a5 d1 d2 d3 d4
  phi.set_image("t2c1",
                AlgebraElement::arrow(qm, qm.arrow_index("t2c1")) * Rat(-1) -
                    AlgebraElement::path(qm,
                                         word(qm, {"t4c0", "t5c0", "t6c0", "t3c0", "t3c1",
                                                   "t7c0", "t8c0", "t9c0"})) *
                        (x1 * x2 * x3));
  // eps* -> -x2 eps*
  phi.set_image("t0c2", AlgebraElement::arrow(qm, qm.arrow_index("t1c0h*")) * (-x2));
  // beta -> x2 beta
  phi.set_image("t1c1", AlgebraElement::arrow(qm, qm.arrow_index("t1c2")) * x2);
  // remaining arrows: identity under the quiver identification
  phi.set_image("t1c0", AlgebraElement::arrow(qm, qm.arrow_index("t1c2t*"))); // delta*
  phi.set_image("t0c1", AlgebraElement::arrow(qm, qm.arrow_index("t1c0")));  // gamma

  CHECK(verify_right_equivalence(phi, ps.reduced, mu.result()));
}

TEST_CASE("flip/mutation verification passes on hexagon fan edges") {
  TaggedTriangulation start(catalog::hexagon_fan(), {});
  for (const std::string& arc : {"a1", "a2", "a3"}) {
    FlipMutationReport rep = verify_flip_mutation(start, arc, {});
    CHECK(rep.quiver_ok);
    CHECK(rep.jacobian_ok);
    CHECK(rep.requiv == "found");
  }
}

TEST_CASE("a certified right-equivalence exists on every hexagon flip edge") {
  FlipGraph g = enumerate_flip_graph(TaggedTriangulation(catalog::hexagon_fan(), {}), 20);
  REQUIRE(g.nodes.size() == 14);
  int edges = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    for (const auto& [arc, j] : g.edges[i]) {
      if (int(i) > j) continue;
      FlipMutationReport rep = verify_flip_mutation(g.nodes[i], arc, {});
      CHECK(rep.quiver_ok);
      CHECK(rep.jacobian_ok);
      CHECK(rep.requiv == "found");
      ++edges;
    }
  CHECK(edges == 21);
}

TEST_CASE("same-stratum square edges all get certified right-equivalences") {
  FlipGraph g =
      enumerate_flip_graph(TaggedTriangulation(catalog::once_punctured_square(), {{"q", 1}}), 60);
  int found = 0, cross = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    for (const auto& [arc, j] : g.edges[i]) {
      if (int(i) > j) continue;
      FlipMutationReport rep =
          verify_flip_mutation(g.nodes[i], arc, unit_weights(g.nodes[i].base()), 40, true);
      CHECK(rep.quiver_ok);
      CHECK(rep.jacobian_ok);
      CHECK(rep.requiv != "not_found");
      if (rep.requiv == "found") ++found;
      if (rep.requiv == "not_searched") ++cross;
    }
  CHECK(found == 80);
  CHECK(cross == 20);
}

TEST_CASE("flip/mutation verification handles the annulus double arrows") {
  IdealTriangulation ann = catalog::annulus_1_1();
  TaggedTriangulation start(ann, {});
  for (const std::string& arc : {"a1", "a2"}) {
    FlipMutationReport rep = verify_flip_mutation(start, arc, {});
    CHECK(rep.quiver_ok);
    CHECK(rep.jacobian_ok);
  }
  // gluing data cannot see winding, so the annulus enumeration closes on the
  // finitely many combinatorial types (the quotient by the twist action)
  FlipGraph g = enumerate_flip_graph(start, 30);
  CHECK(g.nodes.size() >= 1);
  for (size_t i = 0; i < g.nodes.size(); ++i) CHECK(g.degree(int(i)) == 2);
}

TEST_CASE("flip/mutation verification on the once-punctured square, both weights") {
  TaggedTriangulation start(catalog::once_punctured_square(), {{"q", 1}});
  for (const PunctureWeights& w : {PunctureWeights{{"q", 1}}, PunctureWeights{{"q", 2}}}) {
    for (const std::string& arc : {"a1", "a3"}) {
      FlipMutationReport rep = verify_flip_mutation(start, arc, w);
      CHECK(rep.quiver_ok);
      CHECK(rep.jacobian_ok);
    }
  }
}

TEST_CASE("all twelve tagged arcs of the three-punctured hexagon verify") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  for (const auto& arc : hex.arc_labels()) {
    FlipMutationReport rep = verify_flip_mutation(tau, arc, w, 40, false);
    CHECK(rep.quiver_ok);
    CHECK(rep.jacobian_ok);
  }
}

TEST_CASE("a sign flip away from self-folded triangles is a pure relabeling") {
  IdealTriangulation sq = catalog::once_punctured_square();
  PunctureWeights w{{"q", 2}};
  QP plain = potential_of_tagged(TaggedTriangulation(sq, {{"q", 1}}), w).reduced;
  QP notched = potential_of_tagged(TaggedTriangulation(sq, {{"q", -1}}), w).reduced;
  CHECK(plain.potential() == remap_element(notched.potential(), plain.quiver()));
}

TEST_CASE("adjacency quivers are 2-acyclic with small entries across the catalog") {
  for (const IdealTriangulation& t :
       {catalog::hexagon_fan(), catalog::unpunctured_square(), catalog::once_punctured_square(),
        catalog::once_punctured_digon(), catalog::annulus_1_1(),
        catalog::three_punctured_hexagon(), catalog::twice_punctured_digon()}) {
    SurfaceQuivers q = build_quivers(t);
    CHECK(q.reduced.is_two_acyclic());
    CHECK(matrix_of_quiver(q.reduced) == q.b);
    for (int i = 0; i < q.b.cols(); ++i)
      for (int j = 0; j < q.b.cols(); ++j) CHECK(std::abs(q.b(i, j)) <= 2);
  }
}

TEST_CASE("missing weights are reported") {
  IdealTriangulation sq = catalog::once_punctured_square();
  CHECK_THROWS_AS(potential_of_ideal(sq, {}), Error);
}

TEST_CASE("triangle flanked by two self-folded triangles gets the correction term") {
  IdealTriangulation t = catalog::twice_punctured_digon();
  REQUIRE(t.validate().empty());
  PunctureWeights w{{"p", 3}, {"q", 5}};
  SurfacePotential sp = potential_of_ideal(t, w);
  const Quiver& q = sp.reduced.quiver();
  // four parallel level-variants of the middle triangle cycle:
  // loop-loop, one radius each, both radii over x_p x_q
  AlgebraElement expected(&q);
  expected += term(q, 1, {"t2c0", "t2c1", "t2c2"});
  expected += term(q, Rat(-1, 5), {"t2c0", "t2c1t", "t2c2h"});
  expected += term(q, Rat(-1, 3), {"t2c0t", "t2c1h", "t2c2"});
  expected += term(q, Rat(1, 15), {"t2c0t", "t2c1ht", "t2c2h"});
  CHECK(sp.reduced.potential() == cyclic_normal_form(expected));
  AdmissibilityReport rep = check_admissibility(sp.reduced, 40);
  CHECK(rep.holds);
  CHECK(rep.summary.dimension == 18);
}
