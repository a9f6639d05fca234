// Cross-module invariants: the substitution chain rule for cyclic
// derivatives, right-equivalence invariance of Jacobian data, weight
// independence, and double-mutation dimensions.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qpsl/catalog.hpp"
#include "qpsl/surface_qp.hpp"
#include "support/jacobian_oracle.hpp"

using namespace qpsl;

namespace {

// Independent route for the derivative of a substituted potential:
// differentiate factor by factor, walking occurrence positions inside the
// expanded factor images directly.
AlgebraElement chain_rule_derivative(const Substitution& phi, const AlgebraElement& s,
                                     int arrow) {
  const Quiver& to = phi.to();
  AlgebraElement out(&to);
  for (const auto& [cycle, coef] : s.terms()) {
    int d = cycle.length();
    for (int i = 0; i < d; ++i) {
      AlgebraElement img = phi.image(cycle.arrows[i]);
      for (const auto& [p, c] : img.terms()) {
        for (int pos = 0; pos < p.length(); ++pos) {
          if (p.arrows[pos] != arrow) continue;
          Path suffix, prefix;
          suffix.arrows.assign(p.arrows.begin() + pos + 1, p.arrows.end());
          prefix.arrows.assign(p.arrows.begin(), p.arrows.begin() + pos);
          if (suffix.arrows.empty()) suffix.base = to.arrow(arrow).tail;
          if (prefix.arrows.empty()) prefix.base = to.arrow(arrow).head;
          AlgebraElement middle = AlgebraElement::idempotent(to, suffix.tail(to));
          for (int j = 1; j < d; ++j) middle = middle * phi.image(cycle.arrows[(i + j) % d]);
          out += AlgebraElement::path(to, suffix) * middle * AlgebraElement::path(to, prefix) *
                 (coef * c);
        }
      }
    }
  }
  return out;
}

struct ChainRuleFixture {
  Quiver q{std::vector<std::string>{"1", "2", "3", "4"}};
  ChainRuleFixture() {
    q.add_arrow("a", "3", "1");
    q.add_arrow("b", "2", "3");
    q.add_arrow("c", "1", "2");
    q.add_arrow("d", "1", "2");
    q.add_arrow("e", "2", "3");
    q.add_arrow("f", "1", "4");
    q.add_arrow("g", "4", "2");
  }
  Path word(std::initializer_list<const char*> ids) const {
    Path p;
    for (const char* id : ids) p.arrows.push_back(q.arrow_index(id));
    return p;
  }
};

} // namespace

TEST_CASE("cyclic derivative of a substituted potential follows the chain rule") {
  ChainRuleFixture fx;
  const Quiver& q = fx.q;
  std::vector<Path> cycles = {fx.word({"a", "b", "c"}), fx.word({"a", "e", "d"}),
                              fx.word({"a", "b", "g", "f"}), fx.word({"a", "e", "c"})};
  std::vector<Substitution> subs;
  {
    Substitution phi(&q, &q);
    phi.set_image("c", AlgebraElement::arrow(q, q.arrow_index("c")) +
                           AlgebraElement::arrow(q, q.arrow_index("d")));
    phi.set_image("a", AlgebraElement::arrow(q, q.arrow_index("a")) * Rat(-2));
    phi.set_image("d", AlgebraElement::arrow(q, q.arrow_index("d")) -
                           AlgebraElement::path(q, fx.word({"g", "f"})) * Rat(3));
    subs.push_back(phi);
  }
  {
    Substitution psi(&q, &q);
    psi.set_image("b", AlgebraElement::arrow(q, q.arrow_index("e")) +
                           AlgebraElement::arrow(q, q.arrow_index("b")) * Rat(1, 2));
    psi.set_image("e", AlgebraElement::arrow(q, q.arrow_index("b")));
    subs.push_back(psi);
  }
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> pick_coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement s(&q);
    for (const Path& c : cycles) s.add_term(c, Rat(pick_coef(rng), 1 + trial % 3));
    if (s.is_zero()) continue;
    for (const Substitution& phi : subs)
      for (int a = 0; a < q.num_arrows(); ++a) {
        AlgebraElement direct = cyclic_derivative(substitute(phi, s), a);
        AlgebraElement chained = chain_rule_derivative(phi, s, a);
        CHECK(direct == chained);
      }
  }
}

TEST_CASE("cyclic normal form is an additive congruence") {
  ChainRuleFixture fx;
  const Quiver& q = fx.q;
  AlgebraElement u = AlgebraElement::path(q, fx.word({"a", "b", "c"}), Rat(2));
  AlgebraElement v = AlgebraElement::path(q, fx.word({"b", "c", "a"}), Rat(1, 3));
  CHECK(cyclic_normal_form(u + v) == cyclic_normal_form(cyclic_normal_form(u) + v));
  CHECK(cyclic_normal_form(u + v) ==
        cyclic_normal_form(cyclic_normal_form(u) + cyclic_normal_form(v)));
}

TEST_CASE("right-equivalent QPs share dimension and bigraded data") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
  TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
  TaggedTriangulation sigma = tau.flip("a4");
  QP ps = potential_of_tagged(sigma, w).reduced;
  QP pt = potential_of_tagged(tau, w).reduced;
  QPMutation mu = mutate_qp(pt, pt.quiver().vertex("a4"));
  // these two are right-equivalent (the displayed substitution certifies it)
  JacobianSummary a = jacobian_dim(ps, 40);
  JacobianSummary b = jacobian_dim(mu.result(), 40);
  REQUIRE(a.finite);
  REQUIRE(b.finite);
  CHECK(a.dimension == b.dimension);
  const Quiver& qa = ps.quiver();
  const Quiver& qb = mu.result().quiver();
  for (int i = 0; i < qa.num_vertices(); ++i)
    for (int j = 0; j < qa.num_vertices(); ++j) {
      int bi = qb.vertex(qa.vertex_label(i)), bj = qb.vertex(qa.vertex_label(j));
      CHECK(a.bigraded[i][j] == b.bigraded[bi][bj]);
    }
}

TEST_CASE("puncture weights do not change the Jacobian dimension") {
  IdealTriangulation hex = catalog::three_punctured_hexagon();
  JacobianSummary ones = jacobian_dim(potential_of_ideal(hex, unit_weights(hex)).reduced, 40);
  JacobianSummary primes =
      jacobian_dim(potential_of_ideal(hex, {{"p1", 2}, {"p2", 3}, {"p3", 5}}).reduced, 40);
  REQUIRE(ones.finite);
  CHECK(ones.dimension == primes.dimension);
  CHECK(ones.bigraded == primes.bigraded);

  IdealTriangulation sq = catalog::once_punctured_square();
  JacobianSummary sq1 = jacobian_dim(potential_of_ideal(sq, unit_weights(sq)).reduced, 40);
  JacobianSummary sq7 = jacobian_dim(potential_of_ideal(sq, {{"q", 7}}).reduced, 40);
  CHECK(sq1.dimension == sq7.dimension);
}

TEST_CASE("mutating twice preserves the Jacobian dimension") {
  Quiver q({"1", "2", "3"});
  q.add_arrow("c", "1", "2");
  q.add_arrow("b", "2", "3");
  q.add_arrow("a", "3", "1");
  AlgebraElement s(&q);
  s.add_term(Path::of({q.arrow_index("a"), q.arrow_index("b"), q.arrow_index("c")}), 1);
  QP p = QP::make(std::move(q), s);
  Int dim0 = jacobian_dim(p, 20).dimension;
  for (int v = 0; v < 3; ++v) {
    QP twice = mutate_qp(mutate_qp(p, v).result(), v).result();
    CHECK(jacobian_dim(twice, 20).dimension == dim0);
  }

  IdealTriangulation sq = catalog::once_punctured_square();
  QP psq = potential_of_ideal(sq, unit_weights(sq)).reduced;
  Int dsq = jacobian_dim(psq, 40).dimension;
  QP back = mutate_qp(mutate_qp(psq, 0).result(), 0).result();
  CHECK(jacobian_dim(back, 40).dimension == dsq);
}

TEST_CASE("rewriting dimensions agree with the dense oracle across enumerations") {
  // hexagon flip graph: every node's QP against the dense linear algebra
  FlipGraph hex = enumerate_flip_graph(TaggedTriangulation(catalog::hexagon_fan(), {}), 20);
  for (const auto& node : hex.nodes) {
    QP p = potential_of_tagged(node, unit_weights(node.base())).reduced;
    JacobianSummary s = jacobian_dim(p, 40);
    REQUIRE(s.finite);
    REQUIRE(s.dimension <= 60);
    auto oracle = testing::dense_jacobian(p, *s.nilpotency_index + 4);
    CHECK(oracle.dimension == s.dimension);
    CHECK(oracle.bigraded == s.bigraded);
  }
  // a sample of once-punctured square nodes (all nodes is slow on the dense side)
  FlipGraph sq =
      enumerate_flip_graph(TaggedTriangulation(catalog::once_punctured_square(), {{"q", 1}}), 60);
  for (size_t i = 0; i < sq.nodes.size(); i += 7) {
    QP p = potential_of_tagged(sq.nodes[i], unit_weights(sq.nodes[i].base())).reduced;
    JacobianSummary s = jacobian_dim(p, 40);
    REQUIRE(s.finite);
    if (s.dimension > 60) continue;
    auto oracle = testing::dense_jacobian(p, *s.nilpotency_index + 4);
    CHECK(oracle.dimension == s.dimension);
    CHECK(oracle.bigraded == s.bigraded);
  }
}

TEST_CASE("every arc flip keeps the quiver-level mutation identity") {
  // B(flip(T, arc)) = mutation of B(T), across catalog triangulations
  for (const IdealTriangulation& t :
       {catalog::hexagon_fan(), catalog::once_punctured_square(), catalog::annulus_1_1()}) {
    SurfaceQuivers bt = build_quivers(t);
    for (const std::string& arc : t.arc_labels()) {
      if (t.is_folded_side(t.side(arc))) continue;
      SurfaceQuivers bs = build_quivers(t.flip(arc));
      int dir = -1;
      for (size_t i = 0; i < bt.vertex_order.size(); ++i)
        if (bt.vertex_order[i] == arc) dir = int(i);
      REQUIRE(dir >= 0);
      CHECK(bs.b == bt.b.mutated(dir));
    }
  }
}
