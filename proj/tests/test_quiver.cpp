#include <catch2/catch_amalgamated.hpp>

#include "qpsl/quiver.hpp"

using namespace qpsl;

namespace {

Quiver linear_a3() {
  Quiver q({"1", "2", "3"});
  q.add_arrow("alpha", "1", "2");
  q.add_arrow("beta", "2", "3");
  return q;
}

} // namespace

TEST_CASE("sink mutation reverses the incident arrow") {
  Quiver q({"1", "2"});
  q.add_arrow("a", "1", "2");
  Quiver m = mutate_quiver(q, 1);
  REQUIRE(m.num_arrows() == 1);
  REQUIRE(m.arrow(0).id == "a*");
  REQUIRE(m.arrow(0).tail == 1);
  REQUIRE(m.arrow(0).head == 0);
}

TEST_CASE("mutating linear A3 at the middle vertex yields an oriented 3-cycle") {
  Quiver q = linear_a3();
  Quiver m = mutate_quiver(q, 1);
  REQUIRE(m.num_arrows() == 3);
  REQUIRE(m.has_arrow("alpha*"));
  REQUIRE(m.has_arrow("beta*"));
  REQUIRE(m.has_arrow("[beta,alpha]"));
  CHECK(m.arrow(m.arrow_index("alpha*")).tail == 1);
  CHECK(m.arrow(m.arrow_index("alpha*")).head == 0);
  CHECK(m.arrow(m.arrow_index("beta*")).tail == 2);
  CHECK(m.arrow(m.arrow_index("beta*")).head == 1);
  CHECK(m.arrow(m.arrow_index("[beta,alpha]")).tail == 0);
  CHECK(m.arrow(m.arrow_index("[beta,alpha]")).head == 2);
}

TEST_CASE("quiver mutation is involutive up to arrow renaming") {
  Quiver q = linear_a3();
  for (int v = 0; v < 3; ++v) {
    Quiver mm = mutate_quiver(mutate_quiver(q, v), v);
    CHECK(same_arrow_multiplicities(q, mm));
  }
}

TEST_CASE("mutation refuses a 2-cycle at the mutating vertex") {
  Quiver q({"1", "2"});
  q.add_arrow("u", "1", "2");
  q.add_arrow("v", "2", "1");
  CHECK_THROWS_AS(mutate_quiver(q, 0), Error);
}

TEST_CASE("matrix and quiver conversions are mutually inverse on 2-acyclic data") {
  ExchangeMatrix b(3, 3);
  // oriented 3-cycle
  b(0, 1) = 1;  b(1, 0) = -1;
  b(1, 2) = 1;  b(2, 1) = -1;
  b(2, 0) = 1;  b(0, 2) = -1;
  Quiver q = quiver_of_matrix(b);
  REQUIRE(q.num_arrows() == 3);
  CHECK(matrix_of_quiver(q) == b);

  ExchangeMatrix zero(2, 2);
  CHECK(quiver_of_matrix(zero).num_arrows() == 0);
  Quiver empty({"1", "2"});
  CHECK(matrix_of_quiver(empty) == zero);
}

TEST_CASE("quiver mutation commutes with matrix mutation") {
  Quiver q = linear_a3();
  for (int v = 0; v < 3; ++v) {
    ExchangeMatrix lhs = matrix_of_quiver(mutate_quiver(q, v));
    ExchangeMatrix rhs = matrix_of_quiver(q).mutated(v);
    CHECK(lhs == rhs);
  }
  // also after one more step, where 3-cycles are around
  Quiver m = mutate_quiver(q, 1);
  for (int v = 0; v < 3; ++v) {
    ExchangeMatrix lhs = matrix_of_quiver(mutate_quiver(m, v));
    ExchangeMatrix rhs = matrix_of_quiver(m).mutated(v);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Kronecker-style double arrows survive conversion") {
  ExchangeMatrix b(2, 2);
  b(0, 1) = 2;
  b(1, 0) = -2;
  Quiver q = quiver_of_matrix(b);
  REQUIRE(q.num_arrows() == 2);
  CHECK(matrix_of_quiver(q) == b);
  CHECK(matrix_of_quiver(mutate_quiver(q, 0)) == b.mutated(0));
}

TEST_CASE("DOT export mentions every arrow id") {
  Quiver q = linear_a3();
  std::string dot = q.dot();
  CHECK(dot.find("alpha") != std::string::npos);
  CHECK(dot.find("beta") != std::string::npos);
}
