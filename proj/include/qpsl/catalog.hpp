#pragma once

// Built-in triangulations and quivers used by the command line tool and the
// test suites.

#include "qpsl/qp.hpp"
#include "qpsl/surface.hpp"

namespace qpsl::catalog {

/// Unpunctured hexagon with the fan triangulation at one vertex (rank 3).
inline IdealTriangulation hexagon_fan() {
  SurfaceSpec spec{0, {6}, 0};
  spec.validate();
  return IdealTriangulation(
      spec, {"a1", "a2", "a3"}, {"b1", "b2", "b3", "b4", "b5", "b6"},
      {
          {{"b1", "b2", "a1"}, false, "", {"m2", "m3", "m1"}},
          {{"a1", "b3", "a2"}, false, "", {"m3", "m4", "m1"}},
          {{"a2", "b4", "a3"}, false, "", {"m4", "m5", "m1"}},
          {{"a3", "b5", "b6"}, false, "", {"m5", "m6", "m1"}},
      });
}

/// Unpunctured square: a single diagonal (rank 1).
inline IdealTriangulation unpunctured_square() {
  SurfaceSpec spec{0, {4}, 0};
  spec.validate();
  return IdealTriangulation(spec, {"a1"}, {"b1", "b2", "b3", "b4"},
                            {
                                {{"b1", "b2", "a1"}, false, "", {"m2", "m3", "m1"}},
                                {{"a1", "b3", "b4"}, false, "", {"m3", "m4", "m1"}},
                            });
}

/// Once-punctured square triangulated by the four radii (rank 4).
inline IdealTriangulation once_punctured_square() {
  SurfaceSpec spec{0, {4}, 1};
  spec.validate();
  return IdealTriangulation(
      spec, {"a1", "a2", "a3", "a4"}, {"b1", "b2", "b3", "b4"},
      {
          {{"a1", "a2", "b1"}, false, "", {"q", "m2", "m1"}},
          {{"a2", "a3", "b2"}, false, "", {"q", "m3", "m2"}},
          {{"a3", "a4", "b3"}, false, "", {"q", "m4", "m3"}},
          {{"a4", "a1", "b4"}, false, "", {"q", "m1", "m4"}},
      });
}

/// Once-punctured digon carrying a self-folded triangle: radius a1, loop a2.
inline IdealTriangulation once_punctured_digon() {
  SurfaceSpec spec{0, {2}, 1};
  spec.validate();
  return IdealTriangulation(spec, {"a1", "a2"}, {"b1", "b2"},
                            {
                                {{"a2", "a1", "a1"}, true, "q", {"mA", "q", "mA"}},
                                {{"a2", "b1", "b2"}, false, "", {"mA", "mB", "mA"}},
                            });
}

/// Annulus with one marked point on each boundary component (rank 2); its
/// signed adjacency matrix has entries of absolute value 2.
inline IdealTriangulation annulus_1_1() {
  SurfaceSpec spec{0, {1, 1}, 0};
  spec.validate();
  return IdealTriangulation(spec, {"a1", "a2"}, {"b1", "b2"},
                            {
                                {{"a1", "b1", "a2"}, false, "", {"mA", "mA", "mB"}},
                                {{"a1", "b2", "a2"}, false, "", {"mB", "mB", "mA"}},
                            });
}

/// Three-times-punctured hexagon with a self-folded triangle: punctures p1
/// (six incident arc ends), p2 (enclosed by the loop a3 with radius a4), p3
/// (base of the loop). Arcs a1, a2 join p1 to p3; a5..a8 fan out of p1 to
/// the boundary; a9..a12 fan out of p3.
inline IdealTriangulation three_punctured_hexagon() {
  SurfaceSpec spec{0, {6}, 3};
  spec.validate();
  return IdealTriangulation(
      spec, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"},
      {"b1", "b2", "b3", "b4", "b5", "b6"},
      {
          {{"a3", "a4", "a4"}, true, "p2", {"p3", "p2", "p3"}},
          {{"a3", "a1", "a2"}, false, "", {"p3", "p1", "p3"}},
          {{"a2", "a5", "a12"}, false, "", {"p1", "m1", "p3"}},
          {{"a8", "a1", "a9"}, false, "", {"p1", "p3", "m4"}},
          {{"a5", "a6", "b1"}, false, "", {"p1", "m2", "m1"}},
          {{"a6", "a7", "b2"}, false, "", {"p1", "m3", "m2"}},
          {{"a7", "a8", "b3"}, false, "", {"p1", "m4", "m3"}},
          {{"a9", "a10", "b4"}, false, "", {"p3", "m5", "m4"}},
          {{"a10", "a11", "b5"}, false, "", {"p3", "m6", "m5"}},
          {{"a11", "a12", "b6"}, false, "", {"p3", "m1", "m6"}},
      });
}

/// Twice-punctured digon whose middle triangle is flanked by two self-folded
/// triangles: the loop m encloses both punctures, lp and lq enclose one each.
inline IdealTriangulation twice_punctured_digon() {
  SurfaceSpec spec{0, {2}, 2};
  spec.validate();
  return IdealTriangulation(spec, {"m", "lp", "lq", "rp", "rq"}, {"b1", "b2"},
                            {
                                {{"lp", "rp", "rp"}, true, "p", {"mA", "p", "mA"}},
                                {{"lq", "rq", "rq"}, true, "q", {"mA", "q", "mA"}},
                                {{"m", "lp", "lq"}, false, "", {"mA", "mA", "mA"}},
                                {{"m", "b1", "b2"}, false, "", {"mA", "mB", "mA"}},
                            });
}

/// Quiver of the once-punctured torus with the two triangle cycles as its
/// potential; the standard example whose incomplete Jacobian quotient is
/// infinite-dimensional.
inline QP markov_qp() {
  Quiver q({"1", "2", "3"});
  q.add_arrow("a", "1", "2");
  q.add_arrow("b", "1", "2");
  q.add_arrow("c", "2", "3");
  q.add_arrow("d", "2", "3");
  q.add_arrow("e", "3", "1");
  q.add_arrow("f", "3", "1");
  AlgebraElement s(&q);
  s.add_term(Path::of({q.arrow_index("e"), q.arrow_index("c"), q.arrow_index("a")}), 1);
  s.add_term(Path::of({q.arrow_index("f"), q.arrow_index("d"), q.arrow_index("b")}), 1);
  return QP::make(std::move(q), s);
}

} // namespace qpsl::catalog
