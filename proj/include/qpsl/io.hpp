#pragma once

// JSON and text serialization for the library types. Triangulations follow
// the schema {surface, triangles, epsilon}; the optional "corners" field
// pins vertex labels so that punctures keep their identity in round trips.

#include <json.hpp>

#include "qpsl/cluster.hpp"
#include "qpsl/jacobian.hpp"
#include "qpsl/reps.hpp"
#include "qpsl/surface_qp.hpp"

namespace qpsl::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Surfaces and triangulations.

inline json to_json(const SurfaceSpec& s) {
  return json{{"genus", s.genus}, {"boundary_marked", s.boundary_marked},
              {"punctures", s.punctures}};
}

inline SurfaceSpec surface_from_json(const json& j) {
  SurfaceSpec s;
  s.genus = j.at("genus").get<int>();
  s.boundary_marked = j.at("boundary_marked").get<std::vector<int>>();
  s.punctures = j.at("punctures").get<int>();
  s.validate();
  return s;
}

inline json to_json(const IdealTriangulation& t) {
  json tris = json::array();
  for (const auto& tri : t.triangles()) {
    json entry;
    entry["sides"] = {t.side_label(tri.sides[0]), t.side_label(tri.sides[1]),
                      t.side_label(tri.sides[2])};
    entry["self_folded"] = tri.self_folded;
    if (tri.self_folded) entry["puncture"] = tri.puncture;
    entry["corners"] = {t.vertex_label(tri.corner[0]), t.vertex_label(tri.corner[1]),
                        t.vertex_label(tri.corner[2])};
    tris.push_back(entry);
  }
  return json{{"surface", to_json(t.spec())}, {"triangles", tris}};
}

inline IdealTriangulation triangulation_from_json(const json& j) {
  SurfaceSpec spec = surface_from_json(j.at("surface"));
  std::vector<TriangleSpec> tris;
  std::set<std::string> arcs, boundary;
  for (const auto& entry : j.at("triangles")) {
    TriangleSpec ts;
    auto sides = entry.at("sides").get<std::vector<std::string>>();
    require(sides.size() == 3, errc::parse_error, "triangle needs three sides");
    for (int i = 0; i < 3; ++i) ts.sides[i] = sides[i];
    ts.self_folded = entry.value("self_folded", false);
    ts.puncture = entry.value("puncture", std::string());
    if (entry.contains("corners")) {
      auto corners = entry.at("corners").get<std::vector<std::string>>();
      require(corners.size() == 3, errc::parse_error, "corner labels need three entries");
      for (int i = 0; i < 3; ++i) ts.corners[i] = corners[i];
    }
    for (const auto& s : sides) {
      // boundary segments are the "b<k>" labels
      if (s.size() >= 2 && s[0] == 'b' && isdigit(static_cast<unsigned char>(s[1])))
        boundary.insert(s);
      else
        arcs.insert(s);
    }
    tris.push_back(std::move(ts));
  }
  if (j.contains("arcs")) {
    arcs.clear();
    boundary.clear();
    for (const auto& a : j.at("arcs")) arcs.insert(a.get<std::string>());
    for (const auto& b : j.at("boundary")) boundary.insert(b.get<std::string>());
  }
  return IdealTriangulation(spec, {arcs.begin(), arcs.end()}, {boundary.begin(), boundary.end()},
                            tris);
}

inline json to_json(const TaggedTriangulation& t) {
  json j = to_json(t.base());
  json eps = json::object();
  for (const auto& [p, e] : t.epsilon()) eps[p] = e;
  j["epsilon"] = eps;
  return j;
}

inline TaggedTriangulation tagged_from_json(const json& j) {
  IdealTriangulation base = triangulation_from_json(j);
  std::map<std::string, int> eps;
  if (j.contains("epsilon"))
    for (const auto& [p, e] : j.at("epsilon").items()) eps[p] = e.get<int>();
  for (const auto& p : base.puncture_labels())
    if (!eps.count(p)) eps[p] = 1;
  return TaggedTriangulation(std::move(base), std::move(eps));
}

// ---------------------------------------------------------------------------
// Quivers, matrices, QPs.

inline json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(json{{"id", a.id},
                          {"tail", q.vertex_label(a.tail)},
                          {"head", q.vertex_label(a.head)}});
  return json{{"vertices", q.vertex_labels()}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const json& j) {
  Quiver q(j.at("vertices").get<std::vector<std::string>>());
  for (const auto& a : j.at("arrows"))
    q.add_arrow(a.at("id").get<std::string>(), a.at("tail").get<std::string>(),
                a.at("head").get<std::string>());
  return q;
}

inline json to_json(const ExchangeMatrix& b) {
  json rows = json::array();
  for (int i = 0; i < b.rows(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < b.cols(); ++j2) row.push_back(b(i, j2));
    rows.push_back(row);
  }
  return json{{"rows", b.rows()}, {"cols", b.cols()}, {"entries", rows}};
}

inline ExchangeMatrix matrix_from_json(const json& j) {
  int rows, cols;
  json entries;
  if (j.is_array()) { // plain row-major array of arrays
    entries = j;
    rows = int(entries.size());
    cols = rows ? int(entries[0].size()) : 0;
  } else {
    rows = j.at("rows").get<int>();
    cols = j.at("cols").get<int>();
    entries = j.at("entries");
  }
  ExchangeMatrix b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) b(i, k) = entries[i][k].get<long long>();
  return b;
}

inline json to_json(const QP& p) {
  json weights = json::object();
  for (const auto& [k, v] : p.weights()) weights[k] = to_string(v);
  return json{{"quiver", to_json(p.quiver())},
              {"potential", to_string(p.potential())},
              {"weights", weights}};
}

inline QP qp_from_json(const json& j) {
  auto quiver = std::make_shared<Quiver>(quiver_from_json(j.at("quiver")));
  AlgebraElement pot = parse_element(*quiver, j.value("potential", std::string("0")));
  std::map<std::string, Rat> weights;
  if (j.contains("weights"))
    for (const auto& [k, v] : j.at("weights").items())
      weights[k] = v.is_string() ? parse_rational(v.get<std::string>())
                                 : Rat(v.get<long long>());
  return QP(quiver, std::move(pot), std::move(weights));
}

inline json to_json(const Substitution& phi) {
  json images = json::object();
  for (int a = 0; a < phi.from().num_arrows(); ++a)
    images[phi.from().arrow(a).id] = to_string(phi.image(a));
  return images;
}

inline json to_json(const SplitResult& s) {
  return json{{"reduced", to_json(s.reduced)},
              {"trivial", to_json(s.trivial)},
              {"witness", to_json(s.witness)},
              {"witness_inverse", to_json(s.witness_inverse)}};
}

inline json to_json(const JacobianSummary& s, bool verbose = false,
                    const Quiver* quiver = nullptr) {
  json j;
  j["status"] = s.status;
  if (s.finite) {
    j["dimension"] = s.dimension.str();
    j["nilpotency_index"] = *s.nilpotency_index;
    json big = json::array();
    for (const auto& row : s.bigraded) {
      json r = json::array();
      for (const auto& d : row) r.push_back(d.str());
      big.push_back(r);
    }
    j["bigraded_dims"] = big;
    if (verbose && quiver) {
      json paths = json::array();
      for (const Path& p : s.standard_paths)
        paths.push_back(to_string(AlgebraElement::path(*quiver, p)));
      j["standard_paths"] = paths;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Representations.

inline json to_json(const DecoratedRep& m) {
  const Quiver& q = m.quiver();
  json mats = json::object();
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Mat& mat = m.action(a);
    json rows = json::array();
    for (int i = 0; i < mat.rows(); ++i) {
      json row = json::array();
      for (int j2 = 0; j2 < mat.cols(); ++j2) row.push_back(to_string(mat(i, j2)));
      rows.push_back(row);
    }
    mats[q.arrow(a).id] = rows;
  }
  return json{{"dims", m.dims()}, {"matrices", mats}, {"decoration", m.decoration()}};
}

inline DecoratedRep rep_from_json(const QP& qp, const json& j) {
  const Quiver& q = qp.quiver();
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  std::vector<int> dec = j.value("decoration", std::vector<int>(q.num_vertices(), 0));
  std::map<int, Mat> action;
  if (j.contains("matrices"))
    for (const auto& [id, rows] : j.at("matrices").items()) {
      int a = q.arrow_index(id);
      Mat m(dims[q.arrow(a).head], dims[q.arrow(a).tail]);
      for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) {
          const auto& cell = rows[i][k];
          m(i, k) = cell.is_string() ? parse_rational(cell.get<std::string>())
                                     : Rat(cell.get<long long>());
        }
      action[a] = std::move(m);
    }
  return DecoratedRep(qp, std::move(dims), std::move(action), std::move(dec));
}

// ---------------------------------------------------------------------------
// Laurent polynomials and seeds.

inline LaurentPoly laurent_from_string(int nvars, const std::string& text) {
  LaurentPoly out(nvars);
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "0") return out;
  size_t i = 0;
  while (i < s.size()) {
    Int sign = 1;
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && (s[j] != '-' || s[j - 1] == '^')) ++j;
    std::string term = s.substr(i, j - i);
    require(!term.empty(), errc::parse_error, "empty Laurent term");
    Int coef = 1;
    LaurentPoly::Exp e(nvars, 0);
    size_t k = 0;
    bool any_factor = false;
    while (k < term.size()) {
      size_t star = term.find('*', k);
      std::string factor = term.substr(k, star == std::string::npos ? std::string::npos : star - k);
      if (!factor.empty() && (isdigit(static_cast<unsigned char>(factor[0])))) {
        coef *= Int(factor);
      } else {
        require(factor.size() >= 2 && factor[0] == 'x', errc::parse_error,
                "bad Laurent factor: " + factor);
        auto caret = factor.find('^');
        int var = std::stoi(factor.substr(1, caret == std::string::npos ? std::string::npos
                                                                        : caret - 1)) - 1;
        require(var >= 0 && var < nvars, errc::parse_error, "variable out of range: " + factor);
        int exp = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
        e[var] += exp;
      }
      any_factor = true;
      if (star == std::string::npos) break;
      k = star + 1;
    }
    require(any_factor, errc::parse_error, "empty Laurent term");
    out.add_term(std::move(e), sign * coef);
    i = j;
  }
  return out;
}

inline json to_json(const Seed& s) {
  json cluster = json::array();
  for (const auto& v : s.cluster) cluster.push_back(v.to_string());
  return json{{"matrix", to_json(s.b)}, {"cluster", cluster}, {"path", s.path}};
}

inline Seed seed_from_json(const json& j) {
  Seed s;
  s.b = matrix_from_json(j.at("matrix"));
  if (j.contains("cluster"))
    for (const auto& v : j.at("cluster"))
      s.cluster.push_back(laurent_from_string(s.b.rows(), v.get<std::string>()));
  else
    s = initial_seed(s.b);
  if (j.contains("path")) s.path = j.at("path").get<std::vector<int>>();
  return s;
}

} // namespace qpsl::io
