// Command line interface: construction, mutation, verification and export
// for triangulated-surface QPs and their cluster patterns.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>

#include "qpsl/catalog.hpp"
#include "qpsl/io.hpp"

using namespace qpsl;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::invalid_input, "cannot read file: " + path);
  json j;
  in >> j;
  return j;
}

IdealTriangulation load_surface(const std::string& file, const std::string& name) {
  if (!name.empty()) {
    if (name == "hexagon-fan") return catalog::hexagon_fan();
    if (name == "unpunctured-square") return catalog::unpunctured_square();
    if (name == "once-punctured-square") return catalog::once_punctured_square();
    if (name == "once-punctured-digon") return catalog::once_punctured_digon();
    if (name == "annulus") return catalog::annulus_1_1();
    if (name == "three-punctured-hexagon") return catalog::three_punctured_hexagon();
    fail(errc::invalid_input, "unknown catalog surface: " + name);
  }
  require(!file.empty(), errc::invalid_input, "need --in <file> or --catalog <name>");
  return io::triangulation_from_json(read_json_file(file));
}

TaggedTriangulation load_tagged(const std::string& file, const std::string& name,
                                const std::string& eps_text) {
  std::map<std::string, int> eps;
  IdealTriangulation base = load_surface(file, name);
  if (!file.empty() && name.empty()) {
    json j = read_json_file(file);
    if (j.contains("epsilon"))
      for (const auto& [p, e] : j.at("epsilon").items()) eps[p] = e.get<int>();
  }
  for (size_t i = 0; i < eps_text.size();) { // "p1=-1,p2=1"
    auto comma = eps_text.find(',', i);
    std::string piece = eps_text.substr(i, comma == std::string::npos ? std::string::npos
                                                                      : comma - i);
    auto eq = piece.find('=');
    require(eq != std::string::npos, errc::invalid_input, "bad epsilon entry: " + piece);
    eps[piece.substr(0, eq)] = std::stoi(piece.substr(eq + 1));
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  for (const auto& p : base.puncture_labels())
    if (!eps.count(p)) eps[p] = 1;
  return TaggedTriangulation(std::move(base), std::move(eps));
}

PunctureWeights parse_weights(const IdealTriangulation& t, const std::string& text) {
  PunctureWeights w = unit_weights(t);
  for (size_t i = 0; i < text.size();) { // "p1=2,p2=1/3"
    auto comma = text.find(',', i);
    std::string piece = text.substr(i, comma == std::string::npos ? std::string::npos
                                                                  : comma - i);
    auto eq = piece.find('=');
    require(eq != std::string::npos, errc::invalid_input, "bad weight entry: " + piece);
    w[piece.substr(0, eq)] = parse_rational(piece.substr(eq + 1));
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  return w;
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> word;
  for (size_t i = 0; i < text.size();) {
    auto comma = text.find(',', i);
    std::string piece = text.substr(i, comma == std::string::npos ? std::string::npos
                                                                  : comma - i);
    if (!piece.empty()) word.push_back(std::stoi(piece) - 1); // 1-based on the CLI
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  return word;
}

int default_max_degree() {
  if (const char* env = std::getenv("QPSL_MAX_DEGREE")) return std::atoi(env);
  return kDefaultMaxDegree;
}

// Arrays of flat records print as aligned tables in human mode.
void emit_table(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& [k, v] : rows[0].items()) cols.push_back(k);
  std::vector<size_t> width;
  auto cell = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& c : cols) {
    size_t w = c.size();
    for (const auto& row : rows) w = std::max(w, cell(row.at(c)).size());
    width.push_back(w);
  }
  for (size_t i = 0; i < cols.size(); ++i)
    std::cout << cols[i] << std::string(width[i] - cols[i].size() + 2, ' ');
  std::cout << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < cols.size(); ++i) {
      std::string s = cell(row.at(cols[i]));
      std::cout << s << std::string(width[i] - s.size() + 2, ' ');
    }
    std::cout << "\n";
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_array() && !v.empty() && v[0].is_object()) {
        std::cout << k << ":\n";
        emit_table(v);
      } else {
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

std::vector<std::vector<int>> monomial_shapes(int nvars, int degree) {
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur(nvars, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nvars) {
      int total = 0;
      for (int c : cur) total += c;
      if (total >= 1) shapes.push_back(cur);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      cur[pos] = d;
      rec(pos + 1, left - d);
    }
    cur[pos] = 0;
  };
  rec(0, degree);
  return shapes;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"quivers with potentials from triangulated surfaces"};
  app.require_subcommand(1);

  std::string in_file, catalog_name, arc, weights_text, format = "json", element_text;
  std::string rep_file, rep2_file, qp_file, matrix_file, word_text, eps_text;
  int max_nodes = 1000, vertex_k = 1, degree_cap = 3, jobs = 1;
  int max_degree = default_max_degree();
  bool tagged = false, verbose = false;

  auto add_common = [&](CLI::App* cmd) { cmd->add_option("--format", format, "json or text"); };

  auto* surface = app.add_subcommand("surface", "triangulation operations");
  surface->require_subcommand(1);
  auto* s_validate = surface->add_subcommand("validate", "check triangulation invariants");
  auto* s_flip = surface->add_subcommand("flip", "flip an arc (tagged rules with --tagged)");
  auto* s_graph = surface->add_subcommand("graph", "enumerate the tagged flip graph");
  for (auto* cmd : {s_validate, s_flip, s_graph}) {
    cmd->add_option("--in", in_file, "triangulation JSON file");
    cmd->add_option("--catalog", catalog_name, "built-in triangulation name");
    cmd->add_option("--epsilon", eps_text, "sign overrides, e.g. q=-1");
    add_common(cmd);
  }
  s_flip->add_option("--arc", arc, "arc label to flip")->required();
  s_flip->add_flag("--tagged", tagged, "use tagged flip rules");
  s_graph->add_option("--max-nodes", max_nodes, "node budget");

  auto* quiver = app.add_subcommand("quiver", "signed adjacency quivers");
  quiver->require_subcommand(1);
  auto* q_build = quiver->add_subcommand("build", "quivers and matrix of a triangulation");
  q_build->add_option("--in", in_file, "triangulation JSON file");
  q_build->add_option("--catalog", catalog_name, "built-in triangulation name");
  auto* q_mutate = quiver->add_subcommand("mutate", "mutate a quiver at a vertex");
  q_mutate->add_option("--in", in_file, "quiver JSON file")->required();
  q_mutate->add_option("--vertex", arc, "vertex label")->required();
  auto* q_dot = quiver->add_subcommand("dot", "DOT export");
  q_dot->add_option("--in", in_file, "quiver JSON file")->required();
  for (auto* cmd : {q_build, q_mutate, q_dot}) add_common(cmd);

  auto* qp_cmd = app.add_subcommand("qp", "quivers with potentials");
  qp_cmd->require_subcommand(1);
  auto* qp_pot = qp_cmd->add_subcommand("potential", "potential of a triangulation");
  qp_pot->add_option("--in", in_file, "triangulation JSON file");
  qp_pot->add_option("--catalog", catalog_name, "built-in triangulation name");
  qp_pot->add_option("--epsilon", eps_text, "sign overrides");
  qp_pot->add_option("--weights", weights_text, "puncture weights, e.g. p1=2,p2=3");
  auto* qp_mut = qp_cmd->add_subcommand("mutate", "QP-mutation at a vertex");
  qp_mut->add_option("--qp", qp_file, "QP JSON file")->required();
  qp_mut->add_option("--vertex", arc, "vertex label")->required();
  auto* qp_jac = qp_cmd->add_subcommand("jacobian", "Jacobian dimension");
  auto* qp_adm = qp_cmd->add_subcommand("admissible", "admissibility certificate");
  for (auto* cmd : {qp_jac, qp_adm}) {
    cmd->add_option("--qp", qp_file, "QP JSON file")->required();
    cmd->add_option("--max-degree", max_degree, "rewriting degree bound");
    cmd->add_flag("--verbose", verbose, "include standard paths");
  }
  for (auto* cmd : {qp_pot, qp_mut, qp_jac, qp_adm}) add_common(cmd);

  auto* rep_cmd = app.add_subcommand("rep", "decorated representations");
  rep_cmd->require_subcommand(1);
  auto* r_mut = rep_cmd->add_subcommand("mutate", "mutate a representation");
  r_mut->add_option("--vertex", arc, "vertex label")->required();
  auto* r_g = rep_cmd->add_subcommand("gvector", "g-vector");
  auto* r_e = rep_cmd->add_subcommand("einv", "E-invariant (or E^inj with --rep2)");
  r_e->add_option("--rep2", rep2_file, "second representation JSON");
  auto* r_f = rep_cmd->add_subcommand("fpoly", "F-polynomial of a thin representation");
  for (auto* cmd : {r_mut, r_g, r_e, r_f}) {
    cmd->add_option("--qp", qp_file, "QP JSON file")->required();
    cmd->add_option("--rep", rep_file, "representation JSON file")->required();
    add_common(cmd);
  }

  auto* cl = app.add_subcommand("cluster", "cluster patterns of geometric type");
  cl->require_subcommand(1);
  auto* c_mut = cl->add_subcommand("mutate", "mutate the initial seed along a word");
  auto* c_exp = cl->add_subcommand("expand", "expand an element in a cluster");
  auto* c_fg = cl->add_subcommand("fg", "principal F-polynomial and g-vector");
  auto* c_vl = cl->add_subcommand("verify-laurent", "full seed enumeration");
  auto* c_vi = cl->add_subcommand("verify-independence", "cluster monomial independence");
  auto* c_dec = cl->add_subcommand("decompose", "decompose into cluster monomials");
  for (auto* cmd : {c_mut, c_exp, c_fg, c_vl, c_vi, c_dec}) {
    cmd->add_option("--matrix", matrix_file, "extended exchange matrix JSON")->required();
    add_common(cmd);
  }
  for (auto* cmd : {c_mut, c_exp, c_fg})
    cmd->add_option("--word", word_text, "mutation word, 1-based, e.g. 1,2,1");
  c_fg->add_option("--k", vertex_k, "variable index, 1-based");
  c_vl->add_option("--max-seeds", max_nodes, "seed budget");
  c_vi->add_option("--degree", degree_cap, "monomial degree bound");
  c_dec->add_option("--degree", degree_cap, "dictionary degree bound");
  for (auto* cmd : {c_exp, c_dec})
    cmd->add_option("--element", element_text, "Laurent polynomial in x1..xn")->required();

  auto* verify = app.add_subcommand("verify", "theorem-level verification harnesses");
  verify->require_subcommand(1);
  auto* v_fm = verify->add_subcommand("flip-mutation", "flip vs QP-mutation over a flip graph");
  v_fm->add_option("--in", in_file, "triangulation JSON file");
  v_fm->add_option("--catalog", catalog_name, "built-in triangulation name");
  v_fm->add_option("--epsilon", eps_text, "sign overrides");
  v_fm->add_option("--weights", weights_text, "puncture weights");
  v_fm->add_option("--max-nodes", max_nodes, "node budget");
  v_fm->add_option("--max-degree", max_degree, "rewriting degree bound");
  v_fm->add_option("--jobs", jobs, "parallel edge verification");
  auto* v_hex = verify->add_subcommand("hexagon-example", "the three-punctured hexagon data");
  auto* v_fg = verify->add_subcommand("thm-fg-consistency",
                                      "cluster F/g against the representation route");
  v_fg->add_option("--matrix", matrix_file, "square exchange matrix JSON (default A3)");
  for (auto* cmd : {v_fm, v_hex, v_fg}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_validate->parsed()) {
      IdealTriangulation t = load_surface(in_file, catalog_name);
      emit(json{{"diagnostics", t.validate()}, {"valid", t.valid()}, {"rank", t.spec().rank()}},
           format);
      return t.valid() ? kExitOk : kExitCheckFailed;
    }
    if (s_flip->parsed()) {
      if (tagged) {
        TaggedTriangulation t = load_tagged(in_file, catalog_name, eps_text);
        emit(io::to_json(t.flip(arc)), format);
      } else {
        IdealTriangulation t = load_surface(in_file, catalog_name);
        emit(io::to_json(t.flip(arc)), format);
      }
      return kExitOk;
    }
    if (s_graph->parsed()) {
      TaggedTriangulation t = load_tagged(in_file, catalog_name, eps_text);
      FlipGraph g = enumerate_flip_graph(t, max_nodes);
      json degrees = json::array();
      for (size_t i = 0; i < g.nodes.size(); ++i) degrees.push_back(g.degree(int(i)));
      emit(json{{"nodes", g.nodes.size()}, {"degrees", degrees}}, format);
      return kExitOk;
    }

    if (q_build->parsed()) {
      SurfaceQuivers q = build_quivers(load_surface(in_file, catalog_name));
      emit(json{{"quiver", io::to_json(q.reduced)},
                {"unreduced", io::to_json(q.unreduced)},
                {"matrix", io::to_json(q.b)},
                {"vertex_order", q.vertex_order}},
           format);
      return kExitOk;
    }
    if (q_mutate->parsed()) {
      Quiver q = io::quiver_from_json(read_json_file(in_file));
      emit(io::to_json(mutate_quiver(q, q.vertex(arc))), format);
      return kExitOk;
    }
    if (q_dot->parsed()) {
      std::cout << io::quiver_from_json(read_json_file(in_file)).dot();
      return kExitOk;
    }

    if (qp_pot->parsed()) {
      TaggedTriangulation t = load_tagged(in_file, catalog_name, eps_text);
      SurfacePotential sp = potential_of_tagged(t, parse_weights(t.base(), weights_text));
      emit(json{{"unreduced", io::to_json(sp.unreduced)}, {"reduced", io::to_json(sp.reduced)}},
           format);
      return kExitOk;
    }
    if (qp_mut->parsed()) {
      QP p = io::qp_from_json(read_json_file(qp_file));
      QPMutation mu = mutate_qp(p, p.quiver().vertex(arc));
      emit(json{{"premutated", io::to_json(mu.premut.qp)},
                {"result", io::to_json(mu.result())},
                {"trivial", io::to_json(mu.splitting.trivial)},
                {"witness", io::to_json(mu.splitting.witness)}},
           format);
      return kExitOk;
    }
    if (qp_jac->parsed()) {
      QP p = io::qp_from_json(read_json_file(qp_file));
      JacobianSummary s = jacobian_dim(p, max_degree);
      emit(io::to_json(s, verbose, &p.quiver()), format);
      return kExitOk;
    }
    if (qp_adm->parsed()) {
      QP p = io::qp_from_json(read_json_file(qp_file));
      AdmissibilityReport rep = check_admissibility(p, max_degree);
      json j = io::to_json(rep.summary, verbose, &p.quiver());
      j["admissibility"] = rep.status;
      j["nondegeneracy"] = rep.nondegeneracy_note;
      emit(j, format);
      return rep.holds ? kExitOk : kExitCheckFailed;
    }

    if (r_mut->parsed() || r_g->parsed() || r_e->parsed() || r_f->parsed()) {
      QP p = io::qp_from_json(read_json_file(qp_file));
      DecoratedRep m = io::rep_from_json(p, read_json_file(rep_file));
      if (r_mut->parsed()) {
        DecoratedRep out = mutate_rep(m, p.quiver().vertex(arc));
        emit(json{{"qp", io::to_json(out.qp())}, {"rep", io::to_json(out)}}, format);
      } else if (r_g->parsed()) {
        emit(json{{"g", g_vector(m)}}, format);
      } else if (r_e->parsed()) {
        if (rep2_file.empty()) {
          emit(json{{"E", e_invariant(m)}}, format);
        } else {
          DecoratedRep n = io::rep_from_json(p, read_json_file(rep2_file));
          emit(json{{"E_inj", e_inj(m, n)}}, format);
        }
      } else {
        emit(json{{"F", f_polynomial_thin(m).to_string()}}, format);
      }
      return kExitOk;
    }

    if (c_mut->parsed()) {
      Seed s = mutate_seed_along(
          initial_seed(io::matrix_from_json(read_json_file(matrix_file))), parse_word(word_text));
      emit(io::to_json(s), format);
      return kExitOk;
    }
    if (c_exp->parsed()) {
      ExchangeMatrix b = io::matrix_from_json(read_json_file(matrix_file));
      Seed s = mutate_seed_along(initial_seed(b), parse_word(word_text));
      LaurentPoly e = io::laurent_from_string(b.rows(), element_text);
      emit(json{{"expansion", expand_in_cluster(s, e).to_string()}}, format);
      return kExitOk;
    }
    if (c_fg->parsed()) {
      ExchangeMatrix b = io::matrix_from_json(read_json_file(matrix_file));
      PrincipalFG fg = principal_fg(b, parse_word(word_text), vertex_k - 1);
      emit(json{{"F", fg.f.to_string()}, {"g", fg.g}}, format);
      return kExitOk;
    }
    if (c_vl->parsed()) {
      ExchangeMatrix b = io::matrix_from_json(read_json_file(matrix_file));
      SeedPattern pat = enumerate_seeds(b, max_nodes);
      emit(json{{"seeds", pat.seeds.size()}, {"laurent_violations", 0}}, format);
      return kExitOk;
    }
    if (c_vi->parsed() || c_dec->parsed()) {
      ExchangeMatrix b = io::matrix_from_json(read_json_file(matrix_file));
      SeedPattern pat = enumerate_seeds(b, max_nodes);
      std::map<std::string, LaurentPoly> monomials;
      for (const Seed& s : pat.seeds)
        for (const auto& shape : monomial_shapes(b.cols(), degree_cap)) {
          LaurentPoly m = cluster_monomial(s, shape);
          monomials.emplace(m.to_string(), m);
        }
      std::vector<LaurentPoly> dict;
      for (const auto& [k, m] : monomials) dict.push_back(m);
      if (c_vi->parsed()) {
        RankReport rep = independence_check(dict);
        emit(json{{"monomials", dict.size()}, {"rank", rep.rank}, {"full_rank", rep.full_rank}},
             format);
        return rep.full_rank ? kExitOk : kExitCheckFailed;
      }
      LaurentPoly e = io::laurent_from_string(b.rows(), element_text);
      Decomposition d = positive_decomposition(e, dict);
      json coefs = json::array();
      for (size_t i = 0; i < dict.size(); ++i)
        if (d.coefficients[i] != 0)
          coefs.push_back(json{{"monomial", dict[i].to_string()},
                               {"coefficient", to_string(d.coefficients[i])}});
      emit(json{{"coefficients", coefs}, {"all_nonnegative", d.all_nonnegative}}, format);
      return d.all_nonnegative ? kExitOk : kExitCheckFailed;
    }

    if (v_fm->parsed()) {
      TaggedTriangulation t = load_tagged(in_file, catalog_name, eps_text);
      PunctureWeights w = parse_weights(t.base(), weights_text);
      FlipGraph g = enumerate_flip_graph(t, max_nodes);
      struct Edge {
        int node;
        std::string arc;
      };
      std::vector<Edge> edges;
      for (size_t i = 0; i < g.nodes.size(); ++i)
        for (const auto& [a, target] : g.edges[i])
          if (int(i) <= target) edges.push_back({int(i), a});
      auto run_edge = [&](const Edge& e) {
        return verify_flip_mutation(g.nodes[e.node], e.arc, w, max_degree);
      };
      std::vector<FlipMutationReport> reports(edges.size());
      if (jobs > 1) {
        std::vector<std::future<FlipMutationReport>> futs;
        for (const Edge& e : edges) futs.push_back(std::async(std::launch::async, run_edge, e));
        for (size_t i = 0; i < futs.size(); ++i) reports[i] = futs[i].get();
      } else {
        for (size_t i = 0; i < edges.size(); ++i) reports[i] = run_edge(edges[i]);
      }
      bool all_ok = true;
      json out = json::array();
      for (size_t i = 0; i < edges.size(); ++i) {
        const auto& r = reports[i];
        all_ok &= r.quiver_ok && r.jacobian_ok;
        out.push_back(json{{"node", edges[i].node},
                           {"arc", edges[i].arc},
                           {"quiver_ok", r.quiver_ok},
                           {"jacobian_ok", r.jacobian_ok},
                           {"requiv", r.requiv}});
      }
      emit(json{{"nodes", g.nodes.size()}, {"edges", out}}, format);
      return all_ok ? kExitOk : kExitCheckFailed;
    }
    if (v_hex->parsed()) {
      IdealTriangulation hex = catalog::three_punctured_hexagon();
      PunctureWeights w{{"p1", 2}, {"p2", 3}, {"p3", 5}};
      TaggedTriangulation tau(hex, {{"p1", 1}, {"p2", 1}, {"p3", 1}});
      TaggedTriangulation sigma = tau.flip("a4");
      SurfacePotential pt = potential_of_tagged(tau, w);
      SurfacePotential ps = potential_of_tagged(sigma, w);
      QPMutation mu = mutate_qp(pt.reduced, pt.reduced.quiver().vertex("a4"));
      const Quiver& qm = mu.result().quiver();
      const Quiver& qs = ps.reduced.quiver();
      Substitution phi(&qs, &qm);
      Rat x1 = 2, x2 = 3, x3 = 5;
      phi.set_image("t2c0", AlgebraElement::arrow(qm, qm.arrow_index("t2c0")) * Rat(-1));
      Path corr;
      for (const char* id : {"t4c0", "t5c0", "t6c0", "t3c0", "t3c1", "t7c0", "t8c0", "t9c0"})
        corr.arrows.push_back(qm.arrow_index(id));
      phi.set_image("t2c1", AlgebraElement::arrow(qm, qm.arrow_index("t2c1")) * Rat(-1) -
                                AlgebraElement::path(qm, corr) * (x1 * x2 * x3));
      phi.set_image("t0c2", AlgebraElement::arrow(qm, qm.arrow_index("t1c0h*")) * (-x2));
      phi.set_image("t1c1", AlgebraElement::arrow(qm, qm.arrow_index("t1c2")) * x2);
      phi.set_image("t1c0", AlgebraElement::arrow(qm, qm.arrow_index("t1c2t*")));
      phi.set_image("t0c1", AlgebraElement::arrow(qm, qm.arrow_index("t1c0")));
      bool ok = verify_right_equivalence(phi, ps.reduced, mu.result());
      emit(json{{"potential_tau", to_string(pt.reduced.potential())},
                {"potential_sigma", to_string(ps.reduced.potential())},
                {"mutated_potential", to_string(mu.result().potential())},
                {"right_equivalence_certified", ok}},
           format);
      return ok ? kExitOk : kExitCheckFailed;
    }
    if (v_fg->parsed()) {
      ExchangeMatrix b =
          matrix_file.empty() ? type_a3() : io::matrix_from_json(read_json_file(matrix_file));
      QP qp = QP::make(quiver_of_matrix(b), AlgebraElement());
      qp = QP(qp.quiver_ptr(), AlgebraElement(&qp.quiver()), {});
      SeedPattern pat = enumerate_seeds(b, 1000);
      int checked = 0;
      bool ok = true;
      for (const Seed& s : pat.seeds)
        for (int k = 0; k < b.cols(); ++k) {
          PrincipalFG fg = principal_fg(b, s.path, k);
          std::vector<QP> chain{qp};
          for (int i : s.path) chain.push_back(mutate_qp(chain.back(), i).result());
          DecoratedRep rep = DecoratedRep::negative_simple(chain.back(), k);
          for (auto it = s.path.rbegin(); it != s.path.rend(); ++it)
            rep = mutate_rep(rep, *it);
          ok &= f_polynomial_thin(rep) == fg.f && g_vector(rep) == fg.g;
          ++checked;
        }
      emit(json{{"variables_checked", checked}, {"consistent", ok}}, format);
      return ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == errc::budget_exceeded) return kExitBudget;
    if (e.code() == errc::laurent_violation || e.code() == errc::not_in_span)
      return kExitCheckFailed;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
