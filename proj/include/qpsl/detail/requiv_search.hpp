#pragma once

// Best-effort search for a change-of-arrows right-equivalence: an arrow
// bijection respecting endpoints composed with per-arrow rescaling. The
// scalar system is solved prime by prime in exponent space.

#include <functional>

#include "qpsl/qp.hpp"

namespace qpsl::detail {

inline std::map<Int, int> factor_integer(Int n) {
  std::map<Int, int> f;
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n && p < 100000; ++p)
    while (n % p == 0) {
      f[p] += 1;
      n /= p;
    }
  if (n > 1) f[n] += 1;
  return f;
}

inline std::map<Int, int> factor_rational(const Rat& r) {
  std::map<Int, int> f = factor_integer(numerator(r));
  for (const auto& [p, e] : factor_integer(denominator(r))) f[p] -= e;
  return f;
}

inline bool solve_gf2(std::vector<std::vector<int>> rows, std::vector<int> rhs,
                      std::vector<int>& x, int nvars) {
  x.assign(nvars, 0);
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < nvars && rank < int(rows.size()); ++col) {
    int p = -1;
    for (int i = rank; i < int(rows.size()); ++i)
      if (rows[i][col]) { p = i; break; }
    if (p < 0) continue;
    std::swap(rows[p], rows[rank]);
    std::swap(rhs[p], rhs[rank]);
    for (int i = 0; i < int(rows.size()); ++i) {
      if (i == rank || !rows[i][col]) continue;
      for (int j = 0; j < nvars; ++j) rows[i][j] ^= rows[rank][j];
      rhs[i] ^= rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int i = rank; i < int(rows.size()); ++i)
    if (rhs[i]) return false;
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = rhs[i];
  return true;
}

inline bool find_diagonal_right_equivalence(const QP& from, const QP& to, Substitution& out) {
  const Quiver& qf = from.quiver();
  const Quiver& qt = to.quiver();
  if (qf.num_vertices() != qt.num_vertices() || qf.num_arrows() != qt.num_arrows()) return false;
  for (int v = 0; v < qf.num_vertices(); ++v)
    if (!qt.has_vertex(qf.vertex_label(v))) return false;

  // group arrows by endpoint labels
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<int>, std::vector<int>>>
      groups;
  for (int a = 0; a < qf.num_arrows(); ++a)
    groups[{qf.vertex_label(qf.arrow(a).tail), qf.vertex_label(qf.arrow(a).head)}]
        .first.push_back(a);
  for (int a = 0; a < qt.num_arrows(); ++a)
    groups[{qt.vertex_label(qt.arrow(a).tail), qt.vertex_label(qt.arrow(a).head)}]
        .second.push_back(a);
  long long combos = 1;
  for (const auto& [key, g] : groups) {
    if (g.first.size() != g.second.size()) return false;
    for (size_t k = 2; k <= g.first.size(); ++k) combos *= static_cast<long long>(k);
    if (combos > 5000) return false;
  }

  AlgebraElement sf = cyclic_normal_form(from.potential());
  AlgebraElement st = cyclic_normal_form(to.potential());
  if (sf.num_terms() != st.num_terms()) return false;
  std::vector<int> tranks = qt.arrow_ranks();

  std::vector<std::pair<std::vector<int>, std::vector<int>>> group_list;
  for (auto& [key, g] : groups) group_list.push_back(g);

  std::vector<int> m(qf.num_arrows(), -1);
  std::function<bool(size_t)> try_group = [&](size_t gi) -> bool {
    if (gi == group_list.size()) {
      // map support cycles and set up the scalar system
      std::vector<std::pair<Path, Rat>> constraints; // mapped cycle, ratio
      for (const auto& [cyc, coef] : sf.terms()) {
        Path mapped;
        for (int a : cyc.arrows) mapped.arrows.push_back(m[a]);
        mapped = canonical_rotation(mapped, qt, tranks);
        Rat target = st.coefficient(mapped);
        if (target == 0) return false;
        constraints.push_back({cyc, target / coef});
      }
      // prime basis
      std::set<Int> primes;
      for (const auto& [cyc, ratio] : constraints)
        for (const auto& [p, e] : factor_rational(ratio)) primes.insert(p);
      // exponent system per prime over the rationals, sign system over GF(2)
      int nv = qf.num_arrows();
      std::map<int, std::vector<Rat>> exponents; // arrow -> exponent per prime
      std::vector<Int> prime_list(primes.begin(), primes.end());
      for (size_t pi = 0; pi < prime_list.size(); ++pi) {
        Mat A(int(constraints.size()), nv);
        Mat b(int(constraints.size()), 1);
        for (size_t ci = 0; ci < constraints.size(); ++ci) {
          for (int a : constraints[ci].first.arrows) A(int(ci), a) += 1;
          auto f = factor_rational(constraints[ci].second);
          auto it = f.find(prime_list[pi]);
          b(int(ci), 0) = (it == f.end()) ? 0 : it->second;
        }
        auto sol = A.solve(b);
        if (!sol) return false;
        for (int a = 0; a < nv; ++a) {
          const Rat& e = (*sol)(a, 0);
          if (denominator(e) != 1) return false;
          exponents[a].push_back(e);
        }
      }
      std::vector<std::vector<int>> srows;
      std::vector<int> srhs;
      for (const auto& [cyc, ratio] : constraints) {
        std::vector<int> row(nv, 0);
        for (int a : cyc.arrows) row[a] ^= 1;
        srows.push_back(row);
        srhs.push_back(ratio < 0 ? 1 : 0);
      }
      std::vector<int> signs;
      if (!solve_gf2(srows, srhs, signs, nv)) return false;

      Substitution phi(&qf, &qt);
      for (int a = 0; a < nv; ++a) {
        Rat lambda = signs[a] ? -1 : 1;
        if (auto it = exponents.find(a); it != exponents.end())
          for (size_t pi = 0; pi < prime_list.size(); ++pi) {
            Rat e = it->second[pi];
            Int k = numerator(e);
            for (Int i = 0; i < (k < 0 ? -k : k); ++i)
              lambda = k > 0 ? Rat(lambda * prime_list[pi]) : Rat(lambda / prime_list[pi]);
          }
        phi.set_image(qf.arrow(a).id, AlgebraElement::arrow(qt, m[a]) * lambda);
      }
      if (!verify_right_equivalence(phi, from, to)) return false;
      out = phi;
      return true;
    }
    auto& [fa, ta] = group_list[gi];
    std::vector<int> perm(ta);
    std::sort(perm.begin(), perm.end());
    do {
      for (size_t k = 0; k < fa.size(); ++k) m[fa[k]] = perm[k];
      if (try_group(gi + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return try_group(0);
}

} // namespace qpsl::detail
