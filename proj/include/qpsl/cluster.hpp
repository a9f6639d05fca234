#pragma once

#include <deque>
#include <set>

#include "qpsl/laurent.hpp"
#include "qpsl/matrix.hpp"
#include "qpsl/quiver.hpp"

namespace qpsl {

/// Seed of a cluster pattern of geometric type: extended exchange matrix and
/// the cluster variables as exact Laurent polynomials in the initial
/// variables x1..x(n+r). The mutation word from the initial seed is kept so
/// that cross-cluster expansions can invert the path.
struct Seed {
  ExchangeMatrix b; // (n+r) x n
  std::vector<LaurentPoly> cluster;
  std::vector<int> path;

  int n() const { return b.cols(); }
  int total_vars() const { return b.rows(); }

  /// Canonical key of the unordered cluster.
  std::string key() const {
    std::vector<std::string> parts;
    for (const auto& v : cluster) parts.push_back(v.to_string());
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + " | ";
    return out;
  }
};

inline Seed initial_seed(const ExchangeMatrix& b) {
  require(b.top_block_skew_symmetric(), errc::invalid_input,
          "exchange matrix must be skew-symmetric on top");
  Seed s{b, {}, {}};
  for (int i = 0; i < b.cols(); ++i) s.cluster.push_back(LaurentPoly::variable(b.rows(), i));
  return s;
}

/// Seed mutation: the matrix by the standard rule on all rows, the variable
/// by the exchange binomial with exact Laurent division. A failed division
/// would falsify the Laurent phenomenon and aborts loudly.
inline Seed mutate_seed(const Seed& s, int dir) {
  int n = s.n(), m = s.total_vars();
  require(dir >= 0 && dir < n, errc::invalid_input, "mutation index out of range");
  Seed out{s.b.mutated(dir), s.cluster, s.path};
  LaurentPoly plus = LaurentPoly::constant(m, 1), minus = LaurentPoly::constant(m, 1);
  for (int j = 0; j < m; ++j) {
    long long bji = s.b(j, dir);
    const LaurentPoly base =
        j < n ? s.cluster[j] : LaurentPoly::variable(m, j);
    if (bji > 0) plus = plus * base.pow(int(bji));
    if (bji < 0) minus = minus * base.pow(int(-bji));
  }
  auto quot = (plus + minus).exact_div(s.cluster[dir]);
  require(quot.has_value(), errc::laurent_violation,
          "exchange division is not exact: Laurent phenomenon violated");
  out.cluster[dir] = *quot;
  if (!out.path.empty() && out.path.back() == dir)
    out.path.pop_back();
  else
    out.path.push_back(dir);
  return out;
}

inline Seed mutate_seed_along(Seed s, const std::vector<int>& word) {
  for (int i : word) s = mutate_seed(s, i);
  return s;
}

// ---------------------------------------------------------------------------
// Principal coefficients: F-polynomials and g-vectors.

struct PrincipalFG {
  LaurentPoly f;              // polynomial in the n coefficient variables
  std::vector<long long> g;   // multidegree under the principal grading
};

/// Extend an n x n exchange matrix by an identity block (principal
/// coefficients at the initial seed).
inline ExchangeMatrix with_principal_coefficients(const ExchangeMatrix& b) {
  require(b.rows() == b.cols(), errc::invalid_input, "square exchange matrix expected");
  int n = b.cols();
  ExchangeMatrix p(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = b(i, j);
  for (int i = 0; i < n; ++i) p(n + i, i) = 1;
  return p;
}

/// Run the principal-coefficient pattern along the word and return the k-th
/// variable's F-polynomial (specialize the cluster variables to 1) and its
/// g-vector (the common multidegree, checked for homogeneity).
inline PrincipalFG principal_fg(const ExchangeMatrix& b, const std::vector<int>& word, int k) {
  int n = b.cols();
  Seed s = mutate_seed_along(initial_seed(with_principal_coefficients(b)), word);
  const LaurentPoly& x = s.cluster.at(k);
  PrincipalFG out;
  out.f = LaurentPoly(n);
  bool have_g = false;
  for (const auto& [e, c] : x.terms()) {
    LaurentPoly::Exp ye(n, 0);
    std::vector<long long> deg(n, 0);
    for (int i = 0; i < n; ++i) deg[i] += e[i];
    for (int l = 0; l < n; ++l) {
      int d = e[n + l];
      require(d >= 0, errc::internal, "principal coefficient with negative exponent");
      ye[l] = d;
      for (int i = 0; i < n; ++i) deg[i] -= d * b(i, l);
    }
    out.f.add_term(std::move(ye), c);
    if (!have_g) {
      out.g = deg;
      have_g = true;
    } else {
      require(out.g == deg, errc::non_homogeneous,
              "principal cluster variable is not homogeneous");
    }
  }
  return out;
}

/// Check the separation-of-additions formula: the directly mutated variable
/// against F(hat y) divided by the tropical evaluation times the g-monomial.
inline bool separation_check(const ExchangeMatrix& b_ext, const std::vector<int>& word, int k) {
  int n = b_ext.cols(), m = b_ext.rows();
  Seed direct = mutate_seed_along(initial_seed(b_ext), word);
  ExchangeMatrix top(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) top(i, j) = b_ext(i, j);
  PrincipalFG fg = principal_fg(top, word, k);

  // hat y_j = the j-th column of the extended matrix as a monomial
  std::vector<LaurentPoly::Exp> hat(n, LaurentPoly::Exp(m, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) hat[j][i] = int(b_ext(i, j));
  LaurentPoly numerator = fg.f.eval_monomials(hat, m);

  // tropical evaluation of F at the coefficient tuple y_j (frozen rows only)
  LaurentPoly::Exp trop(m, 0);
  bool first = true;
  for (const auto& [e, c] : fg.f.terms()) {
    LaurentPoly::Exp cur(m, 0);
    for (int j = 0; j < n; ++j)
      for (int i = n; i < m; ++i) cur[i] += e[j] * int(b_ext(i, j));
    if (first) {
      trop = cur;
      first = false;
    } else {
      for (int i = 0; i < m; ++i) trop[i] = std::min(trop[i], cur[i]);
    }
  }
  LaurentPoly::Exp shift(m, 0);
  for (int i = 0; i < m; ++i) shift[i] = -trop[i];
  for (int i = 0; i < n; ++i) shift[i] += int(fg.g[i]);
  LaurentPoly rhs = numerator.shifted(shift);
  return rhs == direct.cluster.at(k);
}

// ---------------------------------------------------------------------------
// Cross-cluster expansion.

/// Laurent expansion of an element (given in initial coordinates) in the
/// coordinates of the given seed's cluster: mutate a fresh pattern backwards
/// along the seed's path to express the initial variables, then substitute
/// with exact division throughout.
inline LaurentPoly expand_in_cluster(const Seed& seed, const LaurentPoly& element) {
  int n = seed.n(), m = seed.total_vars();
  Seed inverse = initial_seed(seed.b);
  inverse.path.clear();
  for (auto it = seed.path.rbegin(); it != seed.path.rend(); ++it)
    inverse = mutate_seed(inverse, *it);
  // inverse.cluster[i] now expresses the initial x_i in the seed coordinates
  LaurentPoly::Exp need(n, 0);
  for (const auto& [e, c] : element.terms())
    for (int i = 0; i < n; ++i) need[i] = std::max(need[i], -e[i]);
  LaurentPoly den = LaurentPoly::constant(m, 1);
  for (int i = 0; i < n; ++i) den = den * inverse.cluster[i].pow(need[i]);
  LaurentPoly num(m);
  for (const auto& [e, c] : element.terms()) {
    LaurentPoly t = LaurentPoly::constant(m, c);
    LaurentPoly::Exp frozen(m, 0);
    for (int i = n; i < m; ++i) frozen[i] = e[i];
    t = t.shifted(frozen);
    for (int i = 0; i < n; ++i) t = t * inverse.cluster[i].pow(e[i] + need[i]);
    num += t;
  }
  auto quot = num.exact_div(den);
  require(quot.has_value(), errc::laurent_violation,
          "cross-cluster expansion is not Laurent");
  return *quot;
}

/// A cluster monomial of the seed, expanded in initial coordinates.
inline LaurentPoly cluster_monomial(const Seed& seed, const std::vector<int>& exponents) {
  LaurentPoly out = LaurentPoly::constant(seed.total_vars(), 1);
  for (int i = 0; i < seed.n(); ++i) {
    require(exponents[i] >= 0, errc::invalid_input, "cluster monomials use nonneg exponents");
    out = out * seed.cluster[i].pow(exponents[i]);
  }
  return out;
}

/// Every support monomial must carry a negative exponent among the first n
/// coordinates once expanded in the source cluster.
inline bool proper_laurent_check(const Seed& s_from, const Seed& s_to,
                                 const std::vector<int>& exponents) {
  int n = s_from.n();
  std::set<std::string> from_vars;
  for (const auto& v : s_from.cluster) from_vars.insert(v.to_string());
  bool uses_new = false;
  for (int i = 0; i < s_to.n(); ++i)
    if (exponents[i] > 0 && !from_vars.count(s_to.cluster[i].to_string())) uses_new = true;
  require(uses_new, errc::precondition_violation,
          "monomial uses no variable outside the source cluster");
  LaurentPoly monomial = cluster_monomial(s_to, exponents);
  LaurentPoly expanded = expand_in_cluster(s_from, monomial);
  for (const auto& [e, c] : expanded.terms()) {
    bool negative = false;
    for (int i = 0; i < n; ++i) negative |= e[i] < 0;
    if (!negative) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Linear independence and positive decompositions.

struct RankReport {
  int rank = 0;
  bool full_rank = false;
  std::vector<Rat> kernel_vector; // nonzero witness when rank-deficient
};

inline RankReport independence_check(const std::vector<LaurentPoly>& expansions) {
  std::map<LaurentPoly::Exp, int> support;
  for (const auto& p : expansions)
    for (const auto& [e, c] : p.terms()) support.emplace(e, int(support.size()));
  Mat m(int(support.size()), int(expansions.size()));
  for (size_t j = 0; j < expansions.size(); ++j)
    for (const auto& [e, c] : expansions[j].terms()) m(support.at(e), int(j)) = Rat(c);
  RankReport rep;
  rep.rank = m.rank();
  rep.full_rank = rep.rank == int(expansions.size());
  if (!rep.full_rank) {
    Mat ker = m.kernel();
    rep.kernel_vector.resize(expansions.size());
    for (size_t i = 0; i < expansions.size(); ++i) rep.kernel_vector[i] = ker(int(i), 0);
  }
  return rep;
}

struct Decomposition {
  std::vector<Rat> coefficients;
  bool all_nonnegative = false;
};

inline Decomposition positive_decomposition(const LaurentPoly& element,
                                            const std::vector<LaurentPoly>& dictionary) {
  std::map<LaurentPoly::Exp, int> support;
  for (const auto& p : dictionary)
    for (const auto& [e, c] : p.terms()) support.emplace(e, int(support.size()));
  for (const auto& [e, c] : element.terms())
    require(support.count(e), errc::not_in_span, "element support leaves the dictionary span");
  Mat m(int(support.size()), int(dictionary.size()));
  for (size_t j = 0; j < dictionary.size(); ++j)
    for (const auto& [e, c] : dictionary[j].terms()) m(support.at(e), int(j)) = Rat(c);
  Mat rhs(int(support.size()), 1);
  for (const auto& [e, c] : element.terms()) rhs(support.at(e), 0) = Rat(c);
  auto sol = m.solve(rhs);
  require(sol.has_value(), errc::not_in_span, "element is not in the dictionary span");
  Decomposition d;
  d.all_nonnegative = true;
  for (size_t j = 0; j < dictionary.size(); ++j) {
    d.coefficients.push_back((*sol)(int(j), 0));
    if (d.coefficients.back() < 0) d.all_nonnegative = false;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Pattern enumeration.

struct SeedPattern {
  std::vector<Seed> seeds; // one per unordered cluster
  bool complete = false;
};

/// Breadth-first enumeration of the seed pattern, deduplicating by the
/// unordered cluster. Throws when the cap is hit before closure.
inline SeedPattern enumerate_seeds(const ExchangeMatrix& b_ext, int max_seeds) {
  SeedPattern out;
  std::set<std::string> seen;
  std::deque<int> queue;
  out.seeds.push_back(initial_seed(b_ext));
  seen.insert(out.seeds[0].key());
  queue.push_back(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < b_ext.cols(); ++i) {
      Seed next = mutate_seed(out.seeds[cur], i);
      if (seen.count(next.key())) continue;
      require(int(out.seeds.size()) < max_seeds, errc::budget_exceeded,
              "seed enumeration exceeds the cap");
      seen.insert(next.key());
      out.seeds.push_back(std::move(next));
      queue.push_back(int(out.seeds.size()) - 1);
    }
  }
  out.complete = true;
  return out;
}

/// Standard small exchange matrices.
inline ExchangeMatrix type_a2() {
  ExchangeMatrix b(2, 2);
  b(0, 1) = 1;
  b(1, 0) = -1;
  return b;
}

inline ExchangeMatrix type_a3() {
  ExchangeMatrix b(3, 3);
  b(1, 0) = 1;
  b(0, 1) = -1;
  b(2, 1) = 1;
  b(1, 2) = -1;
  return b;
}

} // namespace qpsl
