#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qpsl/matrix.hpp"
#include "qpsl/quiver.hpp"
#include "qpsl/rational.hpp"

namespace qpsl {

/// A path in a quiver, composed like functions: in the arrow sequence
/// a1 a2 ... ad the rightmost arrow acts first, so t(a_j) = h(a_{j+1}).
/// Length-0 paths are the vertex idempotents e_v.
struct Path {
  std::vector<int> arrows;
  int base = -1; // vertex of e_v when arrows is empty

  int length() const { return int(arrows.size()); }
  bool empty() const { return arrows.empty(); }

  int head(const Quiver& q) const { return arrows.empty() ? base : q.arrow(arrows.front()).head; }
  int tail(const Quiver& q) const { return arrows.empty() ? base : q.arrow(arrows.back()).tail; }
  bool is_cycle(const Quiver& q) const { return !arrows.empty() && head(q) == tail(q); }

  bool composable(const Quiver& q) const {
    for (size_t j = 0; j + 1 < arrows.size(); ++j)
      if (q.arrow(arrows[j]).tail != q.arrow(arrows[j + 1]).head) return false;
    return true;
  }

  auto operator<=>(const Path&) const = default;

  static Path idempotent(int v) { return Path{{}, v}; }
  static Path of(std::vector<int> arrow_indices) { return Path{std::move(arrow_indices), -1}; }
};

/// Finite exact-rational linear combination of paths of one quiver.
class AlgebraElement {
public:
  AlgebraElement() = default;
  explicit AlgebraElement(const Quiver* q) : quiver_(q) {}

  static AlgebraElement zero(const Quiver& q) { return AlgebraElement(&q); }
  static AlgebraElement idempotent(const Quiver& q, int v) {
    AlgebraElement e(&q);
    e.add_term(Path::idempotent(v), 1);
    return e;
  }
  static AlgebraElement arrow(const Quiver& q, int a) {
    AlgebraElement e(&q);
    e.add_term(Path::of({a}), 1);
    return e;
  }
  static AlgebraElement path(const Quiver& q, Path p, Rat coef = 1) {
    AlgebraElement e(&q);
    e.add_term(std::move(p), std::move(coef));
    return e;
  }

  const Quiver& quiver() const {
    require(quiver_ != nullptr, errc::internal, "algebra element without quiver");
    return *quiver_;
  }
  const Quiver* quiver_ptr() const { return quiver_; }
  const std::map<Path, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int num_terms() const { return int(terms_.size()); }

  Rat coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(Path p, Rat c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(p), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }
  AlgebraElement operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    r += o;
    return r;
  }
  AlgebraElement operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    r -= o;
    return r;
  }
  AlgebraElement operator-() const { return *this * Rat(-1); }
  AlgebraElement operator*(const Rat& c) const {
    AlgebraElement r(quiver_);
    if (c == 0) return r;
    for (const auto& [p, k] : terms_) r.terms_[p] = k * c;
    return r;
  }

  /// Bilinear concatenation; incomposable junctions give zero.
  AlgebraElement operator*(const AlgebraElement& o) const {
    AlgebraElement r(quiver_);
    const Quiver& q = quiver();
    for (const auto& [pu, cu] : terms_)
      for (const auto& [pv, cv] : o.terms_) {
        if (pu.empty() && pv.empty()) {
          if (pu.base == pv.base) r.add_term(pu, cu * cv);
          continue;
        }
        if (pu.empty()) {
          if (pu.base == pv.head(q)) r.add_term(pv, cu * cv);
          continue;
        }
        if (pv.empty()) {
          if (pu.tail(q) == pv.base) r.add_term(pu, cu * cv);
          continue;
        }
        if (pu.tail(q) != pv.head(q)) continue;
        Path p = pu;
        p.arrows.insert(p.arrows.end(), pv.arrows.begin(), pv.arrows.end());
        r.add_term(std::move(p), cu * cv);
      }
    return r;
  }

  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }

  int max_path_length() const {
    int m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, p.length());
    return m;
  }
  int min_path_length() const {
    int m = terms_.empty() ? 0 : terms_.begin()->first.length();
    for (const auto& [p, c] : terms_) m = std::min(m, p.length());
    return m;
  }

  /// Keep only terms whose length satisfies the predicate.
  template <class Pred> AlgebraElement filtered(Pred pred) const {
    AlgebraElement r(quiver_);
    for (const auto& [p, c] : terms_)
      if (pred(p)) r.terms_.emplace(p, c);
    return r;
  }

private:
  const Quiver* quiver_ = nullptr;
  std::map<Path, Rat> terms_;
};

inline AlgebraElement operator*(const Rat& c, const AlgebraElement& e) { return e * c; }

// ---------------------------------------------------------------------------
// Canonical cyclic rotation and cyclic derivatives.

/// Rotation of a cyclic path that is lexicographically least with respect to
/// the global arrow order (lexicographic on arrow ids).
inline Path canonical_rotation(const Path& p, const Quiver& q, const std::vector<int>& rank) {
  if (p.length() <= 1) return p;
  require(p.is_cycle(q), errc::invalid_input, "canonical rotation needs a cyclic path");
  int d = p.length();
  auto rotation_less = [&](int s, int t) {
    for (int k = 0; k < d; ++k) {
      int a = rank[p.arrows[(s + k) % d]], b = rank[p.arrows[(t + k) % d]];
      if (a != b) return a < b;
    }
    return false;
  };
  int best = 0;
  for (int s = 1; s < d; ++s)
    if (rotation_less(s, best)) best = s;
  Path r = p;
  std::rotate(r.arrows.begin(), r.arrows.begin() + best, r.arrows.end());
  return r;
}

/// Merge rotation-equivalent cycles; the result is the canonical
/// representative of the cyclic-equivalence class.
inline AlgebraElement cyclic_normal_form(const AlgebraElement& s) {
  if (s.is_zero()) return s;
  const Quiver& q = s.quiver();
  std::vector<int> rank = q.arrow_ranks();
  AlgebraElement r(&q);
  for (const auto& [p, c] : s.terms()) r.add_term(canonical_rotation(p, q, rank), c);
  return r;
}

/// Sum over occurrences of the arrow in each cycle of the trailing-times-
/// leading remainder; invariant under cyclic equivalence.
inline AlgebraElement cyclic_derivative(const AlgebraElement& s, int arrow) {
  const Quiver& q = s.quiver();
  AlgebraElement r(&q);
  for (const auto& [p, c] : s.terms()) {
    require(p.is_cycle(q), errc::invalid_input, "cyclic derivative of a non-cycle");
    int d = p.length();
    for (int i = 0; i < d; ++i) {
      if (p.arrows[i] != arrow) continue;
      Path rem;
      rem.arrows.reserve(d - 1);
      for (int k = i + 1; k < d; ++k) rem.arrows.push_back(p.arrows[k]);
      for (int k = 0; k < i; ++k) rem.arrows.push_back(p.arrows[k]);
      if (rem.arrows.empty()) rem.base = q.arrow(arrow).tail;
      r.add_term(std::move(rem), c);
    }
  }
  return r;
}

/// A potential: element supported on cycles of positive length, stored in
/// canonical rotation per cycle.
inline bool is_potential(const AlgebraElement& s) {
  if (s.is_zero()) return true;
  const Quiver& q = s.quiver();
  for (const auto& [p, c] : s.terms())
    if (!p.is_cycle(q)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Substitutions (R-algebra homomorphisms given on arrows).

/// Map from arrows of one quiver to elements of another algebra on the same
/// vertex set. Arrows without an explicit image map to the arrow of the same
/// id in the target quiver.
class Substitution {
public:
  Substitution() = default;
  Substitution(const Quiver* from, const Quiver* to) : from_(from), to_(to) {}

  const Quiver& from() const { return *from_; }
  const Quiver& to() const { return *to_; }

  void set_image(const std::string& arrow_id, AlgebraElement img) {
    from_->arrow_index(arrow_id); // existence check
    images_[arrow_id] = std::move(img);
  }

  AlgebraElement image(int from_arrow) const {
    const Arrow& a = from_->arrow(from_arrow);
    auto it = images_.find(a.id);
    if (it != images_.end()) return it->second;
    require(to_->has_arrow(a.id), errc::invalid_input,
            "substitution has no image for arrow " + a.id);
    return AlgebraElement::arrow(*to_, to_->arrow_index(a.id));
  }

  /// Every image must be a combination of positive-length paths parallel to
  /// its arrow.
  void validate() const {
    for (int a = 0; a < from_->num_arrows(); ++a) {
      AlgebraElement img = image(a);
      const Arrow& ar = from_->arrow(a);
      for (const auto& [p, c] : img.terms()) {
        require(p.length() >= 1, errc::invalid_input,
                "substitution image of " + ar.id + " has a length-0 term");
        require(from_->vertex_label(ar.head) == to_->vertex_label(p.head(*to_)) &&
                    from_->vertex_label(ar.tail) == to_->vertex_label(p.tail(*to_)),
                errc::invalid_input, "substitution image of " + ar.id + " is not parallel");
      }
    }
  }

  const std::map<std::string, AlgebraElement>& explicit_images() const { return images_; }

private:
  const Quiver* from_ = nullptr;
  const Quiver* to_ = nullptr;
  std::map<std::string, AlgebraElement> images_;
};

/// Unique algebra-homomorphic extension of the substitution.
inline AlgebraElement substitute(const Substitution& phi, const AlgebraElement& u) {
  const Quiver& to = phi.to();
  AlgebraElement r(&to);
  for (const auto& [p, c] : u.terms()) {
    if (p.empty()) {
      int v = to.vertex(phi.from().vertex_label(p.base));
      r += AlgebraElement::idempotent(to, v) * c;
      continue;
    }
    AlgebraElement prod = phi.image(p.arrows[0]);
    for (size_t k = 1; k < p.arrows.size(); ++k) prod = prod * phi.image(p.arrows[k]);
    r += prod * c;
  }
  return r;
}

/// Compose substitutions: (f after g)(a) = f(g(a)); g: A -> B, f: B -> C.
inline Substitution compose(const Substitution& f, const Substitution& g) {
  Substitution r(&g.from(), &f.to());
  for (int a = 0; a < g.from().num_arrows(); ++a)
    r.set_image(g.from().arrow(a).id, substitute(f, g.image(a)));
  return r;
}

/// An R-algebra homomorphism between (complete) path algebras is an
/// isomorphism iff its linear part is bijective on every arrow span.
inline bool is_algebra_iso(const Substitution& phi) {
  const Quiver& from = phi.from();
  const Quiver& to = phi.to();
  if (from.num_vertices() != to.num_vertices()) return false;
  for (int v = 0; v < from.num_vertices(); ++v)
    if (!to.has_vertex(from.vertex_label(v))) return false;

  std::map<std::pair<std::string, std::string>, std::vector<int>> from_span, to_span;
  for (int a = 0; a < from.num_arrows(); ++a) {
    const Arrow& ar = from.arrow(a);
    from_span[{from.vertex_label(ar.tail), from.vertex_label(ar.head)}].push_back(a);
  }
  for (int a = 0; a < to.num_arrows(); ++a) {
    const Arrow& ar = to.arrow(a);
    to_span[{to.vertex_label(ar.tail), to.vertex_label(ar.head)}].push_back(a);
  }
  if (from_span.size() != to_span.size()) return false;
  for (const auto& [key, fa] : from_span) {
    auto it = to_span.find(key);
    if (it == to_span.end() || it->second.size() != fa.size()) return false;
    const std::vector<int>& ta = it->second;
    Mat m(int(ta.size()), int(fa.size()));
    for (size_t j = 0; j < fa.size(); ++j) {
      AlgebraElement img = phi.image(fa[j]);
      for (size_t i = 0; i < ta.size(); ++i) m(int(i), int(j)) = img.coefficient(Path::of({ta[i]}));
    }
    if (m.rank() != int(fa.size())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format: signed sum of "coef*a1.a2.a3" terms, "e_v" for idempotents.

inline std::string to_string(const AlgebraElement& e) {
  if (e.is_zero()) return "0";
  const Quiver& q = e.quiver();
  std::vector<int> rank = q.arrow_ranks();
  using Key = std::pair<std::vector<int>, int>;
  std::vector<std::pair<Key, const std::pair<const Path, Rat>*>> sorted;
  for (const auto& term : e.terms()) {
    std::vector<int> rk;
    for (int a : term.first.arrows) rk.push_back(rank[a]);
    sorted.push_back({{rk, term.first.base}, &term});
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.first.first.size() != b.first.first.size())
      return a.first.first.size() < b.first.first.size();
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, term] : sorted) {
    const auto& [p, c] = *term;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "- ";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string body;
    if (p.empty()) {
      body = "e_" + q.vertex_label(p.base);
    } else {
      for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) body += ".";
        body += q.arrow(p.arrows[i]).id;
      }
    }
    if (mag == 1)
      os << body;
    else
      os << to_string(mag) << "*" << body;
  }
  return os.str();
}

inline AlgebraElement parse_element(const Quiver& q, const std::string& text) {
  AlgebraElement r(&q);
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty() || s == "0") return r;
  size_t i = 0;
  while (i < s.size()) {
    Rat sign = 1;
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    require(!term.empty(), errc::parse_error, "empty term in element: " + text);
    Rat coef = sign;
    std::string paths = term;
    auto star = term.find('*');
    if (star != std::string::npos &&
        term.find_first_not_of("0123456789/", 0) >= star) {
      coef = sign * parse_rational(term.substr(0, star));
      paths = term.substr(star + 1);
    }
    Path p;
    if (paths.rfind("e_", 0) == 0) {
      p = Path::idempotent(q.vertex(paths.substr(2)));
    } else {
      size_t k = 0;
      while (k < paths.size()) {
        size_t dot = paths.find('.', k);
        std::string id = paths.substr(k, dot == std::string::npos ? std::string::npos : dot - k);
        p.arrows.push_back(q.arrow_index(id));
        if (dot == std::string::npos) break;
        k = dot + 1;
      }
      require(p.composable(q), errc::parse_error, "incomposable path in element: " + paths);
    }
    r.add_term(std::move(p), coef);
    i = j;
  }
  return r;
}

} // namespace qpsl
