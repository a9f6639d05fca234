#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qpsl/rational.hpp"

namespace qpsl {

/// Sparse Laurent polynomial with integer coefficients: finite map from
/// exponent vectors to nonzero coefficients.
class LaurentPoly {
public:
  using Exp = std::vector<int>;

  LaurentPoly() = default;
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, Int c) {
    LaurentPoly p(nvars);
    p.add_term(Exp(nvars, 0), std::move(c));
    return p;
  }
  static LaurentPoly variable(int nvars, int i) {
    LaurentPoly p(nvars);
    Exp e(nvars, 0);
    e[i] = 1;
    p.add_term(std::move(e), 1);
    return p;
  }
  static LaurentPoly monomial(Exp e, Int c = 1) {
    LaurentPoly p(int(e.size()));
    p.add_term(std::move(e), std::move(c));
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int num_terms() const { return int(terms_.size()); }
  const std::map<Exp, Int>& terms() const { return terms_; }

  Int coefficient(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_term(Exp e, Int c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
  }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exp e = e1;
        for (int i = 0; i < nvars_; ++i) e[i] += e2[i];
        r.add_term(std::move(e), c1 * c2);
      }
    return r;
  }
  LaurentPoly operator*(const Int& c) const {
    LaurentPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
  }
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

  LaurentPoly shifted(const Exp& by) const {
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exp s = e;
      for (int i = 0; i < nvars_; ++i) s[i] += by[i];
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  LaurentPoly pow(int k) const {
    require(k >= 0, errc::invalid_input, "negative power of a polynomial");
    LaurentPoly r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  Exp min_exponents() const {
    Exp m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first) {
        m = e;
        first = false;
      } else {
        for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
      }
    }
    return m;
  }

  /// Exact division; nullopt when the quotient is not a Laurent polynomial.
  std::optional<LaurentPoly> exact_div(const LaurentPoly& q) const {
    require(!q.is_zero(), errc::invalid_input, "division by zero polynomial");
    if (is_zero()) return LaurentPoly(nvars_);
    // normalize both to plain polynomials
    Exp mp = min_exponents(), mq = q.min_exponents();
    Exp neg_mp = mp, neg_mq = mq;
    for (int i = 0; i < nvars_; ++i) {
      neg_mp[i] = -mp[i];
      neg_mq[i] = -mq[i];
    }
    LaurentPoly p_hat = shifted(neg_mp);
    LaurentPoly q_hat = q.shifted(neg_mq);
    // greedy reduction by the lex-leading term of q_hat
    const auto& qlead = *q_hat.terms_.rbegin();
    LaurentPoly quot(nvars_);
    LaurentPoly rem = p_hat;
    while (!rem.is_zero()) {
      const auto& plead = *rem.terms_.rbegin();
      Exp diff(nvars_);
      for (int i = 0; i < nvars_; ++i) {
        diff[i] = plead.first[i] - qlead.first[i];
        if (diff[i] < 0) return std::nullopt;
      }
      if (plead.second % qlead.second != 0) return std::nullopt;
      Int c = plead.second / qlead.second;
      quot.add_term(diff, c);
      rem -= q_hat.shifted(diff) * c;
    }
    // undo the normalization: result = quot * x^(mp - mq)
    Exp back(nvars_);
    for (int i = 0; i < nvars_; ++i) back[i] = mp[i] - mq[i];
    return quot.shifted(back);
  }

  /// Substitute a Laurent monomial for each variable.
  LaurentPoly eval_monomials(const std::vector<Exp>& images, int out_nvars) const {
    LaurentPoly r(out_nvars);
    for (const auto& [e, c] : terms_) {
      Exp out(out_nvars, 0);
      for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < out_nvars; ++j) out[j] += e[i] * images[i][j];
      r.add_term(std::move(out), c);
    }
    return r;
  }

  std::string to_string(const std::string& var_prefix = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Int mag = c < 0 ? Int(-c) : c;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      std::string body;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!body.empty()) body += "*";
        body += var_prefix + std::to_string(i + 1);
        if (e[i] != 1) body += "^" + std::to_string(e[i]);
      }
      if (body.empty()) {
        os << mag.str();
      } else if (mag == 1) {
        os << body;
      } else {
        os << mag.str() << "*" << body;
      }
    }
    return os.str();
  }

private:
  int nvars_ = 0;
  std::map<Exp, Int> terms_;
};

inline std::string to_string(const LaurentPoly& p) { return p.to_string(); }

} // namespace qpsl
