#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfock/rational.hpp"

namespace qfock {

/// One Gram indeterminate g_{i,j}; always stored with i < j.
using GramFactor = std::pair<int, int>;

inline GramFactor make_gram_factor(int i, int j) {
  if (i == j) throw std::invalid_argument("gram factor needs distinct indices");
  if (i <= 0 || j <= 0) throw std::invalid_argument("gram indices are 1-based");
  return i < j ? GramFactor{i, j} : GramFactor{j, i};
}

/// A power product q^a * g_{i1,j1} * g_{i2,j2} * ... with the Gram factors
/// kept as a sorted multiset. Ordering is graded lexicographic: total degree
/// first, then q-degree, then the factor list.
struct Monomial {
  int q_exp = 0;
  std::vector<GramFactor> gram;

  Monomial() = default;
  Monomial(int q_exponent, std::vector<GramFactor> factors)
      : q_exp(q_exponent), gram(std::move(factors)) {
    if (q_exp < 0) throw std::invalid_argument("negative q exponent");
    for (const auto& [i, j] : gram) {
      if (i >= j || i <= 0)
        throw std::invalid_argument("gram factor indices must satisfy 0<i<j");
    }
    std::sort(gram.begin(), gram.end());
  }

  std::size_t degree() const { return gram.size() + std::size_t(q_exp); }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.q_exp == b.q_exp && a.gram == b.gram;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.q_exp != b.q_exp) return a.q_exp < b.q_exp;
    return a.gram < b.gram;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial out;
    out.q_exp = q_exp + other.q_exp;
    out.gram.reserve(gram.size() + other.gram.size());
    std::merge(gram.begin(), gram.end(), other.gram.begin(), other.gram.end(),
               std::back_inserter(out.gram));
    return out;
  }
};

/// Exact sparse polynomial in q and the Gram indeterminates, with Rational
/// coefficients. Zero terms are never stored; term iteration follows the
/// graded-lexicographic monomial order, which fixes the printed form.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant) {  // NOLINT: implicit by design
    add_term(Monomial{}, constant);
  }
  MultiPoly(int constant) : MultiPoly(Rational(constant)) {}

  static MultiPoly q(int exponent = 1) {
    MultiPoly p;
    p.add_term(Monomial(exponent, {}), 1);
    return p;
  }
  static MultiPoly gram(int i, int j) {
    MultiPoly p;
    p.add_term(Monomial(0, {make_gram_factor(i, j)}), 1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const Rational& scalar) {
    if (scalar == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= scalar;
    }
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly out;
    for (const auto& [m, c] : a.terms_) out.add_term(m, -c);
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Exact substitution q -> q_value, g_{i,j} -> gram.at({i,j}). Every Gram
  /// indeterminate occurring in the polynomial must be supplied.
  Rational eval(const Rational& q_value,
                const std::map<GramFactor, Rational>& gram = {}) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational term = c * rational_pow(q_value, m.q_exp);
      for (const auto& factor : m.gram) {
        auto it = gram.find(factor);
        if (it == gram.end()) {
          throw std::invalid_argument(
              "missing value for indeterminate g_{" +
              std::to_string(factor.first) + "," +
              std::to_string(factor.second) + "}");
        }
        term *= it->second;
      }
      total += term;
    }
    return total;
  }

  /// Renders the polynomial in its canonical text form, e.g.
  /// "g_{1,4} g_{2,3} + q^1 g_{1,3} g_{2,4}". Unit coefficients are omitted,
  /// rationals print as "p/q", and the zero polynomial prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first_term = true;
    for (const auto& [m, c] : terms_) {
      if (!first_term) out << " + ";
      first_term = false;
      const bool trivial_monomial = m.q_exp == 0 && m.gram.empty();
      bool need_space = false;
      if (c != 1 || trivial_monomial) {
        out << to_string(c);
        need_space = true;
      }
      if (m.q_exp > 0) {
        if (need_space) out << ' ';
        out << "q^" << m.q_exp;
        need_space = true;
      }
      for (const auto& [i, j] : m.gram) {
        if (need_space) out << ' ';
        out << "g_{" << i << ',' << j << '}';
        need_space = true;
      }
    }
    return out.str();
  }

  /// Inverse of str(); accepts any whitespace-normalized rendering produced
  /// by it. Throws std::invalid_argument on malformed input.
  static MultiPoly parse(std::string_view text);

 private:
  TermMap terms_;
};

/// Substitutes a concrete value for q while keeping the Gram indeterminates
/// symbolic.
inline MultiPoly substitute_q(const MultiPoly& p, const Rational& q_value) {
  MultiPoly out;
  for (const auto& [m, c] : p.terms())
    out.add_term(Monomial(0, m.gram), c * rational_pow(q_value, m.q_exp));
  return out;
}

namespace detail {

inline std::vector<std::string> split_terms(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(" + ", start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 3;
  }
}

inline MultiPoly parse_poly_term(const std::string& term) {
  std::istringstream in(term);
  std::string token;
  Rational coeff = 1;
  bool seen_coeff = false;
  bool seen_factor = false;
  int q_exp = 0;
  std::vector<GramFactor> gram;
  while (in >> token) {
    if (token == "q" || token.rfind("q^", 0) == 0) {
      int exp = 1;
      if (token.size() > 1) {
        try {
          exp = std::stoi(token.substr(2));
        } catch (const std::exception&) {
          throw std::invalid_argument("malformed q power: '" + token + "'");
        }
      }
      q_exp += exp;
      seen_factor = true;
    } else if (token.rfind("g_{", 0) == 0) {
      if (token.back() != '}')
        throw std::invalid_argument("malformed gram factor: '" + token + "'");
      auto body = token.substr(3, token.size() - 4);
      auto comma = body.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("malformed gram factor: '" + token + "'");
      int i = 0, j = 0;
      try {
        i = std::stoi(body.substr(0, comma));
        j = std::stoi(body.substr(comma + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed gram factor: '" + token + "'");
      }
      gram.push_back(make_gram_factor(i, j));
      seen_factor = true;
    } else {
      if (seen_coeff || seen_factor)
        throw std::invalid_argument("unexpected token '" + token +
                                    "' in term '" + term + "'");
      coeff = parse_rational(token);
      seen_coeff = true;
    }
  }
  if (!seen_coeff && !seen_factor)
    throw std::invalid_argument("empty polynomial term");
  MultiPoly out;
  out.add_term(Monomial(q_exp, std::move(gram)), coeff);
  return out;
}

}  // namespace detail

inline MultiPoly MultiPoly::parse(std::string_view text) {
  std::string trimmed(text);
  if (trimmed.find_first_not_of(" \t") == std::string::npos)
    throw std::invalid_argument("empty polynomial");
  if (trimmed == "0") return MultiPoly{};
  MultiPoly out;
  for (const auto& term : detail::split_terms(trimmed))
    out += detail::parse_poly_term(term);
  return out;
}

}  // namespace qfock
