#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfock/poly.hpp"
#include "qfock/rational.hpp"
#include "qfock/sign_sequence.hpp"

namespace qfock {

/// A sequence of test-function labels; the empty sequence is the vacuum.
using ElementaryTensor = std::vector<int>;

/// Where inner products of test functions come from. Symbolic mode turns
/// <f_a, f_b> into the Gram indeterminate g_{min(a,b),max(a,b)}; numeric mode
/// evaluates it exactly from concrete rational vectors or a Gram matrix.
class GramSource {
 public:
  static GramSource symbolic() { return GramSource(); }

  static GramSource from_vectors(std::vector<std::vector<Rational>> vectors) {
    if (vectors.empty())
      throw std::invalid_argument("need at least one test vector");
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors)
      if (v.size() != dim)
        throw std::invalid_argument("test vectors must share one dimension");
    std::vector<std::vector<Rational>> matrix(
        vectors.size(), std::vector<Rational>(vectors.size(), 0));
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t d = 0; d < dim; ++d)
          matrix[i][j] += vectors[i][d] * vectors[j][d];
    return GramSource(std::move(matrix));
  }

  /// Accepts an explicit Gram matrix; it must be symmetric with a
  /// non-negative diagonal.
  static GramSource from_matrix(std::vector<std::vector<Rational>> matrix) {
    for (const auto& row : matrix)
      if (row.size() != matrix.size())
        throw std::invalid_argument("gram matrix must be square");
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      if (matrix[i][i] < 0)
        throw std::invalid_argument("gram diagonal must be non-negative");
      for (std::size_t j = i + 1; j < matrix.size(); ++j)
        if (matrix[i][j] != matrix[j][i])
          throw std::invalid_argument("gram matrix must be symmetric");
    }
    return GramSource(std::move(matrix));
  }

  bool is_symbolic() const { return matrix_.empty(); }

  /// Number of labels covered in numeric mode.
  std::size_t label_count() const { return matrix_.size(); }

  /// <f_a, f_b> as a polynomial coefficient. Labels are 1-based.
  MultiPoly inner(int a, int b) const {
    if (is_symbolic()) {
      if (a == b)
        throw std::invalid_argument(
            "symbolic mode needs distinct word positions");
      return MultiPoly::gram(a, b);
    }
    return MultiPoly(inner_value(a, b));
  }

  /// Numeric-mode inner product value.
  Rational inner_value(int a, int b) const {
    if (is_symbolic())
      throw std::invalid_argument("no numeric values in symbolic mode");
    check_label(a);
    check_label(b);
    return matrix_[a - 1][b - 1];
  }

  /// Values for every indeterminate g_{i,j} (i < j) this source can supply,
  /// in the shape MultiPoly::eval expects.
  std::map<GramFactor, Rational> value_map() const {
    if (is_symbolic())
      throw std::invalid_argument("no numeric values in symbolic mode");
    std::map<GramFactor, Rational> out;
    for (std::size_t i = 0; i < matrix_.size(); ++i)
      for (std::size_t j = i + 1; j < matrix_.size(); ++j)
        out[{int(i) + 1, int(j) + 1}] = matrix_[i][j];
    return out;
  }

 private:
  GramSource() = default;
  explicit GramSource(std::vector<std::vector<Rational>> matrix)
      : matrix_(std::move(matrix)) {}

  void check_label(int a) const {
    if (a < 1 || std::size_t(a) > matrix_.size())
      throw std::out_of_range("test-function label " + std::to_string(a) +
                              " outside the gram data");
  }

  std::vector<std::vector<Rational>> matrix_;
};

/// A finite linear combination of elementary tensors with polynomial
/// coefficients. All stored tensors share one grade; the zero vector is the
/// empty combination.
class FockVector {
 public:
  using TermMap = std::map<ElementaryTensor, MultiPoly>;

  FockVector() = default;

  static FockVector zero() { return FockVector(); }
  static FockVector vacuum() {
    FockVector v;
    v.add_term({}, MultiPoly(1));
    return v;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Common tensor length, or nullopt for the zero vector.
  std::optional<std::size_t> grade() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.size();
  }

  void add_term(const ElementaryTensor& tensor, const MultiPoly& coeff) {
    if (coeff.is_zero()) return;
    if (auto g = grade(); g && *g != tensor.size())
      throw std::invalid_argument("mixed grades in one vector");
    auto [it, inserted] = terms_.emplace(tensor, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& other) {
    for (const auto& [t, c] : other.terms_) add_term(t, c);
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) {
    return a += b;
  }

  /// Coefficient of the vacuum tensor (zero polynomial if absent).
  MultiPoly vacuum_coefficient() const {
    auto it = terms_.find({});
    return it == terms_.end() ? MultiPoly{} : it->second;
  }

  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.terms_ == b.terms_;
  }

 private:
  TermMap terms_;
};

/// Creation with test function f_label: prepends the label to every tensor.
inline FockVector apply_creation(int label, const FockVector& v) {
  FockVector out;
  for (const auto& [tensor, coeff] : v.terms()) {
    ElementaryTensor extended;
    extended.reserve(tensor.size() + 1);
    extended.push_back(label);
    extended.insert(extended.end(), tensor.begin(), tensor.end());
    out.add_term(extended, coeff);
  }
  return out;
}

/// Annihilation with test function f_label. On a grade-n tensor:
///   n = 0:  zero;
///   n = 1:  <f, g1> vacuum;
///   n = 2:  <f, g1> g2 + q <f, g2> g1;
///   n > 2:  <f, g1> g2 x ... x gn   (no q term).
/// The q-term appearing only at grade 2 is what distinguishes this
/// deformation from the usual q-twisted one.
inline FockVector apply_annihilation(int label, const FockVector& v,
                                     const GramSource& gram) {
  FockVector out;
  for (const auto& [tensor, coeff] : v.terms()) {
    if (tensor.empty()) continue;
    const ElementaryTensor tail(tensor.begin() + 1, tensor.end());
    out.add_term(tail, coeff * gram.inner(label, tensor.front()));
    if (tensor.size() == 2) {
      out.add_term({tensor.front()},
                   coeff * MultiPoly::q() * gram.inner(label, tensor[1]));
    }
  }
  return out;
}

/// Applies the operator word A^{eps(1)}(f_{p1}) ... A^{eps(m)}(f_{pm}) to the
/// vacuum, right to left; -1 entries annihilate, +1 entries create. Labels
/// are the word's position labels.
inline FockVector apply_word(const SignSequence& eps, const GramSource& gram) {
  FockVector v = FockVector::vacuum();
  for (std::size_t h = eps.size(); h >= 1; --h) {
    v = eps.value(h) == 1 ? apply_creation(eps.position(h), v)
                          : apply_annihilation(eps.position(h), v, gram);
    if (v.is_zero()) break;
  }
  return v;
}

/// The vacuum expectation of the operator word: the vacuum coefficient of
/// apply_word. Zero (exactly) for any word outside the positive class,
/// including odd lengths.
inline MultiPoly vacuum_expectation_operator(const SignSequence& eps,
                                             const GramSource& gram) {
  return apply_word(eps, gram).vacuum_coefficient();
}

namespace detail {

/// Deformed inner product of two same-grade elementary tensors: the plain
/// product of slotwise inner products, with the twist
/// g x h -> g x h + q h x g applied to the last two slots of the right
/// argument when the grade is at least 2.
inline Rational elementary_lambda_inner(const ElementaryTensor& a,
                                        const ElementaryTensor& b,
                                        const Rational& q_value,
                                        const GramSource& gram) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return gram.inner_value(a[0], b[0]);
  Rational prefix = 1;
  for (std::size_t i = 0; i + 2 < n; ++i)
    prefix *= gram.inner_value(a[i], b[i]);
  const Rational straight =
      gram.inner_value(a[n - 2], b[n - 2]) * gram.inner_value(a[n - 1], b[n - 1]);
  const Rational twisted =
      gram.inner_value(a[n - 2], b[n - 1]) * gram.inner_value(a[n - 1], b[n - 2]);
  return prefix * (straight + q_value * twisted);
}

}  // namespace detail

/// The deformed inner product <F, G>_n at a concrete q, extended bilinearly.
/// Numeric gram data only; polynomial coefficients are evaluated against it.
inline Rational lambda_inner(const FockVector& F, const FockVector& G,
                             const Rational& q_value, const GramSource& gram) {
  if (gram.is_symbolic())
    throw std::invalid_argument("lambda_inner needs numeric gram data");
  if (F.is_zero() || G.is_zero()) return 0;
  if (*F.grade() != *G.grade())
    throw std::invalid_argument("grade mismatch in inner product");
  const auto values = gram.value_map();
  Rational total = 0;
  for (const auto& [ta, ca] : F.terms()) {
    const Rational fa = ca.eval(q_value, values);
    for (const auto& [tb, cb] : G.terms()) {
      total += fa * cb.eval(q_value, values) *
               detail::elementary_lambda_inner(ta, tb, q_value, gram);
    }
  }
  return total;
}

}  // namespace qfock
