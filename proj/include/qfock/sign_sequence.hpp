#pragma once

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfock {

/// Hard cap on the half-length n for the exhaustive enumerations; keeps
/// (2n-1)!! at desk scale. Overridable per call (and via QFOCK_MAX_N in the
/// CLI), use at own risk.
inline constexpr int kDefaultMaxN = 6;

enum class SignClass { positive, negative };

/// A +/-1 word attached to a strictly increasing list of position labels.
/// Labels default to 1..m; restrictions to sub-supports keep the original
/// labels so that pairings built on them stay addressable.
class SignSequence {
 public:
  SignSequence() = default;

  explicit SignSequence(std::vector<int> values) : values_(std::move(values)) {
    positions_.resize(values_.size());
    std::iota(positions_.begin(), positions_.end(), 1);
    validate();
  }

  SignSequence(std::vector<int> values, std::vector<int> positions)
      : values_(std::move(values)), positions_(std::move(positions)) {
    validate();
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// 1-based sequence index, per the usual epsilon(h) convention.
  int value(std::size_t h) const { return values_.at(h - 1); }
  int position(std::size_t h) const { return positions_.at(h - 1); }

  const std::vector<int>& values() const { return values_; }
  const std::vector<int>& positions() const { return positions_; }

  friend bool operator==(const SignSequence& a, const SignSequence& b) {
    return a.values_ == b.values_ && a.positions_ == b.positions_;
  }
  friend bool operator<(const SignSequence& a, const SignSequence& b) {
    if (a.values_ != b.values_) return a.values_ < b.values_;
    return a.positions_ < b.positions_;
  }

  std::string str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) out << ',';
      out << values_[i];
    }
    return out.str();
  }

 private:
  void validate() const {
    if (values_.size() != positions_.size())
      throw std::invalid_argument("values/positions length mismatch");
    for (int v : values_) {
      if (v != 1 && v != -1)
        throw std::invalid_argument("sign entries must be +1 or -1");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (positions_[i] <= 0)
        throw std::invalid_argument("position labels must be positive");
      if (i > 0 && positions_[i] <= positions_[i - 1])
        throw std::invalid_argument("position labels must strictly increase");
    }
  }

  std::vector<int> values_;
  std::vector<int> positions_;
};

/// A word is in the positive class when its total sum is zero and every
/// suffix sum is non-negative; equivalently, every prefix sum is <= 0.
/// The empty word counts as positive (clean recursion base).
inline SignClass classify_sign(const SignSequence& seq) {
  long long suffix = 0;
  bool suffix_ok = true;
  for (auto it = seq.values().rbegin(); it != seq.values().rend(); ++it) {
    suffix += *it;
    if (suffix < 0) suffix_ok = false;
  }
  return (suffix == 0 && suffix_ok) ? SignClass::positive
                                    : SignClass::negative;
}

inline bool is_positive(const SignSequence& seq) {
  return classify_sign(seq) == SignClass::positive;
}

/// All positive-class words of length 2n, in lexicographic order with
/// -1 < +1. Their count is the Catalan number C_n.
inline std::vector<SignSequence> enumerate_positive_signs(
    int n, int max_n = kDefaultMaxN) {
  if (n < 1) throw std::out_of_range("n must be >= 1");
  if (n > max_n)
    throw std::out_of_range("n=" + std::to_string(n) +
                            " exceeds the enumeration cap " +
                            std::to_string(max_n));
  const int m = 2 * n;
  std::vector<SignSequence> out;
  for (unsigned long long bits = 0; bits < (1ULL << m); ++bits) {
    std::vector<int> values(m);
    for (int i = 0; i < m; ++i)
      values[i] = (bits >> (m - 1 - i)) & 1 ? 1 : -1;
    SignSequence candidate(std::move(values));
    if (is_positive(candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

/// Restriction to a subset of the position labels, in their induced order.
inline SignSequence restrict_sign(const SignSequence& seq,
                                  const std::set<int>& keep) {
  std::vector<int> values;
  std::vector<int> positions;
  values.reserve(keep.size());
  positions.reserve(keep.size());
  std::set<int> seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int label = seq.positions()[i];
    if (keep.count(label)) {
      values.push_back(seq.values()[i]);
      positions.push_back(label);
      seen.insert(label);
    }
  }
  for (int label : keep) {
    if (!seen.count(label))
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " not present in the sequence");
  }
  return SignSequence(std::move(values), std::move(positions));
}

}  // namespace qfock
