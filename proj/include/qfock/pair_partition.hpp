#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfock/sign_sequence.hpp"

namespace qfock {

/// A perfect matching of an even set of position labels, stored canonically:
/// left < right within each pair, pairs sorted by left label. Comparisons and
/// set semantics are defined on this canonical form.
class PairPartition {
 public:
  using Pair = std::pair<int, int>;

  PairPartition() = default;

  explicit PairPartition(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    std::set<int> seen;
    for (const auto& [l, r] : pairs_) {
      if (l >= r)
        throw std::invalid_argument("pair (" + std::to_string(l) + "," +
                                    std::to_string(r) +
                                    ") must have left < right");
      if (l <= 0)
        throw std::invalid_argument("position labels must be positive");
      if (!seen.insert(l).second || !seen.insert(r).second)
        throw std::invalid_argument("duplicate position label in partition");
    }
  }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<Pair>& pairs() const { return pairs_; }

  /// 1-based pair index, matching the (l_k, r_k) convention.
  const Pair& pair(std::size_t k) const {
    if (k < 1 || k > pairs_.size())
      throw std::out_of_range("pair index out of range");
    return pairs_[k - 1];
  }

  /// Sorted list of all covered labels.
  std::vector<int> support() const {
    std::vector<int> out;
    out.reserve(2 * pairs_.size());
    for (const auto& [l, r] : pairs_) {
      out.push_back(l);
      out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The partition with the k-th pair removed (1-based).
  PairPartition without_pair(std::size_t k) const {
    if (k < 1 || k > pairs_.size())
      throw std::out_of_range("pair index out of range");
    std::vector<Pair> rest;
    rest.reserve(pairs_.size() - 1);
    for (std::size_t h = 0; h < pairs_.size(); ++h)
      if (h != k - 1) rest.push_back(pairs_[h]);
    return PairPartition(std::move(rest));
  }

  friend bool operator==(const PairPartition& a, const PairPartition& b) {
    return a.pairs_ == b.pairs_;
  }
  friend bool operator<(const PairPartition& a, const PairPartition& b) {
    return a.pairs_ < b.pairs_;
  }

  std::string str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i) out << ',';
      out << pairs_[i].first << '-' << pairs_[i].second;
    }
    return out.str();
  }

 private:
  std::vector<Pair> pairs_;
};

/// All pair partitions of the given labels, in lexicographic order of the
/// canonical pair lists. Cardinality (|labels|-1)!!.
inline std::vector<PairPartition> enumerate_pp_on(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  if (labels.size() % 2 != 0)
    throw std::invalid_argument("pair partitions need an even label count");
  std::vector<PairPartition> out;
  std::vector<PairPartition::Pair> current;
  auto recurse = [&](auto&& self, std::vector<int> rest) -> void {
    if (rest.empty()) {
      out.emplace_back(current);
      return;
    }
    const int first = rest.front();
    for (std::size_t j = 1; j < rest.size(); ++j) {
      current.emplace_back(first, rest[j]);
      std::vector<int> next;
      next.reserve(rest.size() - 2);
      for (std::size_t h = 1; h < rest.size(); ++h)
        if (h != j) next.push_back(rest[h]);
      self(self, std::move(next));
      current.pop_back();
    }
  };
  recurse(recurse, std::move(labels));
  return out;
}

/// All of PP(2n) on labels 1..2n.
inline std::vector<PairPartition> enumerate_pp(int n,
                                               int max_n = kDefaultMaxN) {
  if (n < 1) throw std::out_of_range("n must be >= 1");
  if (n > max_n)
    throw std::out_of_range("n=" + std::to_string(n) +
                            " exceeds the enumeration cap " +
                            std::to_string(max_n));
  std::vector<int> labels(2 * n);
  std::iota(labels.begin(), labels.end(), 1);
  return enumerate_pp_on(std::move(labels));
}

/// The sign word of a matching: -1 on left labels, +1 on right labels.
/// Always lands in the positive class.
inline SignSequence tau(const PairPartition& theta) {
  std::set<int> lefts;
  for (const auto& [l, r] : theta.pairs()) lefts.insert(l);
  std::vector<int> positions = theta.support();
  std::vector<int> values;
  values.reserve(positions.size());
  for (int p : positions) values.push_back(lefts.count(p) ? -1 : 1);
  return SignSequence(std::move(values), std::move(positions));
}

/// Restricted crossing number: the number of interleaved pairs
/// l_h < l_j < r_h < r_j. Depends only on the relative order of the labels.
inline int crossing_number(const PairPartition& theta) {
  const auto& pairs = theta.pairs();
  int count = 0;
  for (std::size_t h = 0; h < pairs.size(); ++h)
    for (std::size_t j = h + 1; j < pairs.size(); ++j)
      if (pairs[h].second > pairs[j].first && pairs[h].second < pairs[j].second)
        ++count;
  return count;
}

/// The definitional non-crossing test: for every k < h,
/// i_k < i_h < j_k holds exactly when i_k < j_h < j_k.
inline bool is_noncrossing(const PairPartition& theta) {
  const auto& pairs = theta.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t h = k + 1; h < pairs.size(); ++h) {
      const bool left_inside =
          pairs[k].first < pairs[h].first && pairs[h].first < pairs[k].second;
      const bool right_inside =
          pairs[k].first < pairs[h].second && pairs[h].second < pairs[k].second;
      if (left_inside != right_inside) return false;
    }
  }
  return true;
}

/// Depth of the k-th pair (1-based) in a non-crossing matching: the number
/// of pairs strictly enclosing it. Rejects crossing input — depth is only
/// defined on non-crossing matchings here.
inline int depth(const PairPartition& theta, std::size_t k) {
  if (crossing_number(theta) != 0)
    throw std::invalid_argument("depth requires a non-crossing partition");
  const auto& [lk, rk] = theta.pair(k);
  int count = 0;
  for (const auto& [l, r] : theta.pairs())
    if (l < lk && rk < r) ++count;
  return count;
}

/// Gluing: the union of matchings on pairwise disjoint supports, re-sorted
/// into canonical order over the merged support. Associative.
inline PairPartition glue(const std::vector<PairPartition>& parts) {
  std::vector<PairPartition::Pair> merged;
  std::set<int> seen;
  for (const auto& part : parts) {
    for (const auto& p : part.pairs()) {
      if (seen.count(p.first) || seen.count(p.second))
        throw std::invalid_argument("glue requires disjoint supports");
      seen.insert(p.first);
      seen.insert(p.second);
      merged.push_back(p);
    }
  }
  return PairPartition(std::move(merged));
}

/// The unique non-crossing matching whose left labels are the -1 positions
/// of a positive-class word. Single scan with a last-in-first-out store:
/// push on -1, pop-and-pair on +1.
inline PairPartition ncpp_counterpart(const SignSequence& eps) {
  if (!is_positive(eps))
    throw std::invalid_argument(
        "counterpart requires a positive-class sign sequence");
  std::vector<int> open;
  std::vector<PairPartition::Pair> pairs;
  for (std::size_t h = 1; h <= eps.size(); ++h) {
    if (eps.value(h) == -1) {
      open.push_back(eps.position(h));
    } else {
      // positive class guarantees an unmatched left exists
      pairs.emplace_back(open.back(), eps.position(h));
      open.pop_back();
    }
  }
  return PairPartition(std::move(pairs));
}

/// All matchings with the prescribed sign word, by the peel-off recursion:
/// take m = the last -1 position, branch over its partner among the later
/// positions, and glue each branch pair onto the matchings of the rest.
/// Result is sorted canonically.
inline std::vector<PairPartition> enumerate_pp_with_sign(
    const SignSequence& eps) {
  if (!is_positive(eps))
    throw std::invalid_argument(
        "enumeration requires a positive-class sign sequence");
  if (eps.empty()) return {PairPartition{}};
  std::size_t m = 0;
  for (std::size_t h = 1; h <= eps.size(); ++h)
    if (eps.value(h) == -1) m = h;
  std::vector<PairPartition> out;
  for (std::size_t j = m + 1; j <= eps.size(); ++j) {
    const PairPartition branch_pair(
        {{eps.position(m), eps.position(j)}});
    std::set<int> keep(eps.positions().begin(), eps.positions().end());
    keep.erase(eps.position(m));
    keep.erase(eps.position(j));
    for (const auto& sub : enumerate_pp_with_sign(restrict_sign(eps, keep)))
      out.push_back(glue({branch_pair, sub}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Brute-force route to the same set: enumerate all matchings of the support
/// and keep those whose sign word matches. Kept as an independent
/// cross-check of the recursion above.
inline std::vector<PairPartition> enumerate_pp_with_sign_filter(
    const SignSequence& eps) {
  if (!is_positive(eps))
    throw std::invalid_argument(
        "enumeration requires a positive-class sign sequence");
  std::vector<PairPartition> out;
  for (auto& theta : enumerate_pp_on(eps.positions()))
    if (tau(theta) == eps) out.push_back(std::move(theta));
  std::sort(out.begin(), out.end());
  return out;
}

/// Expected cardinality of the sign-constrained enumeration: the product of
/// (2h - l_h) over the sorted left indices l_1 < ... < l_n, taken on the
/// index scale (labels replaced by their ranks 1..2n).
inline long long pp_with_sign_cardinality(const SignSequence& eps) {
  if (!is_positive(eps))
    throw std::invalid_argument("cardinality needs a positive-class word");
  long long product = 1;
  long long h = 0;
  for (std::size_t i = 1; i <= eps.size(); ++i) {
    if (eps.value(i) == -1) {
      ++h;
      product *= 2 * h - static_cast<long long>(i);
    }
  }
  return product;
}

/// Applies a strictly order-preserving relabeling: the i-th smallest old
/// label becomes new_support[i].
inline PairPartition relabeled(const PairPartition& theta,
                               const std::vector<int>& new_support) {
  const auto old_support = theta.support();
  if (new_support.size() != old_support.size())
    throw std::invalid_argument("relabeling needs a same-size support");
  if (!std::is_sorted(new_support.begin(), new_support.end()))
    throw std::invalid_argument("relabeling must preserve order");
  std::vector<PairPartition::Pair> pairs;
  auto rank = [&](int label) {
    return std::lower_bound(old_support.begin(), old_support.end(), label) -
           old_support.begin();
  };
  for (const auto& [l, r] : theta.pairs())
    pairs.emplace_back(new_support[rank(l)], new_support[rank(r)]);
  return PairPartition(std::move(pairs));
}

}  // namespace qfock
