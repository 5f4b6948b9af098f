#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "qfock/pair_partition.hpp"
#include "qfock/sign_sequence.hpp"

namespace qfock {

/// The distinguished family of matchings attached to a positive-class word:
/// the counterpart pairs of depth >= 2 stay fixed, while the labels covered
/// by depth <= 1 pairs get re-matched freely (subject to the sign word).
struct PSet {
  PairPartition fixed_deep_pairs;
  std::vector<PairPartition> variable_block;
  std::vector<PairPartition> members;
};

inline PSet build_p_set(const SignSequence& eps) {
  if (!is_positive(eps))
    throw std::invalid_argument(
        "the distinguished set needs a positive-class sign sequence");
  const PairPartition counterpart = ncpp_counterpart(eps);

  std::vector<PairPartition::Pair> deep;
  std::set<int> shallow_labels;
  for (std::size_t k = 1; k <= counterpart.size(); ++k) {
    const auto& p = counterpart.pair(k);
    if (depth(counterpart, k) >= 2) {
      deep.push_back(p);
    } else {
      shallow_labels.insert(p.first);
      shallow_labels.insert(p.second);
    }
  }

  PSet out;
  out.fixed_deep_pairs = PairPartition(std::move(deep));
  out.variable_block =
      enumerate_pp_with_sign(restrict_sign(eps, shallow_labels));
  out.members.reserve(out.variable_block.size());
  for (const auto& sigma : out.variable_block)
    out.members.push_back(glue({out.fixed_deep_pairs, sigma}));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace qfock
