#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/pair_partition.hpp"
#include "qfock/poly.hpp"
#include "qfock/pset.hpp"
#include "qfock/sign_sequence.hpp"
#include "qfock/spectral.hpp"

namespace qfock {

/// Relative tolerance for floating eigen/singular-value comparisons.
inline constexpr double kFloatRelTol = 1e-8;
/// Absolute floor for positive-semidefiniteness of the deformed Gram forms.
inline constexpr double kPsdFloor = -1e-10;

/// One verified instance of one identity. A passing report carries no
/// counterexample payload.
struct VerifyReport {
  std::string check;
  std::string instance;
  bool passed = false;
  std::string detail;

  friend bool operator==(const VerifyReport& a, const VerifyReport& b) {
    return a.check == b.check && a.instance == b.instance &&
           a.passed == b.passed && a.detail == b.detail;
  }
};

inline bool all_passed(const std::vector<VerifyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerifyReport& r) { return r.passed; });
}

/// The moment polynomial of the combinatorial route: the crossing-weighted
/// Gram sum over the distinguished matchings of the word.
inline MultiPoly combinatorial_moment(const SignSequence& eps) {
  MultiPoly total;
  for (const auto& theta : build_p_set(eps).members) {
    std::vector<GramFactor> gram;
    gram.reserve(theta.size());
    for (const auto& [l, r] : theta.pairs())
      gram.push_back(make_gram_factor(l, r));
    total.add_term(Monomial(crossing_number(theta), std::move(gram)), 1);
  }
  return total;
}

namespace detail {

inline void report(std::vector<VerifyReport>& out, std::string check,
                   std::string instance, bool ok, std::string detail_on_fail) {
  out.push_back(VerifyReport{std::move(check), std::move(instance), ok,
                             ok ? std::string{} : std::move(detail_on_fail)});
}

inline void sort_reports(std::vector<VerifyReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerifyReport& a, const VerifyReport& b) {
                     if (a.check != b.check) return a.check < b.check;
                     return a.instance < b.instance;
                   });
}

inline std::string eps_instance(int n, const SignSequence& eps) {
  return "n=" + std::to_string(n) + " eps=" + eps.str();
}

}  // namespace detail

/// Cross-validates the two moment routes: for every positive-class word up
/// to half-length n_max, the symbolic operator expectation must equal the
/// combinatorial polynomial exactly.
inline std::vector<VerifyReport> check_main_theorem(int n_max) {
  if (n_max < 1 || n_max > 5)
    throw std::out_of_range("main-theorem sweep supports n_max in [1, 5]");
  std::vector<VerifyReport> out;
  const GramSource sym = GramSource::symbolic();
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& eps : enumerate_positive_signs(n)) {
      const MultiPoly lhs = vacuum_expectation_operator(eps, sym);
      const MultiPoly rhs = combinatorial_moment(eps);
      detail::report(out, "main-theorem", detail::eps_instance(n, eps),
                     lhs == rhs,
                     "operator=" + lhs.str() + " combinatorial=" + rhs.str());
    }
  }
  detail::sort_reports(out);
  return out;
}

/// Checks that the operator expectation singles out exactly the
/// distinguished matchings: its Gram-monomial support must coincide with the
/// member list, and each surviving coefficient must be precisely q to the
/// crossing number. Distinct matchings give distinct Gram monomials, so this
/// support equality is the uniqueness statement at this scale.
inline std::vector<VerifyReport> check_uniqueness(int n_max) {
  if (n_max < 1 || n_max > 4)
    throw std::out_of_range("uniqueness sweep supports n_max in [1, 4]");
  std::vector<VerifyReport> out;
  const GramSource sym = GramSource::symbolic();
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& eps : enumerate_positive_signs(n)) {
      std::map<std::vector<GramFactor>, MultiPoly> observed;
      const MultiPoly moment = vacuum_expectation_operator(eps, sym);
      for (const auto& [mono, coeff] : moment.terms()) {
        MultiPoly q_part;
        q_part.add_term(Monomial(mono.q_exp, {}), coeff);
        observed[mono.gram] += q_part;
      }
      std::map<std::vector<GramFactor>, MultiPoly> expected;
      for (const auto& theta : build_p_set(eps).members) {
        std::vector<GramFactor> key;
        for (const auto& [l, r] : theta.pairs())
          key.push_back(make_gram_factor(l, r));
        expected[key] = MultiPoly::q(crossing_number(theta));
      }
      std::ostringstream mismatch;
      bool ok = observed == expected;
      if (!ok) {
        mismatch << "support/coefficient mismatch; operator terms "
                 << observed.size() << ", distinguished matchings "
                 << expected.size();
      }
      detail::report(out, "uniqueness", detail::eps_instance(n, eps), ok,
                     mismatch.str());
    }
  }
  detail::sort_reports(out);
  return out;
}

namespace detail {

inline std::vector<long long> catalan_numbers(int n_max) {
  std::vector<long long> c(n_max + 1, 0);
  c[0] = 1;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k < n; ++k) c[n] += c[k] * c[n - 1 - k];
  return c;
}

inline void check_crossing_recursions(std::vector<VerifyReport>& out, int n) {
  for (const auto& theta : enumerate_pp(n)) {
    const std::string theta_str = "theta=" + theta.str();
    report(out, "noncrossing-equivalence", theta_str,
           (crossing_number(theta) == 0) == is_noncrossing(theta),
           "crossing count and definitional test disagree");
    if (theta.size() < 2) continue;
    const int c_full = crossing_number(theta);
    for (std::size_t k = 1; k <= theta.size(); ++k) {
      const auto [lk, rk] = theta.pair(k);
      const int c_rest = crossing_number(theta.without_pair(k));
      int enclosing_cross = 0, enclosed_cross = 0;
      for (const auto& [l, r] : theta.pairs()) {
        if (l < lk && lk < r && r < rk) ++enclosing_cross;
        if (lk < l && l < rk && rk < r) ++enclosed_cross;
      }
      const std::string instance = theta_str + " k=" + std::to_string(k);
      report(out, "crossing-removal", instance,
             c_full == c_rest + enclosing_cross + enclosed_cross,
             "c=" + std::to_string(c_full) + " vs " +
                 std::to_string(c_rest + enclosing_cross + enclosed_cross));
      if (rk == lk + 1)
        report(out, "crossing-removal-adjacent", instance, c_full == c_rest,
               "adjacent pair removal changed the crossing number");
      if (rk == lk + 2)
        report(out, "crossing-removal-gap2", instance, c_full == c_rest + 1,
               "distance-2 pair removal must drop exactly one crossing");
      if (k == theta.size())
        report(out, "crossing-removal-last", instance,
               c_full == c_rest + (rk - lk - 1),
               "last-pair removal recursion failed");
    }
  }
}

inline void check_relabeling(std::vector<VerifyReport>& out, int n) {
  // order-preserving maps: shift and a strictly convex stretch
  const auto stretch = [](int x) { return x * x + x; };
  for (const auto& theta : enumerate_pp(n)) {
    const auto support = theta.support();
    std::vector<int> shifted, stretched;
    for (int s : support) {
      shifted.push_back(s + 7);
      stretched.push_back(stretch(s));
    }
    const bool ok =
        crossing_number(relabeled(theta, shifted)) == crossing_number(theta) &&
        crossing_number(relabeled(theta, stretched)) == crossing_number(theta);
    report(out, "relabel-invariance", "theta=" + theta.str(), ok,
           "crossing number changed under an order-preserving relabeling");
  }
  // the image of the full enumeration is the enumeration of the image
  std::vector<int> image_labels;
  for (int i = 1; i <= 2 * n; ++i) image_labels.push_back(stretch(i));
  std::set<PairPartition> mapped;
  for (const auto& theta : enumerate_pp(n))
    mapped.insert(relabeled(theta, image_labels));
  const auto direct = enumerate_pp_on(image_labels);
  report(out, "relabel-enumeration", "n=" + std::to_string(n),
         mapped == std::set<PairPartition>(direct.begin(), direct.end()),
         "relabeled enumeration differs from direct enumeration");
}

inline void check_depth_identities(std::vector<VerifyReport>& out, int n) {
  for (const auto& theta : enumerate_pp(n)) {
    if (!is_noncrossing(theta)) continue;
    const std::string theta_str = "theta=" + theta.str();
    const std::size_t nn = theta.size();
    const int last_label = theta.support().back();
    for (std::size_t k = 1; k <= nn; ++k) {
      const auto [lk, rk] = theta.pair(k);
      int later_rights = 0, later_lefts = 0;
      for (const auto& [l, r] : theta.pairs()) {
        if (r > rk) ++later_rights;
        if (l > rk) ++later_lefts;
      }
      report(out, "depth-formula", theta_str + " k=" + std::to_string(k),
             depth(theta, k) == later_rights - later_lefts,
             "enclosure count disagrees with the counting formula");
      if (k == 1 || rk == last_label)
        report(out, "depth-boundary", theta_str + " k=" + std::to_string(k),
               depth(theta, k) == 0,
               "first pair / final-label pair must have depth zero");
    }
    const auto [ln, rn] = theta.pair(nn);
    report(out, "depth-last", theta_str,
           rn == ln + 1 && depth(theta, nn) == 2 * int(nn) - rn,
           "deepest-left pair must be adjacent with depth 2n - r_n");
  }
}

inline void check_depth_removal(std::vector<VerifyReport>& out, int n) {
  for (const auto& theta : enumerate_pp(n)) {
    if (!is_noncrossing(theta) || theta.size() < 2) continue;
    const std::string theta_str = "theta=" + theta.str();
    const std::size_t nn = theta.size();
    for (std::size_t k = 1; k <= nn; ++k) {
      const auto [lk, rk] = theta.pair(k);
      const PairPartition rest = theta.without_pair(k);
      if (!is_noncrossing(rest)) {
        report(out, "depth-removal", theta_str + " k=" + std::to_string(k),
               false, "removing a pair broke the non-crossing property");
        continue;
      }
      const int dk = depth(theta, k);
      for (std::size_t p = 1; p <= nn; ++p) {
        if (p == k) continue;
        const auto [lp, rp] = theta.pair(p);
        const std::string instance = theta_str + " k=" + std::to_string(k) +
                                     " p=" + std::to_string(p);
        const std::size_t p_rest = p < k ? p : p - 1;
        const int before = depth(theta, p);
        const int after = depth(rest, p_rest);
        const bool nested = lk < lp && rp < rk;
        report(out, "depth-removal", instance,
               after == before - (nested ? 1 : 0),
               "depth " + std::to_string(before) + " -> " +
                   std::to_string(after) + (nested ? " (nested)" : ""));
        report(out, "depth-removal-bound", instance,
               after >= (nested ? dk : before),
               "lower bound after removal failed");
        // equality cases: adjacent removed pair, or a separating depth level
        const bool case_adjacent = rk == lk + 1;
        const bool case_level = dk >= before;
        const bool case_post_level = dk > after;
        if (case_adjacent || case_level || case_post_level)
          report(out, "depth-stability", instance, after == before,
                 "stability hypothesis held but the depth changed");
        if (dk >= 1)
          report(out, "depth-zero-stability", instance,
                 (after == 0) == (before == 0),
                 "depth-zero status not preserved");
        if (dk >= 2)
          report(out, "depth-one-stability", instance,
                 (after == 1) == (before == 1),
                 "depth-one status not preserved");
      }
    }
  }
}

/// The tail-exchange case: when the last left label is 2n-2, the pair closed
/// at 2n may hand its right end to either of the two final labels without
/// disturbing any depth.
inline void check_depth_tail_swap(std::vector<VerifyReport>& out, int n) {
  for (const auto& theta : enumerate_pp(n)) {
    if (!is_noncrossing(theta) || theta.size() < 2) continue;
    const std::size_t nn = theta.size();
    const int two_n = 2 * int(nn);
    if (theta.pair(nn).first != two_n - 2) continue;
    std::size_t m = 0;
    for (std::size_t h = 1; h <= nn; ++h)
      if (theta.pair(h).second == two_n) m = h;
    for (int r : {two_n - 1, two_n}) {
      std::vector<PairPartition::Pair> pairs;
      for (std::size_t h = 1; h <= nn; ++h) {
        if (h == nn) continue;
        pairs.emplace_back(theta.pair(h).first,
                           h == m ? r : theta.pair(h).second);
      }
      const PairPartition swapped(std::move(pairs));
      const std::string instance =
          "theta=" + theta.str() + " r=" + std::to_string(r);
      bool ok = is_noncrossing(swapped) && depth(swapped, m) == 0 &&
                depth(theta, m) == 0;
      if (ok) {
        for (std::size_t p = 1; p + 1 <= nn; ++p)
          if (depth(swapped, p) != depth(theta, p)) ok = false;
      }
      report(out, "depth-tail-swap", instance, ok,
             "tail exchange disturbed a depth");
    }
  }
}

inline void check_sign_enumeration(std::vector<VerifyReport>& out, int n) {
  const auto catalan = catalan_numbers(n);
  const auto signs = enumerate_positive_signs(n);
  report(out, "catalan-count", "n=" + std::to_string(n),
         static_cast<long long>(signs.size()) == catalan[n],
         "positive-class count " + std::to_string(signs.size()) +
             " != C_n=" + std::to_string(catalan[n]));
  for (const auto& eps : signs) {
    const std::string instance = eps_instance(n, eps);
    const auto via_recursion = enumerate_pp_with_sign(eps);
    const auto via_filter = enumerate_pp_with_sign_filter(eps);

    report(out, "cardinality", instance,
           static_cast<long long>(via_filter.size()) ==
               pp_with_sign_cardinality(eps),
           "count " + std::to_string(via_filter.size()) +
               " != product formula " +
               std::to_string(pp_with_sign_cardinality(eps)));

    int noncrossing_count = 0;
    for (const auto& theta : via_filter)
      if (is_noncrossing(theta)) ++noncrossing_count;
    report(out, "ncpp-unique", instance, noncrossing_count == 1,
           std::to_string(noncrossing_count) + " non-crossing matchings");

    report(out, "tau-roundtrip", instance, tau(ncpp_counterpart(eps)) == eps,
           "tau of the counterpart differs from the word");

    // peel-off recursion: branch disjointness and exact coverage
    std::size_t m = 0;
    for (std::size_t h = 1; h <= eps.size(); ++h)
      if (eps.value(h) == -1) m = h;
    std::set<PairPartition> unioned;
    bool disjoint = true;
    for (std::size_t j = m + 1; j <= eps.size(); ++j) {
      const PairPartition branch_pair({{eps.position(m), eps.position(j)}});
      std::set<int> keep(eps.positions().begin(), eps.positions().end());
      keep.erase(eps.position(m));
      keep.erase(eps.position(j));
      for (const auto& sub : enumerate_pp_with_sign(restrict_sign(eps, keep)))
        if (!unioned.insert(glue({branch_pair, sub})).second) disjoint = false;
    }
    const bool covered =
        unioned == std::set<PairPartition>(via_filter.begin(), via_filter.end()) &&
        via_recursion == via_filter;
    report(out, "decomposition", instance, disjoint && covered,
           disjoint ? "branch union misses or exceeds the brute-force set"
                    : "branches are not pairwise disjoint");

    // distinguished-set structure
    const auto pset = build_p_set(eps);
    const std::set<PairPartition> full(via_filter.begin(), via_filter.end());
    bool structure_ok =
        pset.members.size() == pset.variable_block.size() &&
        std::set<PairPartition>(pset.members.begin(), pset.members.end())
                .size() == pset.members.size();
    bool contains_counterpart = false;
    const PairPartition counterpart = ncpp_counterpart(eps);
    std::set<int> expected_lefts;
    for (std::size_t h = 1; h <= eps.size(); ++h)
      if (eps.value(h) == -1) expected_lefts.insert(eps.position(h));
    for (const auto& member : pset.members) {
      if (member == counterpart) contains_counterpart = true;
      if (!full.count(member)) structure_ok = false;
      std::set<int> lefts;
      for (const auto& [l, r] : member.pairs()) lefts.insert(l);
      if (lefts != expected_lefts) structure_ok = false;
    }
    report(out, "pset-structure", instance,
           structure_ok && contains_counterpart,
           contains_counterpart ? "a member escapes the sign-constrained set"
                                : "the counterpart is not a member");
  }
}

}  // namespace detail

/// Exhaustive run of every combinatorial identity used by the moment
/// formula: crossing-number recursions, depth identities and stability under
/// pair removal, relabeling invariance, the peel-off decomposition, the
/// cardinality product formula, and the structure of the distinguished set.
/// One report per (identity, instance).
inline std::vector<VerifyReport> check_combinatorics(int n_max) {
  if (n_max < 1 || n_max > 5)
    throw std::out_of_range("combinatorics sweep supports n_max in [1, 5]");
  std::vector<VerifyReport> out;
  for (int n = 1; n <= n_max; ++n) {
    detail::check_crossing_recursions(out, n);
    detail::check_relabeling(out, n);
    detail::check_depth_identities(out, n);
    detail::check_depth_removal(out, n);
    detail::check_depth_tail_swap(out, n);
    detail::check_sign_enumeration(out, n);
  }
  detail::sort_reports(out);
  return out;
}

namespace detail {

inline std::vector<std::vector<Rational>> adjoint_test_vectors(int dim) {
  if (dim == 2)
    return {{1, 0}, {0, 1}, {Rational(1, 2), Rational(-1, 3)}};
  return {{1, 0, 0}, {0, 1, 0}, {Rational(1, 2), Rational(-1, 3), 1}};
}

inline std::vector<std::vector<Rational>> norm_test_vectors(int dim) {
  if (dim == 2) return {{1, 0}, {Rational(3, 2), -2}};
  return {{1, 0, 0}, {Rational(3, 2), -2, Rational(1, 2)}};
}

inline std::string vec_str(const std::vector<Rational>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += to_string(f[i]);
  }
  return out;
}

inline void enumerate_tensors(int labels, int grade,
                              std::vector<ElementaryTensor>& out) {
  out.clear();
  ElementaryTensor current;
  auto rec = [&](auto&& self) -> void {
    if (int(current.size()) == grade) {
      out.push_back(current);
      return;
    }
    for (int l = 1; l <= labels; ++l) {
      current.push_back(l);
      self(self);
      current.pop_back();
    }
  };
  rec(rec);
}

inline void check_adjointness(std::vector<VerifyReport>& out,
                              const std::vector<Rational>& q_grid, int dim,
                              int n_max) {
  const auto vectors = adjoint_test_vectors(dim);
  const GramSource gram = GramSource::from_vectors(vectors);
  const int labels = int(vectors.size());
  for (const auto& q : q_grid) {
    for (int n = 0; n <= n_max; ++n) {
      std::vector<ElementaryTensor> lows, highs;
      enumerate_tensors(labels, n, lows);
      enumerate_tensors(labels, n + 1, highs);
      bool ok = true;
      std::string detail_msg;
      for (int f = 1; f <= labels && ok; ++f) {
        for (const auto& low : lows) {
          FockVector F;
          F.add_term(low, MultiPoly(1));
          const FockVector created = apply_creation(f, F);
          for (const auto& high : highs) {
            FockVector G;
            G.add_term(high, MultiPoly(1));
            const Rational lhs = lambda_inner(created, G, q, gram);
            const Rational rhs =
                lambda_inner(F, apply_annihilation(f, G, gram), q, gram);
            if (lhs != rhs) {
              ok = false;
              detail_msg = "f=" + std::to_string(f) +
                           " lhs=" + to_string(lhs) + " rhs=" + to_string(rhs);
              break;
            }
          }
          if (!ok) break;
        }
      }
      report(out, "adjointness",
             "q=" + to_string(q) + " n=" + std::to_string(n), ok, detail_msg);
    }
  }
}

inline void check_norms(std::vector<VerifyReport>& out,
                        const std::vector<Rational>& q_grid, int dim,
                        int n_max) {
  for (const auto& q : q_grid) {
    for (int n = 2; n <= 4; ++n) {
      const double min_eig = lambda_min_eigenvalue(n, dim, q);
      report(out, "lambda-positivity",
             "q=" + to_string(q) + " n=" + std::to_string(n),
             min_eig >= kPsdFloor,
             "min eigenvalue " + std::to_string(min_eig));
    }
    for (const auto& f : norm_test_vectors(dim)) {
      const double fnorm = vector_norm(f);
      const double expected =
          q >= 0 ? fnorm * std::sqrt(1.0 + to_double(q)) : fnorm;
      const double computed = creation_norm_sup(f, n_max, q, dim);
      report(out, "norm-formula", "q=" + to_string(q) + " f=" + vec_str(f),
             std::abs(computed - expected) <= kFloatRelTol * expected,
             "computed " + std::to_string(computed) + " expected " +
                 std::to_string(expected));
      for (int n = 0; n <= std::min(2, n_max - 1); ++n) {
        const double create = restricted_creation_norm(f, n, q, dim, n_max);
        const double annihilate =
            restricted_annihilation_norm(f, n + 1, q, dim, n_max + 1);
        bool ok = std::abs(create - annihilate) <=
                  kFloatRelTol * std::max(create, annihilate);
        if (n == 0) ok = ok && std::abs(create - fnorm) <= kFloatRelTol * fnorm;
        report(out, "norm-symmetry",
               "q=" + to_string(q) + " n=" + std::to_string(n) +
                   " f=" + vec_str(f),
               ok,
               "creation " + std::to_string(create) + " annihilation " +
                   std::to_string(annihilate));
      }
    }
  }
}

inline void check_vanishing(std::vector<VerifyReport>& out, int max_length) {
  const GramSource sym = GramSource::symbolic();
  for (int m = 1; m <= max_length; ++m) {
    for (unsigned long long bits = 0; bits < (1ULL << m); ++bits) {
      std::vector<int> values(m);
      for (int i = 0; i < m; ++i)
        values[i] = (bits >> (m - 1 - i)) & 1 ? 1 : -1;
      const SignSequence eps(std::move(values));
      if (is_positive(eps)) continue;
      const MultiPoly moment = vacuum_expectation_operator(eps, sym);
      report(out, "vanishing", "eps=" + eps.str(), moment.is_zero(),
             "nonzero moment " + moment.str());
    }
  }
}

}  // namespace detail

/// Numeric/exact analysis of the deformed Fock structure: adjointness of
/// creation and annihilation under the deformed inner products (exact
/// rational identity), positive-semidefiniteness of the grade forms, the
/// operator-norm formula, restricted norm symmetry, and the vanishing of
/// every out-of-class moment up to word length 2*n_max + 2.
inline std::vector<VerifyReport> check_fock_analysis(
    const std::vector<Rational>& q_grid, int dim, int n_max) {
  if (n_max < 1 || n_max > 3)
    throw std::out_of_range("fock analysis supports n_max in [1, 3]");
  if (dim != 2 && dim != 3)
    throw std::out_of_range("fock analysis supports dim 2 or 3");
  if (q_grid.empty()) throw std::invalid_argument("empty q grid");
  for (const auto& q : q_grid)
    if (q < -1 || q > 1)
      throw std::invalid_argument("q grid must lie inside [-1, 1]");
  std::vector<VerifyReport> out;
  detail::check_adjointness(out, q_grid, dim, n_max);
  detail::check_norms(out, q_grid, dim, n_max);
  detail::check_vanishing(out, 2 * n_max + 2);
  detail::sort_reports(out);
  return out;
}

}  // namespace qfock
