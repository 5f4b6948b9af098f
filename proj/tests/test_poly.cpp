#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "qfock/poly.hpp"

using qfock::GramFactor;
using qfock::Monomial;
using qfock::MultiPoly;
using qfock::Rational;

namespace {

// Independent flat-list polynomial model used as the multiplication oracle:
// every term of a times every term of b, combined by brute force.
using FlatTerm = std::tuple<int, std::vector<GramFactor>, Rational>;

std::vector<FlatTerm> flatten(const MultiPoly& p) {
  std::vector<FlatTerm> out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m.q_exp, m.gram, c);
  return out;
}

MultiPoly oracle_multiply(const MultiPoly& a, const MultiPoly& b) {
  std::map<std::pair<int, std::vector<GramFactor>>, Rational> combined;
  for (const auto& [qa, ga, ca] : flatten(a)) {
    for (const auto& [qb, gb, cb] : flatten(b)) {
      std::vector<GramFactor> gram = ga;
      gram.insert(gram.end(), gb.begin(), gb.end());
      std::sort(gram.begin(), gram.end());
      combined[{qa + qb, gram}] += ca * cb;
    }
  }
  MultiPoly out;
  for (const auto& [key, coeff] : combined)
    out.add_term(Monomial(key.first, key.second), coeff);
  return out;
}

MultiPoly nested_moment_n2() {
  // g_{1,4} g_{2,3} + q g_{1,3} g_{2,4}
  MultiPoly p;
  p.add_term(Monomial(0, {{1, 4}, {2, 3}}), 1);
  p.add_term(Monomial(1, {{1, 3}, {2, 4}}), 1);
  return p;
}

std::vector<MultiPoly> sample_pool() {
  std::vector<MultiPoly> pool;
  pool.push_back(MultiPoly{});
  pool.push_back(MultiPoly(1));
  pool.push_back(MultiPoly(Rational(-1, 2)));
  pool.push_back(MultiPoly::q());
  pool.push_back(MultiPoly::gram(1, 2));
  pool.push_back(nested_moment_n2());
  MultiPoly mixed = MultiPoly::q(2) * Rational(3) - MultiPoly::gram(1, 3) +
                    MultiPoly(Rational(2, 5));
  pool.push_back(mixed);
  return pool;
}

MultiPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_terms(0, 4);
  std::uniform_int_distribution<int> q_exp(0, 3);
  std::uniform_int_distribution<int> n_gram(0, 3);
  std::uniform_int_distribution<int> index(1, 4);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  MultiPoly p;
  const int terms = n_terms(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<GramFactor> gram;
    const int factors = n_gram(rng);
    for (int g = 0; g < factors; ++g) {
      int i = index(rng), j = index(rng);
      if (i == j) continue;
      gram.push_back(qfock::make_gram_factor(i, j));
    }
    p.add_term(Monomial(q_exp(rng), std::move(gram)),
               Rational(num(rng), den(rng)));
  }
  return p;
}

std::map<GramFactor, Rational> full_assignment(const Rational& base) {
  std::map<GramFactor, Rational> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      out[{i, j}] = base + Rational(i, j);
  return out;
}

}  // namespace

TEST_CASE("addition_identity_and_cancellation") {
  const MultiPoly g12 = MultiPoly::gram(1, 2);
  CHECK(g12 + MultiPoly{} == g12);
  CHECK((g12 + (-g12)).is_zero());
  CHECK((g12 - g12).is_zero());

  const MultiPoly two_terms = nested_moment_n2();
  CHECK(two_terms.terms().size() == 2);
}

TEST_CASE("multiplication_matches_brute_force_expansion") {
  CHECK(MultiPoly::q() * MultiPoly::q() == MultiPoly::q(2));
  const MultiPoly g12g34 = MultiPoly::gram(1, 2) * MultiPoly::gram(3, 4);
  CHECK(g12g34.terms().size() == 1);
  CHECK(g12g34.terms().begin()->first.gram ==
        std::vector<GramFactor>{{1, 2}, {3, 4}});

  const MultiPoly lhs = nested_moment_n2() * MultiPoly::gram(5, 6);
  MultiPoly expected;
  expected.add_term(Monomial(0, {{1, 4}, {2, 3}, {5, 6}}), 1);
  expected.add_term(Monomial(1, {{1, 3}, {2, 4}, {5, 6}}), 1);
  CHECK(lhs == expected);
  CHECK(lhs == oracle_multiply(nested_moment_n2(), MultiPoly::gram(5, 6)));
}

TEST_CASE("evaluation_examples") {
  CHECK(MultiPoly::q().eval(Rational(1, 2)) == Rational(1, 2));
  std::map<GramFactor, Rational> ones;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) ones[{i, j}] = 1;
  CHECK(nested_moment_n2().eval(1, ones) == 2);
  CHECK(MultiPoly{}.eval(Rational(7, 3)) == 0);
  CHECK_THROWS_AS(MultiPoly::gram(1, 2).eval(1, {}), std::invalid_argument);
}

TEST_CASE("ring_axioms_on_small_operands") {
  const auto pool = sample_pool();
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * b == oracle_multiply(a, b));
      for (const auto& c : pool) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
  }
}

TEST_CASE("evaluation_is_a_ring_homomorphism") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 4);
  for (int round = 0; round < 50; ++round) {
    const MultiPoly a = random_poly(rng);
    const MultiPoly b = random_poly(rng);
    const Rational q(num(rng), den(rng));
    const auto gram = full_assignment(Rational(num(rng), 5));
    CHECK((a + b).eval(q, gram) == a.eval(q, gram) + b.eval(q, gram));
    CHECK((a * b).eval(q, gram) == a.eval(q, gram) * b.eval(q, gram));
  }
}

TEST_CASE("printed_form_is_the_pinned_contract") {
  CHECK(nested_moment_n2().str() == "g_{1,4} g_{2,3} + q^1 g_{1,3} g_{2,4}");
  CHECK(MultiPoly{}.str() == "0");
  CHECK(MultiPoly(Rational(5, 3)).str() == "5/3");
  CHECK((MultiPoly::q() * MultiPoly::gram(1, 2) * Rational(-1, 2)).str() ==
        "-1/2 q^1 g_{1,2}");
  CHECK(MultiPoly::q(2).str() == "q^2");
}

TEST_CASE("parse_inverts_print") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    const MultiPoly p = random_poly(rng);
    CHECK(MultiPoly::parse(p.str()) == p);
  }
  CHECK(MultiPoly::parse("0").is_zero());
  CHECK(MultiPoly::parse("q") == MultiPoly::q());
  CHECK_THROWS_AS(MultiPoly::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(MultiPoly::parse("g_{1,2} oops"), std::invalid_argument);
}

TEST_CASE("monomials_are_canonical") {
  CHECK(MultiPoly::gram(3, 1) == MultiPoly::gram(1, 3));
  CHECK_THROWS_AS(MultiPoly::gram(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(Monomial(-1, {}), std::invalid_argument);

  // graded-lex term order: lower total degree first, then q-degree
  MultiPoly p = MultiPoly::q(3) + MultiPoly::gram(1, 2) +
                MultiPoly::q() * MultiPoly::gram(1, 2);
  std::vector<int> degrees;
  for (const auto& [m, c] : p.terms()) degrees.push_back(int(m.degree()));
  CHECK(degrees == std::vector<int>{1, 2, 3});
}
