#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qfock/spectral.hpp"

using qfock::Rational;

namespace {

bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("lambda_matrix_structure") {
  // dim 2, grade 2: identity plus q on the swap-coupled entries
  const Eigen::MatrixXd G = qfock::lambda_matrix(2, 2, 0.5);
  REQUIRE(G.rows() == 4);
  CHECK(close(G(0, 0), 1.5));  // (1,1)<->(1,1)
  CHECK(close(G(3, 3), 1.5));  // (2,2)<->(2,2)
  CHECK(close(G(1, 2), 0.5));  // (1,2)<->(2,1)
  CHECK(close(G(2, 1), 0.5));
  CHECK(close(G(1, 1), 1.0));
  CHECK(close(G(0, 3), 0.0));
  CHECK(G.isApprox(G.transpose()));

  // higher grades twist only the trailing two slots
  const Eigen::MatrixXd G3 = qfock::lambda_matrix(3, 2, 0.5);
  REQUIRE(G3.rows() == 8);
  CHECK(close(G3(1, 2), 0.5));  // (1,1,2)<->(1,2,1)
  CHECK(close(G3(1, 4), 0.0));  // (1,1,2) vs (2,1,1): not coupled
}

TEST_CASE("lambda_minimum_eigenvalue") {
  CHECK(close(qfock::lambda_min_eigenvalue(2, 2, 0), 1.0));
  CHECK(close(qfock::lambda_min_eigenvalue(2, 2, 1), 0.0));
  CHECK(close(qfock::lambda_min_eigenvalue(2, 2, Rational(1, 2)), 0.5));

  // the spectrum of every grade form is {1 - q, 1 + q} union {1}
  for (int n : {2, 3, 4})
    for (int dim : {2, 3})
      for (const Rational& q :
           {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
            Rational(1)}) {
        const double expected = 1.0 - std::abs(qfock::to_double(q));
        CHECK(close(qfock::lambda_min_eigenvalue(n, dim, q), expected, 1e-10));
      }

  CHECK_THROWS_AS(qfock::lambda_min_eigenvalue(1, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(qfock::lambda_min_eigenvalue(5, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(qfock::lambda_min_eigenvalue(2, 4, 0), std::out_of_range);
  CHECK_THROWS_AS(qfock::lambda_min_eigenvalue(2, 2, 2), std::invalid_argument);
}

TEST_CASE("restricted_creation_norm_examples") {
  const std::vector<Rational> unit{1, 0};
  const std::vector<Rational> skew{Rational(3, 2), -2};
  const double skew_norm = 2.5;

  CHECK(close(qfock::restricted_creation_norm(unit, 0, Rational(1, 2), 2), 1.0,
              1e-12));
  CHECK(close(qfock::restricted_creation_norm(skew, 0, Rational(1, 2), 2),
              skew_norm, 1e-10));

  // grade 1 at q = 1 doubles the squared norm
  CHECK(close(qfock::restricted_creation_norm(unit, 1, 1, 2), std::sqrt(2.0),
              1e-8));

  // for q >= 0 the grade-1 restriction realizes the full norm; higher grades
  // prepend isometrically
  for (const Rational& q : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
    const double expected = skew_norm * std::sqrt(1.0 + qfock::to_double(q));
    CHECK(close(qfock::restricted_creation_norm(skew, 1, q, 2), expected,
                1e-8));
    CHECK(close(qfock::restricted_creation_norm(skew, 2, q, 2), skew_norm,
                1e-8));
    CHECK(close(qfock::restricted_creation_norm(skew, 3, q, 2), skew_norm,
                1e-8));
  }

  CHECK(close(qfock::creation_norm_sup(unit, 3, Rational(-1, 2), 2), 1.0,
              1e-8));
  CHECK(close(qfock::creation_norm_sup(skew, 3, 1, 2),
              skew_norm * std::sqrt(2.0), 1e-8));

  CHECK_THROWS_AS(qfock::restricted_creation_norm(unit, 1, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfock::restricted_creation_norm(unit, 1, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfock::restricted_creation_norm(unit, 5, 0, 2),
                  std::out_of_range);
  CHECK_THROWS_AS(qfock::restricted_creation_norm({1, 0, 0}, 1, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("annihilation_norm_mirrors_creation_norm") {
  const std::vector<Rational> f{Rational(3, 2), -2};
  for (const Rational& q :
       {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
        Rational(1)}) {
    for (int n = 0; n <= 2; ++n) {
      const double create = qfock::restricted_creation_norm(f, n, q, 2);
      const double annihilate =
          qfock::restricted_annihilation_norm(f, n + 1, q, 2);
      CHECK(std::abs(create - annihilate) <= 1e-8 * create);
    }
    CHECK(close(qfock::restricted_annihilation_norm(f, 1, q, 2), 2.5, 1e-10));
  }
}

TEST_CASE("singular_gram_forms_are_projected") {
  // at |q| = 1 the grade forms lose rank; the norm lives on the range
  const std::vector<Rational> f{1, 0};
  CHECK(close(qfock::restricted_creation_norm(f, 2, 1, 2), 1.0, 1e-8));
  CHECK(close(qfock::restricted_creation_norm(f, 2, -1, 2), 1.0, 1e-8));
  CHECK(close(qfock::creation_norm_sup(f, 3, -1, 2), 1.0, 1e-8));
}
