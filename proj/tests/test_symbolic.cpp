#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "steinexp/rng.hpp"
#include "steinexp/symbolic_moments.hpp"

using namespace steinexp;

namespace {

const IntPoly n = IntPoly::n();

NPolynomialExpr monomial(int a_exp, int b_exp) {
  NPolynomialExpr e = NPolynomialExpr::scalar(1);
  if (a_exp > 0) e = e * p(1, a_exp);
  if (b_exp > 0) e = e * pbar(1, b_exp);
  return e;
}

// Independent assembly of nabla f . nabla g for monomials f = p1^a1 pbar1^b1,
// g = p1^a2 pbar1^b2, pairing every factor of f with every factor of g.
NPolynomialExpr nabla_dot_oracle(int a1, int b1, int a2, int b2) {
  NPolynomialExpr out;
  if (a1 > 0 && a2 > 0)
    out += nabla_pair(1, 1) * monomial(a1 + a2 - 2, b1 + b2) * IntPoly(a1 * a2);
  if (b1 > 0 && b2 > 0)
    out += nabla_pair(-1, -1) * monomial(a1 + a2, b1 + b2 - 2) * IntPoly(b1 * b2);
  if (a1 * b2 + b1 * a2 > 0)
    out += nabla_pair(1, -1) * monomial(a1 + a2 - 1, b1 + b2 - 1) * IntPoly(a1 * b2 + b1 * a2);
  return out;
}

}  // namespace

TEST_CASE("integer polynomials in n") {
  IntPoly two_n = IntPoly::monomial(2, 1);
  CHECK(two_n.eval(8) == 16);
  CHECK((two_n * two_n).eval(3) == 36);
  CHECK((two_n - two_n).is_zero());
  CHECK((n * n - IntPoly(4)).to_string() == "n^2 - 4");
  CHECK((-n).to_string() == "-n");
  CHECK(IntPoly(7).to_string() == "7");
  CHECK((n * 3 + IntPoly(1)).eval(-2) == -5);
}

TEST_CASE("word algebra and rendering") {
  PowerSumWord w = PowerSumWord::p(1, 2) * PowerSumWord::pbar(1, 2);
  CHECK(w.degree() == 4);
  CHECK(w.exponent_sum() == 4);
  CHECK(w.to_string() == "p[1,1]*pbar[1,1]");
  CHECK(w.bar() == w);
  PowerSumWord mixed = PowerSumWord::p(2) * PowerSumWord::pbar(1, 2);
  CHECK(mixed.to_string() == "p[2]*pbar[1,1]");
  CHECK(mixed.bar().to_string() == "p[1,1]*pbar[2]");
  CHECK_FALSE(mixed.matched());
}

TEST_CASE("gradient pairing") {
  CHECK(nabla_pair(1, -1) == NPolynomialExpr::scalar(n));
  CHECK(nabla_pair(1, 1) == p(2) * IntPoly(-1));
  CHECK(nabla_pair(2, -1) == p(1) * IntPoly(2));
  CHECK(nabla_pair(-1, -1) == pbar(2) * IntPoly(-1));
  CHECK_THROWS_AS(nabla_pair(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(nabla_pair(2, 0), std::invalid_argument);
}

TEST_CASE("laplacian identities") {
  CHECK(laplacian(p(1)) == p(1) * (-n));

  NPolynomialExpr w = p(1) * pbar(1);
  NPolynomialExpr lap_w = laplacian(w);
  CHECK(lap_w == NPolynomialExpr::scalar(n * 2) - w * (n * 2));
  CHECK(lap_w.to_string() == "-2n*p[1]*pbar[1] + 2n");

  NPolynomialExpr lap_w2 = laplacian(w * w);
  NPolynomialExpr expected = (p(1, 2) * pbar(1, 2)) * (n * -4) + (p(2) * pbar(1, 2)) * -2 +
                             (p(1, 2) * pbar(2)) * -2 + w * (n * 8);
  CHECK(lap_w2 == expected);
  CHECK(lap_w2.to_string() ==
        "-2*p[2]*pbar[1,1] - 2*p[1,1]*pbar[2] - 4n*p[1,1]*pbar[1,1] + 8n*p[1]*pbar[1]");

  CHECK(laplacian(NPolynomialExpr::scalar(n * 5)).is_zero());
  CHECK_THROWS_AS(laplacian(p(2)), UnsupportedGeneratorError);
  CHECK_THROWS_AS(laplacian(pbar(3) * p(1)), UnsupportedGeneratorError);
}

TEST_CASE("haar moment oracle") {
  CHECK(*haar_moment(PowerSumWord::p(1) * PowerSumWord::pbar(1)) == 1);
  CHECK(*haar_moment(PowerSumWord::p(1, 4) * PowerSumWord::pbar(1, 4)) == 24);
  CHECK(*haar_moment(PowerSumWord::p(2) * PowerSumWord::pbar(1, 2)) == 0);

  // validity window: n >= sum of exponents, no silent extrapolation
  PowerSumWord w4 = PowerSumWord::p(1, 4) * PowerSumWord::pbar(1, 4);
  CHECK(haar_moment(w4, 8).has_value());
  CHECK_FALSE(haar_moment(w4, 7).has_value());

  // E W^m = m!
  std::int64_t factorial = 1;
  for (int m = 1; m <= 4; ++m) {
    factorial *= m;
    CHECK(*haar_moment(PowerSumWord::p(1, m) * PowerSumWord::pbar(1, m)) == factorial);
  }
  // mixed-index matched word: p_{2,1} pbar_{2,1} -> 2^1 1! * 1^1 1! = 2
  CHECK(*haar_moment(PowerSumWord::p(2) * PowerSumWord::p(1) * PowerSumWord::pbar(2) *
                     PowerSumWord::pbar(1)) == 2);
  // p_{2,2} pbar_{1,1,1,1} mismatched -> 0
  CHECK(*haar_moment(PowerSumWord::p(2, 2) * PowerSumWord::pbar(1, 4)) == 0);
}

TEST_CASE("expectation") {
  NPolynomialExpr w = p(1) * pbar(1);
  CHECK(expectation(laplacian(w)).value.is_zero());

  auto ew2 = expectation(w * w);
  CHECK(ew2.value == IntPoly(2));
  CHECK(ew2.min_valid_n == 4);

  CHECK(expectation(NPolynomialExpr::scalar(n)).value == n);

  CHECK(expectation_at(w * w, 8) == 2);
  CHECK_THROWS_AS(expectation_at(w * w, 3), MomentValidityError);
  try {
    expectation_at(w * w, 3);
  } catch (const MomentValidityError& e) {
    CHECK(std::string(e.what()).find("p[1,1]*pbar[1,1]") != std::string::npos);
  }
}

TEST_CASE("drift and quadratic variation") {
  NPolynomialExpr w = p(1) * pbar(1);
  CHECK(drift_coefficient(w) == NPolynomialExpr::scalar(n * 2) - w * (n * 2));
  CHECK(drift_coefficient(NPolynomialExpr::scalar(7)).is_zero());
  CHECK(drift_coefficient(w * w) == laplacian(w * w));

  NPolynomialExpr qv = quadratic_variation(w);
  NPolynomialExpr expected = (p(2) * pbar(1, 2)) * -2 + (p(1, 2) * pbar(2)) * -2 + w * (n * 4);
  CHECK(qv == expected);
  CHECK(quadratic_variation(NPolynomialExpr::scalar(3)).is_zero());
  CHECK(expectation(qv).value == n * 4);
}

TEST_CASE("fourth moment coefficient cancels exactly") {
  auto b = fourth_moment_coefficient();
  CHECK(b.drift_part == IntPoly::monomial(288, 1));
  CHECK(b.second_part == IntPoly::monomial(-288, 1));
  CHECK(b.total.is_zero());
  CHECK(b.min_valid_n == 8);
}

TEST_CASE("derivation property on random monomials") {
  RngStream rng(2024);
  auto draw = [&] { return static_cast<int>(rng.uniform() * 5.0); };  // 0..4
  int checked = 0;
  while (checked < 50) {
    int a1 = draw(), b1 = draw(), a2 = draw(), b2 = draw();
    if (a1 + b1 > 4 || a2 + b2 > 4) continue;
    ++checked;
    NPolynomialExpr f = monomial(a1, b1), g = monomial(a2, b2);
    NPolynomialExpr lhs = laplacian(f * g);
    NPolynomialExpr rhs =
        f * laplacian(g) + g * laplacian(f) + nabla_dot_oracle(a1, b1, a2, b2) * IntPoly(2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("conjugation symmetry and linearity") {
  RngStream rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    NPolynomialExpr e1, e2;
    for (int k = 0; k < 4; ++k) {
      int a = static_cast<int>(rng.uniform() * 3.0), b = static_cast<int>(rng.uniform() * 3.0);
      auto c = IntPoly::monomial(static_cast<std::int64_t>(rng.uniform() * 9.0) - 4,
                                 static_cast<int>(rng.uniform() * 2.0));
      e1 += monomial(a, b) * c;
      a = static_cast<int>(rng.uniform() * 3.0);
      b = static_cast<int>(rng.uniform() * 3.0);
      e2 += monomial(a, b) * IntPoly(static_cast<std::int64_t>(rng.uniform() * 7.0) - 3);
    }
    CHECK(laplacian(e1.bar()) == laplacian(e1).bar());
    CHECK(laplacian(e1 + e2) == laplacian(e1) + laplacian(e2));
    CHECK(expectation(e1 + e2).value == expectation(e1).value + expectation(e2).value);
    CHECK(laplacian(e1 * IntPoly::monomial(3, 1)) == laplacian(e1) * IntPoly::monomial(3, 1));
  }
}

TEST_CASE("heat kernel is stationary: E[laplacian f] = 0") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      if (a + b == 0) continue;
      CHECK(expectation(laplacian(monomial(a, b))).value.is_zero());
    }
}

TEST_CASE("haar moment overflow guard") {
  // huge matched words refuse to overflow silently
  PowerSumWord w = PowerSumWord::p(10, 20) * PowerSumWord::pbar(10, 20);
  CHECK_THROWS_AS(haar_moment(w), std::overflow_error);
  // degree-8 workloads stay comfortably in range
  CHECK(*haar_moment(PowerSumWord::p(4, 2) * PowerSumWord::pbar(4, 2)) == 32);
}
