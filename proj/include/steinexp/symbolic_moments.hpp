#pragma once

#include <optional>
#include <stdexcept>

#include "steinexp/npoly.hpp"

namespace steinexp {

/// Thrown when an expression is differentiated but contains p_j / pbar_j with
/// j >= 2. Those factors are legal in outputs, never as Laplacian inputs: the
/// only differentiation rules carried here are the ones for p_1 and pbar_1.
struct UnsupportedGeneratorError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown by expectation_at when a word falls outside the moment formula's
/// validity range n >= sum(a_j + b_j).
struct MomentValidityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Gradient pairing (carre du champ): nabla p_k . nabla p_l = -k*l * p_{k+l},
/// for nonzero integers k, l, where a negative index -j stands for pbar_j and
/// p_0 is the scalar n.
NPolynomialExpr nabla_pair(int k, int l);

/// Laplacian of an expression whose words use only p_1 / pbar_1 factors.
/// Built from the class-function product rule with Delta p_1 = -n p_1,
/// Delta pbar_1 = -n pbar_1 and gradient cross terms from nabla_pair.
NPolynomialExpr laplacian(const NPolynomialExpr& expr);

/// Exact Haar moment of a single word on U(n): prod_j j^{a_j} a_j! when the
/// exponent vectors match, 0 otherwise. Valid for n >= sum(a_j + b_j); a
/// numeric n below that returns nullopt (no extrapolation). Symbolic n
/// (n_value == nullopt) is always in range.
std::optional<std::int64_t> haar_moment(const PowerSumWord& word,
                                        std::optional<std::int64_t> n_value = std::nullopt);

struct ExpectationResult {
  IntPoly value;    // Haar expectation as a polynomial in n
  int min_valid_n;  // largest exponent_sum over the expression's words
};

/// Termwise Haar expectation at symbolic n.
ExpectationResult expectation(const NPolynomialExpr& expr);

/// Haar expectation evaluated at a numeric dimension. Throws
/// MomentValidityError (listing the offending words) if any word requires a
/// larger n.
std::int64_t expectation_at(const NPolynomialExpr& expr, std::int64_t n_value);

/// Coefficient of t in E[f(U')|U] for a heat-kernel step: just the Laplacian.
NPolynomialExpr drift_coefficient(const NPolynomialExpr& f);

/// Coefficient of t in E[(f(U')-f(U))^2|U], computed as
/// Delta(f^2) - 2 f Delta(f).
NPolynomialExpr quadratic_variation(const NPolynomialExpr& f);

struct FourthMomentBreakdown {
  IntPoly drift_part;   // t-coefficient of -8 E[W^3 E[W'|U]]
  IntPoly second_part;  // t-coefficient of  6 E[W^2 E[(W')^2|U]]
  IntPoly total;        // their sum; exactly zero
  int min_valid_n;      // moment validity needed by the computation (8)
};

/// t-coefficient of E[(W'-W)^4] for W = |Tr U|^2, via the exchangeability
/// expansion 2E(W^4) - 8E[W^3 W'] + 6E[W^2 (W')^2]. The constant terms cancel
/// identically and the t-coefficients cancel exactly; both halves are
/// reported.
FourthMomentBreakdown fourth_moment_coefficient();

}  // namespace steinexp
