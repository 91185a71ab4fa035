#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace steinexp {

/// Integer polynomial in the dimension symbol n, exact arithmetic.
/// Coefficients are stored ascending by power with no trailing zeros;
/// the zero polynomial has an empty coefficient vector.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::int64_t constant);  // implicit on purpose: 2 * expr etc.
  static IntPoly n();              // the symbol n itself
  static IntPoly monomial(std::int64_t coeff, int power);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::int64_t coeff(int power) const;
  std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  std::int64_t eval(std::int64_t n_value) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly operator*(const IntPoly& rhs) const;

  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
  bool operator==(const IntPoly& rhs) const { return c_ == rhs.c_; }

  /// Rendered descending by power, e.g. "3n^2 - 4n + 1", "-2n", "n", "7".
  std::string to_string() const;
  const std::vector<std::int64_t>& coeffs() const { return c_; }

 private:
  void normalize();
  std::vector<std::int64_t> c_;
};

/// A monomial in power sums: prod_j p_j^{a_j} * conj(p_j)^{b_j}.
/// Exponent maps hold only strictly positive entries; the empty word is the
/// scalar 1. p_0 is never stored as a factor (it folds into coefficients
/// as the polynomial n).
struct PowerSumWord {
  std::map<int, int> a;  // j -> exponent of p_j
  std::map<int, int> b;  // j -> exponent of conj(p_j)

  static PowerSumWord scalar() { return {}; }
  static PowerSumWord p(int j, int exp = 1);
  static PowerSumWord pbar(int j, int exp = 1);

  bool is_scalar() const { return a.empty() && b.empty(); }
  int degree() const;        // sum of j * (a_j + b_j)
  int exponent_sum() const;  // sum of (a_j + b_j), the Haar-moment validity weight
  bool matched() const { return a == b; }

  PowerSumWord bar() const { return {b, a}; }
  PowerSumWord operator*(const PowerSumWord& rhs) const;

  bool operator==(const PowerSumWord& rhs) const { return a == rhs.a && b == rhs.b; }
  std::string to_string() const;  // "p[2,1]*pbar[1,1]", "" for scalar
};

/// Strict ordering used for canonical term order: higher degree first, then
/// lexicographically larger p-part, then pbar-part. This is the iteration
/// (and rendering) order of NPolynomialExpr.
struct WordOrder {
  bool operator()(const PowerSumWord& x, const PowerSumWord& y) const;
};

/// Linear combination of PowerSumWords with IntPoly coefficients.
/// Canonical form: zero coefficients are never stored.
class NPolynomialExpr {
 public:
  using TermMap = std::map<PowerSumWord, IntPoly, WordOrder>;

  NPolynomialExpr() = default;
  static NPolynomialExpr zero() { return {}; }
  static NPolynomialExpr scalar(IntPoly c);
  static NPolynomialExpr word(PowerSumWord w, IntPoly c = 1);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  const IntPoly* coefficient(const PowerSumWord& w) const;

  void add_term(const PowerSumWord& w, const IntPoly& c);

  NPolynomialExpr operator-() const;
  NPolynomialExpr& operator+=(const NPolynomialExpr& rhs);
  NPolynomialExpr& operator-=(const NPolynomialExpr& rhs);
  NPolynomialExpr operator*(const NPolynomialExpr& rhs) const;
  NPolynomialExpr operator*(const IntPoly& c) const;

  friend NPolynomialExpr operator+(NPolynomialExpr l, const NPolynomialExpr& r) { return l += r; }
  friend NPolynomialExpr operator-(NPolynomialExpr l, const NPolynomialExpr& r) { return l -= r; }
  bool operator==(const NPolynomialExpr& rhs) const { return terms_ == rhs.terms_; }

  /// Apply the bar-swap involution (a <-> b on every word).
  NPolynomialExpr bar() const;

  /// Human-readable rendering, e.g. "-2n*p[1]*pbar[1] + 2n".
  std::string to_string() const;

 private:
  TermMap terms_;
};

// Convenience factories for building expressions in tests and callers.
NPolynomialExpr p(int j, int exp = 1);
NPolynomialExpr pbar(int j, int exp = 1);

}  // namespace steinexp
