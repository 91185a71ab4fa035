#include "steinexp/symbolic_moments.hpp"

#include <limits>
#include <sstream>

namespace steinexp {

NPolynomialExpr nabla_pair(int k, int l) {
  if (k == 0 || l == 0) throw std::invalid_argument("nabla_pair: indices must be nonzero");
  IntPoly coeff(-static_cast<std::int64_t>(k) * l);
  int m = k + l;
  if (m == 0)  // p_0 = Tr(I) = n
    return NPolynomialExpr::scalar(coeff * IntPoly::n());
  PowerSumWord w = m > 0 ? PowerSumWord::p(m) : PowerSumWord::pbar(-m);
  return NPolynomialExpr::word(w, coeff);
}

namespace {

// Divide a word by p_1^da * pbar_1^db; exponents are known to be sufficient.
PowerSumWord reduce(PowerSumWord w, int da, int db) {
  if (da > 0) {
    auto it = w.a.find(1);
    it->second -= da;
    if (it->second == 0) w.a.erase(it);
  }
  if (db > 0) {
    auto it = w.b.find(1);
    it->second -= db;
    if (it->second == 0) w.b.erase(it);
  }
  return w;
}

// Product rule over the factor multiset {p_1 x a, pbar_1 x b}: each factor
// contributes Delta f_i / f_i = -n, and each unordered pair contributes
// 2 * (nabla f_i . nabla f_j) / (f_i f_j).
NPolynomialExpr laplacian_word(const PowerSumWord& w) {
  for (auto [j, e] : w.a)
    if (j >= 2)
      throw UnsupportedGeneratorError("laplacian: unsupported generator p[" + std::to_string(j) +
                                      "] (only p_1 and pbar_1 may be differentiated)");
  for (auto [j, e] : w.b)
    if (j >= 2)
      throw UnsupportedGeneratorError("laplacian: unsupported generator pbar[" +
                                      std::to_string(j) +
                                      "] (only p_1 and pbar_1 may be differentiated)");

  std::int64_t a = 0, b = 0;
  if (auto it = w.a.find(1); it != w.a.end()) a = it->second;
  if (auto it = w.b.find(1); it != w.b.end()) b = it->second;

  NPolynomialExpr out;
  if (a + b == 0) return out;  // constants are harmonic

  out.add_term(w, IntPoly::monomial(-(a + b), 1));
  if (a >= 2)
    out += nabla_pair(1, 1) * NPolynomialExpr::word(reduce(w, 2, 0), IntPoly(a * (a - 1)));
  if (b >= 2)
    out += nabla_pair(-1, -1) * NPolynomialExpr::word(reduce(w, 0, 2), IntPoly(b * (b - 1)));
  if (a >= 1 && b >= 1)
    out += nabla_pair(1, -1) * NPolynomialExpr::word(reduce(w, 1, 1), IntPoly(2 * a * b));
  return out;
}

}  // namespace

NPolynomialExpr laplacian(const NPolynomialExpr& expr) {
  NPolynomialExpr out;
  for (const auto& [w, c] : expr.terms()) out += laplacian_word(w) * c;
  return out;
}

std::optional<std::int64_t> haar_moment(const PowerSumWord& word,
                                        std::optional<std::int64_t> n_value) {
  if (n_value && *n_value < word.exponent_sum()) return std::nullopt;
  if (!word.matched()) return 0;
  __int128 v = 1;
  constexpr __int128 limit = std::numeric_limits<std::int64_t>::max();
  auto mul = [&](std::int64_t f) {
    v *= f;
    if (v > limit) throw std::overflow_error("haar_moment: product exceeds 64-bit range");
  };
  for (auto [j, e] : word.a) {
    for (int k = 0; k < e; ++k) mul(j);
    for (int k = 2; k <= e; ++k) mul(k);  // a_j!
  }
  return static_cast<std::int64_t>(v);
}

ExpectationResult expectation(const NPolynomialExpr& expr) {
  ExpectationResult res{IntPoly(), 0};
  for (const auto& [w, c] : expr.terms()) {
    res.min_valid_n = std::max(res.min_valid_n, w.exponent_sum());
    res.value += c * IntPoly(*haar_moment(w));
  }
  return res;
}

std::int64_t expectation_at(const NPolynomialExpr& expr, std::int64_t n_value) {
  std::ostringstream bad;
  for (const auto& [w, c] : expr.terms())
    if (n_value < w.exponent_sum()) bad << ' ' << w.to_string();
  if (!bad.str().empty())
    throw MomentValidityError("expectation: words outside moment validity at n = " +
                              std::to_string(n_value) + ":" + bad.str());
  std::int64_t acc = 0;
  for (const auto& [w, c] : expr.terms()) acc += c.eval(n_value) * *haar_moment(w);
  return acc;
}

NPolynomialExpr drift_coefficient(const NPolynomialExpr& f) { return laplacian(f); }

NPolynomialExpr quadratic_variation(const NPolynomialExpr& f) {
  return laplacian(f * f) - f * laplacian(f) * IntPoly(2);
}

FourthMomentBreakdown fourth_moment_coefficient() {
  NPolynomialExpr w = p(1) * pbar(1);
  NPolynomialExpr w2 = w * w;
  NPolynomialExpr w3 = w2 * w;

  // E[W'|U] = W + t*Delta(W) + O(t^2); E[(W')^2|U] = W^2 + t*Delta(W^2) + O(t^2).
  // In 2E(W^4) - 8E[W^3 E[W'|U]] + 6E[W^2 E[(W')^2|U]] the t^0 parts cancel.
  NPolynomialExpr drift_expr = w3 * laplacian(w) * IntPoly(-8);
  NPolynomialExpr second_expr = w2 * laplacian(w2) * IntPoly(6);

  auto drift = expectation(drift_expr);
  auto second = expectation(second_expr);
  FourthMomentBreakdown out;
  out.drift_part = drift.value;
  out.second_part = second.value;
  out.total = drift.value + second.value;
  out.min_valid_n = std::max(drift.min_valid_n, second.min_valid_n);
  return out;
}

}  // namespace steinexp
