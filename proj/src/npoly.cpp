#include "steinexp/npoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace steinexp {

IntPoly::IntPoly(std::int64_t constant) {
  if (constant != 0) c_.push_back(constant);
}

IntPoly IntPoly::n() { return monomial(1, 1); }

IntPoly IntPoly::monomial(std::int64_t coeff, int power) {
  IntPoly out;
  if (coeff == 0) return out;
  out.c_.assign(static_cast<std::size_t>(power) + 1, 0);
  out.c_.back() = coeff;
  return out;
}

std::int64_t IntPoly::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(power)];
}

std::int64_t IntPoly::eval(std::int64_t n_value) const {
  std::int64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n_value + *it;
  return acc;
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator-() const {
  IntPoly out(*this);
  for (auto& v : out.c_) v = -v;
  return out;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), 0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), 0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  normalize();
  return *this;
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  IntPoly out;
  if (is_zero() || rhs.is_zero()) return out;
  out.c_.assign(c_.size() + rhs.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) out.c_[i + j] += c_[i] * rhs.c_[j];
  out.normalize();
  return out;
}

namespace {

// One power of n rendered with its coefficient, no leading sign handling.
void append_monomial(std::ostringstream& os, std::int64_t coeff, int power) {
  if (power == 0) {
    os << coeff;
    return;
  }
  if (coeff == -1)
    os << '-';
  else if (coeff != 1)
    os << coeff;
  os << 'n';
  if (power > 1) os << '^' << power;
}

}  // namespace

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    std::int64_t v = coeff(k);
    if (v == 0) continue;
    if (first) {
      append_monomial(os, v, k);
      first = false;
    } else {
      os << (v > 0 ? " + " : " - ");
      append_monomial(os, std::abs(v), k);
    }
  }
  return os.str();
}

PowerSumWord PowerSumWord::p(int j, int exp) {
  PowerSumWord w;
  if (j <= 0) throw std::invalid_argument("power-sum index must be positive");
  if (exp > 0) w.a[j] = exp;
  return w;
}

PowerSumWord PowerSumWord::pbar(int j, int exp) {
  PowerSumWord w;
  if (j <= 0) throw std::invalid_argument("power-sum index must be positive");
  if (exp > 0) w.b[j] = exp;
  return w;
}

int PowerSumWord::degree() const {
  int d = 0;
  for (auto [j, e] : a) d += j * e;
  for (auto [j, e] : b) d += j * e;
  return d;
}

int PowerSumWord::exponent_sum() const {
  int s = 0;
  for (auto [j, e] : a) s += e;
  for (auto [j, e] : b) s += e;
  return s;
}

PowerSumWord PowerSumWord::operator*(const PowerSumWord& rhs) const {
  PowerSumWord out(*this);
  for (auto [j, e] : rhs.a) out.a[j] += e;
  for (auto [j, e] : rhs.b) out.b[j] += e;
  return out;
}

namespace {

// Parts of one exponent map as a descending list, e.g. {1:2} -> [1,1], {2:1} -> [2].
std::vector<int> part_list(const std::map<int, int>& m) {
  std::vector<int> parts;
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    for (int k = 0; k < it->second; ++k) parts.push_back(it->first);
  return parts;
}

void append_parts(std::ostringstream& os, const char* name, const std::map<int, int>& m) {
  os << name << '[';
  bool first = true;
  for (int part : part_list(m)) {
    if (!first) os << ',';
    os << part;
    first = false;
  }
  os << ']';
}

}  // namespace

std::string PowerSumWord::to_string() const {
  if (is_scalar()) return "";
  std::ostringstream os;
  if (!a.empty()) append_parts(os, "p", a);
  if (!b.empty()) {
    if (!a.empty()) os << '*';
    append_parts(os, "pbar", b);
  }
  return os.str();
}

bool WordOrder::operator()(const PowerSumWord& x, const PowerSumWord& y) const {
  int dx = x.degree(), dy = y.degree();
  if (dx != dy) return dx > dy;
  auto ax = part_list(x.a), ay = part_list(y.a);
  if (ax != ay) return ax > ay;
  return part_list(x.b) > part_list(y.b);
}

NPolynomialExpr NPolynomialExpr::scalar(IntPoly c) {
  NPolynomialExpr e;
  e.add_term(PowerSumWord::scalar(), c);
  return e;
}

NPolynomialExpr NPolynomialExpr::word(PowerSumWord w, IntPoly c) {
  NPolynomialExpr e;
  e.add_term(w, c);
  return e;
}

const IntPoly* NPolynomialExpr::coefficient(const PowerSumWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? nullptr : &it->second;
}

void NPolynomialExpr::add_term(const PowerSumWord& w, const IntPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NPolynomialExpr NPolynomialExpr::operator-() const {
  NPolynomialExpr out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

NPolynomialExpr& NPolynomialExpr::operator+=(const NPolynomialExpr& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

NPolynomialExpr& NPolynomialExpr::operator-=(const NPolynomialExpr& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

NPolynomialExpr NPolynomialExpr::operator*(const NPolynomialExpr& rhs) const {
  NPolynomialExpr out;
  for (const auto& [wl, cl] : terms_)
    for (const auto& [wr, cr] : rhs.terms_) out.add_term(wl * wr, cl * cr);
  return out;
}

NPolynomialExpr NPolynomialExpr::operator*(const IntPoly& c) const {
  NPolynomialExpr out;
  if (c.is_zero()) return out;
  for (const auto& [w, cw] : terms_) out.terms_.emplace(w, cw * c);
  return out;
}

NPolynomialExpr NPolynomialExpr::bar() const {
  NPolynomialExpr out;
  for (const auto& [w, c] : terms_) out.add_term(w.bar(), c);
  return out;
}

std::string NPolynomialExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    bool negative = c.leading() < 0;
    IntPoly mag = negative ? -c : c;
    if (first) {
      if (negative) os << '-';
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    bool single = true;  // single monomial in n needs no parentheses
    {
      int nonzero = 0;
      for (auto v : mag.coeffs())
        if (v != 0) ++nonzero;
      single = nonzero <= 1;
    }
    std::string ws = w.to_string();
    if (ws.empty()) {
      os << (single ? mag.to_string() : "(" + mag.to_string() + ")");
    } else if (mag == IntPoly(1)) {
      os << ws;
    } else {
      os << (single ? mag.to_string() : "(" + mag.to_string() + ")") << '*' << ws;
    }
  }
  return os.str();
}

NPolynomialExpr p(int j, int exp) { return NPolynomialExpr::word(PowerSumWord::p(j, exp)); }
NPolynomialExpr pbar(int j, int exp) { return NPolynomialExpr::word(PowerSumWord::pbar(j, exp)); }

}  // namespace steinexp
