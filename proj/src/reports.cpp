#include "steinexp/reports.hpp"

namespace steinexp {

using nlohmann::json;

json to_json(const BoundReport& r) {
  return json{{"delta", r.delta},
              {"bound", r.bound},
              {"terms", {r.t1_term, r.mean_term, r.third_term, r.remainder_term, r.delta_half}}};
}

json to_json(const EmpiricalPairStats& s) {
  return json{{"a", s.a},
              {"t1", s.t1},
              {"mean_gap", s.mean_gap},
              {"third_abs", s.third_abs},
              {"remainder_abs", s.remainder_abs},
              {"se", {{"t1", s.se_t1},
                      {"mean_gap", s.se_mean_gap},
                      {"third_abs", s.se_third},
                      {"remainder_abs", s.se_remainder}}},
              {"n", s.n},
              {"t", s.t},
              {"count", s.count},
              {"seed", s.seed},
              {"inner_replicas", s.inner_replicas}};
}

json to_json(const DkReport& r) {
  return json{
      {"dk", r.dk}, {"dkw_radius", r.dkw_radius}, {"alpha", r.alpha}, {"count", r.count}};
}

json to_json(const Main2Report& r) {
  return json{{"n", r.n},         {"count", r.count},
              {"seed", r.seed},   {"dk", r.dk},
              {"dkw_radius", r.dkw_radius}, {"bound", r.bound},
              {"pass", r.pass}};
}

json to_json(const LisReport& r) {
  return json{{"n_perm", r.n_perm}, {"l", r.l},       {"count", r.count}, {"seed", r.seed},
              {"exact", r.exact},   {"mc", r.mc},     {"mc_se", r.mc_se}, {"pass", r.pass}};
}

json to_json(const HaarCheckReport& r) {
  return json{{"n", r.n},
              {"count", r.count},
              {"seed", r.seed},
              {"mean_w", r.mean_w},
              {"se_mean", r.se_mean},
              {"second_moment", r.second_moment},
              {"se_second", r.se_second},
              {"ks_invariance", r.ks_invariance},
              {"ks_critical", r.ks_critical},
              {"pass", r.pass}};
}

json to_json(const CalibrationReport& r) {
  return json{{"n", r.n},
              {"t", r.t},
              {"pairs", r.pairs},
              {"seed", r.seed},
              {"slope", r.slope},
              {"slope_target", r.slope_target},
              {"qv_over_t", r.qv_over_t},
              {"qv_target", r.qv_target},
              {"third_t", r.third_t},
              {"third_quarter_t", r.third_quarter_t},
              {"third_ratio", r.third_ratio}};
}

json to_json(const SteinVerifyReport& r) {
  return json{{"max_residual", r.max_residual},
              {"max_closed_form_error", r.max_closed_form_error},
              {"max_ratio_f", r.max_ratio_f},
              {"max_ratio_f_prime", r.max_ratio_f_prime},
              {"max_ratio_f_double", r.max_ratio_f_double},
              {"pass", r.pass}};
}

json to_json(const SymbolicVerifyReport& r) {
  return json{{"laplacian_w", r.laplacian_w},
              {"laplacian_w_sq", r.laplacian_w_sq},
              {"fourth_moment", r.fourth_moment},
              {"identity_w", r.identity_w},
              {"identity_w_sq", r.identity_w_sq},
              {"fourth_zero", r.fourth_zero},
              {"moments", r.moments},
              {"mismatched_words_checked", r.mismatched_words_checked},
              {"pass", r.pass}};
}

json matrix_to_json(const UnitaryMatrix& u) {
  json rows = json::array();
  for (int i = 0; i < u.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < u.dim(); ++j) {
      const auto& z = u.matrix()(i, j);
      row.push_back({z.real(), z.imag()});
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", u.dim()}, {"entries", rows}};
}

json expr_to_json(const NPolynomialExpr& e) {
  json terms = json::array();
  for (const auto& [word, coeff] : e.terms()) {
    json p_parts = json::array(), pbar_parts = json::array();
    for (auto [j, exp] : word.a) p_parts.push_back({j, exp});
    for (auto [j, exp] : word.b) pbar_parts.push_back({j, exp});
    terms.push_back(
        {{"coeff", coeff.coeffs()}, {"p", p_parts}, {"pbar", pbar_parts}});
  }
  return json{{"terms", terms}, {"render", e.to_string()}};
}

}  // namespace steinexp
