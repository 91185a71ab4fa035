#pragma once

#include "json.hpp"
#include "steinexp/mc_engine.hpp"
#include "steinexp/npoly.hpp"
#include "steinexp/verification.hpp"

namespace steinexp {

// JSON views of the report types. Field names of BoundReport are fixed
// interface: {delta, bound, terms: [t1_term, mean_term, third_term,
// remainder_term, delta_half]}.
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const EmpiricalPairStats& s);
nlohmann::json to_json(const DkReport& r);
nlohmann::json to_json(const Main2Report& r);
nlohmann::json to_json(const LisReport& r);
nlohmann::json to_json(const HaarCheckReport& r);
nlohmann::json to_json(const CalibrationReport& r);
nlohmann::json to_json(const SteinVerifyReport& r);
nlohmann::json to_json(const SymbolicVerifyReport& r);

/// Matrix dump as rows of [re, im] pairs, for debugging.
nlohmann::json matrix_to_json(const UnitaryMatrix& u);

/// Term list of an expression: [{coeff: [c0, c1, ...], p: [[j, e], ...],
/// pbar: [[j, e], ...]}, ...] with coefficients ascending by power of n.
nlohmann::json expr_to_json(const NPolynomialExpr& e);

}  // namespace steinexp
