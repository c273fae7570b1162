#pragma once

// Internal helpers shared by serialization.cpp and cli.cpp. The vendor JSON
// parser is used for input; output goes through dump17 so every double prints
// with 17 significant digits.

#include <string>

#include "json.hpp"

#include "sharpquad/bounds.hpp"
#include "sharpquad/kernels.hpp"
#include "sharpquad/piecewise.hpp"
#include "sharpquad/verification.hpp"

namespace sharpquad::detail {

using ordered_json = nlohmann::ordered_json;

std::string dump17(const ordered_json& j, int indent = -1);

ordered_json pp_to_ojson(const PiecewisePolynomial& pp);
PiecewisePolynomial pp_from_ojson(const ordered_json& j);

ordered_json chain_to_ojson(const KernelChain& chain);
KernelChain chain_from_ojson(const ordered_json& j);

ordered_json bound_to_ojson(const BoundReport& rep, bool include_kernel);
ordered_json audit_to_ojson(const AuditReport& rep);
ordered_json suites_to_ojson(const std::vector<SuiteReport>& suites);

/// q as a JSON value: "inf" for infinity, plain number otherwise.
ordered_json q_to_ojson(double q);
double q_from_ojson(const ordered_json& j);

} // namespace sharpquad::detail
