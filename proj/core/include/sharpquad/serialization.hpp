#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpquad/bounds.hpp"
#include "sharpquad/class_spec.hpp"
#include "sharpquad/kernels.hpp"
#include "sharpquad/verification.hpp"

namespace sharpquad {

/// 17-significant-digit rendering; round-trips doubles exactly and keeps
/// reports byte-stable.
std::string format_double(double v);

/// Wire format: {"breakpoints":[...], "pieces":[[c0,c1,...],...]} with
/// coefficients ascending powers in the absolute variable.
std::string to_json(const PiecewisePolynomial& pp, int indent = -1);
PiecewisePolynomial pp_from_json(const std::string& text);

/// {"p":..., "x":..., "weights":[...], "chain":[...]} in the format above.
std::string to_json(const KernelChain& chain, int indent = -1);
KernelChain chain_from_json(const std::string& text);

std::string to_json(const BoundReport& rep, bool include_kernel = true, int indent = 2);
std::string to_json(const AuditReport& rep, int indent = 2);
std::string to_json(const std::vector<SuiteReport>& suites, int indent = 2);

/// p given as "const:c", "poly:c0,c1,...", inline JSON, or a path to a JSON
/// file. An explicit interval must match an inline/file polynomial's domain.
PiecewisePolynomial parse_p_spec(const std::string& spec, const std::optional<Interval>& dom);

/// Weight list: inline JSON array (pp objects or plain coefficient arrays in
/// ascending powers) or a path to one.
WeightSystem parse_weights_spec(const std::string& spec, const Interval& dom);

/// "linear:K", "power:K:alpha", or "table:<file>" where the file holds
/// {"points":[[u, omega],...], "concave":bool}.
ModulusSpec parse_omega_spec(const std::string& spec);

/// Problem description for `verify --spec`:
/// {"p":..., "interval":[a,b], "kind":"sobolev|weighted|holder", "n":...,
///  "q":number|"inf", "weights":[...], "omega":"...", "x":...}.
VerifyProblem parse_verify_spec(const std::string& text);

std::string read_text_file(const std::string& path);

} // namespace sharpquad
