#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpquad/class_spec.hpp"
#include "sharpquad/kernels.hpp"

namespace sharpquad {

struct Attainment {
    double ratio;
    std::string construction;
};

/// The result of a sharp-constant computation: the recovery node, the
/// coefficients c_0..c_{n-1}, and the best-possible error constant on the
/// class. For Sobolev and weighted classes the constant is the L_{q'} norm
/// of the top kernel.
struct BoundReport {
    std::string kind;
    int n = 0;
    double q = 0.0;      // NaN for Holder
    double qprime = 0.0; // NaN for Holder
    double node = 0.0;
    std::vector<double> coefficients;
    double constant = 0.0;
    std::optional<KernelChain> kernel;
    /// Worst relative disagreement of the two coefficient formulas
    /// (trivial-weight chains only).
    std::optional<double> coefficient_agreement;
    std::optional<Attainment> attainment;
    bool sharp = true;
    std::string sharpness_note;
};

/// Sharp constant over the Sobolev class of order n with ||f^(n)||_q <= 1,
/// recovery at node x.
BoundReport sobolev_bound(const PiecewisePolynomial& p, int n, double q, double x);

/// Same pipeline over the weighted-operator class D^n_q.
BoundReport general_bound(const PiecewisePolynomial& p, const WeightSystem& weights, double q,
                          double x);

/// Constants at grid+1 equispaced nodes including both endpoints.
/// spec.kind must not be Holder (that class fixes the node by balancing).
std::vector<std::pair<double, double>> sweep_node(const PiecewisePolynomial& p,
                                                  const ClassSpec& spec, int grid);

/// Minimizes the constant over the node: golden-section refinement seeded by
/// the best point of a 129-node sweep. The objective is continuous in x but
/// not assumed unimodal; the sweep guards multimodality. Heuristic, not a
/// certificate.
std::pair<double, double> optimize_node(const PiecewisePolynomial& p, const ClassSpec& spec);

/// Constant-only evaluation used by sweeps and the optimizer.
double bound_constant(const PiecewisePolynomial& p, const ClassSpec& spec, double x);

/// Full report for a Sobolev or weighted class spec (chain order spec.n).
BoundReport class_bound(const PiecewisePolynomial& p, const ClassSpec& spec, double x);

} // namespace sharpquad
