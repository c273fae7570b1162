#pragma once

#include <functional>
#include <vector>

#include "sharpquad/interval.hpp"
#include "sharpquad/piecewise.hpp"

namespace sharpquad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1], computed
/// once per n by Newton iteration on the Legendre polynomial.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// 15-point Gauss-Legendre estimate on [lo,hi] (exact through degree 29).
double gauss15(const std::function<double(double)>& f, double lo, double hi);

/// Adaptive bisection: a panel is accepted when the two-half estimate agrees
/// with the one-panel estimate within the panel's share of `abs_tol`.
/// Depth-capped at 60; integrable endpoint singularities are graded into.
double adaptive_gauss(const std::function<double(double)>& f, double lo, double hi,
                      double abs_tol);

/// Convenience: adaptive integration with interior split points (kinks of f),
/// summed in fixed panel order.
double adaptive_gauss_split(const std::function<double(double)>& f, double lo, double hi,
                            const std::vector<double>& splits, double rel_tol);

/// Mesh for projecting a function handle onto a piecewise polynomial:
/// `base_panels` uniform panels refined by the union with `kinks`, plus
/// `grade_levels` geometrically shrinking panels into each kink from both
/// sides (handles algebraic singularities like |r|^{q'-1} at roots of r).
std::vector<double> projection_mesh(const Interval& dom, int base_panels,
                                    const std::vector<double>& kinks, int grade_levels);

/// Degree-`degree` Chebyshev interpolant of f on every mesh panel, assembled
/// into a piecewise polynomial. Exact (up to rounding) for polynomial f of
/// degree <= degree.
PiecewisePolynomial project_to_piecewise(const std::function<double(double)>& f,
                                         const std::vector<double>& mesh, int degree);

} // namespace sharpquad
