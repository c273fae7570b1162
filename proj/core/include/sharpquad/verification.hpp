#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sharpquad/bounds.hpp"
#include "sharpquad/class_spec.hpp"
#include "sharpquad/holder.hpp"

namespace sharpquad {

/// A concrete class member f together with its operator chain D_0 f .. D_m f
/// (exact piecewise polynomials) and a note on how membership was certified.
struct TestFunction {
    PiecewisePolynomial f;
    std::vector<PiecewisePolynomial> derivative_chain; // D_0 .. D_m
    std::string class_note;
};

/// f with D_n f = g, built by n alternating steps of antiderivative (from a,
/// constant 0) and multiplication by w_k, applied w_n down to w_1. Exact for
/// piecewise-polynomial g.
TestFunction reconstruct_from_derivative(const PiecewisePolynomial& g, const WeightSystem& weights,
                                         int n);

/// Numeric path for a general integrand: g is first projected onto a
/// piecewise polynomial (composite Chebyshev interpolation, ~10^4 panels by
/// default, geometrically graded into the supplied kink locations), then the
/// exact path runs on the projection.
TestFunction reconstruct_from_derivative(const std::function<double(double)>& g,
                                         const WeightSystem& weights, int n,
                                         const std::vector<double>& kinks = {},
                                         int base_panels = 10000, int degree = 12);

/// Exact operator chain D_0..D_n for a given f: derivative steps for trivial
/// weights, polynomial division by w_k otherwise. Empty when a division is
/// inexact.
std::optional<std::vector<PiecewisePolynomial>> exact_operator_chain(
    const PiecewisePolynomial& f, const WeightSystem& weights, int n);

/// Central-difference fallback for (D_k f)(t) when no exact chain exists.
/// Nested differencing: accuracy degrades with k, intended for k <= 2 at
/// tolerances around 1e-6.
double fd_operator_value(const std::function<double(double)>& f, const WeightSystem& weights,
                         int k, double t, double step = 1e-6);

struct RepresentationCheck {
    double lhs; // integral of p f minus the recovery formula
    double rhs; // integral of r^n D_n f
    double residual;
};

/// Checks the representation identity for one configuration; both sides are
/// evaluated with exact piecewise calculus. Throws if f's chain is shorter
/// than n.
RepresentationCheck verify_representation(const PiecewisePolynomial& p,
                                          const WeightSystem& weights, double x,
                                          const TestFunction& f, int n);

/// Max over k = 1..kmax of the scaled residual between the kernel mean of
/// r^k and the k-th factorial moment of p (trivial weights).
double verify_moment_identity(const PiecewisePolynomial& p, double x, int kmax);

struct ExtremalResult {
    TestFunction f;
    double ratio;
    std::string construction;
};

/// A class member on which the bound is (asymptotically) attained:
///   q in (1,inf): g = sign(r)|r|^{q'-1}, normalized (Holder equality);
///   q = inf:      g = sign(r);
///   q = 1:        a piecewise-linear spike of relative width 1e-4 at the
///                 argmax of |r| (asymptotic attainment, ratio >= 0.999).
/// The ratio is |Lambda f - I f| / ||r||_{q'} with f reconstructed from g.
ExtremalResult extremal_function(const KernelChain& chain, double q);

struct AuditReport {
    int trials = 0;
    double max_ratio = 0.0;
    int violations = 0;
    std::uint64_t seed = 0;
};

/// Randomized class audit: draws class members, reconstructs them, and
/// compares the recovery error against the module-computed bound. A ratio
/// above 1 + 1e-9 counts as a violation. Trial 0 injects the extremal
/// construction for Sobolev/weighted kinds with q > 1. For Holder kinds the
/// node is recomputed from the balancing condition and x is ignored.
/// Per-trial generators derive from (seed, trial), so the report is
/// reproducible under any schedule.
AuditReport monte_carlo_audit(const PiecewisePolynomial& p, const ClassSpec& spec, double x,
                              int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Named check suites (shared by the CLI `verify` command and the acceptance
// tests).

struct CheckResult {
    std::string name;
    bool pass;
    double value;
    double threshold;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    bool pass = true;
    std::vector<CheckResult> checks;
};

struct VerifyProblem {
    PiecewisePolynomial p;
    ClassSpec spec;
    double x;
};

SuiteReport run_representation_suite(std::uint64_t seed);
SuiteReport run_moments_suite(std::uint64_t seed);
SuiteReport run_extremal_suite(std::uint64_t seed);
SuiteReport run_audit_suite(int trials, std::uint64_t seed,
                            const std::optional<VerifyProblem>& problem = std::nullopt);

/// suite in {representation, moments, extremal, audit, all}.
std::vector<SuiteReport> run_verify(const std::string& suite, int trials, std::uint64_t seed,
                                    const std::optional<VerifyProblem>& problem = std::nullopt);

} // namespace sharpquad
