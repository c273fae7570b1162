#pragma once

#include <vector>

#include "sharpquad/piecewise.hpp"

namespace sharpquad {

/// The weights w_1..w_n of a weighted differential operator chain
/// D_0 f = f, D_k f = ((1/w_k) D_{k-1} f)'. Each w_k must be strictly
/// positive on the domain; the all-ones system is flagged as trivial.
class WeightSystem {
public:
    WeightSystem(Interval domain, std::vector<PiecewisePolynomial> weights);
    static WeightSystem trivial(const Interval& dom, int n);

    const Interval& domain() const { return domain_; }
    const std::vector<PiecewisePolynomial>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    const PiecewisePolynomial& operator[](std::size_t k) const { return weights_[k]; }
    bool is_trivial() const { return trivial_; }

private:
    Interval domain_;
    std::vector<PiecewisePolynomial> weights_;
    bool trivial_;
};

/// The kernel sequence r^0..r^n attached to (p, weights, x):
/// r^0 = p and r^k is the two-branch kernel of w_k * r^{k-1} at x.
struct KernelChain {
    PiecewisePolynomial p;
    double x;
    WeightSystem weights;
    std::vector<PiecewisePolynomial> chain; // r^0 .. r^n

    int order() const { return int(chain.size()) - 1; }
    const PiecewisePolynomial& top() const { return chain.back(); }
};

/// One kernel step: with P = p*w and G(s) = integral of P from a to s,
/// returns -G on [a,x] and G(b)-G on [x,b], with x inserted as a breakpoint.
/// The two branches generally disagree at s = x; the left-piece convention
/// applies, and every derived quantity is an integral, so the choice is
/// immaterial. x = a or x = b leaves a single branch.
PiecewisePolynomial kernel_step(const PiecewisePolynomial& p, const PiecewisePolynomial& w,
                                double x);

KernelChain build_chain(const PiecewisePolynomial& p, const WeightSystem& weights, double x,
                        int n);

/// The k-th factorial moment (1/k!) * integral of p(t) (t-x)^k.
double moment(const PiecewisePolynomial& p, double x, int k);

/// Recovery coefficients c_0..c_{n-1}: c_k = (integral of r^k w_{k+1}) / w_{k+1}(x).
/// For trivial weights this must match the factorial-moment form; both are
/// computed and their agreement (1e-11 relative) is asserted.
std::vector<double> recovery_coefficients(const KernelChain& chain);

/// Worst relative disagreement between the two coefficient formulas
/// (trivial-weight chains only; used for reporting).
double coefficient_formula_agreement(const KernelChain& chain);

} // namespace sharpquad
