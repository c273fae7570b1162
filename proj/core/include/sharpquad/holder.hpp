#pragma once

#include "sharpquad/bounds.hpp"
#include "sharpquad/class_spec.hpp"
#include "sharpquad/kernels.hpp"

namespace sharpquad {

/// The pairing between the two branches of a balanced odd-order kernel:
/// R(t) = integral of r from a to t decreases on [a,x] and increases back to
/// zero on [x,b]; rho maps t in [a,x] to the point of [x,b] with the same
/// cumulative mass. rho(a) = b, rho(x) = x, rho nonincreasing.
class RearrangementMap {
public:
    RearrangementMap(KernelChain chain);

    const KernelChain& chain() const { return chain_; }
    const PiecewisePolynomial& cumulative() const { return R_; }
    double node() const { return chain_.x; }

    /// rho(t) for t in [a, x]: bisection on the rising branch of R, polished
    /// with Newton (R' = r), to well below 1e-12 of the domain length.
    double rho(double t) const;

private:
    KernelChain chain_;
    PiecewisePolynomial R_;
    double Rmin_;
};

/// The unique (for p > 0 a.e.) node x with vanishing kernel mean, i.e. the
/// root of m(x) = integral of p(t) (t-x)^n dt, located by bisection to
/// 1e-13*(b-a). Requires odd n and p >= 0 with positive integral; when p
/// vanishes on subintervals and the root set is an interval, the leftmost
/// root is returned. `unique`, when supplied, is cleared if the moment
/// function is flat (wider than 1e-10) around the returned root.
double balancing_point(const PiecewisePolynomial& p, int n, bool* unique = nullptr);

/// Builds the rearrangement map; the chain must be balanced (|R(b)| below
/// 1e-11 * ||r||_inf * (b-a)), have odd order, trivial weights, and p >= 0.
RearrangementMap build_rho(KernelChain chain);

/// Sharp (for concave omega) constant over W^n H^omega with odd n:
/// the integral of |r(t)| * omega(rho(t)-t) over [a,x] at the balancing node,
/// adaptive quadrature with relative tolerance 1e-10.
BoundReport holder_bound(const PiecewisePolynomial& p, int n, const ModulusSpec& omega);

/// Same, with a caller-proposed node; rejected if it violates the balancing
/// condition beyond tolerance (the supremum is infinite otherwise).
BoundReport holder_bound_at(const PiecewisePolynomial& p, int n, const ModulusSpec& omega,
                            double x);

} // namespace sharpquad
