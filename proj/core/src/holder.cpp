#include "sharpquad/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sharpquad/quadrature.hpp"

namespace sharpquad {

namespace {

void require_admissible_p(const PiecewisePolynomial& p) {
    auto [mn, mx] = p.extrema_on(p.domain().a, p.domain().b);
    (void)mx;
    double scale = p.max_abs();
    if (mn < -1e-12 * (1.0 + scale))
        throw std::domain_error("holder: p must be nonnegative on the domain (min = " +
                                std::to_string(mn) + ")");
    if (!(p.integrate() > 0.0))
        throw std::domain_error("holder: p must have positive integral");
}

double balancing_residual_tol(const PiecewisePolynomial& r) {
    Interval dom = r.domain();
    return 1e-11 * r.max_abs() * dom.length();
}

} // namespace

double balancing_point(const PiecewisePolynomial& p, int n, bool* unique) {
    if (n < 1) throw std::invalid_argument("balancing_point: n must be >= 1");
    if (n % 2 == 0)
        throw std::domain_error("balancing_point: no node balances the kernel mean for even n "
                                "(the n-th moment of a nonnegative p cannot vanish); n must be "
                                "odd");
    require_admissible_p(p);
    Interval dom = p.domain();

    // m(x) = integral p(t)(t-x)^n dt is nonincreasing, positive at a,
    // negative at b. Bisect keeping m(lo) > 0 >= m(hi), which lands on the
    // leftmost root when the root set is an interval.
    auto m = [&](double x) { return moment(p, x, n); };
    double lo = dom.a, hi = dom.b;
    double mlo = m(lo), mhi = m(hi);
    if (mlo <= 0.0) {
        lo = hi = dom.a;
    } else if (mhi > 0.0) {
        lo = hi = dom.b;
    } else {
        while (hi - lo > 1e-13 * dom.length()) {
            double mid = 0.5 * (lo + hi);
            if (m(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
    }
    double x = hi;
    if (unique) {
        double probe = std::min(dom.b, x + 1e-10 * dom.length());
        double scale = std::abs(m(dom.a)) + std::abs(m(dom.b));
        *unique = !(std::abs(m(probe)) <= 1e-13 * (1.0 + scale) && probe > x);
    }
    return x;
}

RearrangementMap::RearrangementMap(KernelChain chain)
    : chain_(std::move(chain)), R_(chain_.top().antiderivative(chain_.p.domain().a)), Rmin_(0.0) {
    const PiecewisePolynomial& r = chain_.top();
    Interval dom = r.domain();
    if (chain_.order() % 2 == 0)
        throw std::domain_error("rearrangement: kernel order must be odd");
    if (!chain_.weights.is_trivial())
        throw std::domain_error("rearrangement: weight system must be trivial");
    require_admissible_p(chain_.p);
    double residual = std::abs(R_(dom.b));
    if (residual > balancing_residual_tol(r))
        throw std::domain_error("rearrangement: balancing condition violated (kernel mean " +
                                std::to_string(residual) + " at node " + std::to_string(chain_.x) +
                                ")");
    Rmin_ = R_(chain_.x);
}

double RearrangementMap::rho(double t) const {
    Interval dom = R_.domain();
    double x = chain_.x;
    if (t < dom.a || t > x)
        throw std::domain_error("rho: argument outside [a, x]");
    if (t == dom.a) return dom.b; // equal cumulative mass by balancing
    double target = R_(t);
    if (target <= Rmin_) return x;
    if (target >= R_(dom.b)) return dom.b;

    // R is nondecreasing on [x,b]; bisect, then polish with Newton (R' = r).
    double lo = x, hi = dom.b;
    while (hi - lo > 1e-12 * dom.length()) {
        double mid = 0.5 * (lo + hi);
        if (R_(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    const PiecewisePolynomial& r = chain_.top();
    for (int it = 0; it < 3; ++it) {
        double dr = r(s);
        if (dr == 0.0) break;
        double step = (R_(s) - target) / dr;
        double sn = s - step;
        if (sn < lo || sn > hi) break;
        s = sn;
    }
    return std::clamp(s, x, dom.b);
}

RearrangementMap build_rho(KernelChain chain) { return RearrangementMap(std::move(chain)); }

namespace {

BoundReport holder_report(const PiecewisePolynomial& p, int n, const ModulusSpec& omega,
                          double x) {
    Interval dom = p.domain();
    omega.validate(dom.length());

    KernelChain chain = build_chain(p, WeightSystem::trivial(dom, n), x, n);
    RearrangementMap map = build_rho(chain); // validates balancing, odd n, p >= 0
    const PiecewisePolynomial& r = map.chain().top();

    double constant = 0.0;
    if (x > dom.a) {
        auto integrand = [&](double t) { return std::abs(r(t)) * omega(map.rho(t) - t); };
        std::vector<double> splits;
        for (double b : r.breakpoints())
            if (b > dom.a && b < x) splits.push_back(b);
        constant = adaptive_gauss_split(integrand, dom.a, x, splits, 1e-10);
    }

    BoundReport rep;
    rep.kind = "holder";
    rep.n = n;
    rep.q = std::numeric_limits<double>::quiet_NaN();
    rep.qprime = std::numeric_limits<double>::quiet_NaN();
    rep.node = x;
    rep.coefficients = recovery_coefficients(map.chain());
    rep.constant = constant;
    rep.coefficient_agreement = coefficient_formula_agreement(map.chain());
    rep.kernel = map.chain();
    rep.sharp = omega.concave();
    rep.sharpness_note = omega.concave() ? "sharp (concave modulus)"
                                         : "upper bound, sharpness not claimed";
    return rep;
}

} // namespace

BoundReport holder_bound(const PiecewisePolynomial& p, int n, const ModulusSpec& omega) {
    double x = balancing_point(p, n);
    return holder_report(p, n, omega, x);
}

BoundReport holder_bound_at(const PiecewisePolynomial& p, int n, const ModulusSpec& omega,
                            double x) {
    if (n % 2 == 0)
        throw std::domain_error("holder: n must be odd (no balanced node exists for even n)");
    if (!p.domain().contains(x)) throw std::domain_error("holder: node outside domain");
    require_admissible_p(p);
    KernelChain chain = build_chain(p, WeightSystem::trivial(p.domain(), n), x, n);
    double residual = std::abs(chain.top().integrate());
    if (residual > balancing_residual_tol(chain.top()))
        throw std::domain_error("holder: node " + std::to_string(x) +
                                " violates the balancing condition (kernel mean " +
                                std::to_string(residual) +
                                "); the supremum over the class is infinite there");
    return holder_report(p, n, omega, x);
}

} // namespace sharpquad
