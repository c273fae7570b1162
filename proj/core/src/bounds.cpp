#include "sharpquad/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sharpquad/parallel.hpp"

namespace sharpquad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BoundReport bound_from_chain(KernelChain chain, double q, const char* kind) {
    BoundReport rep;
    rep.kind = kind;
    rep.n = chain.order();
    rep.q = q;
    rep.qprime = conjugate_exponent(q);
    rep.node = chain.x;
    rep.coefficients = recovery_coefficients(chain);
    rep.constant = lq_norm(chain.top(), rep.qprime);
    if (chain.weights.is_trivial())
        rep.coefficient_agreement = coefficient_formula_agreement(chain);
    rep.kernel = std::move(chain);
    return rep;
}

} // namespace

BoundReport sobolev_bound(const PiecewisePolynomial& p, int n, double q, double x) {
    if (n < 1) throw std::invalid_argument("sobolev_bound: n must be >= 1");
    WeightSystem w = WeightSystem::trivial(p.domain(), n);
    return bound_from_chain(build_chain(p, w, x, n), q, "sobolev");
}

BoundReport general_bound(const PiecewisePolynomial& p, const WeightSystem& weights, double q,
                          double x) {
    int n = int(weights.size());
    if (n < 1) throw std::invalid_argument("general_bound: weight system is empty");
    const char* kind = weights.is_trivial() ? "sobolev" : "weighted";
    return bound_from_chain(build_chain(p, weights, x, n), q, kind);
}

double bound_constant(const PiecewisePolynomial& p, const ClassSpec& spec, double x) {
    spec.validate();
    switch (spec.kind) {
    case ClassKind::Sobolev: {
        WeightSystem w = WeightSystem::trivial(p.domain(), spec.n);
        return lq_norm(build_chain(p, w, x, spec.n).top(), conjugate_exponent(spec.q));
    }
    case ClassKind::WeightedOperator:
        return lq_norm(build_chain(p, *spec.weights, x, spec.n).top(),
                       conjugate_exponent(spec.q));
    case ClassKind::Holder:
        throw std::invalid_argument("bound_constant: Holder classes fix the node by balancing");
    }
    return kNaN;
}

BoundReport class_bound(const PiecewisePolynomial& p, const ClassSpec& spec, double x) {
    spec.validate();
    switch (spec.kind) {
    case ClassKind::Sobolev:
        return sobolev_bound(p, spec.n, spec.q, x);
    case ClassKind::WeightedOperator:
        return bound_from_chain(build_chain(p, *spec.weights, x, spec.n), spec.q,
                                spec.weights->is_trivial() ? "sobolev" : "weighted");
    case ClassKind::Holder:
        throw std::invalid_argument("class_bound: use holder_bound for Holder classes");
    }
    throw std::logic_error("class_bound: unreachable");
}

std::vector<std::pair<double, double>> sweep_node(const PiecewisePolynomial& p,
                                                  const ClassSpec& spec, int grid) {
    if (grid < 2) throw std::invalid_argument("sweep_node: grid must be >= 2");
    if (spec.kind == ClassKind::Holder)
        throw std::invalid_argument("sweep_node: Holder classes fix the node by balancing");
    Interval dom = p.domain();
    std::vector<std::pair<double, double>> table(grid + 1);
    parallel_for(std::size_t(grid) + 1, [&](std::size_t i) {
        double x = (i == std::size_t(grid))
                       ? dom.b
                       : dom.a + dom.length() * double(i) / double(grid);
        table[i] = {x, bound_constant(p, spec, x)};
    });
    return table;
}

std::pair<double, double> optimize_node(const PiecewisePolynomial& p, const ClassSpec& spec) {
    if (spec.kind == ClassKind::Holder)
        throw std::invalid_argument("optimize_node: Holder classes fix the node by balancing");
    Interval dom = p.domain();
    auto f = [&](double x) { return bound_constant(p, spec, x); };

    auto table = sweep_node(p, spec, 128);
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.size(); ++i)
        if (table[i].second < table[best].second) best = i;

    double lo = table[best == 0 ? 0 : best - 1].first;
    double hi = table[best + 1 >= table.size() ? table.size() - 1 : best + 1].first;
    if (!(hi > lo)) return table[best];

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10 * dom.length()) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    double xs = f1 <= f2 ? x1 : x2;
    double fs = std::min(f1, f2);
    if (table[best].second < fs) return table[best];
    return {xs, fs};
}

} // namespace sharpquad
