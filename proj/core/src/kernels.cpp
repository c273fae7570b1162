#include "sharpquad/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sharpquad {

namespace {

void check_positive(const PiecewisePolynomial& w, const Interval& dom) {
    // Global minimum over critical points and breakpoints.
    auto [mn, mx] = w.extrema_on(dom.a, dom.b);
    (void)mx;
    if (mn <= 0.0) {
        // Locate an offending point for the message.
        double where = dom.a;
        const auto& breaks = w.breakpoints();
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            auto [lo, hi] = w.extrema_on(breaks[i], breaks[i + 1]);
            (void)hi;
            if (lo <= 0.0) {
                // Bisect for a point where the piece dips to its minimum.
                double u = breaks[i], v = breaks[i + 1], best = u;
                double bv = w.eval_piece(i, u);
                for (int s = 0; s <= 64; ++s) {
                    double t = u + (v - u) * double(s) / 64.0;
                    double val = w.eval_piece(i, t);
                    if (val < bv) {
                        bv = val;
                        best = t;
                    }
                }
                where = best;
                break;
            }
        }
        throw std::domain_error("weight is not strictly positive near t = " +
                                std::to_string(where) + " (min = " + std::to_string(mn) + ")");
    }
}

bool is_one(const PiecewisePolynomial& w) {
    for (std::size_t i = 0; i < w.piece_count(); ++i) {
        const auto& c = w.piece_local_coeffs(i);
        if (c.size() != 1 || c[0] != 1.0) return false;
    }
    return true;
}

} // namespace

WeightSystem::WeightSystem(Interval domain, std::vector<PiecewisePolynomial> weights)
    : domain_(domain), weights_(std::move(weights)), trivial_(true) {
    for (const auto& w : weights_) {
        if (!(w.domain() == domain_))
            throw std::invalid_argument("WeightSystem: weight domain mismatch");
        check_positive(w, domain_);
        if (!is_one(w)) trivial_ = false;
    }
}

WeightSystem WeightSystem::trivial(const Interval& dom, int n) {
    std::vector<PiecewisePolynomial> w(std::max(n, 0), PiecewisePolynomial::constant(dom, 1.0));
    return WeightSystem(dom, std::move(w));
}

PiecewisePolynomial kernel_step(const PiecewisePolynomial& p, const PiecewisePolynomial& w,
                                double x) {
    Interval dom = p.domain();
    if (!dom.contains(x)) throw std::domain_error("kernel_step: node x outside domain");
    check_positive(w, dom);

    PiecewisePolynomial G = (p * w).antiderivative(dom.a);
    double Gb = G(dom.b);
    if (x == dom.a) {
        // Only the right branch: G(b) - G(s).
        return PiecewisePolynomial::constant(dom, Gb) - G;
    }
    if (x == dom.b) return -G;

    PiecewisePolynomial split = G.with_breakpoint(x);
    const auto& breaks = split.breakpoints();
    std::vector<std::vector<double>> cc(split.piece_count());
    for (std::size_t i = 0; i < split.piece_count(); ++i) {
        std::vector<double> c = split.piece_local_coeffs(i);
        if (breaks[i + 1] <= x) {
            for (double& v : c) v = -v; // -G on [a,x]
        } else {
            for (double& v : c) v = -v; // G(b) - G on [x,b]
            c[0] += Gb;
        }
        cc[i] = std::move(c);
    }
    return PiecewisePolynomial(breaks, std::move(cc));
}

KernelChain build_chain(const PiecewisePolynomial& p, const WeightSystem& weights, double x,
                        int n) {
    if (n < 0) throw std::invalid_argument("build_chain: negative order");
    if (int(weights.size()) < n)
        throw std::invalid_argument("build_chain: weight system has " +
                                    std::to_string(weights.size()) + " entries, need " +
                                    std::to_string(n));
    if (!(p.domain() == weights.domain()))
        throw std::invalid_argument("build_chain: p and weights live on different domains");
    if (!p.domain().contains(x)) throw std::domain_error("build_chain: node x outside domain");

    std::vector<PiecewisePolynomial> chain;
    chain.reserve(n + 1);
    chain.push_back(p);
    for (int k = 1; k <= n; ++k) chain.push_back(kernel_step(chain.back(), weights[k - 1], x));
    return KernelChain{p, x, weights, std::move(chain)};
}

double moment(const PiecewisePolynomial& p, double x, int k) {
    if (k < 0) throw std::invalid_argument("moment: negative order");
    Interval dom = p.domain();
    std::vector<double> shifted{-x, 1.0}; // (t - x)
    PiecewisePolynomial tmx = PiecewisePolynomial::polynomial(dom, shifted);
    PiecewisePolynomial pow = PiecewisePolynomial::constant(dom, 1.0);
    double fact = 1.0;
    for (int j = 1; j <= k; ++j) {
        pow = pow * tmx;
        fact *= double(j);
    }
    return (p * pow).integrate() / fact;
}

std::vector<double> recovery_coefficients(const KernelChain& chain) {
    int n = chain.order();
    if (n < 1) throw std::invalid_argument("recovery_coefficients: chain order must be >= 1");
    std::vector<double> c(n);
    for (int k = 0; k < n; ++k) {
        const PiecewisePolynomial& w = chain.weights[k];
        c[k] = (chain.chain[k] * w).integrate() / w(chain.x);
    }
    if (chain.weights.is_trivial()) {
        for (int k = 0; k < n; ++k) {
            double m = moment(chain.p, chain.x, k);
            if (std::abs(c[k] - m) > 1e-11 * (1.0 + std::max(std::abs(c[k]), std::abs(m))))
                throw std::logic_error(
                    "recovery_coefficients: kernel-form and moment-form coefficients disagree "
                    "at k = " + std::to_string(k));
        }
    }
    return c;
}

double coefficient_formula_agreement(const KernelChain& chain) {
    if (!chain.weights.is_trivial())
        throw std::invalid_argument("coefficient_formula_agreement: weights are not trivial");
    int n = chain.order();
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const PiecewisePolynomial& w = chain.weights[k];
        double a = (chain.chain[k] * w).integrate() / w(chain.x);
        double b = moment(chain.p, chain.x, k);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))));
    }
    return worst;
}

} // namespace sharpquad
