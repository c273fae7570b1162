#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sharpquad/piecewise.hpp"
#include "sharpquad/rng.hpp"

using namespace sharpquad;

namespace {

const Interval unit(0.0, 1.0);

// The classical kernel shape: -s on [0,1/2], 1-s on [1/2,1].
PiecewisePolynomial classical_kernel() {
    return PiecewisePolynomial::from_absolute({0.0, 0.5, 1.0}, {{0.0, -1.0}, {1.0, -1.0}});
}

PiecewisePolynomial random_pp(Rng& rng, int pieces, int deg) {
    std::vector<double> bp{0.0, 1.0};
    for (int i = 1; i < pieces; ++i) bp.push_back(rng.uniform(0.05, 0.95));
    std::sort(bp.begin(), bp.end());
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        if (bp[i + 1] - bp[i] < 1e-3) bp[i + 1] = bp[i] + 1e-3;
    bp.back() = 1.0;
    std::vector<std::vector<double>> cc(bp.size() - 1);
    for (auto& c : cc) {
        c.resize(std::size_t(deg) + 1);
        for (double& v : c) v = rng.normal();
    }
    return PiecewisePolynomial(std::move(bp), std::move(cc));
}

} // namespace

TEST_CASE("evaluate: constants, convention at breakpoints, domain errors") {
    auto one = PiecewisePolynomial::constant(unit, 1.0);
    CHECK(one(0.3) == doctest::Approx(1.0).epsilon(1e-15));

    auto r = classical_kernel();
    CHECK(r(0.5) == doctest::Approx(-0.5).epsilon(1e-15));  // left-piece convention
    CHECK(r(0.25) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(r(0.0) == doctest::Approx(0.0));                  // right piece at t=a
    CHECK(r(1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(r(-0.01), std::domain_error);
    CHECK_THROWS_AS(r(1.01), std::domain_error);
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(Interval(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(PiecewisePolynomial({0.0, 0.5, 0.5, 1.0}, {{1.0}, {1.0}, {1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePolynomial({0.0, 1.0}, {{1.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("multiply: identity factor, monomials, piecewise") {
    auto one = PiecewisePolynomial::constant(unit, 1.0);
    auto lin = PiecewisePolynomial::polynomial(unit, {1.0, 1.0}); // 1+t
    auto prod = lin * one;
    for (double t : {0.0, 0.25, 0.7, 1.0})
        CHECK(prod(t) == doctest::Approx(1.0 + t).epsilon(1e-15));

    auto t1 = PiecewisePolynomial::polynomial(unit, {0.0, 1.0});
    auto sq = t1 * t1;
    CHECK(sq.degree() == 2);
    for (double t : {0.1, 0.5, 0.9}) CHECK(sq(t) == doctest::Approx(t * t).epsilon(1e-14));

    auto r = classical_kernel();
    auto rs = r * t1; // (-s^2, s-s^2)
    CHECK(rs(0.25) == doctest::Approx(-0.0625).epsilon(1e-14));
    CHECK(rs(0.75) == doctest::Approx(0.75 - 0.5625).epsilon(1e-14));

    auto other = PiecewisePolynomial::constant(Interval(0.0, 2.0), 1.0);
    CHECK_THROWS_AS(r * other, std::invalid_argument);
}

TEST_CASE("antiderivative: base point and continuity") {
    auto one = PiecewisePolynomial::constant(unit, 1.0);
    auto F = one.antiderivative(0.0);
    for (double t : {0.0, 0.33, 1.0}) CHECK(F(t) == doctest::Approx(t).epsilon(1e-15));

    auto ms = PiecewisePolynomial::polynomial(unit, {0.0, -1.0});
    auto G = ms.antiderivative(0.0);
    for (double t : {0.2, 0.8}) CHECK(G(t) == doctest::Approx(-0.5 * t * t).epsilon(1e-14));

    auto H = one.antiderivative(1.0);
    CHECK(H(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(H(1.0) == doctest::Approx(0.0));

    // Continuity across breakpoints of a jumpy integrand.
    auto r = classical_kernel();
    auto R = r.antiderivative(0.0);
    double left = R(std::nextafter(0.5, 0.0));
    double right = R(std::nextafter(0.5, 1.0));
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
}

TEST_CASE("definite integral: exact values and errors") {
    auto one = PiecewisePolynomial::constant(unit, 1.0);
    CHECK(one.integrate(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    auto t1 = PiecewisePolynomial::polynomial(unit, {0.0, 1.0});
    CHECK(t1.integrate(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    auto c = PiecewisePolynomial::polynomial(unit, {-0.5, 1.0});
    CHECK(c.integrate() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(one.integrate(0.7, 0.3), std::domain_error);
    CHECK(one.integrate(0.4, 0.4) == 0.0);
}

TEST_CASE("real_roots: examples and zero runs") {
    auto lin = PiecewisePolynomial::polynomial(unit, {-0.5, 1.0});
    auto rs = real_roots(lin);
    REQUIRE(rs.points.size() == 1);
    CHECK(rs.points[0] == doctest::Approx(0.5).epsilon(1e-13));

    auto quad = PiecewisePolynomial::polynomial(unit, {0.1875, -1.0, 1.0}); // (t-1/4)(t-3/4)
    rs = real_roots(quad);
    REQUIRE(rs.points.size() == 2);
    CHECK(rs.points[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rs.points[1] == doctest::Approx(0.75).epsilon(1e-12));

    auto one = PiecewisePolynomial::constant(unit, 1.0);
    CHECK(real_roots(one).points.empty());

    // An identically-zero piece is a zero run, not a root list.
    auto partial = PiecewisePolynomial::from_absolute({0.0, 0.5, 1.0}, {{0.0}, {-0.5, 1.0}});
    rs = real_roots(partial);
    REQUIRE(rs.zero_runs.size() == 1);
    CHECK(rs.zero_runs[0].a == 0.0);
    CHECK(rs.zero_runs[0].b == 0.5);

    // Even-multiplicity root (no sign change).
    auto touch = PiecewisePolynomial::polynomial(unit, {0.25, -1.0, 1.0}); // (t-1/2)^2
    rs = real_roots(touch);
    REQUIRE(rs.points.size() == 1);
    CHECK(rs.points[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("lq_norm: classical kernel values") {
    auto r = classical_kernel();
    CHECK(lq_norm(r, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(lq_norm(r, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK(lq_norm(r, 2.0) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lq_norm(r, 0.5), std::domain_error);
}

TEST_CASE("conjugate exponent conventions") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(conjugate_exponent(1.0) == inf);
    CHECK(conjugate_exponent(inf) == 1.0);
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(conjugate_exponent(0.9), std::domain_error);
}

TEST_CASE("property: antiderivative round trip") {
    Rng rng(101);
    for (int i = 0; i < 40; ++i) {
        auto f = random_pp(rng, 4, 5);
        auto F = f.antiderivative(0.0);
        double c = rng.uniform(0.0, 1.0), d = rng.uniform(0.0, 1.0);
        if (c > d) std::swap(c, d);
        double direct = f.integrate(c, d);
        double via = F(d) - F(c);
        CHECK(std::abs(direct - via) <= 1e-13 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("property: lq_norm homogeneity and monotonicity") {
    Rng rng(202);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 15; ++i) {
        auto f = random_pp(rng, 3, 4);
        double c = rng.uniform(-3.0, 3.0);
        for (double qp : {1.0, 2.0, 3.5, inf}) {
            double lhs = lq_norm(c * f, qp);
            double rhs = std::abs(c) * lq_norm(f, qp);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + rhs));
        }
        double scale = f.max_abs();
        if (scale > 0) {
            auto g = (1.0 / scale) * f;
            double n1 = lq_norm(g, 1.0), n2 = lq_norm(g, 2.0), ni = lq_norm(g, inf);
            CHECK(n1 <= n2 * (1.0 + 1e-12));
            CHECK(n2 <= ni * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("property: multiply commutes and distributes") {
    Rng rng(303);
    for (int i = 0; i < 10; ++i) {
        auto u = random_pp(rng, 3, 3);
        auto v = random_pp(rng, 2, 4);
        auto w = random_pp(rng, 4, 2);
        auto uv = u * v, vu = v * u;
        auto lhs = u * (v + w);
        auto rhs = u * v + u * w;
        for (int k = 0; k < 100; ++k) {
            double t = rng.uniform(0.0, 1.0);
            CHECK(std::abs(uv(t) - vu(t)) <= 1e-12 * (1.0 + std::abs(uv(t))));
            CHECK(std::abs(lhs(t) - rhs(t)) <= 1e-12 * (1.0 + std::abs(lhs(t))));
        }
    }
}

TEST_CASE("property: roots evaluate to zero and separate signs") {
    Rng rng(404);
    for (int i = 0; i < 25; ++i) {
        auto f = random_pp(rng, 3, 5);
        auto rs = real_roots(f);
        double scale = f.max_abs();
        for (double t : rs.points) CHECK(std::abs(f(t)) < 1e-10 * (1.0 + scale));
        // Constant sign strictly between consecutive roots within a piece.
        const auto& bp = f.breakpoints();
        for (std::size_t pi = 0; pi + 1 < bp.size(); ++pi) {
            std::vector<double> cuts{bp[pi], bp[pi + 1]};
            for (double t : rs.points)
                if (t > bp[pi] && t < bp[pi + 1]) cuts.push_back(t);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t gi = 0; gi + 1 < cuts.size(); ++gi) {
                int sign = 0;
                bool ok = true;
                for (int s = 1; s <= 9; ++s) {
                    double t = cuts[gi] + (cuts[gi + 1] - cuts[gi]) * s / 10.0;
                    double v = f(t);
                    if (std::abs(v) <= 1e-9 * (1.0 + scale)) continue;
                    int sgn = v > 0 ? 1 : -1;
                    if (sign == 0) sign = sgn;
                    ok = ok && (sign == sgn);
                }
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("degree cap enforced") {
    auto t1 = PiecewisePolynomial::polynomial(unit, {0.0, 1.0});
    auto p = t1;
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 80; ++i) p = p * t1;
        }(),
        std::runtime_error);
}

TEST_CASE("division: exact quotients and rejections") {
    auto lin = PiecewisePolynomial::polynomial(unit, {1.0, 1.0});
    auto quad = lin * lin;
    auto q = try_divide(quad, lin);
    REQUIRE(q.has_value());
    for (double t : {0.1, 0.6}) CHECK((*q)(t) == doctest::Approx(1.0 + t).epsilon(1e-13));

    auto t1 = PiecewisePolynomial::polynomial(unit, {0.0, 1.0});
    CHECK_FALSE(try_divide(t1, lin).has_value());
}
