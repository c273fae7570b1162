#include "sharpquad/multivariate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpquad/quadrature.hpp"
#include "sharpquad/rng.hpp"

namespace sharpquad {

CubeSpec::CubeSpec(int d_, double q_) : d(d_), q(q_) {
    if (d < 2) throw std::domain_error("cube: dimension must be >= 2");
    if (std::isnan(q) || !(q > double(d)))
        throw std::domain_error("cube: require q > d = " + std::to_string(d) +
                                " (the conjugate norm diverges otherwise)");
}

double cube_constant_quadrature(int d, double qprime) {
    double beta = double(d) - double(d - 1) * qprime;
    if (!(beta > 0.0))
        throw std::domain_error("cube: (d-1)q' must be < d for an integrable radius");
    // integral over the cube of (u^{1-d} - u)^{q'} with u = |y|_inf reduces
    // radially to 2^d d * I with, after u = v^{1/beta},
    // I = (1/beta) * integral_0^1 (1 - v^{d/beta})^{q'} dv (singularity gone).
    double expo = double(d) / beta;
    auto g = [&](double v) { return std::pow(1.0 - std::pow(v, expo), qprime); };
    double I = adaptive_gauss_split(g, 0.0, 1.0, {}, 1e-13) / beta;
    double norm = std::pow(std::pow(2.0, d) * double(d) * I, 1.0 / qprime);
    return norm / double(d);
}

double cube_constant(const CubeSpec& spec) {
    if (std::isinf(spec.q)) {
        // q' = 1: closed form 2^d d/(d+1).
        return std::pow(2.0, spec.d) * double(spec.d) / double(spec.d + 1);
    }
    return cube_constant_quadrature(spec.d, conjugate_exponent(spec.q));
}

double ball_bv_bound(double v) {
    if (std::isnan(v) || v < 0.0)
        throw std::domain_error("ball-bv: variation must be nonnegative");
    return 0.5 * v;
}

namespace {

double linf_sample(Rng& rng, int d) {
    double u = 0.0;
    for (int j = 0; j < d; ++j) u = std::max(u, std::abs(2.0 * rng.uniform() - 1.0));
    return u;
}

} // namespace

std::pair<double, double> cube_monomial_mc(int d, int k, std::uint64_t samples,
                                           std::uint64_t seed) {
    if (d < 1 || k < 0 || samples == 0) throw std::invalid_argument("cube_monomial_mc: bad args");
    Rng rng(seed);
    double vol = std::pow(2.0, d);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double z = std::pow(linf_sample(rng, d), double(k));
        sum += z;
        sum2 += z * z;
    }
    double mean = sum / double(samples);
    double var = std::max(0.0, sum2 / double(samples) - mean * mean);
    double se = std::sqrt(var / double(samples));
    return {vol * mean, vol * se};
}

std::pair<double, double> cube_norm_mc(int d, double qprime, std::uint64_t samples,
                                       std::uint64_t seed) {
    double beta = double(d) - double(d - 1) * qprime;
    if (!(beta > 0.0)) throw std::domain_error("cube_norm_mc: (d-1)q' must be < d");
    if (samples == 0) throw std::invalid_argument("cube_norm_mc: need samples");
    double vol = std::pow(2.0, d);
    // integral of u^{(1-d)q'} over the cube, closed form.
    double singular_part = vol * double(d) / beta;
    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double u = linf_sample(rng, d);
        // (u^{1-d} - u)^{q'} - u^{(1-d)q'} = u^{beta} ((1-u^d)^{q'} - 1)/u^d,
        // bounded on (0,1]; expm1/log1p keep the small-u branch accurate.
        double ud = std::pow(u, double(d));
        double z = (ud == 0.0)
                       ? 0.0
                       : std::pow(u, beta) * std::expm1(qprime * std::log1p(-ud)) / ud;
        sum += z;
        sum2 += z * z;
    }
    double mean = sum / double(samples);
    double var = std::max(0.0, sum2 / double(samples) - mean * mean);
    double se_int = vol * std::sqrt(var / double(samples));
    double integral = singular_part + vol * mean;
    double norm = std::pow(integral, 1.0 / qprime);
    // Delta method for the norm's standard error.
    double se_norm = norm / (qprime * integral) * se_int;
    return {norm, se_norm};
}

} // namespace sharpquad
