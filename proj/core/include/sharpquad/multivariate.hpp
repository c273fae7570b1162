#pragma once

#include <cstdint>
#include <utility>

namespace sharpquad {

/// The unit cube [-1,1]^d with the gradient-sum Sobolev class; requires
/// q > d so the conjugate-exponent radial singularity stays integrable.
struct CubeSpec {
    int d;
    double q; // in (d, inf]

    CubeSpec(int d_, double q_);
};

/// Sharp constant for one-point recovery of the cube integral from the
/// center value on the class with || |grad f|_1 ||_q <= 1:
/// (1/d) * || |y|_inf^{1-d} - |y|_inf ||_{L_{q'}(cube)}.
/// q = inf uses the closed form 2^d d/(d+1); otherwise the cube norm reduces
/// to a radial integral whose endpoint singularity is removed by the
/// substitution u = v^{1/(d-(d-1)q')} before quadrature.
double cube_constant(const CubeSpec& spec);

/// Radial-quadrature path without the q = inf shortcut (exposed so tests can
/// compare it against the closed form).
double cube_constant_quadrature(int d, double qprime);

/// Normalized sharp constant for recovery of the unit-ball mean from the
/// center value on continuous functions of bounded variation v: the constant
/// is v/2.
double ball_bv_bound(double v);

/// Plain Monte-Carlo estimate of integral over the cube of g(|y|_inf) for
/// g(u) = u^k (used to audit the radial reduction). Returns mean and
/// standard error of the integral.
std::pair<double, double> cube_monomial_mc(int d, int k, std::uint64_t samples,
                                           std::uint64_t seed);

/// Monte-Carlo estimate of the L_{q'} cube norm of |y|_inf^{1-d} - |y|_inf.
/// The singular part |y|_inf^{(1-d)q'} is split off as a control variate with
/// a closed-form integral; the remainder is bounded, so the estimator has
/// finite variance (the naive one does not for 2(d-1)q' >= d). Returns the
/// norm estimate and its standard error.
std::pair<double, double> cube_norm_mc(int d, double qprime, std::uint64_t samples,
                                       std::uint64_t seed);

} // namespace sharpquad
