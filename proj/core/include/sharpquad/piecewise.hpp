#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sharpquad/interval.hpp"

namespace sharpquad {

/// Hard cap on per-piece polynomial degree. Kernel chains of length n over a
/// degree-d weight reach degree about n(d+1); beyond 64 root isolation becomes
/// unreliable, so such configurations are rejected early.
inline constexpr int kMaxPieceDegree = 64;

/// A piecewise polynomial on [a,b]: strictly increasing breakpoints
/// t_0 = a < t_1 < ... < t_m = b and one coefficient vector per piece.
///
/// Pieces are stored in a scaled-local basis: on [t_i, t_{i+1}] the value is
/// sum_j c_j * tau^j with tau = (2t - t_i - t_{i+1}) / (t_{i+1} - t_i) in
/// [-1,1]. This keeps evaluation and shifting well conditioned on narrow
/// pieces; the serialized form converts to absolute ascending powers.
///
/// No continuity is implied across breakpoints. Evaluation at an interior
/// breakpoint uses the left piece; at t = a the first piece.
///
/// Immutable after construction; all operations return new values.
class PiecewisePolynomial {
public:
    /// From breakpoints and per-piece local (tau-basis) coefficients.
    PiecewisePolynomial(std::vector<double> breakpoints,
                        std::vector<std::vector<double>> local_coeffs);

    static PiecewisePolynomial constant(const Interval& dom, double c);
    /// Single piece from coefficients in the absolute variable, ascending powers.
    static PiecewisePolynomial polynomial(const Interval& dom, const std::vector<double>& abs_coeffs);
    /// Multiple pieces from absolute-variable coefficients (the wire format).
    static PiecewisePolynomial from_absolute(std::vector<double> breakpoints,
                                             const std::vector<std::vector<double>>& abs_pieces);
    static PiecewisePolynomial zero(const Interval& dom) { return constant(dom, 0.0); }

    Interval domain() const { return {breaks_.front(), breaks_.back()}; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    std::size_t piece_count() const { return coeffs_.size(); }
    const std::vector<double>& piece_local_coeffs(std::size_t i) const { return coeffs_[i]; }
    /// Piece i as ascending-power coefficients in the absolute variable.
    std::vector<double> piece_abs_coeffs(std::size_t i) const;
    int degree() const;
    bool is_zero() const;

    /// Evaluate at t in [a,b] (left-piece convention at interior breakpoints).
    double operator()(double t) const;
    /// Evaluate piece i at t, ignoring which piece owns t. Used for one-sided
    /// values at jumps.
    double eval_piece(std::size_t i, double t) const;

    PiecewisePolynomial derivative() const;
    /// Continuous antiderivative F with F(base) = 0, F' = *this piecewise.
    PiecewisePolynomial antiderivative(double base) const;
    /// Exact integral over [c,d] (a <= c <= d <= b), compensated summation.
    double integrate(double c, double d) const;
    double integrate() const;

    PiecewisePolynomial operator-() const;
    /// Copy with t inserted as a breakpoint (no-op if already present).
    PiecewisePolynomial with_breakpoint(double t) const;
    /// Restriction to [lo,hi] as a new piecewise polynomial on that domain.
    PiecewisePolynomial restrict_to(double lo, double hi) const;
    /// Copy with breakpoints refined to the union with `marks` (marks outside
    /// the domain are ignored).
    PiecewisePolynomial refined(const std::vector<double>& marks) const;

    friend PiecewisePolynomial operator+(const PiecewisePolynomial& u, const PiecewisePolynomial& v);
    friend PiecewisePolynomial operator-(const PiecewisePolynomial& u, const PiecewisePolynomial& v);
    friend PiecewisePolynomial operator*(const PiecewisePolynomial& u, const PiecewisePolynomial& v);
    friend PiecewisePolynomial operator*(double c, const PiecewisePolynomial& u);
    friend std::optional<PiecewisePolynomial> try_divide(const PiecewisePolynomial& u,
                                                         const PiecewisePolynomial& v);

    /// Essential sup of |f| (per-piece extrema; jump values from both sides).
    double max_abs() const;
    /// min/max of f over [lo,hi] via per-piece critical points.
    std::pair<double, double> extrema_on(double lo, double hi) const;

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> coeffs_;

    std::size_t piece_index(double t) const;
    void check_degree() const;
    /// Re-partition onto `grid`, which must be a strictly increasing superset
    /// of the breakpoints with the same endpoints. Binary operations use this
    /// so both operands land on the identical partition.
    PiecewisePolynomial refined_exact(const std::vector<double>& grid) const;
};

inline PiecewisePolynomial operator*(const PiecewisePolynomial& u, double c) { return c * u; }

/// Roots of a piecewise polynomial inside its domain. Pieces that are
/// identically zero are reported as zero runs, not as root points.
struct RootSet {
    std::vector<double> points;
    std::vector<Interval> zero_runs;
};

/// All real roots in the domain: per piece, critical points of the piece
/// polynomial split it into monotone segments, sign changes are bracketed and
/// refined with safeguarded Newton (relative tolerance 1e-13); near-zero
/// critical values catch even-multiplicity roots. Duplicates across shared
/// breakpoints are merged.
RootSet real_roots(const PiecewisePolynomial& f);

/// L_{q'} norm over the whole domain, q' in [1, inf].
///   q' = 1    exact: pieces split at sign changes, integrated with signs;
///   q' = inf  exact: per-piece extrema;
///   else      adaptive Gauss-Legendre of |f|^{q'} on sign-split pieces,
///             relative tolerance 1e-12.
double lq_norm(const PiecewisePolynomial& f, double qprime);

/// Conjugate exponent: 1 <-> inf, else q/(q-1).
double conjugate_exponent(double q);

/// Exact per-piece polynomial division u/v on a common refinement. Returns
/// the quotient when the remainder is negligible (relative 1e-9), else nothing.
std::optional<PiecewisePolynomial> try_divide(const PiecewisePolynomial& u,
                                              const PiecewisePolynomial& v);

} // namespace sharpquad
