#include "sharpquad/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sharpquad/quadrature.hpp"

namespace sharpquad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

double horner(const std::vector<double>& c, double tau) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * tau + c[j];
    return v;
}

void trim_trailing_zeros(std::vector<double>& c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

bool all_zero(const std::vector<double>& c) {
    return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

// p(alpha*s + beta) as coefficients in s, by synthetic composition.
std::vector<double> compose_affine(const std::vector<double>& c, double alpha, double beta) {
    std::vector<double> out{0.0};
    for (std::size_t j = c.size(); j-- > 0;) {
        // out = out*(alpha*s + beta) + c[j]
        std::vector<double> next(out.size() + 1, 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            next[k + 1] += out[k] * alpha;
            next[k] += out[k] * beta;
        }
        next[0] += c[j];
        out = std::move(next);
    }
    trim_trailing_zeros(out);
    return out;
}

// Derivative with respect to tau.
std::vector<double> d_dtau(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * double(j);
    return d;
}

double sample_sup(const std::vector<double>& c) {
    double m = 0.0;
    for (int k = 0; k <= 16; ++k) {
        double tau = std::cos(double(k) * M_PI / 16.0);
        m = std::max(m, std::abs(horner(c, tau)));
    }
    return m;
}

// Safeguarded Newton on a sign-change bracket [lo,hi] in tau coordinates.
double newton_bisect(const std::vector<double>& c, const std::vector<double>& dc,
                     double lo, double hi, double flo) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 120; ++it) {
        double fx = horner(c, x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (flo > 0)) {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo < 1e-15) break;
        double dfx = horner(dc, x);
        double step = (dfx != 0.0) ? fx / dfx : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < 1e-16 * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return 0.5 * (lo + hi);
}

// All roots of the local polynomial inside [-1,1], appended to out.
void poly_roots_unit(std::vector<double> c, std::vector<double>& out) {
    trim_trailing_zeros(c);
    std::size_t deg = c.size() - 1;
    if (deg == 0) return; // nonzero constant (identically-zero handled by caller)
    const double edge = 1.0 + 1e-12;
    if (deg == 1) {
        double r = -c[0] / c[1];
        if (std::abs(r) <= edge) out.push_back(std::clamp(r, -1.0, 1.0));
        return;
    }
    if (deg == 2) {
        double A = c[2], B = c[1], C = c[0];
        double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return;
        double sq = std::sqrt(disc);
        double qq = -0.5 * (B + (B >= 0 ? sq : -sq));
        double r1 = (qq != 0.0) ? C / qq : -B / (2.0 * A);
        double r2 = (A != 0.0 && qq != 0.0) ? qq / A : r1;
        for (double r : {r1, r2})
            if (std::abs(r) <= edge) out.push_back(std::clamp(r, -1.0, 1.0));
        return;
    }
    // Critical points split [-1,1] into monotone segments.
    std::vector<double> crit;
    poly_roots_unit(d_dtau(c), crit);
    std::sort(crit.begin(), crit.end());
    std::vector<double> nodes{-1.0};
    for (double t : crit)
        if (t > -1.0 && t < 1.0) nodes.push_back(t);
    nodes.push_back(1.0);

    const double atol = 1e-12 * (1.0 + sample_sup(c));
    std::vector<double> dc = d_dtau(c);
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = horner(c, nodes[i]);

    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::abs(vals[i]) <= atol) out.push_back(nodes[i]);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (std::abs(vals[i]) <= atol || std::abs(vals[i + 1]) <= atol) continue;
        if ((vals[i] > 0) != (vals[i + 1] > 0))
            out.push_back(newton_bisect(c, dc, nodes[i], nodes[i + 1], vals[i]));
    }
}

} // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<std::vector<double>> local_coeffs)
    : breaks_(std::move(breakpoints)), coeffs_(std::move(local_coeffs)) {
    if (breaks_.size() < 2)
        throw std::invalid_argument("PiecewisePolynomial: need at least two breakpoints");
    for (double t : breaks_)
        if (!std::isfinite(t))
            throw std::invalid_argument("PiecewisePolynomial: non-finite breakpoint");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw std::invalid_argument("PiecewisePolynomial: breakpoints must be strictly increasing");
    if (coeffs_.size() != breaks_.size() - 1)
        throw std::invalid_argument("PiecewisePolynomial: piece count must equal breakpoint count - 1");
    for (auto& c : coeffs_) {
        if (c.empty()) c = {0.0};
        trim_trailing_zeros(c);
        for (double v : c)
            if (!std::isfinite(v))
                throw std::invalid_argument("PiecewisePolynomial: non-finite coefficient");
    }
    check_degree();
}

void PiecewisePolynomial::check_degree() const {
    for (const auto& c : coeffs_)
        if (int(c.size()) - 1 > kMaxPieceDegree)
            throw std::runtime_error("PiecewisePolynomial: piece degree cap (" +
                                     std::to_string(kMaxPieceDegree) + ") exceeded");
}

PiecewisePolynomial PiecewisePolynomial::constant(const Interval& dom, double c) {
    return PiecewisePolynomial({dom.a, dom.b}, {{c}});
}

PiecewisePolynomial PiecewisePolynomial::polynomial(const Interval& dom,
                                                    const std::vector<double>& abs_coeffs) {
    if (abs_coeffs.empty()) return zero(dom);
    // Substitute t = (h/2) tau + midpoint.
    auto local = compose_affine(abs_coeffs, 0.5 * dom.length(), dom.midpoint());
    return PiecewisePolynomial({dom.a, dom.b}, {std::move(local)});
}

PiecewisePolynomial PiecewisePolynomial::from_absolute(
    std::vector<double> breakpoints, const std::vector<std::vector<double>>& abs_pieces) {
    if (breakpoints.size() < 2 || abs_pieces.size() + 1 != breakpoints.size())
        throw std::invalid_argument("from_absolute: piece count must equal breakpoint count - 1");
    std::vector<std::vector<double>> local(abs_pieces.size());
    for (std::size_t i = 0; i < abs_pieces.size(); ++i) {
        double l = breakpoints[i], r = breakpoints[i + 1];
        if (!(l < r))
            throw std::invalid_argument("from_absolute: breakpoints must be strictly increasing");
        // Substitute t = (h/2) tau + midpoint.
        local[i] = compose_affine(abs_pieces[i], 0.5 * (r - l), 0.5 * (l + r));
    }
    return PiecewisePolynomial(std::move(breakpoints), std::move(local));
}

std::vector<double> PiecewisePolynomial::piece_abs_coeffs(std::size_t i) const {
    double l = breaks_[i], r = breaks_[i + 1], h = r - l;
    // tau = (2/h) t - (l+r)/h
    return compose_affine(coeffs_[i], 2.0 / h, -(l + r) / h);
}

int PiecewisePolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& c : coeffs_) d = std::max(d, c.size() - 1);
    return int(d);
}

bool PiecewisePolynomial::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const std::vector<double>& c) { return all_zero(c); });
}

std::size_t PiecewisePolynomial::piece_index(double t) const {
    if (t < breaks_.front() || t > breaks_.back())
        throw std::domain_error("PiecewisePolynomial: point " + std::to_string(t) +
                                " outside domain [" + std::to_string(breaks_.front()) + ", " +
                                std::to_string(breaks_.back()) + "]");
    if (t == breaks_.front()) return 0;
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    return std::size_t(it - breaks_.begin()) - 1;
}

double PiecewisePolynomial::eval_piece(std::size_t i, double t) const {
    double l = breaks_[i], r = breaks_[i + 1];
    double tau = (2.0 * t - l - r) / (r - l);
    return horner(coeffs_[i], tau);
}

double PiecewisePolynomial::operator()(double t) const { return eval_piece(piece_index(t), t); }

PiecewisePolynomial PiecewisePolynomial::derivative() const {
    std::vector<std::vector<double>> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double h = breaks_[i + 1] - breaks_[i];
        out[i] = d_dtau(coeffs_[i]);
        for (double& v : out[i]) v *= 2.0 / h;
    }
    return {breaks_, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::antiderivative(double base) const {
    if (base < breaks_.front() || base > breaks_.back())
        throw std::domain_error("antiderivative: base point outside domain");
    std::vector<std::vector<double>> out(coeffs_.size());
    KahanSum running; // value of F at the left end of the current piece, F(a)=0
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double h = breaks_[i + 1] - breaks_[i];
        const auto& c = coeffs_[i];
        std::vector<double> A(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) A[j + 1] = 0.5 * h * c[j] / double(j + 1);
        // Choose the constant so that A(-1) equals the accumulated value.
        double at_left = 0.0;
        for (std::size_t j = 1; j < A.size(); ++j) at_left += (j % 2 ? -A[j] : A[j]);
        A[0] = running.value() - at_left;
        // Piece integral, added with compensation.
        double piece_int = 0.0;
        for (std::size_t j = 1; j < A.size(); j += 2) piece_int += 2.0 * A[j];
        running.add(piece_int);
        out[i] = std::move(A);
    }
    PiecewisePolynomial F(breaks_, std::move(out));
    double shift = F(base);
    if (shift != 0.0) {
        auto cc = F.coeffs_;
        for (auto& c : cc) c[0] -= shift;
        return {F.breaks_, std::move(cc)};
    }
    return F;
}

double PiecewisePolynomial::integrate(double c, double d) const {
    if (c > d) throw std::domain_error("integrate: lower limit exceeds upper limit");
    if (c < breaks_.front() || d > breaks_.back())
        throw std::domain_error("integrate: limits outside domain");
    if (c == d) return 0.0;
    KahanSum sum;
    std::size_t i0 =
        std::size_t(std::upper_bound(breaks_.begin(), breaks_.end(), c) - breaks_.begin()) - 1;
    for (std::size_t i = i0; i < coeffs_.size() && breaks_[i] < d; ++i) {
        double u = std::max(c, breaks_[i]);
        double v = std::min(d, breaks_[i + 1]);
        if (!(v > u)) continue;
        double l = breaks_[i], r = breaks_[i + 1], h = r - l;
        double tu = (2.0 * u - l - r) / h;
        double tv = (2.0 * v - l - r) / h;
        const auto& cf = coeffs_[i];
        double acc = 0.0, pu = tu, pv = tv;
        for (std::size_t j = 0; j < cf.size(); ++j) {
            acc += cf[j] * (pv - pu) / double(j + 1);
            pu *= tu;
            pv *= tv;
        }
        sum.add(0.5 * h * acc);
    }
    return sum.value();
}

double PiecewisePolynomial::integrate() const { return integrate(breaks_.front(), breaks_.back()); }

PiecewisePolynomial PiecewisePolynomial::operator-() const {
    auto cc = coeffs_;
    for (auto& c : cc)
        for (double& v : c) v = -v;
    return {breaks_, std::move(cc)};
}

PiecewisePolynomial operator*(double s, const PiecewisePolynomial& u) {
    auto cc = u.coeffs_;
    for (auto& c : cc)
        for (double& v : c) v *= s;
    return {u.breaks_, std::move(cc)};
}

PiecewisePolynomial PiecewisePolynomial::refined(const std::vector<double>& marks) const {
    double a = breaks_.front(), b = breaks_.back();
    auto near_tol = [](double x, double y) {
        return std::abs(x - y) <= 4e-16 * std::max({std::abs(x), std::abs(y), 1.0});
    };
    std::vector<double> add;
    for (double m : marks) {
        if (!(m > a && m < b)) continue;
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), m);
        if (it != breaks_.end() && near_tol(*it, m)) continue;
        if (it != breaks_.begin() && near_tol(*std::prev(it), m)) continue;
        add.push_back(m);
    }
    if (add.empty()) return *this;
    std::sort(add.begin(), add.end());
    add.erase(std::unique(add.begin(), add.end(),
                          [&](double x, double y) { return near_tol(x, y); }),
              add.end());

    std::vector<double> nb;
    nb.reserve(breaks_.size() + add.size());
    std::merge(breaks_.begin(), breaks_.end(), add.begin(), add.end(), std::back_inserter(nb));

    std::vector<std::vector<double>> cc(nb.size() - 1);
    std::size_t src = 0;
    for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
        double l = nb[i], r = nb[i + 1];
        while (breaks_[src + 1] < r) ++src;
        double L = breaks_[src], R = breaks_[src + 1], H = R - L;
        // tau_old = alpha * tau_new + beta
        double alpha = (r - l) / H;
        double beta = (l + r - L - R) / H;
        cc[i] = compose_affine(coeffs_[src], alpha, beta);
    }
    return {std::move(nb), std::move(cc)};
}

PiecewisePolynomial PiecewisePolynomial::refined_exact(const std::vector<double>& grid) const {
    if (grid.size() == breaks_.size()) return *this;
    std::vector<std::vector<double>> cc(grid.size() - 1);
    std::size_t src = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double l = grid[i], r = grid[i + 1];
        while (breaks_[src + 1] < r) ++src;
        double L = breaks_[src], R = breaks_[src + 1], H = R - L;
        double alpha = (r - l) / H;
        double beta = (l + r - L - R) / H;
        cc[i] = compose_affine(coeffs_[src], alpha, beta);
    }
    return {grid, std::move(cc)};
}

PiecewisePolynomial PiecewisePolynomial::with_breakpoint(double t) const { return refined({t}); }

PiecewisePolynomial PiecewisePolynomial::restrict_to(double lo, double hi) const {
    if (lo < breaks_.front() || hi > breaks_.back() || !(lo < hi))
        throw std::domain_error("restrict_to: invalid subinterval");
    auto snap = [&](double t) {
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
        for (auto cand : {it, it == breaks_.begin() ? breaks_.end() : std::prev(it)})
            if (cand != breaks_.end() &&
                std::abs(*cand - t) <= 4e-16 * std::max({std::abs(t), std::abs(*cand), 1.0}))
                return *cand;
        return t;
    };
    lo = snap(lo);
    hi = snap(hi);
    PiecewisePolynomial r = refined({lo, hi});
    std::vector<double> nb;
    std::vector<std::vector<double>> nc;
    for (std::size_t i = 0; i + 1 < r.breaks_.size(); ++i) {
        if (r.breaks_[i] >= lo && r.breaks_[i + 1] <= hi) {
            if (nb.empty()) nb.push_back(r.breaks_[i]);
            nb.push_back(r.breaks_[i + 1]);
            nc.push_back(r.coeffs_[i]);
        }
    }
    if (nb.size() < 2) throw std::domain_error("restrict_to: degenerate subinterval");
    return {std::move(nb), std::move(nc)};
}

namespace {

std::vector<double> union_breaks(const PiecewisePolynomial& u, const PiecewisePolynomial& v) {
    std::vector<double> m;
    const auto& A = u.breakpoints();
    const auto& B = v.breakpoints();
    m.reserve(A.size() + B.size());
    std::merge(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(m));
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

void require_same_domain(const PiecewisePolynomial& u, const PiecewisePolynomial& v,
                         const char* op) {
    if (!(u.domain() == v.domain()))
        throw std::invalid_argument(std::string(op) + ": operands live on different domains");
}

} // namespace

PiecewisePolynomial operator+(const PiecewisePolynomial& u, const PiecewisePolynomial& v) {
    require_same_domain(u, v, "operator+");
    auto grid = union_breaks(u, v);
    PiecewisePolynomial a = u.refined_exact(grid), b = v.refined_exact(grid);
    std::vector<std::vector<double>> cc(a.coeffs_.size());
    for (std::size_t i = 0; i < cc.size(); ++i) {
        const auto& x = a.coeffs_[i];
        const auto& y = b.coeffs_[i];
        cc[i].assign(std::max(x.size(), y.size()), 0.0);
        for (std::size_t j = 0; j < x.size(); ++j) cc[i][j] += x[j];
        for (std::size_t j = 0; j < y.size(); ++j) cc[i][j] += y[j];
    }
    return {a.breaks_, std::move(cc)};
}

PiecewisePolynomial operator-(const PiecewisePolynomial& u, const PiecewisePolynomial& v) {
    return u + (-v);
}

PiecewisePolynomial operator*(const PiecewisePolynomial& u, const PiecewisePolynomial& v) {
    require_same_domain(u, v, "operator*");
    auto grid = union_breaks(u, v);
    PiecewisePolynomial a = u.refined_exact(grid), b = v.refined_exact(grid);
    std::vector<std::vector<double>> cc(a.coeffs_.size());
    for (std::size_t i = 0; i < cc.size(); ++i) {
        const auto& x = a.coeffs_[i];
        const auto& y = b.coeffs_[i];
        cc[i].assign(x.size() + y.size() - 1, 0.0);
        for (std::size_t j = 0; j < x.size(); ++j)
            for (std::size_t k = 0; k < y.size(); ++k) cc[i][j + k] += x[j] * y[k];
    }
    return {a.breaks_, std::move(cc)};
}

double PiecewisePolynomial::max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        m = std::max({m, std::abs(horner(c, -1.0)), std::abs(horner(c, 1.0))});
        std::vector<double> crit;
        if (!all_zero(c)) poly_roots_unit(d_dtau(c), crit);
        for (double tau : crit) m = std::max(m, std::abs(horner(c, tau)));
    }
    return m;
}

std::pair<double, double> PiecewisePolynomial::extrema_on(double lo, double hi) const {
    if (lo < breaks_.front() || hi > breaks_.back() || !(lo <= hi))
        throw std::domain_error("extrema_on: invalid subinterval");
    if (lo == hi) {
        double v = (*this)(lo);
        return {v, v};
    }
    double mn = kInf, mx = -kInf;
    auto consider = [&](double v) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    };
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double l = breaks_[i], r = breaks_[i + 1];
        double u = std::max(lo, l), v = std::min(hi, r);
        if (!(v > u)) continue; // zero-width overlap: the neighboring piece owns the point
        double h = r - l;
        double tu = (2.0 * u - l - r) / h, tv = (2.0 * v - l - r) / h;
        const auto& c = coeffs_[i];
        consider(horner(c, tu));
        consider(horner(c, tv));
        std::vector<double> crit;
        if (!all_zero(c)) poly_roots_unit(d_dtau(c), crit);
        for (double tau : crit)
            if (tau > tu && tau < tv) consider(horner(c, tau));
    }
    return {mn, mx};
}

RootSet real_roots(const PiecewisePolynomial& f) {
    RootSet rs;
    const auto& breaks = f.breakpoints();
    double span = breaks.back() - breaks.front();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto& c = f.piece_local_coeffs(i);
        double l = breaks[i], r = breaks[i + 1];
        if (all_zero(c)) {
            if (!rs.zero_runs.empty() && rs.zero_runs.back().b == l)
                rs.zero_runs.back() = Interval(rs.zero_runs.back().a, r);
            else
                rs.zero_runs.emplace_back(l, r);
            continue;
        }
        std::vector<double> taus;
        poly_roots_unit(c, taus);
        double m = 0.5 * (l + r), half = 0.5 * (r - l);
        for (double tau : taus) rs.points.push_back(m + half * tau);
    }
    // Snap to breakpoints, sort, dedup, drop points inside zero runs.
    double tol = 1e-12 * span;
    for (double& t : rs.points) {
        t = std::clamp(t, breaks.front(), breaks.back());
        auto it = std::lower_bound(breaks.begin(), breaks.end(), t);
        if (it != breaks.end() && std::abs(*it - t) <= tol) {
            t = *it;
        } else if (it != breaks.begin() && std::abs(*std::prev(it) - t) <= tol) {
            t = *std::prev(it);
        }
    }
    std::sort(rs.points.begin(), rs.points.end());
    std::vector<double> dedup;
    for (double t : rs.points) {
        bool inside_run = false;
        for (const auto& run : rs.zero_runs)
            if (t >= run.a - tol && t <= run.b + tol) inside_run = true;
        if (inside_run) continue;
        if (!dedup.empty() && t - dedup.back() <= tol) continue;
        dedup.push_back(t);
    }
    rs.points = std::move(dedup);
    return rs;
}

double conjugate_exponent(double q) {
    if (std::isnan(q) || q < 1.0)
        throw std::domain_error("conjugate_exponent: exponent must lie in [1, inf]");
    if (q == 1.0) return kInf;
    if (std::isinf(q)) return 1.0;
    return q / (q - 1.0);
}

double lq_norm(const PiecewisePolynomial& f, double qprime) {
    if (std::isnan(qprime) || qprime < 1.0)
        throw std::domain_error("lq_norm: exponent must lie in [1, inf]");
    if (std::isinf(qprime)) return f.max_abs();

    RootSet rs = real_roots(f);
    PiecewisePolynomial g = f.refined(rs.points);
    const auto& breaks = g.breakpoints();

    if (qprime == 1.0) {
        KahanSum sum;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            sum.add(std::abs(g.integrate(breaks[i], breaks[i + 1])));
        return sum.value();
    }

    // Coarse pass fixes the absolute tolerance, then per-piece adaptive GL on
    // single-signed pieces where |f|^{q'} is smooth.
    std::vector<double> coarse(g.piece_count());
    double total = 0.0;
    auto piece_fn = [&](std::size_t i) {
        return [&g, i, qprime](double t) {
            return std::pow(std::abs(g.eval_piece(i, t)), qprime);
        };
    };
    for (std::size_t i = 0; i < g.piece_count(); ++i) {
        coarse[i] = gauss15(piece_fn(i), breaks[i], breaks[i + 1]);
        total += coarse[i];
    }
    if (total == 0.0) return 0.0;
    KahanSum sum;
    double span = breaks.back() - breaks.front();
    for (std::size_t i = 0; i < g.piece_count(); ++i) {
        double w = (breaks[i + 1] - breaks[i]) / span;
        sum.add(adaptive_gauss(piece_fn(i), breaks[i], breaks[i + 1],
                               1e-12 * total * std::max(w, 1.0 / double(g.piece_count()))));
    }
    return std::pow(sum.value(), 1.0 / qprime);
}

std::optional<PiecewisePolynomial> try_divide(const PiecewisePolynomial& u,
                                              const PiecewisePolynomial& v) {
    if (!(u.domain() == v.domain())) return std::nullopt;
    auto grid = union_breaks(u, v);
    PiecewisePolynomial a = u.refined_exact(grid), b = v.refined_exact(grid);
    std::vector<std::vector<double>> qc(a.piece_count());
    for (std::size_t i = 0; i < a.piece_count(); ++i) {
        std::vector<double> num = a.piece_local_coeffs(i);
        std::vector<double> den = b.piece_local_coeffs(i);
        trim_trailing_zeros(num);
        trim_trailing_zeros(den);
        if (all_zero(den)) return std::nullopt;
        if (all_zero(num)) {
            qc[i] = {0.0};
            continue;
        }
        double den_scale = *std::max_element(den.begin(), den.end(),
                                             [](double x, double y) { return std::abs(x) < std::abs(y); });
        if (std::abs(den.back()) < 1e-12 * std::abs(den_scale)) return std::nullopt;
        if (num.size() < den.size()) return std::nullopt;
        double num_scale = 0.0;
        for (double x : num) num_scale = std::max(num_scale, std::abs(x));
        std::vector<double> rem = num;
        std::vector<double> quot(num.size() - den.size() + 1, 0.0);
        for (std::size_t k = quot.size(); k-- > 0;) {
            double q = rem[k + den.size() - 1] / den.back();
            quot[k] = q;
            for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
        }
        for (std::size_t j = 0; j + 1 < den.size(); ++j)
            if (std::abs(rem[j]) > 1e-9 * (1.0 + num_scale)) return std::nullopt;
        qc[i] = std::move(quot);
    }
    return PiecewisePolynomial(a.breakpoints(), std::move(qc));
}

} // namespace sharpquad
