#include "sharpquad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sharpquad {

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

std::pair<std::vector<double>, std::vector<double>> make_gauss(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi-style initial guess, then Newton.
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, t);
            double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        auto [p, dp] = legendre(n, t);
        (void)p;
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    std::sort(x.begin(), x.end());
    // Recompute weights in sorted order.
    for (int i = 0; i < n; ++i) {
        auto [p, dp] = legendre(n, x[i]);
        (void)p;
        w[i] = 2.0 / ((1.0 - x[i] * x[i]) * dp * dp);
    }
    return {x, w};
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double whole,
             double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double left = gauss15(f, lo, mid);
    double right = gauss15(f, mid, hi);
    double two = left + right;
    if (std::abs(two - whole) <= tol || depth >= 60) return two;
    return adapt(f, lo, mid, left, 0.5 * tol, depth + 1) +
           adapt(f, mid, hi, right, 0.5 * tol, depth + 1);
}

} // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss(n)).first;
    return it->second;
}

double gauss15(const std::function<double(double)>& f, double lo, double hi) {
    const auto& [x, w] = gauss_legendre(15);
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

double adaptive_gauss(const std::function<double(double)>& f, double lo, double hi,
                      double abs_tol) {
    if (!(hi > lo)) return 0.0;
    return adapt(f, lo, hi, gauss15(f, lo, hi), std::max(abs_tol, 1e-300), 0);
}

double adaptive_gauss_split(const std::function<double(double)>& f, double lo, double hi,
                            const std::vector<double>& splits, double rel_tol) {
    std::vector<double> pts{lo, hi};
    for (double s : splits)
        if (s > lo && s < hi) pts.push_back(s);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        coarse += std::abs(gauss15(f, pts[i], pts[i + 1]));
    double tol = rel_tol * std::max(coarse, 1e-300);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double share = (pts[i + 1] - pts[i]) / (hi - lo);
        total += adaptive_gauss(f, pts[i], pts[i + 1],
                                tol * std::max(share, 1.0 / double(pts.size())));
    }
    return total;
}

std::vector<double> projection_mesh(const Interval& dom, int base_panels,
                                    const std::vector<double>& kinks, int grade_levels) {
    if (base_panels < 1) throw std::invalid_argument("projection_mesh: need at least one panel");
    std::vector<double> mesh;
    mesh.reserve(base_panels + 1);
    for (int i = 0; i <= base_panels; ++i)
        mesh.push_back(dom.a + dom.length() * double(i) / double(base_panels));
    double h0 = dom.length() / double(base_panels);
    for (double k : kinks) {
        if (k < dom.a || k > dom.b) continue;
        mesh.push_back(k);
        double step = h0;
        for (int l = 0; l < grade_levels; ++l) {
            step *= 0.5;
            if (k - step > dom.a) mesh.push_back(k - step);
            if (k + step < dom.b) mesh.push_back(k + step);
        }
    }
    std::sort(mesh.begin(), mesh.end());
    std::vector<double> clean;
    for (double t : mesh) {
        if (!clean.empty() &&
            t - clean.back() <= 8e-16 * std::max({std::abs(t), std::abs(clean.back()), 1e-8}))
            continue;
        clean.push_back(t);
    }
    if (clean.back() != dom.b) {
        if (dom.b - clean.back() <= 8e-16 * std::max(std::abs(dom.b), 1e-8))
            clean.back() = dom.b;
        else
            clean.push_back(dom.b);
    }
    return clean;
}

PiecewisePolynomial project_to_piecewise(const std::function<double(double)>& f,
                                         const std::vector<double>& mesh, int degree) {
    if (mesh.size() < 2) throw std::invalid_argument("project_to_piecewise: bad mesh");
    if (degree < 0 || degree > kMaxPieceDegree)
        throw std::invalid_argument("project_to_piecewise: bad degree");
    const int N = degree;
    const int M = N + 1; // Chebyshev points of the first kind
    std::vector<double> nodes(M), cosj((N + 1) * M);
    for (int m = 0; m < M; ++m) nodes[m] = std::cos((m + 0.5) * M_PI / M);
    for (int j = 0; j <= N; ++j)
        for (int m = 0; m < M; ++m) cosj[j * M + m] = std::cos(j * (m + 0.5) * M_PI / M);

    // Integer coefficient triangle of Chebyshev T_j in the monomial basis.
    std::vector<std::vector<double>> T(N + 1);
    T[0] = {1.0};
    if (N >= 1) T[1] = {0.0, 1.0};
    for (int j = 2; j <= N; ++j) {
        T[j].assign(j + 1, 0.0);
        for (int k = 0; k < j; ++k) T[j][k + 1] += 2.0 * T[j - 1][k];
        for (std::size_t k = 0; k < T[j - 2].size(); ++k) T[j][k] -= T[j - 2][k];
    }

    std::vector<std::vector<double>> coeffs(mesh.size() - 1);
    std::vector<double> fv(M), a(N + 1);
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        double c = 0.5 * (mesh[i] + mesh[i + 1]), h = 0.5 * (mesh[i + 1] - mesh[i]);
        for (int m = 0; m < M; ++m) fv[m] = f(c + h * nodes[m]);
        for (int j = 0; j <= N; ++j) {
            double s = 0.0;
            for (int m = 0; m < M; ++m) s += fv[m] * cosj[j * M + m];
            a[j] = s * (j == 0 ? 1.0 : 2.0) / double(M);
        }
        std::vector<double> mono(N + 1, 0.0);
        for (int j = 0; j <= N; ++j)
            for (std::size_t k = 0; k < T[j].size(); ++k) mono[k] += a[j] * T[j][k];
        coeffs[i] = mono;
    }
    return PiecewisePolynomial(mesh, std::move(coeffs));
}

} // namespace sharpquad
