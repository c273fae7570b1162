#include "sharpquad/class_spec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sharpquad {

ModulusSpec ModulusSpec::linear(double K) {
    if (!(K > 0.0)) throw std::domain_error("modulus: K must be positive");
    ModulusSpec m;
    m.form_ = Form::Linear;
    m.K_ = K;
    m.concave_ = true;
    return m;
}

ModulusSpec ModulusSpec::power(double K, double alpha) {
    if (!(K > 0.0)) throw std::domain_error("modulus: K must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("modulus: power exponent must lie in (0,1]");
    ModulusSpec m;
    m.form_ = Form::Power;
    m.K_ = K;
    m.alpha_ = alpha;
    m.concave_ = true;
    return m;
}

ModulusSpec ModulusSpec::tabulated(std::vector<std::pair<double, double>> table, bool concave) {
    if (table.size() < 2) throw std::domain_error("modulus: table needs at least two rows");
    std::sort(table.begin(), table.end());
    if (table.front().first != 0.0)
        throw std::domain_error("modulus: table must start at u = 0");
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
        if (!(table[i].first < table[i + 1].first))
            throw std::domain_error("modulus: table abscissae must be strictly increasing");
    ModulusSpec m;
    m.form_ = Form::Table;
    m.table_ = std::move(table);
    m.concave_ = concave;
    return m;
}

double ModulusSpec::operator()(double u) const {
    if (u <= 0.0) return 0.0;
    switch (form_) {
    case Form::Linear:
        return K_ * u;
    case Form::Power:
        return K_ * std::pow(u, alpha_);
    case Form::Table: {
        if (u >= table_.back().first) return table_.back().second;
        auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(u, 0.0),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        auto hi = *it;
        auto lo = *std::prev(it);
        double t = (u - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }
    }
    return 0.0;
}

std::string ModulusSpec::describe() const {
    switch (form_) {
    case Form::Linear:
        return "linear:" + std::to_string(K_);
    case Form::Power:
        return "power:" + std::to_string(K_) + ":" + std::to_string(alpha_);
    case Form::Table:
        return "table[" + std::to_string(table_.size()) + " rows]";
    }
    return "";
}

void ModulusSpec::validate(double umax) const {
    if (!(umax > 0.0)) throw std::domain_error("modulus validate: umax must be positive");
    const int N = 1000;
    const ModulusSpec& w = *this;
    if (std::abs(w(0.0)) > 1e-12)
        throw std::domain_error("modulus: omega(0) must be 0");
    std::vector<double> grid(N + 1), val(N + 1);
    for (int i = 0; i <= N; ++i) {
        grid[i] = umax * double(i) / N;
        val[i] = w(grid[i]);
    }
    double scale = val[N];
    double tol = 1e-10 * (1.0 + scale);
    for (int i = 0; i < N; ++i)
        if (val[i + 1] < val[i] - tol)
            throw std::domain_error("modulus: not nondecreasing near u = " +
                                    std::to_string(grid[i]));
    for (int i = 1; i <= N; ++i)
        for (int j = i; i + j <= N; j += std::max(1, N / 100))
            if (val[i + j] > val[i] + val[j] + tol)
                throw std::domain_error("modulus: subadditivity fails at u = " +
                                        std::to_string(grid[i]) + " + " + std::to_string(grid[j]));
    if (concave_) {
        for (int i = 0; i + 2 <= N; i += 2)
            if (val[i + 1] < 0.5 * (val[i] + val[i + 2]) - tol)
                throw std::domain_error("modulus: concavity flag set but midpoint concavity "
                                        "fails near u = " + std::to_string(grid[i + 1]));
    }
}

ClassSpec ClassSpec::sobolev(int n, double q) {
    ClassSpec s;
    s.kind = ClassKind::Sobolev;
    s.n = n;
    s.q = q;
    s.validate();
    return s;
}

ClassSpec ClassSpec::weighted(WeightSystem w, int n, double q) {
    ClassSpec s;
    s.kind = ClassKind::WeightedOperator;
    s.n = n;
    s.q = q;
    s.weights = std::move(w);
    s.validate();
    return s;
}

ClassSpec ClassSpec::holder(int n, ModulusSpec omega) {
    ClassSpec s;
    s.kind = ClassKind::Holder;
    s.n = n;
    s.modulus = std::move(omega);
    s.validate();
    return s;
}

void ClassSpec::validate() const {
    if (n < 1) throw std::domain_error("class spec: n must be >= 1");
    switch (kind) {
    case ClassKind::Sobolev:
        if (weights || modulus)
            throw std::domain_error("class spec: Sobolev takes no weights or modulus");
        if (std::isnan(q) || q < 1.0)
            throw std::domain_error("class spec: q must lie in [1, inf]");
        break;
    case ClassKind::WeightedOperator:
        if (!weights) throw std::domain_error("class spec: weighted kind requires weights");
        if (modulus) throw std::domain_error("class spec: weighted kind takes no modulus");
        if (std::isnan(q) || q < 1.0)
            throw std::domain_error("class spec: q must lie in [1, inf]");
        if (int(weights->size()) < n)
            throw std::domain_error("class spec: weight system shorter than n");
        break;
    case ClassKind::Holder:
        if (!modulus) throw std::domain_error("class spec: Holder kind requires a modulus");
        if (weights) throw std::domain_error("class spec: Holder kind takes no weights");
        break;
    }
}

std::string ClassSpec::kind_name() const {
    switch (kind) {
    case ClassKind::Sobolev:
        return "sobolev";
    case ClassKind::WeightedOperator:
        return "weighted";
    case ClassKind::Holder:
        return "holder";
    }
    return "";
}

} // namespace sharpquad
