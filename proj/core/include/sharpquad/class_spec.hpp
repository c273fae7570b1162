#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpquad/kernels.hpp"

namespace sharpquad {

/// Modulus of continuity: nondecreasing, subadditive, vanishing at zero.
/// Closed forms K*u and K*u^alpha (alpha in (0,1]) are concave by
/// construction; tabulated moduli interpolate linearly and carry a caller
/// supplied concavity flag. validate() audits the axioms on a grid.
class ModulusSpec {
public:
    enum class Form { Linear, Power, Table };

    static ModulusSpec linear(double K);
    static ModulusSpec power(double K, double alpha);
    static ModulusSpec tabulated(std::vector<std::pair<double, double>> table, bool concave);

    double operator()(double u) const;

    Form form() const { return form_; }
    double K() const { return K_; }
    double alpha() const { return alpha_; }
    bool concave() const { return concave_; }
    const std::vector<std::pair<double, double>>& table() const { return table_; }
    std::string describe() const;

    /// Audits omega(0)=0, monotonicity and subadditivity on a 1000-point grid
    /// over [0, umax]; midpoint concavity too when the flag is set. Throws on
    /// violation.
    void validate(double umax) const;

private:
    ModulusSpec() = default;
    Form form_ = Form::Linear;
    double K_ = 1.0;
    double alpha_ = 1.0;
    std::vector<std::pair<double, double>> table_;
    bool concave_ = true;
};

enum class ClassKind { Sobolev, WeightedOperator, Holder };

/// Which function class a bound is taken over.
///   Sobolev:          ||f^(n)||_q <= 1
///   WeightedOperator: ||D_n f||_q <= 1 for the weight system's operators
///   Holder:           f^(n) in H^omega (no q)
struct ClassSpec {
    ClassKind kind;
    int n;
    double q = 0.0; // in [1, inf]; unused for Holder
    std::optional<WeightSystem> weights;
    std::optional<ModulusSpec> modulus;

    static ClassSpec sobolev(int n, double q);
    static ClassSpec weighted(WeightSystem w, int n, double q);
    static ClassSpec holder(int n, ModulusSpec omega);

    /// Enforces that exactly the fields of the kind are present and in range.
    void validate() const;
    std::string kind_name() const;
};

} // namespace sharpquad
