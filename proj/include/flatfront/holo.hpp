#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>

#include "flatfront/region.hpp"

namespace flatfront {

using cplx = std::complex<double>;

/// Value and first three complex derivatives of a holomorphic function at z.
struct Jet {
    cplx z{};
    cplx d0{}, d1{}, d2{}, d3{};

    static Jet constant(cplx c, cplx z = {}) { return {z, c, 0.0, 0.0, 0.0}; }
    static Jet variable(cplx z) { return {z, z, 1.0, 0.0, 0.0}; }
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator*(cplx s, const Jet& a);

/// Compose a scalar function with known derivatives phi0..phi3 at a.d0 onto the jet a.
Jet compose(const Jet& a, cplx phi0, cplx phi1, cplx phi2, cplx phi3);

/// S = d2/d0 - (3/2)(d1/d0)^2.  Throws NumericalError when d0 = 0.
cplx schwarzian(const Jet& j);

inline constexpr double kCutMargin = 1e-8;

/// Parsed holomorphic expression in z.
///
/// Grammar: + - * / ^, unary minus, parentheses, z, i, pi, decimal literals (a literal
/// directly followed by i is imaginary), exp(e), log(e), pow(e, c) with c a constant
/// expression.  log and non-integer powers use the branch whose cut is the ray at
/// angle branch_angle + pi; evaluating within kCutMargin (in angle) of the cut or at a
/// pole throws EvaluationError.
class Expression {
public:
    struct Node;

    Expression() = default;
    static Expression parse(const std::string& source, double branch_angle = 0.0);

    cplx value(cplx z) const;
    Jet jet(cplx z) const;

    const std::string& source() const noexcept { return source_; }
    double branch_angle() const noexcept { return branch_angle_; }
    /// True when the expression contains no logarithm and no non-integer power.
    bool cut_free() const noexcept { return cut_free_; }
    bool is_constant() const noexcept;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
    double branch_angle_ = 0.0;
    bool cut_free_ = true;
};

/// Weierstrass data (alpha, beta) on a simply connected domain.
struct WeierstrassData {
    Expression alpha;
    Expression beta;
    Domain domain;
    std::string family_tag;

    /// Parses both expressions with the domain's branch anchor and validates: alpha, beta
    /// nonzero on a sampling lattice and lambda not identically zero.  ConfigError otherwise.
    static WeierstrassData make(const std::string& alpha_src, const std::string& beta_src, const Domain& domain,
                                std::string family_tag = {});

    std::pair<Jet, Jet> jets(cplx z) const { return {alpha.jet(z), beta.jet(z)}; }
    std::pair<cplx, cplx> values(cplx z) const { return {alpha.value(z), beta.value(z)}; }
    bool cut_free() const noexcept { return alpha.cut_free() && beta.cut_free(); }
};

}  // namespace flatfront
