#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/holo.hpp"

namespace flatfront {

Jet operator+(const Jet& a, const Jet& b) { return {a.z, a.d0 + b.d0, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.z, a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3}; }
Jet operator-(const Jet& a) { return {a.z, -a.d0, -a.d1, -a.d2, -a.d3}; }
Jet operator*(cplx s, const Jet& a) { return {a.z, s * a.d0, s * a.d1, s * a.d2, s * a.d3}; }

Jet operator*(const Jet& a, const Jet& b) {
    return {a.z, a.d0 * b.d0, a.d1 * b.d0 + a.d0 * b.d1, a.d2 * b.d0 + 2.0 * a.d1 * b.d1 + a.d0 * b.d2,
            a.d3 * b.d0 + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.d0 * b.d3};
}

Jet compose(const Jet& a, cplx phi0, cplx phi1, cplx phi2, cplx phi3) {
    const cplx f1 = a.d1, f2 = a.d2, f3 = a.d3;
    return {a.z, phi0, phi1 * f1, phi2 * f1 * f1 + phi1 * f2, phi3 * f1 * f1 * f1 + 3.0 * phi2 * f1 * f2 + phi1 * f3};
}

Jet operator/(const Jet& a, const Jet& b) {
    const cplx inv = 1.0 / b.d0;
    const cplx inv2 = inv * inv;
    return a * compose(b, inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2);
}

cplx schwarzian(const Jet& j) {
    if (j.d0 == 0.0) throw NumericalError("schwarzian: function value is zero");
    const cplx r1 = j.d1 / j.d0;
    return j.d2 / j.d0 - 1.5 * r1 * r1;
}

WeierstrassData WeierstrassData::make(const std::string& alpha_src, const std::string& beta_src,
                                      const Domain& domain, std::string family_tag) {
    WeierstrassData w;
    w.alpha = Expression::parse(alpha_src, domain.branch_angle());
    w.beta = Expression::parse(beta_src, domain.branch_angle());
    w.domain = domain;
    w.family_tag = std::move(family_tag);

    constexpr int n = 21;
    const Lattice lat = Lattice::over(domain, n, n);
    double max_lambda = 0.0;
    double scale = 0.0;
    int evaluated = 0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const cplx z = domain.from_chart(lat.chart(j, k));
            cplx a, b;
            try {
                a = w.alpha.value(z);
                b = w.beta.value(z);
            } catch (const EvaluationError&) {
                // lattice points on a declared cut are not part of the open domain
                continue;
            }
            if (a == 0.0 || b == 0.0) {
                throw ConfigError(fmt::format("Weierstrass data vanishes at z = {:.6g}{:+.6g}i ({} = 0)", z.real(),
                                              z.imag(), a == 0.0 ? "alpha" : "beta"));
            }
            ++evaluated;
            max_lambda = std::max(max_lambda, std::abs(std::norm(a) - std::norm(b)));
            scale = std::max(scale, std::norm(a) + std::norm(b));
        }
    }
    if (evaluated == 0) throw ConfigError("Weierstrass data cannot be evaluated anywhere on the domain");
    if (max_lambda <= 1e-13 * scale) {
        throw ConfigError("degenerate data: identifier vanishes identically (|alpha| = |beta| on the domain)");
    }
    return w;
}

}  // namespace flatfront
