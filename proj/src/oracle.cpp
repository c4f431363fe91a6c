#include "flatfront/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {

constexpr cplx I{0.0, 1.0};

Mat2 surface_of(const Mat2& A, Surface which) {
    return which == Surface::H ? A * A.adjoint() : A * basis::e3 * A.adjoint();
}

Surface other(Surface s) { return s == Surface::H ? Surface::S : Surface::H; }

cplx omega(const Mat2& p, const Mat2& x, const Mat2& y, const Mat2& z) {
    return minkowski_inner(cross_with_inverse(p.inverse(), x, y), z);
}

}  // namespace

LocalChart::LocalChart(const WeierstrassData& data, cplx base_z, const Mat2& base_A, cplx z0,
                       const OracleOptions& opts)
    : data_(&data), z0_(z0), opts_(opts) {
    IntegratorOptions io;
    io.step_tol = opts.anchor_step_tol;
    A0_ = integrate_frame(data, base_z, base_A, z0, io).A;
    A0_ = A0_ / std::sqrt(A0_.det());
}

Mat2 LocalChart::frame(cplx z) const {
    if (z == z0_) return A0_;
    if (!data_->domain.contains(z)) {
        throw StencilError(fmt::format("finite-difference stencil leaves the domain at z = {:.6g}{:+.6g}i", z.real(),
                                       z.imag()));
    }
    IntegratorOptions io;
    io.fixed_steps = opts_.chart_steps;
    io.renormalize = false;
    try {
        return integrate_frame(*data_, line_path({z0_, z}), A0_, io, "chart").A;
    } catch (const PathError& e) {
        throw StencilError(e.what());
    }
}

LocalChart LocalChart::at_identity() const {
    LocalChart c;
    c.data_ = data_;
    c.z0_ = z0_;
    c.A0_ = Mat2::identity();
    c.opts_ = opts_;
    return c;
}

Mat2 LocalChart::surface(cplx z, Surface which) const { return surface_of(frame(z), which); }

Sampler::Sampler(const WeierstrassData& data, Surface which, cplx base_z, const Mat2& base_A,
                 const OracleOptions& opts)
    : data_(&data), which_(which), base_z_(base_z), base_A_(base_A), opts_(opts) {}

HermVector Sampler::point(cplx z) const {
    IntegratorOptions io;
    io.step_tol = opts_.anchor_step_tol;
    const Mat2 A = integrate_frame(*data_, base_z_, base_A_, z, io).A;
    const Mat2 m = surface_of(A, which_);
    return which_ == Surface::H ? HermVector::point_h3(m) : HermVector::point_s31(m);
}

NumericDerivative numeric_partials(const LocalChart& chart, Surface which, cplx z, int i, int j, double h) {
    if (i < 0 || j < 0 || i + j > 3) throw StencilError("numeric_partials: total order must lie in 0..3");
    struct Tap {
        int offset;
        double weight;
    };
    auto taps = [](int order) -> std::vector<Tap> {
        switch (order) {
            case 0: return {{0, 1.0}};
            case 1: return {{-1, -0.5}, {1, 0.5}};
            case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
            default: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
        }
    };
    const auto tu = taps(i), tv = taps(j);
    auto stencil = [&](double step) {
        Mat2 acc = Mat2::zero();
        for (const auto& a : tu) {
            for (const auto& b : tv) {
                acc += (a.weight * b.weight) * chart.surface(z + cplx(a.offset * step, b.offset * step), which);
            }
        }
        return acc / std::pow(step, i + j);
    };
    const Mat2 coarse = stencil(h);
    const Mat2 fine = stencil(h / 2);
    NumericDerivative d;
    d.value = (4.0 * fine - coarse) / 3.0;
    d.error = (fine - coarse).max_abs() / 3.0;
    return d;
}

NumericDerivative numeric_partials(const Sampler& s, cplx z, int i, int j) {
    const double h = i + j >= 3 ? s.options().h_fd3 : s.options().h_fd;
    return numeric_partials(s.chart(z), s.which(), z, i, j, h);
}

Mat2 directional_derivative(const MatField& w, cplx z, cplx zeta, double h) {
    const double n = std::abs(zeta);
    if (n == 0.0) return Mat2::zero();
    const cplx u = zeta / n;
    const Mat2 d1 = w(z + h * u) - w(z - h * u);
    const Mat2 d2 = w(z + 2.0 * h * u) - w(z - 2.0 * h * u);
    const Mat2 d3 = w(z + 3.0 * h * u) - w(z - 3.0 * h * u);
    return (n / (60.0 * h)) * (45.0 * d1 - 9.0 * d2 + d3);
}

Mat2 covariant_derivative(const MatField& w, const MatField& point, Surface which, cplx z, cplx zeta, double h) {
    const Mat2 dw = directional_derivative(w, z, zeta, h);
    const Mat2 p = point(z);
    const cplx c = minkowski_inner(dw, p);
    return which == Surface::H ? dw + c * p : dw - c * p;
}

OracleInvariants definition_invariants(const LocalChart& chart_in, Surface which, cplx z, const FieldSample& branch,
                                       const OracleOptions& opts) {
    const LocalChart chart = chart_in.at_identity();
    const WeierstrassData& data = chart.data();
    const double h = opts.h_nested;
    const MatField F = [&](cplx w) { return chart.surface(w, which); };
    const DirField xi = [&](cplx w) { return cplx(0.0, -1.0) * lambda_jet(data, w).lambda_zbar; };
    const DirField eta = [&](cplx w) {
        const FieldSample s = field_sample(data, w, &branch);
        return which == Surface::H ? s.eta_h : s.eta_d;
    };
    const MatField X_field = [&](cplx w) { return directional_derivative(F, w, xi(w), h); };
    const MatField etaF = [&](cplx w) { return directional_derivative(F, w, eta(w), h); };
    const MatField Y_field = [&](cplx w) { return covariant_derivative(etaF, F, which, w, eta(w), h); };

    const Mat2 p = F(z);
    const Mat2 nu = chart.surface(z, other(which));
    const Mat2 X = X_field(z);
    const Mat2 Y = Y_field(z);
    const Mat2 nXX = covariant_derivative(X_field, F, which, z, xi(z), h);
    const Mat2 nXY = covariant_derivative(Y_field, F, which, z, xi(z), h);
    const Mat2 nYY = covariant_derivative(Y_field, F, which, z, eta(z), h);

    OracleInvariants out;
    const cplx xx = minkowski_inner(X, X);
    out.xi_norm2 = xx.real();
    if (!(xx.real() > 0.0) || std::abs(xx.imag()) > 1e-6 * std::abs(xx)) {
        throw SignatureError(fmt::format("definition_invariants: <xi k, xi k> = {:.6g}{:+.3g}i is not spacelike at "
                                         "z = {:.6g}{:+.6g}i",
                                         xx.real(), xx.imag(), z.real(), z.imag()));
    }
    const double nX = std::sqrt(xx.real());
    const Mat2 XxY = cross_with_inverse(p.inverse(), X, Y);
    const double c2 = std::abs(minkowski_inner(XxY, XxY));
    out.cross_norm2 = c2;
    if (c2 == 0.0) throw SignatureError("definition_invariants: xi k and nabla_eta(eta k) are parallel");

    const cplx eta0 = eta(z);
    const cplx xi0 = xi(z);
    const LambdaJet lj = lambda_jet(data, z);
    out.lambda_eta_closed = 2.0 * (lj.lambda_z * eta0).real();
    {
        const double n = std::abs(eta0);
        const cplx u = eta0 / n;
        auto lam = [&](cplx w) {
            const auto [a, b] = data.values(w);
            return std::norm(a) - std::norm(b);
        };
        const double hl = opts.h_fd;
        const double d1 = (lam(z + hl * u) - lam(z - hl * u)) / (2.0 * hl);
        const double d2 = (lam(z + 2.0 * hl * u) - lam(z - 2.0 * hl * u)) / (4.0 * hl);
        out.lambda_eta_numeric = n * (4.0 * d1 - d2) / 3.0;
    }
    if (std::abs(out.lambda_eta_numeric - out.lambda_eta_closed) >
        opts.sign_rel_tol * std::max(1.0, std::abs(out.lambda_eta_closed))) {
        throw NumericalError(fmt::format("definition_invariants: numeric lambda_eta = {:.12g} differs from 2 Re(lambda' "
                                         "eta) = {:.12g}",
                                         out.lambda_eta_numeric, out.lambda_eta_closed));
    }
    out.det_xi_eta = (std::conj(xi0) * eta0).imag();
    const double sgn = (out.det_xi_eta * out.lambda_eta_closed) >= 0.0 ? 1.0 : -1.0;

    InvariantSet& inv = out.inv;
    inv.kappa_s = sgn * omega(p, X, nXX, nu).real() / (nX * nX * nX);
    inv.kappa_n = minkowski_inner(nXX, nu).real() / xx.real();
    const double xy = minkowski_inner(X, Y).real();
    inv.kappa_t = omega(p, X, Y, nXY).real() / c2 - omega(p, X, Y, nXX).real() * xy / (xx.real() * c2);
    inv.kappa_c = std::pow(nX, 1.5) * omega(p, X, Y, nYY).real() / std::pow(c2, 1.25);
    inv.defined = true;
    out.eta_eta_xi = xy;
    return out;
}

DualityResiduals duality_residuals(const LocalChart& chart, cplx z, const OracleOptions& opts) {
    const Mat2 f = chart.surface(z, Surface::H);
    const Mat2 g = chart.surface(z, Surface::S);
    const Mat2 fu = numeric_partials(chart, Surface::H, z, 1, 0, opts.h_fd).value;
    const Mat2 fv = numeric_partials(chart, Surface::H, z, 0, 1, opts.h_fd).value;
    const Mat2 gu = numeric_partials(chart, Surface::S, z, 1, 0, opts.h_fd).value;
    const Mat2 gv = numeric_partials(chart, Surface::S, z, 0, 1, opts.h_fd).value;
    DualityResiduals r;
    r.orth = std::abs(minkowski_inner(f, g));
    r.iso1 = std::max(std::abs(minkowski_inner(f, gu)), std::abs(minkowski_inner(f, gv)));
    r.iso2 = std::max(std::abs(minkowski_inner(g, fu)), std::abs(minkowski_inner(g, fv)));
    return r;
}

std::pair<double, double> area_densities(const LocalChart& chart, cplx z, const OracleOptions& opts) {
    const Mat2 f = chart.surface(z, Surface::H);
    const Mat2 g = chart.surface(z, Surface::S);
    const Mat2 fu = numeric_partials(chart, Surface::H, z, 1, 0, opts.h_fd).value;
    const Mat2 fv = numeric_partials(chart, Surface::H, z, 0, 1, opts.h_fd).value;
    const Mat2 gu = numeric_partials(chart, Surface::S, z, 1, 0, opts.h_fd).value;
    const Mat2 gv = numeric_partials(chart, Surface::S, z, 0, 1, opts.h_fd).value;
    return {omega(f, fu, fv, g).real(), omega(g, gu, gv, f).real()};
}

std::vector<LemmaResidual> lemma_suite(const Mat2& A, const Jet& alpha, const Jet& beta, const FieldSample& branch) {
    const SurfaceJet fj = surface_jet(A, alpha, beta, Surface::H);
    const SurfaceJet gj = surface_jet(A, alpha, beta, Surface::S);
    const LambdaJet lj = lambda_jet(alpha, beta);
    const cplx a = alpha.d0, a1 = alpha.d1, b = beta.d0, b1 = beta.d1;
    const cplx ab = a * b, abc = std::conj(ab);
    const double na = std::norm(a);
    const cplx lz = lj.lambda_z, lzb = lj.lambda_zbar;
    const Mat2 &f = fj.p.matrix(), &g = gj.p.matrix();
    const Mat2 fi = f.inverse(), gi = g.inverse();
    auto fx = [&](const HermVector& x, const HermVector& y) { return cross_with_inverse(fi, x.matrix(), y.matrix()); };
    auto gx = [&](const HermVector& x, const HermVector& y) { return cross_with_inverse(gi, x.matrix(), y.matrix()); };
    auto in = [](const HermVector& x, const HermVector& y) { return minkowski_inner(x.matrix(), y.matrix()); };

    std::vector<LemmaResidual> r;
    auto mat = [&](std::string name, const Mat2& m) { r.push_back({std::move(name), m.max_abs()}); };
    auto sc = [&](std::string name, cplx v) { r.push_back({std::move(name), std::abs(v)}); };

    mat("f' x f_zb", fx(fj.d_z, fj.d_zb));
    mat("f' x f'_zb", fx(fj.d_z, fj.d_zzb));
    mat("f_zb x f'_zb", fx(fj.d_zb, fj.d_zzb));
    mat("g' x g_zb", gx(gj.d_z, gj.d_zb));
    mat("g' x g'_zb", gx(gj.d_z, gj.d_zzb));
    mat("g_zb x g'_zb", gx(gj.d_zb, gj.d_zzb));

    const cplx w1 = a * b1 - a1 * b;
    const cplx w2 = std::conj(a1 * b - a * b1);
    mat("f' x f''", fx(fj.d_z, fj.d_zz) - (0.5 * I * w1) * g);
    mat("f' x f_zbzb", fx(fj.d_z, fj.d_zbzb) - (0.5 * I * lzb) * g);
    mat("f_zb x f''", fx(fj.d_zb, fj.d_zz) + (0.5 * I * lz) * g);
    mat("f_zb x f_zbzb", fx(fj.d_zb, fj.d_zbzb) - (0.5 * I * w2) * g);
    mat("g' x g''", gx(gj.d_z, gj.d_zz) - (0.5 * I * w1) * f);
    mat("g' x g_zbzb", gx(gj.d_z, gj.d_zbzb) + (0.5 * I * lzb) * f);
    mat("g_zb x g''", gx(gj.d_zb, gj.d_zz) - (0.5 * I * lz) * f);
    mat("g_zb x g_zbzb", gx(gj.d_zb, gj.d_zbzb) - (0.5 * I * w2) * f);

    const cplx s = a1 / a + b1 / b;
    const HermVector eef = -fj.d_zz / ab + (2.0 / na) * fj.d_zzb - fj.d_zbzb / abc + (s / (2.0 * ab)) * fj.d_z +
                           (std::conj(s) / (2.0 * abc)) * fj.d_zb;
    const HermVector eeg = gj.d_zz / ab + (2.0 / na) * gj.d_zzb + gj.d_zbzb / abc - (s / (2.0 * ab)) * gj.d_z -
                           (std::conj(s) / (2.0 * abc)) * gj.d_zb;
    const cplx xi = cplx(0.0, -1.0) * lzb;
    const HermVector xf = fj.directional(xi);
    const HermVector xg = gj.directional(xi);
    const cplx w = branch.sqrt_ab * lzb;
    mat("xi f x eta_h eta_h f", fx(xf, eef) - (2.0 / (na * na) * w.imag() * w.imag()) * g);
    mat("xi g x eta_d eta_d g", gx(xg, eeg) + (2.0 / (na * na) * w.real() * w.real()) * f);
    sc("<eta_h eta_h f, xi f>", in(eef, xf));
    sc("<eta_d eta_d g, xi g>", in(eeg, xg));

    const cplx sum1 = a1 * b + a * b1;
    const cplx mix1 = a * std::conj(a1) + b * std::conj(beta.d1);
    const cplx mix2 = a1 * std::conj(a) + b1 * std::conj(b);
    sc("<f', f'>", in(fj.d_z, fj.d_z) - ab);
    sc("<f', f_zb>", in(fj.d_z, fj.d_zb) - na);
    sc("<f_zb, f_zb>", in(fj.d_zb, fj.d_zb) - abc);
    sc("<f', f''>", in(fj.d_z, fj.d_zz) - 0.5 * sum1);
    sc("<f', f'_zb>", in(fj.d_z, fj.d_zzb));
    sc("<f', f_zbzb>", in(fj.d_z, fj.d_zbzb) - 0.5 * mix1);
    sc("<f_zb, f''>", in(fj.d_zb, fj.d_zz) - 0.5 * mix2);
    sc("<f_zb, f'_zb>", in(fj.d_zb, fj.d_zzb));
    sc("<f_zb, f_zbzb>", in(fj.d_zb, fj.d_zbzb) - 0.5 * std::conj(sum1));
    sc("<g', g'>", in(gj.d_z, gj.d_z) + ab);
    sc("<g', g_zb>", in(gj.d_z, gj.d_zb) - na);
    sc("<g_zb, g_zb>", in(gj.d_zb, gj.d_zb) + abc);
    sc("<g', g''>", in(gj.d_z, gj.d_zz) + 0.5 * sum1);
    sc("<g', g'_zb>", in(gj.d_z, gj.d_zzb));
    sc("<g', g_zbzb>", in(gj.d_z, gj.d_zbzb) - 0.5 * mix1);
    sc("<g_zb, g''>", in(gj.d_zb, gj.d_zz) - 0.5 * mix2);
    sc("<g_zb, g'_zb>", in(gj.d_zb, gj.d_zzb));
    sc("<g_zb, g_zbzb>", in(gj.d_zb, gj.d_zbzb) + 0.5 * std::conj(sum1));

    sc("<f''', g>", in(fj.d_zzz, gj.p) + ab * lz / (2.0 * na));
    sc("<f''_zb, g>", in(fj.d_zzzb, gj.p) - 0.5 * lz);
    sc("<f'_zbzb, g>", in(fj.d_zzbzb, gj.p) - 0.5 * lzb);
    sc("<f_zbzbzb, g>", in(fj.d_zbzbzb, gj.p) + abc * lzb / (2.0 * na));
    sc("<g''', f>", in(gj.d_zzz, fj.p) - ab * lz / (2.0 * na));
    sc("<g''_zb, f>", in(gj.d_zzzb, fj.p) - 0.5 * lz);
    sc("<g'_zbzb, f>", in(gj.d_zzbzb, fj.p) - 0.5 * lzb);
    sc("<g_zbzbzb, f>", in(gj.d_zbzbzb, fj.p) - abc * lzb / (2.0 * na));
    return r;
}

std::vector<LemmaResidual> lemma_suite(const WeierstrassData& data, const Frame& frame, const FieldSample& branch) {
    const auto [alpha, beta] = data.jets(frame.z);
    return lemma_suite(frame.A, alpha, beta, branch);
}

}  // namespace flatfront
