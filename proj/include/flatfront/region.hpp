#pragma once

// Simply connected parameter domains in C and the integration paths that live in them.
//
// Both shapes carry a chart (s, t) in which they are axis-aligned rectangles:
//   rectangle:      s = u, t = v
//   annular sector: s = arg z (measured continuously around the center ray), t = |z|
// Lattices, spanning-tree paths and tracer containment are all phrased in the chart.

#include <complex>
#include <string>
#include <vector>

namespace flatfront {

using cplx = std::complex<double>;

/// One leg of an integration path.  `line` is the straight segment a -> b in the z-plane;
/// `chart` is the straight segment a -> b in chart coordinates (a = s0 + i t0).
struct PathSegment {
    enum class Kind { line, chart };
    Kind kind = Kind::line;
    cplx a{};
    cplx b{};
};

struct Path {
    std::vector<PathSegment> segments;
};

Path line_path(const std::vector<cplx>& points);

class Domain {
public:
    enum class Shape { rectangle, annular_sector };

    Domain() = default;
    static Domain rectangle(double u0, double u1, double v0, double v1);
    /// center and half_width in radians; half_width <= pi (pi gives the slit annulus).
    static Domain annular_sector(double r0, double r1, double center, double half_width);

    Shape shape() const noexcept { return shape_; }
    bool is_rectangle() const noexcept { return shape_ == Shape::rectangle; }
    bool full_annulus() const noexcept;

    /// Chart bounds: s in [s0, s1], t in [t0, t1].
    double s0() const noexcept { return s0_; }
    double s1() const noexcept { return s1_; }
    double t0() const noexcept { return t0_; }
    double t1() const noexcept { return t1_; }

    /// Angle of the ray used to anchor logarithm branches (0 for rectangles).
    double branch_angle() const noexcept;

    cplx to_chart(cplx z) const;
    cplx from_chart(cplx c) const;

    bool contains(cplx z, double slack = 1e-12) const;
    bool contains_chart(cplx c, double slack = 1e-12) const;
    /// Radial/rectangular bounds only; the angular bound is dropped for the slit annulus.
    bool contains_ignoring_cut(cplx z, double slack = 1e-12) const;
    bool within(const Domain& outer, double slack = 1e-12) const;

    /// Lower-left corner in the chart: (s0, t0).
    cplx lower_left() const { return from_chart(cplx(s0_, t0_)); }
    /// Default base point of frame integration in chart coordinates: the lower-left
    /// corner, except on the slit annulus where the corner lies on the cut and the
    /// inner point of the center ray is used instead.
    cplx default_base_chart() const { return full_annulus() ? cplx(center_, t0_) : cplx(s0_, t0_); }

    /// Path from one chart point to another: first along t at fixed s, then along s.
    Path chart_path(cplx from_c, cplx to_c) const;
    Path path(cplx from, cplx to) const { return chart_path(to_chart(from), to_chart(to)); }

    /// Position and velocity dz/dsigma at sigma in [0, 1] along a segment.
    void eval_segment(const PathSegment& seg, double sigma, cplx& z, cplx& dz) const;
    double segment_length(const PathSegment& seg) const;

    /// Typical z-plane lattice spacing for an n x n lattice.
    double spacing(int n) const;

    std::string describe() const;

private:
    Shape shape_ = Shape::rectangle;
    double s0_ = -1.0, s1_ = 1.0, t0_ = -1.0, t1_ = 1.0;
    double center_ = 0.0;
};

/// n_s x n_t lattice nodes in chart coordinates, node(j, k) = (s0 + j ds, t0 + k dt).
struct Lattice {
    int n_s = 0;
    int n_t = 0;
    double ds = 0.0;
    double dt = 0.0;
    cplx origin{};

    static Lattice over(const Domain& d, int n_s, int n_t);
    cplx chart(int j, int k) const { return origin + cplx(j * ds, k * dt); }
};

}  // namespace flatfront
