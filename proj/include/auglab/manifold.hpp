#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "auglab/common.hpp"

namespace auglab {

enum class ManifoldKind { Circle, Sphere, Torus, Dumbbell };

// Profile of the dumbbell surface of revolution about the x-axis:
//   r(t) = s * sqrt((1 - (t/T)^2) * ((t/T)^2 + a^2)),  t in [-T, T].
// r^2 vanishes linearly at the poles (smooth closed caps, like a sphere),
// has a cosh-like local minimum r(0) = neck_radius at t = 0, and reaches
// lobe_radius at the two lobes. (s, a) are solved from the two radii.
struct ProfileCurve {
    double neck_radius = 0.3;
    double lobe_radius = 1.0;
    double half_extent = 2.0;  // T
    double a = 0.0;            // derived shape parameter
    double scale = 0.0;        // derived amplitude s

    static ProfileCurve make(double neck, double lobe);

    double radius(double t) const;
    double radius_d1(double t) const;   // dr/dt (defined on the open interval)
    double radius_sq(double t) const;   // P(t) = r(t)^2
    double radius_sq_d1(double t) const;
    // axial area density g(t) = 2*pi*sqrt(P + P'^2/4); finite at the poles
    double area_density(double t) const;
};

struct CustomDensity {
    std::function<double(const double*)> rho;  // evaluated at ambient points on M
    double rho_min = 0.0;
    double rho_max = 0.0;
};

struct ManifoldSpec {
    ManifoldKind kind = ManifoldKind::Circle;
    double radius = 1.0;                           // circle / sphere
    double major_radius = 2.0, minor_radius = 0.5; // torus
    ProfileCurve profile;                          // dumbbell
    std::optional<CustomDensity> density;          // nullopt = Uniform

    int intrinsic_dim() const { return kind == ManifoldKind::Circle ? 1 : 2; }
    int ambient_dim() const { return kind == ManifoldKind::Circle ? 2 : 3; }
    double surface_area() const;
    // largest pairwise ambient distance
    double diameter() const;
    const char* kind_name() const;

    static ManifoldSpec circle(double r = 1.0);
    static ManifoldSpec sphere(double r = 1.0);
    static ManifoldSpec torus(double major = 2.0, double minor = 0.5);
    static ManifoldSpec dumbbell(double neck = 0.3, double lobe = 1.0);
};

struct NaturalSample {
    PointCloud points;
    std::uint64_t rng_seed = 0;
    size_t size() const { return points.size(); }
};

// N i.i.d. draws from the manifold's density against the surface measure.
NaturalSample sample_natural(const ManifoldSpec& spec, size_t N, std::uint64_t seed);

// Orthogonal projection onto the manifold. Throws AmbiguousProjection near the
// medial axis.
void project(const ManifoldSpec& spec, const double* y, double* out);

// Residual of the manifold's defining equation at x (0 on the manifold).
double constraint_residual(const ManifoldSpec& spec, const double* x);

// Geodesic distance; analytic for Circle and Sphere, Unsupported otherwise.
double geodesic_distance(const ManifoldSpec& spec, const double* x, const double* y);

// A scalar field on (a neighborhood of) the manifold with a closed-form
// surface Laplacian. Fields are constant along normals, so evaluating at an
// augmented point equals evaluating at its projection.
struct ScalarField {
    std::string name;
    std::function<double(const double*)> value;
    std::function<double(const double*)> surface_laplacian;  // Delta_M f

    static ScalarField constant(double c);
    static ScalarField circle_harmonic(int freq, bool sine, double radius);
    // real spherical harmonic of degree l (0..3), order m_idx (-l..l)
    static ScalarField sphere_harmonic(int l, int m_idx, double radius);
};

// -(1/2) div(rho^2 grad f) at x for Uniform density (= -(rho^2/2) Delta_M f).
// Unsupported for Torus/Dumbbell and for Custom densities.
double laplace_beltrami_apply(const ManifoldSpec& spec, const ScalarField& f, const double* x);

// Uniform density value (1/area); Custom returns rho(x).
double density_at(const ManifoldSpec& spec, const double* x);

// dumbbell helpers used by experiments and tests
double dumbbell_axial(const ManifoldSpec& spec, const double* x);  // t coordinate
// fraction of surface area with |t| < t_cut, by 1-D quadrature
double dumbbell_area_fraction(const ManifoldSpec& spec, double t_cut);
// surface point + unit outward normal at (t, angle phi)
void dumbbell_surface_point(const ManifoldSpec& spec, double t, double phi, double* out,
                            double* normal_out = nullptr);

}  // namespace auglab
