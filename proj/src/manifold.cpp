#include "auglab/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "auglab/rng.hpp"

namespace auglab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

// Simpson rule on a uniform grid with an odd number of nodes.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const int n = 2 * panels;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
}  // namespace

// ----------------------------------------------------------------------------
// ProfileCurve
// ----------------------------------------------------------------------------

ProfileCurve ProfileCurve::make(double neck, double lobe) {
    if (!(neck > 0.0) || !(neck < lobe))
        throw ConfigError("dumbbell profile requires 0 < neck_radius < lobe_radius");
    ProfileCurve p;
    p.neck_radius = neck;
    p.lobe_radius = lobe;
    // r_max = s(1+a^2)/2, r(0) = s*a; solve kappa*a^2 - a + kappa = 0 with
    // kappa = neck/(2*lobe), taking the root in (0,1).
    const double kappa = neck / (2.0 * lobe);
    p.a = (1.0 - std::sqrt(1.0 - 4.0 * kappa * kappa)) / (2.0 * kappa);
    p.scale = neck / p.a;
    p.half_extent = 2.0 * lobe;
    return p;
}

double ProfileCurve::radius_sq(double t) const {
    const double u = t / half_extent;
    const double s2 = scale * scale;
    return std::max(0.0, s2 * (1.0 - u * u) * (u * u + a * a));
}

double ProfileCurve::radius_sq_d1(double t) const {
    const double u = t / half_extent;
    const double s2 = scale * scale;
    return s2 * (2.0 * u / half_extent) * (1.0 - a * a - 2.0 * u * u);
}

double ProfileCurve::radius(double t) const { return std::sqrt(radius_sq(t)); }

double ProfileCurve::radius_d1(double t) const {
    const double r = radius(t);
    return radius_sq_d1(t) / (2.0 * r);
}

double ProfileCurve::area_density(double t) const {
    const double P = radius_sq(t);
    const double Pd = radius_sq_d1(t);
    return kTwoPi * std::sqrt(P + 0.25 * Pd * Pd);
}

// ----------------------------------------------------------------------------
// ManifoldSpec
// ----------------------------------------------------------------------------

ManifoldSpec ManifoldSpec::circle(double r) {
    ManifoldSpec s;
    s.kind = ManifoldKind::Circle;
    s.radius = r;
    return s;
}

ManifoldSpec ManifoldSpec::sphere(double r) {
    ManifoldSpec s;
    s.kind = ManifoldKind::Sphere;
    s.radius = r;
    return s;
}

ManifoldSpec ManifoldSpec::torus(double major, double minor) {
    if (!(minor > 0.0) || !(minor < major))
        throw ConfigError("torus requires 0 < minor_radius < major_radius");
    ManifoldSpec s;
    s.kind = ManifoldKind::Torus;
    s.major_radius = major;
    s.minor_radius = minor;
    return s;
}

ManifoldSpec ManifoldSpec::dumbbell(double neck, double lobe) {
    ManifoldSpec s;
    s.kind = ManifoldKind::Dumbbell;
    s.profile = ProfileCurve::make(neck, lobe);
    return s;
}

const char* ManifoldSpec::kind_name() const {
    switch (kind) {
        case ManifoldKind::Circle: return "circle";
        case ManifoldKind::Sphere: return "sphere";
        case ManifoldKind::Torus: return "torus";
        case ManifoldKind::Dumbbell: return "dumbbell";
    }
    return "?";
}

double ManifoldSpec::surface_area() const {
    switch (kind) {
        case ManifoldKind::Circle: return kTwoPi * radius;
        case ManifoldKind::Sphere: return 4.0 * kPi * radius * radius;
        case ManifoldKind::Torus: return 4.0 * kPi * kPi * major_radius * minor_radius;
        case ManifoldKind::Dumbbell: {
            const double T = profile.half_extent;
            return simpson([&](double t) { return profile.area_density(t); }, -T, T, 4096);
        }
    }
    return 0.0;
}

double ManifoldSpec::diameter() const {
    switch (kind) {
        case ManifoldKind::Circle:
        case ManifoldKind::Sphere: return 2.0 * radius;
        case ManifoldKind::Torus: return 2.0 * (major_radius + minor_radius);
        case ManifoldKind::Dumbbell: return 2.0 * profile.half_extent;
    }
    return 0.0;
}

// ----------------------------------------------------------------------------
// Sampling
// ----------------------------------------------------------------------------

namespace {

// Inverse-CDF table over [lo, hi] for a nonnegative density g(t).
struct CdfTable {
    std::vector<double> t, cdf;

    void build(const std::function<double(double)>& g, double lo, double hi, int cells) {
        t.resize(cells + 1);
        cdf.resize(cells + 1);
        const double h = (hi - lo) / cells;
        double acc = 0.0;
        double prev = g(lo);
        t[0] = lo;
        cdf[0] = 0.0;
        for (int i = 1; i <= cells; ++i) {
            t[i] = lo + i * h;
            const double cur = g(t[i]);
            acc += 0.5 * (prev + cur) * h;
            cdf[i] = acc;
            prev = cur;
        }
        for (auto& c : cdf) c /= acc;
        cdf.back() = 1.0;
    }

    double invert(double u) const {
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        size_t i = static_cast<size_t>(it - cdf.begin());
        if (i == 0) return t.front();
        const double c0 = cdf[i - 1], c1 = cdf[i];
        const double w = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.0;
        return t[i - 1] + w * (t[i] - t[i - 1]);
    }
};

void circle_point(double r, double theta, double* out) {
    out[0] = r * std::cos(theta);
    out[1] = r * std::sin(theta);
}

void validate_custom_density(const ManifoldSpec& spec) {
    const auto& cd = *spec.density;
    if (!(cd.rho_min > 0.0) || !(cd.rho_max >= cd.rho_min) || !std::isfinite(cd.rho_max))
        throw ConfigError("custom density bounds must satisfy 0 < rho_min <= rho_max < inf");
    if (spec.kind != ManifoldKind::Circle)
        throw UnsupportedManifold("custom densities are supported on the circle only");
    // scan the grid for boundedness and unit mass
    const int cells = 1 << 12;
    double mass = 0.0;
    double prev = 0.0;
    for (int i = 0; i <= cells; ++i) {
        const double theta = kTwoPi * i / cells;
        double p[2];
        circle_point(spec.radius, theta, p);
        const double v = cd.rho(p);
        if (!(v >= cd.rho_min) || !(v <= cd.rho_max))
            throw ConfigError("custom density violates its stated bounds");
        if (i > 0) mass += 0.5 * (prev + v) * (kTwoPi / cells) * spec.radius;
        prev = v;
    }
    if (std::abs(mass - 1.0) > 1e-2)
        throw ConfigError("custom density must integrate to 1 over the manifold");
}

}  // namespace

NaturalSample sample_natural(const ManifoldSpec& spec, size_t N, std::uint64_t seed) {
    if (N < 1) throw ConfigError("sample_natural requires N >= 1");
    if (spec.density) validate_custom_density(spec);

    NaturalSample out;
    out.rng_seed = seed;
    out.points = PointCloud(N, static_cast<size_t>(spec.ambient_dim()));
    Rng rng(substream_seed(seed, 0x6d616e69 /* stream tag */));

    switch (spec.kind) {
        case ManifoldKind::Circle: {
            if (spec.density) {
                CdfTable table;
                table.build(
                    [&](double theta) {
                        double p[2];
                        circle_point(spec.radius, theta, p);
                        return spec.density->rho(p);
                    },
                    0.0, kTwoPi, 1 << 14);
                for (size_t i = 0; i < N; ++i)
                    circle_point(spec.radius, table.invert(rng.uniform()), out.points.row(i));
            } else {
                for (size_t i = 0; i < N; ++i)
                    circle_point(spec.radius, kTwoPi * rng.uniform(), out.points.row(i));
            }
            break;
        }
        case ManifoldKind::Sphere: {
            const double r = spec.radius;
            for (size_t i = 0; i < N; ++i) {
                const double z = r * (2.0 * rng.uniform() - 1.0);
                const double phi = kTwoPi * rng.uniform();
                const double rho = std::sqrt(std::max(0.0, r * r - z * z));
                double* p = out.points.row(i);
                p[0] = rho * std::cos(phi);
                p[1] = rho * std::sin(phi);
                p[2] = z;
            }
            break;
        }
        case ManifoldKind::Torus: {
            const double R = spec.major_radius, r = spec.minor_radius;
            const double kappa = r / R;
            for (size_t i = 0; i < N; ++i) {
                // minor angle psi: solve psi + kappa sin(psi) = pi(2u-1), Newton
                const double target = kPi * (2.0 * rng.uniform() - 1.0);
                double psi = target;
                for (int it = 0; it < 30; ++it) {
                    const double g = psi + kappa * std::sin(psi) - target;
                    psi -= g / (1.0 + kappa * std::cos(psi));
                    if (std::abs(g) < 1e-14) break;
                }
                const double phi = kTwoPi * rng.uniform();
                const double ring = R + r * std::cos(psi);
                double* p = out.points.row(i);
                p[0] = ring * std::cos(phi);
                p[1] = ring * std::sin(phi);
                p[2] = r * std::sin(psi);
            }
            break;
        }
        case ManifoldKind::Dumbbell: {
            const double T = spec.profile.half_extent;
            CdfTable table;
            table.build([&](double t) { return spec.profile.area_density(t); }, -T, T, 1 << 14);
            for (size_t i = 0; i < N; ++i) {
                const double t = table.invert(rng.uniform());
                const double phi = kTwoPi * rng.uniform();
                dumbbell_surface_point(spec, t, phi, out.points.row(i));
            }
            break;
        }
    }
    return out;
}

// ----------------------------------------------------------------------------
// Projection and residuals
// ----------------------------------------------------------------------------

namespace {

// 1-D objective for the dumbbell projection in the (t, rho) half-plane.
struct AxialObjective {
    const ProfileCurve& prof;
    double t, rho;
    double operator()(double tau) const {
        const double dt = t - tau;
        const double dr = rho - prof.radius(tau);
        return dt * dt + dr * dr;
    }
};

double golden_min(const AxialObjective& F, double lo, double hi) {
    const double gr = 0.61803398874989484820458683436563812;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = F(c), fd = F(d);
    for (int it = 0; it < 120 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = F(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = F(d);
        }
    }
    return 0.5 * (a + b);
}

double dumbbell_axial_minimizer(const ProfileCurve& prof, double t, double rho) {
    const double T = prof.half_extent;
    AxialObjective F{prof, t, rho};
    // coarse scan (the objective can have one basin per lobe), then golden
    const int cells = 256;
    int best = 0;
    double fbest = F(-T);
    for (int i = 1; i <= cells; ++i) {
        const double tau = -T + 2.0 * T * i / cells;
        const double f = F(tau);
        if (f < fbest) {
            fbest = f;
            best = i;
        }
    }
    const double h = 2.0 * T / cells;
    const double lo = std::max(-T, -T + (best - 1) * h);
    const double hi = std::min(T, -T + (best + 1) * h);
    double tau = golden_min(F, lo, hi);

    // guarded Newton refinement on dF/dtau away from the poles
    if (std::abs(tau) < T - 1e-6) {
        for (int it = 0; it < 4; ++it) {
            const double r = prof.radius(tau);
            const double rp = prof.radius_sq_d1(tau) / (2.0 * r);
            const double P = prof.radius_sq(tau);
            const double Pd = prof.radius_sq_d1(tau);
            const double u = tau / T;
            const double s2 = prof.scale * prof.scale;
            const double Pdd =
                s2 * (2.0 / (T * T)) * (1.0 - prof.a * prof.a - 6.0 * u * u);
            const double rpp = Pdd / (2.0 * r) - Pd * Pd / (4.0 * P * r);
            const double g = -2.0 * (t - tau) - 2.0 * (rho - r) * rp;
            const double gp = 2.0 + 2.0 * rp * rp - 2.0 * (rho - r) * rpp;
            if (!(std::abs(gp) > 1e-12)) break;
            const double step = g / gp;
            const double cand = tau - step;
            if (!std::isfinite(cand) || cand < lo - h || cand > hi + h) break;
            tau = cand;
            if (std::abs(step) < 1e-14) break;
        }
    }
    return clamp(tau, -T, T);
}

}  // namespace

void project(const ManifoldSpec& spec, const double* y, double* out) {
    switch (spec.kind) {
        case ManifoldKind::Circle: {
            const double n = norm(y, 2);
            if (n < 1e-9) throw AmbiguousProjection("point at circle center");
            out[0] = spec.radius * y[0] / n;
            out[1] = spec.radius * y[1] / n;
            return;
        }
        case ManifoldKind::Sphere: {
            const double n = norm(y, 3);
            if (n < 1e-9) throw AmbiguousProjection("point at sphere center");
            for (int i = 0; i < 3; ++i) out[i] = spec.radius * y[i] / n;
            return;
        }
        case ManifoldKind::Torus: {
            const double rho = std::hypot(y[0], y[1]);
            if (rho < 1e-9) throw AmbiguousProjection("point on torus axis");
            const double R = spec.major_radius, r = spec.minor_radius;
            const double cx = R * y[0] / rho, cy = R * y[1] / rho;
            const double vx = y[0] - cx, vy = y[1] - cy, vz = y[2];
            const double vn = std::sqrt(vx * vx + vy * vy + vz * vz);
            if (vn < 1e-9) throw AmbiguousProjection("point on torus center circle");
            out[0] = cx + r * vx / vn;
            out[1] = cy + r * vy / vn;
            out[2] = r * vz / vn;
            return;
        }
        case ManifoldKind::Dumbbell: {
            const double t = y[0];
            const double rho = std::hypot(y[1], y[2]);
            const double tau = dumbbell_axial_minimizer(spec.profile, t, rho);
            const double r = spec.profile.radius(tau);
            if (rho < 1e-9) {
                if (r > 1e-9)
                    throw AmbiguousProjection("point on dumbbell axis of revolution");
                out[0] = tau;
                out[1] = out[2] = 0.0;
                return;
            }
            out[0] = tau;
            out[1] = r * y[1] / rho;
            out[2] = r * y[2] / rho;
            return;
        }
    }
}

double constraint_residual(const ManifoldSpec& spec, const double* x) {
    switch (spec.kind) {
        case ManifoldKind::Circle: return std::abs(norm(x, 2) - spec.radius);
        case ManifoldKind::Sphere: return std::abs(norm(x, 3) - spec.radius);
        case ManifoldKind::Torus: {
            const double ring = std::hypot(x[0], x[1]) - spec.major_radius;
            return std::abs(std::hypot(ring, x[2]) - spec.minor_radius);
        }
        case ManifoldKind::Dumbbell: {
            const double T = spec.profile.half_extent;
            if (std::abs(x[0]) > T)
                return std::hypot(std::abs(x[0]) - T, std::hypot(x[1], x[2]));
            return std::abs(std::hypot(x[1], x[2]) - spec.profile.radius(x[0]));
        }
    }
    return 0.0;
}

double geodesic_distance(const ManifoldSpec& spec, const double* x, const double* y) {
    switch (spec.kind) {
        case ManifoldKind::Circle: {
            const double ax = std::atan2(x[1], x[0]);
            const double ay = std::atan2(y[1], y[0]);
            double da = std::abs(ax - ay);
            if (da > kPi) da = kTwoPi - da;
            return spec.radius * da;
        }
        case ManifoldKind::Sphere: {
            const double c = clamp(dot(x, y, 3) / (spec.radius * spec.radius), -1.0, 1.0);
            return spec.radius * std::acos(c);
        }
        default:
            throw UnsupportedManifold(
                "geodesic distance has no analytic form on this manifold; use ambient distance");
    }
}

// ----------------------------------------------------------------------------
// Scalar fields and the weighted Laplacian
// ----------------------------------------------------------------------------

ScalarField ScalarField::constant(double c) {
    ScalarField f;
    f.name = "const";
    f.value = [c](const double*) { return c; };
    f.surface_laplacian = [](const double*) { return 0.0; };
    return f;
}

ScalarField ScalarField::circle_harmonic(int freq, bool sine, double radius) {
    ScalarField f;
    f.name = (sine ? "sin(" : "cos(") + std::to_string(freq) + "t)";
    const double j = freq;
    const double r2 = radius * radius;
    if (sine) {
        f.value = [j](const double* p) { return std::sin(j * std::atan2(p[1], p[0])); };
    } else {
        f.value = [j](const double* p) { return std::cos(j * std::atan2(p[1], p[0])); };
    }
    auto v = f.value;
    f.surface_laplacian = [j, r2, v](const double* p) { return -(j * j / r2) * v(p); };
    return f;
}

ScalarField ScalarField::sphere_harmonic(int l, int m_idx, double radius) {
    if (l < 0 || l > 3 || m_idx < -l || m_idx > l)
        throw UnsupportedManifold("spherical harmonics implemented through degree 3");
    ScalarField f;
    f.name = "Y" + std::to_string(l) + (m_idx < 0 ? "m" : "p") + std::to_string(std::abs(m_idx));
    const int key = l * 10 + (m_idx + l);
    f.value = [key](const double* p) {
        const double n = norm(p, 3);
        const double x = p[0] / n, y = p[1] / n, z = p[2] / n;
        constexpr double pi = kPi;
        switch (key) {
            case 0: return 0.5 / std::sqrt(pi);                                        // Y00
            case 10: return std::sqrt(3.0 / (4 * pi)) * y;                             // Y1,-1
            case 11: return std::sqrt(3.0 / (4 * pi)) * z;                             // Y10
            case 12: return std::sqrt(3.0 / (4 * pi)) * x;                             // Y11
            case 20: return 0.5 * std::sqrt(15.0 / pi) * x * y;                        // Y2,-2
            case 21: return 0.5 * std::sqrt(15.0 / pi) * y * z;                        // Y2,-1
            case 22: return 0.25 * std::sqrt(5.0 / pi) * (3 * z * z - 1);              // Y20
            case 23: return 0.5 * std::sqrt(15.0 / pi) * x * z;                        // Y21
            case 24: return 0.25 * std::sqrt(15.0 / pi) * (x * x - y * y);             // Y22
            case 30: return 0.25 * std::sqrt(35.0 / (2 * pi)) * y * (3 * x * x - y * y);
            case 31: return 0.5 * std::sqrt(105.0 / pi) * x * y * z;
            case 32: return 0.25 * std::sqrt(21.0 / (2 * pi)) * y * (5 * z * z - 1);
            case 33: return 0.25 * std::sqrt(7.0 / pi) * (5 * z * z * z - 3 * z);
            case 34: return 0.25 * std::sqrt(21.0 / (2 * pi)) * x * (5 * z * z - 1);
            case 35: return 0.25 * std::sqrt(105.0 / pi) * (x * x - y * y) * z;
            case 36: return 0.25 * std::sqrt(35.0 / (2 * pi)) * x * (x * x - 3 * y * y);
        }
        return 0.0;
    };
    const double ev = -static_cast<double>(l * (l + 1)) / (radius * radius);
    auto v = f.value;
    f.surface_laplacian = [ev, v](const double* p) { return ev * v(p); };
    // L2-normalize on the sphere of the given radius (the table is unit-sphere
    // orthonormal)
    if (radius != 1.0) {
        auto raw = f.value;
        auto rawl = f.surface_laplacian;
        const double c = 1.0 / radius;
        f.value = [raw, c](const double* p) { return c * raw(p); };
        f.surface_laplacian = [rawl, c](const double* p) { return c * rawl(p); };
    }
    return f;
}

double laplace_beltrami_apply(const ManifoldSpec& spec, const ScalarField& f, const double* x) {
    if (spec.density)
        throw UnsupportedManifold("analytic weighted Laplacian requires the uniform density");
    if (spec.kind != ManifoldKind::Circle && spec.kind != ManifoldKind::Sphere)
        throw UnsupportedManifold("analytic weighted Laplacian implemented for circle and sphere");
    const double rho = 1.0 / spec.surface_area();
    return -0.5 * rho * rho * f.surface_laplacian(x);
}

double density_at(const ManifoldSpec& spec, const double* x) {
    if (spec.density) return spec.density->rho(x);
    return 1.0 / spec.surface_area();
}

// ----------------------------------------------------------------------------
// Dumbbell helpers
// ----------------------------------------------------------------------------

double dumbbell_axial(const ManifoldSpec&, const double* x) { return x[0]; }

double dumbbell_area_fraction(const ManifoldSpec& spec, double t_cut) {
    const double T = spec.profile.half_extent;
    const double part =
        simpson([&](double t) { return spec.profile.area_density(t); }, -t_cut, t_cut, 2048);
    return part / spec.surface_area();
}

void dumbbell_surface_point(const ManifoldSpec& spec, double t, double phi, double* out,
                            double* normal_out) {
    const double r = spec.profile.radius(t);
    out[0] = t;
    out[1] = r * std::cos(phi);
    out[2] = r * std::sin(phi);
    if (normal_out) {
        const double rp = spec.profile.radius_d1(t);
        const double inv = 1.0 / std::sqrt(1.0 + rp * rp);
        normal_out[0] = -rp * inv;
        normal_out[1] = std::cos(phi) * inv;
        normal_out[2] = std::sin(phi) * inv;
    }
}

}  // namespace auglab
