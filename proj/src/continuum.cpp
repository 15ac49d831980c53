#include "auglab/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "auglab/spectral.hpp"

namespace auglab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double unit_ball_volume(int m) {
    // pi^(m/2) / Gamma(m/2 + 1)
    return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

void finish(ContinuumSpectrum& s) {
    // multiplicities of equal values and eigengaps: half the distance to the
    // nearest distinct neighbor
    const size_t k = s.values.size();
    s.multiplicity.assign(k, 1);
    size_t i = 0;
    while (i < k) {
        size_t j = i;
        while (j + 1 < k && std::abs(s.values[j + 1] - s.values[i]) < 1e-12) ++j;
        for (size_t t = i; t <= j; ++t) s.multiplicity[t] = static_cast<int>(j - i + 1);
        i = j + 1;
    }
    s.eigengaps.assign(k, 0.0);
    for (size_t t = 0; t < k; ++t) {
        double below = std::numeric_limits<double>::infinity();
        double above = std::numeric_limits<double>::infinity();
        for (size_t u = 0; u < k; ++u) {
            const double d = std::abs(s.values[u] - s.values[t]);
            if (d > 1e-12) {
                if (s.values[u] < s.values[t]) below = std::min(below, d);
                else above = std::min(above, d);
            }
        }
        // the block above index k-1 is not represented; use the analytic next
        // value when both sides exist, else the available side
        double g = std::min(below, above);
        if (!std::isfinite(g)) g = 0.0;
        s.eigengaps[t] = 0.5 * g;
    }
}
}  // namespace

Constants constants(int m) {
    if (m < 1) throw ConfigError("constants requires m >= 1");
    Constants c;
    c.m = m;
    c.alpha = std::pow(kPi, 0.5 * m);
    c.sigma_m = unit_ball_volume(m);
    c.beta = c.sigma_m / (m + 2.0);
    return c;
}

double predicted_graph_eigenvalue(double lambda_cont, const Constants& c) {
    return lambda_cont / (c.alpha * c.beta);
}

std::vector<int> ContinuumSpectrum::cluster_sizes(int k) const {
    std::vector<int> out;
    int i = 0;
    while (i < k) {
        int c = 1;
        while (i + c < k && std::abs(values[i + c] - values[i]) < 1e-12) ++c;
        out.push_back(c);
        i += c;
    }
    return out;
}

ContinuumSpectrum continuum_spectrum(const ManifoldSpec& spec, int k) {
    if (spec.density)
        throw UnsupportedManifold(
            "closed-form spectrum requires the uniform density; see "
            "circle_custom_density_spectrum");
    ContinuumSpectrum s;
    switch (spec.kind) {
        case ManifoldKind::Circle: {
            const double r = spec.radius;
            const double rho = 1.0 / (2.0 * kPi * r);
            const double area = 2.0 * kPi * r;
            // constant eigenfunction, L2(M)-normalized
            s.values.push_back(0.0);
            s.eigenfunctions.push_back(ScalarField::constant(1.0 / std::sqrt(area)));
            const double amp = std::sqrt(2.0 / area);  // |cos|^2 integrates to area/2
            for (int j = 1; static_cast<int>(s.values.size()) < k; ++j) {
                const double lam = 0.5 * rho * rho * (j / r) * (j / r);
                for (int parity = 0; parity < 2 && static_cast<int>(s.values.size()) < k;
                     ++parity) {
                    s.values.push_back(lam);
                    ScalarField f = ScalarField::circle_harmonic(j, parity == 1, r);
                    auto raw = f.value;
                    auto rawl = f.surface_laplacian;
                    f.value = [raw, amp](const double* p) { return amp * raw(p); };
                    f.surface_laplacian = [rawl, amp](const double* p) { return amp * rawl(p); };
                    s.eigenfunctions.push_back(std::move(f));
                }
            }
            break;
        }
        case ManifoldKind::Sphere: {
            const double r = spec.radius;
            const double rho = 1.0 / (4.0 * kPi * r * r);
            for (int l = 0; static_cast<int>(s.values.size()) < k; ++l) {
                if (l > 3)
                    throw UnsupportedManifold(
                        "sphere eigenfunctions implemented through degree 3; request fewer pairs");
                const double lam = 0.5 * rho * rho * l * (l + 1) / (r * r);
                for (int m_idx = -l; m_idx <= l && static_cast<int>(s.values.size()) < k;
                     ++m_idx) {
                    s.values.push_back(lam);
                    s.eigenfunctions.push_back(ScalarField::sphere_harmonic(l, m_idx, r));
                }
            }
            break;
        }
        default:
            throw UnsupportedManifold("continuum spectrum available for circle and sphere only");
    }
    finish(s);
    return s;
}

std::vector<double> circle_custom_density_spectrum(const ManifoldSpec& spec, double eps, int k) {
    if (spec.kind != ManifoldKind::Circle)
        throw UnsupportedManifold("fine-grid reference solver is circle-only");
    const double r = spec.radius;
    const int M =
        std::clamp(static_cast<int>(std::ceil(2.0 * kPi * r / (eps / 20.0))), 64, 2000);
    const double h = 2.0 * kPi * r / M;  // arc-length step

    auto rho_at = [&](int i) {
        const double theta = 2.0 * kPi * i / M;
        double p[2] = {r * std::cos(theta), r * std::sin(theta)};
        return density_at(spec, p);
    };

    // -(1/2) d/ds (rho^2 df/ds) with rho^2 evaluated at half-grid midpoints:
    // (Af)_i = -(1/2h^2) [ c_{i+1/2} (f_{i+1}-f_i) - c_{i-1/2} (f_i - f_{i-1}) ]
    std::vector<double> c(M);
    for (int i = 0; i < M; ++i) {
        const double a = rho_at(i), b = rho_at((i + 1) % M);
        const double mid = 0.5 * (a + b);
        c[i] = mid * mid;  // c_{i+1/2}
    }
    std::vector<double> A(static_cast<size_t>(M) * M, 0.0);
    const double s = 0.5 / (h * h);
    for (int i = 0; i < M; ++i) {
        const int prev = (i + M - 1) % M;
        const int next = (i + 1) % M;
        A[i * M + i] = s * (c[i] + c[prev]);
        A[i * M + next] -= s * c[i];
        A[i * M + prev] -= s * c[prev];
    }
    std::vector<double> vals, vecs;
    small_symmetric_eig(A, M, vals, vecs);
    vals.resize(std::min<size_t>(vals.size(), k));
    return vals;
}

RegimeReport regime_report(double eps, double tau, int m) {
    RegimeReport r;
    r.eps = eps;
    r.tau = tau;
    const double eps_w = std::pow(eps, tau);
    r.cond_pointwise_lhs = std::exp(-std::pow(eps, 4.0 / 3.0) / std::pow(eps, 2.0 * tau / 3.0));
    r.cond_pointwise_rhs = std::pow(eps_w, m) * eps * eps;
    r.cond_spectral_rhs = std::pow(eps_w, m) * eps * eps * eps;
    r.pointwise_ok = r.cond_pointwise_lhs <= r.cond_pointwise_rhs;
    r.spectral_ok = r.cond_pointwise_lhs <= r.cond_spectral_rhs;
    return r;
}

EigengapIndicator eigengap_indicator(const ContinuumSpectrum& s, int l, double eps) {
    EigengapIndicator e;
    const double lam = s.values.at(l - 1);
    e.lhs = (eps * (std::sqrt(lam) + 1.0) + eps) * lam;
    e.gap = s.eigengaps.at(l - 1);
    e.ok = e.lhs <= e.gap;
    return e;
}

}  // namespace auglab
