#pragma once

#include "auglab/manifold.hpp"

namespace auglab {

// alpha = int_{R^m} exp(-|y|^2) dy = pi^(m/2)
// beta  = int_{B^m(0,1)} |y1|^2 dy = sigma_m / (m + 2)
struct Constants {
    int m = 1;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma_m = 0.0;  // unit-ball volume
    double alpha_beta() const { return alpha * beta; }
};

Constants constants(int m);

// Spectrum of the weighted operator -(1/2) div(rho^2 grad f) with uniform
// density, listed with multiplicity.
struct ContinuumSpectrum {
    std::vector<double> values;               // ascending, with multiplicity
    std::vector<ScalarField> eigenfunctions;  // L2(M)-normalized
    std::vector<int> multiplicity;            // per entry: size of its block
    std::vector<double> eigengaps;            // per entry

    // sizes of the consecutive degenerate blocks among the first k entries
    // (last block truncated at k), for cluster-wise eigenvector alignment
    std::vector<int> cluster_sizes(int k) const;
};

// Circle: values (1/2) rho^2 (j/r)^2, eigenfunctions {1, cos, sin};
// Sphere: values (1/2) rho^2 l(l+1)/r^2, real spherical harmonics (l <= 3).
// Unsupported for Torus/Dumbbell and Custom densities.
ContinuumSpectrum continuum_spectrum(const ManifoldSpec& spec, int k);

// The value the graph eigenvalue should approach: lambda / (alpha * beta).
double predicted_graph_eigenvalue(double lambda_cont, const Constants& c);

// Reference spectrum for a custom bounded density on the circle: second-order
// finite differences of -(1/2)(rho^2 f')' on a periodic theta-grid with step
// ~ eps/20. Returns the k smallest eigenvalues.
std::vector<double> circle_custom_density_spectrum(const ManifoldSpec& spec, double eps, int k);

// Regime indicators (reported, never hard gates): left-hand sides of the
// smallness conditions with C = 1 for the chosen (eps, tau).
struct RegimeReport {
    double eps = 0.0, tau = 0.0;
    double cond_pointwise_lhs = 0.0;  // exp(-eps^{4/3}/eps^{2tau/3})
    double cond_pointwise_rhs = 0.0;  // eps_w^m eps^2
    double cond_spectral_rhs = 0.0;   // eps_w^m eps^3
    bool pointwise_ok = false, spectral_ok = false;
};
RegimeReport regime_report(double eps, double tau, int m);

// eigengap-side indicator for level l: lhs = (eps(sqrt(l)+1)+eps)*lambda_l vs gap
struct EigengapIndicator {
    double lhs = 0.0;
    double gap = 0.0;
    bool ok = false;
};
EigengapIndicator eigengap_indicator(const ContinuumSpectrum& s, int l, double eps);

}  // namespace auglab
