#pragma once

#include "auglab/continuum.hpp"
#include "auglab/embedding.hpp"
#include "auglab/spectral.hpp"

namespace auglab {

// one pipeline realization: naturals -> cloud -> graph
struct Pipeline {
    NaturalSample naturals;
    AugmentedCloud cloud;
    AugGraph graph;
    ParamSchedule sched;
};

struct EpsRule {
    enum class Kind { Literal, FromN, FromNPlain, Knn } kind = Kind::FromN;
    double literal = 0.25;
    double c = 1.0;   // prefactor for the from-n rules
    int knn_k = 10;
    double knn_quantile = 0.9;
};

double resolve_eps(const EpsRule& rule, size_t n, int m, const PointCloud* cloud_for_knn = nullptr);

Pipeline build_pipeline(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau, double eta,
                        size_t n, int per_parent, std::uint64_t seed, bool naive_mode = false);

// ----------------------------------------------------------------------------
// Pointwise consistency (Theorem 3.1 surrogate)
// ----------------------------------------------------------------------------

struct PointwiseReport {
    size_t n = 0;
    double eps = 0.0;
    std::string test_function;
    double max_abs_error = 0.0;   // median over seeds of max_i |L f - ab Delta f(Q)|
    double mean_abs_error = 0.0;  // median over seeds of the mean
    double f_c3_proxy = 0.0;      // chart-grid max of |f|,|f'|,|f''|,|f'''|
    std::vector<std::uint64_t> seeds;
};

PointwiseReport run_pointwise(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                              double eta, size_t n, const ScalarField& f,
                              const std::vector<std::uint64_t>& seeds, int per_parent = 1);

// ----------------------------------------------------------------------------
// Spectral consistency (Theorem 3.2 surrogate)
// ----------------------------------------------------------------------------

struct SpectralReport {
    size_t n = 0;
    double eps = 0.0;
    int k = 0;
    std::vector<double> eigval_errors;   // per l: |lam - ab*lamhat|/lam (l>=2), |ab*lamhat| at l=1
    std::vector<double> eigvec_errors;   // per l: ||fhat_l - f_l(Q.)|| in L2(vartheta_n), aligned
    std::vector<double> lambda_hat;      // median graph eigenvalues
    std::vector<double> lambda_cont;     // continuum values
    std::vector<double> predicted_hat;   // lambda_cont / (alpha beta)
    std::vector<std::uint64_t> seeds;
};

SpectralReport run_spectral(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                            double eta, size_t n, int k, const std::vector<std::uint64_t>& seeds,
                            const SolverOptions& solver = {}, int per_parent = 1);

// per-seed variant used by the acceptance pilot
struct SpectralSeedResult {
    std::vector<double> eigval_errors, eigvec_errors, lambda_hat;
};
SpectralSeedResult run_spectral_one(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                                    double eta, size_t n, int k, std::uint64_t seed,
                                    const SolverOptions& solver = {}, int per_parent = 1);

// ----------------------------------------------------------------------------
// Rate fit
// ----------------------------------------------------------------------------

struct RateFit {
    std::vector<std::pair<double, double>> grid;  // (n, median error)
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_vs_eps = 0.0;  // slope of log err vs log eps(n)
};

// least squares of log(err) on log(n); eps values (same length as grid) feed
// the linear-in-eps slope. Throws DegenerateFit for non-finite/non-positive
// errors.
RateFit fit_rate(const std::vector<std::pair<double, double>>& n_and_err,
                 const std::vector<double>& eps_values = {});

// ----------------------------------------------------------------------------
// Dumbbell bottleneck (Figure 1 reproduction)
// ----------------------------------------------------------------------------

struct DumbbellResult {
    size_t n = 0;
    double eps = 0.0;
    bool table1_mode = true;
    double accuracy = 0.0;
    double lambda2 = 0.0;
    std::vector<double> eigvec2;
    std::vector<int> cluster;      // 2-means labels on the second eigenvector
    std::vector<int> truth;        // lobe ground truth: sign of axial coordinate
    std::string svg;               // scatter of projections colored by cluster
};

DumbbellResult run_dumbbell(size_t n, bool table1_mode, double tau, double eta, std::uint64_t seed,
                            const SolverOptions& solver = {}, double neck_radius = 0.3,
                            double lobe_radius = 1.0);

// optimal 1-D 2-means split (sorted scan minimizing within-class SSE);
// returns labels and the split threshold
std::vector<int> two_means_1d(const std::vector<double>& values, double* threshold = nullptr);

}  // namespace auglab
