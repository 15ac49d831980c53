#pragma once

#include "auglab/graph.hpp"

namespace auglab {

// Lowest eigenpairs of the graph Laplacian. Vectors are stored column-major
// (k columns of length n), normalized to unit L2(vartheta_n) norm:
// (1/n) sum_i v_i^2 = 1.
struct EigenPairs {
    size_t n = 0;
    int k = 0;
    std::vector<double> values;     // ascending
    std::vector<double> vectors;    // n*k, column l at [l*n, (l+1)*n)
    std::vector<double> residuals;  // ||Lv - lambda v|| in L2(vartheta_n)

    double* col(int l) { return vectors.data() + static_cast<size_t>(l) * n; }
    const double* col(int l) const { return vectors.data() + static_cast<size_t>(l) * n; }
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 4000;
    std::uint64_t seed = 0x5eedULL;
};

// Lanczos with full reorthogonalization on the shifted operator sigma*I - L
// (sigma from a Gershgorin bound), so the low end of L converges first.
// Restarts with a doubled Krylov budget up to 3 times, then throws
// NoConvergence.
EigenPairs smallest_eigenpairs(const AugGraph& g, int k, double tol, int max_iter,
                               std::uint64_t seed = 0x5eedULL);
EigenPairs smallest_eigenpairs(const AugGraph& g, int k, const SolverOptions& opt);

// Rayleigh quotient <Lf, f>/<f, f> in L2(vartheta_n) (= E(f)/(2 |f|^2)).
double rayleigh_quotient(const AugGraph& g, const std::vector<double>& f);

struct CourantFischerReport {
    int trials = 0;
    int violations = 0;
    double worst_gap = 0.0;        // most negative (quotient - lambda_l) seen
    double span_deviation = 0.0;   // |max quotient over span(v_1..v_l) - lambda_l|
};

// Sampled check of the min-max principle: random l-dim subspaces must have
// max Rayleigh quotient >= lambda_l - tol; the span of the first l
// eigenvectors must attain lambda_l.
CourantFischerReport courant_fischer_check(const AugGraph& g, const EigenPairs& pairs, int trials,
                                           std::uint64_t seed, double tol = 1e-8);

struct AlignmentInfo {
    double pre_distance = 0.0;   // Frobenius distance before alignment
    double post_distance = 0.0;  // after
    std::vector<int> clusters;   // cluster sizes used
};

// Resolves sign/rotation ambiguity against a reference basis (columns
// L2(vartheta_n)-normalized). Within each numerically degenerate value
// cluster the computed block is rotated by the orthogonal Procrustes
// minimizer; isolated pairs get a sign flip. Clusters are consecutive values
// with gap < cluster_tol, unless explicit cluster sizes are given (e.g. from
// a reference spectrum's exact multiplicities).
EigenPairs align_sign_and_pair(const EigenPairs& computed, const std::vector<double>& reference,
                               double cluster_tol, AlignmentInfo* info = nullptr,
                               const std::vector<int>* cluster_sizes = nullptr);

// Spec default: max(1e-8, 1e-6 * lambda_k)
double default_cluster_tol(const EigenPairs& pairs);

// Dense-oracle interface used by tests and pilot runs (implemented with Eigen
// in the test tree; declared here so the acceptance suite can share it).
// Small symmetric eigensolve via cyclic Jacobi; a (k x k) helper for
// alignment and subspace checks.
void small_symmetric_eig(std::vector<double>& A /* k*k row-major, in/out */, int k,
                         std::vector<double>& values /* out, ascending */,
                         std::vector<double>& vectors /* out, k*k col-major */);

}  // namespace auglab
