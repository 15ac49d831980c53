#pragma once

#include "auglab/spectral.hpp"

namespace auglab {

// Spectral-embedding objective ||YY^T - aI + L||_F^2 with a >= max (D_aug)_ii
// so that aI - L is positive semidefinite.
struct EmbeddingProblem {
    const AugGraph* graph = nullptr;
    int k = 1;
    double a = 0.0;
};

EmbeddingProblem make_embedding_problem(const AugGraph& g, int k, double margin = 1.05);

// Column l of Y* is sqrt(a - lambda_l) u_l with u_l the Euclidean-unit
// eigenvector (identity rotation convention). Y* is n x k row-major.
std::vector<double> eckart_young_minimizer(const EmbeddingProblem& prob, const EigenPairs& pairs);

// ||YY^T - (aI - L)||_F^2, matrix-free (uses tr(M^2) from the edge list).
double embedding_objective(const EmbeddingProblem& prob, const std::vector<double>& Y);

// gradient 4 (YY^T - M) Y, matrix-free; n x k row-major
std::vector<double> embedding_gradient(const EmbeddingProblem& prob, const std::vector<double>& Y);

struct DescentResult {
    std::vector<double> Y;  // n x k row-major
    std::vector<double> objective_trace;
};

// Plain gradient descent on the objective. Throws Divergence if the objective
// increases 50 consecutive steps.
DescentResult factorization_descent(const EmbeddingProblem& prob, std::uint64_t seed, int steps,
                                    double lr);

// Frobenius distance min over orthogonal Q of ||Y Q - Y*||.
double procrustes_distance(const std::vector<double>& Y, const std::vector<double>& Ystar,
                           size_t n, int k);

// ----------------------------------------------------------------------------
// ReLU network, shape chain d -> p -> ... -> p -> k with depth weight layers
// ----------------------------------------------------------------------------

struct ReluNet {
    int depth = 2;   // number of weight matrices
    int width = 8;   // hidden width p
    int in_dim = 2;  // d
    int out_dim = 1; // k
    // W[i] maps layer i input to output, row-major (rows x cols);
    // rows = (i == depth-1 ? out_dim : width), cols = (i == 0 ? in_dim : width)
    std::vector<std::vector<double>> W;
    std::vector<std::vector<double>> b;

    void forward(const double* x, double* out) const;
    double max_abs_weight() const;
    std::int64_t nonzero_count(double thresh = 1e-8) const;

    static ReluNet init(int depth, int width, int in_dim, int out_dim, std::uint64_t seed);
};

struct FitReport {
    double sup_error = 0.0;  // max abs entry of Y* - Y_theta
    double fro_error = 0.0;
    double max_abs_weight = 0.0;
    std::int64_t nonzero_count = 0;
    std::vector<double> loss_trace;
};

// Full-batch gradient descent on the mean squared error from inputs (rows of
// the cloud) to rows of the n x k target. Throws Divergence as above.
ReluNet fit_relu_net(const PointCloud& inputs, const std::vector<double>& target, int k, int depth,
                     int width, int steps, double lr, std::uint64_t seed, FitReport* report);

}  // namespace auglab
