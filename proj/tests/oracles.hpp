#pragma once

// Dense oracles used by the unit and acceptance suites. These stay independent
// of the sparse/Lanczos implementation path they check.

#include <vector>

#include "auglab/graph.hpp"
#include "auglab/spectral.hpp"

namespace auglab::oracle {

// dense assembly scale*(D - W), n x n row-major
std::vector<double> dense_laplacian(const AugGraph& g);

// full symmetric eigendecomposition (Eigen::SelfAdjointEigenSolver);
// values ascending, vectors euclidean-unit, column l at [l*n, (l+1)*n)
void dense_eig(const std::vector<double>& A, size_t n, std::vector<double>& values,
               std::vector<double>& vectors);
void dense_eig(const AugGraph& g, std::vector<double>& values, std::vector<double>& vectors);

// largest principal angle (radians) between span(A) and span(B), both n x k
// euclidean-orthonormal column blocks
double principal_angle(const std::vector<double>& A, const std::vector<double>& B, size_t n,
                       int k);

// random sparse graph on n nodes for solver tests (connected ring + extras)
AugGraph random_test_graph(size_t n, double extra_edge_prob, std::uint64_t seed,
                           double scale = 1.0);

}  // namespace auglab::oracle
