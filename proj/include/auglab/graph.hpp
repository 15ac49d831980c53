#pragma once

#include "auglab/augment.hpp"
#include "auglab/common.hpp"

namespace auglab {

// Sparse symmetric augmentation graph with the 1/(n eps_w^m eps^(m+2))
// Laplacian scaling. Edges are stored once per unordered pair (u < v,
// lexicographically sorted) plus a CSR adjacency for matvecs.
struct AugGraph {
    size_t n = 0;
    int m = 1;  // intrinsic dimension entering the scaling
    double scale = 0.0;
    ParamSchedule sched;

    std::vector<std::int64_t> edge_u, edge_v;
    std::vector<double> edge_w;  // omega in (0, 1]
    std::vector<double> degrees;  // (D_aug)_ii = scale * sum_j omega_ij

    // CSR over both directions, for laplacian_apply
    std::vector<std::int64_t> adj_offset;
    std::vector<std::int64_t> adj_col;
    std::vector<double> adj_w;

    size_t edge_count() const { return edge_w.size(); }
    size_t components = 1;  // >1 is a warning-level condition, not a fault

    void build_adjacency();
    double max_degree() const;
};

// Empirical secondary-similarity weight:
//   (1/N) sum_k exp(-(|xi - x_k|^2 + |xj - x_k|^2) / (2 eps_w^2)).
double edge_weight(const double* xi, const double* xj, size_t d, const PointCloud& naturals,
                   double eps_w);

// Neighbor pairs found by a uniform grid of cell size eps with an exact
// post-filter 0 < |xi - xj| <= eps; weights computed for surviving pairs only.
AugGraph build_graph(const AugmentedCloud& cloud, const NaturalSample& naturals,
                     const ParamSchedule& sched, int m);

// Test/tooling constructor from an explicit edge list (weights as given).
AugGraph make_graph(size_t n, int m, double scale, const ParamSchedule& sched,
                    std::vector<std::int64_t> u, std::vector<std::int64_t> v,
                    std::vector<double> w);

// (Lf)_i = scale * sum_{j~i} omega_ij (f_i - f_j)
void laplacian_apply(const AugGraph& g, const double* f, double* out);
std::vector<double> laplacian_apply(const AugGraph& g, const std::vector<double>& f);

// E(f) = (1/(n^2 eps_w^m eps^(m+2))) * sum_{ij} omega 1{edge} (f_i - f_j)^2
//      = 2 <Lf, f> in L2(vartheta_n)
double dirichlet_energy(const AugGraph& g, const std::vector<double>& f);

// <u, v> in L2(vartheta_n) = (1/n) sum u_i v_i
double vartheta_dot(const std::vector<double>& u, const std::vector<double>& v);

// brute-force O(n^2) edge enumeration, for index-completeness checks
std::vector<std::pair<std::int64_t, std::int64_t>> brute_force_pairs(const PointCloud& pts,
                                                                     double eps);

// kNN-derived connectivity parameter: quantile of k-th neighbor distances.
double eps_from_knn(const PointCloud& pts, int k, double quantile);

}  // namespace auglab
