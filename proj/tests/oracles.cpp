#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "auglab/rng.hpp"

namespace auglab::oracle {

std::vector<double> dense_laplacian(const AugGraph& g) {
    const size_t n = g.n;
    std::vector<double> A(n * n, 0.0);
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const auto u = static_cast<size_t>(g.edge_u[e]);
        const auto v = static_cast<size_t>(g.edge_v[e]);
        const double w = g.scale * g.edge_w[e];
        A[u * n + v] -= w;
        A[v * n + u] -= w;
        A[u * n + u] += w;
        A[v * n + v] += w;
    }
    return A;
}

void dense_eig(const std::vector<double>& A, size_t n, std::vector<double>& values,
               std::vector<double>& vectors) {
    Eigen::MatrixXd M(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M(static_cast<long>(i), static_cast<long>(j)) = A[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    values.resize(n);
    vectors.resize(n * n);
    for (size_t l = 0; l < n; ++l) {
        values[l] = es.eigenvalues()(static_cast<long>(l));
        for (size_t i = 0; i < n; ++i)
            vectors[l * n + i] = es.eigenvectors()(static_cast<long>(i), static_cast<long>(l));
    }
}

void dense_eig(const AugGraph& g, std::vector<double>& values, std::vector<double>& vectors) {
    dense_eig(dense_laplacian(g), g.n, values, vectors);
}

double principal_angle(const std::vector<double>& A, const std::vector<double>& B, size_t n,
                       int k) {
    Eigen::MatrixXd Am(n, k), Bm(n, k);
    for (size_t i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c) {
            Am(static_cast<long>(i), c) = A[static_cast<size_t>(c) * n + i];
            Bm(static_cast<long>(i), c) = B[static_cast<size_t>(c) * n + i];
        }
    // orthonormalize both blocks, then angles from singular values of Qa^T Qb
    Eigen::HouseholderQR<Eigen::MatrixXd> qa(Am), qb(Bm);
    Eigen::MatrixXd Qa = qa.householderQ() * Eigen::MatrixXd::Identity(static_cast<long>(n), k);
    Eigen::MatrixXd Qb = qb.householderQ() * Eigen::MatrixXd::Identity(static_cast<long>(n), k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Qa.transpose() * Qb);
    const double smin = svd.singularValues().minCoeff();
    return std::acos(std::min(1.0, std::max(-1.0, smin)));
}

AugGraph random_test_graph(size_t n, double extra_edge_prob, std::uint64_t seed, double scale) {
    Rng rng(seed);
    std::vector<std::int64_t> u, v;
    std::vector<double> w;
    for (size_t i = 0; i < n; ++i) {  // connected ring
        u.push_back(static_cast<std::int64_t>(i));
        v.push_back(static_cast<std::int64_t>((i + 1) % n));
        w.push_back(0.1 + 0.9 * rng.uniform());
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // already a ring edge
            if (rng.uniform() < extra_edge_prob) {
                u.push_back(static_cast<std::int64_t>(i));
                v.push_back(static_cast<std::int64_t>(j));
                w.push_back(0.1 + 0.9 * rng.uniform());
            }
        }
    // normalize to (i<j) sorted order
    std::vector<size_t> order(u.size());
    for (size_t e = 0; e < u.size(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::make_pair(u[a], v[a]) < std::make_pair(u[b], v[b]);
    });
    std::vector<std::int64_t> u2, v2;
    std::vector<double> w2;
    for (size_t e : order) {
        u2.push_back(u[e]);
        v2.push_back(v[e]);
        w2.push_back(w[e]);
    }
    ParamSchedule sched = schedule_from(0.5, 2.0, 1.0, 3);
    return make_graph(n, 2, scale, sched, std::move(u2), std::move(v2), std::move(w2));
}

}  // namespace auglab::oracle
