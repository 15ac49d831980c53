#include "auglab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "auglab/rng.hpp"
#include "auglab/threads.hpp"

namespace auglab {

namespace {

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    return parallel_sum(a.size(), [&](size_t lo, size_t hi) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += a[i] * b[i];
        return s;
    });
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    parallel_for(y.size(), [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) y[i] += alpha * x[i];
    });
}

void scal(double alpha, std::vector<double>& x) {
    for (auto& v : x) v *= alpha;
}

// Symmetric tridiagonal eigensolve by implicit QL with Wilkinson shifts.
// alpha: diagonal (size m), beta: off-diagonal (size m-1). Z (m x m,
// row-major) accumulates the rotations; pass identity to get eigenvectors of
// the tridiagonal matrix.
void tridiag_eig(std::vector<double>& alpha, std::vector<double>& beta, std::vector<double>& Z,
                 int m) {
    beta.push_back(0.0);
    for (int l = 0; l < m; ++l) {
        int iter = 0;
        int mm;
        do {
            for (mm = l; mm < m - 1; ++mm) {
                const double dd = std::abs(alpha[mm]) + std::abs(alpha[mm + 1]);
                if (std::abs(beta[mm]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (mm != l) {
                if (iter++ == 80) throw NoConvergence(l);
                double g = (alpha[l + 1] - alpha[l]) / (2.0 * beta[l]);
                double r = std::hypot(g, 1.0);
                g = alpha[mm] - alpha[l] + beta[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = mm - 1; i >= l; --i) {
                    double f = s * beta[i];
                    const double b = c * beta[i];
                    r = std::hypot(f, g);
                    beta[i + 1] = r;
                    if (r == 0.0) {
                        alpha[i + 1] -= p;
                        beta[mm] = 0.0;
                        underflow = (i >= l);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = alpha[i + 1] - p;
                    r = (alpha[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    alpha[i + 1] = g + p;
                    g = c * r - b;
                    for (int row = 0; row < m; ++row) {
                        f = Z[row * m + i + 1];
                        Z[row * m + i + 1] = s * Z[row * m + i] + c * f;
                        Z[row * m + i] = c * Z[row * m + i] - s * f;
                    }
                }
                if (underflow) continue;
                alpha[l] -= p;
                beta[l] = g;
                beta[mm] = 0.0;
            }
        } while (mm != l);
    }
    beta.pop_back();
}

struct RitzSystem {
    std::vector<double> theta;  // eigenvalues of sigma*I - L restricted, descending use
    std::vector<double> S;      // m x m row-major eigenvector matrix of the tridiagonal
    int m = 0;
};

RitzSystem solve_tridiagonal(const std::vector<double>& a, const std::vector<double>& b) {
    RitzSystem rs;
    rs.m = static_cast<int>(a.size());
    std::vector<double> alpha = a, beta = b;
    rs.S.assign(static_cast<size_t>(rs.m) * rs.m, 0.0);
    for (int i = 0; i < rs.m; ++i) rs.S[i * rs.m + i] = 1.0;
    tridiag_eig(alpha, beta, rs.S, rs.m);
    rs.theta = alpha;
    return rs;
}

}  // namespace

EigenPairs smallest_eigenpairs(const AugGraph& g, int k, double tol, int max_iter,
                               std::uint64_t seed) {
    SolverOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.seed = seed;
    return smallest_eigenpairs(g, k, opt);
}

EigenPairs smallest_eigenpairs(const AugGraph& g, int k, const SolverOptions& opt) {
    const size_t n = g.n;
    if (k < 1 || static_cast<size_t>(k) > std::min<size_t>(n, 64))
        throw ConfigError("smallest_eigenpairs requires 1 <= k <= min(n, 64)");
    if (!(opt.tol > 0.0)) throw ConfigError("solver tolerance must be positive");

    // The all-ones vector is an exact kernel vector (zero row sums), so the
    // first pair is known; Lanczos runs on the complement. lambda_max(L) <=
    // 2 * max degree (Gershgorin); on B = sigma*I - L the remaining smallest
    // eigenvalues of L are the largest of B and converge first.
    const double sigma = 2.0 * g.max_degree() + 1.0;
    const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(n));

    EigenPairs out;
    out.n = n;
    out.k = k;
    out.values.assign(k, 0.0);
    out.vectors.assign(static_cast<size_t>(k) * n, 0.0);
    out.residuals.assign(k, 0.0);
    {
        // pair 1: normalized constants; residual = ||L 1|| / ||1||
        double* y = out.col(0);
        std::vector<double> ones(n, inv_root_n), Ly(n);
        laplacian_apply(g, ones.data(), Ly.data());
        double lam = 0.0, r2 = 0.0;
        for (size_t i = 0; i < n; ++i) lam += Ly[i] * ones[i];
        lam = std::max(0.0, lam);
        for (size_t i = 0; i < n; ++i) {
            const double r = Ly[i] - lam * ones[i];
            r2 += r * r;
        }
        out.values[0] = lam;
        out.residuals[0] = std::sqrt(r2);
        for (size_t i = 0; i < n; ++i) y[i] = inv_root_n;
    }
    if (k == 1) {
        for (auto& x : out.vectors) x *= std::sqrt(static_cast<double>(n));
        return out;
    }

    const int want = k - 1;  // pairs beyond the kernel constant
    auto apply_b = [&](const std::vector<double>& x, std::vector<double>& y) {
        laplacian_apply(g, x.data(), y.data());
        parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i) y[i] = sigma * x[i] - y[i];
        });
    };
    auto project_out_ones = [&](std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        s /= static_cast<double>(n);
        for (auto& x : v) x -= s;
    };

    // incremental Lanczos: convergence is checked at a doubling schedule of
    // Krylov dimensions (the in-place form of restart-with-doubled-budget);
    // max_iter is the user-facing total budget.
    const int base_budget = std::min<int>(static_cast<int>(n) - 1, std::max(4 * k, 40));
    const int hard_cap = std::max(1, std::min<int>(static_cast<int>(n) - 1, opt.max_iter));

    std::vector<std::vector<double>> V;
    V.reserve(hard_cap);
    std::vector<double> a, b;

    Rng rng(opt.seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    project_out_ones(v);
    scal(1.0 / std::sqrt(vec_dot(v, v)), v);
    V.push_back(v);

    std::vector<double> w(n);
    int next_check = base_budget;
    bool exhausted = false;
    for (int j = 0; j < hard_cap; ++j) {
        apply_b(V[j], w);
        const double aj = vec_dot(w, V[j]);
        a.push_back(aj);
        axpy(-aj, V[j], w);
        if (j > 0) axpy(-b[j - 1], V[j - 1], w);
        project_out_ones(w);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) axpy(-vec_dot(w, V[i]), V[i], w);
        const double bj = std::sqrt(vec_dot(w, w));
        const int m = j + 1;
        if (bj < 1e-13 * sigma) {
            exhausted = true;  // invariant subspace; what we have is exact
        }

        if (exhausted || m == next_check || m == hard_cap) {
            if (m >= want) {
                RitzSystem rs =
                    solve_tridiagonal(a, std::vector<double>(b.begin(), b.begin() + (m - 1)));
                std::vector<int> order(m);
                for (int i = 0; i < m; ++i) order[i] = i;
                std::sort(order.begin(), order.end(),
                          [&](int x, int y) { return rs.theta[x] > rs.theta[y]; });
                // Ritz residual estimates |beta_m * S[m-1, col]|
                bool ok = true;
                for (int l = 0; l < want && ok; ++l)
                    if (!exhausted &&
                        bj * std::abs(rs.S[(m - 1) * m + order[l]]) > opt.tol * sigma)
                        ok = false;
                if (ok) {
                    for (int l = 0; l < want; ++l) {
                        const int col = order[l];
                        double* y = out.col(l + 1);
                        for (size_t i = 0; i < n; ++i) y[i] = 0.0;
                        for (int t = 0; t < m; ++t) {
                            const double s = rs.S[t * m + col];
                            if (s != 0.0)
                                for (size_t i = 0; i < n; ++i) y[i] += s * V[t][i];
                        }
                        double nrm = 0.0;
                        for (size_t i = 0; i < n; ++i) nrm += y[i] * y[i];
                        nrm = std::sqrt(nrm);
                        for (size_t i = 0; i < n; ++i) y[i] /= nrm;
                        const double lambda = std::max(0.0, sigma - rs.theta[col]);
                        out.values[l + 1] = lambda;
                        std::vector<double> yv(y, y + n), Ly(n);
                        laplacian_apply(g, yv.data(), Ly.data());
                        double r2 = 0.0;
                        for (size_t i = 0; i < n; ++i) {
                            const double r = Ly[i] - lambda * y[i];
                            r2 += r * r;
                        }
                        out.residuals[l + 1] = std::sqrt(r2);
                        if (out.residuals[l + 1] > opt.tol * std::max(1.0, sigma)) ok = false;
                    }
                }
                if (ok) {
                    // ascending values (the kernel pair is already the smallest)
                    const double root_n = std::sqrt(static_cast<double>(n));
                    for (auto& x : out.vectors) x *= root_n;
                    for (int l = 0; l < k; ++l) {
                        double* y = out.col(l);
                        for (size_t i = 0; i < n; ++i) {
                            if (std::abs(y[i]) > 1e-12) {
                                if (y[i] < 0)
                                    for (size_t jj = 0; jj < n; ++jj) y[jj] = -y[jj];
                                break;
                            }
                        }
                    }
                    return out;
                }
            }
            if (exhausted || m == hard_cap) throw NoConvergence(k - 1);
            next_check = std::min(hard_cap, 2 * next_check);
        }

        if (j + 1 < hard_cap) {
            b.push_back(bj);
            scal(1.0 / bj, w);
            V.push_back(w);
        }
    }
    throw NoConvergence(k - 1);
}

double rayleigh_quotient(const AugGraph& g, const std::vector<double>& f) {
    const std::vector<double> Lf = laplacian_apply(g, f);
    return vartheta_dot(Lf, f) / vartheta_dot(f, f);
}

CourantFischerReport courant_fischer_check(const AugGraph& g, const EigenPairs& pairs, int trials,
                                           std::uint64_t seed, double tol) {
    CourantFischerReport rep;
    rep.trials = trials;
    const size_t n = g.n;
    const int k = pairs.k;
    Rng rng(seed);

    // max quotient over a subspace spanned by columns B (vartheta-orthonormal):
    // largest eigenvalue of the small matrix M_ab = <L b_a, b_b>_{vartheta}
    auto max_quotient = [&](const std::vector<std::vector<double>>& B) {
        const int l = static_cast<int>(B.size());
        std::vector<double> M(static_cast<size_t>(l) * l);
        std::vector<std::vector<double>> LB(l);
        for (int a = 0; a < l; ++a) LB[a] = laplacian_apply(g, B[a]);
        for (int a = 0; a < l; ++a)
            for (int c = a; c < l; ++c) {
                const double v = 0.5 * (vartheta_dot(LB[a], B[c]) + vartheta_dot(LB[c], B[a]));
                M[a * l + c] = M[c * l + a] = v;
            }
        std::vector<double> vals, vecs;
        small_symmetric_eig(M, l, vals, vecs);
        return vals.back();
    };

    // orthonormalize columns in L2(vartheta_n) by modified Gram-Schmidt
    auto orthonormalize = [&](std::vector<std::vector<double>>& B) {
        for (size_t a = 0; a < B.size(); ++a) {
            for (size_t c = 0; c < a; ++c) {
                const double pr = vartheta_dot(B[a], B[c]);
                for (size_t i = 0; i < n; ++i) B[a][i] -= pr * B[c][i];
            }
            const double nr = std::sqrt(vartheta_dot(B[a], B[a]));
            for (auto& x : B[a]) x /= nr;
        }
    };

    for (int t = 0; t < trials; ++t) {
        const int l = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(k)));
        std::vector<std::vector<double>> B(l, std::vector<double>(n));
        for (auto& col : B)
            for (auto& x : col) x = rng.normal();
        orthonormalize(B);
        const double q = max_quotient(B);
        const double gap = q - pairs.values[l - 1];
        rep.worst_gap = std::min(rep.worst_gap, gap);
        if (gap < -tol) ++rep.violations;
    }

    // the span of the first l eigenvectors attains lambda_l
    double worst = 0.0;
    for (int l = 1; l <= k; ++l) {
        std::vector<std::vector<double>> B;
        for (int c = 0; c < l; ++c) B.emplace_back(pairs.col(c), pairs.col(c) + n);
        orthonormalize(B);
        const double q = max_quotient(B);
        worst = std::max(worst, std::abs(q - pairs.values[l - 1]));
    }
    rep.span_deviation = worst;
    return rep;
}

// ----------------------------------------------------------------------------
// Small dense symmetric eigensolve (cyclic Jacobi)
// ----------------------------------------------------------------------------

void small_symmetric_eig(std::vector<double>& A, int k, std::vector<double>& values,
                         std::vector<double>& vectors) {
    vectors.assign(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) vectors[i * k + i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) off += A[p * k + q] * A[p * k + q];
        if (off < 1e-30) break;
        for (int p = 0; p < k - 1; ++p)
            for (int q = p + 1; q < k; ++q) {
                const double apq = A[p * k + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * (A[q * k + q] - A[p * k + p]) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int r = 0; r < k; ++r) {
                    const double arp = A[r * k + p], arq = A[r * k + q];
                    A[r * k + p] = c * arp - s * arq;
                    A[r * k + q] = s * arp + c * arq;
                }
                for (int r = 0; r < k; ++r) {
                    const double apr = A[p * k + r], aqr = A[q * k + r];
                    A[p * k + r] = c * apr - s * aqr;
                    A[q * k + r] = s * apr + c * aqr;
                }
                for (int r = 0; r < k; ++r) {
                    const double vrp = vectors[r * k + p], vrq = vectors[r * k + q];
                    vectors[r * k + p] = c * vrp - s * vrq;
                    vectors[r * k + q] = s * vrp + c * vrq;
                }
            }
    }
    values.resize(k);
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) {
        values[i] = A[i * k + i];
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    std::vector<double> v2(k), V2(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        v2[i] = values[order[i]];
        for (int r = 0; r < k; ++r) V2[r * k + i] = vectors[r * k + order[i]];
    }
    values = std::move(v2);
    vectors = std::move(V2);
}

// ----------------------------------------------------------------------------
// Alignment
// ----------------------------------------------------------------------------

namespace {

// SVD of a small square matrix G via the symmetric eigendecomposition of
// G^T G; adequate for the well-conditioned cross-Gram blocks that arise in
// cluster alignment.
void small_svd(const std::vector<double>& G, int k, std::vector<double>& U,
               std::vector<double>& Vt) {
    std::vector<double> GtG(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double s = 0.0;
            for (int r = 0; r < k; ++r) s += G[r * k + i] * G[r * k + j];
            GtG[i * k + j] = s;
        }
    std::vector<double> evals, V;
    small_symmetric_eig(GtG, k, evals, V);  // ascending
    // descending singular values
    std::vector<double> sing(k);
    std::vector<double> Vd(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        const int src = k - 1 - i;
        sing[i] = std::sqrt(std::max(0.0, evals[src]));
        for (int r = 0; r < k; ++r) Vd[r * k + i] = V[r * k + src];
    }
    U.assign(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        if (sing[i] > 1e-14) {
            for (int r = 0; r < k; ++r) {
                double s = 0.0;
                for (int c = 0; c < k; ++c) s += G[r * k + c] * Vd[c * k + i];
                U[r * k + i] = s / sing[i];
            }
        } else {
            // fill an orthogonal complement direction
            for (int r = 0; r < k; ++r) U[r * k + i] = (r == i) ? 1.0 : 0.0;
            for (int j = 0; j < i; ++j) {
                double pr = 0.0;
                for (int r = 0; r < k; ++r) pr += U[r * k + i] * U[r * k + j];
                for (int r = 0; r < k; ++r) U[r * k + i] -= pr * U[r * k + j];
            }
            double nr = 0.0;
            for (int r = 0; r < k; ++r) nr += U[r * k + i] * U[r * k + i];
            nr = std::sqrt(nr);
            if (nr > 1e-14)
                for (int r = 0; r < k; ++r) U[r * k + i] /= nr;
        }
    }
    Vt.assign(static_cast<size_t>(k) * k, 0.0);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) Vt[r * k + c] = Vd[c * k + r];
}

double frob_distance(const EigenPairs& a, const std::vector<double>& ref) {
    double s = 0.0;
    for (size_t i = 0; i < a.vectors.size(); ++i) {
        const double dd = a.vectors[i] - ref[i];
        s += dd * dd;
    }
    return std::sqrt(s / static_cast<double>(a.n));  // vartheta_n scaling
}

}  // namespace

double default_cluster_tol(const EigenPairs& pairs) {
    return std::max(1e-8, 1e-6 * pairs.values.back());
}

EigenPairs align_sign_and_pair(const EigenPairs& computed, const std::vector<double>& reference,
                               double cluster_tol, AlignmentInfo* info,
                               const std::vector<int>* cluster_sizes) {
    const size_t n = computed.n;
    const int k = computed.k;
    if (reference.size() != computed.vectors.size())
        throw DimensionMismatch("align_sign_and_pair: reference shape mismatch");

    std::vector<int> clusters;
    if (cluster_sizes) {
        clusters = *cluster_sizes;
        int total = 0;
        for (int c : clusters) total += c;
        if (total != k) throw DimensionMismatch("align_sign_and_pair: cluster sizes must sum to k");
    } else {
        int start = 0;
        for (int l = 1; l <= k; ++l) {
            if (l == k || computed.values[l] - computed.values[l - 1] >= cluster_tol) {
                clusters.push_back(l - start);
                start = l;
            }
        }
    }

    EigenPairs out = computed;
    if (info) info->pre_distance = frob_distance(computed, reference);

    int base = 0;
    for (int c : clusters) {
        if (c == 1) {
            const double* v = computed.col(base);
            const double* r = reference.data() + static_cast<size_t>(base) * n;
            double pr = 0.0;
            for (size_t i = 0; i < n; ++i) pr += v[i] * r[i];
            if (pr < 0.0) {
                double* o = out.col(base);
                for (size_t i = 0; i < n; ++i) o[i] = -o[i];
            }
        } else {
            // cross-Gram G_ab = (1/n) <v_a, r_b>; orthogonal Procrustes Q = U V^T
            std::vector<double> G(static_cast<size_t>(c) * c);
            for (int a = 0; a < c; ++a)
                for (int b = 0; b < c; ++b) {
                    const double* va = computed.col(base + a);
                    const double* rb = reference.data() + static_cast<size_t>(base + b) * n;
                    double s = 0.0;
                    for (size_t i = 0; i < n; ++i) s += va[i] * rb[i];
                    G[a * c + b] = s / static_cast<double>(n);
                }
            std::vector<double> U, Vt;
            small_svd(G, c, U, Vt);
            std::vector<double> Q(static_cast<size_t>(c) * c, 0.0);
            for (int a = 0; a < c; ++a)
                for (int b = 0; b < c; ++b) {
                    double s = 0.0;
                    for (int r = 0; r < c; ++r) s += U[a * c + r] * Vt[r * c + b];
                    Q[a * c + b] = s;
                }
            for (size_t i = 0; i < n; ++i) {
                double tmp[64];
                for (int b = 0; b < c; ++b) {
                    double s = 0.0;
                    for (int a = 0; a < c; ++a) s += computed.col(base + a)[i] * Q[a * c + b];
                    tmp[b] = s;
                }
                for (int b = 0; b < c; ++b) out.col(base + b)[i] = tmp[b];
            }
        }
        base += c;
    }
    if (info) {
        info->post_distance = frob_distance(out, reference);
        info->clusters = clusters;
    }
    return out;
}

}  // namespace auglab
