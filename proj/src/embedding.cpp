#include "auglab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "auglab/rng.hpp"
#include "auglab/threads.hpp"

namespace auglab {

EmbeddingProblem make_embedding_problem(const AugGraph& g, int k, double margin) {
    EmbeddingProblem p;
    p.graph = &g;
    p.k = k;
    p.a = margin * g.max_degree();
    return p;
}

std::vector<double> eckart_young_minimizer(const EmbeddingProblem& prob, const EigenPairs& pairs) {
    const size_t n = prob.graph->n;
    const int k = prob.k;
    if (pairs.k < k) throw DimensionMismatch("eckart_young_minimizer: pairs cover fewer than k");
    for (int l = 0; l < k; ++l)
        if (prob.a < pairs.values[l])
            throw ShiftTooSmall("shift a is below eigenvalue " + std::to_string(l + 1));
    const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> Y(n * static_cast<size_t>(k));
    for (int l = 0; l < k; ++l) {
        const double s = std::sqrt(prob.a - pairs.values[l]);
        const double* v = pairs.col(l);  // L2(vartheta_n)-unit = sqrt(n) * euclidean-unit
        for (size_t i = 0; i < n; ++i) Y[i * k + l] = s * v[i] * inv_root_n;
    }
    return Y;
}

namespace {

// tr(M^2) for M = aI - L, from the edge list:
// tr(M^2) = sum_i (a - deg_i)^2 + sum_{i != j} (scale w_ij)^2
double trace_m_squared(const EmbeddingProblem& prob) {
    const AugGraph& g = *prob.graph;
    double s = 0.0;
    for (size_t i = 0; i < g.n; ++i) {
        const double d = prob.a - g.degrees[i];
        s += d * d;
    }
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const double w = g.scale * g.edge_w[e];
        s += 2.0 * w * w;
    }
    return s;
}

// Z = M Y = a Y - L Y, column by column; Y is n x k row-major
std::vector<double> apply_m(const EmbeddingProblem& prob, const std::vector<double>& Y) {
    const AugGraph& g = *prob.graph;
    const size_t n = g.n;
    const int k = prob.k;
    std::vector<double> out(Y.size());
    std::vector<double> col(n), Lcol(n);
    for (int l = 0; l < k; ++l) {
        for (size_t i = 0; i < n; ++i) col[i] = Y[i * k + l];
        laplacian_apply(g, col.data(), Lcol.data());
        for (size_t i = 0; i < n; ++i) out[i * k + l] = prob.a * col[i] - Lcol[i];
    }
    return out;
}

// G = Y^T Y (k x k)
std::vector<double> gram(const std::vector<double>& Y, size_t n, int k) {
    std::vector<double> G(static_cast<size_t>(k) * k, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const double* y = Y.data() + i * k;
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b) G[a * k + b] += y[a] * y[b];
    }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < a; ++b) G[a * k + b] = G[b * k + a];
    return G;
}

}  // namespace

double embedding_objective(const EmbeddingProblem& prob, const std::vector<double>& Y) {
    const size_t n = prob.graph->n;
    const int k = prob.k;
    // ||YY^T - M||^2 = tr((Y^T Y)^2) - 2 tr(Y^T M Y) + tr(M^2)
    const std::vector<double> G = gram(Y, n, k);
    double t1 = 0.0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) t1 += G[a * k + b] * G[b * k + a];
    const std::vector<double> MY = apply_m(prob, Y);
    double t2 = 0.0;
    for (size_t i = 0; i < Y.size(); ++i) t2 += Y[i] * MY[i];
    return t1 - 2.0 * t2 + trace_m_squared(prob);
}

std::vector<double> embedding_gradient(const EmbeddingProblem& prob, const std::vector<double>& Y) {
    const size_t n = prob.graph->n;
    const int k = prob.k;
    // 4 (YY^T - M) Y = 4 (Y (Y^T Y) - M Y)
    const std::vector<double> G = gram(Y, n, k);
    std::vector<double> out = apply_m(prob, Y);
    parallel_for(n, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            const double* y = Y.data() + i * k;
            double* o = out.data() + i * k;
            for (int b = 0; b < k; ++b) {
                double s = 0.0;
                for (int a = 0; a < k; ++a) s += y[a] * G[a * k + b];
                o[b] = 4.0 * (s - o[b]);
            }
        }
    });
    return out;
}

DescentResult factorization_descent(const EmbeddingProblem& prob, std::uint64_t seed, int steps,
                                    double lr) {
    if (!(lr > 0.0)) throw ConfigError("factorization_descent requires lr > 0");
    const size_t n = prob.graph->n;
    const int k = prob.k;
    Rng rng(substream_seed(seed, 0xfac7));
    DescentResult res;
    res.Y.resize(n * static_cast<size_t>(k));
    const double init_scale = std::sqrt(prob.a / static_cast<double>(n));
    for (auto& y : res.Y) y = init_scale * rng.normal();

    double prev = embedding_objective(prob, res.Y);
    res.objective_trace.push_back(prev);
    int bad_streak = 0;
    for (int s = 0; s < steps; ++s) {
        const std::vector<double> grad = embedding_gradient(prob, res.Y);
        for (size_t i = 0; i < res.Y.size(); ++i) res.Y[i] -= lr * grad[i];
        const double obj = embedding_objective(prob, res.Y);
        res.objective_trace.push_back(obj);
        bad_streak = (obj > prev) ? bad_streak + 1 : 0;
        if (bad_streak >= 50) throw Divergence("objective increased 50 consecutive steps");
        prev = obj;
    }
    return res;
}

double procrustes_distance(const std::vector<double>& Y, const std::vector<double>& Ystar,
                           size_t n, int k) {
    // G = Y^T Y*, Q = U V^T from the SVD of G; distance ||YQ - Y*||_F
    std::vector<double> G(static_cast<size_t>(k) * k, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) G[a * k + b] += Y[i * k + a] * Ystar[i * k + b];
    // SVD via the symmetric eigensolve of G^T G (shared helper in spectral)
    std::vector<double> GtG(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double s = 0.0;
            for (int r = 0; r < k; ++r) s += G[r * k + i] * G[r * k + j];
            GtG[i * k + j] = s;
        }
    std::vector<double> evals, V;
    small_symmetric_eig(GtG, k, evals, V);
    std::vector<double> Q(static_cast<size_t>(k) * k, 0.0);
    // Q = sum_i u_i v_i^T with u_i = G v_i / sigma_i
    for (int i = k - 1; i >= 0; --i) {
        const double sigma = std::sqrt(std::max(0.0, evals[i]));
        if (sigma < 1e-300) continue;
        std::vector<double> u(k, 0.0);
        for (int r = 0; r < k; ++r) {
            double s = 0.0;
            for (int c = 0; c < k; ++c) s += G[r * k + c] * V[c * k + i];
            u[r] = s / sigma;
        }
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) Q[r * k + c] += u[r] * V[c * k + i];
    }
    double d2 = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (int b = 0; b < k; ++b) {
            double s = 0.0;
            for (int a = 0; a < k; ++a) s += Y[i * k + a] * Q[a * k + b];
            const double diff = s - Ystar[i * k + b];
            d2 += diff * diff;
        }
    return std::sqrt(d2);
}

// ----------------------------------------------------------------------------
// ReLU network
// ----------------------------------------------------------------------------

ReluNet ReluNet::init(int depth, int width, int in_dim, int out_dim, std::uint64_t seed) {
    if (depth < 2) throw ConfigError("network depth must be at least 2");
    if (width < 1) throw ConfigError("network width must be positive");
    ReluNet net;
    net.depth = depth;
    net.width = width;
    net.in_dim = in_dim;
    net.out_dim = out_dim;
    net.W.resize(depth);
    net.b.resize(depth);
    Rng rng(substream_seed(seed, 0x2e17));
    for (int i = 0; i < depth; ++i) {
        const int rows = (i == depth - 1) ? out_dim : width;
        const int cols = (i == 0) ? in_dim : width;
        net.W[i].resize(static_cast<size_t>(rows) * cols);
        net.b[i].assign(rows, 0.0);
        const double s = std::sqrt(2.0 / cols);  // He initialization
        for (auto& w : net.W[i]) w = s * rng.normal();
    }
    return net;
}

void ReluNet::forward(const double* x, double* out) const {
    std::vector<double> cur(x, x + in_dim), next;
    for (int i = 0; i < depth; ++i) {
        const int rows = (i == depth - 1) ? out_dim : width;
        const int cols = static_cast<int>(cur.size());
        next.assign(rows, 0.0);
        for (int r = 0; r < rows; ++r) {
            double s = b[i][r];
            const double* wr = W[i].data() + static_cast<size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) s += wr[c] * cur[c];
            next[r] = (i == depth - 1) ? s : std::max(0.0, s);
        }
        cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), out);
}

double ReluNet::max_abs_weight() const {
    double m = 0.0;
    for (const auto& layer : W)
        for (double w : layer) m = std::max(m, std::abs(w));
    for (const auto& layer : b)
        for (double w : layer) m = std::max(m, std::abs(w));
    return m;
}

std::int64_t ReluNet::nonzero_count(double thresh) const {
    std::int64_t c = 0;
    for (const auto& layer : W)
        for (double w : layer)
            if (std::abs(w) > thresh) ++c;
    for (const auto& layer : b)
        for (double w : layer)
            if (std::abs(w) > thresh) ++c;
    return c;
}

ReluNet fit_relu_net(const PointCloud& inputs, const std::vector<double>& raw_target, int k,
                     int depth, int width, int steps, double lr, std::uint64_t seed,
                     FitReport* report) {
    const size_t n = inputs.size();
    const int d = static_cast<int>(inputs.d);
    if (raw_target.size() != n * static_cast<size_t>(k))
        throw DimensionMismatch("fit_relu_net: target shape mismatch");
    if (width < k) throw ConfigError("fit_relu_net requires width >= k");

    // per-column standardization of the target; the scale is folded back into
    // the last layer after training, so the returned network maps inputs to
    // the original target scale
    std::vector<double> col_scale(k, 1.0);
    for (int c = 0; c < k; ++c) {
        double s2 = 0.0;
        for (size_t p = 0; p < n; ++p) s2 += raw_target[p * k + c] * raw_target[p * k + c];
        col_scale[c] = std::max(1e-12, std::sqrt(s2 / static_cast<double>(n)));
    }
    std::vector<double> target(raw_target.size());
    for (size_t p = 0; p < n; ++p)
        for (int c = 0; c < k; ++c) target[p * k + c] = raw_target[p * k + c] / col_scale[c];

    ReluNet net = ReluNet::init(depth, width, d, k, seed);
    const int L = depth;

    // per-layer activations for the whole batch: act[0] = inputs,
    // act[i] = post-ReLU output of layer i-1 (pre-activation cached too)
    std::vector<std::vector<double>> act(L + 1), pre(L);
    act[0].assign(inputs.xs.begin(), inputs.xs.end());

    std::vector<std::vector<double>> gradW(L), gradB(L);
    double prev_loss = std::numeric_limits<double>::infinity();
    int bad_streak = 0;
    if (report) report->loss_trace.clear();

    for (int step = 0; step < steps; ++step) {
        // forward
        for (int i = 0; i < L; ++i) {
            const int rows = (i == L - 1) ? k : width;
            const int cols = (i == 0) ? d : width;
            pre[i].assign(n * static_cast<size_t>(rows), 0.0);
            act[i + 1].assign(n * static_cast<size_t>(rows), 0.0);
            parallel_for(n, [&](size_t lo, size_t hi) {
                for (size_t p = lo; p < hi; ++p) {
                    const double* in = act[i].data() + p * cols;
                    double* z = pre[i].data() + p * rows;
                    double* a = act[i + 1].data() + p * rows;
                    for (int r = 0; r < rows; ++r) {
                        double s = net.b[i][r];
                        const double* wr = net.W[i].data() + static_cast<size_t>(r) * cols;
                        for (int c = 0; c < cols; ++c) s += wr[c] * in[c];
                        z[r] = s;
                        a[r] = (i == L - 1) ? s : std::max(0.0, s);
                    }
                }
            });
        }

        // loss and output delta: mean over (n*k) of squared error
        const double inv = 1.0 / static_cast<double>(n * static_cast<size_t>(k));
        std::vector<double> delta(n * static_cast<size_t>(k));
        double loss = 0.0;
        for (size_t i = 0; i < delta.size(); ++i) {
            const double r = act[L][i] - target[i];
            delta[i] = 2.0 * inv * r;
            loss += inv * r * r;
        }
        if (report) report->loss_trace.push_back(loss);
        bad_streak = (loss > prev_loss) ? bad_streak + 1 : 0;
        if (bad_streak >= 50) throw Divergence("training loss increased 50 consecutive steps");
        prev_loss = loss;

        // backward
        for (int i = L - 1; i >= 0; --i) {
            const int rows = (i == L - 1) ? k : width;
            const int cols = (i == 0) ? d : width;
            gradW[i].assign(static_cast<size_t>(rows) * cols, 0.0);
            gradB[i].assign(rows, 0.0);
            for (size_t p = 0; p < n; ++p) {
                const double* dl = delta.data() + p * rows;
                const double* in = act[i].data() + p * cols;
                for (int r = 0; r < rows; ++r) {
                    gradB[i][r] += dl[r];
                    double* gw = gradW[i].data() + static_cast<size_t>(r) * cols;
                    for (int c = 0; c < cols; ++c) gw[c] += dl[r] * in[c];
                }
            }
            if (i > 0) {
                std::vector<double> next_delta(n * static_cast<size_t>(cols), 0.0);
                parallel_for(n, [&](size_t lo, size_t hi) {
                    for (size_t p = lo; p < hi; ++p) {
                        const double* dl = delta.data() + p * rows;
                        const double* z = pre[i - 1].data() + p * cols;
                        double* nd = next_delta.data() + p * cols;
                        for (int c = 0; c < cols; ++c) {
                            if (z[c] <= 0.0) continue;  // ReLU gate
                            double s = 0.0;
                            for (int r = 0; r < rows; ++r)
                                s += dl[r] * net.W[i][static_cast<size_t>(r) * cols + c];
                            nd[c] = s;
                        }
                    }
                });
                delta.swap(next_delta);
            }
        }

        for (int i = 0; i < L; ++i) {
            for (size_t w = 0; w < net.W[i].size(); ++w) net.W[i][w] -= lr * gradW[i][w];
            for (size_t w = 0; w < net.b[i].size(); ++w) net.b[i][w] -= lr * gradB[i][w];
        }
    }

    // fold the column scales into the output layer
    for (int r = 0; r < k; ++r) {
        const int cols = (L == 1) ? d : width;
        for (int c = 0; c < cols; ++c) net.W[L - 1][static_cast<size_t>(r) * cols + c] *= col_scale[r];
        net.b[L - 1][r] *= col_scale[r];
    }

    if (report) {
        double sup = 0.0, fro = 0.0;
        std::vector<double> out(k);
        for (size_t p = 0; p < n; ++p) {
            net.forward(inputs.row(p), out.data());
            for (int c = 0; c < k; ++c) {
                const double r = out[c] - raw_target[p * k + c];
                sup = std::max(sup, std::abs(r));
                fro += r * r;
            }
        }
        report->sup_error = sup;
        report->fro_error = std::sqrt(fro);
        report->max_abs_weight = net.max_abs_weight();
        report->nonzero_count = net.nonzero_count();
    }
    return net;
}

}  // namespace auglab
