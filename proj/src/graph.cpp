#include "auglab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "auglab/threads.hpp"

namespace auglab {

namespace {

// Uniform grid hash over R^d with cell size eps. Cells are keyed by packing
// integer coordinates; d is 2 or 3 here but the packing generalizes.
struct GridIndex {
    double cell = 1.0;
    size_t d = 0;
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> cells;

    static std::uint64_t mix(std::uint64_t h, std::int64_t c) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    std::uint64_t key_of(const double* p) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (size_t c = 0; c < d; ++c)
            h = mix(h, static_cast<std::int64_t>(std::floor(p[c] / cell)));
        return h;
    }

    void build(const PointCloud& pts, double eps) {
        cell = eps;
        d = pts.d;
        cells.clear();
        cells.reserve(pts.size());
        for (size_t i = 0; i < pts.size(); ++i)
            cells[key_of(pts.row(i))].push_back(static_cast<std::int64_t>(i));
    }

    // visit candidate neighbors in the 3^d stencil around p
    template <class F>
    void for_candidates(const double* p, F&& fn) const {
        std::int64_t base[8];
        for (size_t c = 0; c < d; ++c) base[c] = static_cast<std::int64_t>(std::floor(p[c] / cell));
        const int stencil = 1;
        std::int64_t off[8] = {0};
        // iterate the 3^d offsets with a mixed-radix counter
        const size_t total = [&] {
            size_t t = 1;
            for (size_t c = 0; c < d; ++c) t *= 3;
            return t;
        }();
        for (size_t it = 0; it < total; ++it) {
            size_t rem = it;
            std::uint64_t h = 1469598103934665603ULL;
            for (size_t c = 0; c < d; ++c) {
                off[c] = static_cast<std::int64_t>(rem % 3) - stencil;
                rem /= 3;
                h = mix(h, base[c] + off[c]);
            }
            auto found = cells.find(h);
            if (found != cells.end())
                for (std::int64_t j : found->second) fn(j);
        }
    }
};

}  // namespace

double edge_weight(const double* xi, const double* xj, size_t d, const PointCloud& naturals,
                   double eps_w) {
    if (!(eps_w > 0.0)) throw ConfigError("edge_weight requires eps_w > 0");
    const size_t N = naturals.size();
    if (N == 0) throw ConfigError("edge_weight requires a nonempty natural sample");
    const double inv = 1.0 / (2.0 * eps_w * eps_w);
    double s = 0.0;
    for (size_t k = 0; k < N; ++k) {
        const double* x = naturals.row(k);
        s += std::exp(-(dist_sq(xi, x, d) + dist_sq(xj, x, d)) * inv);
    }
    return s / static_cast<double>(N);
}

void AugGraph::build_adjacency() {
    adj_offset.assign(n + 1, 0);
    for (size_t e = 0; e < edge_count(); ++e) {
        ++adj_offset[static_cast<size_t>(edge_u[e]) + 1];
        ++adj_offset[static_cast<size_t>(edge_v[e]) + 1];
    }
    for (size_t i = 0; i < n; ++i) adj_offset[i + 1] += adj_offset[i];
    adj_col.resize(adj_offset[n]);
    adj_w.resize(adj_offset[n]);
    std::vector<std::int64_t> cursor(adj_offset.begin(), adj_offset.end() - 1);
    for (size_t e = 0; e < edge_count(); ++e) {
        const auto u = static_cast<size_t>(edge_u[e]);
        const auto v = static_cast<size_t>(edge_v[e]);
        adj_col[cursor[u]] = edge_v[e];
        adj_w[cursor[u]++] = edge_w[e];
        adj_col[cursor[v]] = edge_u[e];
        adj_w[cursor[v]++] = edge_w[e];
    }
    // degrees: (D_aug)_ii = scale * sum_j omega_ij, accumulated in column order
    degrees.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::int64_t a = adj_offset[i]; a < adj_offset[i + 1]; ++a) s += adj_w[a];
        degrees[i] = scale * s;
    }
}

double AugGraph::max_degree() const {
    double m = 0.0;
    for (double dg : degrees) m = std::max(m, dg);
    return m;
}

AugGraph make_graph(size_t n, int m, double scale, const ParamSchedule& sched,
                    std::vector<std::int64_t> u, std::vector<std::int64_t> v,
                    std::vector<double> w) {
    AugGraph g;
    g.n = n;
    g.m = m;
    g.scale = scale;
    g.sched = sched;
    g.edge_u = std::move(u);
    g.edge_v = std::move(v);
    g.edge_w = std::move(w);
    g.build_adjacency();

    // connected components by union-find
    std::vector<std::int64_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const auto a = find(g.edge_u[e]), b = find(g.edge_v[e]);
        if (a != b) parent[a] = b;
    }
    size_t comps = 0;
    for (size_t i = 0; i < n; ++i)
        if (find(static_cast<std::int64_t>(i)) == static_cast<std::int64_t>(i)) ++comps;
    g.components = comps;
    return g;
}

AugGraph build_graph(const AugmentedCloud& cloud, const NaturalSample& naturals,
                     const ParamSchedule& sched, int m) {
    const size_t n = cloud.size();
    if (n == 0) throw ConfigError("build_graph requires a nonempty cloud");
    const size_t d = cloud.points.d;
    const double eps = sched.eps;
    const double eps2 = eps * eps;

    // 1. candidate pairs from the grid, exact post-filter, sorted (u < v)
    GridIndex grid;
    grid.build(cloud.points, eps);
    std::vector<std::vector<std::int64_t>> nbr(n);
    parallel_for(n, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            const double* pi = cloud.points.row(i);
            auto& out = nbr[i];
            grid.for_candidates(pi, [&](std::int64_t j) {
                if (j <= static_cast<std::int64_t>(i)) return;
                const double d2 = dist_sq(pi, cloud.points.row(j), d);
                if (d2 > 0.0 && d2 <= eps2) out.push_back(j);
            });
            std::sort(out.begin(), out.end());
        }
    });

    std::vector<std::int64_t> eu, ev;
    size_t total = 0;
    for (auto& v : nbr) total += v.size();
    eu.reserve(total);
    ev.reserve(total);
    for (size_t i = 0; i < n; ++i)
        for (std::int64_t j : nbr[i]) {
            eu.push_back(static_cast<std::int64_t>(i));
            ev.push_back(j);
        }

    // 2. weights for surviving pairs, block-accumulated over the naturals
    std::vector<double> ew(total, 0.0);
    const size_t N = naturals.size();
    const double inv = 1.0 / (2.0 * sched.eps_w * sched.eps_w);
    constexpr size_t kBlock = 4096;
    std::vector<double> expo;  // per-block exp(-|p - x_k|^2 / (2 eps_w^2)), all points
    expo.resize(n * std::min(kBlock, N));
    for (size_t b0 = 0; b0 < N; b0 += kBlock) {
        const size_t bn = std::min(kBlock, N - b0);
        parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i) {
                const double* p = cloud.points.row(i);
                double* row = expo.data() + i * bn;
                for (size_t k = 0; k < bn; ++k)
                    row[k] = std::exp(-dist_sq(p, naturals.points.row(b0 + k), d) * inv);
            }
        });
        parallel_for(total, [&](size_t lo, size_t hi) {
            for (size_t e = lo; e < hi; ++e) {
                const double* ru = expo.data() + static_cast<size_t>(eu[e]) * bn;
                const double* rv = expo.data() + static_cast<size_t>(ev[e]) * bn;
                double s = 0.0;
                for (size_t k = 0; k < bn; ++k) s += ru[k] * rv[k];
                ew[e] += s;
            }
        });
    }
    const double invN = 1.0 / static_cast<double>(N);
    for (auto& w : ew) {
        w *= invN;
        // underflowed similarities stay as explicit 0-weight edges
        if (w < 1e-300) w = 0.0;
    }

    const double scale =
        1.0 / (static_cast<double>(n) * std::pow(sched.eps_w, m) * std::pow(eps, m + 2));
    return make_graph(n, m, scale, sched, std::move(eu), std::move(ev), std::move(ew));
}

void laplacian_apply(const AugGraph& g, const double* f, double* out) {
    parallel_for(g.n, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            double s = 0.0;
            const double fi = f[i];
            for (std::int64_t a = g.adj_offset[i]; a < g.adj_offset[i + 1]; ++a)
                s += g.adj_w[a] * (fi - f[g.adj_col[a]]);
            out[i] = g.scale * s;
        }
    });
}

std::vector<double> laplacian_apply(const AugGraph& g, const std::vector<double>& f) {
    if (f.size() != g.n) throw DimensionMismatch("laplacian_apply: vector length != n");
    std::vector<double> out(g.n);
    laplacian_apply(g, f.data(), out.data());
    return out;
}

double dirichlet_energy(const AugGraph& g, const std::vector<double>& f) {
    if (f.size() != g.n) throw DimensionMismatch("dirichlet_energy: vector length != n");
    // ordered-pair double sum = 2 * sum over stored edges
    double s = 0.0;
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const double df = f[static_cast<size_t>(g.edge_u[e])] - f[static_cast<size_t>(g.edge_v[e])];
        s += g.edge_w[e] * df * df;
    }
    return 2.0 * s * g.scale / static_cast<double>(g.n);
}

double vartheta_dot(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw DimensionMismatch("vartheta_dot: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s / static_cast<double>(u.size());
}

std::vector<std::pair<std::int64_t, std::int64_t>> brute_force_pairs(const PointCloud& pts,
                                                                     double eps) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    const double e2 = eps * eps;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const double d2 = dist_sq(pts.row(i), pts.row(j), pts.d);
            if (d2 > 0.0 && d2 <= e2)
                out.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
        }
    return out;
}

double eps_from_knn(const PointCloud& pts, int k, double quantile) {
    const size_t n = pts.size();
    if (k < 1 || static_cast<size_t>(k) >= n) throw ConfigError("eps_from_knn: bad k");
    std::vector<double> kth(n);
    parallel_for(n, [&](size_t lo, size_t hi) {
        std::vector<double> d2(n);
        for (size_t i = lo; i < hi; ++i) {
            for (size_t j = 0; j < n; ++j) d2[j] = dist_sq(pts.row(i), pts.row(j), pts.d);
            std::nth_element(d2.begin(), d2.begin() + k, d2.end());
            kth[i] = std::sqrt(d2[k]);
        }
    });
    std::sort(kth.begin(), kth.end());
    const size_t idx = std::min(n - 1, static_cast<size_t>(quantile * n));
    return kth[idx];
}

}  // namespace auglab
