#include "auglab/consistency.hpp"

#include <algorithm>
#include <cmath>

#include "auglab/io.hpp"
#include "auglab/rng.hpp"
#include "auglab/threads.hpp"

namespace auglab {

double resolve_eps(const EpsRule& rule, size_t n, int m, const PointCloud* cloud_for_knn) {
    switch (rule.kind) {
        case EpsRule::Kind::Literal: return rule.literal;
        case EpsRule::Kind::FromN: return eps_from_n(n, m, rule.c, true);
        case EpsRule::Kind::FromNPlain: return eps_from_n(n, m, rule.c, false);
        case EpsRule::Kind::Knn:
            if (!cloud_for_knn) throw ConfigError("knn eps rule needs the cloud");
            return eps_from_knn(*cloud_for_knn, rule.knn_k, rule.knn_quantile);
    }
    return rule.literal;
}

Pipeline build_pipeline(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau, double eta,
                        size_t n, int per_parent, std::uint64_t seed, bool naive_mode) {
    Pipeline p;
    const size_t N = n / static_cast<size_t>(per_parent);
    p.naturals = sample_natural(spec, N, seed);
    const int d = spec.ambient_dim();
    const int m = spec.intrinsic_dim();

    if (eps_rule.kind == EpsRule::Kind::Knn) {
        // bootstrap: generate with a provisional schedule, then re-derive eps
        const double eps0 = eps_from_n(n, m, 1.0, true);
        ParamSchedule s0 = naive_mode ? naive_schedule(eps0, d) : schedule_from(eps0, tau, eta, d);
        AugmentedCloud c0 = augment(spec, p.naturals, s0, per_parent, seed);
        const double eps = resolve_eps(eps_rule, n, m, &c0.points);
        p.sched = naive_mode ? naive_schedule(eps, d) : schedule_from(eps, tau, eta, d);
        p.cloud = augment(spec, p.naturals, p.sched, per_parent, seed);
    } else {
        const double eps = resolve_eps(eps_rule, n, m);
        p.sched = naive_mode ? naive_schedule(eps, d) : schedule_from(eps, tau, eta, d);
        p.cloud = augment(spec, p.naturals, p.sched, per_parent, seed);
    }
    ensure_projections(p.cloud, spec);
    p.graph = build_graph(p.cloud, p.naturals, p.sched, m);
    return p;
}

// ----------------------------------------------------------------------------
// Pointwise
// ----------------------------------------------------------------------------

namespace {

// chart-grid proxy for the C^3 norm: max of |f| and per-axis forward
// differences up to third order at the given resolution
double c3_proxy(const ManifoldSpec& spec, const ScalarField& f, double h = 1e-3) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    double m = 0.0;
    auto update_from_samples = [&](const std::vector<double>& v, double step) {
        for (size_t i = 0; i + 3 < v.size(); ++i) {
            const double d1 = (v[i + 1] - v[i]) / step;
            const double d2 = (v[i + 2] - 2 * v[i + 1] + v[i]) / (step * step);
            const double d3 = (v[i + 3] - 3 * v[i + 2] + 3 * v[i + 1] - v[i]) / (step * step * step);
            m = std::max({m, std::abs(v[i]), std::abs(d1), std::abs(d2), std::abs(d3)});
        }
    };
    if (spec.kind == ManifoldKind::Circle) {
        const int M = static_cast<int>(kTwoPi / h);
        std::vector<double> v(M + 3);
        for (int i = 0; i < M + 3; ++i) {
            const double theta = h * i;
            double p[2] = {spec.radius * std::cos(theta), spec.radius * std::sin(theta)};
            v[i] = f.value(p);
        }
        update_from_samples(v, h);
    } else if (spec.kind == ManifoldKind::Sphere) {
        // polar slices at a few azimuths, axis-wise differences
        const int M = static_cast<int>(kTwoPi / h);
        for (int slice = 0; slice < 8; ++slice) {
            const double phi = kTwoPi * slice / 8.0;
            std::vector<double> v(M + 3);
            for (int i = 0; i < M + 3; ++i) {
                const double th = h * i;
                double p[3] = {spec.radius * std::sin(th) * std::cos(phi),
                               spec.radius * std::sin(th) * std::sin(phi),
                               spec.radius * std::cos(th)};
                v[i] = f.value(p);
            }
            update_from_samples(v, h);
        }
    } else {
        throw UnsupportedManifold("pointwise experiments need circle or sphere");
    }
    return m;
}

}  // namespace

PointwiseReport run_pointwise(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                              double eta, size_t n, const ScalarField& f,
                              const std::vector<std::uint64_t>& seeds, int per_parent) {
    if (spec.kind != ManifoldKind::Circle && spec.kind != ManifoldKind::Sphere)
        throw UnsupportedManifold("pointwise experiments need an analytic continuum operator");
    PointwiseReport rep;
    rep.n = n;
    rep.test_function = f.name;
    rep.seeds = seeds;
    rep.f_c3_proxy = c3_proxy(spec, f);

    std::vector<double> maxes, means;
    for (std::uint64_t seed : seeds) {
        Pipeline p = build_pipeline(spec, eps_rule, tau, eta, n, per_parent, seed);
        rep.eps = p.sched.eps;
        const size_t nn = p.cloud.size();
        std::vector<double> fv(nn);
        for (size_t i = 0; i < nn; ++i) fv[i] = f.value(p.cloud.projections->row(i));
        std::vector<double> Lf(nn);
        laplacian_apply(p.graph, fv.data(), Lf.data());
        const Constants cst = constants(spec.intrinsic_dim());
        double mx = 0.0, mean = 0.0;
        for (size_t i = 0; i < nn; ++i) {
            const double target =
                cst.alpha_beta() * laplace_beltrami_apply(spec, f, p.cloud.projections->row(i));
            const double err = std::abs(Lf[i] - target);
            mx = std::max(mx, err);
            mean += err;
        }
        maxes.push_back(mx);
        means.push_back(mean / static_cast<double>(nn));
    }
    rep.max_abs_error = median_of(maxes);
    rep.mean_abs_error = median_of(means);
    return rep;
}

// ----------------------------------------------------------------------------
// Spectral
// ----------------------------------------------------------------------------

SpectralSeedResult run_spectral_one(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                                    double eta, size_t n, int k, std::uint64_t seed,
                                    const SolverOptions& solver, int per_parent) {
    Pipeline p = build_pipeline(spec, eps_rule, tau, eta, n, per_parent, seed);
    const ContinuumSpectrum cs = continuum_spectrum(spec, k);
    const Constants cst = constants(spec.intrinsic_dim());

    SolverOptions opt = solver;
    opt.seed = substream_seed(seed, 0x1a2b);
    EigenPairs pairs = smallest_eigenpairs(p.graph, k, opt);

    // reference: continuum eigenfunctions at projections, vartheta_n-normalized
    const size_t nn = p.cloud.size();
    std::vector<double> ref(static_cast<size_t>(k) * nn);
    for (int l = 0; l < k; ++l) {
        double* col = ref.data() + static_cast<size_t>(l) * nn;
        for (size_t i = 0; i < nn; ++i) col[i] = cs.eigenfunctions[l].value(p.cloud.projections->row(i));
        double nrm = 0.0;
        for (size_t i = 0; i < nn; ++i) nrm += col[i] * col[i];
        nrm = std::sqrt(nrm / static_cast<double>(nn));
        if (nrm > 1e-300)
            for (size_t i = 0; i < nn; ++i) col[i] /= nrm;
    }

    const std::vector<int> clusters = cs.cluster_sizes(k);
    EigenPairs aligned = align_sign_and_pair(pairs, ref, default_cluster_tol(pairs), nullptr,
                                             &clusters);

    SpectralSeedResult out;
    out.lambda_hat = pairs.values;
    out.eigval_errors.resize(k);
    out.eigvec_errors.resize(k);
    for (int l = 0; l < k; ++l) {
        const double lam = cs.values[l];
        const double ab_hat = cst.alpha_beta() * pairs.values[l];
        out.eigval_errors[l] = (l == 0) ? std::abs(ab_hat) : std::abs(lam - ab_hat) / lam;
        double e2 = 0.0;
        const double* v = aligned.col(l);
        const double* r = ref.data() + static_cast<size_t>(l) * nn;
        for (size_t i = 0; i < nn; ++i) {
            const double dd = v[i] - r[i];
            e2 += dd * dd;
        }
        out.eigvec_errors[l] = std::sqrt(e2 / static_cast<double>(nn));
    }
    return out;
}

SpectralReport run_spectral(const ManifoldSpec& spec, const EpsRule& eps_rule, double tau,
                            double eta, size_t n, int k, const std::vector<std::uint64_t>& seeds,
                            const SolverOptions& solver, int per_parent) {
    SpectralReport rep;
    rep.n = n;
    rep.k = k;
    rep.seeds = seeds;
    rep.eps = resolve_eps(eps_rule, n, spec.intrinsic_dim());

    const ContinuumSpectrum cs = continuum_spectrum(spec, k);
    const Constants cst = constants(spec.intrinsic_dim());
    rep.lambda_cont = cs.values;
    rep.predicted_hat.resize(k);
    for (int l = 0; l < k; ++l)
        rep.predicted_hat[l] = predicted_graph_eigenvalue(cs.values[l], cst);

    std::vector<std::vector<double>> val_errs(k), vec_errs(k), hats(k);
    for (std::uint64_t seed : seeds) {
        SpectralSeedResult one =
            run_spectral_one(spec, eps_rule, tau, eta, n, k, seed, solver, per_parent);
        for (int l = 0; l < k; ++l) {
            val_errs[l].push_back(one.eigval_errors[l]);
            vec_errs[l].push_back(one.eigvec_errors[l]);
            hats[l].push_back(one.lambda_hat[l]);
        }
    }
    rep.eigval_errors.resize(k);
    rep.eigvec_errors.resize(k);
    rep.lambda_hat.resize(k);
    for (int l = 0; l < k; ++l) {
        rep.eigval_errors[l] = median_of(val_errs[l]);
        rep.eigvec_errors[l] = median_of(vec_errs[l]);
        rep.lambda_hat[l] = median_of(hats[l]);
    }
    return rep;
}

// ----------------------------------------------------------------------------
// Rate fit
// ----------------------------------------------------------------------------

RateFit fit_rate(const std::vector<std::pair<double, double>>& n_and_err,
                 const std::vector<double>& eps_values) {
    if (n_and_err.size() < 2) throw ConfigError("fit_rate needs at least 2 grid points");
    RateFit fit;
    fit.grid = n_and_err;
    const size_t g = n_and_err.size();
    std::vector<double> x(g), y(g);
    for (size_t i = 0; i < g; ++i) {
        if (!(n_and_err[i].second > 0.0) || !std::isfinite(n_and_err[i].second))
            throw DegenerateFit("errors must be positive and finite for a log-log fit");
        x[i] = std::log(n_and_err[i].first);
        y[i] = std::log(n_and_err[i].second);
    }
    auto least_squares = [](const std::vector<double>& xs, const std::vector<double>& ys,
                            double& slope, double& intercept, double& r2) {
        const size_t m = xs.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < m; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double det = m * sxx - sx * sx;
        slope = (m * sxy - sx * sy) / det;
        intercept = (sy - slope * sx) / m;
        double ss_res = 0, ss_tot = 0;
        const double ybar = sy / m;
        for (size_t i = 0; i < m; ++i) {
            const double pred = slope * xs[i] + intercept;
            ss_res += (ys[i] - pred) * (ys[i] - pred);
            ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
        }
        r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    };
    least_squares(x, y, fit.slope, fit.intercept, fit.r2);
    if (eps_values.size() == g) {
        std::vector<double> xe(g);
        for (size_t i = 0; i < g; ++i) xe[i] = std::log(eps_values[i]);
        double b, r;
        least_squares(xe, y, fit.slope_vs_eps, b, r);
    }
    return fit;
}

// ----------------------------------------------------------------------------
// Dumbbell
// ----------------------------------------------------------------------------

std::vector<int> two_means_1d(const std::vector<double>& values, double* threshold) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });

    // prefix sums over the sorted sequence; best split minimizes total SSE
    std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const double v = values[order[i]];
        s1[i + 1] = s1[i] + v;
        s2[i + 1] = s2[i] + v * v;
    }
    auto sse = [&](size_t lo, size_t hi) {  // [lo, hi)
        const size_t c = hi - lo;
        if (c == 0) return 0.0;
        const double sum = s1[hi] - s1[lo];
        return (s2[hi] - s2[lo]) - sum * sum / static_cast<double>(c);
    };
    size_t best = 1;
    double best_cost = 1e308;
    for (size_t cut = 1; cut < n; ++cut) {
        const double cost = sse(0, cut) + sse(cut, n);
        if (cost < best_cost) {
            best_cost = cost;
            best = cut;
        }
    }
    if (threshold)
        *threshold = 0.5 * (values[order[best - 1]] + values[order[best]]);
    std::vector<int> labels(n, 0);
    for (size_t i = best; i < n; ++i) labels[order[i]] = 1;
    return labels;
}

DumbbellResult run_dumbbell(size_t n, bool table1_mode, double tau, double eta, std::uint64_t seed,
                            const SolverOptions& solver, double neck_radius, double lobe_radius) {
    if (n < 500) throw ConfigError("run_dumbbell requires n >= 500");
    const ManifoldSpec spec = ManifoldSpec::dumbbell(neck_radius, lobe_radius);
    EpsRule rule;
    rule.kind = EpsRule::Kind::FromNPlain;  // eps = n^{-1/(m+4)} = n^{-1/6}
    Pipeline p = build_pipeline(spec, rule, tau, eta, n, 1, seed, !table1_mode);

    SolverOptions opt = solver;
    opt.seed = substream_seed(seed, 0xd0bb);
    EigenPairs pairs = smallest_eigenpairs(p.graph, 2, opt);

    DumbbellResult res;
    res.n = n;
    res.eps = p.sched.eps;
    res.table1_mode = table1_mode;
    res.lambda2 = pairs.values[1];
    res.eigvec2.assign(pairs.col(1), pairs.col(1) + p.cloud.size());
    res.cluster = two_means_1d(res.eigvec2);

    const size_t nn = p.cloud.size();
    res.truth.resize(nn);
    size_t agree = 0;
    for (size_t i = 0; i < nn; ++i) {
        res.truth[i] = dumbbell_axial(spec, p.cloud.projections->row(i)) >= 0.0 ? 1 : 0;
        if (res.truth[i] == res.cluster[i]) ++agree;
    }
    const double frac = static_cast<double>(agree) / static_cast<double>(nn);
    res.accuracy = std::max(frac, 1.0 - frac);

    SvgPlot plot(640, 480, false);
    plot.set_title(std::string("dumbbell bottleneck, ") +
                   (table1_mode ? "coupled schedule" : "naive schedule") +
                   ", accuracy=" + format_double(res.accuracy).substr(0, 6));
    for (size_t i = 0; i < nn; ++i) {
        const double* q = p.cloud.projections->row(i);
        plot.add_point(q[0], q[1], res.cluster[i]);
    }
    res.svg = plot.render();
    return res;
}

}  // namespace auglab
