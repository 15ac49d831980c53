#include "auglab/augment.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "auglab/rng.hpp"
#include "auglab/threads.hpp"

namespace auglab {

ParamSchedule schedule_from(double eps, double tau, double eta, int d) {
    if (!(eps > 0.0) || eps > 1.0) throw ConfigError("schedule requires eps in (0, 1]");
    if (!(tau > 0.0)) throw ConfigError("schedule requires tau > 0");
    if (!(eta > 0.0)) throw ConfigError("schedule requires eta > 0");
    ParamSchedule s;
    s.eps = eps;
    s.tau = tau;
    s.eta = eta;
    s.ambient_dim = d;
    s.eps_w = std::pow(eps, tau);
    s.eps_n = std::pow(eps, tau + 1.0);
    s.eps_p = std::pow(eta, 1.0 / d) * s.eps_n;
    return s;
}

ParamSchedule naive_schedule(double eps, int d) {
    if (!(eps > 0.0)) throw ConfigError("naive schedule requires eps > 0");
    ParamSchedule s;
    s.eps = eps;
    s.tau = 1.0;
    s.eta = 1.0;
    s.ambient_dim = d;
    s.eps_w = eps;
    s.eps_p = eps;
    s.eps_n = std::numeric_limits<double>::infinity();
    s.reject_outside_tube = false;
    return s;
}

double eps_from_n(size_t n, int m, double c, bool log_variant) {
    if (n < 2) throw ConfigError("eps_from_n requires n >= 2");
    if (!(c > 0.0)) throw ConfigError("eps_from_n requires c > 0");
    const double nn = static_cast<double>(n);
    const double e = 1.0 / (m + 4.0);
    return log_variant ? c * std::pow(std::log(nn) / nn, e) : c * std::pow(nn, -e);
}

AugmentedCloud augment(const ManifoldSpec& spec, const NaturalSample& naturals,
                       const ParamSchedule& sched, int per_parent, std::uint64_t seed) {
    if (per_parent < 1) throw ConfigError("augment requires per_parent >= 1");
    const size_t N = naturals.size();
    const size_t d = naturals.points.d;
    const size_t n = N * static_cast<size_t>(per_parent);

    AugmentedCloud cloud;
    cloud.points = PointCloud(n, d);
    cloud.parent_index.resize(n);
    cloud.c0 = per_parent;
    cloud.seed = seed;
    cloud.sched = sched;

    const bool reject = sched.reject_outside_tube && std::isfinite(sched.eps_n);
    std::vector<std::int64_t> rejects(kChunks, 0);

    parallel_for(n, [&](size_t lo, size_t hi) {
        const size_t chunk_id = lo / ((n + kChunks - 1) / kChunks);
        std::vector<double> proj(d);
        for (size_t i = lo; i < hi; ++i) {
            const size_t parent = i / per_parent;
            cloud.parent_index[i] = static_cast<std::int64_t>(parent);
            Rng rng(substream_seed(seed, i));
            double* p = cloud.points.row(i);
            const double* x = naturals.points.row(parent);
            for (int attempt = 0;; ++attempt) {
                for (size_t c = 0; c < d; ++c) p[c] = x[c] + sched.eps_p * rng.normal();
                if (!reject) break;
                project(spec, p, proj.data());
                if (std::sqrt(dist_sq(p, proj.data(), d)) <= sched.eps_n) break;
                if (attempt > 10000)
                    throw Divergence("tube rejection failed to accept after 10000 draws");
                ++rejects[chunk_id];
            }
        }
    });
    for (auto r : rejects) cloud.rejection_count += r;
    return cloud;
}

void ensure_projections(AugmentedCloud& cloud, const ManifoldSpec& spec) {
    if (cloud.projections) return;
    const size_t n = cloud.size();
    const size_t d = cloud.points.d;
    PointCloud proj(n, d);
    parallel_for(n, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) project(spec, cloud.points.row(i), proj.row(i));
    });
    cloud.projections = std::move(proj);
}

NearManifoldReport check_near_manifold(AugmentedCloud& cloud, const ManifoldSpec& spec,
                                       const ParamSchedule& sched) {
    ensure_projections(cloud, spec);
    const size_t n = cloud.size();
    const size_t d = cloud.points.d;
    NearManifoldReport rep;
    for (size_t i = 0; i < n; ++i) {
        const double dist =
            std::sqrt(dist_sq(cloud.points.row(i), cloud.projections->row(i), d));
        rep.max_dist = std::max(rep.max_dist, dist);
        if (dist > sched.eps_n) ++rep.violations;
    }
    return rep;
}

}  // namespace auglab
