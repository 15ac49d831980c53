#pragma once

#include <optional>

#include "auglab/common.hpp"
#include "auglab/manifold.hpp"

namespace auglab {

// Coupled parameters eps_w = eps^tau, eps_p = eta^(1/d) eps^(tau+1),
// eps_n = eps^(tau+1).
struct ParamSchedule {
    double eps = 0.0;
    double tau = 2.0;
    double eta = 1.0;
    double eps_w = 0.0;
    double eps_p = 0.0;
    double eps_n = 0.0;
    int ambient_dim = 0;
    bool reject_outside_tube = true;  // off in the naive equal-parameter mode
};

ParamSchedule schedule_from(double eps, double tau, double eta, int d);

// eps_p = eps_w = eps; no tube constraint (eps_n treated as unbounded)
ParamSchedule naive_schedule(double eps, int d);

// c*(log n / n)^(1/(m+4)), or the plain simulation choice n^(-1/(m+4))
double eps_from_n(size_t n, int m, double c = 1.0, bool log_variant = true);

struct AugmentedCloud {
    PointCloud points;
    std::vector<std::int64_t> parent_index;
    int c0 = 1;
    std::optional<PointCloud> projections;  // cached Q_xbar
    std::uint64_t seed = 0;
    ParamSchedule sched;
    std::int64_t rejection_count = 0;  // redraws forced by the tube constraint

    size_t size() const { return points.size(); }
};

// Gaussian augmentation xbar = x + eps_p * g per parent, with per-parent
// substreams. When the schedule keeps the tube constraint, draws landing
// beyond eps_n from the manifold are rejected and redrawn (law exact
// conditional on acceptance); the count of redraws is recorded.
AugmentedCloud augment(const ManifoldSpec& spec, const NaturalSample& naturals,
                       const ParamSchedule& sched, int per_parent, std::uint64_t seed);

struct NearManifoldReport {
    double max_dist = 0.0;
    std::int64_t violations = 0;
};

// Fills the projection cache and reports max dist(xbar, M) and the count of
// points beyond eps_n. Violations are data, not faults.
NearManifoldReport check_near_manifold(AugmentedCloud& cloud, const ManifoldSpec& spec,
                                       const ParamSchedule& sched);

// Ensures the projection cache is present (computes it if needed).
void ensure_projections(AugmentedCloud& cloud, const ManifoldSpec& spec);

}  // namespace auglab
