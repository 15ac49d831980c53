#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace auglab {

using std::size_t;

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousProjection : Error { using Error::Error; };
struct UnsupportedManifold : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ShiftTooSmall : Error { using Error::Error; };
struct Divergence : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct NoConvergence : Error {
    int pair_index;
    explicit NoConvergence(int idx)
        : Error("eigensolver did not converge at pair " + std::to_string(idx)),
          pair_index(idx) {}
};

// ----------------------------------------------------------------------------
// Point storage: row-major (n x d)
// ----------------------------------------------------------------------------

struct PointCloud {
    std::vector<double> xs;
    size_t d = 0;

    PointCloud() = default;
    PointCloud(size_t n, size_t dim) : xs(n * dim, 0.0), d(dim) {}

    size_t size() const { return d ? xs.size() / d : 0; }
    double* row(size_t i) { return xs.data() + i * d; }
    const double* row(size_t i) const { return xs.data() + i * d; }
};

// ----------------------------------------------------------------------------
// Small dense vector helpers (ambient dimension is 2 or 3 in practice)
// ----------------------------------------------------------------------------

inline double dot(const double* a, const double* b, size_t d) {
    double s = 0.0;
    for (size_t i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

inline double dist_sq(const double* a, const double* b, size_t d) {
    double s = 0.0;
    for (size_t i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

inline double norm(const double* a, size_t d) { return std::sqrt(dot(a, a, d)); }

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace auglab
