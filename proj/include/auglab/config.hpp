#pragma once

#include <string>
#include <vector>

#include "auglab/common.hpp"

namespace auglab {

// Flat experiment configuration. Text form is an INI-like key = value file
// (sections allowed, decorative); a JSON object with the same keys is accepted
// as an alternative input.
struct ExperimentConfig {
    std::string experiment;  // pointwise|spectral|rate|dumbbell|embedding|realizability
    std::string output_dir = "out";

    // manifold
    std::string manifold = "circle";
    double radius = 1.0;
    double major_radius = 2.0, minor_radius = 0.5;
    double neck_radius = 0.3, lobe_radius = 1.0;

    // schedule: literal eps XOR eps_rule
    bool has_eps = false;
    double eps = 0.25;
    std::string eps_rule;  // "", "from_n", "from_n_plain", "knn"
    double eps_c = 1.0;
    int knn_k = 10;
    double knn_quantile = 0.9;
    double tau = 2.0;
    double eta = 1.0;

    // run
    std::vector<size_t> sizes;
    int per_parent = 1;
    int k = 5;
    std::vector<std::uint64_t> seeds;
    double solver_tol = 1e-10;
    int solver_max_iter = 4000;

    // experiment-specific
    std::string test_function = "cos1";      // pointwise: const|cosJ|sinJ
    std::vector<int> widths = {16, 64, 256}; // realizability sweep
    int depth = 4;
    int train_steps = 4000;
    double train_lr = 0.15;
    int descent_steps = 3000;
    double descent_lr = 0.02;

    void validate() const;            // throws ConfigError
    std::string canonical_text() const;
    std::string hash() const;         // 8-hex content hash of the canonical text
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace auglab
