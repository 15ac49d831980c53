// auglab: experiment runner for the augmentation-graph laboratory.
//
//   auglab run <config>            execute an experiment config
//   auglab replay <dir>            re-run and byte-compare a report
//   auglab constants --m <m>       print alpha, beta, alpha*beta
//   auglab spectrum --manifold <kind> --k <k> [--radius r]
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "auglab/consistency.hpp"
#include "auglab/io.hpp"
#include "auglab/runner.hpp"

using namespace auglab;

int main(int argc, char** argv) {
    CLI::App app{"augmentation-graph spectral laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "run an experiment config");
    cmd_run->add_option("config", config_path, "config file (key=value or JSON)")->required();

    std::string replay_dir;
    auto* cmd_replay = app.add_subcommand("replay", "re-run and byte-compare a report dir");
    cmd_replay->add_option("dir", replay_dir, "report directory")->required();

    int m_dim = 1;
    auto* cmd_const = app.add_subcommand("constants", "print alpha, beta for dimension m");
    cmd_const->add_option("--m", m_dim, "intrinsic dimension")->required();

    std::string manifold_kind = "circle";
    int spec_k = 5;
    double spec_radius = 1.0;
    auto* cmd_spec = app.add_subcommand("spectrum", "print the continuum spectrum table");
    cmd_spec->add_option("--manifold", manifold_kind, "circle|sphere")->required();
    cmd_spec->add_option("--k", spec_k, "number of eigenvalues");
    cmd_spec->add_option("--radius", spec_radius, "manifold radius");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            const ExperimentConfig cfg = parse_config_file(config_path);
            const RunOutcome out = run_experiment(cfg);
            std::cout << out.summary;
            return out.exit_code;
        }
        if (*cmd_replay) {
            const ReplayOutcome out = replay(replay_dir);
            if (out.match) {
                std::cout << "Match\n";
                return kExitOk;
            }
            std::cout << "Mismatch at " << out.first_mismatch_path << "\n";
            return kExitNumericalError;
        }
        if (*cmd_const) {
            const Constants c = constants(m_dim);
            std::cout << "m = " << c.m << "\n";
            std::cout << "alpha = " << format_double(c.alpha) << "\n";
            std::cout << "beta = " << format_double(c.beta) << "\n";
            std::cout << "alpha*beta = " << format_double(c.alpha_beta()) << "\n";
            return kExitOk;
        }
        if (*cmd_spec) {
            ManifoldSpec spec = manifold_kind == "sphere" ? ManifoldSpec::sphere(spec_radius)
                                                          : ManifoldSpec::circle(spec_radius);
            const ContinuumSpectrum cs = continuum_spectrum(spec, spec_k);
            const Constants c = constants(spec.intrinsic_dim());
            std::printf("%5s  %22s  %4s  %22s  %22s\n", "index", "value", "mult", "gap",
                        "predicted_graph_value");
            for (int l = 0; l < spec_k; ++l)
                std::printf("%5d  %22.16g  %4d  %22.16g  %22.16g\n", l + 1, cs.values[l],
                            cs.multiplicity[l], cs.eigengaps[l],
                            predicted_graph_eigenvalue(cs.values[l], c));
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    }
    return kExitOk;
}
