#include "auglab/runner.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "auglab/consistency.hpp"
#include "auglab/io.hpp"
#include "auglab/rng.hpp"

namespace fs = std::filesystem;

namespace auglab {

namespace {

ManifoldSpec manifold_from(const ExperimentConfig& cfg) {
    if (cfg.manifold == "circle") return ManifoldSpec::circle(cfg.radius);
    if (cfg.manifold == "sphere") return ManifoldSpec::sphere(cfg.radius);
    if (cfg.manifold == "torus") return ManifoldSpec::torus(cfg.major_radius, cfg.minor_radius);
    return ManifoldSpec::dumbbell(cfg.neck_radius, cfg.lobe_radius);
}

EpsRule eps_rule_from(const ExperimentConfig& cfg) {
    EpsRule r;
    if (cfg.has_eps) {
        r.kind = EpsRule::Kind::Literal;
        r.literal = cfg.eps;
    } else if (cfg.eps_rule == "from_n_plain") {
        r.kind = EpsRule::Kind::FromNPlain;
        r.c = cfg.eps_c;
    } else if (cfg.eps_rule == "knn") {
        r.kind = EpsRule::Kind::Knn;
        r.knn_k = cfg.knn_k;
        r.knn_quantile = cfg.knn_quantile;
    } else {
        r.kind = EpsRule::Kind::FromN;  // default rule
        r.c = cfg.eps_c;
    }
    return r;
}

ScalarField field_from(const ExperimentConfig& cfg, const ManifoldSpec& spec) {
    const std::string& name = cfg.test_function;
    if (name == "const") return ScalarField::constant(1.0);
    if (spec.kind == ManifoldKind::Circle) {
        if (name.rfind("cos", 0) == 0)
            return ScalarField::circle_harmonic(std::stoi(name.substr(3)), false, spec.radius);
        if (name.rfind("sin", 0) == 0)
            return ScalarField::circle_harmonic(std::stoi(name.substr(3)), true, spec.radius);
    }
    if (spec.kind == ManifoldKind::Sphere && name.size() == 3 && name[0] == 'Y') {
        const int l = name[1] - '0';
        const int m_idx = name[2] - '0' - l;
        return ScalarField::sphere_harmonic(l, m_idx, spec.radius);
    }
    throw ConfigError("unknown test_function '" + name + "' for manifold " +
                      std::string(spec.kind_name()));
}

struct Artifacts {
    JsonValue::Ptr report;
    std::vector<std::pair<std::string, std::string>> files;  // name -> content
    std::string summary;
};

JsonValue::Ptr regime_json(double eps, double tau, int m) {
    const RegimeReport r = regime_report(eps, tau, m);
    auto j = JsonValue::object();
    j->set("eps", r.eps)
        .set("tau", r.tau)
        .set("condition_lhs", r.cond_pointwise_lhs)
        .set("pointwise_rhs", r.cond_pointwise_rhs)
        .set("spectral_rhs", r.cond_spectral_rhs)
        .set("pointwise_ok", r.pointwise_ok)
        .set("spectral_ok", r.spectral_ok);
    return j;
}

// ------------------------------------------------------------------- pointwise

Artifacts run_pointwise_experiment(const ExperimentConfig& cfg) {
    const ManifoldSpec spec = manifold_from(cfg);
    const EpsRule rule = eps_rule_from(cfg);
    const ScalarField f = field_from(cfg, spec);

    Artifacts art;
    auto rows = JsonValue::array();
    CsvTable csv;
    csv.header = {"n", "eps", "max_abs_error", "mean_abs_error", "c3_proxy"};
    std::ostringstream sum;
    sum << "pointwise consistency, f = " << f.name << "\n";
    sum << "      n       eps       max|err|      mean|err|\n";
    double last_eps = 0.0;
    for (size_t n : cfg.sizes) {
        const PointwiseReport rep =
            run_pointwise(spec, rule, cfg.tau, cfg.eta, n, f, cfg.seeds, cfg.per_parent);
        auto row = JsonValue::object();
        row->set("n", rep.n)
            .set("eps", rep.eps)
            .set("max_abs_error", rep.max_abs_error)
            .set("mean_abs_error", rep.mean_abs_error)
            .set("c3_proxy", rep.f_c3_proxy);
        rows->push(row);
        csv.add_row({std::to_string(rep.n), format_double(rep.eps),
                     format_double(rep.max_abs_error), format_double(rep.mean_abs_error),
                     format_double(rep.f_c3_proxy)});
        char line[128];
        std::snprintf(line, sizeof(line), "%7zu  %8.5f  %12.6e  %12.6e\n", rep.n, rep.eps,
                      rep.max_abs_error, rep.mean_abs_error);
        sum << line;
        last_eps = rep.eps;
    }
    art.report = JsonValue::object();
    art.report->set("rows", rows);
    art.report->set("regime", regime_json(last_eps, cfg.tau, spec.intrinsic_dim()));
    art.files.emplace_back("pointwise.csv", csv.dump());
    art.summary = sum.str();
    return art;
}

// -------------------------------------------------------------------- spectral

Artifacts run_spectral_experiment(const ExperimentConfig& cfg) {
    const ManifoldSpec spec = manifold_from(cfg);
    const EpsRule rule = eps_rule_from(cfg);
    SolverOptions solver;
    solver.tol = cfg.solver_tol;
    solver.max_iter = cfg.solver_max_iter;

    Artifacts art;
    auto rows = JsonValue::array();
    CsvTable csv;
    csv.header = {"n", "eps", "l", "lambda_cont", "predicted_hat", "lambda_hat",
                  "eigval_error", "eigvec_error"};
    std::ostringstream sum;
    sum << "spectral consistency, k = " << cfg.k << "\n";
    sum << "      n       eps   l   |lam-ab*hat|/lam   ||vec err||\n";
    for (size_t n : cfg.sizes) {
        const SpectralReport rep = run_spectral(spec, rule, cfg.tau, cfg.eta, n, cfg.k, cfg.seeds,
                                                solver, cfg.per_parent);
        for (int l = 0; l < cfg.k; ++l) {
            auto row = JsonValue::object();
            row->set("n", rep.n)
                .set("eps", rep.eps)
                .set("l", l + 1)
                .set("lambda_cont", rep.lambda_cont[l])
                .set("predicted_hat", rep.predicted_hat[l])
                .set("lambda_hat", rep.lambda_hat[l])
                .set("eigval_error", rep.eigval_errors[l])
                .set("eigvec_error", rep.eigvec_errors[l]);
            rows->push(row);
            csv.add_row({std::to_string(rep.n), format_double(rep.eps), std::to_string(l + 1),
                         format_double(rep.lambda_cont[l]), format_double(rep.predicted_hat[l]),
                         format_double(rep.lambda_hat[l]), format_double(rep.eigval_errors[l]),
                         format_double(rep.eigvec_errors[l])});
            if (l >= 1 && l <= 2) {
                char line[128];
                std::snprintf(line, sizeof(line), "%7zu  %8.5f  %2d   %14.6e  %12.6e\n", rep.n,
                              rep.eps, l + 1, rep.eigval_errors[l], rep.eigvec_errors[l]);
                sum << line;
            }
        }
    }

    // continuum spectrum table
    const ContinuumSpectrum cs = continuum_spectrum(spec, cfg.k);
    const Constants cst = constants(spec.intrinsic_dim());
    CsvTable spectab;
    spectab.header = {"index", "value", "multiplicity", "gap", "predicted_graph_value"};
    for (int l = 0; l < cfg.k; ++l)
        spectab.add_row({std::to_string(l + 1), format_double(cs.values[l]),
                         std::to_string(cs.multiplicity[l]), format_double(cs.eigengaps[l]),
                         format_double(predicted_graph_eigenvalue(cs.values[l], cst))});

    art.report = JsonValue::object();
    art.report->set("rows", rows);
    art.report->set("regime", regime_json(resolve_eps(rule, cfg.sizes.back(),
                                                      spec.intrinsic_dim()),
                                          cfg.tau, spec.intrinsic_dim()));
    art.files.emplace_back("spectral.csv", csv.dump());
    art.files.emplace_back("spectrum.csv", spectab.dump());
    art.summary = sum.str();
    return art;
}

// ------------------------------------------------------------------------ rate

Artifacts run_rate_experiment(const ExperimentConfig& cfg) {
    const ManifoldSpec spec = manifold_from(cfg);
    const EpsRule rule = eps_rule_from(cfg);
    SolverOptions solver;
    solver.tol = cfg.solver_tol;
    solver.max_iter = cfg.solver_max_iter;
    const int k = std::max(3, cfg.k);

    std::vector<std::pair<double, double>> grid;
    std::vector<double> eps_values;
    CsvTable csv;
    csv.header = {"n", "eps", "eigvec_error"};
    for (size_t n : cfg.sizes) {
        const SpectralReport rep =
            run_spectral(spec, rule, cfg.tau, cfg.eta, n, k, cfg.seeds, solver, cfg.per_parent);
        // error selector: mean over the first nontrivial cluster (l = 2, 3)
        const double err = 0.5 * (rep.eigvec_errors[1] + rep.eigvec_errors[2]);
        grid.emplace_back(static_cast<double>(n), err);
        eps_values.push_back(rep.eps);
        csv.add_row({std::to_string(n), format_double(rep.eps), format_double(err)});
    }
    const RateFit fit = fit_rate(grid, eps_values);

    Artifacts art;
    art.report = JsonValue::object();
    auto jgrid = JsonValue::array();
    for (size_t i = 0; i < grid.size(); ++i) {
        auto row = JsonValue::object();
        row->set("n", static_cast<std::int64_t>(grid[i].first))
            .set("eps", eps_values[i])
            .set("error", grid[i].second);
        jgrid->push(row);
    }
    art.report->set("grid", jgrid);
    art.report->set("slope", fit.slope);
    art.report->set("intercept", fit.intercept);
    art.report->set("r2", fit.r2);
    art.report->set("slope_vs_eps", fit.slope_vs_eps);
    art.report->set("reference_slope", -1.0 / (spec.intrinsic_dim() + 4.0));
    art.files.emplace_back("rate.csv", csv.dump());

    SvgPlot plot(640, 480, true);
    plot.set_title("eigenvector error vs n (log-log), slope " +
                   format_double(fit.slope).substr(0, 8));
    std::vector<double> xs, ys, fys;
    for (size_t i = 0; i < grid.size(); ++i) {
        xs.push_back(grid[i].first);
        ys.push_back(grid[i].second);
        fys.push_back(std::exp(fit.intercept + fit.slope * std::log(grid[i].first)));
        plot.add_point(grid[i].first, grid[i].second, 0);
    }
    plot.add_line(xs, fys);
    art.files.emplace_back("rate.svg", plot.render());

    std::ostringstream sum;
    sum << "rate fit: slope = " << fit.slope << " (reference -1/(m+4) = "
        << -1.0 / (spec.intrinsic_dim() + 4.0) << "), r2 = " << fit.r2 << "\n";
    art.summary = sum.str();
    return art;
}

// -------------------------------------------------------------------- dumbbell

Artifacts run_dumbbell_experiment(const ExperimentConfig& cfg) {
    SolverOptions solver;
    solver.tol = cfg.solver_tol;
    solver.max_iter = cfg.solver_max_iter;

    Artifacts art;
    CsvTable csv;
    csv.header = {"seed", "mode", "accuracy", "lambda2", "eps"};
    auto rows = JsonValue::array();
    std::vector<double> acc_table1, acc_naive;
    bool first = true;
    for (std::uint64_t seed : cfg.seeds) {
        for (int mode = 0; mode < 2; ++mode) {
            const bool table1 = (mode == 0);
            const DumbbellResult res =
                run_dumbbell(cfg.sizes.back(), table1, cfg.tau, cfg.eta, seed, solver,
                             cfg.neck_radius, cfg.lobe_radius);
            (table1 ? acc_table1 : acc_naive).push_back(res.accuracy);
            auto row = JsonValue::object();
            row->set("seed", static_cast<std::int64_t>(seed))
                .set("mode", table1 ? "table1" : "naive")
                .set("accuracy", res.accuracy)
                .set("lambda2", res.lambda2)
                .set("eps", res.eps);
            rows->push(row);
            csv.add_row({std::to_string(seed), table1 ? "table1" : "naive",
                         format_double(res.accuracy), format_double(res.lambda2),
                         format_double(res.eps)});
            if (first)
                art.files.emplace_back(table1 ? "dumbbell_table1.svg" : "dumbbell_naive.svg",
                                       res.svg);
        }
        first = false;
    }
    const double med_t = median_of(acc_table1);
    const double med_n = median_of(acc_naive);
    art.report = JsonValue::object();
    art.report->set("rows", rows);
    art.report->set("median_accuracy_table1", med_t);
    art.report->set("median_accuracy_naive", med_n);
    art.report->set("accuracy_gap", med_t - med_n);
    art.files.emplace_back("dumbbell.csv", csv.dump());

    std::ostringstream sum;
    sum << "dumbbell bottleneck, n = " << cfg.sizes.back() << "\n";
    sum << "  coupled schedule accuracy (median): " << med_t << "\n";
    sum << "  naive schedule accuracy (median):   " << med_n << "\n";
    art.summary = sum.str();
    return art;
}

// ------------------------------------------------------------------- embedding

Artifacts run_embedding_experiment(const ExperimentConfig& cfg) {
    const ManifoldSpec spec = manifold_from(cfg);
    const EpsRule rule = eps_rule_from(cfg);
    SolverOptions solver;
    solver.tol = cfg.solver_tol;
    solver.max_iter = cfg.solver_max_iter;

    const size_t n = cfg.sizes.front();
    const std::uint64_t seed = cfg.seeds.front();
    Pipeline p = build_pipeline(spec, rule, cfg.tau, cfg.eta, n, cfg.per_parent, seed);
    solver.seed = substream_seed(seed, 0x1a2b);
    EigenPairs pairs = smallest_eigenpairs(p.graph, cfg.k, solver);
    EmbeddingProblem prob = make_embedding_problem(p.graph, cfg.k);

    const std::vector<double> Ystar = eckart_young_minimizer(prob, pairs);
    const double obj_star = embedding_objective(prob, Ystar);
    const DescentResult desc =
        factorization_descent(prob, seed, cfg.descent_steps, cfg.descent_lr);
    const double obj_desc = desc.objective_trace.back();
    const double pd = procrustes_distance(desc.Y, Ystar, p.graph.n, cfg.k);

    Artifacts art;
    art.report = JsonValue::object();
    art.report->set("n", n)
        .set("k", cfg.k)
        .set("shift_a", prob.a)
        .set("objective_at_minimizer", obj_star)
        .set("objective_after_descent", obj_desc)
        .set("relative_gap", (obj_desc - obj_star) / std::max(1e-300, obj_star))
        .set("procrustes_distance", pd);

    CsvTable trace;
    trace.header = {"step", "objective"};
    for (size_t i = 0; i < desc.objective_trace.size(); ++i)
        trace.add_row({std::to_string(i), format_double(desc.objective_trace[i])});
    art.files.emplace_back("descent_trace.csv", trace.dump());

    std::ostringstream sum;
    sum << "spectral embedding, n = " << n << ", k = " << cfg.k << "\n";
    sum << "  objective at eigen-minimizer: " << obj_star << "\n";
    sum << "  objective after descent:      " << obj_desc << "\n";
    sum << "  procrustes distance:          " << pd << "\n";
    art.summary = sum.str();
    return art;
}

// --------------------------------------------------------------- realizability

Artifacts run_realizability_experiment(const ExperimentConfig& cfg) {
    const ManifoldSpec spec = manifold_from(cfg);
    const EpsRule rule = eps_rule_from(cfg);
    SolverOptions solver;
    solver.tol = cfg.solver_tol;
    solver.max_iter = cfg.solver_max_iter;

    const size_t n = cfg.sizes.front();
    const std::uint64_t pipe_seed = cfg.seeds.front();
    Pipeline p = build_pipeline(spec, rule, cfg.tau, cfg.eta, n, cfg.per_parent, pipe_seed);
    solver.seed = substream_seed(pipe_seed, 0x1a2b);
    EigenPairs pairs = smallest_eigenpairs(p.graph, cfg.k, solver);
    EmbeddingProblem prob = make_embedding_problem(p.graph, cfg.k);
    const std::vector<double> Ystar = eckart_young_minimizer(prob, pairs);

    // alignment data for the fresh-point generalization probe
    const ContinuumSpectrum cs = continuum_spectrum(spec, cfg.k);
    const size_t nn = p.cloud.size();
    std::vector<double> ref(static_cast<size_t>(cfg.k) * nn);
    std::vector<double> ref_norm(cfg.k);
    for (int l = 0; l < cfg.k; ++l) {
        double* col = ref.data() + static_cast<size_t>(l) * nn;
        for (size_t i = 0; i < nn; ++i)
            col[i] = cs.eigenfunctions[l].value(p.cloud.projections->row(i));
        double nrm = 0.0;
        for (size_t i = 0; i < nn; ++i) nrm += col[i] * col[i];
        ref_norm[l] = std::sqrt(nrm / static_cast<double>(nn));
        if (ref_norm[l] > 1e-300)
            for (size_t i = 0; i < nn; ++i) col[i] /= ref_norm[l];
    }
    // per-column map from continuum functions to computed vectors:
    // v_a(x) ~ sum_b Q_ab reffun_b(x); estimate Q entries by vartheta dots
    std::vector<double> Q(static_cast<size_t>(cfg.k) * cfg.k, 0.0);
    for (int a = 0; a < cfg.k; ++a)
        for (int b = 0; b < cfg.k; ++b) {
            const double* va = pairs.col(a);
            const double* rb = ref.data() + static_cast<size_t>(b) * nn;
            double s = 0.0;
            for (size_t i = 0; i < nn; ++i) s += va[i] * rb[i];
            Q[a * cfg.k + b] = s / static_cast<double>(nn);
        }

    // fresh augmented points
    const size_t n_fresh = 500;
    const NaturalSample fresh_nat = sample_natural(spec, n_fresh, pipe_seed + 7777);
    AugmentedCloud fresh = augment(spec, fresh_nat, p.sched, 1, pipe_seed + 7778);
    ensure_projections(fresh, spec);

    Artifacts art;
    auto rows = JsonValue::array();
    CsvTable csv;
    csv.header = {"width", "seed", "sup_error", "fro_error", "generalization_error",
                  "max_abs_weight", "nonzero_count"};
    std::ostringstream sum;
    sum << "realizability sweep, n = " << n << ", k = " << cfg.k << ", depth = " << cfg.depth
        << "\n";
    sum << "  width   median sup err   median gen err\n";

    const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(nn));
    std::vector<double> med_sup_by_width;
    for (int width : cfg.widths) {
        std::vector<double> sups, gens;
        FitReport first_rep;
        for (std::uint64_t seed : cfg.seeds) {
            FitReport rep;
            ReluNet net = fit_relu_net(p.cloud.points, Ystar, cfg.k, cfg.depth, width,
                                       cfg.train_steps, cfg.train_lr, seed, &rep);
            // generalization: net outputs at fresh points vs the continuum
            // prediction sqrt(a - lam_a)/sqrt(n) * sum_b Q_ab f_b(Q_x)/|f_b|
            double gen = 0.0;
            std::vector<double> out(cfg.k);
            for (size_t i = 0; i < n_fresh; ++i) {
                net.forward(fresh.points.row(i), out.data());
                for (int a = 0; a < cfg.k; ++a) {
                    double pred = 0.0;
                    for (int b = 0; b < cfg.k; ++b)
                        pred += Q[a * cfg.k + b] *
                                cs.eigenfunctions[b].value(fresh.projections->row(i)) /
                                ref_norm[b];
                    pred *= std::sqrt(prob.a - pairs.values[a]) * inv_root_n;
                    gen = std::max(gen, std::abs(out[a] - pred));
                }
            }
            sups.push_back(rep.sup_error);
            gens.push_back(gen);
            auto row = JsonValue::object();
            row->set("width", width)
                .set("seed", static_cast<std::int64_t>(seed))
                .set("sup_error", rep.sup_error)
                .set("fro_error", rep.fro_error)
                .set("generalization_error", gen)
                .set("max_abs_weight", rep.max_abs_weight)
                .set("nonzero_count", rep.nonzero_count);
            rows->push(row);
            csv.add_row({std::to_string(width), std::to_string(seed),
                         format_double(rep.sup_error), format_double(rep.fro_error),
                         format_double(gen), format_double(rep.max_abs_weight),
                         std::to_string(rep.nonzero_count)});
        }
        med_sup_by_width.push_back(median_of(sups));
        char line[96];
        std::snprintf(line, sizeof(line), "  %5d   %14.6e   %14.6e\n", width, median_of(sups),
                      median_of(gens));
        sum << line;
    }

    art.report = JsonValue::object();
    art.report->set("rows", rows);
    auto med = JsonValue::array();
    for (double v : med_sup_by_width) med->push(v);
    art.report->set("median_sup_by_width", med);
    bool monotone = true;
    for (size_t i = 1; i < med_sup_by_width.size(); ++i)
        monotone = monotone && (med_sup_by_width[i] < med_sup_by_width[i - 1]);
    art.report->set("sup_error_decreasing_in_width", monotone);
    art.files.emplace_back("realizability.csv", csv.dump());
    art.summary = sum.str();
    return art;
}

Artifacts dispatch(const ExperimentConfig& cfg) {
    if (cfg.experiment == "pointwise") return run_pointwise_experiment(cfg);
    if (cfg.experiment == "spectral") return run_spectral_experiment(cfg);
    if (cfg.experiment == "rate") return run_rate_experiment(cfg);
    if (cfg.experiment == "dumbbell") return run_dumbbell_experiment(cfg);
    if (cfg.experiment == "embedding") return run_embedding_experiment(cfg);
    return run_realizability_experiment(cfg);
}

JsonValue::Ptr report_shell(const ExperimentConfig& cfg, const Artifacts& art) {
    auto root = JsonValue::object();
    root->set("experiment", cfg.experiment);
    root->set("config_hash", cfg.hash());
    auto seeds = JsonValue::array();
    for (auto s : cfg.seeds) seeds->push(JsonValue::integer(static_cast<std::int64_t>(s)));
    root->set("seeds", seeds);
    root->set("payload", art.report);
    return root;
}

}  // namespace

std::string experiment_report_json(const ExperimentConfig& cfg) {
    const Artifacts art = dispatch(cfg);
    return report_shell(cfg, art)->dump();
}

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    RunOutcome out;
    const std::string dir = cfg.output_dir + "/" + cfg.experiment + "-" + cfg.hash();
    out.output_dir = dir;
    fs::create_directories(dir);
    write_file(dir + "/config.resolved", cfg.canonical_text());
    try {
        const Artifacts art = dispatch(cfg);
        write_file(dir + "/report.json", report_shell(cfg, art)->dump());
        for (const auto& [name, content] : art.files) write_file(dir + "/" + name, content);
        out.summary = art.summary + "artifacts in " + dir + "\n";
        out.exit_code = kExitOk;
    } catch (const ConfigError&) {
        throw;  // caller maps to exit 2
    } catch (const Error& e) {
        auto err = JsonValue::object();
        err->set("error", std::string(e.what()));
        err->set("exit_code", kExitNumericalError);
        write_file(dir + "/error.json", err->dump());
        out.summary = std::string("numerical failure: ") + e.what() + "\n";
        out.exit_code = kExitNumericalError;
    }
    return out;
}

ReplayOutcome replay(const std::string& report_dir) {
    ReplayOutcome out;
    const ExperimentConfig cfg = parse_config_file(report_dir + "/config.resolved");
    const std::string fresh = experiment_report_json(cfg);
    const std::string stored = read_file(report_dir + "/report.json");
    if (fresh == stored) {
        out.match = true;
        return out;
    }
    out.match = false;
    // locate the first differing field by walking both documents
    nlohmann::json a, b;
    try {
        a = nlohmann::json::parse(stored);
        b = nlohmann::json::parse(fresh);
    } catch (const std::exception&) {
        out.first_mismatch_path = "(unparseable report)";
        return out;
    }
    std::function<std::string(const nlohmann::json&, const nlohmann::json&, std::string)> diff =
        [&](const nlohmann::json& x, const nlohmann::json& y, std::string path) -> std::string {
        if (x.type() != y.type()) return path;
        if (x.is_object()) {
            for (auto it = x.begin(); it != x.end(); ++it) {
                if (!y.contains(it.key())) return path + "/" + it.key();
                const std::string p = diff(it.value(), y[it.key()], path + "/" + it.key());
                if (!p.empty()) return p;
            }
            for (auto it = y.begin(); it != y.end(); ++it)
                if (!x.contains(it.key())) return path + "/" + it.key();
            return "";
        }
        if (x.is_array()) {
            const size_t m = std::min(x.size(), y.size());
            for (size_t i = 0; i < m; ++i) {
                const std::string p = diff(x[i], y[i], path + "/" + std::to_string(i));
                if (!p.empty()) return p;
            }
            if (x.size() != y.size()) return path + "/" + std::to_string(m);
            return "";
        }
        return x == y ? "" : path;
    };
    out.first_mismatch_path = diff(a, b, "");
    if (out.first_mismatch_path.empty()) out.first_mismatch_path = "(formatting)";
    return out;
}

}  // namespace auglab
