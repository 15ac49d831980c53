#include "auglab/config.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "auglab/io.hpp"

namespace auglab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(static_cast<T>(std::stod(tok)));
    }
    return out;
}

void apply_kv(ExperimentConfig& c, const std::string& key, const std::string& value) {
    if (key == "experiment") c.experiment = value;
    else if (key == "output_dir") c.output_dir = value;
    else if (key == "manifold") c.manifold = value;
    else if (key == "radius") c.radius = std::stod(value);
    else if (key == "major_radius") c.major_radius = std::stod(value);
    else if (key == "minor_radius") c.minor_radius = std::stod(value);
    else if (key == "neck_radius") c.neck_radius = std::stod(value);
    else if (key == "lobe_radius") c.lobe_radius = std::stod(value);
    else if (key == "eps") { c.eps = std::stod(value); c.has_eps = true; }
    else if (key == "eps_rule") c.eps_rule = value;
    else if (key == "eps_c") c.eps_c = std::stod(value);
    else if (key == "knn_k") c.knn_k = std::stoi(value);
    else if (key == "knn_quantile") c.knn_quantile = std::stod(value);
    else if (key == "tau") c.tau = std::stod(value);
    else if (key == "eta") c.eta = std::stod(value);
    else if (key == "sizes") c.sizes = parse_list<size_t>(value);
    else if (key == "per_parent") c.per_parent = std::stoi(value);
    else if (key == "k") c.k = std::stoi(value);
    else if (key == "seeds") c.seeds = parse_list<std::uint64_t>(value);
    else if (key == "solver_tol") c.solver_tol = std::stod(value);
    else if (key == "solver_max_iter") c.solver_max_iter = std::stoi(value);
    else if (key == "test_function") c.test_function = value;
    else if (key == "widths") c.widths = parse_list<int>(value);
    else if (key == "depth") c.depth = std::stoi(value);
    else if (key == "train_steps") c.train_steps = std::stoi(value);
    else if (key == "train_lr") c.train_lr = std::stod(value);
    else if (key == "descent_steps") c.descent_steps = std::stoi(value);
    else if (key == "descent_lr") c.descent_lr = std::stod(value);
    else throw ConfigError("unknown config key: " + key);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig c;
    const std::string body = trim(text);
    if (!body.empty() && body[0] == '{') {
        // JSON alternative
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            const auto& v = it.value();
            std::string s;
            if (v.is_string()) s = v.get<std::string>();
            else if (v.is_boolean()) s = v.get<bool>() ? "1" : "0";
            else if (v.is_array()) {
                for (size_t i = 0; i < v.size(); ++i)
                    s += (i ? "," : "") + format_double(v[i].get<double>());
            } else s = format_double(v.get<double>());
            apply_kv(c, it.key(), s);
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty() || line[0] == '[') continue;  // sections are decorative
            const size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            apply_kv(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    c.validate();
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kExperiments = {
        "pointwise", "spectral", "rate", "dumbbell", "embedding", "realizability"};
    if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end())
        throw ConfigError("experiment must be one of pointwise|spectral|rate|dumbbell|embedding|"
                          "realizability");
    static const std::vector<std::string> kManifolds = {"circle", "sphere", "torus", "dumbbell"};
    if (std::find(kManifolds.begin(), kManifolds.end(), manifold) == kManifolds.end())
        throw ConfigError("manifold must be one of circle|sphere|torus|dumbbell");
    if (sizes.empty()) throw ConfigError("sizes must be nonempty");
    for (size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw ConfigError("sizes must be strictly increasing");
    if (seeds.empty()) throw ConfigError("seeds must be nonempty");
    if (has_eps && !eps_rule.empty())
        throw ConfigError("eps and eps_rule are mutually exclusive");
    if (!eps_rule.empty() && eps_rule != "from_n" && eps_rule != "from_n_plain" &&
        eps_rule != "knn")
        throw ConfigError("eps_rule must be from_n|from_n_plain|knn");
    if (per_parent < 1) throw ConfigError("per_parent must be >= 1");
    if (k < 1 || k > 64) throw ConfigError("k must be in [1, 64]");
    if (!(solver_tol > 0.0)) throw ConfigError("solver_tol must be positive");
    if (!(tau > 0.0) || !(eta > 0.0)) throw ConfigError("tau and eta must be positive");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream s;
    s << "experiment = " << experiment << '\n';
    s << "output_dir = " << output_dir << '\n';
    s << "manifold = " << manifold << '\n';
    s << "radius = " << format_double(radius) << '\n';
    s << "major_radius = " << format_double(major_radius) << '\n';
    s << "minor_radius = " << format_double(minor_radius) << '\n';
    s << "neck_radius = " << format_double(neck_radius) << '\n';
    s << "lobe_radius = " << format_double(lobe_radius) << '\n';
    if (has_eps) s << "eps = " << format_double(eps) << '\n';
    if (!eps_rule.empty()) s << "eps_rule = " << eps_rule << '\n';
    s << "eps_c = " << format_double(eps_c) << '\n';
    s << "knn_k = " << knn_k << '\n';
    s << "knn_quantile = " << format_double(knn_quantile) << '\n';
    s << "tau = " << format_double(tau) << '\n';
    s << "eta = " << format_double(eta) << '\n';
    s << "sizes = ";
    for (size_t i = 0; i < sizes.size(); ++i) s << (i ? "," : "") << sizes[i];
    s << '\n';
    s << "per_parent = " << per_parent << '\n';
    s << "k = " << k << '\n';
    s << "seeds = ";
    for (size_t i = 0; i < seeds.size(); ++i) s << (i ? "," : "") << seeds[i];
    s << '\n';
    s << "solver_tol = " << format_double(solver_tol) << '\n';
    s << "solver_max_iter = " << solver_max_iter << '\n';
    s << "test_function = " << test_function << '\n';
    s << "widths = ";
    for (size_t i = 0; i < widths.size(); ++i) s << (i ? "," : "") << widths[i];
    s << '\n';
    s << "depth = " << depth << '\n';
    s << "train_steps = " << train_steps << '\n';
    s << "train_lr = " << format_double(train_lr) << '\n';
    s << "descent_steps = " << descent_steps << '\n';
    s << "descent_lr = " << format_double(descent_lr) << '\n';
    return s.str();
}

std::string ExperimentConfig::hash() const { return content_hash8(canonical_text()); }

}  // namespace auglab
