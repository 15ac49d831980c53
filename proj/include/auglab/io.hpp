#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>

#include "auglab/augment.hpp"
#include "auglab/embedding.hpp"
#include "auglab/graph.hpp"
#include "auglab/spectral.hpp"

namespace auglab {

// All numeric text output uses 17 significant digits (round-trip exact).
std::string format_double(double v);

// ----------------------------------------------------------------------------
// Deterministic JSON document builder (insertion-ordered objects)
// ----------------------------------------------------------------------------

class JsonValue {
  public:
    using Ptr = std::shared_ptr<JsonValue>;

    static Ptr object();
    static Ptr array();
    static Ptr number(double v);
    static Ptr integer(std::int64_t v);
    static Ptr string(const std::string& s);
    static Ptr boolean(bool b);

    JsonValue& set(const std::string& key, Ptr v);
    JsonValue& set(const std::string& key, double v);
    JsonValue& set(const std::string& key, std::int64_t v);
    JsonValue& set(const std::string& key, int v);
    JsonValue& set(const std::string& key, size_t v);
    JsonValue& set(const std::string& key, const std::string& s);
    JsonValue& set(const std::string& key, bool b);
    JsonValue& push(Ptr v);
    JsonValue& push(double v);

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { Object, Array, Number, Integer, String, Bool } kind_ = Kind::Object;
    std::vector<std::pair<std::string, Ptr>> members_;
    std::vector<Ptr> items_;
    double num_ = 0.0;
    std::int64_t int_ = 0;
    std::string str_;
    bool bool_ = false;

    void write(std::string& out, int indent, int depth) const;
};

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<std::string>& cells) { rows.push_back(cells); }
    std::string dump() const;
    static CsvTable parse(const std::string& text);
    double num(size_t row, size_t col) const;
};

// ----------------------------------------------------------------------------
// Files
// ----------------------------------------------------------------------------

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// columnar cloud binary: magic, d, n, N, schedule, points, parent indices
void save_cloud(const std::string& path, const AugmentedCloud& cloud, size_t N);
AugmentedCloud load_cloud(const std::string& path, size_t* N_out = nullptr);
std::string cloud_to_csv(const AugmentedCloud& cloud);

// sorted edge-list binary: n, m_edges, scale, triples (u, v, w)
void save_graph(const std::string& path, const AugGraph& g);
AugGraph load_graph(const std::string& path);
std::string graph_to_text(const AugGraph& g);

// eigenpairs: CSV (index, value, residual) + raw matrix binary for vectors
std::string eigenpairs_to_csv(const EigenPairs& p);
void save_eigenvectors(const std::string& path, const EigenPairs& p);

// network binary: shapes then row-major float64 weights
void save_relu_net(const std::string& path, const ReluNet& net);
ReluNet load_relu_net(const std::string& path);

// ----------------------------------------------------------------------------
// Minimal SVG writer: scatter + polyline, linear or log-log axes
// ----------------------------------------------------------------------------

class SvgPlot {
  public:
    SvgPlot(double width = 640, double height = 480, bool loglog = false);
    void add_point(double x, double y, int color_class = 0);
    void add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color = "#336699");
    void set_title(const std::string& t) { title_ = t; }
    std::string render() const;

  private:
    double w_, h_;
    bool loglog_;
    std::string title_;
    struct Pt { double x, y; int cls; };
    std::vector<Pt> points_;
    struct Line { std::vector<double> xs, ys; std::string color; };
    std::vector<Line> lines_;
};

// FNV-1a 64-bit hash, hex-truncated to 8 chars; used for output dir names
std::string content_hash8(const std::string& content);

}  // namespace auglab
