#include "auglab/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace auglab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ----------------------------------------------------------------------------
// JSON
// ----------------------------------------------------------------------------

JsonValue::Ptr JsonValue::object() {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Object;
    return p;
}
JsonValue::Ptr JsonValue::array() {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Array;
    return p;
}
JsonValue::Ptr JsonValue::number(double v) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Number;
    p->num_ = v;
    return p;
}
JsonValue::Ptr JsonValue::integer(std::int64_t v) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Integer;
    p->int_ = v;
    return p;
}
JsonValue::Ptr JsonValue::string(const std::string& s) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::String;
    p->str_ = s;
    return p;
}
JsonValue::Ptr JsonValue::boolean(bool b) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Bool;
    p->bool_ = b;
    return p;
}

JsonValue& JsonValue::set(const std::string& key, Ptr v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}
JsonValue& JsonValue::set(const std::string& key, double v) { return set(key, number(v)); }
JsonValue& JsonValue::set(const std::string& key, std::int64_t v) { return set(key, integer(v)); }
JsonValue& JsonValue::set(const std::string& key, int v) {
    return set(key, integer(static_cast<std::int64_t>(v)));
}
JsonValue& JsonValue::set(const std::string& key, size_t v) {
    return set(key, integer(static_cast<std::int64_t>(v)));
}
JsonValue& JsonValue::set(const std::string& key, const std::string& s) {
    return set(key, string(s));
}
JsonValue& JsonValue::set(const std::string& key, bool b) { return set(key, boolean(b)); }
JsonValue& JsonValue::push(Ptr v) {
    items_.push_back(std::move(v));
    return *this;
}
JsonValue& JsonValue::push(double v) { return push(number(v)); }

namespace {
void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
}
}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
        case Kind::Object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (size_t i = 0; i < members_.size(); ++i) {
                out += pad1;
                escape_into(out, members_[i].first);
                out += ": ";
                members_[i].second->write(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case Kind::Array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < items_.size(); ++i) {
                out += pad1;
                items_[i]->write(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            return;
        }
        case Kind::Number: out += format_double(num_); return;
        case Kind::Integer: out += std::to_string(int_); return;
        case Kind::String: escape_into(out, str_); return;
        case Kind::Bool: out += bool_ ? "true" : "false"; return;
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

std::string CsvTable::dump() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        out += header[i];
        out += (i + 1 < header.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

double CsvTable::num(size_t row, size_t col) const { return std::stod(rows.at(row).at(col)); }

// ----------------------------------------------------------------------------
// Files
// ----------------------------------------------------------------------------

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct BinWriter {
    std::ofstream out;
    explicit BinWriter(const std::string& path) : out(path, std::ios::binary) {
        if (!out) throw Error("cannot open for writing: " + path);
    }
    void u64(std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
    void i64(std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
    void f64(double v) { out.write(reinterpret_cast<const char*>(&v), 8); }
    void doubles(const std::vector<double>& v) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * 8));
    }
};

struct BinReader {
    std::ifstream in;
    explicit BinReader(const std::string& path) : in(path, std::ios::binary) {
        if (!in) throw Error("cannot open for reading: " + path);
    }
    std::uint64_t u64() {
        std::uint64_t v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    }
    std::int64_t i64() {
        std::int64_t v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    }
    double f64() {
        double v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    }
    void doubles(std::vector<double>& v, size_t count) {
        v.resize(count);
        in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * 8));
    }
};

constexpr std::uint64_t kCloudMagic = 0x44554f4c43475541ULL;  // "AUGCLOUD"
constexpr std::uint64_t kGraphMagic = 0x4850415247475541ULL;  // "AUGGRAPH"

void write_schedule(BinWriter& w, const ParamSchedule& s) {
    w.f64(s.eps);
    w.f64(s.tau);
    w.f64(s.eta);
    w.f64(s.eps_w);
    w.f64(s.eps_p);
    w.f64(s.eps_n);
    w.u64(static_cast<std::uint64_t>(s.ambient_dim));
    w.u64(s.reject_outside_tube ? 1 : 0);
}

ParamSchedule read_schedule(BinReader& r) {
    ParamSchedule s;
    s.eps = r.f64();
    s.tau = r.f64();
    s.eta = r.f64();
    s.eps_w = r.f64();
    s.eps_p = r.f64();
    s.eps_n = r.f64();
    s.ambient_dim = static_cast<int>(r.u64());
    s.reject_outside_tube = r.u64() != 0;
    return s;
}

}  // namespace

void save_cloud(const std::string& path, const AugmentedCloud& cloud, size_t N) {
    BinWriter w(path);
    w.u64(kCloudMagic);
    w.u64(cloud.points.d);
    w.u64(cloud.size());
    w.u64(N);
    write_schedule(w, cloud.sched);
    w.doubles(cloud.points.xs);
    for (auto p : cloud.parent_index) w.i64(p);
}

AugmentedCloud load_cloud(const std::string& path, size_t* N_out) {
    BinReader r(path);
    if (r.u64() != kCloudMagic) throw Error("bad cloud file: " + path);
    AugmentedCloud cloud;
    const size_t d = r.u64();
    const size_t n = r.u64();
    const size_t N = r.u64();
    if (N_out) *N_out = N;
    cloud.sched = read_schedule(r);
    cloud.points.d = d;
    r.doubles(cloud.points.xs, n * d);
    cloud.parent_index.resize(n);
    for (auto& p : cloud.parent_index) p = r.i64();
    return cloud;
}

std::string cloud_to_csv(const AugmentedCloud& cloud) {
    CsvTable t;
    t.header = {"index", "parent"};
    for (size_t c = 0; c < cloud.points.d; ++c) t.header.push_back("x" + std::to_string(c));
    for (size_t i = 0; i < cloud.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), std::to_string(cloud.parent_index[i])};
        for (size_t c = 0; c < cloud.points.d; ++c)
            row.push_back(format_double(cloud.points.row(i)[c]));
        t.add_row(row);
    }
    return t.dump();
}

void save_graph(const std::string& path, const AugGraph& g) {
    BinWriter w(path);
    w.u64(kGraphMagic);
    w.u64(g.n);
    w.u64(g.edge_count());
    w.f64(g.scale);
    w.u64(static_cast<std::uint64_t>(g.m));
    write_schedule(w, g.sched);
    for (size_t e = 0; e < g.edge_count(); ++e) {
        w.i64(g.edge_u[e]);
        w.i64(g.edge_v[e]);
        w.f64(g.edge_w[e]);
    }
}

AugGraph load_graph(const std::string& path) {
    BinReader r(path);
    if (r.u64() != kGraphMagic) throw Error("bad graph file: " + path);
    const size_t n = r.u64();
    const size_t m_edges = r.u64();
    const double scale = r.f64();
    const int m = static_cast<int>(r.u64());
    const ParamSchedule sched = read_schedule(r);
    std::vector<std::int64_t> u(m_edges), v(m_edges);
    std::vector<double> w(m_edges);
    for (size_t e = 0; e < m_edges; ++e) {
        u[e] = r.i64();
        v[e] = r.i64();
        w[e] = r.f64();
    }
    return make_graph(n, m, scale, sched, std::move(u), std::move(v), std::move(w));
}

std::string graph_to_text(const AugGraph& g) {
    std::string out = "# n=" + std::to_string(g.n) + " edges=" + std::to_string(g.edge_count()) +
                      " scale=" + format_double(g.scale) + "\n";
    for (size_t e = 0; e < g.edge_count(); ++e)
        out += std::to_string(g.edge_u[e]) + " " + std::to_string(g.edge_v[e]) + " " +
               format_double(g.edge_w[e]) + "\n";
    return out;
}

std::string eigenpairs_to_csv(const EigenPairs& p) {
    CsvTable t;
    t.header = {"index", "value", "residual"};
    for (int l = 0; l < p.k; ++l)
        t.add_row({std::to_string(l + 1), format_double(p.values[l]),
                   format_double(p.residuals[l])});
    return t.dump();
}

void save_eigenvectors(const std::string& path, const EigenPairs& p) {
    BinWriter w(path);
    w.u64(p.n);
    w.u64(static_cast<std::uint64_t>(p.k));
    w.doubles(p.vectors);
}

void save_relu_net(const std::string& path, const ReluNet& net) {
    BinWriter w(path);
    w.u64(static_cast<std::uint64_t>(net.depth));
    w.u64(static_cast<std::uint64_t>(net.width));
    w.u64(static_cast<std::uint64_t>(net.in_dim));
    w.u64(static_cast<std::uint64_t>(net.out_dim));
    for (int i = 0; i < net.depth; ++i) {
        w.doubles(net.W[i]);
        w.doubles(net.b[i]);
    }
}

ReluNet load_relu_net(const std::string& path) {
    BinReader r(path);
    ReluNet net;
    net.depth = static_cast<int>(r.u64());
    net.width = static_cast<int>(r.u64());
    net.in_dim = static_cast<int>(r.u64());
    net.out_dim = static_cast<int>(r.u64());
    net.W.resize(net.depth);
    net.b.resize(net.depth);
    for (int i = 0; i < net.depth; ++i) {
        const int rows = (i == net.depth - 1) ? net.out_dim : net.width;
        const int cols = (i == 0) ? net.in_dim : net.width;
        r.doubles(net.W[i], static_cast<size_t>(rows) * cols);
        r.doubles(net.b[i], static_cast<size_t>(rows));
    }
    return net;
}

// ----------------------------------------------------------------------------
// SVG
// ----------------------------------------------------------------------------

SvgPlot::SvgPlot(double width, double height, bool loglog)
    : w_(width), h_(height), loglog_(loglog) {}

void SvgPlot::add_point(double x, double y, int color_class) {
    points_.push_back({x, y, color_class});
}

void SvgPlot::add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color) {
    lines_.push_back({xs, ys, color});
}

std::string SvgPlot::render() const {
    double xmin = 1e308, xmax = -1e308, ymin = 1e308, ymax = -1e308;
    auto tx = [&](double v) { return loglog_ ? std::log10(v) : v; };
    auto scan = [&](double x, double y) {
        xmin = std::min(xmin, tx(x));
        xmax = std::max(xmax, tx(x));
        ymin = std::min(ymin, tx(y));
        ymax = std::max(ymax, tx(y));
    };
    for (const auto& p : points_) scan(p.x, p.y);
    for (const auto& l : lines_)
        for (size_t i = 0; i < l.xs.size(); ++i) scan(l.xs[i], l.ys[i]);
    if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
    if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }
    const double mL = 50, mB = 40, mT = title_.empty() ? 12 : 28, mR = 12;
    auto px = [&](double x) { return mL + (tx(x) - xmin) / (xmax - xmin) * (w_ - mL - mR); };
    auto py = [&](double y) { return h_ - mB - (tx(y) - ymin) / (ymax - ymin) * (h_ - mB - mT); };

    static const char* kColors[] = {"#d1495b", "#00798c", "#edae49", "#66a182",
                                    "#2e4057", "#8d96a3"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
      << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title_.empty())
        s << "<text x=\"" << w_ / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\" "
             "font-family=\"sans-serif\">" << title_ << "</text>\n";
    // axes
    s << "<line x1=\"" << mL << "\" y1=\"" << h_ - mB << "\" x2=\"" << w_ - mR << "\" y2=\""
      << h_ - mB << "\" stroke=\"#333\"/>\n";
    s << "<line x1=\"" << mL << "\" y1=\"" << h_ - mB << "\" x2=\"" << mL << "\" y2=\"" << mT
      << "\" stroke=\"#333\"/>\n";
    // tick labels at the corners
    auto label = [&](double vx, double vy, const std::string& text, bool xaxis) {
        s << "<text x=\"" << vx << "\" y=\"" << vy
          << "\" font-size=\"10\" font-family=\"sans-serif\""
          << (xaxis ? " text-anchor=\"middle\"" : " text-anchor=\"end\"") << ">" << text
          << "</text>\n";
    };
    auto fmt_tick = [&](double t) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), loglog_ ? "1e%.3g" : "%.4g", t);
        return std::string(buf);
    };
    label(mL, h_ - mB + 14, fmt_tick(xmin), true);
    label(w_ - mR, h_ - mB + 14, fmt_tick(xmax), true);
    label(mL - 4, h_ - mB, fmt_tick(ymin), false);
    label(mL - 4, mT + 8, fmt_tick(ymax), false);

    for (const auto& l : lines_) {
        s << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < l.xs.size(); ++i)
            s << px(l.xs[i]) << ',' << py(l.ys[i]) << (i + 1 < l.xs.size() ? " " : "");
        s << "\"/>\n";
    }
    for (const auto& p : points_)
        s << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"2\" fill=\""
          << kColors[p.cls % 6] << "\" fill-opacity=\"0.7\"/>\n";
    s << "</svg>\n";
    return s.str();
}

std::string content_hash8(const std::string& content) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf).substr(0, 8);
}

}  // namespace auglab
