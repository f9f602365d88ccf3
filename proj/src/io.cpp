#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spx {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

// whitespace-separated tokens with their start columns; '#' ends the line
std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        tokens.push_back({line.substr(start, i - start), int(start) + 1});
    }
    return tokens;
}

int parse_int(const Token& tok, int line_no, const char* what) {
    int value = 0;
    auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size())
        throw ParseError(line_no, tok.column, std::string("expected ") + what + ", got '" +
                                                  tok.text + "'");
    return value;
}

} // namespace

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<Edge> edges;
    std::vector<char> used;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<Token> tok = tokenize(line);
        if (tok.empty()) continue;
        if (n < 0) {
            if (tok.size() != 2 || tok[0].text != "n")
                throw ParseError(line_no, tok[0].column, "expected header 'n <count>'");
            n = parse_int(tok[1], line_no, "vertex count");
            if (n < 1) throw ParseError(line_no, tok[1].column, "vertex count must be positive");
            used.assign(size_t(n) * n, 0);
            continue;
        }
        bool directed = false;
        Token ut, vt;
        if (tok.size() == 2) {
            ut = tok[0];
            vt = tok[1];
        } else if (tok.size() == 3 && tok[1].text == ">") {
            directed = true;
            ut = tok[0];
            vt = tok[2];
        } else {
            throw ParseError(line_no, tok[0].column, "expected 'u v' or 'u > v'");
        }
        const int u = parse_int(ut, line_no, "vertex index");
        const int v = parse_int(vt, line_no, "vertex index");
        if (u < 0 || u >= n) throw ParseError(line_no, ut.column, "vertex index out of range");
        if (v < 0 || v >= n) throw ParseError(line_no, vt.column, "vertex index out of range");
        if (u == v) throw ParseError(line_no, ut.column, "self-loop not allowed");
        if (used[size_t(std::min(u, v)) * n + std::max(u, v)])
            throw ParseError(line_no, ut.column, "duplicate edge");
        used[size_t(std::min(u, v)) * n + std::max(u, v)] = 1;
        edges.push_back({u, v, directed});
    }
    if (n < 0) throw ParseError(line_no + 1, 1, "missing 'n <count>' header");
    return Graph(n, std::move(edges));
}

std::string write_graph(const Graph& g) {
    std::string out = "n " + std::to_string(g.n) + "\n";
    for (const Edge& e : g.edges) {
        out += std::to_string(e.u);
        out += e.directed ? " > " : " ";
        out += std::to_string(e.v);
        out += "\n";
    }
    return out;
}

Layout layout_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("layout: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("coords"))
        throw Error(ErrorCode::Parse, "layout: expected object with 'n' and 'coords'");
    int n;
    try {
        n = j.at("n").get<int>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::Parse, "layout: 'n' must be an integer");
    }
    const auto& coords = j.at("coords");
    if (n < 0 || !coords.is_array() || int(coords.size()) != n)
        throw Error(ErrorCode::Parse, "layout: 'coords' length must equal 'n'");
    Layout l(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = coords.at(i);
        if (!row.is_array() || row.size() != 2 || !row.at(0).is_number() || !row.at(1).is_number())
            throw Error(ErrorCode::Parse, "layout: coordinate " + std::to_string(i) +
                                              " must be [x, y]");
        l[i].x = row.at(0).get<double>();
        l[i].y = row.at(1).get<double>();
        if (!std::isfinite(l[i].x) || !std::isfinite(l[i].y))
            throw Error(ErrorCode::Parse,
                        "layout: coordinate " + std::to_string(i) + " is not finite");
    }
    return l;
}

std::string layout_to_json(const Layout& l) {
    nlohmann::json coords = nlohmann::json::array();
    for (const Point& p : l.pts) coords.push_back({p.x, p.y});
    nlohmann::json j;
    j["n"] = l.size();
    j["coords"] = coords;
    return j.dump();
}

std::string render_svg(const Layout& l, const Graph& g, const SvgOptions& opt) {
    if (l.size() != g.n)
        throw Error(ErrorCode::InvalidArgument, "layout size does not match the graph");
    const Box box = bounding_box(l);
    double minx = l[0].x, maxy = l[0].y;
    for (const Point& p : l.pts) {
        minx = std::min(minx, p.x);
        maxy = std::max(maxy, p.y);
    }
    const double margin = std::max(0.5, 0.06 * std::max(box.width, box.height));
    const double w = (box.width + 2 * margin) * opt.scale;
    const double h = (box.height + 2 * margin) * opt.scale;
    // y flipped so larger layout y is drawn higher
    auto px = [&](const Point& p) { return (p.x - minx + margin) * opt.scale; };
    auto py = [&](const Point& p) { return (maxy - p.y + margin) * opt.scale; };
    auto f = [](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
        return std::string(buf, res.ptr);
    };

    bool any_directed = false;
    for (const Edge& e : g.edges) any_directed = any_directed || e.directed;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + f(w) + " " + f(h) +
           "\" width=\"" + f(w) + "\" height=\"" + f(h) + "\">\n";
    if (any_directed && opt.arrowheads)
        svg += "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
               "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
               "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#555555\"/></marker></defs>\n";
    svg += "  <g stroke=\"#555555\" stroke-width=\"" + f(opt.stroke_width) + "\">\n";
    for (const Edge& e : g.edges) {
        Point a = l[e.u], b = l[e.v];
        double x1 = px(a), y1 = py(a), x2 = px(b), y2 = py(b);
        std::string extra;
        if (e.directed && opt.arrowheads) {
            // pull the tip back to the node border so the marker stays visible
            const double dx = x2 - x1, dy = y2 - y1;
            const double len = std::sqrt(dx * dx + dy * dy);
            if (len > opt.node_radius) {
                x2 -= dx / len * opt.node_radius;
                y2 -= dy / len * opt.node_radius;
            }
            extra = " marker-end=\"url(#arrow)\"";
        }
        svg += "    <line x1=\"" + f(x1) + "\" y1=\"" + f(y1) + "\" x2=\"" + f(x2) + "\" y2=\"" +
               f(y2) + "\"" + extra + "/>\n";
    }
    svg += "  </g>\n  <g fill=\"#d62728\">\n";
    for (const Point& p : l.pts)
        svg += "    <circle cx=\"" + f(px(p)) + "\" cy=\"" + f(py(p)) + "\" r=\"" +
               f(opt.node_radius) + "\"/>\n";
    svg += "  </g>\n</svg>\n";
    return svg;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "iter,crossings,stress,min_angle,cost\n";
    for (const TraceRow& row : trace) {
        out += std::to_string(row.iter) + "," + std::to_string(row.crossings) + "," +
               format_double(row.stress) + "," + format_double(row.min_angle_deg) + "," +
               format_double(row.cost) + "\n";
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
}

} // namespace spx
