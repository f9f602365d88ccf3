#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "optimizer.hpp"

namespace spx {

// Text graph format: a "n <count>" header, then one edge per line as
// "u v" (undirected) or "u > v" (directed). '#' starts a comment; blank
// lines are skipped. parse_graph reports failures as ParseError with the
// 1-based line and column.
Graph parse_graph(const std::string& text);
std::string write_graph(const Graph& g);

// {"n": <count>, "coords": [[x, y], ...]}; every coordinate must be finite.
Layout layout_from_json(const std::string& text);
std::string layout_to_json(const Layout& l);

struct SvgOptions {
    double scale = 80;        // drawing units to pixels
    double node_radius = 4;   // pixels
    double stroke_width = 1.5;
    bool arrowheads = true;   // draw direction markers on directed edges
};

// Standalone SVG of the drawing, y axis pointing up. Output bytes depend
// only on the inputs.
std::string render_svg(const Layout& l, const Graph& g, const SvgOptions& opt = {});

// Header iter,crossings,stress,min_angle,cost and one row per iteration.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

// Shortest decimal form that parses back to the same double; plain digits,
// no locale involvement.
std::string format_double(double v);

std::string read_file(const std::string& path);  // throws Io
void write_file(const std::string& path, const std::string& content);

} // namespace spx
