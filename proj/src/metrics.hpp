#pragma once

#include <string>

#include "geometry.hpp"
#include "graph.hpp"

namespace spx {

struct MetricsReport {
    double stress = 0;
    int crossings = 0;
    double min_crossing_angle_deg = 90;
    double avg_crossing_angle_deg = 90;
    double neighborhood_preservation = 0;
    double drawing_width = 0;
    double drawing_height = 0;
    double drawing_area = 0;
    double upward_fraction = 1;
};

// Crossings among independent edge pairs (shared endpoints never count).
int count_crossings(const Layout& l, const Graph& g);

// Crossing-angle statistics in degrees; both report 90 for a crossing-free
// layout.
double min_crossing_angle(const Layout& l, const Graph& g);
double avg_crossing_angle(const Layout& l, const Graph& g);

// Mean Jaccard similarity between each vertex's graph neighborhood and its
// deg(v) nearest vertices in the drawing (distance ties break by vertex
// index).
double neighborhood_preservation(const Layout& l, const Graph& g);

// Fraction of directed edges drawn with the target strictly above the
// source; 1 when there are no directed edges.
double upward_fraction(const Layout& l, const Graph& g);

Box drawing_metrics(const Layout& l);

MetricsReport report(const Layout& l, const Graph& g, const DistanceMatrix& dm);

// Flat JSON object with one field per metric.
std::string metrics_to_json(const MetricsReport& r);
MetricsReport metrics_from_json(const std::string& text);

} // namespace spx
