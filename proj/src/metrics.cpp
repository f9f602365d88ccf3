#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "penalties.hpp"
#include "stress.hpp"

#include "json.hpp"

namespace spx {

static const double kPi = std::acos(-1.0);

static void check_sizes(const Layout& l, const Graph& g) {
    if (l.size() != g.n)
        throw Error(ErrorCode::InvalidArgument, "layout size does not match the graph");
}

// Visit every independent pair that crosses in the layout.
template <typename F>
static void for_each_crossing(const Layout& l, const Graph& g, F&& fn) {
    const int m = int(g.edges.size());
    for (int i = 0; i < m; ++i) {
        const Edge& a = g.edges[i];
        for (int j = i + 1; j < m; ++j) {
            const Edge& b = g.edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            const Segment sa{l[a.u], l[a.v]};
            const Segment sb{l[b.u], l[b.v]};
            if (segments_cross(sa, sb)) fn(sa, sb);
        }
    }
}

int count_crossings(const Layout& l, const Graph& g) {
    check_sizes(l, g);
    int count = 0;
    for_each_crossing(l, g, [&](const Segment&, const Segment&) { ++count; });
    return count;
}

double min_crossing_angle(const Layout& l, const Graph& g) {
    check_sizes(l, g);
    double best = kPi / 2;
    bool any = false;
    for_each_crossing(l, g, [&](const Segment& a, const Segment& b) {
        best = std::min(best, crossing_angle(a, b));
        any = true;
    });
    if (!any) return 90.0;
    return best * 180.0 / kPi;
}

double avg_crossing_angle(const Layout& l, const Graph& g) {
    check_sizes(l, g);
    double sum = 0;
    int count = 0;
    for_each_crossing(l, g, [&](const Segment& a, const Segment& b) {
        sum += crossing_angle(a, b);
        ++count;
    });
    if (count == 0) return 90.0;
    return (sum / count) * 180.0 / kPi;
}

double neighborhood_preservation(const Layout& l, const Graph& g) {
    check_sizes(l, g);
    const int n = g.n;
    if (n <= 1) return 1.0;
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    double total = 0;
    std::vector<std::pair<double, int>> order;
    order.reserve(n - 1);
    for (int v = 0; v < n; ++v) {
        const int k = int(adj[v].size());
        if (k == 0) {
            total += 1.0; // empty neighborhood trivially matches
            continue;
        }
        order.clear();
        for (int u = 0; u < n; ++u) {
            if (u == v) continue;
            const Vec2 d = l[v] - l[u];
            order.emplace_back(d.x * d.x + d.y * d.y, u);
        }
        // ascending distance, ties by vertex index
        std::sort(order.begin(), order.end());
        std::vector<char> nearest(n, 0);
        for (int i = 0; i < k; ++i) nearest[order[i].second] = 1;
        int common = 0;
        for (int u : adj[v])
            if (nearest[u]) ++common;
        total += double(common) / double(2 * k - common);
    }
    return total / n;
}

double upward_fraction(const Layout& l, const Graph& g) {
    check_sizes(l, g);
    int directed = 0, upward = 0;
    for (const Edge& e : g.edges) {
        if (!e.directed) continue;
        ++directed;
        if (l[e.v].y > l[e.u].y) ++upward;
    }
    if (directed == 0) return 1.0;
    return double(upward) / directed;
}

Box drawing_metrics(const Layout& l) { return bounding_box(l); }

MetricsReport report(const Layout& l, const Graph& g, const DistanceMatrix& dm) {
    check_sizes(l, g);
    MetricsReport r;
    r.stress = stress_value(l, dm);
    r.crossings = count_crossings(l, g);
    r.min_crossing_angle_deg = min_crossing_angle(l, g);
    r.avg_crossing_angle_deg = avg_crossing_angle(l, g);
    r.neighborhood_preservation = neighborhood_preservation(l, g);
    const Box box = drawing_metrics(l);
    r.drawing_width = box.width;
    r.drawing_height = box.height;
    r.drawing_area = box.area;
    r.upward_fraction = upward_fraction(l, g);
    return r;
}

std::string metrics_to_json(const MetricsReport& r) {
    nlohmann::json j;
    j["stress"] = r.stress;
    j["crossings"] = r.crossings;
    j["min_crossing_angle_deg"] = r.min_crossing_angle_deg;
    j["avg_crossing_angle_deg"] = r.avg_crossing_angle_deg;
    j["neighborhood_preservation"] = r.neighborhood_preservation;
    j["drawing_width"] = r.drawing_width;
    j["drawing_height"] = r.drawing_height;
    j["drawing_area"] = r.drawing_area;
    j["upward_fraction"] = r.upward_fraction;
    return j.dump(2);
}

MetricsReport metrics_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("metrics report: ") + e.what());
    }
    MetricsReport r;
    try {
        r.stress = j.at("stress").get<double>();
        r.crossings = j.at("crossings").get<int>();
        r.min_crossing_angle_deg = j.at("min_crossing_angle_deg").get<double>();
        r.avg_crossing_angle_deg = j.at("avg_crossing_angle_deg").get<double>();
        r.neighborhood_preservation = j.at("neighborhood_preservation").get<double>();
        r.drawing_width = j.at("drawing_width").get<double>();
        r.drawing_height = j.at("drawing_height").get<double>();
        r.drawing_area = j.at("drawing_area").get<double>();
        r.upward_fraction = j.at("upward_fraction").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("metrics report: ") + e.what());
    }
    return r;
}

} // namespace spx
