#pragma once

#include <cmath>
#include <vector>

#include "error.hpp"

namespace spx {

struct Vec2 {
    double x = 0;
    double y = 0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

using Point = Vec2;

struct Segment {
    Point p;
    Point q;
};

// One position per vertex.
struct Layout {
    std::vector<Point> pts;

    Layout() = default;
    explicit Layout(int n) : pts(n) {}

    int size() const { return int(pts.size()); }
    Point& operator[](int i) { return pts[i]; }
    const Point& operator[](int i) const { return pts[i]; }
};

struct Box {
    double width = 0;
    double height = 0;
    double area = 0;
};

// Proper interior crossing only: segments sharing an endpoint or merely
// touching do not count. Orientation determinants within 1e-12 of zero are
// treated as collinear.
bool segments_cross(const Segment& a, const Segment& b);

// Acute angle between the carrying lines, in (0, pi/2] for crossing pairs
// (0 exactly for parallel lines). Throws DegenerateSegment on a zero-length
// segment.
double crossing_angle(const Segment& a, const Segment& b);

// Axis-aligned extent of the layout. Throws InvalidArgument when empty.
Box bounding_box(const Layout& l);

} // namespace spx
