#include "geometry.hpp"

#include <algorithm>

namespace spx {

static double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

bool segments_cross(const Segment& a, const Segment& b) {
    constexpr double eps = 1e-12;
    const double d1 = orient(b.p, b.q, a.p);
    const double d2 = orient(b.p, b.q, a.q);
    const double d3 = orient(a.p, a.q, b.p);
    const double d4 = orient(a.p, a.q, b.q);
    const bool a_straddles = (d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps);
    const bool b_straddles = (d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps);
    return a_straddles && b_straddles;
}

double crossing_angle(const Segment& a, const Segment& b) {
    const Vec2 da = a.q - a.p;
    const Vec2 db = b.q - b.p;
    const double na = norm(da);
    const double nb = norm(db);
    if (na == 0 || nb == 0)
        throw Error(ErrorCode::DegenerateSegment, "zero-length segment has no direction");
    const double c = std::clamp(std::abs(dot(da, db)) / (na * nb), 0.0, 1.0);
    return std::acos(c);
}

Box bounding_box(const Layout& l) {
    if (l.size() == 0)
        throw Error(ErrorCode::InvalidArgument, "bounding box of an empty layout");
    double minx = l[0].x, maxx = l[0].x, miny = l[0].y, maxy = l[0].y;
    for (const Point& p : l.pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    Box box;
    box.width = maxx - minx;
    box.height = maxy - miny;
    box.area = box.width * box.height;
    return box;
}

} // namespace spx
