#include "doctest.h"

#include <cmath>

#include "geometry.hpp"
#include "oracles.hpp"

using namespace spx;

static const double pi = std::acos(-1.0);

TEST_CASE("segment crossing basics") {
    Segment diag1{{0, 0}, {1, 1}};
    Segment diag2{{0, 1}, {1, 0}};
    CHECK(segments_cross(diag1, diag2));
    CHECK(segments_cross(diag2, diag1));

    Segment low{{0, 0}, {1, 0}};
    Segment high{{0, 1}, {1, 1}};
    CHECK_FALSE(segments_cross(low, high));

    // sharing an endpoint is not a crossing
    Segment s1{{0, 0}, {1, 1}};
    Segment s2{{1, 1}, {2, 0}};
    CHECK_FALSE(segments_cross(s1, s2));

    // collinear overlap is not a proper crossing
    Segment c1{{0, 0}, {2, 0}};
    Segment c2{{1, 0}, {3, 0}};
    CHECK_FALSE(segments_cross(c1, c2));

    // touching at an interior point without passing through
    Segment t1{{0, 0}, {2, 0}};
    Segment t2{{1, 0}, {1, 1}};
    CHECK_FALSE(segments_cross(t1, t2));
}

TEST_CASE("segment crossing matches the parametric oracle on random pairs") {
    Rng rng(mix64(99, 1));
    for (int i = 0; i < 100000; ++i) {
        Segment a{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                  {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        Segment b{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                  {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        CHECK(segments_cross(a, b) == oracle::segments_cross_parametric(a, b));
    }
}

TEST_CASE("crossing angle on known configurations") {
    Segment h{{0, 0}, {1, 0}};
    Segment v{{0.5, -1}, {0.5, 1}};
    CHECK(crossing_angle(h, v) == doctest::Approx(pi / 2).epsilon(1e-12));

    Segment flat{{0, 0}, {2, 0}};
    Segment tilted{{0, -1}, {2, 1}};
    CHECK(crossing_angle(flat, tilted) == doctest::Approx(pi / 4).epsilon(1e-12));

    // direction reversal changes nothing
    Segment tilted_rev{{2, 1}, {0, -1}};
    CHECK(crossing_angle(flat, tilted_rev) == doctest::Approx(pi / 4).epsilon(1e-12));
}

TEST_CASE("crossing angle matches the atan2 oracle and is symmetric") {
    // a pair far from parallel, checked tightly
    Segment s1{{0, 0}, {3, 1}};
    Segment s2{{0, 1}, {1, 3}};
    CHECK(crossing_angle(s1, s2) ==
          doctest::Approx(oracle::crossing_angle_atan2(s1, s2)).epsilon(1e-12));

    Rng rng(mix64(7, 2));
    for (int i = 0; i < 20000; ++i) {
        Segment a{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                  {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        Segment b{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                  {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        if (norm(a.q - a.p) < 1e-6 || norm(b.q - b.p) < 1e-6) continue;
        double ang = crossing_angle(a, b);
        // near-parallel pairs lose absolute precision through acos, hence 1e-9
        CHECK(std::abs(ang - oracle::crossing_angle_atan2(a, b)) < 1e-9);
        CHECK(ang == crossing_angle(b, a));
        CHECK(ang >= 0);
        CHECK(ang <= pi / 2 + 1e-15);
    }
}

TEST_CASE("crossing angle is invariant under rotation and uniform scaling") {
    Rng rng(mix64(13, 3));
    for (int i = 0; i < 500; ++i) {
        Segment a{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                  {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        Segment b{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                  {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        if (norm(a.q - a.p) < 1e-3 || norm(b.q - b.p) < 1e-3) continue;
        double base = crossing_angle(a, b);
        double phi = rng.uniform(0, 2 * pi);
        double s = rng.uniform(0.1, 10);
        auto tf = [&](Point p) {
            return Point{s * (p.x * std::cos(phi) - p.y * std::sin(phi)),
                         s * (p.x * std::sin(phi) + p.y * std::cos(phi))};
        };
        Segment ta{tf(a.p), tf(a.q)};
        Segment tb{tf(b.p), tf(b.q)};
        CHECK(crossing_angle(ta, tb) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("degenerate segments are rejected") {
    Segment good{{0, 0}, {1, 0}};
    Segment zero{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(crossing_angle(good, zero), Error);
    try {
        crossing_angle(zero, good);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSegment);
    }
}

TEST_CASE("bounding box") {
    Layout unit(4);
    unit[0] = {0, 0};
    unit[1] = {1, 0};
    unit[2] = {1, 1};
    unit[3] = {0, 1};
    Box b = bounding_box(unit);
    CHECK(b.width == 1.0);
    CHECK(b.height == 1.0);
    CHECK(b.area == 1.0);

    Layout point(3);
    point[0] = point[1] = point[2] = {2.5, -1};
    Box p = bounding_box(point);
    CHECK(p.width == 0.0);
    CHECK(p.height == 0.0);
    CHECK(p.area == 0.0);

    CHECK_THROWS_AS(bounding_box(Layout()), Error);
}

TEST_CASE("bounding box matches a direct min-max scan on random layouts") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Layout l = oracle::random_layout(20, 10, seed);
        double minx = l[0].x, maxx = l[0].x, miny = l[0].y, maxy = l[0].y;
        for (const Point& p : l.pts) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        Box b = bounding_box(l);
        CHECK(b.width == maxx - minx);
        CHECK(b.height == maxy - miny);
        CHECK(b.area == (maxx - minx) * (maxy - miny));
    }
}
