#pragma once

#include <cmath>
#include <span>

#include "stickmin/rng.hpp"

namespace stickmin {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { return *this / norm(); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

using Point3 = Vec3;

struct Segment {
    Point3 a, b;
};

struct Triangle {
    Point3 a, b, c;
};

enum class Clearance { Clear, Blocked };

double point_segment_distance(const Point3& p, const Segment& s);
double point_triangle_distance(const Point3& p, const Triangle& t);

/// Minimum distance between two closed segments. Exactly symmetric in its
/// arguments (the pair is canonically ordered before evaluation).
double segment_segment_distance(const Segment& a, const Segment& b);

/// Minimum distance between a closed segment and a closed triangle. Zero for
/// proper intersections. Triangles with area below 1e-18 are treated as the
/// union of their edge segments.
double segment_triangle_distance(const Segment& s, const Triangle& t);

/// Conservative clearance predicate: Blocked whenever the computed distance
/// is <= eps. May report a false Blocked near the tolerance; never reports a
/// false Clear (one-sided error).
Clearance segment_triangle_clearance(const Segment& s, const Triangle& t, double eps);

/// Checks a set of swept triangles against the edges of a closed vertex
/// cycle. Edges incident to an excluded vertex are skipped (they belong to
/// the moving part of the polygon). An edge endpoint that coincides exactly
/// with a triangle corner is a stationary hinge of the sweep: the edge is
/// clipped back from that endpoint by a small fraction before the distance
/// test, so contact at the shared corner alone does not block, while contact
/// anywhere else still does.
Clearance sweep_clearance(std::span<const Triangle> tris,
                          std::span<const Point3> cycle,
                          std::span<const int> excluded_vertices,
                          double eps);

namespace detail {

/// sweep_clearance plus explicit per-edge skips (edge i runs cycle[i] to
/// cycle[i+1 mod n]); used by moves whose swept triangle has a polygon edge
/// as a full side (triangle inflation).
Clearance sweep_check(std::span<const Triangle> tris,
                      std::span<const Point3> cycle,
                      std::span<const int> excluded_vertices,
                      std::span<const int> skipped_edges,
                      double eps);

} // namespace detail

/// Rotate p about the oriented line through axis_a and axis_b by angle
/// (radians, right-handed). angle == 0.0 returns p bit-exactly.
Point3 rotate_about_axis(const Point3& p, const Point3& axis_a, const Point3& axis_b,
                         double angle);

/// Deterministic right-handed orthonormal completion of a unit vector w.
void orthonormal_frame(const Vec3& unit_w, Vec3& u, Vec3& v);

/// Uniform direction on the unit sphere (Marsaglia rejection).
Vec3 random_unit_vector(Rng& rng);

} // namespace stickmin
