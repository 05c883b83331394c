#include "stickmin/geom.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace stickmin {

namespace {

constexpr double kDegenerateArea = 1e-18;
// Fraction of an edge clipped away at a stationary hinge corner before the
// sweep distance test. Large enough that a clean fold clears eps = 1e-9 at
// ordinary vertex angles, small enough to keep the unchecked window tiny.
constexpr double kHingeTrim = 1e-5;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace

double point_segment_distance(const Point3& p, const Segment& s) {
    const Vec3 d = s.b - s.a;
    const double dd = d.norm2();
    if (dd <= 0.0) return (p - s.a).norm();
    const double t = clamp01((p - s.a).dot(d) / dd);
    return (p - (s.a + d * t)).norm();
}

namespace {

Point3 closest_point_on_triangle(const Point3& p, const Triangle& t) {
    // Voronoi-region walk (Ericson). Falls back to edge distances when the
    // face region is numerically unusable.
    const Vec3 ab = t.b - t.a;
    const Vec3 ac = t.c - t.a;
    const Vec3 ap = p - t.a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return t.a;

    const Vec3 bp = p - t.b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return t.b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return t.a + ab * v;
    }

    const Vec3 cp = p - t.c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return t.c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return t.a + ac * w;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return t.b + (t.c - t.b) * w;
    }

    const double denom = va + vb + vc;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        // Degenerate face: nearest point lies on an edge.
        const Point3 q1 = t.a + ab * clamp01(ab.norm2() > 0 ? d1 / ab.norm2() : 0.0);
        double best = (p - q1).norm2();
        Point3 bestq = q1;
        const Vec3 bc = t.c - t.b;
        const Point3 q2 = t.b + bc * clamp01(bc.norm2() > 0 ? bc.dot(p - t.b) / bc.norm2() : 0.0);
        if ((p - q2).norm2() < best) { best = (p - q2).norm2(); bestq = q2; }
        const Point3 q3 = t.a + ac * clamp01(ac.norm2() > 0 ? d2 / ac.norm2() : 0.0);
        if ((p - q3).norm2() < best) bestq = q3;
        return bestq;
    }
    const double v = vb / denom;
    const double w = vc / denom;
    return t.a + ab * v + ac * w;
}

double segment_segment_distance_ordered(const Segment& s, const Segment& t) {
    const Vec3 d1 = s.b - s.a;
    const Vec3 d2 = t.b - t.a;
    const Vec3 r = s.a - t.a;
    const double a = d1.norm2();
    const double e = d2.norm2();
    const double f = d2.dot(r);
    constexpr double kTiny = 1e-300;

    double sc = 0.0, tc = 0.0;
    if (a <= kTiny && e <= kTiny) {
        // both degenerate
    } else if (a <= kTiny) {
        tc = clamp01(f / e);
    } else {
        const double c = d1.dot(r);
        if (e <= kTiny) {
            sc = clamp01(-c / a);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            sc = denom > 0.0 ? clamp01((b * f - c * e) / denom) : 0.0;
            tc = (b * sc + f) / e;
            if (tc < 0.0) {
                tc = 0.0;
                sc = clamp01(-c / a);
            } else if (tc > 1.0) {
                tc = 1.0;
                sc = clamp01((b - c) / a);
            }
        }
    }
    return ((s.a + d1 * sc) - (t.a + d2 * tc)).norm();
}

bool segment_lex_less(const Segment& s, const Segment& t) {
    const double sk[6] = {s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z};
    const double tk[6] = {t.a.x, t.a.y, t.a.z, t.b.x, t.b.y, t.b.z};
    for (int i = 0; i < 6; ++i) {
        if (sk[i] < tk[i]) return true;
        if (sk[i] > tk[i]) return false;
    }
    return false;
}

} // namespace

double segment_segment_distance(const Segment& a, const Segment& b) {
    // Canonical argument order makes the result exactly symmetric.
    return segment_lex_less(b, a) ? segment_segment_distance_ordered(b, a)
                                  : segment_segment_distance_ordered(a, b);
}

double point_triangle_distance(const Point3& p, const Triangle& t) {
    return (p - closest_point_on_triangle(p, t)).norm();
}

double segment_triangle_distance(const Segment& s, const Triangle& t) {
    const Vec3 n = (t.b - t.a).cross(t.c - t.a);
    const double area = 0.5 * n.norm();
    const Segment e0{t.a, t.b}, e1{t.b, t.c}, e2{t.c, t.a};

    if (!(area > kDegenerateArea)) {
        // Collinear (or point) triangle equals the union of its edges.
        return std::min({segment_segment_distance(s, e0), segment_segment_distance(s, e1),
                         segment_segment_distance(s, e2)});
    }

    const double da = (s.a - t.a).dot(n);
    const double db = (s.b - t.a).dot(n);
    if ((da <= 0.0 && db >= 0.0) || (da >= 0.0 && db <= 0.0)) {
        const double denom = da - db;
        if (denom != 0.0) {
            const double u = da / denom;
            const Point3 q = s.a + (s.b - s.a) * u;
            if ((t.b - t.a).cross(q - t.a).dot(n) >= 0.0 &&
                (t.c - t.b).cross(q - t.b).dot(n) >= 0.0 &&
                (t.a - t.c).cross(q - t.c).dot(n) >= 0.0) {
                return 0.0;  // proper crossing through the face
            }
        }
    }

    double d = std::min({segment_segment_distance(s, e0), segment_segment_distance(s, e1),
                         segment_segment_distance(s, e2)});
    d = std::min(d, point_triangle_distance(s.a, t));
    d = std::min(d, point_triangle_distance(s.b, t));
    return d;
}

Clearance segment_triangle_clearance(const Segment& s, const Triangle& t, double eps) {
    if (!s.a.finite() || !s.b.finite() || !t.a.finite() || !t.b.finite() || !t.c.finite())
        return Clearance::Blocked;
    const double d = segment_triangle_distance(s, t);
    return d <= eps ? Clearance::Blocked : Clearance::Clear;
}

namespace detail {

namespace {

bool is_corner(const Point3& p, const Triangle& t) {
    return p == t.a || p == t.b || p == t.c;
}

bool edge_blocked_by_triangle(const Point3& g, const Point3& h, const Triangle& t, double eps) {
    const bool gc = is_corner(g, t);
    const bool hc = is_corner(h, t);
    Segment e{g, h};
    if (gc) e.a = g + (h - g) * kHingeTrim;
    if (hc) e.b = h + (g - h) * kHingeTrim;
    return segment_triangle_distance(e, t) <= eps;
}

} // namespace

Clearance sweep_check(std::span<const Triangle> tris,
                      std::span<const Point3> cycle,
                      std::span<const int> excluded_vertices,
                      std::span<const int> skipped_edges,
                      double eps) {
    const int n = static_cast<int>(cycle.size());
    std::vector<char> ex(static_cast<std::size_t>(n), 0);
    for (int i : excluded_vertices) ex[static_cast<std::size_t>(((i % n) + n) % n)] = 1;
    std::vector<char> skip(static_cast<std::size_t>(n), 0);
    for (int i : skipped_edges) skip[static_cast<std::size_t>(((i % n) + n) % n)] = 1;

    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (ex[i] || ex[j] || skip[i]) continue;
        for (const Triangle& t : tris) {
            if (edge_blocked_by_triangle(cycle[i], cycle[j], t, eps)) return Clearance::Blocked;
        }
    }
    return Clearance::Clear;
}

} // namespace detail

Clearance sweep_clearance(std::span<const Triangle> tris,
                          std::span<const Point3> cycle,
                          std::span<const int> excluded_vertices,
                          double eps) {
    return detail::sweep_check(tris, cycle, excluded_vertices, {}, eps);
}

Point3 rotate_about_axis(const Point3& p, const Point3& axis_a, const Point3& axis_b,
                         double angle) {
    if (angle == 0.0) return p;
    const Vec3 k = (axis_b - axis_a).normalized();
    const Vec3 r = p - axis_a;
    const Vec3 par = k * r.dot(k);
    const Vec3 perp = r - par;
    const Vec3 w = k.cross(perp);
    return axis_a + par + perp * std::cos(angle) + w * std::sin(angle);
}

void orthonormal_frame(const Vec3& unit_w, Vec3& u, Vec3& v) {
    const Vec3 pick = std::abs(unit_w.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    u = unit_w.cross(pick).normalized();
    v = unit_w.cross(u);
}

Vec3 random_unit_vector(Rng& rng) {
    for (;;) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        const double z = rng.uniform(-1.0, 1.0);
        const double n2 = x * x + y * y + z * z;
        if (n2 > 1e-12 && n2 <= 1.0) {
            const double inv = 1.0 / std::sqrt(n2);
            return {x * inv, y * inv, z * inv};
        }
    }
}

} // namespace stickmin
