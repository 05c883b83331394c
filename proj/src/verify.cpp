#include "stickmin/verify.hpp"

#include <algorithm>
#include <cmath>

namespace stickmin {

namespace detail {

namespace {

struct CrossEvent {
    int edge;
    double s;
    int crossing_id;
    bool is_under;
};

double polygon_diameter(const Polygon& poly) {
    Vec3 lo = poly.vertex(0), hi = poly.vertex(0);
    for (const auto& v : poly.vertices()) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return (hi - lo).norm();
}

double dist2d(double ax, double ay, double bx, double by) {
    return std::hypot(ax - bx, ay - by);
}

// distance from point to 2D segment
double point_seg2(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double dd = dx * dx + dy * dy;
    double t = dd > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / dd : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist2d(px, py, ax + t * dx, ay + t * dy);
}

double seg_seg2(double ax, double ay, double bx, double by,
                double cx, double cy, double dx, double dy) {
    // lift to 3D and reuse the exact routine
    return segment_segment_distance({{ax, ay, 0}, {bx, by, 0}}, {{cx, cy, 0}, {dx, dy, 0}});
}

} // namespace

std::optional<PlanarDiagram> try_project(const Polygon& poly, const Vec3& direction) {
    const int n = poly.size();
    const double diam = polygon_diameter(poly);
    const double tol = 1e-9 * diam;

    PlanarDiagram d;
    d.direction = direction;
    orthonormal_frame(direction, d.ex, d.ey);
    d.xs.resize(static_cast<std::size_t>(n));
    d.ys.resize(static_cast<std::size_t>(n));
    std::vector<double> zs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec3 v = poly.vertex(i);
        d.xs[i] = v.dot(d.ex);
        d.ys[i] = v.dot(d.ey);
        zs[i] = v.dot(direction);
    }

    // vertex/vertex and vertex/edge separation
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dist2d(d.xs[i], d.ys[i], d.xs[j], d.ys[j]) < tol) return std::nullopt;
        }
        for (int j = 0; j < n; ++j) {
            if (j == i || (j + 1) % n == i) continue;  // edges incident to vertex i
            if (point_seg2(d.xs[i], d.ys[i], d.xs[j], d.ys[j], d.xs[(j + 1) % n],
                           d.ys[(j + 1) % n]) < tol)
                return std::nullopt;
        }
    }

    // transversal crossings of non-adjacent edge images
    std::vector<CrossEvent> events;
    for (int i = 0; i < n; ++i) {
        const int i1 = (i + 1) % n;
        for (int j = i + 1; j < n; ++j) {
            const int j1 = (j + 1) % n;
            if (j == i1 || j1 == i) continue;
            const double d1x = d.xs[i1] - d.xs[i], d1y = d.ys[i1] - d.ys[i];
            const double d2x = d.xs[j1] - d.xs[j], d2y = d.ys[j1] - d.ys[j];
            const double denom = d1x * d2y - d1y * d2x;
            const double rx = d.xs[j] - d.xs[i], ry = d.ys[j] - d.ys[i];
            const double l1 = std::hypot(d1x, d1y), l2 = std::hypot(d2x, d2y);

            bool crossing = false;
            double s = 0.0, t = 0.0;
            if (std::abs(denom) > 1e-12 * l1 * l2) {
                s = (rx * d2y - ry * d2x) / denom;
                t = (rx * d1y - ry * d1x) / denom;
                crossing = (0.0 < s && s < 1.0 && 0.0 < t && t < 1.0);
            }
            if (!crossing) {
                // a near-touch without a robust transversal crossing is not generic
                if (seg_seg2(d.xs[i], d.ys[i], d.xs[i1], d.ys[i1], d.xs[j], d.ys[j],
                             d.xs[j1], d.ys[j1]) < tol)
                    return std::nullopt;
                continue;
            }
            const double px = d.xs[i] + s * d1x, py = d.ys[i] + s * d1y;
            // crossing point must be away from all four endpoint images
            if (dist2d(px, py, d.xs[i], d.ys[i]) < tol || dist2d(px, py, d.xs[i1], d.ys[i1]) < tol ||
                dist2d(px, py, d.xs[j], d.ys[j]) < tol || dist2d(px, py, d.xs[j1], d.ys[j1]) < tol)
                return std::nullopt;
            const double zi = zs[i] + s * (zs[i1] - zs[i]);
            const double zj = zs[j] + t * (zs[j1] - zs[j]);
            if (std::abs(zi - zj) < tol) return std::nullopt;

            const bool over_is_i = zi > zj;
            const double ox = over_is_i ? d1x : d2x, oy = over_is_i ? d1y : d2y;
            const double ux = over_is_i ? d2x : d1x, uy = over_is_i ? d2y : d1y;
            const int sign = (ox * uy - oy * ux) > 0.0 ? +1 : -1;

            const int cid = static_cast<int>(d.crossings.size());
            d.crossings.push_back({over_is_i ? i : j, over_is_i ? j : i,
                                   over_is_i ? s : t, over_is_i ? t : s, px, py});
            events.push_back({i, s, cid, !over_is_i});
            events.push_back({j, t, cid, over_is_i});
            d.code.crossings.push_back({0, 0, 0, sign});  // arcs filled below
        }
    }

    // crossing/crossing separation
    const int m = static_cast<int>(d.crossings.size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (dist2d(d.crossings[a].px, d.crossings[a].py, d.crossings[b].px,
                       d.crossings[b].py) < tol)
                return std::nullopt;

    d.code.arc_count = m;
    if (m == 0) return d;

    // Walk the curve; arcs advance at each under-pass. The arc running past
    // the walk's end wraps onto the arc before the first under-pass.
    std::sort(events.begin(), events.end(), [](const CrossEvent& a, const CrossEvent& b) {
        return a.edge != b.edge ? a.edge < b.edge : a.s < b.s;
    });
    int arc = 0;
    for (const auto& ev : events) {
        if (ev.is_under) {
            d.code.crossings[ev.crossing_id].under_in_arc = arc % m;
            d.code.crossings[ev.crossing_id].under_out_arc = (arc + 1) % m;
            ++arc;
        } else {
            d.code.crossings[ev.crossing_id].over_arc = arc % m;
        }
    }
    return d;
}

} // namespace detail

ProjectionResult project_generic(const Polygon& poly, Rng& rng, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const Vec3 dir = random_unit_vector(rng);
        auto d = detail::try_project(poly, dir);
        if (d) return {d->direction, std::move(d->code)};
    }
    throw NoGenericProjection("no generic projection after " + std::to_string(max_attempts) +
                              " attempts");
}

namespace {

void check_arc_bookkeeping(const DiagramCode& code) {
    const int m = static_cast<int>(code.crossings.size());
    if (code.arc_count != m) throw SingularDiagram("arc count does not match crossing count");
    std::vector<int> in_seen(static_cast<std::size_t>(m), 0), out_seen(static_cast<std::size_t>(m), 0);
    for (const auto& c : code.crossings) {
        if (c.over_arc < 0 || c.over_arc >= m || c.under_in_arc < 0 || c.under_in_arc >= m ||
            c.under_out_arc < 0 || c.under_out_arc >= m)
            throw SingularDiagram("arc index out of range");
        ++in_seen[static_cast<std::size_t>(c.under_in_arc)];
        ++out_seen[static_cast<std::size_t>(c.under_out_arc)];
    }
    for (int a = 0; a < m; ++a)
        if (in_seen[a] != 1 || out_seen[a] != 1)
            throw SingularDiagram("arc " + std::to_string(a) + " has inconsistent incidences");
}

// |det| by partial-pivot LU, accumulated in log magnitude.
double abs_det(std::vector<std::complex<double>>& M, int n) {
    if (n == 0) return 1.0;
    double log_mag = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(M[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(M[r * n + k]);
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k)
            for (int c = k; c < n; ++c) std::swap(M[k * n + c], M[piv * n + c]);
        log_mag += std::log(best);
        const std::complex<double> inv = 1.0 / M[k * n + k];
        for (int r = k + 1; r < n; ++r) {
            const std::complex<double> f = M[r * n + k] * inv;
            if (f == std::complex<double>{}) continue;
            for (int c = k + 1; c < n; ++c) M[r * n + c] -= f * M[k * n + c];
        }
    }
    return std::exp(log_mag);
}

double eval_deleting(const DiagramCode& code, std::complex<double> t, int del_row, int del_col) {
    const int m = static_cast<int>(code.crossings.size());
    if (m == 0) return 1.0;
    check_arc_bookkeeping(code);
    const int nr = m - 1;
    std::vector<std::complex<double>> M(static_cast<std::size_t>(nr) * nr, 0.0);
    auto put = [&](int row, int col, std::complex<double> v) {
        if (row == del_row || col == del_col) return;
        const int r = row < del_row ? row : row - 1;
        const int c = col < del_col ? col : col - 1;
        M[static_cast<std::size_t>(r) * nr + c] += v;
    };
    for (int row = 0; row < m; ++row) {
        const Crossing& c = code.crossings[static_cast<std::size_t>(row)];
        put(row, c.over_arc, 1.0 - t);
        if (c.sign > 0) {
            put(row, c.under_in_arc, t);
            put(row, c.under_out_arc, -1.0);
        } else {
            put(row, c.under_out_arc, t);
            put(row, c.under_in_arc, -1.0);
        }
    }
    return abs_det(M, nr);
}

} // namespace

double alexander_eval(const DiagramCode& code, std::complex<double> t) {
    if (std::abs(std::abs(t) - 1.0) > 1e-9)
        throw std::invalid_argument("alexander_eval requires |t| = 1");
    const int m = static_cast<int>(code.crossings.size());
    return eval_deleting(code, t, m - 1, m - 1);
}

namespace detail {

double alexander_eval_deleting(const DiagramCode& code, std::complex<double> t, int row, int col) {
    return eval_deleting(code, t, row, col);
}

long long determinant_from_code(const DiagramCode& code) {
    const double v = alexander_eval(code, {-1.0, 0.0});
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
        throw SingularDiagram("determinant " + std::to_string(v) + " is not near an integer");
    return static_cast<long long>(r);
}

} // namespace detail

InvariantReport invariant_report(const Polygon& poly, int sample_count, Rng& rng) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    InvariantReport rep;
    rep.samples.resize(static_cast<std::size_t>(sample_count));
    // Sample points first: their values depend only on the rng stream, not
    // on how many draws the projection search consumes.
    for (auto& s : rep.samples) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        s.t = {std::cos(th), std::sin(th)};
    }
    const auto proj = project_generic(poly, rng);
    rep.crossing_count = static_cast<int>(proj.code.crossings.size());
    rep.determinant = detail::determinant_from_code(proj.code);
    for (auto& s : rep.samples) s.magnitude = alexander_eval(proj.code, s.t);
    return rep;
}

bool compare_invariants(const InvariantReport& a, const InvariantReport& b, double rel_tol) {
    if (a.samples.size() != b.samples.size())
        throw MismatchedSamples("sample counts differ");
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (a.samples[i].t.real() != b.samples[i].t.real() ||
            a.samples[i].t.imag() != b.samples[i].t.imag())
            throw MismatchedSamples("sample point " + std::to_string(i) + " differs");
    }
    if (a.determinant != b.determinant) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double ma = a.samples[i].magnitude, mb = b.samples[i].magnitude;
        if (ma < 1e-9 && mb < 1e-9) continue;  // both ~0: absolute agreement
        if (std::abs(ma - mb) > rel_tol * std::max(ma, mb)) return false;
    }
    return true;
}

long long knot_determinant(const Polygon& poly, Rng& rng) {
    return detail::determinant_from_code(project_generic(poly, rng).code);
}

} // namespace stickmin
