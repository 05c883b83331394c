#include "stickmin/equilateral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stickmin {

namespace {

double max_unit_deviation(const Polygon& poly) {
    double dev = 0.0;
    for (int i = 0; i < poly.size(); ++i)
        dev = std::max(dev, std::abs(poly.edge_length(i) - 1.0));
    return dev;
}

} // namespace

EquilateralCertificate mr_certificate(const Polygon& poly) {
    if (poly.size() < 4)
        throw std::invalid_argument("mu is undefined for a triangle; need n >= 4");
    EquilateralCertificate cert;
    cert.n = poly.size();
    cert.mu = *min_nonadjacent_edge_distance(poly);
    cert.max_dev = max_unit_deviation(poly);
    cert.bound = std::min(cert.mu / cert.n, 0.25 * cert.mu * cert.mu);
    cert.holds = cert.max_dev < cert.bound;
    cert.margin = cert.max_dev > 0.0 ? cert.bound / cert.max_dev
                                     : std::numeric_limits<double>::infinity();
    return cert;
}

EqualizeResult equalize_edges(const Polygon& poly, double target_band, long max_iters, double eps,
                              Rng& rng) {
    Polygon cur = poly;
    const int n = cur.size();
    const int phase = rng.index(n);
    long iters = 0;

    double dev = max_unit_deviation(cur);
    while (iters < max_iters && dev > target_band) {
        bool any_accept = false;
        for (int k = 0; k < n && iters < max_iters; ++k) {
            ++iters;
            const int i = (phase + k) % n;
            const Point3 o = cur.vertex(i - 1);
            const Point3 a = cur.vertex(i);
            const Point3 p = cur.vertex(i + 1);

            const double lo = (a - o).norm();
            const double lp = (a - p).norm();
            const double local_before = std::max(std::abs(lo - 1.0), std::abs(lp - 1.0));
            if (local_before == 0.0) continue;

            const Vec3 op = p - o;
            const double d = op.norm();
            Point3 a2;
            if (d < 2.0 && d > 0.0) {
                // nearest point to a on the intersection circle of the unit
                // spheres about o and p
                const Vec3 u = op / d;
                const Point3 m = (o + p) * 0.5;
                const double rho = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
                Vec3 w = (a - m) - u * (a - m).dot(u);
                if (w.norm() <= 1e-12) {
                    Vec3 e1, e2;
                    orthonormal_frame(u, e1, e2);
                    w = e1;
                }
                a2 = m + w.normalized() * rho;
            } else {
                // no common circle: project onto the more deviant neighbor's
                // unit sphere
                const Point3 c1 = o + (a - o) / lo;
                const Point3 c2 = p + (a - p) / lp;
                const double dev1 = std::max(0.0, std::abs((c1 - p).norm() - 1.0));
                const double dev2 = std::max(0.0, std::abs((c2 - o).norm() - 1.0));
                a2 = dev1 <= dev2 ? c1 : c2;
            }

            const double local_after =
                std::max(std::abs((a2 - o).norm() - 1.0), std::abs((a2 - p).norm() - 1.0));
            if (local_after >= local_before) continue;
            if (a2 == a) continue;

            const Triangle tris[2] = {{o, a, a2}, {p, a, a2}};
            const int excluded[1] = {i};
            if (sweep_clearance(tris, cur.vertices(), excluded, eps) == Clearance::Blocked)
                continue;
            cur.set_vertex(i, a2);
            any_accept = true;
        }
        dev = max_unit_deviation(cur);
        if (!any_accept) break;
    }
    return {std::move(cur), dev, dev <= target_band, iters};
}

namespace detail {

CloseIterStats close_unit_vectors(std::vector<Vec3>& edges, double floor_target, int max_iters) {
    const int n = static_cast<int>(edges.size());
    for (auto& e : edges) e = e.normalized();

    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    int it = 0;
    double residual = 0.0;
    for (; it < max_iters; ++it) {
        Vec3 delta{};
        for (const auto& e : edges) delta += e;
        residual = delta.norm();
        if (residual <= floor_target) break;
        if (residual < best * (1.0 - 1e-3)) {
            best = residual;
            stall = 0;
        } else if (++stall > 8) {
            break;
        }
        const Vec3 step = delta / static_cast<double>(n);
        for (auto& e : edges) e = (e - step).normalized();
    }
    return {residual, it};
}

} // namespace detail

CloseResult normalize_and_close(const Polygon& poly, double tol, int max_iters) {
    const int n = poly.size();
    std::vector<Vec3> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec3 e = poly.vertex(i + 1) - poly.vertex(i);
        if (!(e.norm() > 0.0)) throw InvalidPolygon("zero-length edge " + std::to_string(i));
        edges.push_back(e);
    }

    // run to the fp noise floor so the closing edge absorbs only ~1 ulp
    const double floor_target = 1e-16 * n;
    const auto st = detail::close_unit_vectors(edges, floor_target, max_iters);
    if (st.residual > tol)
        throw NotConverged("closure defect " + std::to_string(st.residual) +
                           " above tolerance after " + std::to_string(st.iters) + " iterations");

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(n));
    Point3 v = poly.vertex(0);
    for (int i = 0; i < n; ++i) {
        verts.push_back(v);
        v += edges[static_cast<std::size_t>(i)];
    }
    Polygon out(std::move(verts));
    require_valid(out);

    Vec3 closure{};
    for (int i = 0; i < n; ++i) closure += out.vertex(i + 1) - out.vertex(i);
    return {std::move(out), closure.norm(), max_unit_deviation(out), st.iters};
}

} // namespace stickmin
