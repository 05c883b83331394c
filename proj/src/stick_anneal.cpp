#include "stickmin/stick_anneal.hpp"

#include <chrono>
#include <cmath>

#include "stickmin/verify.hpp"

namespace stickmin {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr std::uint64_t kVerifyStreamSalt = 0x7E51F1EDull;

bool near_unit(double len) { return std::abs(len - 1.0) <= kUnitTol; }

std::vector<Point3> copy_vertices(const Polygon& poly) {
    return {poly.vertices().begin(), poly.vertices().end()};
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

} // namespace

MoveOutcome fold_move(const Polygon& poly, int i, double angle, double eps) {
    const Point3 o = poly.vertex(i - 1);
    const Point3 a = poly.vertex(i);
    const Point3 p = poly.vertex(i + 1);
    if (!((p - o).norm2() > 0.0)) return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Point3 a2 = rotate_about_axis(a, o, p, angle);
    if (!a2.finite()) return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Triangle tris[2] = {{o, a, a2}, {p, a, a2}};
    const int excluded[1] = {wrap(i, poly.size())};
    if (sweep_clearance(tris, poly.vertices(), excluded, eps) == Clearance::Blocked)
        return {MoveStatus::RejectedTriangleCheck, std::nullopt};

    auto verts = copy_vertices(poly);
    verts[static_cast<std::size_t>(wrap(i, poly.size()))] = a2;
    return {MoveStatus::Accepted, Polygon(std::move(verts))};
}

MoveOutcome shrink_move(const Polygon& poly, int i, double plane_angle, double eps) {
    const int n = poly.size();
    if (n < 4) return {MoveStatus::RejectedPrecondition, std::nullopt};
    const Point3 o = poly.vertex(i - 1);
    const Point3 a = poly.vertex(i);
    const Point3 b = poly.vertex(i + 1);
    const Point3 p = poly.vertex(i + 2);

    if (!near_unit((a - o).norm()) || !near_unit((b - a).norm()) || !near_unit((p - b).norm()))
        return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Vec3 op = p - o;
    const double d = op.norm();
    if (d > 2.0 || !(d > 0.0)) return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Vec3 u = op / d;
    Vec3 e1, e2;
    orthonormal_frame(u, e1, e2);
    const Vec3 r = e1 * std::cos(plane_angle) + e2 * std::sin(plane_angle);
    const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
    const Point3 c = (o + p) * 0.5 + r * h;

    const Triangle tris[3] = {{o, a, c}, {a, b, c}, {b, c, p}};
    const int excluded[2] = {wrap(i, n), wrap(i + 1, n)};
    if (sweep_clearance(tris, poly.vertices(), excluded, eps) == Clearance::Blocked)
        return {MoveStatus::RejectedTriangleCheck, std::nullopt};

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(n - 1));
    const int ia = wrap(i, n), ib = wrap(i + 1, n);
    for (int k = 0; k < n; ++k) {
        if (k == ib) continue;
        if (k == ia)
            verts.push_back(c);
        else
            verts.push_back(poly.vertex(k));
    }
    return {MoveStatus::Accepted, Polygon(std::move(verts))};
}

MoveOutcome grow_move(const Polygon& poly, int i, double eps) {
    const int n = poly.size();
    const Point3 o = poly.vertex(i - 1);
    const Point3 c = poly.vertex(i);
    const Point3 p = poly.vertex(i + 1);

    const Vec3 op = p - o;
    const double d = op.norm();
    if (d > 3.0 || !(d > 0.0)) return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Vec3 u = op / d;
    const Vec3 oc = c - o;
    const Vec3 w_raw = oc - u * oc.dot(u);
    const double scale = std::max(1.0, d);
    if (w_raw.norm() <= 1e-12 * scale)  // collinear: the plane is undefined
        return {MoveStatus::RejectedPrecondition, std::nullopt};
    const Vec3 w = w_raw.normalized();

    const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * (d - 1.0) * (d - 1.0)));
    const Point3 a = o + u * (0.5 * (d - 1.0)) + w * h;
    const Point3 b = a + u;

    const Triangle tris[3] = {{o, a, c}, {a, b, c}, {b, c, p}};
    const int excluded[1] = {wrap(i, n)};
    if (sweep_clearance(tris, poly.vertices(), excluded, eps) == Clearance::Blocked)
        return {MoveStatus::RejectedTriangleCheck, std::nullopt};

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(n + 1));
    const int ic = wrap(i, n);
    for (int k = 0; k < n; ++k) {
        if (k == ic) {
            verts.push_back(a);
            verts.push_back(b);
        } else {
            verts.push_back(poly.vertex(k));
        }
    }
    return {MoveStatus::Accepted, Polygon(std::move(verts))};
}

MoveOutcome collapse_move(const Polygon& poly, int i, double eps) {
    const int n = poly.size();
    if (n < 4) return {MoveStatus::RejectedPrecondition, std::nullopt};
    const Point3 o = poly.vertex(i - 1);
    const Point3 c = poly.vertex(i);
    const Point3 p = poly.vertex(i + 1);

    if ((p - o).norm2() <= 0.125) return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Triangle tris[1] = {{o, c, p}};
    const int excluded[1] = {wrap(i, n)};
    if (sweep_clearance(tris, poly.vertices(), excluded, eps) == Clearance::Blocked)
        return {MoveStatus::RejectedTriangleCheck, std::nullopt};

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(n - 1));
    const int ic = wrap(i, n);
    for (int k = 0; k < n; ++k)
        if (k != ic) verts.push_back(poly.vertex(k));

    // deleting c must not leave the new edge (o,p) doubled back onto a neighbor
    Polygon out(std::move(verts));
    const int io = wrap(i - 1, out.size());
    for (int k : {io - 1, io}) {
        const Vec3 e0 = out.vertex(k + 1) - out.vertex(k);
        const Vec3 e1 = out.vertex(k + 2) - out.vertex(k + 1);
        if (e0.cross(e1) == Vec3{} && e0.dot(e1) < 0.0)
            return {MoveStatus::RejectedPrecondition, std::nullopt};
    }
    return {MoveStatus::Accepted, std::move(out)};
}

MoveOutcome inflate_move(const Polygon& poly, int edge_index, const Vec3& r, double t, double u,
                         double eps) {
    const int n = poly.size();
    const Point3 o = poly.vertex(edge_index);
    const Point3 p = poly.vertex(edge_index + 1);
    const Vec3 op = p - o;
    const double len = op.norm();

    if (t < -0.5 || t > 1.5 || u < 0.0 || u > 1.0)
        return {MoveStatus::RejectedPrecondition, std::nullopt};
    if (std::abs(r.norm() - 1.0) > 1e-9 || std::abs(r.dot(op)) > 1e-9 * len)
        return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Point3 c = o + op * t + r * u;
    // c on the edge's line is a zero-area spike
    const Vec3 perp = (c - o) - op * ((c - o).dot(op) / (len * len));
    if (perp.norm() <= 1e-12 * std::max(1.0, len))
        return {MoveStatus::RejectedPrecondition, std::nullopt};

    const Triangle tris[1] = {{o, p, c}};
    const int skipped[1] = {wrap(edge_index, n)};
    if (detail::sweep_check(tris, poly.vertices(), {}, skipped, eps) == Clearance::Blocked)
        return {MoveStatus::RejectedTriangleCheck, std::nullopt};

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(n + 1));
    const int io = wrap(edge_index, n);
    for (int k = 0; k < n; ++k) {
        verts.push_back(poly.vertex(k));
        if (k == io) verts.push_back(c);
    }
    return {MoveStatus::Accepted, Polygon(std::move(verts))};
}

namespace {

enum class StageKind { Unit, Free };

Polygon run_stage(StageKind stage, const Polygon& input, const StageConfig& cfg, Rng& rng,
                  StageStats* stats, const MoveObserver* observer) {
    if (!(cfg.p_grow > 0.0) || !(cfg.p_grow < 1.0))
        throw std::invalid_argument("p_grow must lie in (0,1)");
    if (!(cfg.w_fold >= 0.0 && cfg.w_decrease >= 0.0 && cfg.w_increase >= 0.0))
        throw std::invalid_argument("move weights must be nonnegative");
    const double wsum = cfg.w_fold + cfg.w_decrease + cfg.w_increase;
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("move weights must sum to 1");

    if (stage == StageKind::Unit) {
        for (int k = 0; k < input.size(); ++k)
            if (!near_unit(input.edge_length(k)))
                throw std::invalid_argument("unit stage requires unit-length edges");
    }

    Polygon cur = input;
    Polygon best = input;
    long accepted = 0;

    const Rng verify_rng = rng.derive(kVerifyStreamSalt);
    long long det0 = 0;
    if (cfg.verify_every > 0) {
        Rng r = verify_rng;
        det0 = knot_determinant(input, r);
    }

    const auto t0 = std::chrono::steady_clock::now();
    for (long iter = 0; iter < cfg.max_iters; ++iter) {
        if (cfg.time_budget_seconds > 0.0 && (iter & 255) == 0) {
            const std::chrono::duration<double> used = std::chrono::steady_clock::now() - t0;
            if (used.count() > cfg.time_budget_seconds) break;
        }
        const double pick = rng.uniform();
        MoveKind kind;
        MoveOutcome out{MoveStatus::RejectedPrecondition, std::nullopt};
        int delta_n = 0;
        if (pick < cfg.w_fold) {
            kind = MoveKind::Fold;
            const int i = rng.index(cur.size());
            const double angle = M_PI - rng.uniform() * 2.0 * M_PI;  // (-pi, pi]
            out = fold_move(cur, i, angle, cfg.eps);
        } else if (pick < cfg.w_fold + cfg.w_decrease) {
            kind = stage == StageKind::Unit ? MoveKind::Shrink : MoveKind::Collapse;
            const int i = rng.index(cur.size());
            delta_n = -1;
            out = stage == StageKind::Unit
                      ? shrink_move(cur, i, rng.uniform(0.0, 2.0 * M_PI), cfg.eps)
                      : collapse_move(cur, i, cfg.eps);
        } else {
            kind = stage == StageKind::Unit ? MoveKind::Grow : MoveKind::Inflate;
            const int i = rng.index(cur.size());
            delta_n = +1;
            if (stage == StageKind::Unit) {
                out = grow_move(cur, i, cfg.eps);
            } else {
                const Vec3 op = cur.vertex(i + 1) - cur.vertex(i);
                const double len = op.norm();
                if (len > 0.0) {
                    Vec3 e1, e2;
                    orthonormal_frame(op / len, e1, e2);
                    const double phi = rng.uniform(0.0, 2.0 * M_PI);
                    const Vec3 r = e1 * std::cos(phi) + e2 * std::sin(phi);
                    const double t = rng.uniform(-0.5, 1.5);
                    const double uu = rng.uniform();
                    out = inflate_move(cur, i, r, t, uu, cfg.eps);
                }
            }
        }

        if (out.status == MoveStatus::Accepted && delta_n > 0 && !rng.bernoulli(cfg.p_grow)) {
            out = {MoveStatus::RejectedMetropolis, std::nullopt};
        }
        if (observer && *observer) {
            (*observer)({kind, out.status, cur.size(),
                         out.status == MoveStatus::Accepted ? &*out.polygon : nullptr});
        }
        if (out.status != MoveStatus::Accepted) continue;

        cur = std::move(*out.polygon);
        ++accepted;
        if (cur.size() < best.size()) best = cur;
        if (cfg.verify_every > 0 && accepted % cfg.verify_every == 0) {
            Rng r = verify_rng;
            const long long det = knot_determinant(cur, r);
            if (det != det0)
                throw VerificationFailed("determinant changed from " + std::to_string(det0) +
                                         " to " + std::to_string(det));
        }
    }

    if (stats) {
        stats->proposed = cfg.max_iters;
        stats->accepted = accepted;
        stats->initial_edges = input.size();
        stats->best_edges = best.size();
    }
    return best;
}

} // namespace

Polygon run_unit_stage(const Polygon& poly, const StageConfig& cfg, Rng& rng, StageStats* stats,
                       const MoveObserver* observer) {
    return run_stage(StageKind::Unit, poly, cfg, rng, stats, observer);
}

Polygon run_free_stage(const Polygon& poly, const StageConfig& cfg, Rng& rng, StageStats* stats,
                       const MoveObserver* observer) {
    return run_stage(StageKind::Free, poly, cfg, rng, stats, observer);
}

} // namespace stickmin
