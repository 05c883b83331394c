#include "stickmin/lattice_anneal.hpp"

#include <chrono>

#include "stickmin/verify.hpp"

namespace stickmin {

namespace {

constexpr std::uint64_t kVerifyStreamSalt = 0x7E51F1EDull;

const LatticePoint kUnitSteps[6] = {
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
};

int dot(const LatticePoint& a, const LatticePoint& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Mutable chain state used by the anneal loop; LatticePolygon invariants
// hold after every committed move by construction.
struct Chain {
    std::vector<LatticePoint> verts;
    OccupancyIndex occ;

    explicit Chain(const LatticePolygon& poly)
        : verts(poly.vertices().begin(), poly.vertices().end()), occ(poly) {}

    int size() const { return static_cast<int>(verts.size()); }
    const LatticePoint& at(int i) const {
        const int n = size();
        return verts[static_cast<std::size_t>(((i % n) + n) % n)];
    }
};

struct MovePlan {
    BfacfStatus status;
    bool spike_start = false, spike_end = false;
    LatticePoint u, v, u2, v2;
};

// Read-only feasibility check; commit_move performs the planned mutation.
MovePlan plan_move(const Chain& ch, const BfacfProposal& prop) {
    MovePlan plan{BfacfStatus::Accepted};
    const int e = prop.edge_index;
    plan.u = ch.at(e);
    plan.v = ch.at(e + 1);
    plan.u2 = plan.u + prop.face_direction;
    plan.v2 = plan.v + prop.face_direction;
    plan.spike_start = ch.at(e - 1) == plan.u2;
    plan.spike_end = ch.at(e + 2) == plan.v2;

    if (plan.spike_start && plan.spike_end) {
        if (ch.size() - 2 < 4) plan.status = BfacfStatus::RejectedTooSmall;
    } else if (plan.spike_start) {
        if (ch.occ.contains(plan.v2)) plan.status = BfacfStatus::RejectedSelfIntersection;
    } else if (plan.spike_end) {
        if (ch.occ.contains(plan.u2)) plan.status = BfacfStatus::RejectedSelfIntersection;
    } else {
        if (ch.occ.contains(plan.u2) || ch.occ.contains(plan.v2))
            plan.status = BfacfStatus::RejectedSelfIntersection;
    }
    return plan;
}

void commit_move(Chain& ch, const BfacfProposal& prop, const MovePlan& plan) {
    const int n = ch.size();
    const int i0 = ((prop.edge_index % n) + n) % n;
    const int i1 = (i0 + 1) % n;

    if (plan.spike_start && plan.spike_end) {
        ch.occ.erase(plan.u);
        ch.occ.erase(plan.v);
        std::vector<LatticePoint> out;
        out.reserve(static_cast<std::size_t>(n - 2));
        for (int k = 0; k < n; ++k)
            if (k != i0 && k != i1) out.push_back(ch.verts[static_cast<std::size_t>(k)]);
        ch.verts = std::move(out);
        for (int k = 0; k < ch.size(); ++k)
            ch.occ.set_index(ch.verts[static_cast<std::size_t>(k)], k);
    } else if (plan.spike_start) {
        ch.occ.erase(plan.u);
        ch.occ.insert(plan.v2, i0);
        ch.verts[static_cast<std::size_t>(i0)] = plan.v2;
    } else if (plan.spike_end) {
        ch.occ.erase(plan.v);
        ch.occ.insert(plan.u2, i1);
        ch.verts[static_cast<std::size_t>(i1)] = plan.u2;
    } else {
        std::vector<LatticePoint> out;
        out.reserve(static_cast<std::size_t>(n + 2));
        for (int k = 0; k <= i0; ++k) out.push_back(ch.verts[static_cast<std::size_t>(k)]);
        out.push_back(plan.u2);
        out.push_back(plan.v2);
        for (int k = i0 + 1; k < n; ++k) out.push_back(ch.verts[static_cast<std::size_t>(k)]);
        ch.verts = std::move(out);
        for (int k = 0; k < ch.size(); ++k)
            ch.occ.set_index(ch.verts[static_cast<std::size_t>(k)], k);
    }
}

BfacfProposal propose_on_chain(const Chain& ch, Rng& rng) {
    const int n = ch.size();
    const int e = rng.index(n);
    const LatticePoint step = ch.at(e + 1) - ch.at(e);

    LatticePoint perp[4];
    int count = 0;
    for (const auto& d : kUnitSteps)
        if (dot(d, step) == 0) perp[count++] = d;
    const LatticePoint d = perp[rng.index(4)];

    const bool spike_start = ch.at(e - 1) == ch.at(e) + d;
    const bool spike_end = ch.at(e + 2) == ch.at(e + 1) + d;
    const int delta = 2 - 2 * (static_cast<int>(spike_start) + static_cast<int>(spike_end));
    return {e, d, delta};
}

} // namespace

OccupancyIndex::OccupancyIndex(const LatticePolygon& poly) {
    int i = 0;
    for (const auto& v : poly.vertices()) insert(v, i++);
}

std::uint64_t OccupancyIndex::key(const LatticePoint& p) {
    // 21 bits per coordinate, biased; ample for chains grown from small seeds
    const std::uint64_t bias = 1u << 20;
    return ((static_cast<std::uint64_t>(p.x) + bias) << 42) |
           ((static_cast<std::uint64_t>(p.y) + bias) << 21) |
           (static_cast<std::uint64_t>(p.z) + bias);
}

BfacfProposal propose_bfacf(const LatticePolygon& poly, Rng& rng) {
    Chain ch(poly);
    return propose_on_chain(ch, rng);
}

BfacfResult apply_bfacf(const LatticePolygon& poly, const OccupancyIndex& occ,
                        const BfacfProposal& prop) {
    if (occ.size() != static_cast<std::size_t>(poly.size()))
        throw std::invalid_argument("occupancy index inconsistent with polygon");
    Chain ch(poly);
    const MovePlan plan = plan_move(ch, prop);
    if (plan.status != BfacfStatus::Accepted) return {plan.status, std::nullopt};
    commit_move(ch, prop, plan);
    return {BfacfStatus::Accepted, LatticePolygon(std::move(ch.verts))};
}

LatticePolygon anneal_lattice(const LatticePolygon& poly, const AnnealConfig& cfg, Rng& rng,
                              AnnealStats* stats) {
    if (!(cfg.p_grow > 0.0) || !(cfg.p_grow < 1.0))
        throw std::invalid_argument("p_grow must lie in (0,1)");
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    Chain ch(poly);
    LatticePolygon best = poly;
    long accepted = 0;

    const Rng verify_rng = rng.derive(kVerifyStreamSalt);
    long long det0 = 0;
    if (cfg.verify_every > 0) {
        Rng r = verify_rng;
        det0 = knot_determinant(lattice_to_polygon(poly), r);
    }

    const auto t0 = std::chrono::steady_clock::now();
    for (long iter = 0; iter < cfg.max_iters; ++iter) {
        if (cfg.time_budget_seconds > 0.0 && (iter & 1023) == 0) {
            const std::chrono::duration<double> used = std::chrono::steady_clock::now() - t0;
            if (used.count() > cfg.time_budget_seconds) break;
        }
        const BfacfProposal prop = propose_on_chain(ch, rng);
        const MovePlan plan = plan_move(ch, prop);
        if (plan.status != BfacfStatus::Accepted) continue;  // immediate rejection
        if (prop.delta_n > 0 && !rng.bernoulli(cfg.p_grow)) continue;
        commit_move(ch, prop, plan);
        ++accepted;
        if (ch.size() < best.size()) best = LatticePolygon(std::vector<LatticePoint>(ch.verts));
        if (cfg.verify_every > 0 && accepted % cfg.verify_every == 0) {
            Rng r = verify_rng;
            const long long det = knot_determinant(
                lattice_to_polygon(LatticePolygon(std::vector<LatticePoint>(ch.verts))), r);
            if (det != det0)
                throw VerificationFailed("lattice determinant changed from " +
                                         std::to_string(det0) + " to " + std::to_string(det));
        }
    }
    if (stats) {
        stats->proposed = cfg.max_iters;
        stats->accepted = accepted;
        stats->initial_edges = poly.size();
        stats->best_edges = best.size();
    }
    return best;
}

} // namespace stickmin
