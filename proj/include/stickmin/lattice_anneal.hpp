#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "stickmin/polygon.hpp"
#include "stickmin/rng.hpp"

namespace stickmin {

/// Occupied-site index for constant-time self-intersection checks.
/// Holds exactly the polygon's vertices, mapping each site to its index.
class OccupancyIndex {
public:
    OccupancyIndex() = default;
    explicit OccupancyIndex(const LatticePolygon& poly);

    static std::uint64_t key(const LatticePoint& p);

    bool contains(const LatticePoint& p) const { return sites_.count(key(p)) != 0; }
    std::size_t size() const { return sites_.size(); }

    void insert(const LatticePoint& p, int index) { sites_[key(p)] = index; }
    void erase(const LatticePoint& p) { sites_.erase(key(p)); }
    void set_index(const LatticePoint& p, int index) { sites_[key(p)] = index; }
    std::optional<int> index_of(const LatticePoint& p) const {
        const auto it = sites_.find(key(p));
        if (it == sites_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::unordered_map<std::uint64_t, int> sites_;
};

/// One edge-across-a-face move. delta_n is determined by how many
/// backtracking spikes the translated edge cancels: 0 spikes -> +2,
/// 1 -> 0, 2 -> -2.
struct BfacfProposal {
    int edge_index = 0;
    LatticePoint face_direction;  // unit lattice vector orthogonal to the edge step
    int delta_n = 0;
};

enum class BfacfStatus { Accepted, RejectedSelfIntersection, RejectedTooSmall };

struct BfacfResult {
    BfacfStatus status;
    std::optional<LatticePolygon> polygon;  // present iff Accepted
};

/// Uniform edge, uniform perpendicular face direction.
BfacfProposal propose_bfacf(const LatticePolygon& poly, Rng& rng);

/// Applies the proposal if it keeps the cycle self-avoiding and at least
/// 4 edges long. The proposal must have been generated against this poly.
BfacfResult apply_bfacf(const LatticePolygon& poly, const OccupancyIndex& occ,
                        const BfacfProposal& prop);

struct AnnealConfig {
    double p_grow = 0.1;     // acceptance probability for +2 moves
    long max_iters = 100000;
    int verify_every = 10000;  // accepted moves between determinant checks; 0 disables
    double time_budget_seconds = 0.0;  // 0 disables the wall-clock cap
};

struct AnnealStats {
    long proposed = 0;
    long accepted = 0;
    int initial_edges = 0;
    int best_edges = 0;
};

/// Simulated annealing over BFACF moves with a fixed uphill acceptance
/// probability. Shrinking and neutral moves that keep the cycle
/// self-avoiding are always accepted. Returns the shortest polygon observed
/// during the run. When verify_every > 0, the knot determinant is checked
/// against the input's every verify_every accepted moves (VerificationFailed
/// on mismatch).
LatticePolygon anneal_lattice(const LatticePolygon& poly, const AnnealConfig& cfg, Rng& rng,
                              AnnealStats* stats = nullptr);

} // namespace stickmin
