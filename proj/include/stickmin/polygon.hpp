#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stickmin/errors.hpp"
#include "stickmin/geom.hpp"

namespace stickmin {

/// Closed polygon in 3-space: edge i runs vertex i -> vertex (i+1) mod n.
/// The constructor enforces n >= 3 and finite coordinates; geometric
/// invariants (no zero edges, no non-adjacent edge contact, no doubled-back
/// spikes) are checked by validate().
class Polygon {
public:
    explicit Polygon(std::vector<Point3> vertices);

    int size() const { return static_cast<int>(vertices_.size()); }
    std::span<const Point3> vertices() const { return vertices_; }

    /// Vertex access with cyclic index wrapping.
    const Point3& vertex(int i) const {
        const int n = size();
        return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
    }

    Segment edge(int i) const { return {vertex(i), vertex(i + 1)}; }
    double edge_length(int i) const { return (vertex(i + 1) - vertex(i)).norm(); }

    void set_vertex(int i, const Point3& p);

private:
    std::vector<Point3> vertices_;
};

struct ValidationReport {
    bool valid = false;
    std::string violation;  // empty when valid
    int n = 0;
    double min_edge_length = 0.0;
    double max_edge_length = 0.0;
    std::optional<double> min_nonadjacent_distance;  // absent for n == 3
    bool clear_at_eps = false;                       // min nonadjacent distance > eps
};

ValidationReport validate(const Polygon& poly, double eps = 1e-9);

/// Throws InvalidPolygon naming the violated invariant.
void require_valid(const Polygon& poly, double eps = 1e-9);

/// mu(P): minimum distance over edge pairs sharing no vertex.
/// Empty for n == 3, where every pair of edges is adjacent.
std::optional<double> min_nonadjacent_edge_distance(const Polygon& poly);

/// As above but also reporting which edge pair attains the minimum
/// (0-indexed edge indices).
struct NonadjacentDistance {
    double distance;
    int edge_i, edge_j;
};
std::optional<NonadjacentDistance> min_nonadjacent_edge_distance_pair(const Polygon& poly);

struct LatticePoint {
    int x = 0, y = 0, z = 0;
    bool operator==(const LatticePoint&) const = default;
    LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y, z + o.z}; }
    LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

/// Closed self-avoiding cycle on the simple cubic lattice. The constructor
/// enforces all invariants: unit lattice steps, distinct vertices, n even
/// and n >= 4 (closure is implied by the cyclic representation).
class LatticePolygon {
public:
    explicit LatticePolygon(std::vector<LatticePoint> vertices);

    int size() const { return static_cast<int>(vertices_.size()); }
    std::span<const LatticePoint> vertices() const { return vertices_; }
    const LatticePoint& vertex(int i) const {
        const int n = size();
        return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
    }

private:
    std::vector<LatticePoint> vertices_;
};

Polygon lattice_to_polygon(const LatticePolygon& lp);

/// Fixed 24-edge self-avoiding lattice cycle of knot determinant 3.
LatticePolygon builtin_lattice_trefoil();

/// (p,q) curve on the torus R=2, r=1:
///   theta -> ((R + r cos(q theta)) cos(p theta),
///             (R + r cos(q theta)) sin(p theta),
///             r sin(q theta)),  theta = 2 pi k / samples.
/// Requires gcd(p,q)=1, 2 <= p < q, samples >= 8(p+q); throws DegenerateSeed
/// when the sampled polygon fails validation (raise samples).
Polygon torus_knot_seed(int p, int q, int samples);

/// Plain-text coordinate files: one vertex per line, three whitespace
/// separated reals in cyclic order; blank lines and '#' comments ignored.
/// write_polygon emits 17 significant digits so write-then-read is exact.
Polygon read_polygon(const std::filesystem::path& path);
void write_polygon(const Polygon& poly, const std::filesystem::path& path);

/// Same layout with integer fields.
LatticePolygon read_lattice_polygon(const std::filesystem::path& path);
void write_lattice_polygon(const LatticePolygon& poly, const std::filesystem::path& path);

} // namespace stickmin
