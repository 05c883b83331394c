#include "stickmin/polygon.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace stickmin {

Polygon::Polygon(std::vector<Point3> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
    for (const auto& v : vertices_) {
        if (!v.finite()) throw InvalidPolygon("non-finite vertex coordinate");
    }
}

void Polygon::set_vertex(int i, const Point3& p) {
    if (!p.finite()) throw InvalidPolygon("non-finite vertex coordinate");
    const int n = size();
    vertices_[static_cast<std::size_t>(((i % n) + n) % n)] = p;
}

ValidationReport validate(const Polygon& poly, double eps) {
    ValidationReport rep;
    rep.n = poly.size();
    const int n = rep.n;

    rep.min_edge_length = poly.edge_length(0);
    rep.max_edge_length = rep.min_edge_length;
    for (int i = 0; i < n; ++i) {
        const double len = poly.edge_length(i);
        rep.min_edge_length = std::min(rep.min_edge_length, len);
        rep.max_edge_length = std::max(rep.max_edge_length, len);
        if (!(len > 0.0)) {
            rep.violation = "zero-length edge " + std::to_string(i);
            return rep;
        }
    }
    for (int i = 0; i < n; ++i) {
        const Vec3 e0 = poly.vertex(i + 1) - poly.vertex(i);
        const Vec3 e1 = poly.vertex(i + 2) - poly.vertex(i + 1);
        if (e0.cross(e1) == Vec3{} && e0.dot(e1) < 0.0) {
            rep.violation = "doubled-back spike at vertex " + std::to_string((i + 1) % n);
            return rep;
        }
    }
    if (n >= 4) {
        const auto nd = min_nonadjacent_edge_distance_pair(poly);
        rep.min_nonadjacent_distance = nd->distance;
        if (!(nd->distance > 0.0)) {
            rep.violation = "non-adjacent edges " + std::to_string(nd->edge_i) + " and " +
                            std::to_string(nd->edge_j) + " intersect";
            return rep;
        }
        rep.clear_at_eps = nd->distance > eps;
    } else {
        rep.clear_at_eps = true;
    }
    rep.valid = true;
    return rep;
}

void require_valid(const Polygon& poly, double eps) {
    const auto rep = validate(poly, eps);
    if (!rep.valid) throw InvalidPolygon(rep.violation);
}

std::optional<NonadjacentDistance> min_nonadjacent_edge_distance_pair(const Polygon& poly) {
    const int n = poly.size();
    if (n < 4) return std::nullopt;
    NonadjacentDistance best{-1.0, -1, -1};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // adjacent edges share a vertex
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const double d = segment_segment_distance(poly.edge(i), poly.edge(j));
            if (best.edge_i < 0 || d < best.distance) best = {d, i, j};
        }
    }
    return best;
}

std::optional<double> min_nonadjacent_edge_distance(const Polygon& poly) {
    const auto nd = min_nonadjacent_edge_distance_pair(poly);
    if (!nd) return std::nullopt;
    return nd->distance;
}

LatticePolygon::LatticePolygon(std::vector<LatticePoint> vertices)
    : vertices_(std::move(vertices)) {
    const int n = static_cast<int>(vertices_.size());
    if (n < 4) throw InvalidPolygon("lattice polygon needs at least 4 vertices");
    if (n % 2 != 0) throw InvalidPolygon("lattice polygon length must be even");
    for (int i = 0; i < n; ++i) {
        const LatticePoint s = vertices_[static_cast<std::size_t>((i + 1) % n)] -
                               vertices_[static_cast<std::size_t>(i)];
        const int man = std::abs(s.x) + std::abs(s.y) + std::abs(s.z);
        if (man != 1) throw InvalidPolygon("step " + std::to_string(i) + " is not a unit lattice vector");
    }
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& v : vertices_) {
        if (!seen.insert({v.x, v.y, v.z}).second)
            throw InvalidPolygon("lattice polygon revisits a site");
    }
}

Polygon lattice_to_polygon(const LatticePolygon& lp) {
    std::vector<Point3> pts;
    pts.reserve(static_cast<std::size_t>(lp.size()));
    for (const auto& v : lp.vertices())
        pts.push_back({static_cast<double>(v.x), static_cast<double>(v.y),
                       static_cast<double>(v.z)});
    return Polygon(std::move(pts));
}

LatticePolygon builtin_lattice_trefoil() {
    // 24-edge self-avoiding trefoil on the simple cubic lattice
    // (minimal step number for the trefoil).
    static const LatticePoint coords[] = {
        {3, 2, 1}, {3, 2, 2}, {3, 3, 2}, {2, 3, 2}, {1, 3, 2}, {1, 2, 2},
        {1, 2, 1}, {1, 2, 0}, {1, 1, 0}, {1, 0, 0}, {1, 0, 1}, {1, 0, 2},
        {2, 0, 2}, {2, 1, 2}, {2, 2, 2}, {2, 2, 1}, {2, 3, 1}, {1, 3, 1},
        {0, 3, 1}, {0, 2, 1}, {0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1},
    };
    return LatticePolygon(std::vector<LatticePoint>(std::begin(coords), std::end(coords)));
}

Polygon torus_knot_seed(int p, int q, int samples) {
    if (!(2 <= p && p < q)) throw std::invalid_argument("torus knot requires 2 <= p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("torus knot requires gcd(p,q) = 1");
    if (samples < 8 * (p + q))
        throw std::invalid_argument("torus knot requires samples >= 8(p+q)");

    constexpr double R = 2.0, r = 1.0;
    std::vector<Point3> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
        const double rad = R + r * std::cos(q * th);
        pts.push_back({rad * std::cos(p * th), rad * std::sin(p * th), r * std::sin(q * th)});
    }
    Polygon poly(std::move(pts));
    const auto rep = validate(poly);
    if (!rep.valid) throw DegenerateSeed("torus seed invalid at " + std::to_string(samples) +
                                         " samples: " + rep.violation);
    return poly;
}

namespace {

// Shared reader: collects rows of 3 parsed fields, reporting 1-based line
// numbers in errors.
template <typename Field>
std::vector<std::array<Field, 3>> read_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<std::array<Field, 3>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        Field a, b, c;
        if (!(ss >> a)) {
            std::string leftover;
            if (ss.clear(), ss >> leftover)
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": unparseable field '" + leftover + "'");
            continue;  // blank or comment-only line
        }
        if (!(ss >> b >> c))
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected 3 coordinates");
        std::string extra;
        if (ss >> extra)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": trailing content '" + extra + "'");
        rows.push_back({a, b, c});
    }
    if (rows.empty()) throw ParseError(path.string() + ": no vertices");
    return rows;
}

} // namespace

Polygon read_polygon(const std::filesystem::path& path) {
    const auto rows = read_rows<double>(path);
    std::vector<Point3> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.push_back({r[0], r[1], r[2]});
    return Polygon(std::move(pts));
}

void write_polygon(const Polygon& poly, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    char buf[96];
    for (const auto& v : poly.vertices()) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
}

LatticePolygon read_lattice_polygon(const std::filesystem::path& path) {
    const auto rows = read_rows<long long>(path);
    std::vector<LatticePoint> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows)
        pts.push_back({static_cast<int>(r[0]), static_cast<int>(r[1]), static_cast<int>(r[2])});
    return LatticePolygon(std::move(pts));
}

void write_lattice_polygon(const LatticePolygon& poly, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (const auto& v : poly.vertices())
        out << v.x << ' ' << v.y << ' ' << v.z << '\n';
}

} // namespace stickmin
