#include "stickmin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "stickmin/verify.hpp"

namespace stickmin {

namespace {

struct Box {
    double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
};

} // namespace

void export_projection_svg(const Polygon& poly, Vec3 direction,
                           const std::filesystem::path& path) {
    const double dn = direction.norm();
    Vec3 dir = dn > 0.0 ? direction / dn : Vec3{0, 0, 1};

    std::optional<detail::PlanarDiagram> diagram = detail::try_project(poly, dir);
    if (!diagram) {
        // deterministic fallback directions: fixed-seed stream, independent
        // of the caller
        Rng fallback(0x5346C0DEull);
        for (int attempt = 0; attempt < 256 && !diagram; ++attempt) {
            const Vec3 jitter = random_unit_vector(fallback);
            const Vec3 mixed = dir + jitter * (0.02 * (1 + attempt));
            diagram = detail::try_project(poly, mixed.normalized());
        }
        if (!diagram) throw NoGenericProjection("no generic projection for svg export");
    }

    const auto& d = *diagram;
    const int n = poly.size();

    Box box{d.xs[0], d.ys[0], d.xs[0], d.ys[0]};
    for (int i = 0; i < n; ++i) {
        box.lo_x = std::min(box.lo_x, d.xs[i]);
        box.lo_y = std::min(box.lo_y, d.ys[i]);
        box.hi_x = std::max(box.hi_x, d.xs[i]);
        box.hi_y = std::max(box.hi_y, d.ys[i]);
    }
    const double span = std::max(box.hi_x - box.lo_x, box.hi_y - box.lo_y);
    const double scale = span > 0.0 ? 480.0 / span : 1.0;
    const double margin = 16.0;
    auto tx = [&](double x) { return margin + (x - box.lo_x) * scale; };
    auto ty = [&](double y) { return margin + (box.hi_y - y) * scale; };  // y up

    // break radius around an under-pass, in projected units
    const double gap = 0.018 * std::max(span, 1e-300);

    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    char buf[256];
    const double w = (box.hi_x - box.lo_x) * scale + 2 * margin;
    const double h = (box.hi_y - box.lo_y) * scale + 2 * margin;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  w, h, w, h);
    out << buf;
    out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n";

    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const double ax = d.xs[i], ay = d.ys[i];
        const double bx = d.xs[j], by = d.ys[j];
        const double len = std::hypot(bx - ax, by - ay);

        // under-pass params on this edge, from the crossing records
        std::vector<double> cuts;
        for (const auto& c : d.crossings)
            if (c.edge_under == i) cuts.push_back(c.s_under);
        std::sort(cuts.begin(), cuts.end());

        // split [0,1] into visible spans, removing a gap around each cut
        double begin = 0.0;
        std::vector<std::pair<double, double>> spans;
        for (double s : cuts) {
            const double ds = len > 0.0 ? gap / len : 0.0;
            spans.emplace_back(begin, std::max(begin, s - ds));
            begin = std::min(1.0, s + ds);
        }
        spans.emplace_back(begin, 1.0);

        for (const auto& [s0, s1] : spans) {
            if (s1 - s0 <= 1e-9) continue;
            std::snprintf(buf, sizeof(buf), "<path d=\"M %.3f %.3f L %.3f %.3f\"/>\n",
                          tx(ax + s0 * (bx - ax)), ty(ay + s0 * (by - ay)),
                          tx(ax + s1 * (bx - ax)), ty(ay + s1 * (by - ay)));
            out << buf;
        }
    }
    out << "</g>\n</svg>\n";
}

} // namespace stickmin
