#include <cstdio>
#include <sstream>

#include "contour/immersion.hpp"

namespace contour {

std::string render_scan_svg(const SampledImmersion& s, const TangentScanResult& r) {
    const double panel = 320, pad = 20;
    const double width = s.charts.size() * (panel + pad) + pad, height = panel + 2 * pad + 16;
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", width,
                  height);
    out << buf << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        const Chart& c = s.charts[ci];
        const double x0 = pad + ci * (panel + pad), y0 = pad + 16;
        std::snprintf(buf, sizeof buf,
                      "  <rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#999999\"/>\n",
                      x0, y0, panel, panel);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "  <text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\">%s (u, v)</text>\n", x0,
                      y0 - 4, c.name.c_str());
        out << buf;
        auto dot = [&](const LocusPoint& p, const char* color, double radius, const char* cls) {
            if (p.chart != ci) return;
            double x = x0 + panel * (p.param[0] - c.lo[0]) / (c.hi[0] - c.lo[0]);
            double y = y0 + panel * (1 - (p.param[1] - c.lo[1]) / (c.hi[1] - c.lo[1]));
            std::snprintf(buf, sizeof buf, "  <circle class=\"%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\"/>\n",
                          cls, x, y, radius, color);
            out << buf;
        };
        for (const auto& p : r.tangent.points) dot(p, "#d62728", 2.2, "tangent");
        for (const auto& p : r.fold.points) dot(p, "#1f77b4", 1.2, "fold");
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace contour
