#include "cliffray/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cliffray/errors.hpp"
#include "cliffray/serialize.hpp"

namespace cliffray {
namespace {

struct PlanePos {
    double u = 0.0;
    double w = 0.0;
};

PlanePos project(PhaseSpace space, const ComplexVector& vertex) {
    if (space == PhaseSpace::height_angle) {
        return {vertex.re.x, vertex.im.y};
    }
    return {vertex.re.z, vertex.re.x};
}

constexpr double kCanvas = 560.0;
constexpr double kMargin = 60.0;

}  // namespace

std::string svg_quad_pair(const PhaseQuad& object, const PhaseQuad& image) {
    if (object.space != image.space) {
        throw Error("MismatchedPhaseSpaces",
                    "object and image quads live in different phase planes", {});
    }
    const PhaseSpace space = object.space;
    const char* space_name = space == PhaseSpace::height_angle ? "height_angle" : "distance_height";
    const char* horizontal_label = space == PhaseSpace::height_angle ? "e1" : "e3";
    const char* vertical_label = space == PhaseSpace::height_angle ? "i e2" : "e1";

    std::array<PlanePos, 8> pts;
    for (int k = 0; k < 4; ++k) {
        pts[k] = project(space, object.vertices[static_cast<std::size_t>(k)]);
        pts[k + 4] = project(space, image.vertices[static_cast<std::size_t>(k)]);
    }

    // The origin is always in frame so both axes stay visible.
    double u_min = 0.0, u_max = 0.0, w_min = 0.0, w_max = 0.0;
    for (const PlanePos& pos : pts) {
        u_min = std::min(u_min, pos.u);
        u_max = std::max(u_max, pos.u);
        w_min = std::min(w_min, pos.w);
        w_max = std::max(w_max, pos.w);
    }
    const double extent = std::max({u_max - u_min, w_max - w_min, 1e-12});
    const double inner = kCanvas - 2.0 * kMargin;
    const double scale = inner / extent;

    const double u_mid = 0.5 * (u_min + u_max);
    const double w_mid = 0.5 * (w_min + w_max);
    const auto px = [&](double u) { return kCanvas / 2.0 + scale * (u - u_mid); };
    const auto py = [&](double w) { return kCanvas / 2.0 - scale * (w - w_mid); };

    const auto point_list = [&](const PhaseQuad& quad) {
        std::string out;
        for (int k = 0; k < 4; ++k) {
            const PlanePos pos = project(space, quad.vertices[static_cast<std::size_t>(k)]);
            if (k > 0) out += ' ';
            out += format_real(px(pos.u));
            out += ',';
            out += format_real(py(pos.w));
        }
        return out;
    };

    const std::string canvas = format_real(kCanvas);
    const std::string origin_x = format_real(px(0.0));
    const std::string origin_y = format_real(py(0.0));

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + canvas + "\" height=\"" +
           canvas + "\" viewBox=\"0 0 " + canvas + " " + canvas + "\">\n";
    svg += "  <desc>" + std::string(space_name) + " phase plane, y-up, horizontal " +
           horizontal_label + ", vertical " + vertical_label + ", 1 unit = " +
           format_real(scale) + " px</desc>\n";
    svg += "  <line x1=\"0\" y1=\"" + origin_y + "\" x2=\"" + canvas + "\" y2=\"" + origin_y +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    svg += "  <line x1=\"" + origin_x + "\" y1=\"0\" x2=\"" + origin_x + "\" y2=\"" + canvas +
           "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + format_real(kCanvas - kMargin / 2.0) + "\" y=\"" +
           format_real(py(0.0) - 8.0) + "\" font-size=\"14\">" + horizontal_label + "</text>\n";
    svg += "  <text x=\"" + format_real(px(0.0) + 8.0) + "\" y=\"" +
           format_real(kMargin / 2.0) + "\" font-size=\"14\">" + vertical_label + "</text>\n";
    svg += "  <polygon points=\"" + point_list(object) +
           "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"2\"/>\n";
    svg += "  <polygon points=\"" + point_list(image) +
           "\" fill=\"none\" stroke=\"#c4453c\" stroke-width=\"2\"/>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace cliffray
