#include "cliffray/phase_quad.hpp"

#include <cmath>

#include "cliffray/errors.hpp"

namespace cliffray {
namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw Error("NonpositiveDifferential",
                    std::string("differential ") + name + " must be positive",
                    {{name, std::to_string(value)}});
    }
}

PhaseQuad from_base_and_sides(PhaseSpace space, const ComplexVector& base,
                              const ComplexVector& s12, const ComplexVector& s23) {
    PhaseQuad quad;
    quad.space = space;
    quad.vertices = {base, base + s12, base + s12 + s23, base + s23};
    quad.side12 = s12;
    quad.side23 = s23;
    return quad;
}

int sign_or_zero(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

QuadReport report_from(double area, double dot_measure, double oriented_coefficient) {
    QuadReport report;
    report.area = area;
    report.dot_measure = dot_measure;
    report.is_rectangle = std::fabs(dot_measure) <= kRectangleTolerance * area;
    report.orientation_sign = sign_or_zero(oriented_coefficient);
    return report;
}

}  // namespace

PhaseQuad object_rect_height_angle(double x, double n_alpha, double dx, double dn_alpha) {
    require_positive(dx, "dx");
    require_positive(dn_alpha, "dn_alpha");
    const ComplexVector base{{x, 0, 0}, {0, n_alpha, 0}};
    const ComplexVector s12{{dx, 0, 0}, {}};
    const ComplexVector s23{{}, {0, dn_alpha, 0}};
    return from_base_and_sides(PhaseSpace::height_angle, base, s12, s23);
}

PhaseQuad image_quad_height_angle(const SystemMatrix& m, const PhaseQuad& quad) {
    const HeightAngleRay base{quad.vertices[0].re.x, quad.vertices[0].im.y};
    const double dx = quad.side12.re.x;
    const double dna = quad.side23.im.y;
    const HeightAngleRay image_base = apply(m, base);
    const RayJacobian j = differentials(m);
    const ComplexVector base_cv{{image_base.x, 0, 0}, {0, image_base.n_alpha, 0}};
    const ComplexVector s12{{j.dxp_dx * dx, 0, 0}, {0, j.dnap_dx * dx, 0}};
    const ComplexVector s23{{j.dxp_dna * dna, 0, 0}, {0, j.dnap_dna * dna, 0}};
    return from_base_and_sides(PhaseSpace::height_angle, base_cv, s12, s23);
}

QuadReport quad_report_height_angle(const PhaseQuad& quad) {
    const GradeParts plain = product_parts(quad.side12, quad.side23);
    const GradeParts daggered = product_parts_dagger(quad.side12, quad.side23);
    // In-plane sides put the whole vector part along e3; the oriented-area
    // coefficient is the -e3 component.
    return report_from(norm(plain.g1), daggered.g0, -plain.g1.z);
}

PhaseQuad object_rect_distance_height(double S, double x, double dS, double dx) {
    require_positive(dS, "dS");
    require_positive(dx, "dx");
    const ComplexVector base{{x, 0, -S}, {}};
    const ComplexVector s12{{0, 0, dS}, {}};
    const ComplexVector s23{{dx, 0, 0}, {}};
    return from_base_and_sides(PhaseSpace::distance_height, base, s12, s23);
}

PhaseQuad image_quad_distance_height(const BoxMatrix& box, const PhaseQuad& quad) {
    const double S = -quad.vertices[0].re.z;
    const double x = quad.vertices[0].re.x;
    const double dS = quad.side12.re.z;
    const double dx = quad.side23.re.x;
    const ImagingSolution sol = solve_imaging(box, S, x);
    const MagnificationPartials mp = magnification_partials(box, S, x);
    const ComplexVector base{{sol.x_prime, 0, sol.S_prime}, {}};
    const ComplexVector s12{{mp.dxp_dS * dS, 0, mp.dSp_dS * dS}, {}};
    const ComplexVector s23{{mp.dxp_dx * dx, 0, mp.dSp_dx * dx}, {}};
    return from_base_and_sides(PhaseSpace::distance_height, base, s12, s23);
}

QuadReport quad_report_distance_height(const PhaseQuad& quad) {
    const Vector3 a = quad.side12.re;
    const Vector3 b = quad.side23.re;
    const Vector3 w = cross(a, b);
    // w.y is the e3e1 bivector coefficient in the (e2e3, e3e1, e1e2) basis.
    return report_from(norm(w), dot(a, b), w.y);
}

QuadReport quad_report(const PhaseQuad& quad) {
    return quad.space == PhaseSpace::height_angle ? quad_report_height_angle(quad)
                                                  : quad_report_distance_height(quad);
}

std::array<Vector3, 4> exact_corner_images_distance_height(const BoxMatrix& box, double S,
                                                           double x, double dS, double dx) {
    const std::array<std::pair<double, double>, 4> corners = {{
        {S, x},
        {S + dS, x},
        {S + dS, x + dx},
        {S, x + dx},
    }};
    std::array<Vector3, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        const ImagingSolution sol = solve_imaging(box, corners[k].first, corners[k].second);
        out[k] = {sol.x_prime, 0.0, sol.S_prime};
    }
    return out;
}

double signed_area_e3e1(const std::array<Vector3, 4>& poly) {
    // Coordinates (u, w) = (e3, e1) so counterclockwise in the e3e1 sense is
    // positive.  Centering on the first vertex keeps the shoelace terms small
    // when the polygon sits far from the origin.
    double area2 = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t n = (k + 1) % 4;
        const double uk = poly[k].z - poly[0].z;
        const double wk = poly[k].x - poly[0].x;
        const double un = poly[n].z - poly[0].z;
        const double wn = poly[n].x - poly[0].x;
        area2 += uk * wn - un * wk;
    }
    return 0.5 * area2;
}

double linearization_gap_distance_height(const BoxMatrix& box, double S, double x, double dS,
                                         double dx) {
    const PhaseQuad object = object_rect_distance_height(S, x, dS, dx);
    const PhaseQuad linear = image_quad_distance_height(box, object);
    const std::array<Vector3, 4> exact =
        exact_corner_images_distance_height(box, S, x, dS, dx);
    double gap = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        gap = std::fmax(gap, norm(exact[k] - linear.vertices[k].re));
    }
    return gap;
}

}  // namespace cliffray
