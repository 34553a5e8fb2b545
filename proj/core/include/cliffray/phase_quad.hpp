#pragma once

#include <array>

#include "cliffray/complex_vector.hpp"
#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"

namespace cliffray {

enum class PhaseSpace {
    // (e1, i e2) plane: height x against reduced angle n*alpha.
    height_angle,
    // (e3, e1) plane: reduced distance against height; vertices are real.
    distance_height,
};

// Differential quadrilateral in one of the two phase planes.  Vertices run
// counterclockwise; side12 = v2 - v1 and side23 = v3 - v2, and the figure is
// always a parallelogram (v4 = v1 + side23, closure within 1e-12).
// Distance-height quads have zero imaginary parts throughout.
struct PhaseQuad {
    PhaseSpace space = PhaseSpace::height_angle;
    std::array<ComplexVector, 4> vertices{};
    ComplexVector side12{};
    ComplexVector side23{};
};

struct QuadReport {
    double area = 0.0;
    double dot_measure = 0.0;
    // |dot_measure| <= 1e-9 * area
    bool is_rectangle = false;
    // Sign of the oriented-area coefficient (-e3 for height-angle quads,
    // e3e1 for distance-height quads); 0 flags a degenerate quad.
    int orientation_sign = 0;
};

inline constexpr double kRectangleTolerance = 1e-9;
inline constexpr double kQuadClosureTolerance = 1e-12;

// Rectangle with corners at x e1 + n_alpha i e2 and the three counterclockwise
// companions reached by +dx e1 and +dn_alpha i e2.
PhaseQuad object_rect_height_angle(double x, double n_alpha, double dx, double dn_alpha);

// Linearized image of a height-angle object rectangle: the base vertex maps
// through the exact ray transform, the sides through the Jacobian (A, B, -C,
// D).  The map is linear, so this equals the exact corner images.
PhaseQuad image_quad_height_angle(const SystemMatrix& m, const PhaseQuad& quad);

// area = |vector part of side12 side23|; dot_measure = scalar part of
// side12 * dagger(side23), reported raw (no sign normalization).
QuadReport quad_report_height_angle(const PhaseQuad& quad);

// Longitudinal rectangle with base corner -S e3 + x e1; the e3 side steps by
// dS and the e1 side by dx, counterclockwise.
PhaseQuad object_rect_distance_height(double S, double x, double dS, double dx);

// Linearized image parallelogram: base vertex S' e3 + x' e1, sides painted
// from the (dS, dx) parameter increments through MagnificationPartials.
// Unlike the height-angle case the underlying map is nonlinear, so this is
// the total-differential expansion, not the exact corner image.
PhaseQuad image_quad_distance_height(const BoxMatrix& box, const PhaseQuad& quad);

// dot_measure = side12 . side23; area = |side12 ^ side23|; orientation from
// the e3e1 bivector coefficient.
QuadReport quad_report_distance_height(const PhaseQuad& quad);

QuadReport quad_report(const PhaseQuad& quad);

// Exact corner images of the parameter rectangle [S, S+dS] x [x, x+dx], each
// corner pushed through the full Moebius map and painted as S' e3 + x' e1.
std::array<Vector3, 4> exact_corner_images_distance_height(const BoxMatrix& box, double S,
                                                           double x, double dS, double dx);

// Shoelace signed area in the (e3, e1) plane, centered to limit cancellation.
double signed_area_e3e1(const std::array<Vector3, 4>& poly);

// Largest corner displacement between the linearized image parallelogram and
// the exact corner images; shrinks as O(dS^2 + dx^2).
double linearization_gap_distance_height(const BoxMatrix& box, double S, double x, double dS,
                                         double dx);

}  // namespace cliffray
