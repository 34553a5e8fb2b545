#include "cliffray/imaging.hpp"

#include <cmath>

#include "cliffray/errors.hpp"

namespace cliffray {

BoxMatrix::BoxMatrix(double m11, double m12, double m21, double m22)
    : m11_(m11), m12_(m12), m21_(m21), m22_(m22) {
    const double det = determinant();
    if (!(std::fabs(det - 1.0) <= kDeterminantTolerance)) {
        throw DeterminantViolation("box matrix must satisfy M11 M22 + M12 M21 = 1", det,
                                   {{"M11", std::to_string(m11)},
                                    {"M12", std::to_string(m12)},
                                    {"M21", std::to_string(m21)},
                                    {"M22", std::to_string(m22)}});
    }
}

double imaging_denominator(const BoxMatrix& box, double object_distance) {
    const double den = box.m12() * object_distance - box.m22();
    const double scale = std::fabs(box.m22()) + std::fabs(box.m12() * object_distance);
    if (std::fabs(den) <= kImagingSingularityTolerance * scale) {
        throw ImageAtInfinity(object_distance, den);
    }
    return den;
}

SystemMatrix elements_from_box(const BoxMatrix& box, double object_distance,
                               double image_distance) {
    const double s = object_distance;
    const double sp = image_distance;
    const double a = box.m11() - box.m12() * sp;
    const double b = box.m21() + box.m22() * sp + box.m11() * s - box.m12() * s * sp;
    const double c = box.m12();
    const double d = box.m22() - box.m12() * s;
    return SystemMatrix(a, b, c, d);
}

double image_distance(const BoxMatrix& box, double object_distance) {
    const double den = imaging_denominator(box, object_distance);
    return (box.m11() * object_distance + box.m21()) / den;
}

double transverse_magnification(const BoxMatrix& box, double object_distance) {
    return -1.0 / imaging_denominator(box, object_distance);
}

ImagingSolution solve_imaging(const BoxMatrix& box, double object_distance,
                              double object_height) {
    ImagingSolution out;
    out.S = object_distance;
    out.x = object_height;
    const double den = imaging_denominator(box, object_distance);
    out.S_prime = (box.m11() * object_distance + box.m21()) / den;
    out.m_x = -1.0 / den;
    out.x_prime = out.m_x * object_height;
    return out;
}

// Differentiating x' = -x/(M12 S - M22) in S gives +M12 x m^2; the
// finite-difference cross-checks pin this sign.
MagnificationPartials magnification_partials(const BoxMatrix& box, double object_distance,
                                             double object_height) {
    const double m = transverse_magnification(box, object_distance);
    MagnificationPartials out;
    out.dSp_dS = -m * m;
    out.dSp_dx = 0.0;
    out.dxp_dS = m * m * box.m12() * object_height;
    out.dxp_dx = m;
    return out;
}

}  // namespace cliffray
