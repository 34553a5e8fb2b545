#pragma once

#include "cliffray/paraxial.hpp"

namespace cliffray {

// Inner optical system between its entrance and exit planes, in the same
// structured complex form as SystemMatrix: [[M11, -iM12], [-iM21, M22]] with
// sum-determinant M11 M22 + M12 M21 = 1.
class BoxMatrix {
public:
    static constexpr double kDeterminantTolerance = 1e-9;

    BoxMatrix(double m11, double m12, double m21, double m22);

    double m11() const noexcept { return m11_; }
    double m12() const noexcept { return m12_; }
    double m21() const noexcept { return m21_; }
    double m22() const noexcept { return m22_; }

    double determinant() const noexcept { return m11_ * m22_ + m12_ * m21_; }

private:
    double m11_, m12_, m21_, m22_;
};

// The box embedded as a system matrix between its own reference planes.
inline SystemMatrix as_system(const BoxMatrix& box) {
    return SystemMatrix(box.m11(), box.m21(), box.m12(), box.m22());
}

// Relative guard for the imaging denominator M12 S - M22.
inline constexpr double kImagingSingularityTolerance = 1e-12;

// M12 S - M22; throws ImageAtInfinity when it vanishes relative to its terms.
double imaging_denominator(const BoxMatrix& box, double object_distance);

// Object at reduced distance S in front of the entrance plane, image at
// reduced distance S' behind the exit plane: the full system is propagation(S)
// then the box then propagation(S').
SystemMatrix elements_from_box(const BoxMatrix& box, double object_distance,
                               double image_distance);

// Moebius map S' = (M11 S + M21) / (M12 S - M22), the S' that kills the B
// element of the composed system.
double image_distance(const BoxMatrix& box, double object_distance);

// Transverse magnification m_x = -1 / (M12 S - M22).
double transverse_magnification(const BoxMatrix& box, double object_distance);

// Box whose Moebius map is the exact functional inverse of this box's
// (diagonal entries swapped; sum-determinant is preserved).
inline BoxMatrix inverse_imaging_box(const BoxMatrix& box) {
    return BoxMatrix(box.m22(), box.m12(), box.m21(), box.m11());
}

struct ImagingSolution {
    double S = 0.0;
    double S_prime = 0.0;
    double x = 0.0;
    double x_prime = 0.0;
    double m_x = 0.0;
};

// Image distance, image height x' = m_x x, and the magnification in one go.
ImagingSolution solve_imaging(const BoxMatrix& box, double object_distance,
                              double object_height);

// Jacobian of (S, x) -> (S', x').  S' is independent of x, and the
// longitudinal magnification is the negative square of the transverse one.
struct MagnificationPartials {
    double dSp_dS = 0.0;
    double dSp_dx = 0.0;
    double dxp_dS = 0.0;
    double dxp_dx = 0.0;
};

MagnificationPartials magnification_partials(const BoxMatrix& box, double object_distance,
                                             double object_height);

}  // namespace cliffray
