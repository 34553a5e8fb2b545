#pragma once

#include <functional>
#include <optional>

#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"

namespace cliffray {

struct PlanePoint {
    double q = 0.0;
    double p = 0.0;
};

// Any 2 -> 2 map (q,p) -> (F,G); must be evaluatable at the probe point and
// at the four central-difference stencil points.
using PlaneMap = std::function<PlanePoint(PlanePoint)>;

inline constexpr double kDefaultBracketStep = 1e-6;
inline constexpr double kStencilGuardTolerance = 1e-6;

// Central-difference Jacobian entries of a PlaneMap at (q, p) with step h.
struct StencilDerivatives {
    double Fq = 0.0;
    double Fp = 0.0;
    double Gq = 0.0;
    double Gp = 0.0;
};

StencilDerivatives central_jacobian(const PlaneMap& map, double q, double p, double h);

// Jacobian-determinant bracket Fq Gp - Fp Gq via central differences;
// equals 1 for symplectic maps.
double commutator_numeric(const PlaneMap& map, double q, double p, double h);

// Dot-product companion Fq Fp + Gp Gq via central differences; vanishes when
// originally perpendicular phase-space edges stay perpendicular.
double anticommutator_numeric(const PlaneMap& map, double q, double p, double h);

struct BracketReport {
    double commutator_numeric = 0.0;
    double anticommutator_numeric = 0.0;
    std::optional<double> commutator_analytic;
    std::optional<double> anticommutator_analytic;
    double max_discrepancy = 0.0;
    double step = 0.0;
};

// Numeric-only report; step h = h0 * max(1, |q|, |p|).
BracketReport numeric_brackets(const PlaneMap& map, double q, double p,
                               double h0 = kDefaultBracketStep);

// Brackets of the exact linear ray map at a probe ray.  Analytic commutator
// is AD + BC (1 by the matrix invariant); analytic anticommutator is
// -(AB - CD).  The reported numeric anticommutator is the negative of the
// generic pattern above: the closed forms come from the scalar part of the
// side12 * dagger(side23) edge product, which carries a leading minus
// relative to the plain Fq Fp + Gp Gq stencil value.
BracketReport height_angle_brackets(const SystemMatrix& m, const HeightAngleRay& probe,
                                    double h0 = kDefaultBracketStep);

// Brackets of the exact Moebius imaging map (S, x) -> (S', x').  Analytic
// commutator is -m_x^3 (area orientation reversal); analytic anticommutator
// is -m_x^3 M12 x, with the same negation convention as the height-angle
// report.  Rejects probes whose stencil comes within kStencilGuardTolerance
// (relative) of the imaging singularity.
BracketReport distance_height_brackets(const BoxMatrix& box, double object_distance,
                                       double object_height,
                                       double h0 = kDefaultBracketStep);

}  // namespace cliffray
