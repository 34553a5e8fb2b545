#pragma once

#include "cliffray/complex_vector.hpp"

namespace cliffray {

// Paraxial ray at a reference plane: height x and reduced angle n*alpha.
struct HeightAngleRay {
    double x = 0.0;
    double n_alpha = 0.0;
};

// Phase-space embedding of a ray: x e1 + (n alpha) i e2.
constexpr ComplexVector to_complex_vector(const HeightAngleRay& r) {
    return {{r.x, 0.0, 0.0}, {0.0, r.n_alpha, 0.0}};
}

// Ray-transfer matrix in the structured complex form [[A, -iC], [-iB, D]];
// only the four reals are stored, the -i factors are implicit.  The matrix
// invariant is the sum-determinant AD + BC = 1 (a sum, not a difference,
// because of the -i weights on the off-diagonal), enforced at construction.
class SystemMatrix {
public:
    static constexpr double kDeterminantTolerance = 1e-9;

    SystemMatrix(double a, double b, double c, double d);

    double A() const noexcept { return a_; }
    double B() const noexcept { return b_; }
    double C() const noexcept { return c_; }
    double D() const noexcept { return d_; }

    double determinant() const noexcept { return a_ * d_ + b_ * c_; }

private:
    double a_, b_, c_, d_;
};

inline SystemMatrix make_system(double a, double b, double c, double d) {
    return SystemMatrix(a, b, c, d);
}

// Free propagation over reduced distance s: [[1, 0], [-is, 1]].
SystemMatrix make_propagation(double s);

// Matrix product in ray traversal order: the ray passes through lhs first.
SystemMatrix compose(const SystemMatrix& lhs, const SystemMatrix& rhs);

inline SystemMatrix operator*(const SystemMatrix& lhs, const SystemMatrix& rhs) {
    return compose(lhs, rhs);
}

// x' = A x + B (n alpha),  n'alpha' = -C x + D (n alpha).
HeightAngleRay apply(const SystemMatrix& m, const HeightAngleRay& ray);

// Jacobian of the map (x, n alpha) -> (x', n'alpha').
struct RayJacobian {
    double dxp_dx = 0.0;
    double dxp_dna = 0.0;
    double dnap_dx = 0.0;
    double dnap_dna = 0.0;
};

inline RayJacobian differentials(const SystemMatrix& m) {
    return {m.A(), m.B(), -m.C(), m.D()};
}

}  // namespace cliffray
