#include "cliffray/paraxial.hpp"

#include <cmath>

#include "cliffray/errors.hpp"

namespace cliffray {

SystemMatrix::SystemMatrix(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
    const double det = determinant();
    if (!(std::fabs(det - 1.0) <= kDeterminantTolerance)) {
        throw DeterminantViolation("system matrix must satisfy AD + BC = 1", det,
                                   {{"A", std::to_string(a)},
                                    {"B", std::to_string(b)},
                                    {"C", std::to_string(c)},
                                    {"D", std::to_string(d)}});
    }
}

SystemMatrix make_propagation(double s) { return SystemMatrix(1.0, s, 0.0, 1.0); }

// Entry arithmetic of [[A1,-iC1],[-iB1,D1]] * [[A2,-iC2],[-iB2,D2]] for the
// left-acting transpose convention; the ray traverses lhs before rhs.
SystemMatrix compose(const SystemMatrix& lhs, const SystemMatrix& rhs) {
    const double a = lhs.A() * rhs.A() - lhs.C() * rhs.B();
    const double c = lhs.A() * rhs.C() + lhs.C() * rhs.D();
    const double b = rhs.A() * lhs.B() + rhs.B() * lhs.D();
    const double d = lhs.D() * rhs.D() - lhs.B() * rhs.C();
    return SystemMatrix(a, b, c, d);
}

HeightAngleRay apply(const SystemMatrix& m, const HeightAngleRay& ray) {
    return {m.A() * ray.x + m.B() * ray.n_alpha, -m.C() * ray.x + m.D() * ray.n_alpha};
}

}  // namespace cliffray
