#pragma once

#include "cliffray/cliffor.hpp"

namespace cliffray {

// Vector with a bivector-valued imaginary part: re + i*im, the shape every
// phase-space point takes in this algebra.
struct ComplexVector {
    Vector3 re{};
    Vector3 im{};

    constexpr ComplexVector() = default;
    constexpr ComplexVector(const Vector3& re_, const Vector3& im_) : re(re_), im(im_) {}

    constexpr ComplexVector operator+(const ComplexVector& o) const {
        return {re + o.re, im + o.im};
    }
    constexpr ComplexVector operator-(const ComplexVector& o) const {
        return {re - o.re, im - o.im};
    }
    constexpr ComplexVector operator-() const { return {-re, -im}; }
    constexpr ComplexVector operator*(double k) const { return {re * k, im * k}; }
    friend constexpr ComplexVector operator*(double k, const ComplexVector& v) { return v * k; }
};

constexpr Cliffor to_cliffor(const ComplexVector& r) {
    return {0.0, r.re, r.im, 0.0};
}

// The four grade components of a product of two complex vectors; g2 and g3
// hold the coefficients of the bivector i*g2 and pseudoscalar i*g3 parts.
struct GradeParts {
    double g0 = 0.0;
    Vector3 g1{};
    Vector3 g2{};
    double g3 = 0.0;

    constexpr Cliffor to_cliffor() const { return {g0, g1, g2, g3}; }
};

// Grades of (a + i b)(c + i d).
constexpr GradeParts product_parts(const ComplexVector& r, const ComplexVector& rp) {
    const Vector3 &a = r.re, &b = r.im, &c = rp.re, &d = rp.im;
    GradeParts g;
    g.g0 = dot(a, c) - dot(b, d);
    g.g1 = -cross(a, d) - cross(b, c);
    g.g2 = cross(a, c) - cross(b, d);
    g.g3 = dot(a, d) + dot(b, c);
    return g;
}

// Grades of r * dagger(r') = (a + i b)(-c + i d).
constexpr GradeParts product_parts_dagger(const ComplexVector& r, const ComplexVector& rp) {
    const Vector3 &a = r.re, &b = r.im, &c = rp.re, &d = rp.im;
    GradeParts g;
    g.g0 = -dot(a, c) - dot(b, d);
    g.g1 = -cross(a, d) + cross(b, c);
    g.g2 = -cross(a, c) - cross(b, d);
    g.g3 = dot(a, d) - dot(b, c);
    return g;
}

struct PhaseReadout {
    double area = 0.0;         // |vector part of r r'|, the parallelogram area
    double dot_measure = 0.0;  // -(scalar part of r dagger(r')), zero iff perpendicular
};

// For two phase-space points: the vector grade of r r' carries the enclosed
// area, and the scalar grade of r dagger(r') vanishes exactly when the two
// are perpendicular in the phase-plane sense.
inline PhaseReadout phase_area_and_angle(const ComplexVector& r, const ComplexVector& rp) {
    PhaseReadout out;
    const GradeParts plain = product_parts(r, rp);
    const GradeParts dag = product_parts_dagger(r, rp);
    out.area = norm(plain.g1);
    out.dot_measure = -dag.g0;
    return out;
}

}  // namespace cliffray
