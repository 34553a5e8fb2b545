#pragma once

#include <cmath>
#include <initializer_list>

namespace cliffray {

struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vector3() = default;
    constexpr Vector3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vector3 operator-() const { return {-x, -y, -z}; }
    constexpr Vector3 operator*(double k) const { return {k * x, k * y, k * z}; }
    friend constexpr Vector3 operator*(double k, const Vector3& v) { return v * k; }
};

constexpr double dot(const Vector3& a, const Vector3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vector3 cross(const Vector3& a, const Vector3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vector3& v) { return std::sqrt(dot(v, v)); }

// General element of the geometric algebra of 3D space: scalar, vector,
// bivector, pseudoscalar.  Bivector coefficients b = (b.x, b.y, b.z) are taken
// on the basis (e2e3, e3e1, e1e2), i.e. the bivector part is i*(b.x e1 +
// b.y e2 + b.z e3) with i = e1e2e3, so a bivector's coefficients equal the
// hodge dual's vector coefficients.  p is the coefficient of i.
struct Cliffor {
    double s = 0.0;
    Vector3 v{};
    Vector3 b{};
    double p = 0.0;

    constexpr Cliffor() = default;
    constexpr Cliffor(double s_, const Vector3& v_, const Vector3& b_, double p_)
        : s(s_), v(v_), b(b_), p(p_) {}

    static constexpr Cliffor scalar(double s) { return {s, {}, {}, 0.0}; }
    static constexpr Cliffor vector(const Vector3& v) { return {0.0, v, {}, 0.0}; }
    static constexpr Cliffor bivector(const Vector3& b) { return {0.0, {}, b, 0.0}; }
    static constexpr Cliffor pseudoscalar(double p) { return {0.0, {}, {}, p}; }

    static constexpr Cliffor e1() { return vector({1, 0, 0}); }
    static constexpr Cliffor e2() { return vector({0, 1, 0}); }
    static constexpr Cliffor e3() { return vector({0, 0, 1}); }
    static constexpr Cliffor i() { return pseudoscalar(1.0); }

    constexpr Cliffor operator+(const Cliffor& o) const {
        return {s + o.s, v + o.v, b + o.b, p + o.p};
    }
    constexpr Cliffor operator-(const Cliffor& o) const {
        return {s - o.s, v - o.v, b - o.b, p - o.p};
    }
    constexpr Cliffor operator-() const { return {-s, -v, -b, -p}; }
    constexpr Cliffor operator*(double k) const { return {k * s, v * k, b * k, k * p}; }
    friend constexpr Cliffor operator*(double k, const Cliffor& a) { return a * k; }
};

// Full geometric product.  With A = s + v + i b + i p and B = s' + v' + i b' +
// i p', expanding and splitting by grade (i commutes, i*i = -1, vv' = v.v' +
// i (v x v')) gives the component formulas below.
constexpr Cliffor geometric_product(const Cliffor& a, const Cliffor& c) {
    Cliffor out;
    out.s = a.s * c.s + dot(a.v, c.v) - dot(a.b, c.b) - a.p * c.p;
    out.v = a.s * c.v + c.s * a.v - cross(a.v, c.b) - cross(a.b, c.v) - a.p * c.b - c.p * a.b;
    out.b = a.s * c.b + c.s * a.b + cross(a.v, c.v) - cross(a.b, c.b) + a.p * c.v + c.p * a.v;
    out.p = a.s * c.p + c.s * a.p + dot(a.v, c.b) + dot(a.b, c.v);
    return out;
}

constexpr Cliffor operator*(const Cliffor& a, const Cliffor& b) {
    return geometric_product(a, b);
}

// Wedge of two 3D vectors: the pure bivector i (a x b).
constexpr Cliffor wedge(const Vector3& a, const Vector3& b) {
    return Cliffor::bivector(cross(a, b));
}

Cliffor grade(const Cliffor& a, int g);

// Spatial inversion: flips grades 1 and 3, fixes grades 0 and 2.  Distributes
// over geometric products without reversing factor order.
constexpr Cliffor dagger(const Cliffor& a) { return {a.s, -a.v, a.b, -a.p}; }

// Left multiplication by the pseudoscalar i.
constexpr Cliffor hodge_dual(const Cliffor& a) { return {-a.p, -a.b, a.v, a.s}; }

inline double max_abs(const Cliffor& a) {
    double m = std::fabs(a.s);
    for (double c : {a.v.x, a.v.y, a.v.z, a.b.x, a.b.y, a.b.z, a.p}) {
        m = std::fmax(m, std::fabs(c));
    }
    return m;
}

// Componentwise comparison with tolerance scaled by the larger operand
// magnitude (floored at 1 so it acts absolutely near zero).
inline bool approx_equal(const Cliffor& a, const Cliffor& b, double tol = 1e-12) {
    double scale = std::fmax(1.0, std::fmax(max_abs(a), max_abs(b)));
    return max_abs(a - b) <= tol * scale;
}

}  // namespace cliffray
