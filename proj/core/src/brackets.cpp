#include "cliffray/brackets.hpp"

#include <cmath>

#include "cliffray/errors.hpp"

namespace cliffray {
namespace {

double scaled_step(double h0, double q, double p) {
    return h0 * std::fmax(1.0, std::fmax(std::fabs(q), std::fabs(p)));
}

double max_numeric_discrepancy(const BracketReport& r) {
    double d = 0.0;
    if (r.commutator_analytic) {
        d = std::fmax(d, std::fabs(r.commutator_numeric - *r.commutator_analytic));
    }
    if (r.anticommutator_analytic) {
        d = std::fmax(d, std::fabs(r.anticommutator_numeric - *r.anticommutator_analytic));
    }
    return d;
}

}  // namespace

StencilDerivatives central_jacobian(const PlaneMap& map, double q, double p, double h) {
    const PlanePoint q_plus = map({q + h, p});
    const PlanePoint q_minus = map({q - h, p});
    const PlanePoint p_plus = map({q, p + h});
    const PlanePoint p_minus = map({q, p - h});
    StencilDerivatives d;
    d.Fq = (q_plus.q - q_minus.q) / (2.0 * h);
    d.Gq = (q_plus.p - q_minus.p) / (2.0 * h);
    d.Fp = (p_plus.q - p_minus.q) / (2.0 * h);
    d.Gp = (p_plus.p - p_minus.p) / (2.0 * h);
    return d;
}

double commutator_numeric(const PlaneMap& map, double q, double p, double h) {
    const StencilDerivatives d = central_jacobian(map, q, p, h);
    return d.Fq * d.Gp - d.Fp * d.Gq;
}

double anticommutator_numeric(const PlaneMap& map, double q, double p, double h) {
    const StencilDerivatives d = central_jacobian(map, q, p, h);
    return d.Fq * d.Fp + d.Gp * d.Gq;
}

BracketReport numeric_brackets(const PlaneMap& map, double q, double p, double h0) {
    BracketReport report;
    report.step = scaled_step(h0, q, p);
    const StencilDerivatives d = central_jacobian(map, q, p, report.step);
    report.commutator_numeric = d.Fq * d.Gp - d.Fp * d.Gq;
    report.anticommutator_numeric = d.Fq * d.Fp + d.Gp * d.Gq;
    return report;
}

BracketReport height_angle_brackets(const SystemMatrix& m, const HeightAngleRay& probe,
                                    double h0) {
    BracketReport report;
    report.step = scaled_step(h0, probe.x, probe.n_alpha);
    const PlaneMap map = [&m](PlanePoint in) {
        const HeightAngleRay out = apply(m, {in.q, in.p});
        return PlanePoint{out.x, out.n_alpha};
    };
    const StencilDerivatives d = central_jacobian(map, probe.x, probe.n_alpha, report.step);
    report.commutator_numeric = d.Fq * d.Gp - d.Fp * d.Gq;
    report.anticommutator_numeric = -(d.Fq * d.Fp + d.Gp * d.Gq);
    report.commutator_analytic = m.A() * m.D() + m.B() * m.C();
    report.anticommutator_analytic = -(m.A() * m.B() - m.C() * m.D());
    report.max_discrepancy = max_numeric_discrepancy(report);
    return report;
}

BracketReport distance_height_brackets(const BoxMatrix& box, double object_distance,
                                       double object_height, double h0) {
    BracketReport report;
    report.step = scaled_step(h0, object_distance, object_height);

    // Center first: an exactly singular probe is ImageAtInfinity, not a
    // stencil problem.
    imaging_denominator(box, object_distance);
    for (double s : {object_distance - report.step, object_distance,
                     object_distance + report.step}) {
        const double den = box.m12() * s - box.m22();
        const double scale = std::fabs(box.m22()) + std::fabs(box.m12() * s);
        if (std::fabs(den) < kStencilGuardTolerance * scale) {
            throw StencilNearSingularity(s, den, report.step);
        }
    }

    const PlaneMap map = [&box](PlanePoint in) {
        const ImagingSolution sol = solve_imaging(box, in.q, in.p);
        return PlanePoint{sol.S_prime, sol.x_prime};
    };
    const StencilDerivatives d =
        central_jacobian(map, object_distance, object_height, report.step);
    report.commutator_numeric = d.Fq * d.Gp - d.Fp * d.Gq;
    report.anticommutator_numeric = -(d.Fq * d.Fp + d.Gp * d.Gq);

    const double m = transverse_magnification(box, object_distance);
    report.commutator_analytic = -m * m * m;
    report.anticommutator_analytic = -m * m * m * box.m12() * object_height;
    report.max_discrepancy = max_numeric_discrepancy(report);
    return report;
}

}  // namespace cliffray
