#include "cliffray/errors.hpp"

#include <cstdio>

namespace cliffray {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Error::Context with_determinant(Error::Context context, double determinant) {
    context.emplace_back("determinant", num(determinant));
    return context;
}

}  // namespace

DeterminantViolation::DeterminantViolation(const std::string& detail, double determinant,
                                           Context context)
    : Error("DeterminantViolation", detail, with_determinant(std::move(context), determinant)),
      determinant_(determinant) {}

ImageAtInfinity::ImageAtInfinity(double object_distance, double denominator)
    : Error("ImageAtInfinity",
            "imaging denominator vanished; the image is at infinity",
            {{"object_distance", num(object_distance)}, {"denominator", num(denominator)}}),
      object_distance_(object_distance),
      denominator_(denominator) {}

StencilNearSingularity::StencilNearSingularity(double stencil_distance, double denominator,
                                               double step)
    : Error("StencilNearSingularity",
            "finite-difference stencil point too close to the imaging singularity",
            {{"stencil_distance", num(stencil_distance)},
             {"denominator", num(denominator)},
             {"step", num(step)}}),
      stencil_distance_(stencil_distance),
      denominator_(denominator),
      step_(step) {}

GradeOutOfRange::GradeOutOfRange(int grade)
    : Error("GradeOutOfRange", "grade must be 0, 1, 2, or 3",
            {{"grade", std::to_string(grade)}}),
      grade_(grade) {}

namespace {

Error::Context syntax_context(std::size_t position, const std::string& expected) {
    Error::Context context{{"position", std::to_string(position)}};
    if (!expected.empty()) context.emplace_back("expected", expected);
    return context;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, const std::string& detail,
                         const std::string& expected)
    : Error("SyntaxError", detail, syntax_context(position, expected)),
      position_(position) {}

}  // namespace cliffray
