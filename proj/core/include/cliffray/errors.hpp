#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliffray {

// Every domain failure carries a stable machine-readable name plus a flat
// key/value context, so the CLI can emit it as a structured error object.
class Error : public std::runtime_error {
public:
    using Context = std::vector<std::pair<std::string, std::string>>;

    Error(std::string name, const std::string& detail, Context context = {})
        : std::runtime_error(detail), name_(std::move(name)), context_(std::move(context)) {}

    const std::string& name() const noexcept { return name_; }
    const Context& context() const noexcept { return context_; }

private:
    std::string name_;
    Context context_;
};

// Constructing a system or box matrix whose sum-determinant is not 1.
class DeterminantViolation : public Error {
public:
    DeterminantViolation(const std::string& detail, double determinant, Context context = {});
    double determinant() const noexcept { return determinant_; }

private:
    double determinant_;
};

// The imaging denominator vanished: the image recedes to infinity.
class ImageAtInfinity : public Error {
public:
    ImageAtInfinity(double object_distance, double denominator);
    double object_distance() const noexcept { return object_distance_; }
    double denominator() const noexcept { return denominator_; }

private:
    double object_distance_;
    double denominator_;
};

// A finite-difference stencil point fell too close to the imaging singularity
// for the numeric derivative to be trustworthy.
class StencilNearSingularity : public Error {
public:
    StencilNearSingularity(double stencil_distance, double denominator, double step);
    double stencil_distance() const noexcept { return stencil_distance_; }
    double denominator() const noexcept { return denominator_; }
    double step() const noexcept { return step_; }

private:
    double stencil_distance_;
    double denominator_;
    double step_;
};

class GradeOutOfRange : public Error {
public:
    explicit GradeOutOfRange(int grade);
    int grade() const noexcept { return grade_; }

private:
    int grade_;
};

// Lexing or parsing failure; position is a 1-based character offset into the
// source (one past the end for unexpected end of input).  `expected`
// describes the token set that would have been accepted there.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& detail, const std::string& expected = "");
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Expression evaluation failure (unknown identifier, non-vector operand of a
// vector-only operator, non-finite arithmetic).
class EvalError : public Error {
public:
    EvalError(std::string name, const std::string& detail, Context context = {})
        : Error(std::move(name), detail, std::move(context)) {}
};

}  // namespace cliffray
