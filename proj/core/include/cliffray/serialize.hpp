#pragma once

#include <string>
#include <string_view>

#include "cliffray/brackets.hpp"
#include "cliffray/cliffor.hpp"
#include "cliffray/errors.hpp"
#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"
#include "cliffray/phase_quad.hpp"

// Deterministic text emission: fixed field order, every real printed through
// one %.17g formatter, so identical inputs give byte-identical output.
namespace cliffray {

std::string format_real(double v);
std::string json_escape(std::string_view s);

std::string to_json(const HeightAngleRay& ray);
std::string to_json(const SystemMatrix& m);
std::string to_json(const BoxMatrix& box);
std::string to_json(const ImagingSolution& sol);
std::string to_json(const BracketReport& report);
std::string to_json(const QuadReport& report);
std::string to_json(const PhaseQuad& quad);

// {"error": name, "detail": text, "context": {...}}
std::string error_json(const Error& e);

std::string sweep_csv_header();
std::string sweep_csv_row(double S, double x, const BoxMatrix& box, double m_x,
                          const BracketReport& report);

// Human-readable multivector: nonzero terms joined with signs, e.g.
// "1 + 2 e1 - 0.5 e3e1"; "0" when all components vanish.
std::string format_cliffor(const Cliffor& a);

}  // namespace cliffray
