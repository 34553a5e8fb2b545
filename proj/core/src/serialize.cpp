#include "cliffray/serialize.hpp"

#include <cstdio>

namespace cliffray {
namespace {

void append_field(std::string& out, const char* key, double v, bool first = false) {
    if (!first) out += ',';
    out += '"';
    out += key;
    out += "\":";
    out += format_real(v);
}

void append_optional(std::string& out, const char* key, const std::optional<double>& v) {
    out += ",\"";
    out += key;
    out += "\":";
    out += v ? format_real(*v) : "null";
}

void append_triple(std::string& out, const Vector3& v) {
    out += '[';
    out += format_real(v.x);
    out += ',';
    out += format_real(v.y);
    out += ',';
    out += format_real(v.z);
    out += ']';
}

void append_complex_vector(std::string& out, const ComplexVector& v) {
    out += "{\"re\":";
    append_triple(out, v.re);
    out += ",\"im\":";
    append_triple(out, v.im);
    out += '}';
}

}  // namespace

std::string format_real(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string to_json(const HeightAngleRay& ray) {
    std::string out = "{";
    append_field(out, "x", ray.x, true);
    append_field(out, "n_alpha", ray.n_alpha);
    out += '}';
    return out;
}

std::string to_json(const SystemMatrix& m) {
    std::string out = "{";
    append_field(out, "A", m.A(), true);
    append_field(out, "B", m.B());
    append_field(out, "C", m.C());
    append_field(out, "D", m.D());
    out += '}';
    return out;
}

std::string to_json(const BoxMatrix& box) {
    std::string out = "{";
    append_field(out, "M11", box.m11(), true);
    append_field(out, "M12", box.m12());
    append_field(out, "M21", box.m21());
    append_field(out, "M22", box.m22());
    out += '}';
    return out;
}

std::string to_json(const ImagingSolution& sol) {
    std::string out = "{";
    append_field(out, "S", sol.S, true);
    append_field(out, "S_prime", sol.S_prime);
    append_field(out, "x", sol.x);
    append_field(out, "x_prime", sol.x_prime);
    append_field(out, "m_x", sol.m_x);
    out += '}';
    return out;
}

std::string to_json(const BracketReport& report) {
    std::string out = "{";
    append_field(out, "commutator_numeric", report.commutator_numeric, true);
    append_field(out, "anticommutator_numeric", report.anticommutator_numeric);
    append_optional(out, "commutator_analytic", report.commutator_analytic);
    append_optional(out, "anticommutator_analytic", report.anticommutator_analytic);
    append_field(out, "max_discrepancy", report.max_discrepancy);
    append_field(out, "step", report.step);
    out += '}';
    return out;
}

std::string to_json(const QuadReport& report) {
    std::string out = "{";
    append_field(out, "area", report.area, true);
    append_field(out, "dot_measure", report.dot_measure);
    out += ",\"is_rectangle\":";
    out += report.is_rectangle ? "true" : "false";
    out += ",\"orientation_sign\":";
    out += std::to_string(report.orientation_sign);
    out += '}';
    return out;
}

std::string to_json(const PhaseQuad& quad) {
    const bool height_angle = quad.space == PhaseSpace::height_angle;
    std::string out = "{\"space\":\"";
    out += height_angle ? "height_angle" : "distance_height";
    out += "\",\"vertices\":[";
    for (int k = 0; k < 4; ++k) {
        if (k) out += ',';
        if (height_angle) {
            append_complex_vector(out, quad.vertices[k]);
        } else {
            append_triple(out, quad.vertices[k].re);
        }
    }
    out += "],\"side12\":";
    if (height_angle) {
        append_complex_vector(out, quad.side12);
    } else {
        append_triple(out, quad.side12.re);
    }
    out += ",\"side23\":";
    if (height_angle) {
        append_complex_vector(out, quad.side23);
    } else {
        append_triple(out, quad.side23.re);
    }
    out += '}';
    return out;
}

std::string error_json(const Error& e) {
    std::string out = "{\"error\":\"";
    out += json_escape(e.name());
    out += "\",\"detail\":\"";
    out += json_escape(e.what());
    out += "\",\"context\":{";
    bool first = true;
    for (const auto& [key, value] : e.context()) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += json_escape(key);
        out += "\":\"";
        out += json_escape(value);
        out += '"';
    }
    out += "}}";
    return out;
}

std::string sweep_csv_header() {
    return "S,x,M11,M12,M21,M22,m_x,commutator_analytic,commutator_numeric,"
           "anticommutator_analytic,anticommutator_numeric,max_discrepancy";
}

std::string sweep_csv_row(double S, double x, const BoxMatrix& box, double m_x,
                          const BracketReport& report) {
    std::string out;
    out += format_real(S);
    out += ',';
    out += format_real(x);
    out += ',';
    out += format_real(box.m11());
    out += ',';
    out += format_real(box.m12());
    out += ',';
    out += format_real(box.m21());
    out += ',';
    out += format_real(box.m22());
    out += ',';
    out += format_real(m_x);
    out += ',';
    out += format_real(report.commutator_analytic.value_or(0.0));
    out += ',';
    out += format_real(report.commutator_numeric);
    out += ',';
    out += format_real(report.anticommutator_analytic.value_or(0.0));
    out += ',';
    out += format_real(report.anticommutator_numeric);
    out += ',';
    out += format_real(report.max_discrepancy);
    return out;
}

std::string format_cliffor(const Cliffor& a) {
    struct Term {
        double value;
        const char* unit;
    };
    const Term terms[] = {
        {a.s, ""},       {a.v.x, "e1"},   {a.v.y, "e2"},   {a.v.z, "e3"},
        {a.b.x, "e2e3"}, {a.b.y, "e3e1"}, {a.b.z, "e1e2"}, {a.p, "i"},
    };
    std::string out;
    for (const Term& t : terms) {
        if (t.value == 0.0) continue;
        if (out.empty()) {
            out += format_real(t.value);
        } else {
            out += t.value < 0.0 ? " - " : " + ";
            out += format_real(t.value < 0.0 ? -t.value : t.value);
        }
        if (*t.unit) {
            out += ' ';
            out += t.unit;
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace cliffray
