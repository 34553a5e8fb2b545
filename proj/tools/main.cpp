#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cliffray/brackets.hpp"
#include "cliffray/dsl.hpp"
#include "cliffray/errors.hpp"
#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"
#include "cliffray/phase_quad.hpp"
#include "cliffray/serialize.hpp"
#include "cliffray/svg.hpp"

namespace {

using namespace cliffray;

// Bad flag values and inconsistent flag combinations; exits with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& text, std::size_t count,
                                const std::string& flag) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string piece = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t first = piece.find_first_not_of(" \t");
        const std::size_t last = piece.find_last_not_of(" \t");
        piece = first == std::string::npos ? "" : piece.substr(first, last - first + 1);
        if (piece.empty()) {
            throw UsageError(flag + ": empty component in '" + text + "'");
        }
        char* end = nullptr;
        const double value = std::strtod(piece.c_str(), &end);
        if (end != piece.c_str() + piece.size()) {
            throw UsageError(flag + ": '" + piece + "' is not a number");
        }
        out.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() != count) {
        throw UsageError(flag + ": expected " + std::to_string(count) +
                         " comma-separated numbers, got " + std::to_string(out.size()));
    }
    return out;
}

SystemMatrix matrix_from_flag(const std::string& text) {
    const std::vector<double> v = parse_reals(text, 4, "--matrix");
    return make_system(v[0], v[1], v[2], v[3]);
}

BoxMatrix box_from_flag(const std::string& text) {
    const std::vector<double> v = parse_reals(text, 4, "--box");
    return BoxMatrix(v[0], v[1], v[2], v[3]);
}

// Relative --out paths land in $CLIFFRAY_OUT_DIR when it is set.
void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::string path = out_path;
    if (out_path.front() != '/') {
        if (const char* dir = std::getenv("CLIFFRAY_OUT_DIR"); dir != nullptr && *dir != '\0') {
            path = std::string(dir) + "/" + out_path;
        }
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("OutputWriteFailed", "cannot open output path", {{"path", path}});
    }
    file << payload;
    file.flush();
    if (!file) {
        throw Error("OutputWriteFailed", "failed while writing output", {{"path", path}});
    }
}

// Expands "--config file" into the flags the file supplies. Lines are
// key=value with '#' comments; a key already given on the command line wins.
void apply_config_file(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) {
            path = args[k + 1];
            break;
        }
        if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
            break;
        }
    }
    if (path.empty()) return;
    std::ifstream file(path);
    if (!file) {
        throw UsageError("--config: cannot open '" + path + "'");
    }
    const auto trim = [](const std::string& text) {
        const std::size_t first = text.find_first_not_of(" \t\r");
        const std::size_t last = text.find_last_not_of(" \t\r");
        return first == std::string::npos ? std::string()
                                          : text.substr(first, last - first + 1);
    };
    const std::size_t given_count = args.size();  // flags appended below don't shadow later lines
    const auto given = [&args, given_count](const std::string& flag) {
        for (std::size_t k = 0; k < given_count; ++k) {
            if (args[k] == flag || args[k].rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    std::string line;
    for (int number = 1; std::getline(file, line); ++number) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--config: line " + std::to_string(number) +
                             ": expected key=value");
        }
        const std::string flag = "--" + trim(line.substr(0, eq));
        if (given(flag)) continue;
        args.push_back(flag);
        args.push_back(trim(line.substr(eq + 1)));
    }
}

std::string quads_json(const PhaseQuad& object, const PhaseQuad& image) {
    std::string out = "{\"object\":" + to_json(object) + ",\"image\":" + to_json(image) +
                      ",\"object_report\":" + to_json(quad_report(object)) +
                      ",\"image_report\":" + to_json(quad_report(image));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Paraxial ray optics in the geometric algebra of 3D space"};
    app.name("cliffray");
    app.require_subcommand(1);
    std::string config_path;

    // trace
    auto* trace = app.add_subcommand("trace", "Apply a system matrix to a height-angle ray");
    trace->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string trace_matrix, trace_ray, trace_format = "json", trace_out;
    trace->add_option("--matrix", trace_matrix, "System matrix A,B,C,D")->required();
    trace->add_option("--ray", trace_ray, "Ray x,n_alpha")->required();
    trace->add_option("--format", trace_format)->check(CLI::IsMember({"json"}));
    trace->add_option("--out", trace_out, "Output file (default: stdout)");

    // image
    auto* image = app.add_subcommand("image", "Solve the imaging condition for a box matrix");
    image->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string image_box, image_format = "json", image_out;
    double image_S = 0.0, image_x = 1.0;
    image->add_option("--box", image_box, "Box matrix M11,M12,M21,M22")->required();
    image->add_option("--S", image_S, "Object distance")->required();
    image->add_option("--x", image_x, "Object height")->capture_default_str();
    image->add_option("--format", image_format)->check(CLI::IsMember({"json"}));
    image->add_option("--out", image_out, "Output file (default: stdout)");

    // brackets
    auto* brackets = app.add_subcommand(
        "brackets", "Poisson bracket report for a system matrix or an imaging box");
    brackets->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string br_matrix, br_box, br_probe = "1,0.5", br_format = "json", br_out;
    double br_S = 0.0, br_x = 0.0, br_step = kDefaultBracketStep;
    auto* br_matrix_opt = brackets->add_option("--matrix", br_matrix, "System matrix A,B,C,D");
    auto* br_box_opt = brackets->add_option("--box", br_box, "Box matrix M11,M12,M21,M22");
    auto* br_S_opt = brackets->add_option("--S", br_S, "Object distance (box mode)");
    auto* br_x_opt = brackets->add_option("--x", br_x, "Object height (box mode)");
    brackets->add_option("--probe", br_probe, "Stencil center x,n_alpha (matrix mode)")->capture_default_str();
    brackets->add_option("--step", br_step, "Base finite-difference step")->capture_default_str();
    brackets->add_option("--format", br_format)->check(CLI::IsMember({"json"}));
    brackets->add_option("--out", br_out, "Output file (default: stdout)");

    // quads
    auto* quads = app.add_subcommand(
        "quads", "Object rectangle and image parallelogram in a phase plane");
    quads->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string qd_matrix, qd_box, qd_ray = "1,0.5", qd_d = "1,1", qd_format = "json", qd_out;
    double qd_S = 0.0, qd_x = 0.0;
    auto* qd_matrix_opt = quads->add_option("--matrix", qd_matrix, "System matrix A,B,C,D");
    auto* qd_box_opt = quads->add_option("--box", qd_box, "Box matrix M11,M12,M21,M22");
    quads->add_option("--ray", qd_ray, "Base corner x,n_alpha (matrix mode)")->capture_default_str();
    auto* qd_S_opt = quads->add_option("--S", qd_S, "Object distance (box mode)");
    auto* qd_x_opt = quads->add_option("--x", qd_x, "Object height (box mode)");
    quads->add_option("--d", qd_d, "Side lengths dx,dn_alpha or dS,dx")->capture_default_str();
    quads->add_option("--format", qd_format)->check(CLI::IsMember({"json", "svg"}));
    quads->add_option("--out", qd_out, "Output file (default: stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "CSV bracket reports over a parameter grid");
    sweep->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string sw_box, sw_param, sw_renorm = "reject", sw_format = "csv", sw_out;
    double sw_start = 0.0, sw_stop = 0.0, sw_S = 0.0, sw_x = 1.0, sw_step = kDefaultBracketStep;
    int sw_count = 0;
    sweep->add_option("--box", sw_box, "Base box matrix M11,M12,M21,M22")->required();
    sweep->add_option("--param", sw_param, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"S", "x", "M11", "M12", "M21", "M22"}));
    sweep->add_option("--start", sw_start, "First parameter value")->required();
    sweep->add_option("--stop", sw_stop, "Last parameter value")->required();
    sweep->add_option("--count", sw_count, "Number of rows (>= 2)")->required();
    auto* sw_S_opt = sweep->add_option("--S", sw_S, "Fixed object distance");
    sweep->add_option("--x", sw_x, "Fixed object height")->capture_default_str();
    sweep->add_option("--renormalize", sw_renorm,
                      "Off-determinant rows: reject, or m21 to re-solve M21")->capture_default_str()
        ->check(CLI::IsMember({"reject", "m21"}));
    sweep->add_option("--step", sw_step, "Base finite-difference step")->capture_default_str();
    sweep->add_option("--format", sw_format)->check(CLI::IsMember({"csv"}));
    sweep->add_option("--out", sw_out, "Output file (default: stdout)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a cliffor expression");
    eval_cmd->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string ev_expr, ev_out;
    std::vector<std::string> ev_sets;
    eval_cmd->add_option("expr", ev_expr, "Expression, e.g. \"e1 e2 e3\"")->required();
    eval_cmd->add_option("--set", ev_sets, "Scalar binding name=value (repeatable)");
    eval_cmd->add_option("--out", ev_out, "Output file (default: stdout)");

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Check an identity corpus file");
    corpus->add_option("--config", config_path, "Key=value file of flag defaults");
    std::string cp_file, cp_out;
    int cp_trials = 100;
    std::uint64_t cp_seed = 0x5f3759df;
    corpus->add_option("file", cp_file, "Corpus path, one LHS == RHS per line")->required();
    corpus->add_option("--trials", cp_trials, "Random trials per identity")->capture_default_str()
        ->check(CLI::PositiveNumber);
    corpus->add_option("--seed", cp_seed, "Base sampling seed")->capture_default_str();
    corpus->add_option("--out", cp_out, "Output file (default: stdout)");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        apply_config_file(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (trace->parsed()) {
            const SystemMatrix m = matrix_from_flag(trace_matrix);
            const std::vector<double> r = parse_reals(trace_ray, 2, "--ray");
            const HeightAngleRay out = apply(m, {r[0], r[1]});
            emit(to_json(out) + "\n", trace_out);
        } else if (image->parsed()) {
            const BoxMatrix box = box_from_flag(image_box);
            emit(to_json(solve_imaging(box, image_S, image_x)) + "\n", image_out);
        } else if (brackets->parsed()) {
            if (br_matrix_opt->count() == br_box_opt->count()) {
                throw UsageError("brackets: exactly one of --matrix or --box is required");
            }
            BracketReport report;
            if (br_matrix_opt->count() > 0) {
                const SystemMatrix m = matrix_from_flag(br_matrix);
                const std::vector<double> probe = parse_reals(br_probe, 2, "--probe");
                report = height_angle_brackets(m, {probe[0], probe[1]}, br_step);
            } else {
                if (br_S_opt->count() == 0 || br_x_opt->count() == 0) {
                    throw UsageError("brackets: --box mode requires --S and --x");
                }
                report = distance_height_brackets(box_from_flag(br_box), br_S, br_x, br_step);
            }
            emit(to_json(report) + "\n", br_out);
        } else if (quads->parsed()) {
            if (qd_matrix_opt->count() == qd_box_opt->count()) {
                throw UsageError("quads: exactly one of --matrix or --box is required");
            }
            const std::vector<double> d = parse_reals(qd_d, 2, "--d");
            PhaseQuad object, imaged;
            std::string extra;
            if (qd_matrix_opt->count() > 0) {
                const SystemMatrix m = matrix_from_flag(qd_matrix);
                const std::vector<double> r = parse_reals(qd_ray, 2, "--ray");
                object = object_rect_height_angle(r[0], r[1], d[0], d[1]);
                imaged = image_quad_height_angle(m, object);
            } else {
                if (qd_S_opt->count() == 0 || qd_x_opt->count() == 0) {
                    throw UsageError("quads: --box mode requires --S and --x");
                }
                const BoxMatrix box = box_from_flag(qd_box);
                object = object_rect_distance_height(qd_S, qd_x, d[0], d[1]);
                imaged = image_quad_distance_height(box, object);
                extra = ",\"linearization_gap\":" +
                        format_real(linearization_gap_distance_height(box, qd_S, qd_x, d[0], d[1]));
            }
            if (qd_format == "svg") {
                emit(svg_quad_pair(object, imaged), qd_out);
            } else {
                emit(quads_json(object, imaged) + extra + "}\n", qd_out);
            }
        } else if (sweep->parsed()) {
            if (sw_count < 2) throw UsageError("sweep: --count must be at least 2");
            if (sw_param != "S" && sw_S_opt->count() == 0) {
                throw UsageError("sweep: --S is required unless S is the swept parameter");
            }
            const std::vector<double> base = parse_reals(sw_box, 4, "--box");
            std::string csv = sweep_csv_header() + "\n";
            for (int k = 0; k < sw_count; ++k) {
                const double t = sw_start + (sw_stop - sw_start) * k / (sw_count - 1);
                double m11 = base[0], m12 = base[1], m21 = base[2], m22 = base[3];
                double S = sw_S, x = sw_x;
                if (sw_param == "S") S = t;
                else if (sw_param == "x") x = t;
                else if (sw_param == "M11") m11 = t;
                else if (sw_param == "M12") m12 = t;
                else if (sw_param == "M21") m21 = t;
                else m22 = t;
                if (sw_renorm == "m21" && sw_param != "M21" && sw_param != "S" &&
                    sw_param != "x") {
                    if (m12 == 0.0) continue;
                    m21 = (1.0 - m11 * m22) / m12;
                }
                try {
                    const BoxMatrix box(m11, m12, m21, m22);
                    const double m_x = transverse_magnification(box, S);
                    const BracketReport report = distance_height_brackets(box, S, x, sw_step);
                    csv += sweep_csv_row(S, x, box, m_x, report) + "\n";
                } catch (const Error&) {
                    continue;  // off-determinant or singular rows drop out of the grid
                }
            }
            emit(csv, sw_out);
        } else if (eval_cmd->parsed()) {
            dsl::Env env;
            for (const std::string& binding : ev_sets) {
                const std::size_t eq = binding.find('=');
                if (eq == std::string::npos || eq == 0) {
                    throw UsageError("--set: expected name=value, got '" + binding + "'");
                }
                const std::string value = binding.substr(eq + 1);
                char* end = nullptr;
                const double parsed = std::strtod(value.c_str(), &end);
                if (value.empty() || end != value.c_str() + value.size()) {
                    throw UsageError("--set: '" + value + "' is not a number");
                }
                env[binding.substr(0, eq)] = parsed;
            }
            const dsl::ExprPtr expr = dsl::parse(ev_expr);
            emit(format_cliffor(dsl::eval(*expr, env)) + "\n", ev_out);
        } else if (corpus->parsed()) {
            std::ifstream file(cp_file);
            if (!file) {
                throw Error("CorpusUnreadable", "cannot open corpus file", {{"path", cp_file}});
            }
            const dsl::CorpusResult result = dsl::run_corpus(file, cp_trials, cp_seed);
            std::string report;
            for (const dsl::CorpusLine& line : result.lines) {
                if (line.passed) {
                    report += "ok " + std::to_string(line.line_number) + ": " + line.text + "\n";
                } else {
                    report += "FAIL " + std::to_string(line.line_number) + ": " + line.text +
                              ": " + line.message + "\n";
                }
            }
            report += "checked " + std::to_string(result.checked) + " identities, " +
                      std::to_string(result.checked - result.failed) + " passed\n";
            emit(report, cp_out);
            return result.failed == 0 ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << error_json(e) << "\n";
        return 1;
    }
    return 0;
}
