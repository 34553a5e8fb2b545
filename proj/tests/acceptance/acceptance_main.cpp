#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cliffray/brackets.hpp"
#include "cliffray/dsl.hpp"
#include "cliffray/errors.hpp"
#include "cliffray/imaging.hpp"
#include "cliffray/paraxial.hpp"
#include "cliffray/phase_quad.hpp"
#include "support/blade_oracle.hpp"
#include "support/checks.hpp"
#include "support/samplers.hpp"

// End-to-end gate: one line per criterion, nonzero exit if any fails.
// Usage: cliffray_acceptance <cli-binary> <golden-dir> <identity-corpus>

using namespace cliffray;

namespace {

bool g_all_ok = true;

void report(int index, bool ok, const std::string& label, const std::string& note = "") {
    g_all_ok = g_all_ok && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << index << ". " << label;
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

void criterion_1_algebra_axioms() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(11);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const Cliffor a = samplers::cliffor(rng);
        const Cliffor b = samplers::cliffor(rng);
        const Cliffor c = samplers::cliffor(rng);
        if (!approx_equal(geometric_product(geometric_product(a, b), c),
                          geometric_product(a, geometric_product(b, c))))
            ++failures;
        if (!approx_equal(geometric_product(a, b), oracle::product(a, b))) ++failures;

        const Vector3 u = samplers::vector(rng);
        const Vector3 w = samplers::vector(rng);
        const Cliffor uw = geometric_product(Cliffor::vector(u), Cliffor::vector(w));
        const Cliffor split = Cliffor::scalar(dot(u, w)) + wedge(u, w);
        if (!approx_equal(uw, split)) ++failures;
        const Cliffor pauli =
            Cliffor::scalar(dot(u, w)) +
            geometric_product(Cliffor::pseudoscalar(1), Cliffor::vector(cross(u, w)));
        if (!approx_equal(uw, pauli)) ++failures;
    }
    const double elapsed = seconds_since(start);
    report(1, failures == 0 && elapsed < 1.0,
           "geometric product: associativity, vector split, duality, blade-table oracle",
           failures ? std::to_string(failures) + " mismatches" : format_seconds(elapsed));
}

struct RaySample {
    SystemMatrix matrix;
    BracketReport brackets;
};

std::vector<RaySample> criterion_2_unit_commutator() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(22);
    std::vector<RaySample> samples;
    samples.reserve(1000);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const SystemMatrix m = samplers::system_matrix(rng);
        const HeightAngleRay probe{samplers::uniform(rng, -2, 2), samplers::uniform(rng, -2, 2)};
        const BracketReport r = height_angle_brackets(m, probe);
        if (std::abs(r.commutator_numeric - 1.0) > 1e-6) ++failures;
        if (std::abs(*r.commutator_analytic - 1.0) > 1e-12) ++failures;
        samples.push_back({m, r});
    }
    const double elapsed = seconds_since(start);
    report(2, failures == 0 && elapsed < 1.0,
           "ray-map commutator equals 1 numerically and analytically (1000 samples)",
           failures ? std::to_string(failures) + " out of tolerance" : format_seconds(elapsed));
    return samples;
}

void criterion_3_anticommutator(const std::vector<RaySample>& samples) {
    int failures = 0;
    for (const RaySample& s : samples) {
        const double closed =
            -(s.matrix.A() * s.matrix.B() - s.matrix.C() * s.matrix.D());
        if (!checks::rel_close(s.brackets.anticommutator_numeric, closed, 1e-6)) ++failures;
    }
    const BracketReport ident = height_angle_brackets(make_system(1, 0, 0, 1), {1.0, 0.5});
    const bool ident_exact = ident.anticommutator_numeric == 0.0;
    report(3, failures == 0 && ident_exact,
           "ray-map anticommutator matches -(AB - CD); identity gives exactly 0",
           failures ? std::to_string(failures) + " out of tolerance"
                    : (ident_exact ? "" : "identity not exact"));
}

void criterion_4_magnification_cube() {
    std::mt19937_64 rng(44);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const samplers::ImagingConfig cfg = samplers::nonsingular_config(rng);
        const BracketReport r = distance_height_brackets(cfg.box, cfg.S, cfg.x);
        const double m = transverse_magnification(cfg.box, cfg.S);
        if (!checks::rel_close(r.commutator_numeric, -m * m * m, 1e-6)) ++failures;
    }
    const BracketReport worked = distance_height_brackets(BoxMatrix(1, 0.5, 0, 1), 4.0, 1.0);
    const bool worked_ok = *worked.commutator_analytic == 1.0 &&
                           *worked.anticommutator_analytic == 0.5 &&
                           std::abs(worked.commutator_numeric - 1.0) <= 1e-6 &&
                           std::abs(worked.anticommutator_numeric - 0.5) <= 1e-6;
    report(4, failures == 0 && worked_ok,
           "imaging-map commutator equals the negated magnification cube (1000 samples)",
           failures ? std::to_string(failures) + " out of tolerance"
                    : (worked_ok ? "worked case 1.0 / 0.5" : "worked case off"));
}

void criterion_5_telescopic() {
    std::mt19937_64 rng(55);
    int failures = 0;
    for (int k = 0; k < 100; ++k) {
        const double sign = rng() & 1u ? 1.0 : -1.0;
        const double m11 = sign * samplers::uniform(rng, 0.3, 1.7);
        const BoxMatrix box(m11, 0.0, samplers::uniform(rng, -1.5, 1.5), 1.0 / m11);
        const double S = samplers::uniform(rng, -5, 5);
        const double x = samplers::uniform(rng, -2, 2);
        const BracketReport r = distance_height_brackets(box, S, x);
        if (std::abs(r.anticommutator_numeric) > 1e-9) ++failures;
        const PhaseQuad obj = object_rect_distance_height(S, x, 0.1, 0.1);
        const QuadReport img = quad_report(image_quad_distance_height(box, obj));
        if (!img.is_rectangle) ++failures;
    }
    report(5, failures == 0,
           "decoupled boxes keep a zero anticommutator and rectangular images (100 samples)",
           failures ? std::to_string(failures) + " violations" : "");
}

void criterion_6_decomposition() {
    std::mt19937_64 rng(66);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const BoxMatrix box = samplers::box_matrix(rng);
        const double s = samplers::uniform(rng, -5, 5);
        const double sp = samplers::uniform(rng, -5, 5);
        const SystemMatrix direct = elements_from_box(box, s, sp);
        const SystemMatrix chained =
            compose(compose(make_propagation(s), as_system(box)), make_propagation(sp));
        if (!checks::rel_close(direct.A(), chained.A(), 1e-12) ||
            !checks::rel_close(direct.B(), chained.B(), 1e-12) ||
            !checks::rel_close(direct.C(), chained.C(), 1e-12) ||
            !checks::rel_close(direct.D(), chained.D(), 1e-12))
            ++failures;
    }
    std::mt19937_64 rng2(67);
    for (int k = 0; k < 1000; ++k) {
        const samplers::ImagingConfig cfg = samplers::nonsingular_config(rng2);
        const double sp = image_distance(cfg.box, cfg.S);
        const SystemMatrix m = elements_from_box(cfg.box, cfg.S, sp);
        const double scale = std::abs(cfg.box.m21()) + std::abs(cfg.box.m22() * sp) +
                             std::abs(cfg.box.m11() * cfg.S) +
                             std::abs(cfg.box.m12() * cfg.S * sp);
        if (std::abs(m.B()) > 1e-9 * std::max(1.0, scale)) ++failures;
    }
    report(6, failures == 0,
           "closed-form elements match the composed chain; imaging kills B (1000 samples each)",
           failures ? std::to_string(failures) + " mismatches" : "");
}

void criterion_7_partials() {
    std::mt19937_64 rng(77);
    int failures = 0;
    bool zero_exact = true;
    for (int k = 0; k < 1000; ++k) {
        const samplers::ImagingConfig cfg = samplers::nonsingular_config(rng);
        const MagnificationPartials p = magnification_partials(cfg.box, cfg.S, cfg.x);
        if (p.dSp_dx != 0.0) zero_exact = false;

        const double hS = 1e-6 * std::max(1.0, std::abs(cfg.S));
        const double hx = 1e-6 * std::max(1.0, std::abs(cfg.x));
        const ImagingSolution sm = solve_imaging(cfg.box, cfg.S - hS, cfg.x);
        const ImagingSolution sh = solve_imaging(cfg.box, cfg.S + hS, cfg.x);
        const ImagingSolution xm = solve_imaging(cfg.box, cfg.S, cfg.x - hx);
        const ImagingSolution xh = solve_imaging(cfg.box, cfg.S, cfg.x + hx);
        const double fd_dSp_dS = (sh.S_prime - sm.S_prime) / (2 * hS);
        const double fd_dSp_dx = (xh.S_prime - xm.S_prime) / (2 * hx);
        const double fd_dxp_dS = (sh.x_prime - sm.x_prime) / (2 * hS);
        const double fd_dxp_dx = (xh.x_prime - xm.x_prime) / (2 * hx);
        if (!checks::rel_close(p.dSp_dS, fd_dSp_dS, 1e-6) ||
            !checks::rel_close(p.dSp_dx, fd_dSp_dx, 1e-6) ||
            !checks::rel_close(p.dxp_dS, fd_dxp_dS, 1e-6) ||
            !checks::rel_close(p.dxp_dx, fd_dxp_dx, 1e-6))
            ++failures;
    }
    report(7, failures == 0 && zero_exact,
           "all four imaging partials match central differences; dSp_dx exactly 0 (1000 samples)",
           failures ? std::to_string(failures) + " out of tolerance"
                    : (zero_exact ? "" : "dSp_dx not exact"));
}

void criterion_8_convergence() {
    std::mt19937_64 rng(88);
    int failures = 0;
    int measured = 0;
    for (int k = 0; k < 20; ++k) {
        const samplers::ImagingConfig cfg = samplers::nonsingular_config(rng);
        const double den = imaging_denominator(cfg.box, cfg.S);
        const double m = transverse_magnification(cfg.box, cfg.S);
        const double target = -m * m * m;
        const double d0S = 0.02 * std::abs(den) / std::max(std::abs(cfg.box.m12()), 0.2);
        const double d0x = 0.02 * std::max(1.0, std::abs(cfg.x));
        double gap[4];
        for (int halving = 0; halving < 4; ++halving) {
            const double dS = d0S / (1 << halving);
            const double dx = d0x / (1 << halving);
            const auto corners =
                exact_corner_images_distance_height(cfg.box, cfg.S, cfg.x, dS, dx);
            const double ratio = signed_area_e3e1(corners) / (dS * dx);
            gap[halving] = std::abs(ratio - target);
        }
        const double noise = 1e-10 * std::max(1.0, std::abs(target));
        if (gap[0] <= noise || gap[3] <= noise) continue;  // already at rounding level
        ++measured;
        const double order = std::log2(gap[0] / gap[3]) / 3.0;
        if (!(order >= 0.9)) ++failures;
    }
    report(8, failures == 0 && measured >= 15,
           "exact-corner area ratio converges to the cube law at first order (20 configs)",
           failures ? std::to_string(failures) + " slow configs"
                    : std::to_string(measured) + " measurable");
}

void criterion_9_corpus(const std::string& corpus_path) {
    std::ifstream in(corpus_path);
    bool corpus_ok = false;
    std::string note;
    if (!in) {
        note = "cannot open " + corpus_path;
    } else {
        const dsl::CorpusResult result = dsl::run_corpus(in, 100);
        corpus_ok = result.failed == 0 && result.checked >= 30;
        note = std::to_string(result.checked) + " identities, " +
               std::to_string(result.failed) + " failed";
    }

    const std::pair<const char*, std::size_t> fixtures[] = {
        {"e1 ^", 5},
        {"(e1 + e2", 9},
        {"<e1 e2>_", 9},
        {"2 + * 3", 5},
    };
    bool fixtures_ok = true;
    for (const auto& [source, expected] : fixtures) {
        try {
            (void)dsl::parse(source);
            fixtures_ok = false;
        } catch (const SyntaxError& err) {
            if (err.position() != expected) fixtures_ok = false;
        }
    }
    if (!fixtures_ok) note += "; syntax fixtures off";
    report(9, corpus_ok && fixtures_ok, "identity corpus passes; syntax fixtures fail in place",
           note);
}

struct GoldenCase {
    const char* name;
    std::string arguments;
    int exit_code;
};

bool run_golden_case(const std::string& cli, const std::string& golden_dir,
                     const GoldenCase& test, std::string& note) {
    const std::string path = golden_dir + "/" + test.name;
    std::ifstream golden(path, std::ios::binary);
    if (!golden) {
        note = std::string(test.name) + ": missing golden file";
        return false;
    }
    std::ostringstream expected;
    expected << golden.rdbuf();

    const std::string command = "'" + cli + "' " + test.arguments;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        note = std::string(test.name) + ": cannot run CLI";
        return false;
    }
    std::string actual;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) actual.append(buf, n);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    if (code != test.exit_code) {
        note = std::string(test.name) + ": exit " + std::to_string(code) + ", expected " +
               std::to_string(test.exit_code);
        return false;
    }
    if (actual != expected.str()) {
        note = std::string(test.name) + ": output differs";
        return false;
    }
    return true;
}

void criterion_10_golden(const std::string& cli, const std::string& golden_dir,
                         const std::string& corpus_path) {
    const GoldenCase cases[] = {
        {"trace.json", "trace --matrix 1,2,0,1 --ray 1,0.5", 0},
        {"image.json", "image --box 2,0.3,1,0.35 --S 1 --x 1", 0},
        {"brackets.json", "brackets --box 1,0.5,0,1 --S 4 --x 1", 0},
        {"quads.json", "quads --box 1,0.5,0,1 --S 4 --x 1 --d 0.1,0.1", 0},
        {"quads.svg", "quads --box 1,0.5,0,1 --S 4 --x 1 --format svg", 0},
        {"sweep.csv", "sweep --box 1,0.5,0,1 --param S --start 3 --stop 5 --count 3 --x 1", 0},
        {"eval.txt", "eval '(e1 + i e2)(e1 - i e2)'", 0},
        {"corpus.txt", "corpus '" + corpus_path + "'", 0},
        {"error.json", "image --box 1,0.5,0,1 --S 2 --x 1", 1},
    };
    int failures = 0;
    std::string first_note;
    for (const GoldenCase& test : cases) {
        std::string note;
        if (!run_golden_case(cli, golden_dir, test, note)) {
            ++failures;
            if (first_note.empty()) first_note = note;
        }
    }
    report(10, failures == 0, "CLI output is byte-identical to the golden fixtures (9 cases)",
           failures ? first_note : "");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: cliffray_acceptance <cli-binary> <golden-dir> <identity-corpus>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string golden_dir = argv[2];
    const std::string corpus_path = argv[3];

    criterion_1_algebra_axioms();
    const std::vector<RaySample> samples = criterion_2_unit_commutator();
    criterion_3_anticommutator(samples);
    criterion_4_magnification_cube();
    criterion_5_telescopic();
    criterion_6_decomposition();
    criterion_7_partials();
    criterion_8_convergence();
    criterion_9_corpus(corpus_path);
    criterion_10_golden(cli, golden_dir, corpus_path);

    std::cout << (g_all_ok ? "all criteria passed\n" : "some criteria failed\n");
    return g_all_ok ? 0 : 1;
}
