#include "cliffray/dsl.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <random>
#include <utility>

#include "cliffray/errors.hpp"
#include "cliffray/serialize.hpp"

namespace cliffray::dsl {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_body(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> lex(const std::string& source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = source.size();
    while (i < n) {
        const char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        const std::size_t pos = i + 1;
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(source[i + 1]))) {
            std::size_t j = i;
            while (j < n && is_digit(source[j])) ++j;
            if (j < n && source[j] == '.' && j + 1 < n && is_digit(source[j + 1])) {
                ++j;
                while (j < n && is_digit(source[j])) ++j;
            }
            tokens.push_back({TokenKind::number, source.substr(i, j - i), pos});
            i = j;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < n && is_ident_body(source[j])) ++j;
            tokens.push_back({TokenKind::identifier, source.substr(i, j - i), pos});
            i = j;
            continue;
        }
        // UTF-8 dagger, three bytes.
        if (c == '\xe2' && i + 2 < n && source[i + 1] == '\x80' && source[i + 2] == '\xa0') {
            tokens.push_back({TokenKind::dagger, source.substr(i, 3), pos});
            i += 3;
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::plus; break;
            case '-': kind = TokenKind::minus; break;
            case '*': kind = TokenKind::star; break;
            case '^': kind = TokenKind::caret; break;
            case '|': kind = TokenKind::pipe; break;
            case '(': kind = TokenKind::lparen; break;
            case ')': kind = TokenKind::rparen; break;
            case '<': kind = TokenKind::langle; break;
            case '>': kind = TokenKind::rangle; break;
            case '_': kind = TokenKind::underscore; break;
            case '\'': kind = TokenKind::dagger; break;
            default:
                throw SyntaxError(pos, std::string("unexpected character '") + c + "'",
                                  "a number, identifier, operator, or grouping symbol");
        }
        tokens.push_back({kind, source.substr(i, 1), pos});
        ++i;
    }
    tokens.push_back({TokenKind::end, "", n + 1});
    return tokens;
}

ExprPtr Expr::clone() const {
    auto out = std::make_unique<Expr>();
    out->kind = kind;
    out->value = value;
    out->name = name;
    out->grade = grade;
    if (lhs) out->lhs = lhs->clone();
    if (rhs) out->rhs = rhs->clone();
    return out;
}

namespace {

ExprPtr make_leafless(ExprKind kind, ExprPtr lhs, ExprPtr rhs = nullptr) {
    auto out = std::make_unique<Expr>();
    out->kind = kind;
    out->lhs = std::move(lhs);
    out->rhs = std::move(rhs);
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ExprPtr run() {
        ExprPtr expr = parse_sum();
        if (peek().kind != TokenKind::end) {
            throw SyntaxError(peek().position, "unexpected trailing input", "end of input");
        }
        return expr;
    }

private:
    const Token& peek() const { return tokens_[index_]; }
    const Token& advance() { return tokens_[index_++]; }

    const Token& expect(TokenKind kind, const std::string& description) {
        if (peek().kind != kind) {
            throw SyntaxError(peek().position, "expected " + description, description);
        }
        return advance();
    }

    ExprPtr parse_sum() {
        ExprPtr expr = parse_unary();
        while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
            const bool subtract = advance().kind == TokenKind::minus;
            expr = make_leafless(subtract ? ExprKind::difference : ExprKind::sum,
                                 std::move(expr), parse_unary());
        }
        return expr;
    }

    ExprPtr parse_unary() {
        if (peek().kind == TokenKind::minus) {
            advance();
            return make_leafless(ExprKind::negate, parse_unary());
        }
        return parse_dot();
    }

    ExprPtr parse_dot() {
        ExprPtr expr = parse_wedge();
        while (peek().kind == TokenKind::pipe) {
            advance();
            expr = make_leafless(ExprKind::dot, std::move(expr), parse_wedge());
        }
        return expr;
    }

    ExprPtr parse_wedge() {
        ExprPtr expr = parse_geometric();
        while (peek().kind == TokenKind::caret) {
            advance();
            expr = make_leafless(ExprKind::wedge, std::move(expr), parse_geometric());
        }
        return expr;
    }

    static bool starts_operand(TokenKind kind) {
        return kind == TokenKind::number || kind == TokenKind::identifier ||
               kind == TokenKind::lparen || kind == TokenKind::langle;
    }

    ExprPtr parse_geometric() {
        ExprPtr expr = parse_postfix();
        for (;;) {
            if (peek().kind == TokenKind::star) {
                advance();
                expr = make_leafless(ExprKind::geometric, std::move(expr), parse_postfix());
            } else if (starts_operand(peek().kind)) {
                expr = make_leafless(ExprKind::geometric, std::move(expr), parse_postfix());
            } else {
                return expr;
            }
        }
    }

    ExprPtr parse_postfix() {
        ExprPtr expr = parse_primary();
        while (peek().kind == TokenKind::dagger) {
            advance();
            expr = make_leafless(ExprKind::dagger, std::move(expr));
        }
        return expr;
    }

    ExprPtr parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::number: {
                advance();
                auto out = std::make_unique<Expr>();
                out->kind = ExprKind::number;
                const char* first = tok.lexeme.data();
                const char* last = first + tok.lexeme.size();
                auto [ptr, ec] = std::from_chars(first, last, out->value);
                if (ec != std::errc() || ptr != last) {
                    throw SyntaxError(tok.position, "malformed number literal", "a decimal number");
                }
                return out;
            }
            case TokenKind::identifier: {
                advance();
                auto out = std::make_unique<Expr>();
                out->kind = ExprKind::identifier;
                out->name = tok.lexeme;
                return out;
            }
            case TokenKind::lparen: {
                advance();
                ExprPtr inner = parse_sum();
                expect(TokenKind::rparen, "')'");
                return inner;
            }
            case TokenKind::langle: {
                advance();
                ExprPtr inner = parse_sum();
                expect(TokenKind::rangle, "'>'");
                expect(TokenKind::underscore, "'_'");
                const Token& digit = peek();
                if (digit.kind != TokenKind::number || digit.lexeme.size() != 1 ||
                    !is_digit(digit.lexeme[0])) {
                    throw SyntaxError(digit.position, "grade subscript must be a single digit",
                                      "a digit 0-3");
                }
                advance();
                const int g = digit.lexeme[0] - '0';
                if (g > 3) throw GradeOutOfRange(g);
                auto out = make_leafless(ExprKind::grade_select, std::move(inner));
                out->grade = g;
                return out;
            }
            default:
                throw SyntaxError(tok.position, "expected an operand",
                                  "a number, an identifier, '(', or '<'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

}  // namespace

ExprPtr parse(const std::string& source) { return Parser(lex(source)).run(); }

namespace {

bool is_pure_vector(const Cliffor& c) {
    return c.s == 0.0 && c.b.x == 0.0 && c.b.y == 0.0 && c.b.z == 0.0 && c.p == 0.0;
}

Cliffor eval_node(const Expr& expr, const Env& env) {
    switch (expr.kind) {
        case ExprKind::number:
            return Cliffor::scalar(expr.value);
        case ExprKind::identifier: {
            if (expr.name == "e1") return Cliffor::e1();
            if (expr.name == "e2") return Cliffor::e2();
            if (expr.name == "e3") return Cliffor::e3();
            if (expr.name == "i") return Cliffor::i();
            auto it = env.find(expr.name);
            if (it == env.end()) {
                throw EvalError("UnknownIdentifier", "unknown identifier '" + expr.name + "'",
                                {{"identifier", expr.name}});
            }
            return Cliffor::scalar(it->second);
        }
        case ExprKind::negate:
            return -eval_node(*expr.lhs, env);
        case ExprKind::dagger:
            return dagger(eval_node(*expr.lhs, env));
        case ExprKind::sum:
            return eval_node(*expr.lhs, env) + eval_node(*expr.rhs, env);
        case ExprKind::difference:
            return eval_node(*expr.lhs, env) - eval_node(*expr.rhs, env);
        case ExprKind::geometric:
            return eval_node(*expr.lhs, env) * eval_node(*expr.rhs, env);
        case ExprKind::wedge:
        case ExprKind::dot: {
            const Cliffor a = eval_node(*expr.lhs, env);
            const Cliffor b = eval_node(*expr.rhs, env);
            const char* op = expr.kind == ExprKind::wedge ? "^" : "|";
            if (!is_pure_vector(a) || !is_pure_vector(b)) {
                throw EvalError("NonVectorOperand",
                                std::string("'") + op + "' applies to pure vectors only",
                                {{"operator", op}});
            }
            if (expr.kind == ExprKind::wedge) return wedge(a.v, b.v);
            return Cliffor::scalar(dot(a.v, b.v));
        }
        case ExprKind::grade_select:
            return grade(eval_node(*expr.lhs, env), expr.grade);
    }
    assert(false && "unhandled expression kind");
    return {};
}

bool all_finite(const Cliffor& c) {
    for (double v : {c.s, c.v.x, c.v.y, c.v.z, c.b.x, c.b.y, c.b.z, c.p}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace

Cliffor eval(const Expr& expr, const Env& env) {
    const Cliffor out = eval_node(expr, env);
    if (!all_finite(out)) {
        throw EvalError("NonFiniteResult", "expression evaluated to a non-finite value", {});
    }
    return out;
}

namespace {

// Binding strength for the printer; higher binds tighter.
int level(const Expr& expr) {
    switch (expr.kind) {
        case ExprKind::sum:
        case ExprKind::difference: return 0;
        case ExprKind::negate: return 1;
        case ExprKind::dot: return 2;
        case ExprKind::wedge: return 3;
        case ExprKind::geometric: return 4;
        case ExprKind::dagger: return 5;
        default: return 6;
    }
}

void print(const Expr& expr, int min_level, std::string& out) {
    const int self = level(expr);
    const bool parens = self < min_level;
    if (parens) out += '(';
    switch (expr.kind) {
        case ExprKind::number:
            out += format_real(expr.value);
            break;
        case ExprKind::identifier:
            out += expr.name;
            break;
        case ExprKind::negate:
            out += '-';
            print(*expr.lhs, self, out);
            break;
        case ExprKind::dagger:
            print(*expr.lhs, self, out);
            out += '\'';
            break;
        case ExprKind::sum:
        case ExprKind::difference:
            print(*expr.lhs, self, out);
            out += expr.kind == ExprKind::sum ? " + " : " - ";
            print(*expr.rhs, self + 1, out);
            break;
        case ExprKind::dot:
            print(*expr.lhs, self, out);
            out += " | ";
            print(*expr.rhs, self + 1, out);
            break;
        case ExprKind::wedge:
            print(*expr.lhs, self, out);
            out += " ^ ";
            print(*expr.rhs, self + 1, out);
            break;
        case ExprKind::geometric:
            print(*expr.lhs, self, out);
            out += ' ';
            print(*expr.rhs, self + 1, out);
            break;
        case ExprKind::grade_select:
            out += '<';
            print(*expr.lhs, 0, out);
            out += ">_";
            out += static_cast<char>('0' + expr.grade);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& expr) {
    std::string out;
    print(expr, 0, out);
    return out;
}

namespace {

void gather(const Expr& expr, std::vector<std::string>& out) {
    if (expr.kind == ExprKind::identifier) {
        if (expr.name != "e1" && expr.name != "e2" && expr.name != "e3" && expr.name != "i") {
            out.push_back(expr.name);
        }
        return;
    }
    if (expr.lhs) gather(*expr.lhs, out);
    if (expr.rhs) gather(*expr.rhs, out);
}

// Uniform in [-1, 1] from the top 53 bits, identical on every platform.
double uniform_pm1(std::mt19937_64& rng) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

}  // namespace

std::vector<std::string> collect_identifiers(const Expr& expr) {
    std::vector<std::string> out;
    gather(expr, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IdentityCheck check_identity(const std::string& lhs, const std::string& rhs, int trials,
                             std::uint64_t seed) {
    const ExprPtr left = parse(lhs);
    const ExprPtr right = parse(rhs);

    std::vector<std::string> names = collect_identifiers(*left);
    for (std::string& name : collect_identifiers(*right)) names.push_back(std::move(name));
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    std::mt19937_64 rng(seed);
    IdentityCheck check;
    for (int trial = 0; trial < trials; ++trial) {
        Env env;
        for (const std::string& name : names) env[name] = uniform_pm1(rng);
        const Cliffor lv = eval(*left, env);
        const Cliffor rv = eval(*right, env);
        const double diff = max_abs(lv - rv);
        check.trials = trial + 1;
        if (!(diff <= 1e-9)) {
            check.passed = false;
            check.max_difference = diff;
            check.counterexample = std::move(env);
            check.lhs_value = lv;
            check.rhs_value = rv;
            return check;
        }
        check.max_difference = std::max(check.max_difference, diff);
    }
    return check;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string describe_failure(const IdentityCheck& check) {
    std::string msg = "max componentwise difference " + format_real(check.max_difference) +
                      " exceeds 1e-9";
    if (!check.counterexample.empty()) {
        msg += " at ";
        bool first = true;
        for (const auto& [name, value] : check.counterexample) {
            if (!first) msg += ", ";
            first = false;
            msg += name + " = " + format_real(value);
        }
    }
    return msg;
}

}  // namespace

CorpusResult run_corpus(std::istream& in, int trials, std::uint64_t seed) {
    CorpusResult result;
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        CorpusLine entry;
        entry.line_number = line_number;
        entry.text = line;
        ++result.checked;

        const std::size_t sep = line.find("==");
        if (sep == std::string::npos) {
            entry.passed = false;
            entry.message = "missing '=='";
        } else {
            const std::uint64_t derived =
                seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(line_number));
            try {
                const IdentityCheck check =
                    check_identity(line.substr(0, sep), line.substr(sep + 2), trials, derived);
                entry.passed = check.passed;
                if (!check.passed) entry.message = describe_failure(check);
            } catch (const Error& err) {
                entry.passed = false;
                entry.message = err.name() + std::string(": ") + err.what();
            }
        }
        if (!entry.passed) ++result.failed;
        result.lines.push_back(std::move(entry));
    }
    return result;
}

}  // namespace cliffray::dsl
