#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cliffray/cliffor.hpp"

namespace cliffray::dsl {

// Expression language over Cl(3,0).  Binding, loosest to tightest:
//   + -  (binary)
//   -    (unary)
//   |    (dot, vectors only)
//   ^    (wedge, vectors only)
//   juxtaposition / *  (geometric product)
//   ' or dagger postfix, <...>_g
// All binary operators associate left.  Numbers are plain decimals without
// an exponent, so "2e1" reads as the product 2 * e1.

enum class TokenKind {
    number,
    identifier,
    plus,
    minus,
    star,
    caret,
    pipe,
    lparen,
    rparen,
    langle,
    rangle,
    underscore,
    dagger,
    end,
};

// position is the 1-based byte offset of the first byte of the lexeme; the
// end token sits one past the last byte.  Concatenating lexemes and the
// skipped whitespace reproduces the source exactly.
struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;
};

std::vector<Token> lex(const std::string& source);

enum class ExprKind {
    number,
    identifier,
    negate,
    dagger,
    sum,
    difference,
    geometric,
    wedge,
    dot,
    grade_select,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind;
    double value = 0.0;   // number
    std::string name;     // identifier
    int grade = 0;        // grade_select
    ExprPtr lhs;          // sole child of unary nodes
    ExprPtr rhs;

    ExprPtr clone() const;
};

// Throws SyntaxError (1-based byte position, expected-token set in context)
// and GradeOutOfRange for a subscript outside 0..3.
ExprPtr parse(const std::string& source);

// Free identifiers are scalar variables; e1, e2, e3, i are the built-in basis
// elements and never free.
using Env = std::map<std::string, double>;

// Throws EvalError: UnknownIdentifier, NonVectorOperand (| and ^ demand pure
// grade-1 operands).  Non-finite results surface as NonFiniteResult.
Cliffor eval(const Expr& expr, const Env& env);

// Minimal parentheses; reparses to a structurally identical tree.
std::string to_string(const Expr& expr);

// Sorted, deduplicated free identifiers of the expression.
std::vector<std::string> collect_identifiers(const Expr& expr);

struct IdentityCheck {
    bool passed = true;
    int trials = 0;
    double max_difference = 0.0;
    Env counterexample;        // assignment that broke the identity
    Cliffor lhs_value;
    Cliffor rhs_value;
};

// Samples the union of both sides' free identifiers uniformly from [-1, 1]
// and compares componentwise within 1e-9.  Deterministic for a given seed.
IdentityCheck check_identity(const std::string& lhs, const std::string& rhs, int trials,
                             std::uint64_t seed = 0x5f3759df);

struct CorpusLine {
    int line_number = 0;
    std::string text;
    bool passed = false;
    std::string message;   // empty when passed
};

struct CorpusResult {
    int checked = 0;
    int failed = 0;
    std::vector<CorpusLine> lines;
};

// One "LHS == RHS" per line, '#' starts a comment, blank lines are skipped.
// Parse and evaluation errors count as failures of their line.
CorpusResult run_corpus(std::istream& in, int trials = 100, std::uint64_t seed = 0x5f3759df);

}  // namespace cliffray::dsl
