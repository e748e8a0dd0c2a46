#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packsolve/features.hpp"
#include "packsolve/rng.hpp"

namespace packsolve {
namespace dsl {

// Scoring expressions over placement features. Grammar (README has the full
// writeup):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number | ident | '(' expr ')' | func '(' expr {',' expr} ')'
//           | 'if' expr cmp expr 'then' expr 'else' expr
//   cmp    := '<' | '<=' | '=' | '>=' | '>'
//   func   := 'min' | 'max' | 'abs'
// Idents are exactly the feature names. Division by zero evaluates to 0 and
// any non-finite intermediate collapses to 0, so evaluation is total.

inline constexpr int kMaxDepth = 32;
inline constexpr int kMaxNodes = 512;

enum class NodeKind { constant, feature, binary, call, conditional };
enum class BinOp { add, sub, mul, div };
enum class CmpOp { lt, le, eq, ge, gt };
enum class Func { min, max, abs };

struct Expr {
  NodeKind kind = NodeKind::constant;
  double value = 0;       // constant
  int feature = 0;        // feature index into kFeatureNames
  BinOp bin = BinOp::add;
  CmpOp cmp = CmpOp::lt;  // conditional
  Func func = Func::min;
  // binary: [lhs, rhs]; call: args; conditional: [cmp_lhs, cmp_rhs, then, else]
  std::vector<Expr> children;

  bool operator==(const Expr&) const = default;
};

struct ScoreProgram {
  std::string source;
  Expr ast;
};

enum class DiagnosticKind { lex, syntax, unknown_identifier, limit };

struct ParseDiagnostic {
  DiagnosticKind kind = DiagnosticKind::syntax;
  size_t offset = 0;  // byte offset into source
  int line = 1;       // 1-based
  int column = 1;     // 1-based
  std::string message;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<ScoreProgram> program;
  std::optional<ParseDiagnostic> diagnostic;

  bool ok() const { return program.has_value(); }
};

ParseResult parse(const std::string& source);

// Total on validated programs: never NaN, never non-finite.
double evaluate(const Expr& ast, const Features& f);
double evaluate(const ScoreProgram& p, const Features& f);

// Canonical fully parenthesized text; parse(serialize(p)) == p structurally.
std::string serialize(const Expr& ast);
std::string serialize(const ScoreProgram& p);

int node_count(const Expr& ast);
int depth(const Expr& ast);

// Seeded random program within the depth/size caps.
ScoreProgram random_program(Rng& rng, int max_depth = 5);

enum class MutateOp { diversify, synthesize, improve, tune, simplify };

// diversify: fresh random program (parent ignored)
// synthesize: crossover with `other` (required for this op)
// improve:    random subtree replaced by a fresh random subtree
// tune:       one numeric constant perturbed (x U[0.5,2] or +-U[0,1])
// simplify:   constant folding plus pruning one random subtree to a leaf
// Output always parses and respects the caps.
ScoreProgram mutate(const ScoreProgram& p, MutateOp op, Rng& rng,
                    const ScoreProgram* other = nullptr);

// The best evolved scoring expression shipped as the default guided scorer.
inline constexpr const char* kEvolvedProgramText =
    "0.9*vol_util + 0.05*quantity + 0.05*adjacency";

// The unguided baseline: a constant score makes selection purely random
// under a randomized candidate list.
inline constexpr const char* kConstantProgramText = "1";

}  // namespace dsl
}  // namespace packsolve
