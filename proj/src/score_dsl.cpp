#include "packsolve/score_dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>

namespace packsolve {

int feature_index(std::string_view name) {
  for (size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace dsl {

std::string ParseDiagnostic::to_string() const {
  const char* kind_name = "syntax";
  switch (kind) {
    case DiagnosticKind::lex: kind_name = "lex"; break;
    case DiagnosticKind::syntax: kind_name = "syntax"; break;
    case DiagnosticKind::unknown_identifier: kind_name = "unknown-identifier"; break;
    case DiagnosticKind::limit: kind_name = "limit"; break;
  }
  std::ostringstream out;
  out << kind_name << " error at line " << line << ", column " << column << ": "
      << message;
  return out.str();
}

namespace {

enum class TokKind {
  number, ident, plus, minus, star, slash, lparen, rparen, comma,
  lt, le, eq, ge, gt, kw_if, kw_then, kw_else, kw_min, kw_max, kw_abs, end
};

struct Token {
  TokKind kind;
  double number = 0;
  std::string text;
  size_t offset = 0;
  int line = 1;
  int column = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int column = 1;
  std::optional<ParseDiagnostic> error;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos < src.size()) {
      const char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      Token tok;
      tok.offset = pos;
      tok.line = line;
      tok.column = column;
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos + 1 < src.size() &&
           std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
        double value = 0;
        const char* begin = src.data() + pos;
        const char* end = src.data() + src.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc()) {
          error = ParseDiagnostic{DiagnosticKind::lex, pos, line, column,
                                  "malformed number"};
          return tokens;
        }
        tok.kind = TokKind::number;
        tok.number = value;
        advance(static_cast<size_t>(ptr - begin));
        tokens.push_back(tok);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t len = 0;
        while (pos + len < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos + len])) ||
                src[pos + len] == '_')) {
          ++len;
        }
        tok.text = src.substr(pos, len);
        if (tok.text == "if") tok.kind = TokKind::kw_if;
        else if (tok.text == "then") tok.kind = TokKind::kw_then;
        else if (tok.text == "else") tok.kind = TokKind::kw_else;
        else if (tok.text == "min") tok.kind = TokKind::kw_min;
        else if (tok.text == "max") tok.kind = TokKind::kw_max;
        else if (tok.text == "abs") tok.kind = TokKind::kw_abs;
        else tok.kind = TokKind::ident;
        advance(len);
        tokens.push_back(tok);
        continue;
      }
      switch (c) {
        case '+': tok.kind = TokKind::plus; advance(1); break;
        case '-': tok.kind = TokKind::minus; advance(1); break;
        case '*': tok.kind = TokKind::star; advance(1); break;
        case '/': tok.kind = TokKind::slash; advance(1); break;
        case '(': tok.kind = TokKind::lparen; advance(1); break;
        case ')': tok.kind = TokKind::rparen; advance(1); break;
        case ',': tok.kind = TokKind::comma; advance(1); break;
        case '=': tok.kind = TokKind::eq; advance(1); break;
        case '<':
          if (pos + 1 < src.size() && src[pos + 1] == '=') {
            tok.kind = TokKind::le;
            advance(2);
          } else {
            tok.kind = TokKind::lt;
            advance(1);
          }
          break;
        case '>':
          if (pos + 1 < src.size() && src[pos + 1] == '=') {
            tok.kind = TokKind::ge;
            advance(2);
          } else {
            tok.kind = TokKind::gt;
            advance(1);
          }
          break;
        default:
          error = ParseDiagnostic{DiagnosticKind::lex, pos, line, column,
                                  std::string("unexpected character '") + c + "'"};
          return tokens;
      }
      tokens.push_back(tok);
    }
    Token end_tok;
    end_tok.kind = TokKind::end;
    end_tok.offset = src.size();
    end_tok.line = line;
    end_tok.column = column;
    tokens.push_back(end_tok);
    return tokens;
  }
};

struct Parser {
  const std::vector<Token>& tokens;
  size_t index = 0;
  std::optional<ParseDiagnostic> error;

  explicit Parser(const std::vector<Token>& t) : tokens(t) {}

  const Token& peek() const { return tokens[index]; }
  const Token& take() { return tokens[index++]; }

  void fail(DiagnosticKind kind, const Token& at, const std::string& message) {
    if (!error) {
      error = ParseDiagnostic{kind, at.offset, at.line, at.column, message};
    }
  }

  bool expect(TokKind kind, const char* what) {
    if (peek().kind != kind) {
      fail(DiagnosticKind::syntax, peek(), std::string("expected ") + what);
      return false;
    }
    take();
    return true;
  }

  Expr parse_expr(int depth) {
    Expr lhs = parse_term(depth + 1);
    if (error) return lhs;
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
      const bool add = take().kind == TokKind::plus;
      Expr rhs = parse_term(depth + 1);
      if (error) return lhs;
      Expr node;
      node.kind = NodeKind::binary;
      node.bin = add ? BinOp::add : BinOp::sub;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_term(int depth) {
    Expr lhs = parse_factor(depth + 1);
    if (error) return lhs;
    while (peek().kind == TokKind::star || peek().kind == TokKind::slash) {
      const bool mul = take().kind == TokKind::star;
      Expr rhs = parse_factor(depth + 1);
      if (error) return lhs;
      Expr node;
      node.kind = NodeKind::binary;
      node.bin = mul ? BinOp::mul : BinOp::div;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  std::optional<CmpOp> take_cmp() {
    switch (peek().kind) {
      case TokKind::lt: take(); return CmpOp::lt;
      case TokKind::le: take(); return CmpOp::le;
      case TokKind::eq: take(); return CmpOp::eq;
      case TokKind::ge: take(); return CmpOp::ge;
      case TokKind::gt: take(); return CmpOp::gt;
      default: return std::nullopt;
    }
  }

  Expr parse_factor(int depth) {
    Expr node;
    if (depth > kMaxDepth) {
      fail(DiagnosticKind::limit, peek(),
           "expression nests deeper than " + std::to_string(kMaxDepth));
      return node;
    }
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::number: {
        node.kind = NodeKind::constant;
        node.value = take().number;
        return node;
      }
      case TokKind::minus: {
        // Negative numeric literal; the grammar has no general unary minus.
        take();
        if (peek().kind != TokKind::number) {
          fail(DiagnosticKind::syntax, peek(), "expected a number after '-'");
          return node;
        }
        node.kind = NodeKind::constant;
        node.value = -take().number;
        return node;
      }
      case TokKind::ident: {
        const int fi = feature_index(tok.text);
        if (fi < 0) {
          fail(DiagnosticKind::unknown_identifier, tok,
               "unknown identifier '" + tok.text + "'");
          return node;
        }
        take();
        node.kind = NodeKind::feature;
        node.feature = fi;
        return node;
      }
      case TokKind::lparen: {
        take();
        node = parse_expr(depth + 1);
        if (error) return node;
        expect(TokKind::rparen, "')'");
        return node;
      }
      case TokKind::kw_min:
      case TokKind::kw_max:
      case TokKind::kw_abs: {
        const TokKind fn = take().kind;
        node.kind = NodeKind::call;
        node.func = fn == TokKind::kw_min ? Func::min
                    : fn == TokKind::kw_max ? Func::max
                                            : Func::abs;
        if (!expect(TokKind::lparen, "'('")) return node;
        node.children.push_back(parse_expr(depth + 1));
        if (error) return node;
        const size_t want_args = node.func == Func::abs ? 1 : 2;
        while (peek().kind == TokKind::comma) {
          take();
          node.children.push_back(parse_expr(depth + 1));
          if (error) return node;
        }
        if (node.children.size() != want_args) {
          fail(DiagnosticKind::syntax, peek(),
               std::string(node.func == Func::abs ? "abs" : node.func == Func::min ? "min" : "max") +
                   " takes " + std::to_string(want_args) + " argument(s)");
          return node;
        }
        expect(TokKind::rparen, "')'");
        return node;
      }
      case TokKind::kw_if: {
        take();
        node.kind = NodeKind::conditional;
        node.children.push_back(parse_expr(depth + 1));
        if (error) return node;
        auto cmp = take_cmp();
        if (!cmp) {
          fail(DiagnosticKind::syntax, peek(), "expected a comparator");
          return node;
        }
        node.cmp = *cmp;
        node.children.push_back(parse_expr(depth + 1));
        if (error) return node;
        if (!expect(TokKind::kw_then, "'then'")) return node;
        node.children.push_back(parse_expr(depth + 1));
        if (error) return node;
        if (!expect(TokKind::kw_else, "'else'")) return node;
        node.children.push_back(parse_expr(depth + 1));
        return node;
      }
      default:
        fail(DiagnosticKind::syntax, tok, "expected a number, feature, or '('");
        return node;
    }
  }
};

}  // namespace

int node_count(const Expr& ast) {
  int n = 1;
  for (const Expr& c : ast.children) n += node_count(c);
  return n;
}

int depth(const Expr& ast) {
  int d = 0;
  for (const Expr& c : ast.children) d = std::max(d, depth(c));
  return d + 1;
}

ParseResult parse(const std::string& source) {
  ParseResult result;
  Lexer lexer(source);
  std::vector<Token> tokens = lexer.run();
  if (lexer.error) {
    result.diagnostic = lexer.error;
    return result;
  }
  Parser parser(tokens);
  Expr ast = parser.parse_expr(0);
  if (!parser.error && parser.peek().kind != TokKind::end) {
    parser.fail(DiagnosticKind::syntax, parser.peek(), "unexpected trailing input");
  }
  if (parser.error) {
    result.diagnostic = parser.error;
    return result;
  }
  if (const int n = node_count(ast); n > kMaxNodes) {
    result.diagnostic = ParseDiagnostic{DiagnosticKind::limit, 0, 1, 1,
                                        "program has " + std::to_string(n) +
                                            " nodes, cap is " + std::to_string(kMaxNodes)};
    return result;
  }
  result.program = ScoreProgram{source, std::move(ast)};
  return result;
}

namespace {

double sanitize(double v) { return std::isfinite(v) ? v : 0.0; }

bool compare(CmpOp op, double a, double b) {
  switch (op) {
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::eq: return a == b;
    case CmpOp::ge: return a >= b;
    case CmpOp::gt: return a > b;
  }
  return false;
}

}  // namespace

double evaluate(const Expr& ast, const Features& f) {
  switch (ast.kind) {
    case NodeKind::constant:
      return sanitize(ast.value);
    case NodeKind::feature:
      return sanitize(feature_value(f, static_cast<size_t>(ast.feature)));
    case NodeKind::binary: {
      const double a = evaluate(ast.children[0], f);
      const double b = evaluate(ast.children[1], f);
      switch (ast.bin) {
        case BinOp::add: return sanitize(a + b);
        case BinOp::sub: return sanitize(a - b);
        case BinOp::mul: return sanitize(a * b);
        case BinOp::div: return b == 0.0 ? 0.0 : sanitize(a / b);
      }
      return 0;
    }
    case NodeKind::call: {
      const double a = evaluate(ast.children[0], f);
      switch (ast.func) {
        case Func::abs: return std::abs(a);
        case Func::min: return std::min(a, evaluate(ast.children[1], f));
        case Func::max: return std::max(a, evaluate(ast.children[1], f));
      }
      return 0;
    }
    case NodeKind::conditional: {
      const double a = evaluate(ast.children[0], f);
      const double b = evaluate(ast.children[1], f);
      return compare(ast.cmp, a, b) ? evaluate(ast.children[2], f)
                                    : evaluate(ast.children[3], f);
    }
  }
  return 0;
}

double evaluate(const ScoreProgram& p, const Features& f) {
  return evaluate(p.ast, f);
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::eq: return "=";
    case CmpOp::ge: return ">=";
    case CmpOp::gt: return ">";
  }
  return "?";
}

void serialize_into(const Expr& ast, std::string& out) {
  switch (ast.kind) {
    case NodeKind::constant:
      out += format_number(ast.value);
      return;
    case NodeKind::feature:
      out += kFeatureNames[static_cast<size_t>(ast.feature)];
      return;
    case NodeKind::binary: {
      const char* op = ast.bin == BinOp::add   ? " + "
                       : ast.bin == BinOp::sub ? " - "
                       : ast.bin == BinOp::mul ? " * "
                                               : " / ";
      out += '(';
      serialize_into(ast.children[0], out);
      out += op;
      serialize_into(ast.children[1], out);
      out += ')';
      return;
    }
    case NodeKind::call: {
      out += ast.func == Func::min ? "min" : ast.func == Func::max ? "max" : "abs";
      out += '(';
      for (size_t i = 0; i < ast.children.size(); ++i) {
        if (i) out += ", ";
        serialize_into(ast.children[i], out);
      }
      out += ')';
      return;
    }
    case NodeKind::conditional:
      out += "(if ";
      serialize_into(ast.children[0], out);
      out += ' ';
      out += cmp_text(ast.cmp);
      out += ' ';
      serialize_into(ast.children[1], out);
      out += " then ";
      serialize_into(ast.children[2], out);
      out += " else ";
      serialize_into(ast.children[3], out);
      out += ')';
      return;
  }
}

}  // namespace

std::string serialize(const Expr& ast) {
  std::string out;
  serialize_into(ast, out);
  return out;
}

std::string serialize(const ScoreProgram& p) { return serialize(p.ast); }

namespace {

Expr random_constant(Rng& rng) {
  Expr node;
  node.kind = NodeKind::constant;
  node.value = std::round(rng.next_range(-2.0, 2.0) * 1000.0) / 1000.0;
  return node;
}

Expr random_feature(Rng& rng) {
  Expr node;
  node.kind = NodeKind::feature;
  node.feature = rng.next_int(0, static_cast<int>(kFeatureCount) - 1);
  return node;
}

Expr random_expr(Rng& rng, int depth_left) {
  if (depth_left <= 1) {
    return rng.next_bool(0.6) ? random_feature(rng) : random_constant(rng);
  }
  const double roll = rng.next_double();
  Expr node;
  if (roll < 0.25) {
    return rng.next_bool(0.6) ? random_feature(rng) : random_constant(rng);
  }
  if (roll < 0.80) {
    node.kind = NodeKind::binary;
    const int op = rng.next_int(0, 3);
    node.bin = static_cast<BinOp>(op);
    node.children.push_back(random_expr(rng, depth_left - 1));
    node.children.push_back(random_expr(rng, depth_left - 1));
    return node;
  }
  if (roll < 0.92) {
    node.kind = NodeKind::call;
    node.func = static_cast<Func>(rng.next_int(0, 2));
    node.children.push_back(random_expr(rng, depth_left - 1));
    if (node.func != Func::abs) node.children.push_back(random_expr(rng, depth_left - 1));
    return node;
  }
  node.kind = NodeKind::conditional;
  node.cmp = static_cast<CmpOp>(rng.next_int(0, 4));
  for (int i = 0; i < 4; ++i) node.children.push_back(random_expr(rng, depth_left - 1));
  return node;
}

void collect_nodes(Expr& ast, std::vector<Expr*>& out) {
  out.push_back(&ast);
  for (Expr& c : ast.children) collect_nodes(c, out);
}

void collect_constants(Expr& ast, std::vector<Expr*>& out) {
  if (ast.kind == NodeKind::constant) out.push_back(&ast);
  for (Expr& c : ast.children) collect_constants(c, out);
}

void collect_leaves(const Expr& ast, std::vector<const Expr*>& out) {
  if (ast.children.empty()) out.push_back(&ast);
  for (const Expr& c : ast.children) collect_leaves(c, out);
}

bool is_const(const Expr& e, double v) {
  return e.kind == NodeKind::constant && e.value == v;
}

Expr fold(const Expr& ast) {
  Expr node = ast;
  for (Expr& c : node.children) c = fold(c);
  const auto all_const = [&node]() {
    return std::all_of(node.children.begin(), node.children.end(),
                       [](const Expr& c) { return c.kind == NodeKind::constant; });
  };
  switch (node.kind) {
    case NodeKind::binary: {
      Expr& a = node.children[0];
      Expr& b = node.children[1];
      if (all_const()) {
        Expr folded;
        folded.kind = NodeKind::constant;
        folded.value = evaluate(node, Features{});
        return folded;
      }
      switch (node.bin) {
        case BinOp::add:
          if (is_const(a, 0)) return b;
          if (is_const(b, 0)) return a;
          break;
        case BinOp::sub:
          if (is_const(b, 0)) return a;
          break;
        case BinOp::mul:
          if (is_const(a, 1)) return b;
          if (is_const(b, 1)) return a;
          if (is_const(a, 0) || is_const(b, 0)) {
            Expr zero;
            zero.kind = NodeKind::constant;
            zero.value = 0;
            return zero;
          }
          break;
        case BinOp::div:
          if (is_const(b, 1)) return a;
          if (is_const(a, 0)) {
            Expr zero;
            zero.kind = NodeKind::constant;
            zero.value = 0;
            return zero;
          }
          break;
      }
      return node;
    }
    case NodeKind::call:
      if (all_const()) {
        Expr folded;
        folded.kind = NodeKind::constant;
        folded.value = evaluate(node, Features{});
        return folded;
      }
      return node;
    case NodeKind::conditional:
      if (node.children[0].kind == NodeKind::constant &&
          node.children[1].kind == NodeKind::constant) {
        return compare(node.cmp, node.children[0].value, node.children[1].value)
                   ? node.children[2]
                   : node.children[3];
      }
      return node;
    default:
      return node;
  }
}

ScoreProgram finish(Expr ast) {
  ScoreProgram p;
  p.ast = std::move(ast);
  p.source = serialize(p.ast);
  return p;
}

bool within_caps(const Expr& ast) {
  return node_count(ast) <= kMaxNodes && depth(ast) <= kMaxDepth;
}

}  // namespace

ScoreProgram random_program(Rng& rng, int max_depth) {
  return finish(random_expr(rng, std::max(1, max_depth)));
}

ScoreProgram mutate(const ScoreProgram& p, MutateOp op, Rng& rng,
                    const ScoreProgram* other) {
  switch (op) {
    case MutateOp::diversify:
      return random_program(rng);

    case MutateOp::synthesize: {
      if (other == nullptr) {
        throw std::invalid_argument("synthesize requires a second parent");
      }
      for (int attempt = 0; attempt < 8; ++attempt) {
        Expr child = p.ast;
        Expr donor_copy = other->ast;
        std::vector<Expr*> sites;
        std::vector<Expr*> donors;
        collect_nodes(child, sites);
        collect_nodes(donor_copy, donors);
        Expr* site = sites[rng.next_index(sites.size())];
        Expr* donor = donors[rng.next_index(donors.size())];
        *site = *donor;
        if (within_caps(child)) return finish(std::move(child));
      }
      return finish(p.ast);
    }

    case MutateOp::improve: {
      for (int attempt = 0; attempt < 8; ++attempt) {
        Expr child = p.ast;
        std::vector<Expr*> sites;
        collect_nodes(child, sites);
        Expr* site = sites[rng.next_index(sites.size())];
        *site = random_expr(rng, 3);
        if (within_caps(child)) return finish(std::move(child));
      }
      return finish(p.ast);
    }

    case MutateOp::tune: {
      Expr child = p.ast;
      std::vector<Expr*> constants;
      collect_constants(child, constants);
      if (constants.empty()) {
        // No parameter to tune; introduce one as a scale on the whole program.
        Expr scaled;
        scaled.kind = NodeKind::binary;
        scaled.bin = BinOp::mul;
        Expr factor;
        factor.kind = NodeKind::constant;
        factor.value = 1.0;
        scaled.children.push_back(std::move(factor));
        scaled.children.push_back(std::move(child));
        child = std::move(scaled);
        constants.clear();
        collect_constants(child, constants);
      }
      Expr* target = constants[rng.next_index(constants.size())];
      if (rng.next_bool(0.5)) {
        target->value *= rng.next_range(0.5, 2.0);
      } else {
        const double delta = rng.next_range(0.0, 1.0);
        target->value += rng.next_bool(0.5) ? delta : -delta;
      }
      if (!std::isfinite(target->value)) target->value = 0;
      return finish(std::move(child));
    }

    case MutateOp::simplify: {
      Expr child = fold(p.ast);
      std::vector<Expr*> sites;
      collect_nodes(child, sites);
      std::vector<Expr*> internal;
      for (Expr* n : sites) {
        if (!n->children.empty()) internal.push_back(n);
      }
      if (!internal.empty()) {
        Expr* site = internal[rng.next_index(internal.size())];
        std::vector<const Expr*> leaves;
        collect_leaves(*site, leaves);
        *site = *leaves[rng.next_index(leaves.size())];
      }
      return finish(std::move(child));
    }
  }
  return finish(p.ast);
}

}  // namespace dsl
}  // namespace packsolve
