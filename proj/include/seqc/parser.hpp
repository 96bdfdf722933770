/* Copyright 2026 The seqc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/// @file parser.hpp
/// Lexer, recursive-descent parser and pretty-printer for `.seqc` files.
///
///     file  := [ 'decls' '{' [dseq] '}' ] 'goal' '{' gseq '}'
///     dseq  := ditem { ';' ditem } [';']              (right-nested And)
///     ditem := 'choice' '(' dseq ',' dseq { ',' dseq } ')'
///            | '{' dseq '}'
///            | IDENT '==' expr                        (constant)
///            | IDENT '(' [IDENT {',' IDENT}] ')' '=' '{' gseq '}'
///     gseq  := gitem { ';' gitem } [';']              (right-nested Seq)
///     gitem := 'skip' | 'print' '(' IDENT ')'
///            | 'choice' '(' gseq ',' gseq { ',' gseq } ')'
///            | '{' gseq '}'
///            | IDENT '(' [expr {',' expr}] ')'         (call)
///            | IDENT '=' expr                         (assignment)
///            | expr CMP expr                          (condition)
///
/// `%` starts a comment that runs to end of line. Money tokens such as
/// `$32,000` are text literals, kept verbatim.
///
/// Identifiers in expressions resolve in this order: a parameter of the
/// enclosing procedure is a variable; a name declared anywhere as a constant
/// is a constant reference; a name starting with an upper-case letter is a
/// symbol; anything else is a variable.

#ifndef SEQC_PARSER_HPP
#define SEQC_PARSER_HPP

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqc/ast.hpp"
#include "seqc/error.hpp"

namespace seqc {

struct Program {
  ProgramD decls;
  Goal goal;
  bool operator==(const Program&) const = default;
};

namespace detail {

enum class Tok {
  Ident,
  Int,
  String,
  Money,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Assign,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Length of a money token starting at text[0] == '$', or 0 if none.
inline std::size_t money_length(std::string_view text) {
  if (text.empty() || text[0] != '$') return 0;
  std::size_t i = 1;
  if (i >= text.size() || !is_digit(text[i])) return 0;
  while (i < text.size() && is_digit(text[i])) ++i;
  while (i + 3 < text.size() && text[i] == ',' && is_digit(text[i + 1]) &&
         is_digit(text[i + 2]) && is_digit(text[i + 3]) &&
         (i + 4 >= text.size() || !is_digit(text[i + 4]))) {
    i += 4;
  }
  if (i + 1 < text.size() && text[i] == '.' && is_digit(text[i + 1])) {
    ++i;
    while (i < text.size() && is_digit(text[i])) ++i;
  }
  return i;
}

inline bool is_money(std::string_view text) {
  return !text.empty() && money_length(text) == text.size();
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back(Token{kind, std::string(src.substr(i, len)), {line, col}});
    advance(len);
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      push(Tok::Int, j - i);
      continue;
    }
    if (c == '$') {
      std::size_t n = money_length(src.substr(i));
      if (n == 0) throw Error(ErrorCode::Syntax, "malformed money literal", pos);
      push(Tok::Money, n);
      continue;
    }
    if (c == '"') {
      std::string value;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n') break;
        if (d == '\\') {
          if (i + 1 >= src.size()) break;
          char e = src[i + 1];
          switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            default:
              throw Error(ErrorCode::Syntax,
                          std::string("unknown escape '\\") + e + "'",
                          {line, col});
          }
          advance(2);
          continue;
        }
        value += d;
        advance(1);
      }
      if (!closed) throw Error(ErrorCode::Syntax, "unterminated string", pos);
      out.push_back(Token{Tok::String, std::move(value), pos});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "==") { push(Tok::Eq, 2); continue; }
    if (two == "!=") { push(Tok::Ne, 2); continue; }
    if (two == "<=") { push(Tok::Le, 2); continue; }
    if (two == ">=") { push(Tok::Ge, 2); continue; }
    switch (c) {
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '=': push(Tok::Assign, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      default: break;
    }
    throw Error(ErrorCode::Syntax,
                std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back(Token{Tok::End, "", {line, col}});
  return out;
}

inline bool is_keyword(std::string_view s) {
  return s == "decls" || s == "goal" || s == "choice" || s == "skip" ||
         s == "print";
}

struct CallSite {
  std::string name;
  std::size_t arity;
  SourcePos pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program parse_file() {
    ProgramD decls = ProgramD::empty();
    if (peek_ident("decls")) {
      next();
      expect(Tok::LBrace, "'{' after 'decls'");
      if (peek().kind != Tok::RBrace) {
        // The first pass only collects constant names; the second resolves
        // identifiers against them.
        std::size_t start = pos_;
        collecting_ = true;
        (void)parse_dseq();
        collecting_ = false;
        pos_ = start;
        decls = parse_dseq();
      }
      expect(Tok::RBrace, "'}' closing 'decls'");
    }
    if (!peek_ident("goal")) fail("expected 'goal' block");
    next();
    expect(Tok::LBrace, "'{' after 'goal'");
    Goal goal = parse_gseq();
    expect(Tok::RBrace, "'}' closing 'goal'");
    if (peek().kind != Tok::End) fail("unexpected input after 'goal' block");
    check_arities();
    return Program{std::move(decls), std::move(goal)};
  }

  Goal parse_goal_only(const std::set<std::string, std::less<>>& constants) {
    constants_ = constants;
    Goal g = parse_gseq();
    if (peek().kind != Tok::End) fail("unexpected input after goal");
    return g;
  }

  void seed_procedures(const ProgramD& p) {
    for (const auto& d : all_decls(p)) {
      if (const auto* pd = std::get_if<ProcDecl>(&d.node)) {
        proc_arity_.emplace(pd->name(), std::make_pair(pd->params.size(),
                                                       SourcePos{}));
      }
    }
  }

  static std::vector<Decl> all_decls(const ProgramD& p) {
    std::vector<Decl> out;
    std::vector<const ProgramD*> stack{&p};
    while (!stack.empty()) {
      const ProgramD* d = stack.back();
      stack.pop_back();
      if (const auto* l = std::get_if<Leaf>(&d->node)) {
        out.push_back(l->decl);
      } else if (const auto* a = std::get_if<And>(&d->node)) {
        stack.push_back(&a->right.get());
        stack.push_back(&a->left.get());
      } else if (const auto* c = std::get_if<SeqChoiceD>(&d->node)) {
        for (auto it = c->alternatives.rbegin(); it != c->alternatives.rend();
             ++it) {
          stack.push_back(&*it);
        }
      }
    }
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool peek_ident(std::string_view s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Syntax, msg, peek().pos);
  }
  [[noreturn]] void fail_at(const std::string& msg, SourcePos p) const {
    throw Error(ErrorCode::Syntax, msg, p);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      std::string got = peek().kind == Tok::End ? "end of input"
                                                : "'" + peek().text + "'";
      fail(std::string("expected ") + what + ", got " + got);
    }
    return next();
  }
  std::string expect_name(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_keyword(t.text)) {
      fail_at("'" + t.text + "' is a reserved word", t.pos);
    }
    return t.text;
  }

  // --- declarations -------------------------------------------------------

  ProgramD parse_dseq() {
    std::vector<ProgramD> items;
    items.push_back(parse_ditem());
    while (peek().kind == Tok::Semi) {
      next();
      Tok k = peek().kind;
      if (k == Tok::RBrace || k == Tok::RParen || k == Tok::Comma) break;
      items.push_back(parse_ditem());
    }
    ProgramD out = std::move(items.back());
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      out = ProgramD::conj(std::move(items[i]), std::move(out));
    }
    return out;
  }

  ProgramD parse_ditem() {
    const Token& t = peek();
    if (t.kind == Tok::LBrace) {
      next();
      ProgramD d = parse_dseq();
      expect(Tok::RBrace, "'}'");
      return d;
    }
    if (t.kind == Tok::Ident && t.text == "choice") {
      SourcePos at = t.pos;
      next();
      expect(Tok::LParen, "'(' after 'choice'");
      std::vector<ProgramD> alts;
      if (peek().kind == Tok::RParen) {
        throw Error(ErrorCode::EmptyChoice,
                    "choice needs at least two alternatives", at);
      }
      alts.push_back(parse_dseq());
      while (peek().kind == Tok::Comma) {
        next();
        alts.push_back(parse_dseq());
      }
      expect(Tok::RParen, "',' or ')' in choice");
      if (alts.size() < 2) {
        throw Error(ErrorCode::EmptyChoice,
                    "choice needs at least two alternatives", at);
      }
      return ProgramD::choice(std::move(alts));
    }
    if (t.kind != Tok::Ident) fail("expected a declaration");
    SourcePos at = t.pos;
    std::string name = expect_name("declaration name");
    if (peek().kind == Tok::Eq) {
      next();
      if (collecting_) constants_.insert(name);
      params_.clear();
      Expr e = parse_expr();
      if (!collecting_) check_closed(e, name, at);
      return ProgramD::constant(std::move(name), std::move(e));
    }
    if (peek().kind == Tok::LParen) {
      next();
      std::vector<std::string> params;
      if (peek().kind != Tok::RParen) {
        params.push_back(expect_name("parameter name"));
        while (peek().kind == Tok::Comma) {
          next();
          params.push_back(expect_name("parameter name"));
        }
      }
      expect(Tok::RParen, "')' after parameters");
      std::set<std::string, std::less<>> seen;
      for (const auto& p : params) {
        if (!seen.insert(p).second) {
          fail_at("duplicate parameter '" + p + "' in '" + name + "'", at);
        }
      }
      expect(Tok::Assign, "'=' after procedure head");
      expect(Tok::LBrace, "'{' opening procedure body");
      params_ = seen;
      Goal body = parse_gseq();
      params_.clear();
      expect(Tok::RBrace, "'}' closing procedure body");
      if (!collecting_) {
        auto [it, inserted] =
            proc_arity_.emplace(name, std::make_pair(params.size(), at));
        if (!inserted && it->second.first != params.size()) {
          throw Error(ErrorCode::Arity,
                      "procedure '" + name + "' declared with " +
                          std::to_string(params.size()) +
                          " parameters, elsewhere with " +
                          std::to_string(it->second.first),
                      at);
        }
      }
      return ProgramD::procedure(std::move(name), std::move(params),
                                 std::move(body));
    }
    fail("expected '==' or '(' after '" + name + "'");
  }

  void check_closed(const Expr& e, const std::string& owner, SourcePos at) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            fail_at("constant '" + owner + "' refers to variable '" + n.name +
                        "' (constants may only use literals and constants)",
                    at);
          } else if constexpr (std::is_same_v<T, BinOp>) {
            check_closed(*n.left, owner, at);
            check_closed(*n.right, owner, at);
          }
        },
        e.node);
  }

  // --- goals --------------------------------------------------------------

  Goal parse_gseq() {
    std::vector<Goal> items;
    items.push_back(parse_gitem());
    while (peek().kind == Tok::Semi) {
      next();
      Tok k = peek().kind;
      if (k == Tok::RBrace || k == Tok::RParen || k == Tok::Comma ||
          k == Tok::End) {
        break;
      }
      items.push_back(parse_gitem());
    }
    Goal out = std::move(items.back());
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      out = Goal::seq(std::move(items[i]), std::move(out));
    }
    return out;
  }

  Goal parse_gitem() {
    const Token& t = peek();
    if (t.kind == Tok::LBrace) {
      next();
      Goal g = parse_gseq();
      expect(Tok::RBrace, "'}'");
      return g;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "skip") {
        next();
        return Goal::top();
      }
      if (t.text == "print") {
        next();
        expect(Tok::LParen, "'(' after 'print'");
        SourcePos at = peek().pos;
        std::string var = expect_name("variable name");
        check_target(var, "print", at);
        expect(Tok::RParen, "')' after print argument");
        return Goal::print(std::move(var));
      }
      if (t.text == "choice") {
        SourcePos at = t.pos;
        next();
        expect(Tok::LParen, "'(' after 'choice'");
        if (peek().kind == Tok::RParen) {
          throw Error(ErrorCode::EmptyChoice,
                      "choice needs at least two alternatives", at);
        }
        std::vector<Goal> alts;
        alts.push_back(parse_gseq());
        while (peek().kind == Tok::Comma) {
          next();
          alts.push_back(parse_gseq());
        }
        expect(Tok::RParen, "',' or ')' in choice");
        if (alts.size() < 2) {
          throw Error(ErrorCode::EmptyChoice,
                      "choice needs at least two alternatives", at);
        }
        return Goal::choice(std::move(alts));
      }
      if (is_keyword(t.text)) fail("unexpected '" + t.text + "'");
      if (peek(1).kind == Tok::LParen) {
        SourcePos at = t.pos;
        std::string name = next().text;
        next();
        std::vector<Expr> args;
        if (peek().kind != Tok::RParen) {
          args.push_back(parse_expr());
          while (peek().kind == Tok::Comma) {
            next();
            args.push_back(parse_expr());
          }
        }
        expect(Tok::RParen, "')' after call arguments");
        if (!collecting_) calls_.push_back({name, args.size(), at});
        return Goal::call(std::move(name), std::move(args));
      }
      if (peek(1).kind == Tok::Assign) {
        SourcePos at = t.pos;
        std::string var = next().text;
        next();
        check_target(var, "assign to", at);
        return Goal::assign(std::move(var), parse_expr());
      }
    }
    Expr left = parse_expr();
    CmpOp op;
    switch (peek().kind) {
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      default: fail("expected a comparison operator in condition");
    }
    next();
    Expr right = parse_expr();
    return Goal::cond(op, std::move(left), std::move(right));
  }

  void check_target(const std::string& var, const char* what, SourcePos at) {
    if (collecting_) return;
    if (params_.count(var)) {
      fail_at(std::string("cannot ") + what + " parameter '" + var + "'", at);
    }
    if (constants_.count(var)) {
      fail_at(std::string("cannot ") + what + " constant '" + var + "'", at);
    }
  }

  // --- expressions --------------------------------------------------------

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      ArithOp op = next().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      lhs = Expr::binary(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_primary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      ArithOp op = next().kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
      SourcePos at = peek().pos;
      Expr rhs = parse_primary();
      if (op == ArithOp::Div) {
        if (const auto* lit = std::get_if<IntLit>(&rhs.node);
            lit && lit->value == 0) {
          throw Error(ErrorCode::DivisionByZero, "division by literal zero",
                      at);
        }
      }
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return Expr::integer(parse_int(next(), false));
      case Tok::Minus:
        next();
        if (peek().kind != Tok::Int) fail("expected integer after '-'");
        return Expr::integer(parse_int(next(), true));
      case Tok::String: return Expr::text(next().text);
      case Tok::Money: return Expr::text(next().text);
      case Tok::LParen: {
        next();
        Expr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (is_keyword(t.text)) fail("unexpected '" + t.text + "'");
        std::string name = next().text;
        return resolve(std::move(name));
      }
      default:
        fail("expected an expression");
    }
  }

  std::int64_t parse_int(const Token& t, bool negative) {
    // Accumulate negatively so INT64_MIN is representable.
    std::int64_t v = 0;
    for (char c : t.text) {
      std::int64_t d = c - '0';
      if (v < (INT64_MIN + d) / 10) {
        fail_at("integer literal out of range", t.pos);
      }
      v = v * 10 - d;
    }
    if (!negative) {
      if (v == INT64_MIN) fail_at("integer literal out of range", t.pos);
      v = -v;
    }
    return v;
  }

  Expr resolve(std::string name) {
    if (params_.count(name)) return Expr::var(std::move(name));
    if (constants_.count(name)) return Expr::constant(std::move(name));
    if (std::isupper(static_cast<unsigned char>(name[0]))) {
      return Expr::symbol(std::move(name));
    }
    return Expr::var(std::move(name));
  }

  void check_arities() {
    for (const auto& c : calls_) {
      auto it = proc_arity_.find(c.name);
      if (it != proc_arity_.end() && it->second.first != c.arity) {
        throw Error(ErrorCode::Arity,
                    "call to '" + c.name + "' passes " +
                        std::to_string(c.arity) + " arguments, but it takes " +
                        std::to_string(it->second.first),
                    c.pos);
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool collecting_ = false;
  std::set<std::string, std::less<>> constants_;
  std::set<std::string, std::less<>> params_;
  std::map<std::string, std::pair<std::size_t, SourcePos>, std::less<>>
      proc_arity_;
  std::vector<CallSite> calls_;

 public:
  void check_call_arities() { check_arities(); }
};

}  // namespace detail

/// Parses a whole `.seqc` file into its declaration tree and main goal.
inline Program parse_program(std::string_view text) {
  detail::Parser p(detail::lex(text));
  return p.parse_file();
}

/// Names of every constant declared anywhere in `p`, active or not.
inline std::set<std::string, std::less<>> constant_names(const ProgramD& p) {
  std::set<std::string, std::less<>> out;
  for (const auto& d : detail::Parser::all_decls(p)) {
    if (const auto* c = std::get_if<ConstDecl>(&d.node)) out.insert(c->name);
  }
  return out;
}

/// Parses a goal in the context of an existing declaration tree.
inline Goal parse_goal(std::string_view text,
                       const ProgramD& context = ProgramD::empty()) {
  detail::Parser p(detail::lex(text));
  p.seed_procedures(context);
  Goal g = p.parse_goal_only(constant_names(context));
  p.check_call_arities();
  return g;
}

// ---------------------------------------------------------------------------
// Pretty-printing

namespace detail {

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

inline int precedence(ArithOp op) {
  return op == ArithOp::Add || op == ArithOp::Sub ? 1 : 2;
}

inline char op_char(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return '+';
    case ArithOp::Sub: return '-';
    case ArithOp::Mul: return '*';
    case ArithOp::Div: return '/';
  }
  return '?';
}

inline void print_expr(std::string& out, const Expr& e, int min_prec) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, StrLit>) {
          out += is_money(n.value) ? n.value : quote(n.value);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          int prec = precedence(n.op);
          bool parens = prec < min_prec;
          if (parens) out += '(';
          print_expr(out, *n.left, prec);
          out += ' ';
          out += op_char(n.op);
          out += ' ';
          print_expr(out, *n.right, prec + 1);
          if (parens) out += ')';
        } else {
          out += n.name;
        }
      },
      e.node);
}

}  // namespace detail

inline std::string_view cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

inline std::string pretty(const Expr& e) {
  std::string out;
  detail::print_expr(out, e, 0);
  return out;
}

inline std::string pretty(const Cond& c) {
  return pretty(c.left) + " " + std::string(cmp_text(c.op)) + " " +
         pretty(c.right);
}

/// Value in literal syntax (text quoted unless it is a money token).
inline std::string pretty(const Value& v) {
  if (const auto* b = std::get_if<BoolV>(&v.v)) return b->value ? "true" : "false";
  return pretty(to_literal(v));
}

inline std::string pretty(const Goal& g);

inline std::string pretty(const Call& c) {
  std::string out = c.name + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i) out += ", ";
    out += pretty(c.args[i]);
  }
  return out + ")";
}

inline std::string pretty(const Goal& g) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Top>) {
          return "skip";
        } else if constexpr (std::is_same_v<T, Print>) {
          return "print(" + n.var + ")";
        } else if constexpr (std::is_same_v<T, Call>) {
          return pretty(n);
        } else if constexpr (std::is_same_v<T, CondG>) {
          return pretty(n.cond);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return n.var + " = " + pretty(n.expr);
        } else if constexpr (std::is_same_v<T, Seq>) {
          std::string first = pretty(*n.first);
          if (std::holds_alternative<Seq>(n.first->node)) {
            first = "{ " + first + " }";
          }
          return first + "; " + pretty(*n.second);
        } else {
          std::string out = "choice(";
          for (std::size_t i = 0; i < n.alternatives.size(); ++i) {
            if (i) out += ", ";
            out += pretty(n.alternatives[i]);
          }
          return out + ")";
        }
      },
      g.node);
}

inline std::string pretty(const Decl& d) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstDecl>) {
          return n.name + " == " + pretty(n.expr);
        } else {
          std::string out = n.name() + "(";
          for (std::size_t i = 0; i < n.params.size(); ++i) {
            if (i) out += ", ";
            out += n.params[i];
          }
          return out + ") = { " + pretty(n.body) + " }";
        }
      },
      d.node);
}

inline std::string pretty(const ProgramD& p) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return pretty(n.decl);
        } else if constexpr (std::is_same_v<T, And>) {
          std::string left = pretty(*n.left);
          if (std::holds_alternative<And>(n.left->node)) {
            left = "{ " + left + " }";
          }
          return left + "; " + pretty(*n.right);
        } else if constexpr (std::is_same_v<T, SeqChoiceD>) {
          std::string out = "choice(";
          for (std::size_t i = 0; i < n.alternatives.size(); ++i) {
            if (i) out += ", ";
            out += pretty(n.alternatives[i]);
          }
          return out + ")";
        } else {
          return "";
        }
      },
      p.node);
}

/// Canonical file text. `fmt` output; parse(pretty_file(p)) == p.
inline std::string pretty_file(const Program& prog) {
  std::string out;
  auto emit_decls = [&](const ProgramD& d) {
    std::vector<const ProgramD*> items;
    const ProgramD* cur = &d;
    while (const auto* a = std::get_if<And>(&cur->node)) {
      items.push_back(&a->left.get());
      cur = &a->right.get();
    }
    items.push_back(cur);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const ProgramD& item = *items[i];
      std::string text;
      if (const auto* ch = std::get_if<SeqChoiceD>(&item.node)) {
        text = "choice(\n";
        for (std::size_t k = 0; k < ch->alternatives.size(); ++k) {
          text += "    " + pretty(ch->alternatives[k]);
          text += k + 1 < ch->alternatives.size() ? ",\n" : "\n";
        }
        text += "  )";
      } else {
        text = pretty(item);
        if (std::holds_alternative<And>(item.node)) text = "{ " + text + " }";
      }
      out += "  " + text;
      out += i + 1 < items.size() ? ";\n" : "\n";
    }
  };
  auto emit_goal = [&](const Goal& g) {
    std::vector<const Goal*> items;
    const Goal* cur = &g;
    while (const auto* s = std::get_if<Seq>(&cur->node)) {
      items.push_back(&s->first.get());
      cur = &s->second.get();
    }
    items.push_back(cur);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Goal& item = *items[i];
      std::string text;
      if (const auto* ch = std::get_if<SeqChoiceG>(&item.node)) {
        text = "choice(\n";
        for (std::size_t k = 0; k < ch->alternatives.size(); ++k) {
          text += "    " + pretty(ch->alternatives[k]);
          text += k + 1 < ch->alternatives.size() ? ",\n" : "\n";
        }
        text += "  )";
      } else {
        text = pretty(item);
        if (std::holds_alternative<Seq>(item.node)) text = "{ " + text + " }";
      }
      out += "  " + text;
      out += i + 1 < items.size() ? ";\n" : "\n";
    }
  };
  if (!std::holds_alternative<EmptyD>(prog.decls.node)) {
    out += "decls {\n";
    emit_decls(prog.decls);
    out += "}\n";
  }
  out += "goal {\n";
  emit_goal(prog.goal);
  out += "}\n";
  return out;
}

/// `--addresses` listing: one line per declaration-level choice.
inline std::string list_addresses(const ProgramD& p) {
  std::ostringstream out;
  for_each_choice(p, [&](const Address& a, const SeqChoiceD& c) {
    std::string path = a.path.empty() ? "." : a.to_string();
    out << path << "\t" << c.alternatives.size() << " alternative"
        << (c.alternatives.size() == 1 ? "" : "s") << "\t"
        << pretty(ProgramD{c}) << "\n";
  });
  return out.str();
}

}  // namespace seqc

#endif  // SEQC_PARSER_HPP
