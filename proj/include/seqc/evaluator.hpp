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

#ifndef SEQC_EVALUATOR_HPP
#define SEQC_EVALUATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "seqc/ast.hpp"
#include "seqc/error.hpp"

namespace seqc {

/// Constants visible through the active view of a program, plus the
/// variable store. When several active declarations define the same
/// constant, the leftmost wins.
struct EvalEnv {
  std::map<std::string, Expr, std::less<>> constants;
  Subst theta;
  std::size_t max_const_depth = 64;

  static EvalEnv from(const ProgramD& p, Subst theta = {}) {
    EvalEnv env;
    for (const auto& d : active_view(p)) {
      if (const auto* c = std::get_if<ConstDecl>(&d.node)) {
        env.constants.emplace(c->name, c->expr);
      }
    }
    env.theta = std::move(theta);
    return env;
  }
};

namespace detail {

inline std::int64_t int_operand(const Value& v, char op) {
  if (const auto* i = std::get_if<IntV>(&v.v)) return i->value;
  throw Error(ErrorCode::TypeMismatch,
              std::string("operator '") + op + "' needs integers, got " +
                  std::string(value_kind(v)));
}

inline Value eval_expr(const EvalEnv& env, const Expr& e, std::size_t depth) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Value::integer(n.value);
        } else if constexpr (std::is_same_v<T, StrLit>) {
          return Value::text(n.value);
        } else if constexpr (std::is_same_v<T, SymLit>) {
          return Value::symbol(n.name);
        } else if constexpr (std::is_same_v<T, Var>) {
          if (const Value* v = env.theta.lookup(n.name)) return *v;
          throw Error(ErrorCode::UnboundVariable,
                      "variable '" + n.name + "' is unbound");
        } else if constexpr (std::is_same_v<T, ConstRef>) {
          auto it = env.constants.find(n.name);
          if (it == env.constants.end()) {
            throw Error(ErrorCode::UnknownConstant,
                        "constant '" + n.name + "' has no active declaration");
          }
          if (depth >= env.max_const_depth) {
            throw Error(ErrorCode::ConstantCycle,
                        "constant '" + n.name + "' does not resolve within " +
                            std::to_string(env.max_const_depth) + " steps");
          }
          return eval_expr(env, it->second, depth + 1);
        } else {
          char op = '?';
          switch (n.op) {
            case ArithOp::Add: op = '+'; break;
            case ArithOp::Sub: op = '-'; break;
            case ArithOp::Mul: op = '*'; break;
            case ArithOp::Div: op = '/'; break;
          }
          std::int64_t a = int_operand(eval_expr(env, *n.left, depth), op);
          std::int64_t b = int_operand(eval_expr(env, *n.right, depth), op);
          std::int64_t r = 0;
          bool overflow = false;
          switch (n.op) {
            case ArithOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
            case ArithOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
            case ArithOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
            case ArithOp::Div:
              if (b == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
              if (a == INT64_MIN && b == -1) overflow = true;
              else r = a / b;
              break;
          }
          if (overflow) {
            throw Error(ErrorCode::Overflow, "integer overflow in arithmetic");
          }
          return Value::integer(r);
        }
      },
      e.node);
}

}  // namespace detail

/// Literals evaluate to themselves, constants by name through the active
/// declarations, variables through theta.
inline Value eval_expr(const EvalEnv& env, const Expr& e) {
  return detail::eval_expr(env, e, 0);
}

/// Equality across different value kinds is false, not an error. Ordering
/// comparisons require integers.
inline bool eval_cond(const EvalEnv& env, const Cond& c) {
  Value l = eval_expr(env, c.left);
  Value r = eval_expr(env, c.right);
  switch (c.op) {
    case CmpOp::Eq: return l == r;
    case CmpOp::Ne: return !(l == r);
    default: break;
  }
  const auto* li = std::get_if<IntV>(&l.v);
  const auto* ri = std::get_if<IntV>(&r.v);
  if (!li || !ri) {
    throw Error(ErrorCode::TypeMismatch,
                "ordering comparison needs integers, got " +
                    std::string(value_kind(l)) + " and " +
                    std::string(value_kind(r)));
  }
  switch (c.op) {
    case CmpOp::Lt: return li->value < ri->value;
    case CmpOp::Le: return li->value <= ri->value;
    case CmpOp::Gt: return li->value > ri->value;
    case CmpOp::Ge: return li->value >= ri->value;
    default: return false;
  }
}

namespace detail {

inline Expr substitute(const Expr& e,
                       const std::map<std::string, Expr, std::less<>>& args) {
  if (const auto* v = std::get_if<Var>(&e.node)) {
    auto it = args.find(v->name);
    return it == args.end() ? e : it->second;
  }
  if (const auto* b = std::get_if<BinOp>(&e.node)) {
    return Expr::binary(b->op, substitute(*b->left, args),
                        substitute(*b->right, args));
  }
  return e;
}

inline Goal substitute(const Goal& g,
                       const std::map<std::string, Expr, std::less<>>& args) {
  return std::visit(
      [&](const auto& n) -> Goal {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Call>) {
          std::vector<Expr> out;
          out.reserve(n.args.size());
          for (const auto& a : n.args) out.push_back(substitute(a, args));
          return Goal::call(n.name, std::move(out));
        } else if constexpr (std::is_same_v<T, CondG>) {
          return Goal::cond(n.cond.op, substitute(n.cond.left, args),
                            substitute(n.cond.right, args));
        } else if constexpr (std::is_same_v<T, Assign>) {
          return Goal::assign(n.var, substitute(n.expr, args));
        } else if constexpr (std::is_same_v<T, Seq>) {
          return Goal::seq(substitute(*n.first, args),
                           substitute(*n.second, args));
        } else if constexpr (std::is_same_v<T, SeqChoiceG>) {
          std::vector<Goal> alts;
          alts.reserve(n.alternatives.size());
          for (const auto& a : n.alternatives) alts.push_back(substitute(a, args));
          return Goal::choice(std::move(alts));
        } else {
          return g;
        }
      },
      g.node);
}

}  // namespace detail

/// Procedure body with each parameter replaced by the literal for the
/// matching argument value (call-by-value argument passing).
inline Goal instantiate(const ProcDecl& proc, const std::vector<Value>& args) {
  if (args.size() != proc.params.size()) {
    throw Error(ErrorCode::Arity, "procedure '" + proc.name() + "' takes " +
                                      std::to_string(proc.params.size()) +
                                      " arguments, got " +
                                      std::to_string(args.size()));
  }
  std::map<std::string, Expr, std::less<>> bound;
  for (std::size_t i = 0; i < args.size(); ++i) {
    bound.insert_or_assign(proc.params[i], to_literal(args[i]));
  }
  return detail::substitute(proc.body, bound);
}

}  // namespace seqc

#endif  // SEQC_EVALUATOR_HPP
