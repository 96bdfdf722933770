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

/// @file machine.hpp
/// The machine's single-move step.
///
/// ex_m_step reduces the goal left to right until exactly one move happens:
/// an assignment, a print, or a goal-level choice switch. Conditions and
/// `skip` succeed without moving. A procedure call is resolved by
/// backchaining over the active declarations and is replaced in the goal by
/// the instantiated body once that body moves.
///
/// A goal-level choice first reduces inside its first alternative. It
/// switches (drops that alternative) only when the first alternative is
/// stuck and at least one alternative remains after it.
///
/// The step is pure: output is returned in the outcome, never written.

#ifndef SEQC_MACHINE_HPP
#define SEQC_MACHINE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqc/ast.hpp"
#include "seqc/evaluator.hpp"

namespace seqc {

struct EngineLimits {
  /// Maximum nesting of procedure unfoldings within one step or one
  /// stability check.
  std::size_t max_unfold = 64;
};

/// What kind of move was made. A move made inside the active alternative of
/// a goal-level choice is reported as Advance; one made inside a procedure
/// body as CallMove. The innermost of these wrappers wins.
enum class MoveKind { None, AssignMove, PrintMove, Switch, Advance, CallMove };

inline std::string_view move_rule_label(MoveKind k) {
  switch (k) {
    case MoveKind::AssignMove: return "8";
    case MoveKind::PrintMove: return "9";
    case MoveKind::Switch: return "11";
    case MoveKind::Advance: return "advance";
    case MoveKind::CallMove: return "call";
    case MoveKind::None: break;
  }
  return "none";
}

struct MoveOutcome {
  bool moved = false;
  Goal new_goal;
  Subst new_theta;
  /// At most one line.
  std::vector<std::string> output;
  MoveKind kind = MoveKind::None;
  /// The primitive effect behind `kind` (AssignMove, PrintMove or Switch).
  MoveKind effect = MoveKind::None;
  /// Location of the move in new_goal: Seq children are 0 and 1, choice
  /// alternative i is i. A procedure body takes the place of its call.
  std::vector<std::size_t> goal_path;
  /// The binding an assignment added or replaced.
  std::optional<std::pair<std::string, Value>> binding;
};

namespace detail {

struct Reduction {
  bool moved = false;
  Goal goal;
  MoveKind kind = MoveKind::None;
  MoveKind effect = MoveKind::None;
  std::vector<std::size_t> rev_path;
  std::optional<std::pair<std::string, Value>> binding;
  std::optional<std::string> output;

  static Reduction still(const Goal& g) {
    Reduction r;
    r.goal = g;
    return r;
  }
  static Reduction move(Goal g, MoveKind kind) {
    Reduction r;
    r.moved = true;
    r.goal = std::move(g);
    r.kind = kind;
    r.effect = kind;
    return r;
  }
};

class MachineStep {
 public:
  MachineStep(const ProgramD& program, const Subst& theta,
              const EngineLimits& limits)
      : program_(program), env_(EvalEnv::from(program, theta)), limits_(limits) {}

  std::optional<Reduction> step(const Goal& g, std::size_t depth) {
    return std::visit([&](const auto& n) { return step_node(g, n, depth); },
                      g.node);
  }

  std::optional<Reduction> backchain(const ProgramD& d, const Call& call,
                                     const Goal& call_goal,
                                     std::size_t depth) {
    std::vector<Value> args;
    args.reserve(call.args.size());
    try {
      for (const auto& a : call.args) args.push_back(eval_expr(env_, a));
    } catch (const Error&) {
      return std::nullopt;
    }
    return bch(d, call, args, call_goal, depth);
  }

 private:
  std::optional<Reduction> step_node(const Goal& g, const Top&, std::size_t) {
    return Reduction::still(g);
  }

  std::optional<Reduction> step_node(const Goal& g, const CondG& c,
                                     std::size_t) {
    bool holds = false;
    try {
      holds = eval_cond(env_, c.cond);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!holds) return std::nullopt;
    return Reduction::still(g);
  }

  std::optional<Reduction> step_node(const Goal&, const Assign& a,
                                     std::size_t) {
    Value v;
    try {
      v = eval_expr(env_, a.expr);
    } catch (const Error&) {
      return std::nullopt;
    }
    auto r = Reduction::move(Goal::top(), MoveKind::AssignMove);
    r.binding.emplace(a.var, std::move(v));
    return r;
  }

  std::optional<Reduction> step_node(const Goal&, const Print& p,
                                     std::size_t) {
    const Value* v = env_.theta.lookup(p.var);
    if (v == nullptr) {
      throw Error(ErrorCode::UnboundVariable,
                  "print of unbound variable '" + p.var + "'");
    }
    auto r = Reduction::move(Goal::top(), MoveKind::PrintMove);
    r.output = display(*v);
    return r;
  }

  std::optional<Reduction> step_node(const Goal& g, const Call& c,
                                     std::size_t depth) {
    return backchain(program_, c, g, depth);
  }

  std::optional<Reduction> step_node(const Goal& g, const Seq& s,
                                     std::size_t depth) {
    auto first = step(*s.first, depth);
    if (!first) return std::nullopt;
    if (first->moved) {
      first->goal = Goal::seq(std::move(first->goal), *s.second);
      first->rev_path.push_back(0);
      return first;
    }
    auto second = step(*s.second, depth);
    if (!second) return std::nullopt;
    if (!second->moved) return Reduction::still(g);
    second->goal = Goal::seq(*s.first, std::move(second->goal));
    second->rev_path.push_back(1);
    return second;
  }

  std::optional<Reduction> step_node(const Goal& g, const SeqChoiceG& c,
                                     std::size_t depth) {
    const auto& alts = c.alternatives;
    auto first = step(alts.front(), depth);
    if (first) {
      if (!first->moved) return Reduction::still(g);
      std::vector<Goal> rest = alts;
      rest.front() = std::move(first->goal);
      first->goal = Goal::choice(std::move(rest));
      first->rev_path.push_back(0);
      relabel(*first, MoveKind::Advance);
      return first;
    }
    if (alts.size() < 2) return std::nullopt;
    return Reduction::move(Goal::choice({alts.begin() + 1, alts.end()}),
                           MoveKind::Switch);
  }

  std::optional<Reduction> bch(const ProgramD& d, const Call& call,
                               const std::vector<Value>& args,
                               const Goal& call_goal, std::size_t depth) {
    if (const auto* leaf = std::get_if<Leaf>(&d.node)) {
      const auto* proc = std::get_if<ProcDecl>(&leaf->decl.node);
      if (proc == nullptr || proc->name() != call.name ||
          proc->params.size() != args.size()) {
        return std::nullopt;
      }
      if (depth >= limits_.max_unfold) {
        throw Error(ErrorCode::DepthExceeded,
                    "procedure unfolding exceeded depth " +
                        std::to_string(limits_.max_unfold) + " at '" +
                        call.name + "'");
      }
      Goal body = instantiate(*proc, args);
      auto r = step(body, depth + 1);
      if (!r) return std::nullopt;
      if (!r->moved) return Reduction::still(call_goal);
      relabel(*r, MoveKind::CallMove);
      return r;
    }
    if (const auto* conj = std::get_if<And>(&d.node)) {
      if (auto r = bch(*conj->left, call, args, call_goal, depth)) return r;
      return bch(*conj->right, call, args, call_goal, depth);
    }
    if (const auto* ch = std::get_if<SeqChoiceD>(&d.node)) {
      if (ch->alternatives.empty()) return std::nullopt;
      return bch(ch->alternatives.front(), call, args, call_goal, depth);
    }
    return std::nullopt;
  }

  static void relabel(Reduction& r, MoveKind wrapper) {
    if (r.kind == MoveKind::AssignMove || r.kind == MoveKind::PrintMove) {
      r.kind = wrapper;
    }
  }

  const ProgramD& program_;
  EvalEnv env_;
  EngineLimits limits_;
};

inline MoveOutcome to_outcome(Reduction r, const Subst& theta) {
  MoveOutcome out;
  out.moved = r.moved;
  out.new_goal = std::move(r.goal);
  out.new_theta = theta;
  if (r.binding) out.new_theta.bind(r.binding->first, r.binding->second);
  if (r.output) out.output.push_back(std::move(*r.output));
  out.kind = r.kind;
  out.effect = r.effect;
  out.goal_path.assign(r.rev_path.rbegin(), r.rev_path.rend());
  out.binding = std::move(r.binding);
  return out;
}

}  // namespace detail

/// One machine move on (program, goal, theta). Returns nullopt when the
/// machine has no move and the goal does not hold. A successful result with
/// moved == false means the goal holds as it stands.
///
/// Throws Error for run-fatal conditions: printing an unbound variable, or
/// procedure unfolding deeper than `limits.max_unfold`.
inline std::optional<MoveOutcome> ex_m_step(const ProgramD& program,
                                            const Goal& goal,
                                            const Subst& theta,
                                            const EngineLimits& limits = {}) {
  detail::MachineStep m(program, theta, limits);
  auto r = m.step(goal, 0);
  if (!r) return std::nullopt;
  return detail::to_outcome(std::move(*r), theta);
}

/// Backchains `call` against the declarations in `d`, with `program` as the
/// context for constants and nested calls. Procedures match by name and
/// arity; conjunctions are tried left first; a declaration-level choice only
/// offers its first alternative. On a move, new_goal is the instantiated
/// body's residue.
inline std::optional<MoveOutcome> bch(const ProgramD& d, const ProgramD& program,
                                      const Call& call, const Subst& theta,
                                      const EngineLimits& limits = {}) {
  detail::MachineStep m(program, theta, limits);
  Goal call_goal{call};
  auto r = m.backchain(d, call, call_goal, 0);
  if (!r) return std::nullopt;
  return detail::to_outcome(std::move(*r), theta);
}

}  // namespace seqc

#endif  // SEQC_MACHINE_HPP
