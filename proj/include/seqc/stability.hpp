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

/// @file stability.hpp
/// Elementarization and the four-way status classifier.
///
/// The elementarization of a formula keeps only what can be judged right
/// now: every choice becomes its first alternative, assignments and prints
/// become false (a pending move is never a settled truth), sequencing
/// becomes conjunction. A position is stable when the elementarization of
/// `program -> goal` is true.
///
/// Truth is decided by ground evaluation under the current constants and
/// variable store. Procedure atoms are unfolded through the first matching
/// active declaration, to a bounded depth.

#ifndef SEQC_STABILITY_HPP
#define SEQC_STABILITY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqc/ast.hpp"
#include "seqc/evaluator.hpp"
#include "seqc/machine.hpp"
#include "seqc/parser.hpp"
#include "seqc/user.hpp"

namespace seqc {

struct ElemFormula;

struct TrueE {
  bool operator==(const TrueE&) const = default;
};
struct FalseE {
  bool operator==(const FalseE&) const = default;
};
struct AtomE {
  Call atom;
  bool operator==(const AtomE&) const = default;
};
struct CondE {
  Cond cond;
  bool operator==(const CondE&) const = default;
};
struct AndE {
  std::vector<ElemFormula> parts;
  bool operator==(const AndE&) const = default;
};
/// body -> head, from a procedure declaration `head = { body }`.
struct ImplE {
  Box<ElemFormula> body;
  Call head;
  bool operator==(const ImplE&) const = default;
};

struct ElemFormula {
  std::variant<TrueE, FalseE, AtomE, CondE, AndE, ImplE> node;
  bool operator==(const ElemFormula&) const = default;
};

namespace detail {

inline void append_conjunct(std::vector<ElemFormula>& parts, ElemFormula f) {
  if (auto* a = std::get_if<AndE>(&f.node)) {
    for (auto& p : a->parts) parts.push_back(std::move(p));
  } else {
    parts.push_back(std::move(f));
  }
}

}  // namespace detail

inline ElemFormula elementarize_goal(const Goal& g) {
  return std::visit(
      [](const auto& n) -> ElemFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Top>) {
          return {TrueE{}};
        } else if constexpr (std::is_same_v<T, Print> ||
                             std::is_same_v<T, Assign>) {
          return {FalseE{}};
        } else if constexpr (std::is_same_v<T, Call>) {
          return {AtomE{n}};
        } else if constexpr (std::is_same_v<T, CondG>) {
          return {CondE{n.cond}};
        } else if constexpr (std::is_same_v<T, Seq>) {
          AndE out;
          detail::append_conjunct(out.parts, elementarize_goal(*n.first));
          detail::append_conjunct(out.parts, elementarize_goal(*n.second));
          return {std::move(out)};
        } else {
          return elementarize_goal(n.alternatives.front());
        }
      },
      g.node);
}

/// Constants elementarize to true: they are definitions, read through
/// EvalEnv, not claims.
inline ElemFormula elementarize_program(const ProgramD& p) {
  return std::visit(
      [](const auto& n) -> ElemFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          if (const auto* proc = std::get_if<ProcDecl>(&n.decl.node)) {
            return {ImplE{elementarize_goal(proc->body), proc->head}};
          }
          return {TrueE{}};
        } else if constexpr (std::is_same_v<T, And>) {
          AndE out;
          detail::append_conjunct(out.parts, elementarize_program(*n.left));
          detail::append_conjunct(out.parts, elementarize_program(*n.right));
          return {std::move(out)};
        } else if constexpr (std::is_same_v<T, SeqChoiceD>) {
          return elementarize_program(n.alternatives.front());
        } else {
          return {TrueE{}};
        }
      },
      p.node);
}

inline std::string pretty(const ElemFormula& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueE>) {
          return "true";
        } else if constexpr (std::is_same_v<T, FalseE>) {
          return "false";
        } else if constexpr (std::is_same_v<T, AtomE>) {
          return pretty(n.atom);
        } else if constexpr (std::is_same_v<T, CondE>) {
          return pretty(n.cond);
        } else if constexpr (std::is_same_v<T, AndE>) {
          if (n.parts.empty()) return "true";
          std::string out = "(";
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (i) out += " & ";
            out += pretty(n.parts[i]);
          }
          return out + ")";
        } else {
          return "(" + pretty(*n.body) + " -> " + pretty(n.head) + ")";
        }
      },
      f.node);
}

/// Procedure declarations in the active view, left to right.
inline std::vector<ProcDecl> active_procedures(const ProgramD& p) {
  std::vector<ProcDecl> out;
  for (const auto& d : active_view(p)) {
    if (const auto* proc = std::get_if<ProcDecl>(&d.node)) out.push_back(*proc);
  }
  return out;
}

/// Ground truth of an elementarized formula. A condition whose evaluation
/// fails counts as false. An atom unfolds into the first matching active
/// procedure, consuming one unit of `depth`; no match means false. A
/// parametric implication `body -> p(x..)` holds for every instance under
/// unfolding and counts as true.
///
/// Throws DepthExceeded when unfolding runs out of depth.
inline bool elem_truth(const EvalEnv& env, const std::vector<ProcDecl>& defs,
                       const ElemFormula& f, std::size_t depth) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueE>) {
          return true;
        } else if constexpr (std::is_same_v<T, FalseE>) {
          return false;
        } else if constexpr (std::is_same_v<T, CondE>) {
          try {
            return eval_cond(env, n.cond);
          } catch (const Error&) {
            return false;
          }
        } else if constexpr (std::is_same_v<T, AndE>) {
          for (const auto& part : n.parts) {
            if (!elem_truth(env, defs, part, depth)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ImplE>) {
          if (!n.head.args.empty()) return true;
          return !elem_truth(env, defs, *n.body, depth) ||
                 elem_truth(env, defs, ElemFormula{AtomE{n.head}}, depth);
        } else {
          std::vector<Value> args;
          args.reserve(n.atom.args.size());
          try {
            for (const auto& a : n.atom.args) args.push_back(eval_expr(env, a));
          } catch (const Error&) {
            return false;
          }
          for (const auto& proc : defs) {
            if (proc.name() != n.atom.name || proc.params.size() != args.size()) {
              continue;
            }
            if (depth == 0) {
              throw Error(ErrorCode::DepthExceeded,
                          "unfolding '" + n.atom.name +
                              "' exceeded the depth limit");
            }
            return elem_truth(env, defs,
                              elementarize_goal(instantiate(proc, args)),
                              depth - 1);
          }
          return false;
        }
      },
      f.node);
}

/// Whether elem(program) -> elem(goal) is true under (program, theta).
inline bool is_stable(const ProgramD& p, const Goal& g, const Subst& theta,
                      const EngineLimits& limits = {}) {
  EvalEnv env = EvalEnv::from(p, theta);
  auto defs = active_procedures(p);
  return !elem_truth(env, defs, elementarize_program(p), limits.max_unfold) ||
         elem_truth(env, defs, elementarize_goal(g), limits.max_unfold);
}

/// A trial step on the current state. The step is pure, so nothing it would
/// print escapes.
inline bool machine_move_available(const ProgramD& p, const Goal& g,
                                   const Subst& theta,
                                   const EngineLimits& limits = {}) {
  auto out = ex_m_step(p, g, theta, limits);
  return out && out->moved;
}

/// MachineMove when unstable and the machine can move, MachineStuck when
/// unstable and it cannot, UserMove when stable and some choice can still
/// be switched, Terminal otherwise.
inline Status stable_status(const ProgramD& p, const Goal& g,
                            const Subst& theta,
                            const EngineLimits& limits = {}) {
  if (!is_stable(p, g, theta, limits)) {
    return machine_move_available(p, g, theta, limits) ? Status::MachineMove
                                                       : Status::MachineStuck;
  }
  return user_move_available(p) ? Status::UserMove : Status::Terminal;
}

/// Everything behind one classification, for `--explain-stability`.
struct StabilityReport {
  ElemFormula program;
  ElemFormula goal;
  bool program_truth = false;
  bool goal_truth = false;
  bool stable = false;
  bool machine_move = false;
  /// Set when the trial step hit a run-fatal error.
  std::optional<std::string> machine_error;
  bool user_move = false;
  Status status = Status::MachineStuck;
};

inline StabilityReport explain_stability(const ProgramD& p, const Goal& g,
                                         const Subst& theta,
                                         const EngineLimits& limits = {}) {
  StabilityReport r;
  r.program = elementarize_program(p);
  r.goal = elementarize_goal(g);
  EvalEnv env = EvalEnv::from(p, theta);
  auto defs = active_procedures(p);
  r.program_truth = elem_truth(env, defs, r.program, limits.max_unfold);
  r.goal_truth = elem_truth(env, defs, r.goal, limits.max_unfold);
  r.stable = !r.program_truth || r.goal_truth;
  try {
    r.machine_move = machine_move_available(p, g, theta, limits);
  } catch (const Error& e) {
    r.machine_error = e.what();
  }
  r.user_move = user_move_available(p);
  if (!r.stable) {
    r.status = r.machine_move ? Status::MachineMove : Status::MachineStuck;
  } else {
    r.status = r.user_move ? Status::UserMove : Status::Terminal;
  }
  return r;
}

inline std::string format_report(const StabilityReport& r) {
  std::string out;
  out += "elem(program): " + pretty(r.program) + " = " +
         (r.program_truth ? "true" : "false") + "\n";
  out += "elem(goal):    " + pretty(r.goal) + " = " +
         (r.goal_truth ? "true" : "false") + "\n";
  out += std::string("stable:        ") + (r.stable ? "yes" : "no") + "\n";
  out += "moves:         machine=";
  out += r.machine_error ? "error (" + *r.machine_error + ")"
                         : (r.machine_move ? "yes" : "no");
  out += std::string(" user=") + (r.user_move ? "yes" : "no") + "\n";
  out += "status:        " + std::string(status_name(r.status)) + " (" +
         std::to_string(status_code(r.status)) + ")\n";
  return out;
}

}  // namespace seqc

#endif  // SEQC_STABILITY_HPP
