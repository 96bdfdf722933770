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

/// @file ast.hpp
/// Abstract syntax for the sequential-choice language.
///
/// Three syntactic categories make up a program:
///  - Goal: the main statement the machine executes and rewrites move by
///    move (skip, print, procedure call, condition, assignment, sequencing
///    and goal-level choice).
///  - Decl: a constant declaration `c == E` or a procedure `p(x..) = { G }`
///    whose parameters are universally bound.
///  - ProgramD: declarations combined by conjunction and by declaration-level
///    sequential choice. Only user moves (Esc events) rewrite a ProgramD.
///
/// Trees are immutable values. Recursive children are held in Box, which
/// shares storage between copies, so rewriting a node copies only the spine
/// from the root to that node.

#ifndef SEQC_AST_HPP
#define SEQC_AST_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqc/error.hpp"

namespace seqc {

/// Immutable, shared, never-null box for recursive tree children.
/// Equality is structural.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT

  const T& operator*() const noexcept { return *ptr_; }
  const T* operator->() const noexcept { return ptr_.get(); }
  const T& get() const noexcept { return *ptr_; }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

// ---------------------------------------------------------------------------
// Expressions and conditions

struct Expr;

struct IntLit {
  std::int64_t value = 0;
  bool operator==(const IntLit&) const = default;
};
struct StrLit {
  std::string value;
  bool operator==(const StrLit&) const = default;
};
struct SymLit {
  std::string name;
  bool operator==(const SymLit&) const = default;
};
struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};
struct ConstRef {
  std::string name;
  bool operator==(const ConstRef&) const = default;
};

enum class ArithOp { Add, Sub, Mul, Div };

struct BinOp {
  ArithOp op = ArithOp::Add;
  Box<Expr> left;
  Box<Expr> right;
  bool operator==(const BinOp&) const = default;
};

struct Expr {
  using Node = std::variant<IntLit, StrLit, SymLit, Var, ConstRef, BinOp>;
  Node node;

  bool operator==(const Expr&) const = default;

  static Expr integer(std::int64_t v) { return {IntLit{v}}; }
  static Expr text(std::string v) { return {StrLit{std::move(v)}}; }
  static Expr symbol(std::string n) { return {SymLit{std::move(n)}}; }
  static Expr var(std::string n) { return {Var{std::move(n)}}; }
  static Expr constant(std::string n) { return {ConstRef{std::move(n)}}; }
  static Expr binary(ArithOp op, Expr l, Expr r) {
    return {BinOp{op, std::move(l), std::move(r)}};
  }
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Cond {
  CmpOp op = CmpOp::Eq;
  Expr left;
  Expr right;
  bool operator==(const Cond&) const = default;
};

// ---------------------------------------------------------------------------
// Goals

struct Goal;

struct Top {
  bool operator==(const Top&) const = default;
};
struct Print {
  std::string var;
  bool operator==(const Print&) const = default;
};
struct Call {
  std::string name;
  std::vector<Expr> args;
  bool operator==(const Call&) const = default;
};
struct CondG {
  Cond cond;
  bool operator==(const CondG&) const = default;
};
struct Assign {
  std::string var;
  Expr expr;
  bool operator==(const Assign&) const = default;
};
struct Seq {
  Box<Goal> first;
  Box<Goal> second;
  bool operator==(const Seq&) const = default;
};
/// Goal-level sequential choice. Never empty; the parser builds it with at
/// least two alternatives and machine switches drop one from the front.
struct SeqChoiceG {
  std::vector<Goal> alternatives;
  bool operator==(const SeqChoiceG&) const = default;
};

struct Goal {
  using Node =
      std::variant<Top, Print, Call, CondG, Assign, Seq, SeqChoiceG>;
  Node node;

  bool operator==(const Goal&) const = default;

  static Goal top() { return {Top{}}; }
  static Goal print(std::string var) { return {Print{std::move(var)}}; }
  static Goal call(std::string name, std::vector<Expr> args = {}) {
    return {Call{std::move(name), std::move(args)}};
  }
  static Goal cond(CmpOp op, Expr l, Expr r) {
    return {CondG{Cond{op, std::move(l), std::move(r)}}};
  }
  static Goal assign(std::string var, Expr e) {
    return {Assign{std::move(var), std::move(e)}};
  }
  static Goal seq(Goal a, Goal b) { return {Seq{std::move(a), std::move(b)}}; }
  static Goal choice(std::vector<Goal> alts) {
    return {SeqChoiceG{std::move(alts)}};
  }
};

// ---------------------------------------------------------------------------
// Declarations and programs

struct ConstDecl {
  std::string name;
  Expr expr;
  bool operator==(const ConstDecl&) const = default;
};

/// `head = { body }` with the head's arguments universally bound. The head's
/// arguments are exactly Var(param) for each param, in order.
struct ProcDecl {
  std::vector<std::string> params;
  Call head;
  Goal body;
  bool operator==(const ProcDecl&) const = default;

  const std::string& name() const noexcept { return head.name; }
};

struct Decl {
  std::variant<ConstDecl, ProcDecl> node;
  bool operator==(const Decl&) const = default;
};

struct ProgramD;

struct Leaf {
  Decl decl;
  bool operator==(const Leaf&) const = default;
};
struct And {
  Box<ProgramD> left;
  Box<ProgramD> right;
  bool operator==(const And&) const = default;
};
struct SeqChoiceD {
  std::vector<ProgramD> alternatives;
  bool operator==(const SeqChoiceD&) const = default;
};
/// A program with no declarations at all (the `decls` block was omitted).
struct EmptyD {
  bool operator==(const EmptyD&) const = default;
};

struct ProgramD {
  using Node = std::variant<Leaf, And, SeqChoiceD, EmptyD>;
  Node node;

  bool operator==(const ProgramD&) const = default;

  static ProgramD empty() { return {EmptyD{}}; }
  static ProgramD constant(std::string name, Expr e) {
    return {Leaf{Decl{ConstDecl{std::move(name), std::move(e)}}}};
  }
  static ProgramD procedure(std::string name, std::vector<std::string> params,
                            Goal body) {
    std::vector<Expr> head_args;
    head_args.reserve(params.size());
    for (const auto& p : params) head_args.push_back(Expr::var(p));
    return {Leaf{Decl{ProcDecl{std::move(params),
                               Call{std::move(name), std::move(head_args)},
                               std::move(body)}}}};
  }
  static ProgramD conj(ProgramD l, ProgramD r) {
    return {And{std::move(l), std::move(r)}};
  }
  static ProgramD choice(std::vector<ProgramD> alts) {
    return {SeqChoiceD{std::move(alts)}};
  }
};

// ---------------------------------------------------------------------------
// Runtime values and the substitution store

struct IntV {
  std::int64_t value = 0;
  bool operator==(const IntV&) const = default;
};
struct StrV {
  std::string value;
  bool operator==(const StrV&) const = default;
};
struct SymV {
  std::string name;
  bool operator==(const SymV&) const = default;
};
struct BoolV {
  bool value = false;
  bool operator==(const BoolV&) const = default;
};

struct Value {
  std::variant<IntV, StrV, SymV, BoolV> v;
  bool operator==(const Value&) const = default;

  static Value integer(std::int64_t x) { return {IntV{x}}; }
  static Value text(std::string s) { return {StrV{std::move(s)}}; }
  static Value symbol(std::string s) { return {SymV{std::move(s)}}; }
  static Value boolean(bool b) { return {BoolV{b}}; }
};

/// Kind tag used in serialized snapshots: int, str, sym or bool.
inline std::string_view value_kind(const Value& v) {
  switch (v.v.index()) {
    case 0: return "int";
    case 1: return "str";
    case 2: return "sym";
    default: return "bool";
  }
}

/// Text a print move emits for a value. Strings are written verbatim.
inline std::string display(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntV>) return std::to_string(x.value);
        else if constexpr (std::is_same_v<T, StrV>) return x.value;
        else if constexpr (std::is_same_v<T, SymV>) return x.name;
        else return x.value ? "true" : "false";
      },
      v.v);
}

/// Literal expression denoting a value. Booleans have no literal form.
inline Expr to_literal(const Value& v) {
  return std::visit(
      [](const auto& x) -> Expr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntV>) return Expr::integer(x.value);
        else if constexpr (std::is_same_v<T, StrV>) return Expr::text(x.value);
        else if constexpr (std::is_same_v<T, SymV>) return Expr::symbol(x.name);
        else throw Error(ErrorCode::TypeMismatch,
                         "boolean value has no literal form");
      },
      v.v);
}

/// The variable store. Binding an existing name replaces its value; names
/// are never removed.
class Subst {
 public:
  using Map = std::map<std::string, Value, std::less<>>;

  Subst() = default;

  /// theta ⊎ {<name, value>}
  Subst with(std::string name, Value value) const {
    Subst out = *this;
    out.bind(std::move(name), std::move(value));
    return out;
  }

  void bind(std::string name, Value value) {
    bindings_.insert_or_assign(std::move(name), std::move(value));
  }

  const Value* lookup(std::string_view name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const Map& bindings() const noexcept { return bindings_; }

  bool operator==(const Subst&) const = default;

 private:
  Map bindings_;
};

// ---------------------------------------------------------------------------
// Addresses, events, status

/// Root-relative child-index path into a ProgramD. And children are 0 and 1;
/// alternative i of a SeqChoiceD is child i.
struct Address {
  std::vector<std::size_t> path;

  bool operator==(const Address&) const = default;
  auto operator<=>(const Address&) const = default;

  /// Dot-separated form, e.g. "1.0". The root is the empty string; parse()
  /// also accepts "." for it.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(path[i]);
    }
    return out;
  }

  /// Parses the dot-separated form. Returns nullopt on malformed text.
  static std::optional<Address> parse(std::string_view text) {
    Address a;
    if (text.empty() || text == ".") return a;
    std::size_t i = 0;
    while (i <= text.size()) {
      std::size_t j = text.find('.', i);
      if (j == std::string_view::npos) j = text.size();
      auto part = text.substr(i, j - i);
      if (part.empty() || part.size() > 9) return std::nullopt;
      std::size_t n = 0;
      for (char c : part) {
        if (c < '0' || c > '9') return std::nullopt;
        n = n * 10 + static_cast<std::size_t>(c - '0');
      }
      a.path.push_back(n);
      i = j + 1;
    }
    return a;
  }
};

enum class EventKind { Esc };

/// An Esc keystroke addressed to one declaration-level choice.
struct Event {
  Address address;
  EventKind kind = EventKind::Esc;
  bool operator==(const Event&) const = default;
};

enum class Status {
  MachineMove = 0,
  MachineStuck = -1,
  UserMove = 1,
  Terminal = 2,
};

inline int status_code(Status s) { return static_cast<int>(s); }

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::MachineMove: return "MachineMove";
    case Status::MachineStuck: return "MachineStuck";
    case Status::UserMove: return "UserMove";
    case Status::Terminal: return "Terminal";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tree operations

/// Subtree at `a`. Throws InvalidAddress if the path walks off the tree.
inline const ProgramD& address_resolve(const ProgramD& p, const Address& a) {
  const ProgramD* cur = &p;
  for (std::size_t depth = 0; depth < a.path.size(); ++depth) {
    std::size_t idx = a.path[depth];
    const ProgramD* next = nullptr;
    if (const auto* conj = std::get_if<And>(&cur->node)) {
      if (idx == 0) next = &conj->left.get();
      else if (idx == 1) next = &conj->right.get();
    } else if (const auto* ch = std::get_if<SeqChoiceD>(&cur->node)) {
      if (idx < ch->alternatives.size()) next = &ch->alternatives[idx];
    }
    if (next == nullptr) {
      throw Error(ErrorCode::InvalidAddress,
                  "address '" + a.to_string() + "' does not name a node");
    }
    cur = next;
  }
  return *cur;
}

inline bool address_valid(const ProgramD& p, const Address& a) {
  try {
    address_resolve(p, a);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace detail {

inline ProgramD replace_at(const ProgramD& p, const std::vector<std::size_t>& path,
                           std::size_t depth, ProgramD replacement) {
  if (depth == path.size()) return replacement;
  std::size_t idx = path[depth];
  if (const auto* conj = std::get_if<And>(&p.node)) {
    if (idx == 0) {
      return ProgramD::conj(
          replace_at(*conj->left, path, depth + 1, std::move(replacement)),
          *conj->right);
    }
    if (idx == 1) {
      return ProgramD::conj(*conj->left, replace_at(*conj->right, path,
                                                    depth + 1,
                                                    std::move(replacement)));
    }
  } else if (const auto* ch = std::get_if<SeqChoiceD>(&p.node)) {
    if (idx < ch->alternatives.size()) {
      auto alts = ch->alternatives;
      alts[idx] = replace_at(alts[idx], path, depth + 1, std::move(replacement));
      return ProgramD::choice(std::move(alts));
    }
  }
  Address a{path};
  throw Error(ErrorCode::InvalidAddress,
              "address '" + a.to_string() + "' does not name a node");
}

}  // namespace detail

/// Copy of `p` with the subtree at `a` replaced. Siblings share storage with
/// the original.
inline ProgramD address_replace(const ProgramD& p, const Address& a,
                                ProgramD replacement) {
  return detail::replace_at(p, a.path, 0, std::move(replacement));
}

/// Declarations reachable when every SeqChoiceD is replaced by its first
/// alternative, left to right.
inline std::vector<Decl> active_view(const ProgramD& p) {
  std::vector<Decl> out;
  std::function<void(const ProgramD&)> walk = [&](const ProgramD& d) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            out.push_back(n.decl);
          } else if constexpr (std::is_same_v<T, And>) {
            walk(*n.left);
            walk(*n.right);
          } else if constexpr (std::is_same_v<T, SeqChoiceD>) {
            if (!n.alternatives.empty()) walk(n.alternatives.front());
          }
        },
        d.node);
  };
  walk(p);
  return out;
}

/// Visits every SeqChoiceD node (active or not) in pre-order with its address.
inline void for_each_choice(
    const ProgramD& p,
    const std::function<void(const Address&, const SeqChoiceD&)>& fn) {
  Address cur;
  std::function<void(const ProgramD&)> walk = [&](const ProgramD& d) {
    if (const auto* conj = std::get_if<And>(&d.node)) {
      cur.path.push_back(0);
      walk(*conj->left);
      cur.path.back() = 1;
      walk(*conj->right);
      cur.path.pop_back();
    } else if (const auto* ch = std::get_if<SeqChoiceD>(&d.node)) {
      fn(cur, *ch);
      for (std::size_t i = 0; i < ch->alternatives.size(); ++i) {
        cur.path.push_back(i);
        walk(ch->alternatives[i]);
        cur.path.pop_back();
      }
    }
  };
  walk(p);
}

/// Sum over all SeqChoiceD nodes of (alternatives - 1): the number of
/// effective switches the user can still make.
inline std::size_t remaining_switches(const ProgramD& p) {
  std::size_t total = 0;
  for_each_choice(p, [&](const Address&, const SeqChoiceD& c) {
    total += c.alternatives.size() - 1;
  });
  return total;
}

}  // namespace seqc

#endif  // SEQC_AST_HPP
