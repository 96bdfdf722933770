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

#ifndef SEQC_USER_HPP
#define SEQC_USER_HPP

#include <optional>
#include <vector>

#include "seqc/ast.hpp"

namespace seqc {

struct SwitchResult {
  ProgramD new_program;
  bool switched = false;
  Address target;
};

namespace detail {

inline ProgramD apply_esc(const ProgramD& d, const std::vector<std::size_t>& path,
                          std::size_t depth, bool& switched) {
  if (depth == path.size()) {
    if (const auto* ch = std::get_if<SeqChoiceD>(&d.node);
        ch && ch->alternatives.size() >= 2) {
      switched = true;
      return ProgramD::choice(
          {ch->alternatives.begin() + 1, ch->alternatives.end()});
    }
    return d;
  }
  std::size_t idx = path[depth];
  if (const auto* conj = std::get_if<And>(&d.node)) {
    if (idx == 0) {
      ProgramD left = apply_esc(*conj->left, path, depth + 1, switched);
      return switched ? ProgramD::conj(std::move(left), *conj->right) : d;
    }
    if (idx == 1) {
      ProgramD right = apply_esc(*conj->right, path, depth + 1, switched);
      return switched ? ProgramD::conj(*conj->left, std::move(right)) : d;
    }
  } else if (const auto* ch = std::get_if<SeqChoiceD>(&d.node)) {
    if (idx < ch->alternatives.size()) {
      ProgramD alt = apply_esc(ch->alternatives[idx], path, depth + 1, switched);
      if (!switched) return d;
      auto alts = ch->alternatives;
      alts[idx] = std::move(alt);
      return ProgramD::choice(std::move(alts));
    }
  }
  throw Error(ErrorCode::InvalidAddress,
              "address '" + Address{path}.to_string() + "' does not name a node");
}

}  // namespace detail

/// Applies an Esc event. Conjunctions route by the head of the path; at the
/// target a choice with two or more alternatives loses its first one. Any
/// other target (a declaration, an exhausted choice) is left unchanged and
/// reported with switched == false. Throws InvalidAddress for a bad path.
inline SwitchResult exs_apply(const ProgramD& p, const Event& ev) {
  bool switched = false;
  ProgramD out = detail::apply_esc(p, ev.address.path, 0, switched);
  return SwitchResult{std::move(out), switched, ev.address};
}

/// True iff some declaration-level choice still has two or more
/// alternatives.
inline bool user_move_available(const ProgramD& p) {
  bool any = false;
  for_each_choice(p, [&](const Address&, const SeqChoiceD& c) {
    if (c.alternatives.size() >= 2) any = true;
  });
  return any;
}

/// Address of the only declaration-level choice in `p`, if there is exactly
/// one. Lets a bare `esc` stand for it.
inline std::optional<Address> sole_choice_address(const ProgramD& p) {
  std::optional<Address> found;
  std::size_t count = 0;
  for_each_choice(p, [&](const Address& a, const SeqChoiceD&) {
    ++count;
    found = a;
  });
  if (count != 1) return std::nullopt;
  return found;
}

}  // namespace seqc

#endif  // SEQC_USER_HPP
