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

/// @file runtime.hpp
/// The top-level execution loop.
///
/// Each iteration classifies the position, then:
///   MachineMove   the machine makes one move;
///   UserMove      one event is read and applied;
///   Terminal      the run succeeds;
///   MachineStuck  the run fails.
/// Events are only read at UserMove positions, one per iteration.

#ifndef SEQC_RUNTIME_HPP
#define SEQC_RUNTIME_HPP

#include <cctype>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqc/ast.hpp"
#include "seqc/machine.hpp"
#include "seqc/parser.hpp"
#include "seqc/stability.hpp"
#include "seqc/user.hpp"

namespace seqc {

struct Limits {
  std::size_t max_moves = 10000;
  std::size_t max_unfold = 64;

  EngineLimits engine() const { return EngineLimits{max_unfold}; }
};

struct RunState {
  ProgramD program;
  Goal goal;
  Subst theta;
  std::vector<std::string> output_log;
  std::size_t move_count = 0;
  Status status = Status::MachineMove;
};

enum class Verdict { Succeeded, Failed, StableWaiting };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Succeeded: return "Succeeded";
    case Verdict::Failed: return "Failed";
    case Verdict::StableWaiting: return "StableWaiting";
  }
  return "?";
}

/// Process exit code for a verdict.
inline int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Succeeded: return 0;
    case Verdict::Failed: return 1;
    case Verdict::StableWaiting: return 2;
  }
  return 1;
}

struct RunResult {
  Verdict verdict = Verdict::Failed;
  RunState final;
  /// Why the run failed, when it did.
  std::string diagnostic;
};

enum class SourceKind { Interactive, Scripted, Session };

class EventSource {
 public:
  virtual ~EventSource() = default;
  virtual SourceKind kind() const = 0;
  /// Blocks until the next event. nullopt means no more events will come.
  virtual std::optional<Event> read(const RunState& state) = 0;
};

/// A finite list of events consumed front to back.
class ScriptedSource : public EventSource {
 public:
  ScriptedSource() = default;
  explicit ScriptedSource(std::vector<Event> events)
      : pending_(events.begin(), events.end()) {}

  SourceKind kind() const override { return SourceKind::Scripted; }

  std::optional<Event> read(const RunState&) override {
    if (pending_.empty()) return std::nullopt;
    Event e = std::move(pending_.front());
    pending_.pop_front();
    return e;
  }

  void push(Event e) { pending_.push_back(std::move(e)); }
  std::size_t remaining() const noexcept { return pending_.size(); }

 private:
  std::deque<Event> pending_;
};

/// Parses one event line: `esc <path>`, or a bare `esc` when `program` has
/// exactly one declaration-level choice. Returns nullopt for a blank or
/// comment-only line.
inline std::optional<Event> parse_event_line(std::string_view line,
                                             const ProgramD& program,
                                             std::size_t line_no = 0) {
  if (auto pct = line.find('%'); pct != std::string_view::npos) {
    line = line.substr(0, pct);
  }
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  };
  line = trim(line);
  if (line.empty()) return std::nullopt;
  SourcePos pos{line_no, 1};
  if (line.substr(0, 3) != "esc" ||
      (line.size() > 3 && !std::isspace(static_cast<unsigned char>(line[3])))) {
    throw Error(ErrorCode::Syntax,
                "expected 'esc <path>', got '" + std::string(line) + "'", pos);
  }
  std::string_view rest = trim(line.substr(3));
  if (rest.empty()) {
    auto sole = sole_choice_address(program);
    if (!sole) {
      throw Error(ErrorCode::Syntax,
                  "bare 'esc' needs exactly one choice in the declarations",
                  pos);
    }
    return Event{*sole};
  }
  auto addr = Address::parse(rest);
  if (!addr) {
    throw Error(ErrorCode::Syntax,
                "malformed address '" + std::string(rest) + "'", pos);
  }
  return Event{*addr};
}

/// Parses an event script: one `esc <path>` per line, `%` comments.
inline std::vector<Event> parse_event_script(std::string_view text,
                                             const ProgramD& program) {
  std::vector<Event> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (auto e = parse_event_line(line, program, line_no)) out.push_back(*e);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

/// Reads events from a line stream at each UserMove position. Accepts
/// `esc <path>`, a bare path, or an empty line / bare `esc` for the sole
/// choice. `quit` or end of input ends the stream. Bad input is reported on
/// `prompt` and asked for again.
class InteractiveSource : public EventSource {
 public:
  InteractiveSource(std::istream& in, std::ostream& prompt)
      : in_(in), prompt_(prompt) {}

  SourceKind kind() const override { return SourceKind::Interactive; }

  std::optional<Event> read(const RunState& state) override {
    for (;;) {
      prompt_ << "waiting for Esc; choices:\n" << list_addresses(state.program)
              << "esc> " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) return std::nullopt;
      std::string_view text = line;
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
      }
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
      }
      if (text == "quit" || text == "q") return std::nullopt;
      std::string normalized(text);
      if (text.empty() || (!text.empty() && std::isdigit(static_cast<unsigned char>(text[0])))) {
        normalized = "esc " + normalized;
      }
      try {
        auto ev = parse_event_line(normalized, state.program);
        if (!ev) continue;
        address_resolve(state.program, ev->address);
        return ev;
      } catch (const Error& e) {
        prompt_ << e.detail() << "\n";
      }
    }
  }

 private:
  std::istream& in_;
  std::ostream& prompt_;
};

/// Hooks for tracing and live output. All default to no-ops.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_status(const RunState&) {}
  virtual void on_move(const RunState&, const MoveOutcome&) {}
  virtual void on_event(const RunState&, const SwitchResult&) {}
};

/// Stepwise access to one run. `run` drives it to completion; the session
/// protocol drives it message by message.
class Runner {
 public:
  Runner(ProgramD program, Goal goal, Limits limits = {})
      : limits_(limits) {
    state_.program = std::move(program);
    state_.goal = std::move(goal);
  }

  const RunState& state() const noexcept { return state_; }
  const Limits& limits() const noexcept { return limits_; }

  /// Recomputes and records the status of the current position.
  Status classify() {
    state_.status = stable_status(state_.program, state_.goal, state_.theta,
                                  limits_.engine());
    return state_.status;
  }

  /// Makes one machine move. Throws if the move limit is reached or no move
  /// exists.
  MoveOutcome machine_move() {
    if (state_.move_count >= limits_.max_moves) {
      throw Error(ErrorCode::MoveLimit,
                  "move limit of " + std::to_string(limits_.max_moves) +
                      " reached");
    }
    auto out = ex_m_step(state_.program, state_.goal, state_.theta,
                         limits_.engine());
    if (!out || !out->moved) {
      throw Error(ErrorCode::NoMove, "no machine move available");
    }
    state_.goal = out->new_goal;
    state_.theta = out->new_theta;
    for (const auto& line : out->output) state_.output_log.push_back(line);
    ++state_.move_count;
    return *out;
  }

  /// Applies an Esc event. Throws InvalidAddress (leaving the state
  /// untouched) when the address does not name a node.
  SwitchResult user_move(const Event& ev) {
    SwitchResult r = exs_apply(state_.program, ev);
    state_.program = r.new_program;
    return r;
  }

 private:
  RunState state_;
  Limits limits_;
};

inline RunResult run(ProgramD program, Goal goal, EventSource& source,
                     const Limits& limits = {}, RunObserver* observer = nullptr) {
  Runner runner(std::move(program), std::move(goal), limits);
  RunObserver none;
  RunObserver& obs = observer ? *observer : none;
  auto finish = [&](Verdict v, std::string why = {}) {
    return RunResult{v, runner.state(), std::move(why)};
  };
  try {
    for (;;) {
      Status s = runner.classify();
      obs.on_status(runner.state());
      switch (s) {
        case Status::MachineMove: {
          if (runner.state().move_count >= limits.max_moves) {
            return finish(Verdict::Failed,
                          "move limit of " + std::to_string(limits.max_moves) +
                              " reached");
          }
          MoveOutcome m = runner.machine_move();
          obs.on_move(runner.state(), m);
          break;
        }
        case Status::UserMove: {
          auto ev = source.read(runner.state());
          if (!ev) return finish(Verdict::StableWaiting);
          SwitchResult r = runner.user_move(*ev);
          obs.on_event(runner.state(), r);
          break;
        }
        case Status::Terminal:
          return finish(Verdict::Succeeded);
        case Status::MachineStuck:
          return finish(Verdict::Failed, "no move is available for the machine");
      }
    }
  } catch (const Error& e) {
    return finish(Verdict::Failed, e.what());
  }
}

// ---------------------------------------------------------------------------
// Trace lines

inline std::string format_goal_path(const std::vector<std::size_t>& path) {
  if (path.empty()) return ".";
  return Address{path}.to_string();
}

/// `MOVE k: rule=<8|9|11|advance|call> goal-path=<path> theta=<delta>`
inline std::string format_move_trace(std::size_t k, const MoveOutcome& m) {
  std::string delta = "{}";
  if (m.binding) {
    delta = "{" + m.binding->first + "=" + pretty(m.binding->second) + "}";
  }
  return "MOVE " + std::to_string(k) + ": rule=" +
         std::string(move_rule_label(m.kind)) +
         " goal-path=" + format_goal_path(m.goal_path) + " theta=" + delta;
}

inline std::string format_status_trace(Status s) {
  return "STATUS " + std::string(status_name(s)) + " (" +
         std::to_string(status_code(s)) + ")";
}

inline std::string format_event_trace(const SwitchResult& r) {
  return "EVENT esc " + format_goal_path(r.target.path) +
         " switched=" + (r.switched ? "yes" : "no");
}

/// Writes STATUS / MOVE / EVENT trace lines to a stream.
class TraceObserver : public RunObserver {
 public:
  explicit TraceObserver(std::ostream& out) : out_(out) {}

  void on_status(const RunState& s) override {
    out_ << format_status_trace(s.status) << "\n";
  }
  void on_move(const RunState& s, const MoveOutcome& m) override {
    out_ << format_move_trace(s.move_count, m) << "\n";
  }
  void on_event(const RunState&, const SwitchResult& r) override {
    out_ << format_event_trace(r) << "\n";
  }

 private:
  std::ostream& out_;
};

// ---------------------------------------------------------------------------
// Snapshots

struct ChoiceInfo {
  std::string path;
  std::size_t remaining = 0;
  std::string active_pretty;
  bool operator==(const ChoiceInfo&) const = default;
};

struct ThetaEntry {
  std::string var;
  Value value;
  bool operator==(const ThetaEntry&) const = default;
};

struct Snapshot {
  std::string program_pretty;
  std::vector<ChoiceInfo> choices;
  std::string goal_pretty;
  std::vector<ThetaEntry> theta;
  Status status = Status::MachineMove;
  std::size_t move_count = 0;
  std::vector<std::string> outputs;
  bool operator==(const Snapshot&) const = default;
};

inline Snapshot snapshot(const RunState& s) {
  Snapshot out;
  out.program_pretty = pretty(s.program);
  for_each_choice(s.program, [&](const Address& a, const SeqChoiceD& c) {
    out.choices.push_back(ChoiceInfo{a.to_string(), c.alternatives.size(),
                                     pretty(c.alternatives.front())});
  });
  out.goal_pretty = pretty(s.goal);
  for (const auto& [var, value] : s.theta.bindings()) {
    out.theta.push_back(ThetaEntry{var, value});
  }
  out.status = s.status;
  out.move_count = s.move_count;
  out.outputs = s.output_log;
  return out;
}

}  // namespace seqc

#endif  // SEQC_RUNTIME_HPP
