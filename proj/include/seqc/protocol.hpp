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

/// @file protocol.hpp
/// Newline-delimited JSON session protocol.
///
/// To the engine, one object per line:
///   {"load": "<program text>"}   replace the program and restart
///   {"event": "<dot.path>"}      Esc at a declaration-level choice
///   {"reset": true}              restart the current program
///
/// From the engine:
///   {"state": {...}}             after every accepted message and every move
///   {"output": "<line>"}         per print, before the state that follows it
///   {"verdict": "<name>"}        when the run ends
///   {"error": {"code": ..., "message": ...}}
///
/// Error codes: bad_json, bad_message, bad_path, parse_error, runtime and
/// not_stable. not_stable acknowledges an event sent after the run has
/// ended; the event is queued (the error object carries "queued": true)
/// and the session goes on.
///
/// The engine runs to a waiting point (UserMove) or to a verdict before it
/// reads the next message, so output for a given message sequence is
/// deterministic. Object fields are emitted in a fixed order.

#ifndef SEQC_PROTOCOL_HPP
#define SEQC_PROTOCOL_HPP

#include <deque>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "seqc/parser.hpp"
#include "seqc/runtime.hpp"

namespace seqc {

using ojson = nlohmann::ordered_json;

inline ojson value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> ojson {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntV>) return x.value;
        else if constexpr (std::is_same_v<T, StrV>) return x.value;
        else if constexpr (std::is_same_v<T, SymV>) return x.name;
        else return x.value;
      },
      v.v);
}

inline ojson to_json(const Snapshot& s) {
  ojson choices = ojson::array();
  for (const auto& c : s.choices) {
    choices.push_back(ojson{{"path", c.path},
                            {"remaining", c.remaining},
                            {"active_pretty", c.active_pretty}});
  }
  ojson theta = ojson::array();
  for (const auto& t : s.theta) {
    theta.push_back(ojson{{"var", t.var},
                          {"kind", std::string(value_kind(t.value))},
                          {"value", value_to_json(t.value)}});
  }
  return ojson{{"program_pretty", s.program_pretty},
               {"choices", std::move(choices)},
               {"goal_pretty", s.goal_pretty},
               {"theta", std::move(theta)},
               {"status", std::string(status_name(s.status))},
               {"move_count", s.move_count},
               {"outputs", s.outputs}};
}

/// One engine behind one transport. Every outgoing message is handed to the
/// sink as a single line of JSON without the trailing newline.
class Session {
 public:
  using Sink = std::function<void(const std::string&)>;

  Session(std::string program_text, Limits limits, Sink sink)
      : text_(std::move(program_text)), limits_(limits), sink_(std::move(sink)) {}

  /// Loads the initial program and runs to the first waiting point.
  void start() { load(text_); }

  void handle_line(std::string_view line) {
    ojson msg = ojson::parse(line, nullptr, false);
    if (msg.is_discarded()) {
      error("bad_json", "line is not valid JSON");
      return;
    }
    if (!msg.is_object() || msg.size() != 1) {
      error("bad_message", "expected an object with one of load, event, reset");
      return;
    }
    if (auto it = msg.find("load"); it != msg.end()) {
      if (!it->is_string()) {
        error("bad_message", "load expects program text");
        return;
      }
      load(it->get<std::string>());
    } else if (auto ev = msg.find("event"); ev != msg.end()) {
      if (!ev->is_string()) {
        error("bad_path", "event expects a dot-separated path string");
        return;
      }
      event(ev->get<std::string>());
    } else if (auto rs = msg.find("reset"); rs != msg.end()) {
      if (*rs != true) {
        error("bad_message", "reset expects true");
        return;
      }
      load(text_);
    } else {
      error("bad_message", "expected one of load, event, reset");
    }
  }

  bool finished() const noexcept { return finished_; }
  const std::optional<Runner>& runner() const noexcept { return runner_; }
  std::size_t queued() const noexcept { return pending_.size(); }

 private:
  void emit(const ojson& j) { sink_(j.dump()); }

  void error(std::string_view code, std::string_view message,
             bool queued = false) {
    ojson body{{"code", code}, {"message", message}};
    if (queued) body["queued"] = true;
    emit(ojson{{"error", std::move(body)}});
  }

  void emit_state() { emit(ojson{{"state", to_json(snapshot(runner_->state()))}}); }

  void end(Verdict v) {
    finished_ = true;
    emit(ojson{{"verdict", verdict_name(v)}});
  }

  void load(const std::string& text) {
    Program prog;
    try {
      prog = parse_program(text);
    } catch (const Error& e) {
      error("parse_error", e.what());
      return;
    }
    text_ = text;
    pending_.clear();
    finished_ = false;
    runner_.emplace(std::move(prog.decls), std::move(prog.goal), limits_);
    if (classify()) {
      emit_state();
      drive();
    }
  }

  void event(const std::string& path) {
    if (!runner_) {
      error("bad_message", "no program loaded");
      return;
    }
    auto addr = Address::parse(path);
    if (!addr || !address_valid(runner_->state().program, *addr)) {
      error("bad_path", "'" + path + "' does not name a declaration node");
      return;
    }
    if (finished_ || runner_->state().status != Status::UserMove) {
      pending_.push_back(Event{*addr});
      error("not_stable", "run is not waiting for the user; event queued",
            true);
      return;
    }
    runner_->user_move(Event{*addr});
    if (classify()) {
      emit_state();
      drive();
    }
  }

  /// Returns false (after reporting) if the run died.
  bool classify() {
    try {
      runner_->classify();
      return true;
    } catch (const Error& e) {
      fatal(e);
      return false;
    }
  }

  void fatal(const Error& e) {
    error("runtime", e.what());
    end(Verdict::Failed);
  }

  void drive() {
    for (;;) {
      switch (runner_->state().status) {
        case Status::MachineMove: {
          try {
            MoveOutcome m = runner_->machine_move();
            for (const auto& line : m.output) emit(ojson{{"output", line}});
          } catch (const Error& e) {
            fatal(e);
            return;
          }
          if (!classify()) return;
          emit_state();
          break;
        }
        case Status::UserMove: {
          if (pending_.empty()) return;
          Event ev = pending_.front();
          pending_.pop_front();
          if (!address_valid(runner_->state().program, ev.address)) {
            error("bad_path", "queued event '" + ev.address.to_string() +
                                  "' no longer names a node");
            break;
          }
          runner_->user_move(ev);
          if (!classify()) return;
          emit_state();
          break;
        }
        case Status::Terminal:
          end(Verdict::Succeeded);
          return;
        case Status::MachineStuck:
          end(Verdict::Failed);
          return;
      }
    }
  }

  std::string text_;
  Limits limits_;
  Sink sink_;
  std::optional<Runner> runner_;
  std::deque<Event> pending_;
  bool finished_ = false;
};

/// Serves one session over a pair of line streams until input closes.
inline void serve_session(std::string program_text, const Limits& limits,
                          std::istream& in, std::ostream& out) {
  Session session(std::move(program_text), limits, [&](const std::string& line) {
    out << line << '\n' << std::flush;
  });
  session.start();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    session.handle_line(line);
  }
}

}  // namespace seqc

#endif  // SEQC_PROTOCOL_HPP
