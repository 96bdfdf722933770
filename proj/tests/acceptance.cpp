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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// all pass.

#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "seqc/seqc.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"

namespace {

using namespace seqc;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return "[" + out + "]";
}

const std::string kSamples = SEQC_SAMPLES_DIR;

RunResult run_bmw(const std::string& events_file, RunObserver* obs = nullptr) {
  Program prog = parse_program(read_file(kSamples + "/bmw.seqc"));
  ScriptedSource src(
      parse_event_script(read_file(kSamples + "/" + events_file), prog.decls));
  return run(prog.decls, prog.goal, src, {}, obs);
}

void golden_trace() {
  auto t0 = Clock::now();
  RunResult r = run_bmw("two_esc.evt");
  double dt = seconds_since(t0);
  std::vector<std::string> want = {"$32,000", "$54,000", "$82,200"};
  bool ok = r.final.output_log == want && r.verdict == Verdict::Succeeded &&
            dt < 1.0;
  report("golden-trace", ok,
         "output " + join(r.final.output_log) + ", verdict " +
             std::string(verdict_name(r.verdict)) + ", " +
             std::to_string(dt) + " s");
}

void waiting_behavior() {
  RunResult r = run_bmw("empty.evt");
  bool ok = r.final.output_log == std::vector<std::string>{"$32,000"} &&
            r.verdict == Verdict::StableWaiting;
  report("waiting-behavior", ok,
         "output " + join(r.final.output_log) + ", verdict " +
             std::string(verdict_name(r.verdict)));
}

void status_sequence() {
  std::ostringstream log;
  TraceObserver trace(log);
  RunResult r = run_bmw("two_esc.evt", &trace);
  // Encode the trace: M/U/T/S per STATUS line, E per EVENT line.
  std::string seq;
  std::istringstream lines(log.str());
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("STATUS MachineMove", 0) == 0) seq += 'M';
    else if (line.rfind("STATUS UserMove", 0) == 0) seq += 'U';
    else if (line.rfind("STATUS Terminal", 0) == 0) seq += 'T';
    else if (line.rfind("STATUS MachineStuck", 0) == 0) seq += 'S';
    else if (line.rfind("EVENT ", 0) == 0) seq += 'E';
  }
  bool ok = std::regex_match(seq, std::regex("M+UEM+UEM+T")) &&
            r.verdict == Verdict::Succeeded;
  report("status-classifier", ok, "sequence " + seq);
}

void single_move() {
  auto stats = testing::check_single_move(1000, 20261018);
  std::string detail = std::to_string(stats.programs) + " programs, " +
                       std::to_string(stats.moves) + " moves, " +
                       std::to_string(stats.violations.size()) + " violations";
  if (!stats.violations.empty()) detail += "; first: " + stats.violations.front();
  report("single-move", stats.violations.empty() && stats.moves > 0, detail);
}

void oracle_equivalence() {
  namespace o = testing::oracle;
  auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::size_t programs = 0, runs = 0, mismatches = 0;
  std::string first;
  // Every shape of up to 3 choices with 2 or 3 alternatives each.
  std::vector<std::vector<std::size_t>> shapes = {{}};
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> shape;
      for (std::size_t i = 0; i < n; ++i) shape.push_back(mask & (1u << i) ? 3 : 2);
      shapes.push_back(shape);
    }
  }
  for (const auto& shape : shapes) {
    for (int rep = 0; rep < 4; ++rep) {
      o::Program op = o::random_program(rng, shape);
      Program prog = parse_program(o::source_text(op));
      ++programs;
      std::vector<Event> by_item;
      std::size_t switches = 0;
      for (std::size_t i = 0; i < op.items.size(); ++i) {
        by_item.push_back(
            Event{*Address::parse(o::item_address(i, op.items.size()))});
        switches += op.items[i].values.size() - 1;
      }
      // All sequences over all items, long enough to exhaust every choice
      // and then send one more.
      std::size_t max_len = op.items.empty() ? 0 : switches + 1;
      std::vector<std::vector<std::size_t>> frontier = {{}};
      for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& seq : frontier) {
          std::vector<Event> events;
          for (auto i : seq) events.push_back(by_item[i]);
          ScriptedSource src(events);
          RunResult r = run(prog.decls, prog.goal, src);
          o::Outcome got{r.final.output_log, std::string(verdict_name(r.verdict))};
          o::Outcome want = o::simulate(op, seq);
          ++runs;
          if (!(got == want)) {
            if (mismatches++ == 0) {
              first = o::source_text(op) + "got " + join(got.outputs) + " " +
                      got.verdict + ", want " + join(want.outputs) + " " +
                      want.verdict;
            }
          }
          if (len < max_len) {
            for (std::size_t i = 0; i < op.items.size(); ++i) {
              auto longer = seq;
              longer.push_back(i);
              next.push_back(std::move(longer));
            }
          }
        }
        frontier = std::move(next);
      }
    }
  }
  double dt = seconds_since(t0);
  std::string detail = std::to_string(programs) + " programs, " +
                       std::to_string(runs) + " event sequences, " +
                       std::to_string(mismatches) + " mismatches, " +
                       std::to_string(dt) + " s";
  if (mismatches) detail += "; first:\n" + first;
  report("oracle-equivalence", mismatches == 0 && dt < 30.0, detail);
}

void elementarization() {
  auto stats = testing::check_elementarization(1000, 4242);
  std::string detail = std::to_string(stats.goals) + " goals, " +
                       std::to_string(stats.violations.size()) + " violations";
  if (!stats.violations.empty()) detail += "; first: " + stats.violations.front();
  report("elementarization", stats.violations.empty(), detail);
}

void exs_conservation() {
  auto stats = testing::check_exs_conservation(500, 99);
  std::string detail =
      std::to_string(stats.pairs) + " pairs, " + std::to_string(stats.switched) +
      " switched (" + std::to_string(stats.flat_drops) +
      " with a choice-free dropped alternative), " +
      std::to_string(stats.violations.size()) + " violations";
  if (!stats.violations.empty()) detail += "; first: " + stats.violations.front();
  report("exs-conservation", stats.violations.empty() && stats.switched > 0, detail);
}

}  // namespace

int main() {
  golden_trace();
  waiting_behavior();
  status_sequence();
  single_move();
  oracle_equivalence();
  elementarization();
  exs_conservation();
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
