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

// Reduced-size runs of the acceptance properties, plus checks that the
// reference simulator itself reproduces known runs.

#include <gtest/gtest.h>

#include "seqc/seqc.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"

namespace seqc {
namespace {

namespace o = testing::oracle;

TEST(Oracle, AddressesOfRightNestedItems) {
  EXPECT_EQ(o::item_address(0, 1), "");
  EXPECT_EQ(o::item_address(0, 3), "0");
  EXPECT_EQ(o::item_address(1, 3), "1.0");
  EXPECT_EQ(o::item_address(2, 3), "1.1");
}

TEST(Oracle, ReproducesPriceListRun) {
  o::Program p;
  p.items.push_back(o::Item{true, "m0", {1, 2, 3}});
  o::Segment seg;
  seg.is_choice = true;
  const char* prices[] = {"$32,000", "$54,000", "$82,200"};
  for (int i = 0; i < 3; ++i) {
    seg.alts.push_back({o::Stmt{o::Stmt::CondEq, "m0", std::to_string(i + 1)},
                        o::Stmt{o::Stmt::Assign, "x", prices[i]},
                        o::Stmt{o::Stmt::Print, "x", ""}});
  }
  p.goal.push_back(seg);
  o::Outcome full = o::simulate(p, {0, 0});
  EXPECT_EQ(full.outputs, (std::vector<std::string>{"$32,000", "$54,000", "$82,200"}));
  EXPECT_EQ(full.verdict, "Succeeded");
  EXPECT_EQ(o::simulate(p, {}).verdict, "StableWaiting");

  Program parsed = parse_program(o::source_text(p));
  ScriptedSource src({Event{Address{}}, Event{Address{}}});
  RunResult r = run(parsed.decls, parsed.goal, src);
  EXPECT_EQ(r.final.output_log, full.outputs);
}

TEST(Oracle, AgreesOnSmallCorpus) {
  std::mt19937_64 rng(3);
  int runs = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::size_t> shape;
    for (std::size_t k = 0, n = rng() % 3; k < n; ++k) shape.push_back(2 + rng() % 2);
    o::Program op = o::random_program(rng, shape);
    Program prog = parse_program(o::source_text(op));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::size_t> seq;
      std::vector<Event> events;
      for (std::size_t k = 0, n = rng() % 5; k < n && !op.items.empty(); ++k) {
        std::size_t item = rng() % op.items.size();
        seq.push_back(item);
        events.push_back(
            Event{*Address::parse(o::item_address(item, op.items.size()))});
      }
      ScriptedSource src(events);
      RunResult r = run(prog.decls, prog.goal, src);
      o::Outcome want = o::simulate(op, seq);
      ASSERT_EQ(r.final.output_log, want.outputs) << o::source_text(op);
      ASSERT_EQ(verdict_name(r.verdict), want.verdict) << o::source_text(op);
      ++runs;
    }
  }
  EXPECT_EQ(runs, 400);
}

TEST(Properties, SingleMove) {
  auto stats = testing::check_single_move(200, 1);
  EXPECT_GT(stats.moves, 100u);
  for (const auto& v : stats.violations) ADD_FAILURE() << v;
}

TEST(Properties, Elementarization) {
  auto stats = testing::check_elementarization(200, 2);
  for (const auto& v : stats.violations) ADD_FAILURE() << v;
}

TEST(Properties, EscConservation) {
  auto stats = testing::check_exs_conservation(200, 3);
  EXPECT_GT(stats.switched, 50u);
  EXPECT_GT(stats.flat_drops, 0u);
  for (const auto& v : stats.violations) ADD_FAILURE() << v;
}

TEST(Properties, DiffDetectsBrokenSteps) {
  // The checker must reject changes that are not one move.
  RunState before;
  before.program = ProgramD::empty();
  before.goal = parse_goal("x = 1; y = 2");
  MoveOutcome two;
  two.moved = true;
  two.new_goal = parse_goal("skip; skip");
  two.new_theta = Subst{}.with("x", Value::integer(1)).with("y", Value::integer(2));
  EXPECT_FALSE(testing::single_move_violation(before, two).empty());

  MoveOutcome sneaky;
  sneaky.moved = true;
  sneaky.new_goal = parse_goal("skip; y = 2");
  sneaky.new_theta = Subst{}.with("x", Value::integer(1)).with("z", Value::integer(0));
  EXPECT_FALSE(testing::single_move_violation(before, sneaky).empty());

  MoveOutcome fine;
  fine.moved = true;
  fine.new_goal = parse_goal("skip; y = 2");
  fine.new_theta = Subst{}.with("x", Value::integer(1));
  EXPECT_EQ(testing::single_move_violation(before, fine), "");
}

}  // namespace
}  // namespace seqc
