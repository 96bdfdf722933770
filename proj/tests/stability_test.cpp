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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "seqc/seqc.hpp"
#include "support/generators.hpp"

namespace seqc {
namespace {

ProgramD model(const std::string& sym) {
  return ProgramD::constant("model", Expr::symbol(sym));
}

const ProgramD kModels =
    ProgramD::choice({model("BMW320"), model("BMW520"), model("BMW740")});

Cond model_is(const std::string& sym) {
  return Cond{CmpOp::Eq, Expr::constant("model"), Expr::symbol(sym)};
}

ElemFormula E(ElemFormula f) { return f; }
ElemFormula T() { return {TrueE{}}; }
ElemFormula F() { return {FalseE{}}; }
ElemFormula C(Cond c) { return {CondE{std::move(c)}}; }
ElemFormula A(std::vector<ElemFormula> parts) { return {AndE{std::move(parts)}}; }

Program bmw() {
  std::ifstream in(std::string(SEQC_SAMPLES_DIR) + "/bmw.seqc");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

TEST(Elementarize, AssignmentsAndPrintsBecomeFalse) {
  Goal g = Goal::seq(Goal{CondG{model_is("BMW320")}},
                     Goal::seq(Goal::assign("price", Expr::text("$32,000")),
                               Goal::print("price")));
  EXPECT_EQ(elementarize_goal(g), A({C(model_is("BMW320")), F(), F()}));
}

TEST(Elementarize, TopIsTrue) {
  EXPECT_EQ(elementarize_goal(Goal::top()), T());
}

TEST(Elementarize, ChoiceKeepsFirstAlternative) {
  Cond c1{CmpOp::Eq, Expr::var("x"), Expr::integer(1)};
  Goal g = Goal::choice({Goal::seq(Goal{CondG{c1}}, Goal::top()),
                         Goal::print("x")});
  EXPECT_EQ(elementarize_goal(g), A({C(c1), T()}));
}

TEST(Elementarize, CallIsAtom) {
  Goal g = Goal::call("p", {Expr::integer(1)});
  EXPECT_EQ(elementarize_goal(g), E({AtomE{std::get<Call>(g.node)}}));
}

TEST(ElementarizeProgram, Examples) {
  EXPECT_EQ(elementarize_program(kModels), T());
  EXPECT_EQ(elementarize_program(ProgramD::conj(model("A"), model("B"))),
            A({T(), T()}));
  ProgramD proc = ProgramD::procedure("p", {}, Goal::assign("x", Expr::integer(1)));
  EXPECT_EQ(elementarize_program(proc),
            E({ImplE{F(), Call{"p", {}}}}));
  EXPECT_EQ(elementarize_program(ProgramD::empty()), T());
}

TEST(ElemTruth, Examples) {
  ElemFormula f = A({C(model_is("BMW320")), T(), T()});
  EXPECT_TRUE(elem_truth(EvalEnv::from(kModels), {}, f, 64));
  ProgramD switched = exs_apply(kModels, Event{Address{}}).new_program;
  EXPECT_FALSE(elem_truth(EvalEnv::from(switched), {}, f, 64));
  EXPECT_FALSE(elem_truth(EvalEnv{}, {}, F(), 64));
}

TEST(ElemTruth, FailedConditionIsFalse) {
  EXPECT_FALSE(elem_truth(EvalEnv{}, {},
                          C(Cond{CmpOp::Eq, Expr::var("unbound"), Expr::integer(1)}),
                          64));
}

TEST(ElemTruth, AtomsUnfoldThroughFirstActiveProcedure) {
  Program p = parse_program(
      "decls { choice(ok() = { 1 == 1 }, ok() = { 1 == 2 }); bad() = { x = 1 } }"
      " goal { skip }");
  EvalEnv env = EvalEnv::from(p.decls);
  auto defs = active_procedures(p.decls);
  EXPECT_TRUE(elem_truth(env, defs, E({AtomE{Call{"ok", {}}}}), 64));
  EXPECT_FALSE(elem_truth(env, defs, E({AtomE{Call{"bad", {}}}}), 64));
  EXPECT_FALSE(elem_truth(env, defs, E({AtomE{Call{"none", {}}}}), 64));
  ProgramD switched = exs_apply(p.decls, Event{Address{{0}}}).new_program;
  EXPECT_FALSE(elem_truth(EvalEnv::from(switched), active_procedures(switched),
                          E({AtomE{Call{"ok", {}}}}), 64));
}

TEST(ElemTruth, ArgumentsAreSubstituted) {
  Program p = parse_program("decls { big(n) = { n > 10 } } goal { skip }");
  EvalEnv env = EvalEnv::from(p.decls);
  auto defs = active_procedures(p.decls);
  EXPECT_TRUE(elem_truth(env, defs, E({AtomE{Call{"big", {Expr::integer(11)}}}}), 64));
  EXPECT_FALSE(elem_truth(env, defs, E({AtomE{Call{"big", {Expr::integer(3)}}}}), 64));
}

TEST(ElemTruth, DepthExceeded) {
  Program p = parse_program("decls { loop() = { loop() } } goal { loop() }");
  try {
    stable_status(p.decls, p.goal, {});
    FAIL() << "expected DepthExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
  }
  EXPECT_THROW(elem_truth(EvalEnv::from(p.decls), active_procedures(p.decls),
                          E({AtomE{Call{"loop", {}}}}), 5),
               Error);
}

TEST(StableStatus, SampleRun) {
  Program p = bmw();
  EXPECT_EQ(stable_status(p.decls, p.goal, {}), Status::MachineMove);

  Runner r(p.decls, p.goal);
  while (r.classify() == Status::MachineMove) r.machine_move();
  EXPECT_EQ(r.state().status, Status::UserMove);
  EXPECT_EQ(r.state().output_log, std::vector<std::string>{"$32,000"});

  for (int esc = 0; esc < 2; ++esc) {
    r.user_move(Event{Address{{0}}});
    while (r.classify() == Status::MachineMove) r.machine_move();
  }
  EXPECT_EQ(r.state().status, Status::Terminal);
  EXPECT_EQ(status_code(r.state().status), 2);
}

TEST(StableStatus, StuckWhenNothingCanHold) {
  Program p = parse_program("goal { 1 == 2 }");
  EXPECT_EQ(stable_status(p.decls, p.goal, {}), Status::MachineStuck);
}

TEST(StableStatus, FalseProgramMakesAnyGoalStable) {
  // The second declaration's implication `true -> p()` is false because p()
  // unfolds through the first one, so elem(program) is false.
  Program p = parse_program(
      "decls { p() = { 1 == 2 }; p() = { skip } } goal { x = 2 }");
  EXPECT_TRUE(is_stable(p.decls, p.goal, {}));
  Program q = parse_program("decls { p() = { x = 1 } } goal { x = 2 }");
  EXPECT_FALSE(is_stable(q.decls, q.goal, {}));
}

TEST(StableStatus, MachineMoveImpliesTrialStepMoves) {
  testing::TreeGen gen(41);
  int machine_moves = 0;
  for (int i = 0; i < 300; ++i) {
    Program prog = gen.program(1 + gen.pick(4));
    Subst theta;
    theta.bind("x", Value::integer(1));
    try {
      Status s = stable_status(prog.decls, prog.goal, theta);
      if (s == Status::MachineMove) {
        ++machine_moves;
        auto m = ex_m_step(prog.decls, prog.goal, theta);
        ASSERT_TRUE(m.has_value());
        EXPECT_TRUE(m->moved);
      }
      if (s == Status::UserMove || s == Status::Terminal) {
        EXPECT_TRUE(is_stable(prog.decls, prog.goal, theta));
      }
    } catch (const Error&) {
    }
  }
  EXPECT_GT(machine_moves, 50);
}

TEST(StableStatus, UserMovesRunOutForever) {
  testing::TreeGen gen(42);
  for (int i = 0; i < 100; ++i) {
    ProgramD p = gen.program_decls(1 + gen.pick(4));
    // Dropping an alternative may drop nested choices with it, so the
    // effective switches are bounded by, not equal to, the initial budget.
    std::size_t budget = remaining_switches(p);
    std::size_t used = 0;
    while (user_move_available(p)) {
      for (const auto& a : testing::choice_addresses(p)) {
        auto r = exs_apply(p, Event{a});
        if (r.switched) {
          p = r.new_program;
          ++used;
          break;
        }
      }
      ASSERT_LE(used, budget);
    }
    EXPECT_EQ(remaining_switches(p), 0u);
    for (const auto& a : testing::all_addresses(p)) {
      auto r = exs_apply(p, Event{a});
      EXPECT_FALSE(r.switched);
      EXPECT_FALSE(user_move_available(r.new_program));
    }
  }
}

TEST(ExplainStability, ReportLines) {
  Program p = bmw();
  std::string text =
      format_report(explain_stability(p.decls, p.goal, {}));
  EXPECT_NE(text.find("elem(program): (true & true) = true"), std::string::npos)
      << text;
  EXPECT_NE(text.find("= false"), std::string::npos);
  EXPECT_NE(text.find("stable:        no"), std::string::npos);
  EXPECT_NE(text.find("moves:         machine=yes user=yes"), std::string::npos);
  EXPECT_NE(text.find("status:        MachineMove (0)"), std::string::npos);
}

}  // namespace
}  // namespace seqc
