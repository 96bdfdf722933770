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

#include "seqc/seqc.hpp"
#include "support/generators.hpp"

namespace seqc {
namespace {

ProgramD c(const std::string& name, std::int64_t v) {
  return ProgramD::constant(name, Expr::integer(v));
}

ProgramD model(const std::string& sym) {
  return ProgramD::constant("model", Expr::symbol(sym));
}

TEST(AddressResolve, DescendsOneStep) {
  ProgramD choice = ProgramD::choice({c("a", 1), c("a", 2)});
  ProgramD p = ProgramD::conj(c("c1", 0), choice);
  EXPECT_EQ(address_resolve(p, Address{{1}}), choice);
}

TEST(AddressResolve, EmptyPathIsRoot) {
  ProgramD p = ProgramD::conj(c("c1", 0), c("c2", 1));
  EXPECT_EQ(address_resolve(p, Address{}), p);
}

TEST(AddressResolve, LeafHasNoChildren) {
  try {
    address_resolve(c("c1", 0), Address{{0}});
    FAIL() << "expected InvalidAddress";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAddress);
  }
}

TEST(AddressResolve, OutOfRangeAlternative) {
  ProgramD p = ProgramD::choice({c("a", 1), c("a", 2)});
  EXPECT_THROW(address_resolve(p, Address{{2}}), Error);
  EXPECT_FALSE(address_valid(p, Address{{2}}));
  EXPECT_TRUE(address_valid(p, Address{{1}}));
}

TEST(AddressText, RoundTrips) {
  EXPECT_EQ(Address{}.to_string(), "");
  EXPECT_EQ((Address{{1, 0, 2}}).to_string(), "1.0.2");
  EXPECT_EQ(Address::parse("1.0.2"), (Address{{1, 0, 2}}));
  EXPECT_EQ(Address::parse("."), Address{});
  EXPECT_EQ(Address::parse(""), Address{});
  EXPECT_FALSE(Address::parse("1..2"));
  EXPECT_FALSE(Address::parse("a"));
  EXPECT_FALSE(Address::parse("1."));
  EXPECT_FALSE(Address::parse("-1"));
}

TEST(ActiveView, SingleLeaf) {
  ProgramD p = model("BMW320");
  auto view = active_view(p);
  ASSERT_EQ(view.size(), 1u);
  EXPECT_EQ(view[0], std::get<Leaf>(p.node).decl);
}

TEST(ActiveView, ChoiceOffersFirstAlternative) {
  ProgramD p = ProgramD::choice({model("BMW320"), model("BMW520")});
  auto view = active_view(p);
  ASSERT_EQ(view.size(), 1u);
  EXPECT_EQ(view[0], std::get<Leaf>(model("BMW320").node).decl);
}

TEST(ActiveView, LeftToRight) {
  ProgramD d1 = c("d1", 1), d2 = c("d2", 2), d3 = c("d3", 3);
  ProgramD p = ProgramD::conj(d1, ProgramD::choice({d2, d3}));
  auto view = active_view(p);
  ASSERT_EQ(view.size(), 2u);
  EXPECT_EQ(view[0], std::get<Leaf>(d1.node).decl);
  EXPECT_EQ(view[1], std::get<Leaf>(d2.node).decl);
}

TEST(ActiveView, EmptyProgram) {
  EXPECT_TRUE(active_view(ProgramD::empty()).empty());
}

TEST(AddressProperties, GetSetCoherence) {
  testing::TreeGen gen(11);
  ProgramD marker = c("zz", 99);
  for (int i = 0; i < 200; ++i) {
    ProgramD p = gen.program_decls(1 + gen.pick(4));
    for (const auto& a : testing::all_addresses(p)) {
      ProgramD q = address_replace(p, a, marker);
      EXPECT_EQ(address_resolve(q, a), marker);
    }
  }
}

TEST(AddressProperties, ActiveViewIgnoresInactiveAlternatives) {
  testing::TreeGen gen(12);
  ProgramD marker = c("zz", 99);
  int edits = 0;
  for (int i = 0; i < 200; ++i) {
    ProgramD p = gen.program_decls(1 + gen.pick(4));
    auto view = active_view(p);
    for_each_choice(p, [&](const Address& a, const SeqChoiceD& ch) {
      for (std::size_t k = 1; k < ch.alternatives.size(); ++k) {
        Address inner = a;
        inner.path.push_back(k);
        EXPECT_EQ(active_view(address_replace(p, inner, marker)), view);
        ++edits;
      }
    });
  }
  EXPECT_GT(edits, 0);
}

TEST(SubstProperties, BindReplacesOnlyItsName) {
  testing::TreeGen gen(13);
  static const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 500; ++i) {
    Subst theta;
    for (int k = 0; k < 3; ++k) {
      theta.bind(names[gen.pick(4)], Value::integer(static_cast<int>(gen.pick(9))));
    }
    std::string x = names[gen.pick(4)];
    Value v = Value::text("v" + std::to_string(i));
    Subst after = theta.with(x, v);
    ASSERT_NE(after.lookup(x), nullptr);
    EXPECT_EQ(*after.lookup(x), v);
    for (const char* y : names) {
      if (y == x) continue;
      const Value* old = theta.lookup(y);
      const Value* now = after.lookup(y);
      ASSERT_EQ(old == nullptr, now == nullptr);
      if (old) {
        EXPECT_EQ(*old, *now);
      }
    }
  }
}

TEST(Subst, AtMostOneBindingPerName) {
  Subst theta;
  theta.bind("x", Value::integer(1));
  theta.bind("x", Value::integer(2));
  EXPECT_EQ(theta.size(), 1u);
  EXPECT_EQ(*theta.lookup("x"), Value::integer(2));
}

TEST(Status, Codes) {
  EXPECT_EQ(status_code(Status::MachineMove), 0);
  EXPECT_EQ(status_code(Status::MachineStuck), -1);
  EXPECT_EQ(status_code(Status::UserMove), 1);
  EXPECT_EQ(status_code(Status::Terminal), 2);
}

TEST(Values, DisplayAndKind) {
  EXPECT_EQ(display(Value::integer(-4)), "-4");
  EXPECT_EQ(display(Value::text("$32,000")), "$32,000");
  EXPECT_EQ(display(Value::symbol("BMW320")), "BMW320");
  EXPECT_EQ(value_kind(Value::integer(1)), "int");
  EXPECT_EQ(value_kind(Value::text("")), "str");
  EXPECT_EQ(value_kind(Value::symbol("A")), "sym");
  EXPECT_EQ(value_kind(Value::boolean(true)), "bool");
}

TEST(RemainingSwitches, SumsTails) {
  ProgramD p = ProgramD::conj(ProgramD::choice({c("a", 1), c("a", 2), c("a", 3)}),
                              ProgramD::choice({c("b", 1), c("b", 2)}));
  EXPECT_EQ(remaining_switches(p), 3u);
}

}  // namespace
}  // namespace seqc
