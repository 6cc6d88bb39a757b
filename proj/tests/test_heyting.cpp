#include <gtest/gtest.h>

#include <algorithm>

#include "topos/fixtures.hpp"
#include "topos/heyting.hpp"

using namespace topos;

namespace {

// imp(a,b) as the greatest c with c∧a ≤ b, by scanning every c.
Elem scan_imp(const HeytingAlgebra& h, Elem a, Elem b) {
  std::optional<Elem> best;
  for (Elem c = 0; c < h.size(); ++c)
    if (h.leq(h.meet(c, a), b) && (!best || h.leq(*best, c))) best = c;
  return *best;
}

ErrorCode build_error(const std::vector<std::string>& els, const std::vector<std::pair<std::string, std::string>>& leq) {
  try {
    build_heyting(els, leq);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "build succeeded";
  return ErrorCode::validation_error;
}

}  // namespace

TEST(Heyting, ChainImplication) {
  const HeytingAlgebra h = fixtures::chain3();
  EXPECT_EQ(h.name(implication(h, "h", "0")), "0");
  EXPECT_EQ(h.name(implication(h, "0", "h")), "1");
  EXPECT_EQ(h.name(implication(h, "1", "h")), "h");
}

TEST(Heyting, ImplicationMatchesScan) {
  for (const auto& name : fixtures::bundled_names()) {
    if (name == "m3") continue;
    const HeytingAlgebra h = fixtures::bundled(name);
    for (Elem a = 0; a < h.size(); ++a)
      for (Elem b = 0; b < h.size(); ++b) EXPECT_EQ(h.imp(a, b), scan_imp(h, a, b)) << name;
  }
}

TEST(Heyting, BooleanTwo) {
  const HeytingAlgebra h = fixtures::chain2();
  const Elem z = h.element("0"), o = h.element("1");
  EXPECT_EQ(h.imp(z, z), o);
  EXPECT_EQ(h.imp(z, o), o);
  EXPECT_EQ(h.imp(o, z), z);
  EXPECT_EQ(h.imp(o, o), o);
  EXPECT_EQ(h.neg(h.neg(z)), z);
}

TEST(Heyting, SelfImplicationAndTop) {
  for (const auto& name : {"chain2", "chain3", "diamond4"}) {
    const HeytingAlgebra h = fixtures::bundled(name);
    for (Elem a = 0; a < h.size(); ++a) {
      EXPECT_EQ(h.imp(a, a), h.top());
      EXPECT_EQ(h.imp(h.top(), a), a);
    }
  }
}

TEST(Heyting, BundledAlgebrasPass) {
  for (const auto& name : {"chain2", "chain3", "diamond4"}) {
    const Report r = validate_heyting(fixtures::bundled(name));
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.checks().size(), 7u);
  }
}

TEST(Heyting, M3Rejected) {
  const auto spec = fixtures::m3_spec();
  try {
    build_heyting(spec.elements, spec.leq);
    FAIL() << "m3 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_residuation);
    const json& w = e.witness();
    ASSERT_TRUE(w.contains("c") && w.contains("a") && w.contains("b"));
    // The witness is a genuine counterexample in the order of m3.
    const std::string c = w["c"], a = w["a"], b = w["b"];
    EXPECT_EQ(c, "a");
    EXPECT_EQ(a, "a");
    EXPECT_EQ(b, "0");
  }
}

TEST(Heyting, CorruptedImplicationWitness) {
  HeytingTables t = fixtures::chain3().tables();
  const auto idx = [&](const char* s) {
    return static_cast<Elem>(std::find(t.names.begin(), t.names.end(), s) - t.names.begin());
  };
  t.imp[t.cell(idx("h"), idx("0"))] = idx("1");
  const Report r = validate_heyting(t);
  EXPECT_FALSE(r.ok());
  const auto* res = r.find("heyting.residuation");
  ASSERT_NE(res, nullptr);
  ASSERT_EQ(res->status, Status::fail);
  EXPECT_EQ(res->witness["a"], "h");
  EXPECT_EQ(res->witness["b"], "0");
  // h∧h = h ≰ 0 although h ≤ imp(h,0) = 1.
  EXPECT_EQ(res->witness["c"], "h");
  EXPECT_TRUE(r.passed("heyting.lattice.meet_is_glb"));
}

TEST(Heyting, MalformedOrders) {
  EXPECT_EQ(build_error({"0", "1"}, {{"0", "z"}}), ErrorCode::unknown_element);
  EXPECT_EQ(build_error({"0", "1", "a"}, {{"0", "1"}, {"1", "a"}, {"a", "1"}}), ErrorCode::not_a_poset);
  EXPECT_EQ(build_error({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}), ErrorCode::not_a_lattice);
  EXPECT_EQ(build_error({"0", "0"}, {}), ErrorCode::duplicate_element);
  EXPECT_EQ(build_error({}, {}), ErrorCode::not_a_lattice);
}

TEST(Heyting, ImplicationRejectsForeignIndex) {
  const HeytingAlgebra h = fixtures::chain3();
  EXPECT_THROW(implication(h, Elem{7}, Elem{0}), Error);
  EXPECT_THROW(implication(h, "x", "0"), Error);
}

TEST(Heyting, BuildIsDeterministic) {
  const auto spec = fixtures::diamond4_spec();
  const HeytingAlgebra a = build_heyting(spec.elements, spec.leq);
  const HeytingAlgebra b = build_heyting(spec.elements, spec.leq);
  EXPECT_EQ(a.tables().imp, b.tables().imp);
  EXPECT_EQ(a.tables().meet, b.tables().meet);
  EXPECT_TRUE(a == b);
}

TEST(Heyting, DiamondComplements) {
  const HeytingAlgebra h = fixtures::diamond4();
  EXPECT_EQ(h.name(h.neg(h.element("a"))), "b");
  EXPECT_EQ(h.name(h.join(h.element("a"), h.element("b"))), "1");
  EXPECT_EQ(h.name(h.meet(h.element("a"), h.element("b"))), "0");
}
