#include <gtest/gtest.h>

#include "topos/fixtures.hpp"
#include "topos/tripos.hpp"

using namespace topos;

namespace {

Predicate pred(const HeytingAlgebra& h, const FinSetObj& base, std::vector<std::string> values) {
  std::vector<Elem> v;
  for (const auto& s : values) v.push_back(h.element(s));
  return make_predicate(h, base, std::move(v));
}

FinSetObj set(std::vector<std::string> names) { return FinSetObj(std::move(names)); }

struct BrokenExists {
  Predicate exists(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) const {
    Predicate out = exists_along(h, f, p);
    std::vector<bool> hit(f.target.size(), false);
    for (std::size_t x = 0; x < f.source.size(); ++x) hit[f(x)] = true;
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (!hit[y]) out.values[y] = h.top();
    return out;
  }
  Predicate forall(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) const {
    return forall_along(h, f, p);
  }
};

}  // namespace

TEST(Tripos, ReindexConstant) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"}), c = set({"c"});
  const Predicate p = pred(h, c, {"h"});
  EXPECT_EQ(reindex(constant_map(ab, c, 0), p), pred(h, ab, {"h", "h"}));
}

TEST(Tripos, ReindexIdentityAndSwap) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"});
  const Predicate p = pred(h, ab, {"1", "0"});
  EXPECT_EQ(reindex(identity_map(ab), p), p);
  EXPECT_EQ(reindex(make_map(ab, ab, {1, 0}), p), pred(h, ab, {"0", "1"}));
}

TEST(Tripos, ReindexBaseMismatch) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"}), c = set({"c"});
  EXPECT_THROW(reindex(identity_map(ab), pred(h, c, {"h"})), Error);
}

TEST(Tripos, ExistsAndForallToPoint) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"}), pt = singleton();
  const FinMap f = constant_map(ab, pt, 0);
  const Predicate p = pred(h, ab, {"h", "0"});
  EXPECT_EQ(exists_along(h, f, p), pred(h, pt, {"h"}));
  EXPECT_EQ(forall_along(h, f, p), pred(h, pt, {"0"}));
}

TEST(Tripos, QuantifiersAlongEmptyMap) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj empty, pt = singleton();
  const FinMap f = make_map(empty, pt, {});
  const Predicate p = make_predicate(h, empty, {});
  EXPECT_EQ(forall_along(h, f, p), pred(h, pt, {"1"}));
  EXPECT_EQ(exists_along(h, f, p), pred(h, pt, {"0"}));
}

TEST(Tripos, ExistsAlongInjection) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj a = set({"a"}), uv = set({"u", "v"});
  const FinMap f = make_map(a, uv, {1});
  EXPECT_EQ(exists_along(h, f, pred(h, a, {"h"})), pred(h, uv, {"0", "h"}));
  EXPECT_EQ(forall_along(h, f, pred(h, a, {"h"})), pred(h, uv, {"1", "h"}));
}

TEST(Tripos, ExistsAdjunctionOracle) {
  // ∃_f(p) ≤ q iff p ≤ T f(q), over every q, for f: {a,b} → {*}.
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"}), pt = singleton();
  const FinMap f = constant_map(ab, pt, 0);
  for (const auto& p : all_predicates(h, ab))
    for (const auto& q : all_predicates(h, pt)) {
      EXPECT_EQ(predicate_leq(h, exists_along(h, f, p), q), predicate_leq(h, p, reindex(f, q)));
      EXPECT_EQ(predicate_leq(h, reindex(f, q), p), predicate_leq(h, q, forall_along(h, f, p)));
    }
}

TEST(Tripos, ForallAlongBijection) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj ab = set({"a", "b"}), uv = set({"u", "v"});
  const FinMap f = make_map(ab, uv, {1, 0});
  EXPECT_EQ(forall_along(h, f, pred(h, ab, {"h", "1"})), pred(h, uv, {"1", "h"}));
}

TEST(Tripos, PowerObjectOfPoint) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj x = set({"x"});
  const PowerObject po = power_object(h, x);
  ASSERT_EQ(po.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(po.eval(i), predicate_at(h, x, i).values[0]);
  EXPECT_EQ(po.carrier.name(1), "{x:h}");
}

TEST(Tripos, ClassifyTopGivesTopName) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj x = set({"x", "y"}), y = set({"u", "v"});
  const PowerObject po = power_object(h, x);
  const FinMap a = classify(h, po, y, constant_predicate(product(y, x), h.top()));
  const std::size_t top_name = predicate_index(h, constant_predicate(x, h.top()));
  EXPECT_EQ(a(0), top_name);
  EXPECT_EQ(a(1), top_name);
}

TEST(Tripos, ClassifyExample) {
  const HeytingAlgebra h = fixtures::chain3();
  const FinSetObj x = set({"x"}), y = set({"u", "v"});
  const PowerObject po = power_object(h, x);
  const Predicate alpha = pred(h, product(y, x), {"h", "0"});
  const FinMap a = classify(h, po, y, alpha);
  EXPECT_EQ(po.carrier.name(a(0)), "{x:h}");
  EXPECT_EQ(po.carrier.name(a(1)), "{x:0}");
  EXPECT_EQ(reindex(product_map(a, identity_map(x)), po.eval), alpha);
}

TEST(Tripos, PowerObjectBound) {
  const HeytingAlgebra h = fixtures::chain3();
  EXPECT_THROW(power_object(h, FinSetObj::standard(5), 100), Error);
  try {
    power_object(h, FinSetObj::standard(5), 100);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::bound_exceeded);
  }
}

TEST(Tripos, ValidateChainAndDiamond) {
  for (const char* name : {"chain3", "diamond4"}) {
    const Report r = validate_tripos(fixtures::bundled(name), TriposOptions{2, 10'000, std::nullopt});
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.checks().size(), 8u);
  }
}

TEST(Tripos, CorruptedExistsDetected) {
  const Report r = validate_tripos(fixtures::chain3(), TriposOptions{}, BrokenExists{});
  const auto* c = r.find("tripos.exists.adjunction");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::fail);
  EXPECT_FALSE(c->witness.is_null());
}

TEST(Tripos, SamplingNeedsSeed) {
  const HeytingAlgebra h = fixtures::chain3();
  EXPECT_THROW(validate_tripos(h, TriposOptions{2, 20, std::nullopt}), Error);
  const Report a = validate_tripos(h, TriposOptions{2, 20, 7});
  const Report b = validate_tripos(h, TriposOptions{2, 20, 7});
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.to_json(false), b.to_json(false));
  EXPECT_EQ(a.checks().front().detail["sampled"], true);
}
