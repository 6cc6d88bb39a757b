#include <gtest/gtest.h>

#include "topos/category.hpp"
#include "topos/fixtures.hpp"
#include "topos/resolvent.hpp"

using namespace topos;

namespace {

const HeytingAlgebra& H() {
  static const HeytingAlgebra h = fixtures::chain3();
  return h;
}

PerObject per2(std::vector<std::string> vals) {
  std::vector<Elem> v;
  for (const auto& s : vals) v.push_back(H().element(s));
  return make_per(H(), make_relation(H(), FinSetObj::standard(2), FinSetObj::standard(2), std::move(v)));
}

FinMap fmap(std::size_t a, std::size_t b, std::vector<std::size_t> g) {
  return make_map(FinSetObj::standard(a), FinSetObj::standard(b), std::move(g));
}

std::vector<FinMap> surjections_up_to(std::size_t n) {
  std::vector<FinMap> out;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (auto& f : all_maps(FinSetObj::standard(a), FinSetObj::standard(b)))
        if (is_surjective(f)) out.push_back(f);
  return out;
}

}  // namespace

TEST(Sigma, NablaOne) {
  const PerObject one = nabla(H(), FinSetObj::standard(1));
  const Resolution r = sigma_resolution(H(), one);
  ASSERT_EQ(r.sigma.size(), 3u);
  for (std::size_t xi = 0; xi < 3; ++xi) EXPECT_EQ(r.sigma.extent(xi), predicate_at(H(), one.carrier(), xi).values[0]);
  EXPECT_TRUE(is_cover(H(), r.cover));
  EXPECT_TRUE(is_mono(H(), r.embed));
}

TEST(Sigma, EmptyCarrier) {
  const PerObject empty{Relation::filled(FinSetObj(), FinSetObj(), H().bot())};
  const Resolution r = sigma_resolution(H(), empty);
  ASSERT_EQ(r.sigma.size(), 1u);
  EXPECT_EQ(r.sigma.extent(0), H().bot());
  EXPECT_TRUE(is_iso(H(), r.cover));
}

TEST(Sigma, NablaCoverSplits) {
  for (std::size_t n = 0; n <= 2; ++n) {
    const PerObject a = nabla(H(), FinSetObj::standard(n));
    const Resolution r = sigma_resolution(H(), a);
    EXPECT_TRUE(is_cover(H(), r.cover));
    const auto s = lift(H(), {r.cover}, {identity(a)});
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(compose_morphisms(H(), r.cover, *s), identity(a));
  }
}

TEST(Sigma, EveryCoverIsCover) {
  for (const auto& a : all_pers_up_to(H(), 2)) EXPECT_TRUE(is_cover(H(), sigma_resolution(H(), a).cover));
}

TEST(Sigma, BoundExceeded) {
  try {
    sigma_resolution(H(), nabla(H(), FinSetObj::standard(3)), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::bound_exceeded);
  }
}

TEST(Resolution, NablaOnePasses) {
  const Report r = check_resolution(H(), sigma_resolution(H(), nabla(H(), FinSetObj::standard(1))),
                                    all_assemblies(H(), 2));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checks().size(), 5u);
}

TEST(Resolution, ChainPerPasses) {
  const PerObject a = per2({"1", "h", "h", "h"});
  const Report r = check_resolution(H(), sigma_resolution(H(), a), all_assemblies(H(), 2));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.passed("resolution.clause2.lift"));
}

TEST(Resolution, NonSurjectiveMonoFailsClauseOne) {
  const PerObject one = nabla(H(), FinSetObj::standard(1));
  const PerObject two = nabla(H(), FinSetObj::standard(2));
  const Resolution fake{two, one, identity(one), nabla_map(H(), fmap(1, 2, {0}))};
  const Report r = check_resolution(H(), fake, all_assemblies(H(), 1));
  const auto* c = r.find("resolution.clause1.cover");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::fail);
  EXPECT_EQ(c->witness["law"], "cover");
}

TEST(Assemblies, Count) {
  EXPECT_EQ(all_assemblies(H(), 2).size(), 13u);
  for (const auto& a : all_assemblies(H(), 2)) EXPECT_TRUE(is_diagonal(H(), a));
}

TEST(Assemblies, CanonicalInclusionIsMono) {
  const FinSetObj x = FinSetObj::standard(2);
  for (const auto& p : all_predicates(H(), x)) {
    const FunRel m = assembly_inclusion(H(), Assembly{x, p});
    EXPECT_TRUE(validate_funrel(H(), m.rel, m.dom, m.cod));
    EXPECT_TRUE(is_mono(H(), m));
    EXPECT_TRUE(assembly_test(H(), m.dom, {x}).has_value());
  }
}

TEST(Assemblies, NablaIsAssembly) {
  const FinSetObj x = FinSetObj::standard(2);
  const auto w = assembly_test(H(), nabla(H(), x), {x});
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(is_iso(H(), w->mono));
}

TEST(Assemblies, GluedPerIsNotAnAssembly) {
  const PerObject p = per2({"1", "h", "h", "1"});
  std::vector<FinSetObj> targets;
  for (std::size_t n = 0; n <= 2; ++n) targets.push_back(FinSetObj::standard(n));
  EXPECT_FALSE(assembly_test(H(), p, targets).has_value());
}

TEST(Orthogonality, SurjectionAgainstInjection) {
  const FinSetCategory fs;
  const FinMap e = make_map(FinSetObj({"a", "b"}), FinSetObj({"c"}), {0, 0});
  const FinMap m = make_map(FinSetObj({"u"}), FinSetObj({"u", "v"}), {0});
  const auto v = orthogonality_test(fs, e, m);
  EXPECT_TRUE(v);
  EXPECT_EQ(v.squares, 1u);
}

TEST(Orthogonality, IdentityAgainstAnything) {
  const FinSetCategory fs;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t c = 0; c <= 2; ++c)
      for (std::size_t d = 0; d <= 2; ++d)
        for (const auto& m : all_maps(FinSetObj::standard(c), FinSetObj::standard(d)))
          EXPECT_TRUE(orthogonality_test(fs, identity_map(FinSetObj::standard(a)), m));
}

TEST(Orthogonality, InjectionPairFails) {
  const FinSetCategory fs;
  const auto v = orthogonality_test(fs, fmap(1, 2, {0}), fmap(1, 2, {0}));
  EXPECT_FALSE(v);
  EXPECT_EQ(v.witness["diagonals"], 0);
}

TEST(OpenMonos, FinSetMonosAreOpen) {
  const FinSetCategory fs;
  const auto epis = surjections_up_to(2);
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (const auto& m : all_maps(FinSetObj::standard(a), FinSetObj::standard(b)))
        if (is_injective(m)) {
          EXPECT_TRUE(open_mono_test(fs, m, epis));
        }
  EXPECT_TRUE(open_mono_test(fs, identity_map(FinSetObj::standard(2)), epis));
}

TEST(OpenMonos, NonMonoRejected) {
  const FinSetCategory fs;
  const auto v = open_mono_test(fs, fmap(2, 1, {0, 0}), surjections_up_to(1));
  EXPECT_FALSE(v);
  EXPECT_EQ(v.witness["reason"], "not_mono");
}

TEST(SubNabla, EmptySet) {
  const Report r = subobject_tripos_iso(H(), FinSetObj(), 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.find("sub_nabla.enumerate")->detail["subobjects"], 1);
}

TEST(SubNabla, PointIsTheChain) {
  const Report r = subobject_tripos_iso(H(), FinSetObj({"x"}), 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.find("sub_nabla.enumerate")->detail["subobjects"], 3);
  EXPECT_TRUE(r.passed("sub_nabla.order"));
}

TEST(SubNabla, TwoPointsWithNaturality) {
  for (const char* name : {"chain3", "diamond4"}) {
    const HeytingAlgebra h = fixtures::bundled(name);
    const Report r = subobject_tripos_iso(h, FinSetObj::standard(2), 2);
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.find("sub_nabla.enumerate")->detail["subobjects"], h.size() * h.size());
    EXPECT_TRUE(r.passed("sub_nabla.naturality"));
  }
}
