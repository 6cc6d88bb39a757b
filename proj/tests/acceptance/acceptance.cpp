// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "topos/category.hpp"
#include "topos/exact_completion.hpp"
#include "topos/fixtures.hpp"
#include "topos/heyting.hpp"
#include "topos/per_topos.hpp"
#include "topos/resolvent.hpp"
#include "topos/suites.hpp"
#include "topos/tripos.hpp"

using namespace topos;
using namespace topos::fixtures;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string failed_ids(const Report& r) {
  std::string out;
  for (const auto& c : r.checks())
    if (c.status == Status::fail) out += (out.empty() ? "" : ",") + c.id + " " + c.witness.dump();
  return out;
}

// ---------------------------------------------------------------------------
// Independent oracles.

// Lattice operations from the generating order alone.
struct OracleAlgebra {
  std::size_t n = 0;
  std::vector<std::vector<bool>> le;
  std::vector<std::vector<int>> meet, join, imp;  // -1 when absent
};

OracleAlgebra oracle_algebra(const AlgebraSpec& spec) {
  OracleAlgebra o;
  o.n = spec.elements.size();
  auto idx = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(spec.elements.begin(), spec.elements.end(), s) - spec.elements.begin());
  };
  o.le.assign(o.n, std::vector<bool>(o.n, false));
  for (std::size_t i = 0; i < o.n; ++i) o.le[i][i] = true;
  for (const auto& [a, b] : spec.leq) o.le[idx(a)][idx(b)] = true;
  for (std::size_t k = 0; k < o.n; ++k)
    for (std::size_t i = 0; i < o.n; ++i)
      for (std::size_t j = 0; j < o.n; ++j)
        if (o.le[i][k] && o.le[k][j]) o.le[i][j] = true;
  auto extremum = [&](auto&& candidate, bool greatest) {
    for (std::size_t c = 0; c < o.n; ++c) {
      if (!candidate(c)) continue;
      bool best = true;
      for (std::size_t d = 0; d < o.n && best; ++d)
        if (candidate(d) && !(greatest ? o.le[d][c] : o.le[c][d])) best = false;
      if (best) return static_cast<int>(c);
    }
    return -1;
  };
  o.meet.assign(o.n, std::vector<int>(o.n));
  o.join = o.meet;
  o.imp = o.meet;
  for (std::size_t a = 0; a < o.n; ++a)
    for (std::size_t b = 0; b < o.n; ++b) {
      o.meet[a][b] = extremum([&](std::size_t c) { return o.le[c][a] && o.le[c][b]; }, true);
      o.join[a][b] = extremum([&](std::size_t c) { return o.le[a][c] && o.le[b][c]; }, false);
    }
  for (std::size_t a = 0; a < o.n; ++a)
    for (std::size_t b = 0; b < o.n; ++b)
      o.imp[a][b] = extremum(
          [&](std::size_t c) { return o.meet[c][a] >= 0 && o.le[static_cast<std::size_t>(o.meet[c][a])][b]; }, true);
  return o;
}

// The five functional-relation conditions written out entrywise.
bool oracle_funrel(const HeytingAlgebra& h, const PerObject& a, const PerObject& b, const Relation& f) {
  const std::size_t n = a.size(), m = b.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (!h.leq(f(x, y), h.meet(a.e(x, x), b.e(y, y)))) return false;
      for (std::size_t x2 = 0; x2 < n; ++x2)
        if (!h.leq(h.meet(a.e(x2, x), f(x, y)), f(x2, y))) return false;
      for (std::size_t y2 = 0; y2 < m; ++y2) {
        if (!h.leq(h.meet(f(x, y), b.e(y, y2)), f(x, y2))) return false;
        if (!h.leq(h.meet(f(x, y), f(x, y2)), b.e(y, y2))) return false;
      }
    }
  for (std::size_t x = 0; x < n; ++x) {
    Elem j = h.bot();
    for (std::size_t y = 0; y < m; ++y) j = h.join(j, f(x, y));
    if (!h.leq(a.e(x, x), j)) return false;
  }
  return true;
}

std::size_t oracle_hom_count(const HeytingAlgebra& h, const PerObject& a, const PerObject& b) {
  const std::size_t cells = a.size() * b.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= h.size();
  std::size_t count = 0;
  Relation f = Relation::filled(a.carrier(), b.carrier(), h.bot());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < cells; ++i, c /= h.size()) f.m[i] = static_cast<Elem>(c % h.size());
    if (oracle_funrel(h, a, b, f)) ++count;
  }
  return count;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Maps between standard sets, as plain vectors.
std::vector<std::vector<std::size_t>> raw_maps(std::size_t a, std::size_t b) {
  std::vector<std::vector<std::size_t>> out;
  if (a > 0 && b == 0) return out;
  std::vector<std::size_t> g(a, 0);
  while (true) {
    out.push_back(g);
    std::size_t i = 0;
    while (i < a && ++g[i] == b) g[i++] = 0;
    if (i == a) break;
  }
  return out;
}

std::vector<std::size_t> raw_compose(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f) {
  std::vector<std::size_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

// Counts commuting squares of e: A→B against m: C→D, and those with no diagonal.
std::pair<std::size_t, std::size_t> raw_orthogonality(const std::vector<std::size_t>& e, std::size_t b,
                                                      const std::vector<std::size_t>& m, std::size_t d) {
  const std::size_t a = e.size(), c = m.size();
  std::size_t squares = 0, bad = 0;
  const auto hs = raw_maps(b, c);
  for (const auto& f : raw_maps(a, c))
    for (const auto& g : raw_maps(b, d)) {
      if (raw_compose(m, f) != raw_compose(g, e)) continue;
      ++squares;
      std::size_t diagonals = 0;
      for (const auto& hh : hs)
        if (raw_compose(hh, e) == f && raw_compose(m, hh) == g) ++diagonals;
      if (diagonals != 1) ++bad;
    }
  return {squares, bad};
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome out;
  std::size_t triples = 0;
  for (const char* name : {"chain2", "chain3", "diamond4"}) {
    const AlgebraSpec spec = bundled_spec(name);
    const HeytingAlgebra h = build_heyting(spec.elements, spec.leq);
    const Report r = validate_heyting(h);
    out.require(r.ok(), std::string(name) + ": " + failed_ids(r));
    const OracleAlgebra o = oracle_algebra(spec);
    for (std::size_t a = 0; a < o.n; ++a)
      for (std::size_t b = 0; b < o.n; ++b) {
        const auto ea = h.element(spec.elements[a]), eb = h.element(spec.elements[b]);
        out.require(o.meet[a][b] >= 0 && h.name(h.meet(ea, eb)) == spec.elements[o.meet[a][b]], "meet oracle");
        out.require(o.join[a][b] >= 0 && h.name(h.join(ea, eb)) == spec.elements[o.join[a][b]], "join oracle");
        out.require(o.imp[a][b] >= 0 && h.name(h.imp(ea, eb)) == spec.elements[o.imp[a][b]], "imp oracle");
        for (std::size_t c = 0; c < o.n; ++c) {
          ++triples;
          const auto ec = h.element(spec.elements[c]);
          out.require(h.leq(h.meet(ec, ea), eb) == h.leq(ec, h.imp(ea, eb)), "residuation");
        }
      }
  }
  const AlgebraSpec m3 = bundled_spec("m3");
  bool rejected = false;
  std::string witness;
  try {
    build_heyting(m3.elements, m3.leq);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::no_residuation && !e.witness().is_null();
    witness = e.witness().dump();
  }
  out.require(rejected, "m3 accepted");
  const OracleAlgebra o = oracle_algebra(m3);
  bool oracle_gap = false;
  for (std::size_t a = 0; a < o.n; ++a)
    for (std::size_t b = 0; b < o.n; ++b) oracle_gap = oracle_gap || o.imp[a][b] < 0;
  out.require(oracle_gap, "oracle finds a residual for every pair in m3");
  if (out.ok) out.note = std::to_string(triples) + " triples; m3 rejected with " + witness;
  return out;
}

Outcome ac2() {
  Outcome out;
  const HeytingAlgebra h = chain3();
  const Report r = validate_tripos(h, TriposOptions{2, 10'000, std::nullopt});
  out.require(r.ok(), failed_ids(r));
  for (const char* id : {"tripos.exists.adjunction", "tripos.forall.adjunction", "tripos.reindex.functoriality",
                         "tripos.frobenius_chain", "tripos.beck_chevalley", "tripos.generic_predicate"})
    out.require(r.passed(id), std::string("missing ") + id);

  // Quantifiers against their entrywise definitions.
  std::size_t largest = 0, instances = 0;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b) {
      const FinSetObj x = FinSetObj::standard(a), y = FinSetObj::standard(b);
      const auto preds = all_predicates(h, x);
      largest = std::max(largest, preds.size());
      for (const auto& f : all_maps(x, y))
        for (const auto& p : preds) {
          ++instances;
          const Predicate ex = exists_along(h, f, p), fa = forall_along(h, f, p);
          for (std::size_t j = 0; j < b; ++j) {
            Elem e = h.bot(), u = h.top();
            for (std::size_t i = 0; i < a; ++i)
              if (f(i) == j) {
                e = h.join(e, p.values[i]);
                u = h.meet(u, p.values[i]);
              }
            out.require(ex.values[j] == e && fa.values[j] == u, "quantifier oracle");
          }
        }
    }
  out.require(predicate_count(h, 4, 10'000).value_or(0) == 81, "predicate space on 2×2 is not 81");
  if (out.ok)
    out.note = std::to_string(r.checks().size()) + " checks, " + std::to_string(instances) +
               " quantifier instances, largest base predicate space 81";
  return out;
}

Outcome ac3() {
  Outcome out;
  const HeytingAlgebra h = chain3();
  suites::RunConfig cfg;
  cfg.seed = 20240601;
  const Report r = suites::category_laws(h, cfg);
  for (const char* id : {"laws.category.identity", "laws.category.associativity", "laws.category.composite_valid"})
    out.require(r.passed(id), std::string(id) + " " + failed_ids(r));

  const auto objects = all_pers_up_to(h, 2);
  std::size_t total = 0, oracle_total = 0;
  for (const auto& a : objects)
    for (const auto& b : objects) {
      total += homs(h, a, b).size();
      oracle_total += oracle_hom_count(h, a, b);
    }
  out.require(total == oracle_total, "hom enumeration disagrees with brute force");
  if (out.ok) {
    const auto* assoc = r.find("laws.category.associativity");
    out.note = std::to_string(objects.size()) + " objects, " + std::to_string(total) + " morphisms, " +
               assoc->detail.dump();
  }
  return out;
}

Outcome ac4() {
  Outcome out;
  std::size_t comparisons = 0;
  for (const char* name : {"chain2", "chain3", "diamond4"}) {
    const HeytingAlgebra h = bundled(name);
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b) {
        const FinSetObj x = FinSetObj::standard(a), y = FinSetObj::standard(b);
        const FunRel cmp = pair(h, nabla_map(h, projection0(x, y)), nabla_map(h, projection1(x, y)));
        const Cone prod = product(h, nabla(h, x), nabla(h, y));
        out.require(cmp.cod == prod.apex, "comparison codomain is not the product");
        // With both sides diagonal, the comparison must be a bijective ⊤/⊥ matrix.
        std::vector<std::size_t> tops_per_col(cmp.cod.size(), 0);
        for (std::size_t i = 0; i < cmp.dom.size(); ++i) {
          std::size_t tops = 0;
          for (std::size_t j = 0; j < cmp.cod.size(); ++j) {
            const Elem v = cmp.rel(i, j);
            out.require(v == h.top() || v == h.bot(), "comparison entry is not ⊤/⊥");
            if (v == h.top()) {
              ++tops;
              ++tops_per_col[j];
            }
          }
          out.require(tops == 1, "comparison row is not a point");
        }
        for (std::size_t t : tops_per_col) out.require(t == 1, "comparison is not onto");
        const FunRel inv{cmp.cod, cmp.dom, rel_inverse(cmp.rel)};
        out.require(oracle_funrel(h, inv.dom, inv.cod, inv.rel), "inverse is not a morphism");
        out.require(compose_morphisms(h, inv, cmp) == identity(cmp.dom) &&
                        compose_morphisms(h, cmp, inv) == identity(cmp.cod),
                    "comparison has no two-sided inverse");
        ++comparisons;
      }
  }
  if (out.ok) out.note = std::to_string(comparisons) + " comparisons over chain2, chain3, diamond4";
  return out;
}

Outcome ac5() {
  Outcome out;
  suites::RunConfig cfg;
  cfg.command = "resolve";
  const Report r = suites::resolve(cfg);
  out.require(r.ok(), failed_ids(r));
  std::size_t objects = 0, clauses = 0;
  for (const auto& c : r.checks()) {
    if (c.id.size() > 7 && c.id.substr(c.id.size() - 7) == ".object") ++objects;
    if (c.id.find(".clause") != std::string::npos) ++clauses;
  }
  const std::size_t probes = all_assemblies(chain3(), 2).size();
  out.require(objects == 18, "expected 18 PERs, saw " + std::to_string(objects));
  out.require(clauses == objects * 4, "clause checks missing");
  if (out.ok)
    out.note = std::to_string(objects) + " PERs x " + std::to_string(probes) + " assembly probes, " +
               std::to_string(clauses) + " clause checks";
  return out;
}

Outcome ac6() {
  Outcome out;
  const HeytingAlgebra h = chain3();
  const Classifier cl = subobject_classifier(h);
  const auto objects = all_pers_up_to(h, 2);
  std::size_t monos = 0;
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& m : homs(h, a, b)) {
        if (!is_mono(h, m)) continue;
        ++monos;
        const FunRel chi = classify_mono(h, m);
        out.require(same_subobject(h, pull_back_truth(h, chi), m), "classify_mono does not pull back to m");
        std::size_t count = 0;
        for (const auto& c : homs(h, b, cl.omega))
          if (same_subobject(h, pull_back_truth(h, c), m)) ++count;
        out.require(count == 1, std::to_string(count) + " classifying maps for a mono");
        out.require(homs(h, b, cl.omega).size() > 0, "no maps into Ω");
      }
  if (out.ok) out.note = std::to_string(monos) + " monos, each with exactly one classifying map";
  return out;
}

Outcome ac7() {
  Outcome out;
  std::string counts;
  for (const char* name : {"chain3", "diamond4"}) {
    suites::RunConfig cfg;
    cfg.heyting = name;
    const Report r = suites::sub_nabla_iso(cfg);
    out.require(r.ok(), std::string(name) + ": " + failed_ids(r));
    const std::size_t k = bundled(name).size();
    std::size_t expected = 1;
    for (std::size_t n = 0; n <= 2; ++n, expected *= k) {
      const std::string pre = "sub_nabla." + std::to_string(n) + ".";
      for (const char* id : {"enumerate", "bijective", "order", "naturality"})
        out.require(r.passed(pre + id), std::string(name) + " missing " + pre + id);
      const auto* en = r.find(pre + "enumerate");
      const std::size_t classes = en && en->detail.contains("subobjects") ? en->detail["subobjects"].get<std::size_t>() : 0;
      out.require(classes == expected, std::string(name) + ": |Sub(∇" + std::to_string(n) + ")| = " +
                                           std::to_string(classes) + ", expected " + std::to_string(expected));
      counts += (counts.empty() ? "" : "/") + std::to_string(classes);
    }
  }
  if (out.ok) out.note = "subobject counts " + counts + " match |H|^|X|";
  return out;
}

Outcome ac8() {
  Outcome out;
  const FinSetCategory fs;
  std::size_t spans = 0, accepted = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    const FinSetObj x0 = FinSetObj::standard(n);
    const std::size_t cells = n * n;
    for (std::size_t code = 0; code < (std::size_t{1} << cells); ++code) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t c = 0; c < cells; ++c)
        if (code >> c & 1) pairs.emplace_back(c / n, c % n);
      bool equivalence = true;
      std::set<std::pair<std::size_t, std::size_t>> rel(pairs.begin(), pairs.end());
      for (std::size_t i = 0; i < n; ++i) equivalence = equivalence && rel.count({i, i});
      for (const auto& [a, b] : rel) {
        equivalence = equivalence && rel.count({b, a});
        for (const auto& [c, d] : rel)
          if (b == c) equivalence = equivalence && rel.count({a, d});
      }
      UnionFind uf(n);
      for (const auto& [a, b] : pairs) uf.unite(a, b);

      for (std::size_t copies : {1, 2}) {
        if (copies == 2 && pairs.empty()) continue;
        ++spans;
        std::vector<std::string> names;
        std::vector<std::size_t> g0, g1;
        for (std::size_t k = 0; k < copies; ++k)
          for (const auto& [a, b] : pairs) {
            names.push_back(std::to_string(k) + ":" + x0.name(a) + x0.name(b));
            g0.push_back(a);
            g1.push_back(b);
          }
        const FinSetObj x1(names);
        const PseqSpan<FinSetCategory> span{x1, x0, FinMap{x1, x0, g0}, FinMap{x1, x0, g1}};
        const auto v = validate_pseudoeq(fs, span);
        out.require(static_cast<bool>(v) == equivalence, "acceptance disagrees with the equivalence test");
        if (!v) continue;
        ++accepted;
        const auto q = quotient(fs, *v.value);
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < n; ++i) roots.insert(uf.find(i));
        out.require(q.object.size() == roots.size(), "class count disagrees with union-find");
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            out.require((q.cover(i) == q.cover(j)) == (uf.find(i) == uf.find(j)), "partition disagrees with union-find");
      }
    }
  }

  const HeytingAlgebra h = chain3();
  const PerCategory cat(h);
  const auto resolver = per_resolver(h);
  std::size_t pers = 0;
  for (const auto& a : all_pers_up_to(h, 2)) {
    const auto rep = represent(cat, a, resolver);
    out.require(validate_pseudoeq(cat, rep.pseq.span).value.has_value(), "representing span is not a pseudoequivalence");
    const auto q = quotient(cat, rep.pseq);
    const auto cmp = cat.factor_through_cover(q.cover, rep.cover);
    out.require(cmp && cat.cod(*cmp) == a && cat.is_iso(*cmp), "quotient(represent(A)) is not A");
    out.require(rep.comparison_is_iso(cat), "representation comparison is not iso");
    ++pers;
  }
  if (out.ok)
    out.note = std::to_string(spans) + " FinSet spans (" + std::to_string(accepted) + " pseudoequivalences), " +
               std::to_string(pers) + " PER round trips";
  return out;
}

Outcome ac9() {
  Outcome out;
  std::string notes;
  for (const char* functor : {"global-sections", "identity"}) {
    suites::RunConfig cfg;
    cfg.command = "kan";
    cfg.functor = functor;
    const Report r = suites::kan(cfg);
    out.require(r.ok(), std::string(functor) + ": " + failed_ids(r));
    out.require(r.passed("kan.unit"), std::string(functor) + " units");
    out.require(r.passed("kan.counit.biconditional"), std::string(functor) + " counit");
    if (std::string(functor) == "global-sections") out.require(r.passed("kan.gamma_nabla"), "Γ_!(∇Y) ≅ Y");
    const auto* c = r.find("kan.counit.biconditional");
    std::size_t both_true = 0, both_false = 0;
    if (c)
      for (const auto& inst : c->detail["instances"]) {
        const bool e = inst["cover_preserved"], i = inst["counit_iso"];
        out.require(e == i, "biconditional instance disagrees");
        (e ? both_true : both_false)++;
      }
    notes += std::string(notes.empty() ? "" : "; ") + functor + " counit " + std::to_string(both_true) + " true/" +
             std::to_string(both_false) + " false";
  }

  // A representable that does not preserve every cover exercises the other direction.
  const HeytingAlgebra h = chain3();
  const PerCategory cat(h);
  const FinSetCategory fs;
  const PerObject p = make_per(h, make_relation(h, FinSetObj::standard(2), FinSetObj::standard(2),
                                                {h.top(), h.element("h"), h.element("h"), h.top()}));
  auto hp = hom_functor(cat, p, "hom(P,-)");
  const Report cont = validate_continuity(cat, fs, hp, all_assemblies(h, 1));
  out.require(cont.ok(), "hom(P,-) continuity: " + failed_ids(cont));
  std::vector<Resolution> resolutions;
  for (const auto& a : all_pers_up_to(h, 2)) resolutions.push_back(sigma_resolution(h, a));
  const Report counit = counit_check(cat, fs, hp, resolutions);
  out.require(counit.ok(), "hom(P,-) counit: " + failed_ids(counit));
  std::size_t both_true = 0, both_false = 0;
  for (const auto& inst : counit.checks().back().detail["instances"]) (inst["cover_preserved"] ? both_true : both_false)++;
  out.require(both_false > 0, "hom(P,-) never fails to preserve a cover");
  notes += "; hom(P,-) counit " + std::to_string(both_true) + " true/" + std::to_string(both_false) + " false";
  if (out.ok) out.note = notes;
  return out;
}

Outcome ac10() {
  Outcome out;
  suites::RunConfig cfg;
  cfg.command = "ortho";
  cfg.max_set = 3;
  const Report r = suites::ortho(cfg);
  out.require(r.passed("ortho.finset.surjection_injection"), failed_ids(r));
  out.require(r.passed("ortho.finset.injection_injection_counterexample"), "no failing injection pair");

  std::size_t pairs = 0, squares = 0, bad = 0;
  std::size_t inj_failures = 0;
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (const auto& e : raw_maps(a, b)) {
        const std::set<std::size_t> img(e.begin(), e.end());
        const bool surj = img.size() == b, inj = img.size() == a;
        for (std::size_t c = 0; c <= 3; ++c)
          for (std::size_t d = 0; d <= 3; ++d)
            for (const auto& m : raw_maps(c, d)) {
              if (std::set<std::size_t>(m.begin(), m.end()).size() != c) continue;
              if (surj) {
                ++pairs;
                const auto [s, x] = raw_orthogonality(e, b, m, d);
                squares += s;
                bad += x;
              }
              if (inj && inj_failures == 0 && raw_orthogonality(e, b, m, d).second > 0) ++inj_failures;
            }
      }
  const auto* sr = r.find("ortho.finset.surjection_injection");
  out.require(sr && sr->detail["pairs"] == pairs && sr->detail["squares"] == squares,
              "pair/square counts disagree with the oracle");
  out.require(bad == 0, "oracle finds a surjection/injection square without a unique diagonal");
  out.require(inj_failures > 0, "oracle finds no failing injection pair");

  const auto* cx = r.find("ortho.finset.injection_injection_counterexample");
  if (out.ok)
    out.note = std::to_string(pairs) + " pairs, " + std::to_string(squares) + " squares; counterexample " +
               cx->detail.dump();
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit_ms;  // 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "Heyting laws", 1'000, ac1},
      {"AC2", "tripos axioms", 10'000, ac2},
      {"AC3", "category laws", 120'000, ac3},
      {"AC4", "nabla preserves products", 0, ac4},
      {"AC5", "sigma resolutions", 300'000, ac5},
      {"AC6", "subobject classifier", 0, ac6},
      {"AC7", "Sub(nabla X) vs predicates", 0, ac7},
      {"AC8", "pseudoequivalence quotients", 0, ac8},
      {"AC9", "Kan extension", 0, ac9},
      {"AC10", "orthogonality", 0, ac10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_ms > 0 && ms >= c.limit_ms) {
      o.ok = false;
      o.note = "time limit " + std::to_string(static_cast<long>(c.limit_ms)) + " ms exceeded; " + o.note;
    }
    all = all && o.ok;
    std::printf("%-4s %s  %-30s %9.1f ms  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, ms, o.note.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
