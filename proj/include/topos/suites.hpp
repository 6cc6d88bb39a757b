#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "topos/category.hpp"
#include "topos/exact_completion.hpp"
#include "topos/heyting.hpp"
#include "topos/io.hpp"
#include "topos/per_topos.hpp"
#include "topos/report.hpp"
#include "topos/resolvent.hpp"
#include "topos/tripos.hpp"

// Named check suites behind the command-line tool.

namespace topos::suites {

inline constexpr const char* tool_name = "topos";
inline constexpr const char* tool_version = "0.1.0";

struct RunConfig {
  std::string command;
  std::string heyting = "chain3";
  std::vector<std::string> objects;
  std::optional<std::string> pseq;
  std::string category = "finset";
  std::string functor = "global-sections";
  std::size_t max_set = 2;
  std::size_t max_carrier = 2;
  std::size_t probe_bound = 2;
  std::size_t predicate_cap = 10'000;
  std::size_t triple_cap = 100'000;
  std::optional<std::uint64_t> seed;

  json echo() const {
    return json{{"command", command},
                {"heyting", heyting},
                {"objects", objects},
                {"pseq", pseq ? json(*pseq) : json(nullptr)},
                {"category", category},
                {"functor", functor},
                {"max_set", max_set},
                {"max_carrier", max_carrier},
                {"probe_bound", probe_bound},
                {"predicate_cap", predicate_cap},
                {"seed", seed ? json(*seed) : json(nullptr)}};
  }

  void validate() const {
    auto positive = [](std::size_t v, const char* name) {
      if (v == 0) throw Error(ErrorCode::validation_error, std::string("--") + name + " must be positive");
    };
    positive(max_set, "max-set");
    positive(max_carrier, "max-carrier");
    positive(probe_bound, "probe-bound");
    positive(predicate_cap, "predicate-cap");
  }
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"heyting-check", "tripos-verify", "topos-laws", "resolve",
                                              "kan",           "quotient",      "ortho",      "sub-nabla-iso"};
  return names;
}

namespace detail {

inline std::string index_label(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

inline std::vector<PerObject> objects_or_all(const HeytingAlgebra& h, const RunConfig& cfg) {
  if (cfg.objects.empty()) return all_pers_up_to(h, cfg.max_carrier);
  std::vector<PerObject> out;
  for (const auto& p : cfg.objects) out.push_back(io::load_per(h, p));
  return out;
}

struct Hom {
  std::size_t dom, cod;
  FunRel f;
};

struct HomTable {
  std::vector<PerObject> objects;
  std::vector<Hom> all;
  std::vector<std::vector<std::size_t>> into, out_of;  // per object, indices into `all`
};

inline HomTable hom_table(const HeytingAlgebra& h, std::vector<PerObject> objects) {
  HomTable t;
  t.objects = std::move(objects);
  t.into.resize(t.objects.size());
  t.out_of.resize(t.objects.size());
  for (std::size_t a = 0; a < t.objects.size(); ++a)
    for (std::size_t b = 0; b < t.objects.size(); ++b)
      for (auto& f : homs(h, t.objects[a], t.objects[b])) {
        t.into[b].push_back(t.all.size());
        t.out_of[a].push_back(t.all.size());
        t.all.push_back({a, b, std::move(f)});
      }
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Report heyting_check(const RunConfig& cfg) {
  const auto spec = io::resolve_algebra_spec(cfg.heyting);
  try {
    const HeytingAlgebra h = build_heyting(spec.elements, spec.leq);
    Report r = validate_heyting(h);
    r.pass("heyting.build", json{{"elements", h.size()}});
    return r;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::not_a_poset:
      case ErrorCode::not_a_lattice:
      case ErrorCode::no_residuation: {
        Report r;
        json w = e.witness().is_null() ? json::object() : e.witness();
        r.fail("heyting.build", json{{"error", std::string(to_string(e.code()))}, {"witness", w}});
        return r;
      }
      default:
        throw;
    }
  }
}

inline Report tripos_verify(const RunConfig& cfg) {
  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  return validate_tripos(h, TriposOptions{cfg.max_set, cfg.predicate_cap, cfg.seed});
}

// Category laws over all PERs on carriers ≤ max_carrier; associativity is
// exhaustive up to triple_cap composable triples and seeded-sampled above.
inline Report category_laws(const HeytingAlgebra& h, const RunConfig& cfg) {
  Report report;
  const detail::HomTable t = detail::hom_table(h, all_pers_up_to(h, cfg.max_carrier));

  report.timed("laws.per.idempotent", [&]() -> std::optional<json> {
    for (const auto& a : t.objects)
      if (!(rel_inverse(a.e) == a.e) || !(rel_compose(h, a.e, a.e) == a.e)) return json{{"object", to_json(h, a)}};
    return std::nullopt;
  });
  report.checks().back().detail = json{{"objects", t.objects.size()}};

  report.timed("laws.category.identity", [&]() -> std::optional<json> {
    for (const auto& m : t.all) {
      if (!(compose_morphisms(h, identity(m.f.cod), m.f) == m.f)) return json{{"side", "left"}, {"map", to_json(h, m.f.rel)}};
      if (!(compose_morphisms(h, m.f, identity(m.f.dom)) == m.f)) return json{{"side", "right"}, {"map", to_json(h, m.f.rel)}};
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"morphisms", t.all.size()}};

  std::size_t pairs = 0;
  report.timed("laws.category.composite_valid", [&]() -> std::optional<json> {
    for (const auto& f : t.all)
      for (std::size_t gi : t.out_of[f.cod]) {
        ++pairs;
        const FunRel& g = t.all[gi].f;
        const Relation c = rel_compose(h, f.f.rel, g.rel);
        if (!validate_funrel(h, c, f.f.dom, g.cod)) return json{{"f", to_json(h, f.f.rel)}, {"g", to_json(h, g.rel)}};
      }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"pairs", pairs}};

  // Triples (f, g, k) are indexed through the middle arrow g, weighted by
  // |into(dom g)| · |out_of(cod g)|.
  std::vector<double> weight(t.all.size());
  double total = 0;
  for (std::size_t i = 0; i < t.all.size(); ++i) {
    weight[i] = static_cast<double>(t.into[t.all[i].dom].size()) * static_cast<double>(t.out_of[t.all[i].cod].size());
    total += weight[i];
  }
  const bool sampled = total > static_cast<double>(cfg.triple_cap);
  if (sampled && !cfg.seed)
    throw Error(ErrorCode::validation_error, "composable triples exceed the cap; sampling requires --seed",
                json{{"triples", total}, {"cap", cfg.triple_cap}});
  std::size_t checked = 0;
  report.timed("laws.category.associativity", [&]() -> std::optional<json> {
    auto check = [&](const FunRel& f, const FunRel& g, const FunRel& k) -> std::optional<json> {
      ++checked;
      if (!(compose_morphisms(h, k, compose_morphisms(h, g, f)) == compose_morphisms(h, compose_morphisms(h, k, g), f)))
        return json{{"f", to_json(h, f.rel)}, {"g", to_json(h, g.rel)}, {"k", to_json(h, k.rel)}};
      return std::nullopt;
    };
    if (!sampled) {
      for (const auto& g : t.all)
        for (std::size_t fi : t.into[g.dom])
          for (std::size_t ki : t.out_of[g.cod])
            if (auto w = check(t.all[fi].f, g.f, t.all[ki].f)) return w;
      return std::nullopt;
    }
    std::vector<std::uint64_t> cumulative;
    std::uint64_t acc = 0;
    for (double w : weight) cumulative.push_back(acc += static_cast<std::uint64_t>(w));
    std::mt19937_64 rng(*cfg.seed);
    for (std::size_t s = 0; s < cfg.triple_cap; ++s) {
      const std::uint64_t pick = rng() % acc;
      const std::size_t gi = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
      const detail::Hom& g = t.all[gi];
      const auto& in = t.into[g.dom];
      const auto& out = t.out_of[g.cod];
      if (auto w = check(t.all[in[rng() % in.size()]].f, g.f, t.all[out[rng() % out.size()]].f)) return w;
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"triples", static_cast<std::uint64_t>(total)}, {"checked", checked}, {"sampled", sampled}};

  report.timed("laws.image.factorization", [&]() -> std::optional<json> {
    for (const auto& m : t.all) {
      const Factorization fac = image_factorize(h, m.f);
      if (!(compose_morphisms(h, fac.mono, fac.cover) == m.f) || !is_mono(h, fac.mono) || !is_cover(h, fac.cover))
        return json{{"map", to_json(h, m.f.rel)}};
    }
    return std::nullopt;
  });

  std::size_t monos = 0;
  report.timed("laws.classifier.unique", [&]() -> std::optional<json> {
    const Classifier cl = subobject_classifier(h);
    for (const auto& m : t.all) {
      if (!is_mono(h, m.f)) continue;
      ++monos;
      const FunRel chi = classify_mono(h, m.f);
      if (!same_subobject(h, pull_back_truth(h, chi), m.f)) return json{{"stage", "pullback"}, {"mono", to_json(h, m.f.rel)}};
      std::size_t count = 0;
      for (const auto& c : homs(h, m.f.cod, cl.omega))
        if (same_subobject(h, pull_back_truth(h, c), m.f)) ++count;
      if (count != 1) return json{{"stage", "unique"}, {"mono", to_json(h, m.f.rel)}, {"classifiers", count}};
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"monos", monos}};
  return report;
}

inline Report limit_laws(const HeytingAlgebra& h, const RunConfig& cfg) {
  Report report;
  const std::vector<PerObject> probes = all_pers_up_to(h, cfg.probe_bound);
  const std::vector<PerObject> small = all_pers_up_to(h, 1);

  report.timed("laws.limits.terminal", [&]() { return verify_terminal(h, probes); });
  report.timed("laws.limits.product", [&]() -> std::optional<json> {
    for (const auto& a : small)
      for (const auto& b : small)
        if (auto w = verify_product(h, a, b, probes)) return w;
    return std::nullopt;
  });
  report.timed("laws.limits.equalizer", [&]() -> std::optional<json> {
    for (const auto& a : small)
      for (const auto& b : small) {
        const auto hs = homs(h, a, b);
        for (const auto& f : hs)
          for (const auto& g : hs)
            if (auto w = verify_equalizer(h, f, g, probes)) return w;
      }
    return std::nullopt;
  });
  report.timed("laws.limits.pullback", [&]() -> std::optional<json> {
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& c : small)
          for (const auto& f : homs(h, a, c))
            for (const auto& g : homs(h, b, c))
              if (auto w = verify_pullback(h, f, g, probes)) return w;
    return std::nullopt;
  });

  report.timed("laws.nabla.functor", [&]() -> std::optional<json> {
    for (std::size_t a = 0; a <= cfg.max_set; ++a)
      for (std::size_t b = 0; b <= cfg.max_set; ++b)
        for (std::size_t c = 0; c <= cfg.max_set; ++c)
          for (const auto& f : all_maps(FinSetObj::standard(a), FinSetObj::standard(b)))
            for (const auto& g : all_maps(FinSetObj::standard(b), FinSetObj::standard(c)))
              if (!(compose_morphisms(h, nabla_map(h, g), nabla_map(h, f)) == nabla_map(h, compose(g, f))))
                return json{{"f", to_json(f)}, {"g", to_json(g)}};
    return std::nullopt;
  });

  report.timed("laws.nabla.products", [&]() -> std::optional<json> {
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b) {
        const FinSetObj x = FinSetObj::standard(a), y = FinSetObj::standard(b);
        const FunRel cmp = pair(h, nabla_map(h, projection0(x, y)), nabla_map(h, projection1(x, y)));
        const FunRel inv{cmp.cod, cmp.dom, rel_inverse(cmp.rel)};
        if (!validate_funrel(h, inv.rel, inv.dom, inv.cod) ||
            !(compose_morphisms(h, inv, cmp) == identity(cmp.dom)) ||
            !(compose_morphisms(h, cmp, inv) == identity(cmp.cod)))
          return json{{"x", a}, {"y", b}};
      }
    return std::nullopt;
  });
  return report;
}

inline Report topos_laws(const RunConfig& cfg) {
  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  Report r = category_laws(h, cfg);
  r.merge(limit_laws(h, cfg));
  return r;
}

// ---------------------------------------------------------------------------

inline Report resolve(const RunConfig& cfg) {
  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  const auto objects = detail::objects_or_all(h, cfg);
  const auto probes = all_assemblies(h, cfg.probe_bound);
  Report report;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string prefix = "resolve." + detail::index_label(i) + ".";
    const Resolution res = sigma_resolution(h, objects[i]);
    report.pass(prefix + "object", json{{"object", to_json(h, objects[i])}, {"sigma", res.sigma.size()}});
    report.merge(check_resolution(h, res, probes), prefix);
    bool is_nabla = is_diagonal(h, objects[i]);
    for (std::size_t x = 0; x < objects[i].size(); ++x) is_nabla = is_nabla && objects[i].extent(x) == h.top();
    if (is_nabla)
      report.timed(prefix + "sigma.split", [&]() -> std::optional<json> {
        if (!lift(h, {res.cover}, {identity(objects[i])})) return json{{"section", nullptr}};
        return std::nullopt;
      });
  }
  return report;
}

// ---------------------------------------------------------------------------

inline std::optional<json> gamma_nabla_failure(const PerCategory& cat, const FinSetCategory& fs,
                                               const FunctorHandle<PerCategory, FinSetCategory>& gamma,
                                               std::size_t n, const Resolver<PerCategory>& resolver, bool via_sigma) {
  const HeytingAlgebra& h = cat.algebra();
  const FinSetObj y = FinSetObj::standard(n);
  const PerObject ny = nabla(h, y);
  const auto rep = via_sigma ? represent_from(cat, ny, *sigma_resolver(h)(ny), resolver) : represent(cat, ny, resolver);
  const auto k = kan_extend(fs, gamma, rep);
  // y ↦ the class of the point δ_y, through the representing cover.
  std::vector<std::size_t> graph(n);
  const PerObject one = cat.terminal();
  for (std::size_t i = 0; i < n; ++i) {
    Relation pt = Relation::filled(one.carrier(), y, h.bot());
    pt.at(0, i) = h.top();
    const FunRel point{one, ny, std::move(pt)};
    const auto lifted = cat.lift({rep.cover}, {point});
    if (!lifted) return json{{"size", n}, {"stage", "point"}, {"sigma", via_sigma}};
    const FinMap gp = gamma.on_morphism(*lifted);
    graph[i] = k.quotient.cover(gp(0));
  }
  const FinMap cmp{y, k.object(), std::move(graph)};
  if (!fs.is_iso(cmp)) return json{{"size", n}, {"value", k.object().size()}, {"sigma", via_sigma}};
  return std::nullopt;
}

inline Report kan(const RunConfig& cfg) {
  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  const PerCategory cat(h);
  const FinSetCategory fs;
  const auto objects = detail::objects_or_all(h, cfg);
  const auto resolver = per_resolver(h);
  const auto probes = all_assemblies(h, std::min<std::size_t>(cfg.probe_bound, 1));
  const auto units_over = all_assemblies(h, cfg.max_carrier);
  std::vector<Resolution> resolutions;
  for (const auto& a : objects) resolutions.push_back(sigma_resolution(h, a));

  Report report;
  auto run_for = [&](const auto& tgt, auto& g) {
    report.merge(validate_continuity(cat, tgt, g, probes), "kan.");
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const auto rep = represent(cat, objects[i], resolver);
      const auto k = kan_extend(tgt, g, rep);
      report.pass("kan.value." + detail::index_label(i),
                  json{{"object", to_json(h, objects[i])}, {"value", tgt.object_json(k.object())}});
    }
    report.timed("kan.unit", [&]() -> std::optional<json> {
      for (const auto& a : units_over) {
        for (bool via_sigma : {false, true}) {
          const auto rep = via_sigma ? represent_from(cat, a, *sigma_resolver(h)(a), resolver) : represent(cat, a, resolver);
          const auto k = kan_extend(tgt, g, rep);
          const auto u = unit_component(cat, tgt, g, a, rep, k);
          if (!u || !tgt.is_iso(*u)) return json{{"object", to_json(h, a)}, {"sigma", via_sigma}};
        }
      }
      return std::nullopt;
    });
    report.checks().back().detail = json{{"assemblies", units_over.size()}};
    report.timed("kan.map.functorial", [&]() -> std::optional<json> {
      const auto small = all_pers_up_to(h, 1);
      std::vector<Representation<PerCategory>> reps;
      std::vector<KanValue<std::decay_t<decltype(tgt)>>> vals;
      for (const auto& a : small) {
        reps.push_back(represent(cat, a, resolver));
        vals.push_back(kan_extend(tgt, g, reps.back()));
      }
      for (std::size_t a = 0; a < small.size(); ++a) {
        const auto id = kan_map(cat, tgt, g, reps[a], vals[a], reps[a], vals[a], cat.identity(small[a]));
        if (!id || !tgt.equal(*id, tgt.identity(vals[a].object()))) return json{{"law", "identity"}, {"object", a}};
        for (std::size_t b = 0; b < small.size(); ++b)
          for (const auto& f : cat.homs(small[a], small[b]))
            for (std::size_t c = 0; c < small.size(); ++c)
              for (const auto& k : cat.homs(small[b], small[c])) {
                const auto lhs = kan_map(cat, tgt, g, reps[a], vals[a], reps[c], vals[c], cat.compose(k, f));
                const auto mf = kan_map(cat, tgt, g, reps[a], vals[a], reps[b], vals[b], f);
                const auto mk = kan_map(cat, tgt, g, reps[b], vals[b], reps[c], vals[c], k);
                if (!lhs || !mf || !mk || !tgt.equal(*lhs, tgt.compose(*mk, *mf)))
                  return json{{"law", "composition"}, {"objects", {a, b, c}}};
              }
      }
      return std::nullopt;
    });
    report.merge(counit_check(cat, tgt, g, resolutions), "kan.");
  };

  if (cfg.functor == "global-sections") {
    auto gamma = global_sections(cat);
    run_for(fs, gamma);
    report.timed("kan.gamma_nabla", [&]() -> std::optional<json> {
      for (std::size_t n = 0; n <= 3; ++n)
        if (auto w = gamma_nabla_failure(cat, fs, gamma, n, resolver, false)) return w;
      for (std::size_t n = 0; n <= std::min<std::size_t>(cfg.max_carrier, 2); ++n)
        if (auto w = gamma_nabla_failure(cat, fs, gamma, n, resolver, true)) return w;
      return std::nullopt;
    });
  } else if (cfg.functor == "identity") {
    auto id = identity_functor();
    run_for(cat, id);
  } else {
    throw Error(ErrorCode::validation_error, "unknown functor '" + cfg.functor + "'",
                json{{"known", {"global-sections", "identity"}}});
  }
  return report;
}

// ---------------------------------------------------------------------------

template <ComputableCategory C>
Report quotient_checks(const C& cat, const PseqSpan<C>& span) {
  Report report;
  const auto v = validate_pseudoeq(cat, span);
  if (!v) {
    report.fail("quotient.pseudoeq", json{{"clause", v.failed_clause}});
    return report;
  }
  const auto& p = *v.value;
  report.pass("quotient.pseudoeq", json{{"r", cat.to_json(p.r)}, {"s", cat.to_json(p.s)}});
  const auto q = quotient(cat, p);
  report.pass("quotient.object", json{{"object", cat.object_json(q.object)}, {"cover", cat.to_json(q.cover)}});
  report.timed("quotient.cover.effective", [&]() { return effective_cover_failure(cat, q.cover); });
  report.timed("quotient.kernel_is_congruence", [&]() -> std::optional<json> {
    const auto cong = cat.image(cat.pair(p.d0(), p.d1())).mono;
    const auto kp = cat.pullback(q.cover, q.cover);
    const auto ker = cat.image(cat.pair(kp.p0, kp.p1)).mono;
    if (!cat.factor_through_mono(cong, ker) || !cat.factor_through_mono(ker, cong)) return json{{"stage", "compare"}};
    return std::nullopt;
  });
  return report;
}

inline Report quotient(const RunConfig& cfg) {
  if (!cfg.pseq) throw Error(ErrorCode::validation_error, "quotient needs --pseq");
  auto [j, src] = io::read_file(*cfg.pseq);
  if (cfg.category == "finset") return quotient_checks(FinSetCategory{}, io::parse_finset_pseq(j, src));
  if (cfg.category == "per") {
    const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
    return quotient_checks(PerCategory(h), io::parse_per_pseq(h, j, src));
  }
  if (cfg.category == "fam")
    throw Error(ErrorCode::not_exact_instance, "quotients need an exact instance", json{{"category", "fam"}});
  throw Error(ErrorCode::validation_error, "unknown category '" + cfg.category + "'");
}

// ---------------------------------------------------------------------------

inline Report ortho(const RunConfig& cfg) {
  Report report;
  const FinSetCategory fs;
  std::vector<FinMap> surj, inj;
  for (std::size_t a = 0; a <= cfg.max_set; ++a)
    for (std::size_t b = 0; b <= cfg.max_set; ++b)
      for (auto& f : all_maps(FinSetObj::standard(a), FinSetObj::standard(b))) {
        if (is_surjective(f)) surj.push_back(f);
        if (is_injective(f)) inj.push_back(f);
      }

  std::size_t pairs = 0, squares = 0;
  report.timed("ortho.finset.surjection_injection", [&]() -> std::optional<json> {
    for (const auto& e : surj)
      for (const auto& m : inj) {
        ++pairs;
        const auto v = orthogonality_test(fs, e, m);
        squares += v.squares;
        if (!v) return json{{"e", to_json(e)}, {"m", to_json(m)}, {"square", v.witness}};
      }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"pairs", pairs}, {"squares", squares}};

  // Passes when some pair of injections fails, recording that square.
  {
    json square = nullptr;
    for (std::size_t i = 0; i < inj.size() && square.is_null(); ++i)
      for (const auto& m : inj)
        if (const auto v = orthogonality_test(fs, inj[i], m); !v) {
          square = json{{"e", to_json(inj[i])}, {"m", to_json(m)}, {"square", v.witness}};
          break;
        }
    if (square.is_null())
      report.fail("ortho.finset.injection_injection_counterexample", json{{"reason", "every pair was orthogonal"}});
    else
      report.pass("ortho.finset.injection_injection_counterexample", std::move(square));
  }

  report.timed("ortho.finset.open_monos", [&]() -> std::optional<json> {
    for (const auto& m : inj)
      if (const auto v = open_mono_test(fs, m, surj); !v) return json{{"m", to_json(m)}, {"square", v.witness}};
    return std::nullopt;
  });

  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  const PerCategory cat(h);
  report.timed("ortho.per.cover_mono", [&]() -> std::optional<json> {
    const auto small = all_pers_up_to(h, 1);
    std::vector<FunRel> covers, monos;
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& f : homs(h, a, b)) {
          if (is_cover(h, f)) covers.push_back(f);
          if (is_mono(h, f)) monos.push_back(f);
        }
    for (const auto& e : covers)
      for (const auto& m : monos)
        if (const auto v = orthogonality_test(cat, e, m); !v)
          return json{{"e", to_json(h, e.rel)}, {"m", to_json(h, m.rel)}, {"square", v.witness}};
    return std::nullopt;
  });
  return report;
}

inline Report sub_nabla_iso(const RunConfig& cfg) {
  const HeytingAlgebra h = io::resolve_algebra(cfg.heyting);
  Report report;
  for (std::size_t n = 0; n <= cfg.max_set; ++n)
    report.merge(subobject_tripos_iso(h, FinSetObj::standard(n), std::max(n, cfg.max_carrier)),
                 "sub_nabla." + std::to_string(n) + ".");
  for (auto& c : report.checks())
    if (c.id.rfind("sub_nabla.", 0) == 0) {
      // "sub_nabla.N.sub_nabla.x" → "sub_nabla.N.x"
      const auto pos = c.id.find(".sub_nabla.");
      if (pos != std::string::npos) c.id.erase(pos, std::string(".sub_nabla").size());
    }
  return report;
}

// ---------------------------------------------------------------------------

inline Report run(const RunConfig& cfg) {
  cfg.validate();
  Report r;
  if (cfg.command == "heyting-check")
    r = heyting_check(cfg);
  else if (cfg.command == "tripos-verify")
    r = tripos_verify(cfg);
  else if (cfg.command == "topos-laws" || cfg.command == "laws")
    r = topos_laws(cfg);
  else if (cfg.command == "resolve")
    r = resolve(cfg);
  else if (cfg.command == "kan")
    r = kan(cfg);
  else if (cfg.command == "quotient")
    r = quotient(cfg);
  else if (cfg.command == "ortho")
    r = ortho(cfg);
  else if (cfg.command == "sub-nabla-iso")
    r = sub_nabla_iso(cfg);
  else
    throw Error(ErrorCode::validation_error, "unknown command '" + cfg.command + "'");
  r.sort_by_id();
  return r;
}

inline json report_json(const RunConfig& cfg, const Report& r, bool with_timing = true) {
  return json{{"tool", tool_name}, {"version", tool_version}, {"config", cfg.echo()}, {"checks", r.to_json(with_timing)}};
}

}  // namespace topos::suites
