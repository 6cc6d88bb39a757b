#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topos/category.hpp"
#include "topos/per_topos.hpp"
#include "topos/report.hpp"
#include "topos/resolvent.hpp"

namespace topos {

template <ComputableCategory C>
struct PseqSpan {
  typename C::Object x1;
  typename C::Object x0;
  typename C::Morphism d0;
  typename C::Morphism d1;
};

// A span with reflexivity, symmetry and transitivity witnesses.
template <ComputableCategory C>
struct PseudoEquivalence {
  PseqSpan<C> span;
  typename C::Morphism r;  // X0 → X1
  typename C::Morphism s;  // X1 → X1
  typename C::Morphism t;  // X1 ×_{X0} X1 → X1

  const typename C::Object& x0() const { return span.x0; }
  const typename C::Object& x1() const { return span.x1; }
  const typename C::Morphism& d0() const { return span.d0; }
  const typename C::Morphism& d1() const { return span.d1; }
};

template <ComputableCategory C>
struct PseqVerdict {
  std::optional<PseudoEquivalence<C>> value;
  std::string failed_clause;  // "shape", "r", "s" or "t"

  explicit operator bool() const { return value.has_value(); }
};

// First-found witnesses: r lifts (id, id), s lifts (d1, d0) and t lifts
// (d0∘π0, d1∘π1) from the pullback of d1 and d0.
template <ComputableCategory C>
PseqVerdict<C> validate_pseudoeq(const C& cat, const PseqSpan<C>& p) {
  const bool shaped = cat.same_object(cat.dom(p.d0), p.x1) && cat.same_object(cat.dom(p.d1), p.x1) &&
                      cat.same_object(cat.cod(p.d0), p.x0) && cat.same_object(cat.cod(p.d1), p.x0);
  if (!shaped) return {std::nullopt, "shape"};
  const std::vector<typename C::Morphism> legs{p.d0, p.d1};
  const auto id = cat.identity(p.x0);
  auto r = cat.lift(legs, {id, id});
  if (!r) return {std::nullopt, "r"};
  auto s = cat.lift(legs, {p.d1, p.d0});
  if (!s) return {std::nullopt, "s"};
  const auto pb = cat.pullback(p.d1, p.d0);
  auto t = cat.lift(legs, {cat.compose(p.d0, pb.p0), cat.compose(p.d1, pb.p1)});
  if (!t) return {std::nullopt, "t"};
  return {PseudoEquivalence<C>{p, std::move(*r), std::move(*s), std::move(*t)}, {}};
}

template <ComputableCategory C>
PseudoEquivalence<C> require_pseudoeq(const C& cat, const PseqSpan<C>& p) {
  auto v = validate_pseudoeq(cat, p);
  if (!v)
    throw Error(ErrorCode::validation_error, "span is not a pseudoequivalence",
                json{{"clause", v.failed_clause}});
  return std::move(*v.value);
}

// The image of ⟨d0, d1⟩ in X0 × X0 is a congruence; coequalize it.
template <ComputableCategory C>
QuotientOf<typename C::Object, typename C::Morphism> quotient(const C& cat, const PseudoEquivalence<C>& p) {
  if constexpr (!C::is_exact) {
    throw Error(ErrorCode::not_exact_instance, "quotients need an exact instance",
                json{{"category", cat.name()}});
  } else {
    const auto img = cat.image(cat.pair(p.d0(), p.d1()));
    return cat.coequalize_congruence(img.mono, p.x0());
  }
}

template <ComputableCategory C>
struct PseqMorphism {
  typename C::Morphism f0;  // X0 → Y0
  typename C::Morphism f1;  // X1 → Y1
};

template <ComputableCategory C>
bool is_pseq_morphism(const C& cat, const PseudoEquivalence<C>& p, const PseudoEquivalence<C>& q,
                      const PseqMorphism<C>& m) {
  return cat.equal(cat.compose(q.d0(), m.f1), cat.compose(m.f0, p.d0())) &&
         cat.equal(cat.compose(q.d1(), m.f1), cat.compose(m.f0, p.d1()));
}

// η : X0 → Y1 with d'0∘η = f0 and d'1∘η = g0.
template <ComputableCategory C>
std::optional<typename C::Morphism> pseq_map_equivalent(const C& cat, const PseudoEquivalence<C>& q,
                                                        const PseqMorphism<C>& m1,
                                                        const PseqMorphism<C>& m2) {
  return cat.lift({q.d0(), q.d1()}, {m1.f0, m2.f0});
}

// The map between quotients induced by a morphism of pseudoequivalences.
template <ComputableCategory C>
std::optional<typename C::Morphism> induced_quotient_map(
    const C& cat, const QuotientOf<typename C::Object, typename C::Morphism>& qp,
    const QuotientOf<typename C::Object, typename C::Morphism>& qq, const PseqMorphism<C>& m) {
  return cat.factor_through_cover(qp.cover, cat.compose(qq.cover, m.f0));
}

// ---------------------------------------------------------------------------
// Representation of an object by a pseudoequivalence over resolvable objects.

template <ComputableCategory C>
struct CoverOf {
  typename C::Object source;
  typename C::Morphism cover;  // source → object
};

template <ComputableCategory C>
using Resolver = std::function<std::optional<CoverOf<C>>(const typename C::Object&)>;

template <ComputableCategory C>
struct Representation {
  PseudoEquivalence<C> pseq;
  typename C::Morphism cover;  // X0 → X
  QuotientOf<typename C::Object, typename C::Morphism> quotient;
  std::optional<typename C::Morphism> comparison;  // quotient → X

  bool comparison_is_iso(const C& cat) const { return comparison && cat.is_iso(*comparison); }
};

template <ComputableCategory C>
Representation<C> represent_from(const C& cat, const typename C::Object& x, const CoverOf<C>& res,
                                 const Resolver<C>& resolver) {
  PseqSpan<C> span;
  if (cat.equal(res.cover, cat.identity(x))) {
    span = {x, x, res.cover, res.cover};
  } else {
    const auto kp = cat.pullback(res.cover, res.cover);
    const auto w = resolver(kp.apex);
    if (!w) throw Error(ErrorCode::resolution_unavailable, "kernel pair has no resolution");
    span = {w->source, res.source, cat.compose(kp.p0, w->cover), cat.compose(kp.p1, w->cover)};
  }
  auto v = validate_pseudoeq(cat, span);
  if (!v)
    throw Error(ErrorCode::no_representation, "representing span is not a pseudoequivalence",
                json{{"clause", v.failed_clause}});
  auto q = quotient(cat, *v.value);
  auto u = cat.factor_through_cover(q.cover, res.cover);
  return Representation<C>{std::move(*v.value), res.cover, std::move(q), std::move(u)};
}

template <ComputableCategory C>
Representation<C> represent(const C& cat, const typename C::Object& x, const Resolver<C>& resolver) {
  const auto res = resolver(x);
  if (!res) throw Error(ErrorCode::resolution_unavailable, "object has no resolution");
  return represent_from(cat, x, *res, resolver);
}

// In FinSet every object resolves itself.
inline Resolver<FinSetCategory> finset_resolver() {
  return [](const FinSetObj& x) -> std::optional<CoverOf<FinSetCategory>> {
    return CoverOf<FinSetCategory>{x, identity_map(x)};
  };
}

// Assemblies resolve by themselves (after dropping ⊥-extent elements);
// anything else by Σ.
inline Resolver<PerCategory> per_resolver(const HeytingAlgebra& h, std::size_t power_bound = default_power_bound) {
  return [h, power_bound](const PerObject& a) -> std::optional<CoverOf<PerCategory>> {
    if (is_diagonal(h, a)) {
      Trimmed t = trim(h, a);
      return CoverOf<PerCategory>{t.object, t.inclusion};
    }
    try {
      Resolution r = sigma_resolution(h, a, power_bound);
      return CoverOf<PerCategory>{r.sigma, r.cover};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::bound_exceeded) return std::nullopt;
      throw;
    }
  };
}

// Always Σ, even for assemblies.
inline Resolver<PerCategory> sigma_resolver(const HeytingAlgebra& h,
                                            std::size_t power_bound = default_power_bound) {
  return [h, power_bound](const PerObject& a) -> std::optional<CoverOf<PerCategory>> {
    Resolution r = sigma_resolution(h, a, power_bound);
    return CoverOf<PerCategory>{r.sigma, r.cover};
  };
}

// ---------------------------------------------------------------------------
// Functors and the left Kan extension along the resolvent embedding.

template <ComputableCategory S, ComputableCategory T>
struct FunctorHandle {
  std::string name;
  std::function<typename T::Object(const typename S::Object&)> on_object;
  std::function<typename T::Morphism(const typename S::Morphism&)> on_morphism;
  std::optional<bool> finitely_continuous;  // set by validate_continuity
};

// Preservation of the terminal object, binary products and equalizers, plus
// the functor laws, over the given probe objects.
template <ComputableCategory S, ComputableCategory T>
Report validate_continuity(const S& src, const T& tgt, FunctorHandle<S, T>& g,
                           const std::vector<typename S::Object>& probes) {
  Report report;
  report.timed("continuity.functor_laws", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (!tgt.equal(g.on_morphism(src.identity(probes[i])), tgt.identity(g.on_object(probes[i]))))
        return json{{"law", "identity"}, {"probe", i}};
      for (std::size_t j = 0; j < probes.size(); ++j)
        for (const auto& f : src.homs(probes[i], probes[j]))
          for (std::size_t k = 0; k < probes.size(); ++k)
            for (const auto& h : src.homs(probes[j], probes[k]))
              if (!tgt.equal(g.on_morphism(src.compose(h, f)), tgt.compose(g.on_morphism(h), g.on_morphism(f))))
                return json{{"law", "composition"}, {"probes", {i, j, k}}};
    }
    return std::nullopt;
  });
  report.timed("continuity.terminal", [&]() -> std::optional<json> {
    if (!tgt.is_iso(tgt.to_terminal(g.on_object(src.terminal())))) return json{{"image", tgt.object_json(g.on_object(src.terminal()))}};
    return std::nullopt;
  });
  report.timed("continuity.products", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = 0; j < probes.size(); ++j) {
        const auto p = src.product(probes[i], probes[j]);
        const auto cmp = tgt.pair(g.on_morphism(p.p0), g.on_morphism(p.p1));
        if (!tgt.is_iso(cmp)) return json{{"probes", {i, j}}};
      }
    return std::nullopt;
  });
  report.timed("continuity.equalizers", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = 0; j < probes.size(); ++j) {
        const auto hs = src.homs(probes[i], probes[j]);
        for (std::size_t a = 0; a < hs.size(); ++a)
          for (std::size_t b = a + 1; b < hs.size(); ++b) {
            const auto m = src.equalizer(hs[a], hs[b]);
            const auto mt = tgt.equalizer(g.on_morphism(hs[a]), g.on_morphism(hs[b]));
            const auto u = tgt.factor_through_mono(mt, g.on_morphism(m));
            if (!u || !tgt.is_iso(*u)) return json{{"probes", {i, j}}, {"pair", {a, b}}};
          }
      }
    return std::nullopt;
  });
  g.finitely_continuous = report.ok();
  return report;
}

template <ComputableCategory S, ComputableCategory T>
void require_continuous(const FunctorHandle<S, T>& g) {
  if (!g.finitely_continuous || !*g.finitely_continuous)
    throw Error(ErrorCode::not_finitely_continuous,
                g.finitely_continuous ? "functor failed continuity validation" : "functor continuity not validated",
                json{{"functor", g.name}});
}

template <ComputableCategory S, ComputableCategory T>
PseqSpan<T> image_span(const FunctorHandle<S, T>& g, const PseudoEquivalence<S>& p) {
  return {g.on_object(p.x1()), g.on_object(p.x0()), g.on_morphism(p.d0()), g.on_morphism(p.d1())};
}

template <ComputableCategory T>
struct KanValue {
  PseudoEquivalence<T> image;
  QuotientOf<typename T::Object, typename T::Morphism> quotient;
  const typename T::Object& object() const { return quotient.object; }
};

// F_!(G)(X) = G X0 / G X1 for a representation of X.
template <ComputableCategory S, ComputableCategory T>
KanValue<T> kan_extend(const T& tgt, const FunctorHandle<S, T>& g, const Representation<S>& rep) {
  require_continuous(g);
  auto v = validate_pseudoeq(tgt, image_span(g, rep.pseq));
  if (!v)
    throw Error(ErrorCode::no_representation, "image span is not a pseudoequivalence",
                json{{"functor", g.name}, {"clause", v.failed_clause}});
  auto q = quotient(tgt, *v.value);
  return KanValue<T>{std::move(*v.value), std::move(q)};
}

// The action of F_!(G) on f : X → Y through the representations.
template <ComputableCategory S, ComputableCategory T>
std::optional<typename T::Morphism> kan_map(const S& src, const T& tgt, const FunctorHandle<S, T>& g,
                                            const Representation<S>& rx, const KanValue<T>& kx,
                                            const Representation<S>& ry, const KanValue<T>& ky,
                                            const typename S::Morphism& f) {
  const auto f0 = src.lift({ry.cover}, {src.compose(f, rx.cover)});
  if (!f0) return std::nullopt;
  const auto f1 = src.lift({ry.pseq.d0(), ry.pseq.d1()},
                           {src.compose(*f0, rx.pseq.d0()), src.compose(*f0, rx.pseq.d1())});
  if (!f1) return std::nullopt;
  const PseqMorphism<T> gm{g.on_morphism(*f0), g.on_morphism(*f1)};
  if (!is_pseq_morphism(tgt, kx.image, ky.image, gm)) return std::nullopt;
  return induced_quotient_map(tgt, kx.quotient, ky.quotient, gm);
}

// G A → F_!(G)(A) for A in the source, through a lift of id_A along the
// representing cover.
template <ComputableCategory S, ComputableCategory T>
std::optional<typename T::Morphism> unit_component(const S& src, const T& tgt, const FunctorHandle<S, T>& g,
                                                   const typename S::Object& a, const Representation<S>& rep,
                                                   const KanValue<T>& k) {
  const auto f0 = src.lift({rep.cover}, {src.identity(a)});
  if (!f0) return std::nullopt;
  return tgt.compose(k.quotient.cover, g.on_morphism(*f0));
}

// ---------------------------------------------------------------------------
// Functors on B[T]

// Hom(P, −) into FinSet; elements are named by their matrices.
inline FunctorHandle<PerCategory, FinSetCategory> hom_functor(const PerCategory& cat, const PerObject& p,
                                                               std::string name) {
  auto label = [cat](const FunRel& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.rel.m.size(); ++i) {
      if (i) out += ",";
      out += cat.algebra().name(s.rel.m[i]);
    }
    return out + "]";
  };
  auto obj = [cat, p, label](const PerObject& a) {
    std::vector<std::string> names;
    for (const auto& s : cat.homs(p, a)) names.push_back(label(s));
    return FinSetObj(std::move(names));
  };
  auto mor = [cat, p, obj](const FunRel& f) {
    const auto src = cat.homs(p, f.dom);
    const auto tgt = cat.homs(p, f.cod);
    std::vector<std::size_t> graph(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const FunRel img = cat.compose(f, src[i]);
      std::size_t j = 0;
      while (j < tgt.size() && !(tgt[j] == img)) ++j;
      if (j == tgt.size()) throw Error(ErrorCode::invalid_result, "composite section not enumerated");
      graph[i] = j;
    }
    return FinMap{obj(f.dom), obj(f.cod), std::move(graph)};
  };
  return {std::move(name), obj, mor, std::nullopt};
}

// Γ = Hom(1, −).
inline FunctorHandle<PerCategory, FinSetCategory> global_sections(const PerCategory& cat) {
  return hom_functor(cat, cat.terminal(), "global-sections");
}

inline FunctorHandle<PerCategory, PerCategory> identity_functor() {
  return {"identity", [](const PerObject& a) { return a; }, [](const FunRel& f) { return f; }, std::nullopt};
}

// For each resolution c : Σ → A, whether H c is a cover and whether the
// comparison F_!(HF)(A) → H A is an iso; the two must agree.
template <ComputableCategory T>
Report counit_check(const PerCategory& cat, const T& tgt, const FunctorHandle<PerCategory, T>& hf,
                    const std::vector<Resolution>& resolutions) {
  Report report;
  const HeytingAlgebra& h = cat.algebra();
  const Resolver<PerCategory> resolver = per_resolver(h);
  json instances = json::array();
  report.timed("counit.biconditional", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      const Resolution& res = resolutions[i];
      const bool epi = tgt.is_cover(hf.on_morphism(res.cover));
      const auto rep = represent_from(cat, res.target, CoverOf<PerCategory>{res.sigma, res.cover}, resolver);
      const auto k = kan_extend(tgt, hf, rep);
      const auto u = tgt.factor_through_cover(k.quotient.cover, hf.on_morphism(res.cover));
      const bool iso = u && tgt.is_iso(*u);
      instances.push_back(json{{"target", to_json(h, res.target)}, {"cover_preserved", epi}, {"counit_iso", iso}});
      if (epi != iso) return json{{"instance", i}, {"cover_preserved", epi}, {"counit_iso", iso}};
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"functor", hf.name}, {"instances", instances}};
  return report;
}

}  // namespace topos
