#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topos/category.hpp"
#include "topos/per_topos.hpp"
#include "topos/report.hpp"
#include "topos/tripos.hpp"

namespace topos {

// A cover Σ → A out of an assembly, together with the mono Σ ↪ ∇πX that
// witnesses Σ being an assembly.
struct Resolution {
  PerObject target;
  PerObject sigma;
  FunRel embed;
  FunRel cover;
};

// Diagonal PER with the given extents.
inline PerObject diagonal_per(const HeytingAlgebra& h, const FinSetObj& carrier,
                              const std::vector<Elem>& extent) {
  Relation e = Relation::filled(carrier, carrier, h.bot());
  for (std::size_t i = 0; i < carrier.size(); ++i) e.at(i, i) = extent[i];
  return PerObject{std::move(e)};
}

// r(ξ, x) = e(x, x) ∧ ⋀_y (ξ(y) ↔ e(x, y)) and Σ(ξ) = ⋁_x r(ξ, x).
inline Resolution sigma_resolution(const HeytingAlgebra& h, const PerObject& a,
                                   std::size_t bound = default_power_bound) {
  const PowerObject po = power_object(h, a.carrier(), bound);
  const std::size_t np = po.size(), n = a.size();
  Relation r = Relation::filled(po.carrier, a.carrier(), h.bot());
  std::vector<Elem> sigma(np, h.bot());
  for (std::size_t xi = 0; xi < np; ++xi) {
    const Predicate p = predicate_at(h, a.carrier(), xi);
    for (std::size_t x = 0; x < n; ++x) {
      Elem v = a.extent(x);
      for (std::size_t y = 0; y < n && v != h.bot(); ++y) v = h.meet(v, h.iff(p(y), a.e(x, y)));
      r.at(xi, x) = v;
      sigma[xi] = h.join(sigma[xi], v);
    }
  }
  const PerObject s = diagonal_per(h, po.carrier, sigma);
  Relation embed = s.e;
  return Resolution{a, s, make_funrel(h, s, nabla(h, po.carrier), std::move(embed)),
                    make_funrel(h, s, a, std::move(r))};
}

// ---------------------------------------------------------------------------
// Assemblies: (X, α) with e(x, x) = α(x) and ⊥ off the diagonal.

struct Assembly {
  FinSetObj carrier;
  Predicate alpha;
};

inline PerObject assembly_object(const HeytingAlgebra& h, const Assembly& a) {
  return diagonal_per(h, a.carrier, a.alpha.values);
}

inline FunRel assembly_inclusion(const HeytingAlgebra& h, const Assembly& a) {
  const PerObject obj = assembly_object(h, a);
  return FunRel{obj, nabla(h, a.carrier), obj.e};
}

// All assemblies on the standard sets of size ≤ max_carrier.
inline std::vector<PerObject> all_assemblies(const HeytingAlgebra& h, std::size_t max_carrier) {
  std::vector<PerObject> out;
  for (std::size_t n = 0; n <= max_carrier; ++n) {
    const FinSetObj x = FinSetObj::standard(n);
    for (const auto& p : all_predicates(h, x)) out.push_back(diagonal_per(h, x, p.values));
  }
  return out;
}

// ---------------------------------------------------------------------------

// Clause 1 for a cover c : A → B in an exact instance: the quotient of A by
// the image of its kernel pair compares isomorphically to B.
template <ComputableCategory C>
std::optional<json> effective_cover_failure(const C& cat, const typename C::Morphism& c) {
  if (!cat.is_cover(c)) return json{{"stage", "cover"}};
  const auto kp = cat.pullback(c, c);
  const auto img = cat.image(cat.pair(kp.p0, kp.p1));
  const auto q = cat.coequalize_congruence(img.mono, cat.dom(c));
  const auto u = cat.factor_through_cover(q.cover, c);
  if (!u) return json{{"stage", "comparison"}};
  if (!cat.is_iso(*u)) return json{{"stage", "iso"}, {"comparison", cat.to_json(*u)}};
  return std::nullopt;
}

// Rows of `f` as a predicate-name map y ↦ (x ↦ f(y, x)).
inline FinMap name_rows(const HeytingAlgebra& h, const FunRel& f, const FinSetObj& names) {
  std::vector<std::size_t> g(f.dom.size());
  for (std::size_t y = 0; y < g.size(); ++y) {
    std::size_t idx = 0;
    for (std::size_t x = 0; x < f.cod.size(); ++x) idx = idx * h.size() + f.rel(y, x);
    g[y] = idx;
  }
  return FinMap{f.dom.carrier(), names, std::move(g)};
}

struct ResolutionOptions {
  std::size_t probe_bound = 2;
  EnumerationCaps caps{};
};

inline Report check_resolution(const HeytingAlgebra& h, const Resolution& res,
                               const std::vector<PerObject>& probes, const EnumerationCaps& caps = {}) {
  Report report;
  const PerCategory cat(h, caps);

  report.timed("resolution.embed.mono", [&]() -> std::optional<json> {
    if (auto v = is_mono(h, res.embed); !v) return v.to_json(res.embed.dom.e);
    return std::nullopt;
  });
  report.timed("resolution.clause1.cover", [&]() -> std::optional<json> {
    if (auto v = is_cover(h, res.cover); !v) return v.to_json(res.cover.cod.e);
    return std::nullopt;
  });
  report.timed("resolution.clause1.coequalizer", [&]() { return effective_cover_failure(cat, res.cover); });

  std::size_t maps = 0, assemblies = 0;
  report.timed("resolution.clause2.lift", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (!is_diagonal(h, probes[i])) continue;
      ++assemblies;
      for (const auto& f : homs(h, probes[i], res.target, caps)) {
        ++maps;
        if (!lift(h, {res.cover}, {f}, caps))
          return json{{"probe", to_json(h, probes[i])}, {"map", to_json(h, f.rel)}};
      }
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"assemblies", assemblies}, {"maps", maps}};

  // Through the embedding: g names the rows of f, and the factor of
  // ∇g ∘ incl through the embedding is the lift.
  report.timed("resolution.clause2.comma", [&]() -> std::optional<json> {
    const FinSetObj& names = res.embed.cod.carrier();
    if (names.size() != count_maps(res.target.size(), h.size(), names.size())) return json{{"stage", "embed"}};
    for (const auto& y : probes) {
      if (!is_diagonal(h, y)) continue;
      const FunRel incl{y, nabla(h, y.carrier()), y.e};
      for (const auto& f : homs(h, y, res.target, caps)) {
        const FunRel ng = compose_morphisms(h, nabla_map(h, name_rows(h, f, names)), incl);
        const auto k = factor_through_mono(h, res.embed, ng);
        if (!k) return json{{"stage", "factor"}, {"probe", to_json(h, y)}, {"map", to_json(h, f.rel)}};
        if (!(compose_morphisms(h, res.cover, *k) == f))
          return json{{"stage", "commute"}, {"probe", to_json(h, y)}, {"map", to_json(h, f.rel)}};
      }
    }
    return std::nullopt;
  });
  return report;
}

// A mono A ↪ ∇Z for the first Z among `targets` that admits one.
struct AssemblyWitness {
  std::size_t target_index;
  FunRel mono;
};

inline std::optional<AssemblyWitness> assembly_test(const HeytingAlgebra& h, const PerObject& a,
                                                    const std::vector<FinSetObj>& targets,
                                                    const EnumerationCaps& caps = {}) {
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (auto& f : homs(h, a, nabla(h, targets[i]), caps))
      if (is_mono(h, f)) return AssemblyWitness{i, std::move(f)};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Orthogonality e ⊥ m: every commuting square m∘f = g∘e has exactly one
// diagonal h with h∘e = f and m∘h = g.

struct OrthogonalityVerdict {
  bool ok = true;
  std::size_t squares = 0;
  json witness = nullptr;

  explicit operator bool() const { return ok; }
};

template <ComputableCategory C>
OrthogonalityVerdict orthogonality_test(const C& cat, const typename C::Morphism& e,
                                        const typename C::Morphism& m) {
  OrthogonalityVerdict v;
  const auto a = cat.dom(e), b = cat.cod(e), c = cat.dom(m), d = cat.cod(m);
  const auto diagonals = cat.homs(b, c);
  const auto gs = cat.homs(b, d);
  for (const auto& f : cat.homs(a, c)) {
    const auto mf = cat.compose(m, f);
    for (const auto& g : gs) {
      if (!cat.equal(mf, cat.compose(g, e))) continue;
      ++v.squares;
      std::size_t count = 0;
      for (const auto& k : diagonals)
        if (cat.equal(cat.compose(k, e), f) && cat.equal(cat.compose(m, k), g)) ++count;
      if (count != 1) {
        v.ok = false;
        v.witness = json{{"f", cat.to_json(f)}, {"g", cat.to_json(g)}, {"diagonals", count}};
        return v;
      }
    }
  }
  return v;
}

// Bounded verdict: m is a mono orthogonal to every probe epi.
template <ComputableCategory C>
OrthogonalityVerdict open_mono_test(const C& cat, const typename C::Morphism& m,
                                    const std::vector<typename C::Morphism>& epis) {
  if (!cat.is_mono(m)) return {false, 0, json{{"reason", "not_mono"}, {"map", cat.to_json(m)}}};
  OrthogonalityVerdict total;
  for (std::size_t i = 0; i < epis.size(); ++i) {
    auto v = orthogonality_test(cat, epis[i], m);
    total.squares += v.squares;
    if (!v) {
      v.witness["epi"] = i;
      v.squares = total.squares;
      return v;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Sub(∇X) against T X: each α maps to the inclusion of (X, α).

inline Report subobject_tripos_iso(const HeytingAlgebra& h, const FinSetObj& x, std::size_t bound,
                                   const EnumerationCaps& caps = {}) {
  Report report;
  const PerObject nx = nabla(h, x);
  std::vector<FunRel> classes;
  std::size_t monos = 0;
  report.timed("sub_nabla.enumerate", [&]() -> std::optional<json> {
    for (const auto& s : all_pers_up_to(h, bound))
      for (auto& m : homs(h, s, nx, caps)) {
        if (!is_mono(h, m)) continue;
        ++monos;
        bool seen = false;
        for (const auto& c : classes)
          if (same_subobject(h, c, m)) {
            seen = true;
            break;
          }
        if (!seen) classes.push_back(std::move(m));
      }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"monos", monos}, {"subobjects", classes.size()}};

  const auto preds = all_predicates(h, x);
  std::vector<FunRel> incl;
  for (const auto& p : preds) incl.push_back(assembly_inclusion(h, Assembly{x, p}));
  std::vector<std::size_t> cls(preds.size(), classes.size());
  report.timed("sub_nabla.bijective", [&]() -> std::optional<json> {
    std::vector<char> hit(classes.size(), 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      for (std::size_t c = 0; c < classes.size(); ++c)
        if (same_subobject(h, incl[i], classes[c])) {
          cls[i] = c;
          break;
        }
      if (cls[i] == classes.size()) return json{{"unmatched", to_json(h, preds[i])}};
      if (hit[cls[i]]) return json{{"collision", to_json(h, preds[i])}};
      hit[cls[i]] = 1;
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (!hit[c]) return json{{"missed", to_json(h, classes[c].dom)}};
    return std::nullopt;
  });
  report.checks().back().detail = json{{"predicates", preds.size()}, {"subobjects", classes.size()}};

  report.timed("sub_nabla.order", [&]() -> std::optional<json> {
    for (std::size_t i = 0; i < preds.size(); ++i)
      for (std::size_t j = 0; j < preds.size(); ++j)
        if (predicate_leq(h, preds[i], preds[j]) != factor_through_mono(h, incl[j], incl[i]).has_value())
          return json{{"alpha", to_json(h, preds[i])}, {"beta", to_json(h, preds[j])}};
    return std::nullopt;
  });

  std::size_t squares = 0;
  report.timed("sub_nabla.naturality", [&]() -> std::optional<json> {
    for (std::size_t n = 0; n <= x.size(); ++n) {
      const FinSetObj y = FinSetObj::standard(n);
      for (const auto& f : all_maps(y, x))
        for (std::size_t i = 0; i < preds.size(); ++i) {
          ++squares;
          const FunRel pulled = pullback(h, incl[i], nabla_map(h, f)).p1;
          const FunRel expected = assembly_inclusion(h, Assembly{y, reindex(f, preds[i])});
          if (!same_subobject(h, pulled, expected))
            return json{{"map", to_json(f)}, {"alpha", to_json(h, preds[i])}};
        }
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"squares", squares}};
  return report;
}

}  // namespace topos
