#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topos/finset.hpp"
#include "topos/heyting.hpp"
#include "topos/per_topos.hpp"

namespace topos {

template <class Obj, class Mor>
struct SpanOf {
  Obj apex;
  Mor p0;
  Mor p1;
};

template <class Mor>
struct ImageOf {
  Mor cover;
  Mor mono;
};

template <class Obj, class Mor>
struct QuotientOf {
  Obj object;
  Mor cover;
};

// A category with finite limits, images and finite hom-sets that the
// generic constructions can drive. Exact instances also coequalize
// congruences.
template <class C>
concept ComputableCategory = requires(const C& c, const typename C::Object& a,
                                      const typename C::Morphism& f,
                                      const std::vector<typename C::Morphism>& fs) {
  typename C::Object;
  typename C::Morphism;
  { C::is_exact } -> std::convertible_to<bool>;
  { c.name() } -> std::convertible_to<std::string>;
  { c.dom(f) } -> std::convertible_to<typename C::Object>;
  { c.cod(f) } -> std::convertible_to<typename C::Object>;
  { c.identity(a) } -> std::same_as<typename C::Morphism>;
  { c.compose(f, f) } -> std::same_as<typename C::Morphism>;
  { c.equal(f, f) } -> std::same_as<bool>;
  { c.same_object(a, a) } -> std::same_as<bool>;
  { c.homs(a, a) } -> std::same_as<std::vector<typename C::Morphism>>;
  { c.terminal() } -> std::same_as<typename C::Object>;
  { c.to_terminal(a) } -> std::same_as<typename C::Morphism>;
  { c.product(a, a) } -> std::same_as<SpanOf<typename C::Object, typename C::Morphism>>;
  { c.pair(f, f) } -> std::same_as<typename C::Morphism>;
  { c.equalizer(f, f) } -> std::same_as<typename C::Morphism>;
  { c.pullback(f, f) } -> std::same_as<SpanOf<typename C::Object, typename C::Morphism>>;
  { c.image(f) } -> std::same_as<ImageOf<typename C::Morphism>>;
  { c.is_mono(f) } -> std::same_as<bool>;
  { c.is_cover(f) } -> std::same_as<bool>;
  { c.is_iso(f) } -> std::same_as<bool>;
  { c.lift(fs, fs) } -> std::same_as<std::optional<typename C::Morphism>>;
  { c.factor_through_mono(f, f) } -> std::same_as<std::optional<typename C::Morphism>>;
  { c.factor_through_cover(f, f) } -> std::same_as<std::optional<typename C::Morphism>>;
  { c.coequalize_congruence(f, a) } -> std::same_as<QuotientOf<typename C::Object, typename C::Morphism>>;
  { c.to_json(f) } -> std::same_as<json>;
  { c.object_json(a) } -> std::same_as<json>;
};

// ---------------------------------------------------------------------------

class FinSetCategory {
 public:
  using Object = FinSetObj;
  using Morphism = FinMap;
  static constexpr bool is_exact = true;

  explicit FinSetCategory(std::size_t hom_cap = 1'000'000) : cap_(hom_cap) {}

  std::string name() const { return "finset"; }
  Object dom(const Morphism& f) const { return f.source; }
  Object cod(const Morphism& f) const { return f.target; }
  Morphism identity(const Object& a) const { return identity_map(a); }
  Morphism compose(const Morphism& g, const Morphism& f) const { return topos::compose(g, f); }
  bool equal(const Morphism& f, const Morphism& g) const { return f == g; }
  bool same_object(const Object& a, const Object& b) const { return a == b; }
  std::vector<Morphism> homs(const Object& a, const Object& b) const { return all_maps(a, b, cap_); }
  Object terminal() const { return singleton(); }
  Morphism to_terminal(const Object& a) const { return constant_map(a, singleton(), 0); }

  SpanOf<Object, Morphism> product(const Object& a, const Object& b) const {
    return {topos::product(a, b), projection0(a, b), projection1(a, b)};
  }

  Morphism pair(const Morphism& f, const Morphism& g) const {
    if (!(f.source == g.source)) throw Error(ErrorCode::shape_mismatch, "pairing needs a common domain");
    const Object p = topos::product(f.target, g.target);
    std::vector<std::size_t> out(f.source.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i) * g.target.size() + g(i);
    return Morphism{f.source, p, std::move(out)};
  }

  Morphism equalizer(const Morphism& f, const Morphism& g) const {
    if (!(f.source == g.source) || !(f.target == g.target))
      throw Error(ErrorCode::shape_mismatch, "equalizer needs a parallel pair");
    std::vector<std::string> names;
    std::vector<std::size_t> incl;
    for (std::size_t i = 0; i < f.source.size(); ++i)
      if (f(i) == g(i)) {
        names.push_back(f.source.name(i));
        incl.push_back(i);
      }
    return Morphism{Object(std::move(names)), f.source, std::move(incl)};
  }

  SpanOf<Object, Morphism> pullback(const Morphism& f, const Morphism& g) const {
    if (!(f.target == g.target)) throw Error(ErrorCode::shape_mismatch, "pullback needs a common codomain");
    std::vector<std::string> names;
    std::vector<std::size_t> g0, g1;
    for (std::size_t a = 0; a < f.source.size(); ++a)
      for (std::size_t b = 0; b < g.source.size(); ++b)
        if (f(a) == g(b)) {
          names.push_back("(" + f.source.name(a) + "," + g.source.name(b) + ")");
          g0.push_back(a);
          g1.push_back(b);
        }
    const Object p(std::move(names));
    return {p, Morphism{p, f.source, std::move(g0)}, Morphism{p, g.source, std::move(g1)}};
  }

  ImageOf<Morphism> image(const Morphism& f) const {
    std::vector<std::size_t> hit;
    std::vector<std::size_t> slot(f.target.size(), f.target.size());
    for (std::size_t v : f.graph)
      if (slot[v] == f.target.size()) slot[v] = 0;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < f.target.size(); ++j)
      if (slot[j] == 0) {
        slot[j] = hit.size();
        hit.push_back(j);
        names.push_back(f.target.name(j));
      }
    const Object im(std::move(names));
    std::vector<std::size_t> cov(f.source.size());
    for (std::size_t i = 0; i < cov.size(); ++i) cov[i] = slot[f(i)];
    return {Morphism{f.source, im, std::move(cov)}, Morphism{im, f.target, std::move(hit)}};
  }

  bool is_mono(const Morphism& f) const { return is_injective(f); }
  bool is_cover(const Morphism& f) const { return is_surjective(f); }
  bool is_iso(const Morphism& f) const { return is_injective(f) && is_surjective(f); }

  // Pointwise: each element of A picks the first element of X1 that works.
  std::optional<Morphism> lift(const std::vector<Morphism>& legs, const std::vector<Morphism>& targets) const {
    check_lift_shape(legs, targets);
    const Object& x1 = legs.front().source;
    const Object& a = targets.front().source;
    std::vector<std::size_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      bool found = false;
      for (std::size_t w = 0; w < x1.size() && !found; ++w) {
        bool ok = true;
        for (std::size_t k = 0; k < legs.size() && ok; ++k) ok = legs[k](w) == targets[k](i);
        if (ok) {
          out[i] = w;
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
    return Morphism{a, x1, std::move(out)};
  }

  std::optional<Morphism> factor_through_mono(const Morphism& m, const Morphism& g) const {
    if (!(m.target == g.target)) return std::nullopt;
    return lift({m}, {g});
  }

  std::optional<Morphism> factor_through_cover(const Morphism& c, const Morphism& g) const {
    if (!(c.source == g.source)) return std::nullopt;
    std::vector<std::size_t> out(c.target.size(), g.target.size());
    for (std::size_t i = 0; i < c.source.size(); ++i) {
      std::size_t& slot = out[c(i)];
      if (slot == g.target.size())
        slot = g(i);
      else if (slot != g(i))
        return std::nullopt;
    }
    for (std::size_t v : out)
      if (v == g.target.size()) return std::nullopt;
    return Morphism{c.target, g.target, std::move(out)};
  }

  // Classes are named after their least member.
  QuotientOf<Object, Morphism> coequalize_congruence(const Morphism& congruence, const Object& x0) const {
    const std::size_t n = x0.size();
    if (congruence.target.size() != n * n)
      throw Error(ErrorCode::shape_mismatch, "congruence does not sit inside X0 x X0");
    std::vector<char> related(n * n, 0);
    for (std::size_t v : congruence.graph) related[v] = 1;
    std::vector<std::size_t> rep(n);
    for (std::size_t x = 0; x < n; ++x) {
      rep[x] = x;
      for (std::size_t y = 0; y < x; ++y)
        if (related[x * n + y]) {
          rep[x] = y;
          break;
        }
    }
    std::vector<std::size_t> slot(n, n);
    std::vector<std::string> names;
    for (std::size_t x = 0; x < n; ++x)
      if (rep[x] == x) {
        slot[x] = names.size();
        names.push_back("[" + x0.name(x) + "]");
      }
    const Object q(std::move(names));
    std::vector<std::size_t> cov(n);
    for (std::size_t x = 0; x < n; ++x) cov[x] = slot[rep[x]];
    return {q, Morphism{x0, q, std::move(cov)}};
  }

  json to_json(const Morphism& f) const { return topos::to_json(f); }
  json object_json(const Object& a) const { return a.names(); }

 private:
  static void check_lift_shape(const std::vector<Morphism>& legs, const std::vector<Morphism>& targets) {
    if (legs.empty() || legs.size() != targets.size())
      throw Error(ErrorCode::shape_mismatch, "lift needs one target per leg");
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (!(legs[i].source == legs.front().source) || !(targets[i].source == targets.front().source) ||
          !(legs[i].target == targets[i].target))
        throw Error(ErrorCode::shape_mismatch, "lift legs and targets disagree");
  }

  std::size_t cap_;
};

// ---------------------------------------------------------------------------

class PerCategory {
 public:
  using Object = PerObject;
  using Morphism = FunRel;
  static constexpr bool is_exact = true;

  explicit PerCategory(HeytingAlgebra h, EnumerationCaps caps = {}) : h_(std::move(h)), caps_(caps) {}

  const HeytingAlgebra& algebra() const { return h_; }
  const EnumerationCaps& caps() const { return caps_; }

  std::string name() const { return "per"; }
  Object dom(const Morphism& f) const { return f.dom; }
  Object cod(const Morphism& f) const { return f.cod; }
  Morphism identity(const Object& a) const { return topos::identity(a); }
  Morphism compose(const Morphism& g, const Morphism& f) const { return compose_morphisms(h_, g, f); }
  bool equal(const Morphism& f, const Morphism& g) const { return f == g; }
  bool same_object(const Object& a, const Object& b) const { return a == b; }
  std::vector<Morphism> homs(const Object& a, const Object& b) const { return topos::homs(h_, a, b, caps_); }
  Object terminal() const { return terminal_object(h_); }
  Morphism to_terminal(const Object& a) const { return topos::to_terminal(h_, a); }

  SpanOf<Object, Morphism> product(const Object& a, const Object& b) const {
    Cone c = topos::product(h_, a, b);
    return {std::move(c.apex), std::move(c.p0), std::move(c.p1)};
  }
  Morphism pair(const Morphism& f, const Morphism& g) const { return topos::pair(h_, f, g); }
  Morphism equalizer(const Morphism& f, const Morphism& g) const { return topos::equalizer(h_, f, g); }
  SpanOf<Object, Morphism> pullback(const Morphism& f, const Morphism& g) const {
    Cone c = topos::pullback(h_, f, g);
    return {std::move(c.apex), std::move(c.p0), std::move(c.p1)};
  }
  ImageOf<Morphism> image(const Morphism& f) const {
    Factorization fac = image_factorize(h_, f);
    return {std::move(fac.cover), std::move(fac.mono)};
  }
  bool is_mono(const Morphism& f) const { return topos::is_mono(h_, f).ok; }
  bool is_cover(const Morphism& f) const { return topos::is_cover(h_, f).ok; }
  bool is_iso(const Morphism& f) const { return topos::is_iso(h_, f); }

  std::optional<Morphism> lift(const std::vector<Morphism>& legs, const std::vector<Morphism>& targets) const {
    return topos::lift(h_, legs, targets, caps_);
  }
  std::optional<Morphism> factor_through_mono(const Morphism& m, const Morphism& g) const {
    return topos::factor_through_mono(h_, m, g);
  }
  std::optional<Morphism> factor_through_cover(const Morphism& c, const Morphism& g) const {
    return topos::factor_through_cover(h_, c, g);
  }
  QuotientOf<Object, Morphism> coequalize_congruence(const Morphism& congruence, const Object& x0) const {
    Coequalizer q = topos::coequalize_congruence(h_, congruence, x0);
    return {std::move(q.object), std::move(q.cover)};
  }

  json to_json(const Morphism& f) const { return topos::to_json(h_, f.rel); }
  json object_json(const Object& a) const { return topos::to_json(h_, a); }

 private:
  HeytingAlgebra h_;
  EnumerationCaps caps_;
};

// ---------------------------------------------------------------------------
// Fam(C) for C the underlying meet-semilattice of a finite Heyting algebra:
// an object is a family (I, α : I → C), a morphism is an index map u with
// α(i) ≤ β(u(i)). Images use joins over fibres, so the lattice's joins and
// distributivity are used even though only meets and ⊤ define C.

struct Family {
  FinSetObj index;
  std::vector<Elem> value;

  friend bool operator==(const Family& a, const Family& b) {
    return a.value == b.value && a.index == b.index;
  }
};

struct FamMap {
  Family source;
  Family target;
  std::vector<std::size_t> graph;

  std::size_t operator()(std::size_t i) const { return graph[i]; }
  FinMap underlying() const { return FinMap{source.index, target.index, graph}; }

  friend bool operator==(const FamMap& a, const FamMap& b) {
    return a.graph == b.graph && a.source == b.source && a.target == b.target;
  }
};

class FamCategory {
 public:
  using Object = Family;
  using Morphism = FamMap;
  static constexpr bool is_exact = false;

  explicit FamCategory(HeytingAlgebra h, std::size_t hom_cap = 1'000'000) : h_(std::move(h)), cap_(hom_cap) {}

  const HeytingAlgebra& algebra() const { return h_; }

  Family make_family(FinSetObj index, std::vector<Elem> value) const {
    if (value.size() != index.size()) throw Error(ErrorCode::shape_mismatch, "family is not total");
    for (Elem v : value)
      if (!h_.contains(v)) throw Error(ErrorCode::unknown_element, "family value outside the algebra");
    return Family{std::move(index), std::move(value)};
  }

  FamMap make_map(const Family& a, const Family& b, std::vector<std::size_t> graph) const {
    FinMap u = topos::make_map(a.index, b.index, graph);
    for (std::size_t i = 0; i < graph.size(); ++i)
      if (!h_.leq(a.value[i], b.value[graph[i]]))
        throw Error(ErrorCode::validation_error, "family map does not respect the values",
                    json{{"index", a.index.name(i)}});
    return FamMap{a, b, std::move(u.graph)};
  }

  std::string name() const { return "fam"; }
  Object dom(const Morphism& f) const { return f.source; }
  Object cod(const Morphism& f) const { return f.target; }
  Morphism identity(const Object& a) const { return FamMap{a, a, identity_map(a.index).graph}; }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.target == g.source)) throw Error(ErrorCode::not_composable, "family maps do not compose");
    std::vector<std::size_t> out(f.graph.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g(f(i));
    return FamMap{f.source, g.target, std::move(out)};
  }

  bool equal(const Morphism& f, const Morphism& g) const { return f == g; }
  bool same_object(const Object& a, const Object& b) const { return a == b; }

  std::vector<Morphism> homs(const Object& a, const Object& b) const {
    std::vector<Morphism> out;
    for (auto& u : all_maps(a.index, b.index, cap_)) {
      bool ok = true;
      for (std::size_t i = 0; i < u.graph.size() && ok; ++i) ok = h_.leq(a.value[i], b.value[u(i)]);
      if (ok) out.push_back(FamMap{a, b, std::move(u.graph)});
    }
    return out;
  }

  Object terminal() const { return Family{singleton(), {h_.top()}}; }
  Morphism to_terminal(const Object& a) const {
    return FamMap{a, terminal(), std::vector<std::size_t>(a.index.size(), 0)};
  }

  SpanOf<Object, Morphism> product(const Object& a, const Object& b) const {
    const FinSetObj idx = topos::product(a.index, b.index);
    std::vector<Elem> v(idx.size());
    for (std::size_t i = 0; i < a.index.size(); ++i)
      for (std::size_t j = 0; j < b.index.size(); ++j) v[i * b.index.size() + j] = h_.meet(a.value[i], b.value[j]);
    const Family p{idx, std::move(v)};
    return {p, FamMap{p, a, projection0(a.index, b.index).graph}, FamMap{p, b, projection1(a.index, b.index).graph}};
  }

  Morphism pair(const Morphism& f, const Morphism& g) const {
    if (!(f.source == g.source)) throw Error(ErrorCode::shape_mismatch, "pairing needs a common domain");
    const auto prod = product(f.target, g.target);
    std::vector<std::size_t> out(f.graph.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i) * g.target.index.size() + g(i);
    return FamMap{f.source, prod.apex, std::move(out)};
  }

  Morphism equalizer(const Morphism& f, const Morphism& g) const {
    if (!(f.source == g.source) || !(f.target == g.target))
      throw Error(ErrorCode::shape_mismatch, "equalizer needs a parallel pair");
    std::vector<std::string> names;
    std::vector<Elem> v;
    std::vector<std::size_t> incl;
    for (std::size_t i = 0; i < f.graph.size(); ++i)
      if (f(i) == g(i)) {
        names.push_back(f.source.index.name(i));
        v.push_back(f.source.value[i]);
        incl.push_back(i);
      }
    return FamMap{Family{FinSetObj(std::move(names)), std::move(v)}, f.source, std::move(incl)};
  }

  SpanOf<Object, Morphism> pullback(const Morphism& f, const Morphism& g) const {
    const auto prod = product(f.source, g.source);
    const FamMap m = equalizer(compose(f, prod.p0), compose(g, prod.p1));
    return {m.source, compose(prod.p0, m), compose(prod.p1, m)};
  }

  // Image on the hit indices, with values joined over each fibre.
  ImageOf<Morphism> image(const Morphism& f) const {
    const std::size_t nj = f.target.index.size();
    std::vector<std::size_t> slot(nj, nj);
    std::vector<std::size_t> hit;
    std::vector<std::string> names;
    std::vector<Elem> v;
    for (std::size_t j = 0; j < nj; ++j) {
      Elem acc = h_.bot();
      bool any = false;
      for (std::size_t i = 0; i < f.graph.size(); ++i)
        if (f(i) == j) {
          acc = h_.join(acc, f.source.value[i]);
          any = true;
        }
      if (!any) continue;
      slot[j] = hit.size();
      hit.push_back(j);
      names.push_back(f.target.index.name(j));
      v.push_back(acc);
    }
    const Family im{FinSetObj(std::move(names)), std::move(v)};
    std::vector<std::size_t> cov(f.graph.size());
    for (std::size_t i = 0; i < cov.size(); ++i) cov[i] = slot[f(i)];
    return {FamMap{f.source, im, std::move(cov)}, FamMap{im, f.target, std::move(hit)}};
  }

  bool is_mono(const Morphism& f) const { return is_injective(f.underlying()); }

  // Surjective, and each target value is the join of its fibre.
  bool is_cover(const Morphism& f) const {
    if (!is_surjective(f.underlying())) return false;
    for (std::size_t j = 0; j < f.target.index.size(); ++j) {
      Elem acc = h_.bot();
      for (std::size_t i = 0; i < f.graph.size(); ++i)
        if (f(i) == j) acc = h_.join(acc, f.source.value[i]);
      if (acc != f.target.value[j]) return false;
    }
    return true;
  }

  bool is_iso(const Morphism& f) const { return is_mono(f) && is_cover(f); }

  std::optional<Morphism> lift(const std::vector<Morphism>& legs, const std::vector<Morphism>& targets) const {
    if (legs.empty() || legs.size() != targets.size())
      throw Error(ErrorCode::shape_mismatch, "lift needs one target per leg");
    const Family& x1 = legs.front().source;
    const Family& a = targets.front().source;
    std::vector<std::size_t> out(a.index.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      bool found = false;
      for (std::size_t w = 0; w < x1.index.size() && !found; ++w) {
        if (!h_.leq(a.value[i], x1.value[w])) continue;
        bool ok = true;
        for (std::size_t k = 0; k < legs.size() && ok; ++k) ok = legs[k](w) == targets[k](i);
        if (ok) {
          out[i] = w;
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
    return FamMap{a, x1, std::move(out)};
  }

  std::optional<Morphism> factor_through_mono(const Morphism& m, const Morphism& g) const {
    if (!(m.target == g.target)) return std::nullopt;
    return lift({m}, {g});
  }

  std::optional<Morphism> factor_through_cover(const Morphism& c, const Morphism& g) const {
    if (!(c.source == g.source)) return std::nullopt;
    const std::size_t nt = g.target.index.size();
    std::vector<std::size_t> out(c.target.index.size(), nt);
    for (std::size_t i = 0; i < c.graph.size(); ++i) {
      std::size_t& slot = out[c(i)];
      if (slot == nt)
        slot = g(i);
      else if (slot != g(i))
        return std::nullopt;
    }
    for (std::size_t j = 0; j < out.size(); ++j)
      if (out[j] == nt || !h_.leq(c.target.value[j], g.target.value[out[j]])) return std::nullopt;
    return FamMap{c.target, g.target, std::move(out)};
  }

  QuotientOf<Object, Morphism> coequalize_congruence(const Morphism&, const Object&) const {
    throw Error(ErrorCode::not_exact_instance, "Fam(C) does not coequalize congruences here");
  }

  json to_json(const Morphism& f) const { return topos::to_json(f.underlying()); }
  json object_json(const Object& a) const {
    json j = json::object();
    for (std::size_t i = 0; i < a.index.size(); ++i) j[a.index.name(i)] = h_.name(a.value[i]);
    return j;
  }

 private:
  HeytingAlgebra h_;
  std::size_t cap_;
};

static_assert(ComputableCategory<FinSetCategory>);
static_assert(ComputableCategory<PerCategory>);
static_assert(ComputableCategory<FamCategory>);

}  // namespace topos
