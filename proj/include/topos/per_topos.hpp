#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topos/finset.hpp"
#include "topos/heyting.hpp"
#include "topos/tripos.hpp"

// The tripos-to-topos category B[T] for T X = H^X: objects are H-valued
// partial equivalence relations, morphisms are functional relations.

namespace topos {

// An H-valued relation between two finite sets, stored row-major.
struct Relation {
  FinSetObj source;
  FinSetObj target;
  std::vector<Elem> m;

  std::size_t rows() const { return source.size(); }
  std::size_t cols() const { return target.size(); }
  Elem operator()(std::size_t i, std::size_t j) const { return m[i * cols() + j]; }
  Elem& at(std::size_t i, std::size_t j) { return m[i * cols() + j]; }

  static Relation filled(FinSetObj source, FinSetObj target, Elem v) {
    const std::size_t n = source.size() * target.size();
    return Relation{std::move(source), std::move(target), std::vector<Elem>(n, v)};
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.m == b.m && a.source == b.source && a.target == b.target;
  }
};

inline Relation make_relation(const HeytingAlgebra& h, FinSetObj source, FinSetObj target,
                              std::vector<Elem> m) {
  if (m.size() != source.size() * target.size())
    throw Error(ErrorCode::shape_mismatch, "relation matrix has the wrong number of entries");
  for (Elem v : m)
    if (!h.contains(v)) throw Error(ErrorCode::unknown_element, "relation entry outside the algebra");
  return Relation{std::move(source), std::move(target), std::move(m)};
}

// ⊤ on the diagonal, ⊥ elsewhere.
inline Relation diagonal_relation(const HeytingAlgebra& h, const FinSetObj& x) {
  Relation r = Relation::filled(x, x, h.bot());
  for (std::size_t i = 0; i < x.size(); ++i) r.at(i, i) = h.top();
  return r;
}

// (x, z) ↦ ⋁_y e(x, y) ∧ f(y, z); `e` is applied first.
inline Relation rel_compose(const HeytingAlgebra& h, const Relation& e, const Relation& f) {
  if (!(e.target == f.source))
    throw Error(ErrorCode::carrier_mismatch, "relations do not compose",
                json{{"left_target", e.target.size()}, {"right_source", f.source.size()}});
  Relation out = Relation::filled(e.source, f.target, h.bot());
  const std::size_t nx = e.rows(), ny = e.cols(), nz = f.cols();
  const Elem bot = h.bot();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const Elem a = e.m[x * ny + y];
      if (a == bot) continue;
      for (std::size_t z = 0; z < nz; ++z) {
        Elem& cell = out.m[x * nz + z];
        cell = h.join(cell, h.meet(a, f.m[y * nz + z]));
      }
    }
  return out;
}

inline Relation rel_inverse(const Relation& e) {
  Relation out{e.target, e.source, std::vector<Elem>(e.m.size())};
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) out.m[j * e.rows() + i] = e(i, j);
  return out;
}

struct EntryWitness {
  std::size_t row = 0;
  std::size_t col = 0;
};

// First entry (lexicographic) where a ≰ b, if any.
inline std::optional<EntryWitness> first_not_leq(const HeytingAlgebra& h, const Relation& a,
                                                 const Relation& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!h.leq(a(i, j), b(i, j))) return EntryWitness{i, j};
  return std::nullopt;
}

inline bool rel_leq(const HeytingAlgebra& h, const Relation& a, const Relation& b) {
  return !first_not_leq(h, a, b);
}

inline json to_json(const HeytingAlgebra& h, const Relation& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.cols(); ++j) row.push_back(h.name(r(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct LawVerdict {
  bool ok = true;
  std::string law;
  std::optional<EntryWitness> entry;

  explicit operator bool() const { return ok; }

  json to_json(const Relation& where) const {
    json j{{"law", law}};
    if (entry) {
      j["row"] = where.source.name(entry->row);
      j["col"] = where.target.name(entry->col);
    }
    return j;
  }
};

// e⁻¹ ≤ e and e∘e ≤ e.
inline LawVerdict validate_per(const HeytingAlgebra& h, const Relation& e) {
  if (!(e.source == e.target)) return {false, "square", std::nullopt};
  if (auto w = first_not_leq(h, rel_inverse(e), e)) return {false, "symmetry", w};
  if (auto w = first_not_leq(h, rel_compose(h, e, e), e)) return {false, "transitivity", w};
  return {};
}

struct PerObject {
  Relation e;

  const FinSetObj& carrier() const { return e.source; }
  std::size_t size() const { return e.rows(); }
  Elem extent(std::size_t x) const { return e(x, x); }

  friend bool operator==(const PerObject& a, const PerObject& b) { return a.e == b.e; }
};

inline PerObject make_per(const HeytingAlgebra& h, Relation e) {
  if (auto v = validate_per(h, e); !v)
    throw Error(ErrorCode::validation_error, "relation is not a partial equivalence relation",
                v.to_json(e));
  return PerObject{std::move(e)};
}

// Off-diagonal entries are all ⊥: the object is a canonical assembly.
inline bool is_diagonal(const HeytingAlgebra& h, const PerObject& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && a.e(i, j) != h.bot()) return false;
  return true;
}

struct FunRel {
  PerObject dom;
  PerObject cod;
  Relation rel;

  friend bool operator==(const FunRel& a, const FunRel& b) {
    return a.rel.m == b.rel.m && a.dom == b.dom && a.cod == b.cod;
  }
};

struct FunRelVerdict {
  // strict, relational_cod, relational_dom, total, single_valued
  std::array<LawVerdict, 5> conditions;

  bool ok() const {
    for (const auto& c : conditions)
      if (!c.ok) return false;
    return true;
  }
  explicit operator bool() const { return ok(); }

  const LawVerdict* first_failure() const {
    for (const auto& c : conditions)
      if (!c.ok) return &c;
    return nullptr;
  }

  json to_json(const Relation& f) const {
    json j = json::array();
    for (const auto& c : conditions)
      if (!c.ok) {
        // total indexes dom×dom, single_valued cod×cod
        json w{{"law", c.law}};
        if (c.entry && c.law != "shape") {
          const FinSetObj& rows = c.law == "single_valued" ? f.target : f.source;
          const FinSetObj& cols = c.law == "total" ? f.source : f.target;
          w["row"] = rows.name(c.entry->row);
          w["col"] = cols.name(c.entry->col);
        }
        j.push_back(std::move(w));
      }
    return j;
  }
};

inline FunRelVerdict validate_funrel(const HeytingAlgebra& h, const Relation& f, const PerObject& a,
                                     const PerObject& b) {
  FunRelVerdict v;
  v.conditions[0].law = "strict";
  v.conditions[1].law = "relational_cod";
  v.conditions[2].law = "relational_dom";
  v.conditions[3].law = "total";
  v.conditions[4].law = "single_valued";
  if (!(f.source == a.carrier()) || !(f.target == b.carrier())) {
    for (auto& c : v.conditions) c.ok = false;
    v.conditions[0].law = "shape";
    return v;
  }
  for (std::size_t x = 0; x < f.rows() && v.conditions[0].ok; ++x)
    for (std::size_t y = 0; y < f.cols(); ++y)
      if (!h.leq(f(x, y), a.extent(x))) {
        v.conditions[0] = {false, "strict", EntryWitness{x, y}};
        break;
      }
  auto equal_first = [&](const Relation& lhs, const Relation& rhs) -> std::optional<EntryWitness> {
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j)
        if (lhs(i, j) != rhs(i, j)) return EntryWitness{i, j};
    return std::nullopt;
  };
  if (auto w = equal_first(rel_compose(h, f, b.e), f)) v.conditions[1] = {false, "relational_cod", w};
  if (auto w = equal_first(rel_compose(h, a.e, f), f)) v.conditions[2] = {false, "relational_dom", w};
  const Relation finv = rel_inverse(f);
  if (auto w = first_not_leq(h, a.e, rel_compose(h, f, finv))) v.conditions[3] = {false, "total", w};
  if (auto w = first_not_leq(h, rel_compose(h, finv, f), b.e))
    v.conditions[4] = {false, "single_valued", w};
  return v;
}

inline FunRel make_funrel(const HeytingAlgebra& h, const PerObject& a, const PerObject& b, Relation f) {
  if (auto v = validate_funrel(h, f, a, b); !v)
    throw Error(ErrorCode::validation_error, "relation is not functional", v.to_json(f));
  return FunRel{a, b, std::move(f)};
}

inline FunRel identity(const PerObject& a) { return FunRel{a, a, a.e}; }

// g ∘ f
inline FunRel compose_morphisms(const HeytingAlgebra& h, const FunRel& g, const FunRel& f) {
  if (!(f.cod == g.dom)) throw Error(ErrorCode::not_composable, "codomain and domain differ");
  FunRel out{f.dom, g.cod, rel_compose(h, f.rel, g.rel)};
  if (auto v = validate_funrel(h, out.rel, out.dom, out.cod); !v)
    throw Error(ErrorCode::invalid_result, "composite failed validation", v.to_json(out.rel));
  return out;
}

inline PerObject nabla(const HeytingAlgebra& h, const FinSetObj& x) {
  return PerObject{diagonal_relation(h, x)};
}

inline FunRel nabla_map(const HeytingAlgebra& h, const FinMap& f) {
  Relation r = Relation::filled(f.source, f.target, h.bot());
  for (std::size_t x = 0; x < f.source.size(); ++x) r.at(x, f.graph[x]) = h.top();
  return FunRel{nabla(h, f.source), nabla(h, f.target), std::move(r)};
}

inline json to_json(const HeytingAlgebra& h, const PerObject& a) {
  return json{{"carrier", a.carrier().names()}, {"matrix", to_json(h, a.e)}};
}

inline json to_json(const HeytingAlgebra& h, const FunRel& f) {
  return json{{"dom", to_json(h, f.dom)}, {"cod", to_json(h, f.cod)}, {"matrix", to_json(h, f.rel)}};
}

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerationCaps {
  std::size_t row_nodes = 5'000'000;  // backtracking nodes per row
  std::size_t homs = 2'000'000;       // candidate functional relations
};

namespace detail {

// Rows of a candidate functional relation from an element of extent `bound`
// into `cod`: every row-local consequence of the functional-relation laws
// holds. For a diagonal domain these are exactly the valid rows.
inline std::vector<std::vector<Elem>> row_candidates(const HeytingAlgebra& h, Elem bound,
                                                     const PerObject& cod,
                                                     const EnumerationCaps& caps) {
  const std::size_t m = cod.size();
  const auto n = static_cast<Elem>(h.size());
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> row(m, h.bot());
  std::vector<std::size_t> support;
  std::size_t nodes = 0;

  auto leaf = [&]() {
    Elem total = h.bot();
    for (std::size_t x : support) total = h.join(total, row[x]);
    if (!h.leq(bound, total)) return;
    for (std::size_t x = 0; x < m; ++x) {
      Elem acc = h.bot();
      for (std::size_t w : support) acc = h.join(acc, h.meet(row[w], cod.e(w, x)));
      if (acc != row[x]) return;
    }
    out.push_back(row);
  };

  auto rec = [&](auto& self, std::size_t x) -> void {
    if (++nodes > caps.row_nodes)
      throw Error(ErrorCode::hom_bound_exceeded, "row enumeration exceeded its node budget",
                  json{{"columns", m}, {"budget", caps.row_nodes}});
    if (x == m) {
      leaf();
      return;
    }
    const Elem ub = h.meet(bound, cod.extent(x));
    for (Elem v = 0; v < n; ++v) {
      if (!h.leq(v, ub)) continue;
      if (v == h.bot()) {
        row[x] = v;
        self(self, x + 1);
        continue;
      }
      bool ok = true;
      for (std::size_t w : support)
        if (!h.leq(h.meet(v, row[w]), cod.e(w, x))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      row[x] = v;
      support.push_back(x);
      self(self, x + 1);
      support.pop_back();
    }
    row[x] = h.bot();
  };
  rec(rec, 0);
  return out;
}

// Row candidates depend only on the bound, so compute each once.
class RowCache {
 public:
  RowCache(const HeytingAlgebra& h, const PerObject& cod, const EnumerationCaps& caps)
      : h_(h), cod_(cod), caps_(caps), rows_(h.size()) {}

  const std::vector<std::vector<Elem>>& operator()(Elem bound) {
    auto& slot = rows_[bound];
    if (!slot) slot = row_candidates(h_, bound, cod_, caps_);
    return *slot;
  }

 private:
  const HeytingAlgebra& h_;
  const PerObject& cod_;
  const EnumerationCaps& caps_;
  std::vector<std::optional<std::vector<std::vector<Elem>>>> rows_;
};

template <class Visit>
void for_each_row_product(const std::vector<std::vector<std::vector<Elem>>>& rows, std::size_t cols,
                          const FinSetObj& src, const FinSetObj& tgt, Visit&& visit) {
  for (const auto& r : rows)
    if (r.empty()) return;
  std::vector<std::size_t> idx(rows.size(), 0);
  Relation rel{src, tgt, std::vector<Elem>(rows.size() * cols)};
  while (true) {
    for (std::size_t y = 0; y < rows.size(); ++y)
      std::copy(rows[y][idx[y]].begin(), rows[y][idx[y]].end(), rel.m.begin() + y * cols);
    if (!visit(rel)) return;
    std::size_t y = rows.size();
    while (y-- > 0) {
      if (++idx[y] < rows[y].size()) break;
      idx[y] = 0;
    }
    if (y == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace detail

// All functional relations A → B, in lexicographic row-candidate order.
inline std::vector<FunRel> homs(const HeytingAlgebra& h, const PerObject& a, const PerObject& b,
                                const EnumerationCaps& caps = {}) {
  std::vector<std::vector<std::vector<Elem>>> rows;
  rows.reserve(a.size());
  std::size_t product = 1;
  detail::RowCache cache(h, b, caps);
  for (std::size_t y = 0; y < a.size(); ++y) {
    rows.push_back(cache(a.extent(y)));
    const std::size_t k = rows.back().size();
    if (k == 0) return {};
    if (product > caps.homs / k)
      throw Error(ErrorCode::hom_bound_exceeded, "hom-set candidates exceed the cap",
                  json{{"dom", a.size()}, {"cod", b.size()}, {"cap", caps.homs}});
    product *= k;
  }
  const bool diagonal = is_diagonal(h, a);
  std::vector<FunRel> out;
  detail::for_each_row_product(rows, b.size(), a.carrier(), b.carrier(), [&](const Relation& rel) {
    if (diagonal || validate_funrel(h, rel, a, b).ok()) out.push_back(FunRel{a, b, rel});
    return true;
  });
  return out;
}

// Some h : A → X1 with legs[i] ∘ h = targets[i] for every i (first in
// enumeration order), where every target starts at A.
inline std::optional<FunRel> lift(const HeytingAlgebra& h, const std::vector<FunRel>& legs,
                                  const std::vector<FunRel>& targets,
                                  const EnumerationCaps& caps = {}) {
  if (legs.empty() || legs.size() != targets.size())
    throw Error(ErrorCode::shape_mismatch, "lift needs one target per leg");
  const PerObject& x1 = legs.front().dom;
  const PerObject& a = targets.front().dom;
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (!(legs[i].dom == x1) || !(targets[i].dom == a) || !(legs[i].cod == targets[i].cod))
      throw Error(ErrorCode::shape_mismatch, "lift legs and targets disagree");

  std::vector<std::size_t> support;
  auto row_matches = [&](const std::vector<Elem>& row, std::size_t y) {
    support.clear();
    for (std::size_t w = 0; w < row.size(); ++w)
      if (row[w] != h.bot()) support.push_back(w);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const Relation& leg = legs[i].rel;
      const Relation& tgt = targets[i].rel;
      for (std::size_t t = 0; t < leg.cols(); ++t) {
        Elem acc = h.bot();
        for (std::size_t w : support) acc = h.join(acc, h.meet(row[w], leg(w, t)));
        if (acc != tgt(y, t)) return false;
      }
    }
    return true;
  };

  if (is_diagonal(h, a)) {
    detail::RowCache cache(h, x1, caps);
    Relation rel = Relation::filled(a.carrier(), x1.carrier(), h.bot());
    for (std::size_t y = 0; y < a.size(); ++y) {
      bool found = false;
      for (const auto& row : cache(a.extent(y)))
        if (row_matches(row, y)) {
          std::copy(row.begin(), row.end(), rel.m.begin() + y * x1.size());
          found = true;
          break;
        }
      if (!found) return std::nullopt;
    }
    return FunRel{a, x1, std::move(rel)};
  }
  for (auto& cand : homs(h, a, x1, caps)) {
    bool ok = true;
    for (std::size_t y = 0; y < a.size() && ok; ++y)
      ok = row_matches(std::vector<Elem>(cand.rel.m.begin() + y * x1.size(),
                                         cand.rel.m.begin() + (y + 1) * x1.size()),
                       y);
    if (ok) return cand;
  }
  return std::nullopt;
}

// All PERs on `carrier`, enumerating the upper triangle lexicographically.
inline std::vector<PerObject> all_pers(const HeytingAlgebra& h, const FinSetObj& carrier) {
  const std::size_t n = carrier.size();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  std::vector<PerObject> out;
  Relation r = Relation::filled(carrier, carrier, h.bot());
  std::vector<Elem> digits(cells.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      r.at(cells[k].first, cells[k].second) = digits[k];
      r.at(cells[k].second, cells[k].first) = digits[k];
    }
    if (validate_per(h, r)) out.push_back(PerObject{r});
    std::size_t k = cells.size();
    while (k-- > 0) {
      if (++digits[k] < h.size()) break;
      digits[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// Every PER on the standard sets of size 0..max_carrier.
inline std::vector<PerObject> all_pers_up_to(const HeytingAlgebra& h, std::size_t max_carrier) {
  std::vector<PerObject> out;
  for (std::size_t n = 0; n <= max_carrier; ++n)
    for (auto& p : all_pers(h, FinSetObj::standard(n))) out.push_back(std::move(p));
  return out;
}

// ---------------------------------------------------------------------------
// Monos, covers, factorizations

inline LawVerdict is_mono(const HeytingAlgebra& h, const FunRel& f) {
  if (auto w = first_not_leq(h, rel_compose(h, f.rel, rel_inverse(f.rel)), f.dom.e))
    return {false, "mono", w};
  return {};
}

inline LawVerdict is_cover(const HeytingAlgebra& h, const FunRel& f) {
  if (auto w = first_not_leq(h, f.cod.e, rel_compose(h, rel_inverse(f.rel), f.rel)))
    return {false, "cover", w};
  return {};
}

inline bool is_iso(const HeytingAlgebra& h, const FunRel& f) {
  return is_mono(h, f).ok && is_cover(h, f).ok;
}

struct Factorization {
  FunRel cover;
  FunRel mono;
};

inline Factorization image_factorize(const HeytingAlgebra& h, const FunRel& f) {
  const Relation img = rel_compose(h, rel_inverse(f.rel), f.rel);
  const PerObject image{img};
  Relation cover_rel = f.rel;
  cover_rel.target = image.carrier();
  return Factorization{make_funrel(h, f.dom, image, std::move(cover_rel)),
                       make_funrel(h, image, f.cod, img)};
}

// k : Z → S with m ∘ k = g. Since m is mono, k must be m⁻¹ ∘ g.
inline std::optional<FunRel> factor_through_mono(const HeytingAlgebra& h, const FunRel& m,
                                                 const FunRel& g) {
  if (!(m.cod == g.cod)) return std::nullopt;
  FunRel k{g.dom, m.dom, rel_compose(h, g.rel, rel_inverse(m.rel))};
  if (!validate_funrel(h, k.rel, k.dom, k.cod)) return std::nullopt;
  if (!(rel_compose(h, k.rel, m.rel) == g.rel)) return std::nullopt;
  return k;
}

// u : B → C with u ∘ c = g. Since c is epi, u must be g ∘ c⁻¹.
inline std::optional<FunRel> factor_through_cover(const HeytingAlgebra& h, const FunRel& c,
                                                  const FunRel& g) {
  if (!(c.dom == g.dom)) return std::nullopt;
  FunRel u{c.cod, g.cod, rel_compose(h, rel_inverse(c.rel), g.rel)};
  if (!validate_funrel(h, u.rel, u.dom, u.cod)) return std::nullopt;
  if (!(rel_compose(h, c.rel, u.rel) == g.rel)) return std::nullopt;
  return u;
}

inline bool same_subobject(const HeytingAlgebra& h, const FunRel& m1, const FunRel& m2) {
  return factor_through_mono(h, m2, m1).has_value() && factor_through_mono(h, m1, m2).has_value();
}

// Drops elements of extent ⊥; the inclusion is an isomorphism.
struct Trimmed {
  PerObject object;
  FunRel inclusion;  // object → original
  std::vector<std::size_t> kept;
};

inline Trimmed trim(const HeytingAlgebra& h, const PerObject& a) {
  std::vector<std::size_t> kept;
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a.extent(x) != h.bot()) kept.push_back(x);
  if (kept.size() == a.size()) return Trimmed{a, identity(a), std::move(kept)};
  std::vector<std::string> names;
  for (std::size_t x : kept) names.push_back(a.carrier().name(x));
  const FinSetObj carrier(std::move(names));
  Relation e = Relation::filled(carrier, carrier, h.bot());
  Relation incl = Relation::filled(carrier, a.carrier(), h.bot());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) e.at(i, j) = a.e(kept[i], kept[j]);
    for (std::size_t x = 0; x < a.size(); ++x) incl.at(i, x) = a.e(kept[i], x);
  }
  PerObject obj{std::move(e)};
  return Trimmed{obj, FunRel{obj, a, std::move(incl)}, std::move(kept)};
}

// ---------------------------------------------------------------------------
// Finite limits

struct Cone {
  PerObject apex;
  FunRel p0;
  FunRel p1;
};

inline PerObject terminal_object(const HeytingAlgebra& h) {
  return PerObject{Relation::filled(singleton(), singleton(), h.top())};
}

inline FunRel to_terminal(const HeytingAlgebra& h, const PerObject& a) {
  const PerObject one = terminal_object(h);
  Relation r = Relation::filled(a.carrier(), one.carrier(), h.bot());
  for (std::size_t x = 0; x < a.size(); ++x) r.at(x, 0) = a.extent(x);
  return FunRel{a, one, std::move(r)};
}

inline Cone product(const HeytingAlgebra& h, const PerObject& a, const PerObject& b) {
  const FinSetObj carrier = product(a.carrier(), b.carrier());
  const std::size_t na = a.size(), nb = b.size();
  Relation e = Relation::filled(carrier, carrier, h.bot());
  Relation p0 = Relation::filled(carrier, a.carrier(), h.bot());
  Relation p1 = Relation::filled(carrier, b.carrier(), h.bot());
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      const std::size_t i = x * nb + y;
      for (std::size_t x2 = 0; x2 < na; ++x2) {
        for (std::size_t y2 = 0; y2 < nb; ++y2) e.at(i, x2 * nb + y2) = h.meet(a.e(x, x2), b.e(y, y2));
        p0.at(i, x2) = h.meet(a.e(x, x2), b.extent(y));
      }
      for (std::size_t y2 = 0; y2 < nb; ++y2) p1.at(i, y2) = h.meet(a.extent(x), b.e(y, y2));
    }
  PerObject apex{std::move(e)};
  return Cone{apex, FunRel{apex, a, std::move(p0)}, FunRel{apex, b, std::move(p1)}};
}

// ⟨h0, h1⟩ : Z → A × B
inline FunRel pair(const HeytingAlgebra& h, const FunRel& h0, const FunRel& h1) {
  if (!(h0.dom == h1.dom)) throw Error(ErrorCode::shape_mismatch, "pairing needs a common domain");
  const Cone prod = product(h, h0.cod, h1.cod);
  const std::size_t nb = h1.cod.size();
  Relation r = Relation::filled(h0.dom.carrier(), prod.apex.carrier(), h.bot());
  for (std::size_t z = 0; z < h0.dom.size(); ++z)
    for (std::size_t x = 0; x < h0.cod.size(); ++x)
      for (std::size_t y = 0; y < nb; ++y) r.at(z, x * nb + y) = h.meet(h0.rel(z, x), h1.rel(z, y));
  return FunRel{h0.dom, prod.apex, std::move(r)};
}

// The equalizer mono E → dom of f, g.
inline FunRel equalizer(const HeytingAlgebra& h, const FunRel& f, const FunRel& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw Error(ErrorCode::shape_mismatch, "equalizer needs a parallel pair");
  const PerObject& a = f.dom;
  std::vector<Elem> agree(a.size(), h.bot());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < f.cod.size(); ++y)
      agree[x] = h.join(agree[x], h.meet(f.rel(x, y), g.rel(x, y)));
  Relation e = a.e;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t x2 = 0; x2 < a.size(); ++x2)
      e.at(x, x2) = h.meet(a.e(x, x2), h.meet(agree[x], agree[x2]));
  PerObject eq{e};
  return FunRel{eq, a, std::move(e)};
}

// Pullback of f : A → C and g : B → C: the equalizer of f∘π0 and g∘π1
// inside A × B, restricted to the pairs of non-⊥ extent (an isomorphic
// copy that keeps kernel pairs of large objects small).
inline Cone pullback(const HeytingAlgebra& h, const FunRel& f, const FunRel& g) {
  if (!(f.cod == g.cod)) throw Error(ErrorCode::shape_mismatch, "pullback needs a common codomain");
  const PerObject& a = f.dom;
  const PerObject& b = g.dom;
  const std::size_t nc = f.cod.size();
  struct Point {
    std::size_t x, y;
    Elem agree;
  };
  std::vector<Point> support;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a.extent(x) == h.bot()) continue;
    for (std::size_t y = 0; y < b.size(); ++y) {
      Elem agree = h.bot();
      for (std::size_t c = 0; c < nc; ++c) agree = h.join(agree, h.meet(f.rel(x, c), g.rel(y, c)));
      if (agree != h.bot()) support.push_back({x, y, agree});
    }
  }
  std::vector<std::string> names;
  names.reserve(support.size());
  for (const auto& p : support) names.push_back("(" + a.carrier().name(p.x) + "," + b.carrier().name(p.y) + ")");
  const FinSetObj carrier(std::move(names));
  const std::size_t n = support.size();
  Relation e = Relation::filled(carrier, carrier, h.bot());
  Relation p0 = Relation::filled(carrier, a.carrier(), h.bot());
  Relation p1 = Relation::filled(carrier, b.carrier(), h.bot());
  for (std::size_t i = 0; i < n; ++i) {
    const Point& u = support[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Point& v = support[j];
      e.at(i, j) = h.meet(h.meet(a.e(u.x, v.x), b.e(u.y, v.y)), h.meet(u.agree, v.agree));
    }
    for (std::size_t x = 0; x < a.size(); ++x) p0.at(i, x) = h.meet(a.e(u.x, x), u.agree);
    for (std::size_t y = 0; y < b.size(); ++y) p1.at(i, y) = h.meet(b.e(u.y, y), u.agree);
  }
  PerObject apex{std::move(e)};
  return Cone{apex, FunRel{apex, a, std::move(p0)}, FunRel{apex, b, std::move(p1)}};
}

// The literal construction: equalizer of f∘π0 and g∘π1 inside A × B.
inline Cone pullback_in_product(const HeytingAlgebra& h, const FunRel& f, const FunRel& g) {
  if (!(f.cod == g.cod)) throw Error(ErrorCode::shape_mismatch, "pullback needs a common codomain");
  const Cone prod = product(h, f.dom, g.dom);
  const FunRel m = equalizer(h, compose_morphisms(h, f, prod.p0), compose_morphisms(h, g, prod.p1));
  return Cone{m.dom, compose_morphisms(h, prod.p0, m), compose_morphisms(h, prod.p1, m)};
}

// Universal properties against bounded probe sets; each returns the first
// failure found.
inline std::optional<json> verify_terminal(const HeytingAlgebra& h, const std::vector<PerObject>& probes) {
  const PerObject one = terminal_object(h);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    auto hs = homs(h, probes[i], one);
    if (hs.size() != 1 || !(hs.front() == to_terminal(h, probes[i])))
      return json{{"probe", i}, {"maps", hs.size()}};
  }
  return std::nullopt;
}

inline std::optional<json> verify_product(const HeytingAlgebra& h, const PerObject& a,
                                          const PerObject& b, const std::vector<PerObject>& probes) {
  const Cone prod = product(h, a, b);
  if (!validate_per(h, prod.apex.e) || !validate_funrel(h, prod.p0.rel, prod.apex, a) ||
      !validate_funrel(h, prod.p1.rel, prod.apex, b))
    return json{{"law", "cone"}};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto into_prod = homs(h, probes[i], prod.apex);
    for (const auto& h0 : homs(h, probes[i], a))
      for (const auto& h1 : homs(h, probes[i], b)) {
        const FunRel u = pair(h, h0, h1);
        if (!validate_funrel(h, u.rel, u.dom, u.cod) ||
            !(compose_morphisms(h, prod.p0, u) == h0) || !(compose_morphisms(h, prod.p1, u) == h1))
          return json{{"law", "mediating"}, {"probe", i}};
        std::size_t matches = 0;
        for (const auto& k : into_prod)
          if (compose_morphisms(h, prod.p0, k) == h0 && compose_morphisms(h, prod.p1, k) == h1) ++matches;
        if (matches != 1) return json{{"law", "uniqueness"}, {"probe", i}, {"matches", matches}};
      }
  }
  return std::nullopt;
}

inline std::optional<json> verify_equalizer(const HeytingAlgebra& h, const FunRel& f, const FunRel& g,
                                            const std::vector<PerObject>& probes) {
  const FunRel m = equalizer(h, f, g);
  if (!validate_per(h, m.dom.e) || !validate_funrel(h, m.rel, m.dom, m.cod))
    return json{{"law", "cone"}};
  if (!(compose_morphisms(h, f, m) == compose_morphisms(h, g, m))) return json{{"law", "commutes"}};
  if (!is_mono(h, m)) return json{{"law", "mono"}};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto into_eq = homs(h, probes[i], m.dom);
    for (const auto& k : homs(h, probes[i], f.dom)) {
      if (!(compose_morphisms(h, f, k) == compose_morphisms(h, g, k))) continue;
      std::size_t matches = 0;
      for (const auto& u : into_eq)
        if (compose_morphisms(h, m, u) == k) ++matches;
      if (matches != 1) return json{{"law", "mediating"}, {"probe", i}, {"matches", matches}};
    }
  }
  return std::nullopt;
}

inline std::optional<json> verify_pullback(const HeytingAlgebra& h, const FunRel& f, const FunRel& g,
                                           const std::vector<PerObject>& probes) {
  const Cone pb = pullback(h, f, g);
  if (!validate_per(h, pb.apex.e) || !validate_funrel(h, pb.p0.rel, pb.apex, f.dom) ||
      !validate_funrel(h, pb.p1.rel, pb.apex, g.dom))
    return json{{"law", "cone"}};
  if (!(compose_morphisms(h, f, pb.p0) == compose_morphisms(h, g, pb.p1))) return json{{"law", "commutes"}};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto into_pb = homs(h, probes[i], pb.apex);
    const auto hs1 = homs(h, probes[i], g.dom);
    for (const auto& h0 : homs(h, probes[i], f.dom)) {
      const FunRel fh0 = compose_morphisms(h, f, h0);
      for (const auto& h1 : hs1) {
        if (!(fh0 == compose_morphisms(h, g, h1))) continue;
        std::size_t matches = 0;
        for (const auto& u : into_pb)
          if (compose_morphisms(h, pb.p0, u) == h0 && compose_morphisms(h, pb.p1, u) == h1) ++matches;
        if (matches != 1) return json{{"law", "mediating"}, {"probe", i}, {"matches", matches}};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quotients of congruences

struct Coequalizer {
  PerObject object;
  FunRel cover;
};

// Quotient of X0 by the congruence presented by a mono R → X0 × X0.
inline Coequalizer coequalize_congruence(const HeytingAlgebra& h, const FunRel& congruence,
                                         const PerObject& x0) {
  const std::size_t n = x0.size();
  if (congruence.cod.size() != n * n)
    throw Error(ErrorCode::shape_mismatch, "congruence does not sit inside X0 x X0");
  Relation rho = Relation::filled(x0.carrier(), x0.carrier(), h.bot());
  for (std::size_t w = 0; w < congruence.dom.size(); ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) rho.at(x, y) = h.join(rho(x, y), congruence.rel(w, x * n + y));
  PerObject q = make_per(h, rho);
  return Coequalizer{q, make_funrel(h, x0, q, rho)};
}

// ---------------------------------------------------------------------------
// Subobject classifier

struct Classifier {
  PerObject omega;
  FunRel truth;  // 1 → Ω
};

inline Classifier subobject_classifier(const HeytingAlgebra& h) {
  const FinSetObj values(h.names());
  Relation e = Relation::filled(values, values, h.bot());
  for (Elem p = 0; p < h.size(); ++p)
    for (Elem q = 0; q < h.size(); ++q) e.at(p, q) = h.iff(p, q);
  const PerObject omega{std::move(e)};
  const PerObject one = terminal_object(h);
  Relation t = Relation::filled(one.carrier(), values, h.bot());
  for (Elem q = 0; q < h.size(); ++q) t.at(0, q) = q;
  return Classifier{omega, FunRel{one, omega, std::move(t)}};
}

// χ(x, p) = e(x, x) ∧ (φ(x) ↔ p) where φ is the image of m.
inline FunRel classify_mono(const HeytingAlgebra& h, const FunRel& m) {
  if (auto v = is_mono(h, m); !v)
    throw Error(ErrorCode::not_mono, "cannot classify a non-mono", v.to_json(m.dom.e));
  const Classifier cl = subobject_classifier(h);
  const PerObject& x = m.cod;
  Relation chi = Relation::filled(x.carrier(), cl.omega.carrier(), h.bot());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Elem phi = h.bot();
    for (std::size_t s = 0; s < m.dom.size(); ++s) phi = h.join(phi, m.rel(s, i));
    for (Elem p = 0; p < h.size(); ++p) chi.at(i, p) = h.meet(x.extent(i), h.iff(phi, p));
  }
  return make_funrel(h, x, cl.omega, std::move(chi));
}

// The subobject t pulls back to along χ.
inline FunRel pull_back_truth(const HeytingAlgebra& h, const FunRel& chi) {
  const Classifier cl = subobject_classifier(h);
  return pullback(h, chi, cl.truth).p0;
}

}  // namespace topos
