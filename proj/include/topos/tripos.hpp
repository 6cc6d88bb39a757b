#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "topos/finset.hpp"
#include "topos/heyting.hpp"
#include "topos/report.hpp"

namespace topos {

// An element of T X = H^X.
struct Predicate {
  FinSetObj base;
  std::vector<Elem> values;

  Elem operator()(std::size_t x) const { return values[x]; }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.values == b.values && a.base == b.base;
  }
};

inline Predicate constant_predicate(const FinSetObj& base, Elem v) {
  return Predicate{base, std::vector<Elem>(base.size(), v)};
}

inline Predicate make_predicate(const HeytingAlgebra& h, FinSetObj base, std::vector<Elem> values) {
  if (values.size() != base.size())
    throw Error(ErrorCode::validation_error, "predicate is not total on its base");
  for (Elem v : values)
    if (!h.contains(v)) throw Error(ErrorCode::unknown_element, "predicate value outside the algebra");
  return Predicate{std::move(base), std::move(values)};
}

inline bool predicate_leq(const HeytingAlgebra& h, const Predicate& p, const Predicate& q) {
  for (std::size_t i = 0; i < p.values.size(); ++i)
    if (!h.leq(p.values[i], q.values[i])) return false;
  return true;
}

template <class Op>
Predicate pointwise(const Predicate& p, const Predicate& q, Op op) {
  Predicate r{p.base, std::vector<Elem>(p.values.size())};
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = op(p.values[i], q.values[i]);
  return r;
}

inline void require_base(const FinSetObj& expected, const Predicate& p) {
  if (!(p.base == expected))
    throw Error(ErrorCode::base_mismatch, "predicate lives over a different set",
                json{{"expected_size", expected.size()}, {"got_size", p.base.size()}});
}

// T f : T Y → T X, precomposition with f.
inline Predicate reindex(const FinMap& f, const Predicate& p) {
  require_base(f.target, p);
  Predicate out{f.source, std::vector<Elem>(f.source.size())};
  for (std::size_t x = 0; x < out.values.size(); ++x) out.values[x] = p.values[f.graph[x]];
  return out;
}

// ∃_f : joins over fibres, ⊥ on empty fibres.
inline Predicate exists_along(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) {
  require_base(f.source, p);
  Predicate out = constant_predicate(f.target, h.bot());
  for (std::size_t x = 0; x < p.values.size(); ++x)
    out.values[f.graph[x]] = h.join(out.values[f.graph[x]], p.values[x]);
  return out;
}

// ∀_f : meets over fibres, ⊤ on empty fibres.
inline Predicate forall_along(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) {
  require_base(f.source, p);
  Predicate out = constant_predicate(f.target, h.top());
  for (std::size_t x = 0; x < p.values.size(); ++x)
    out.values[f.graph[x]] = h.meet(out.values[f.graph[x]], p.values[x]);
  return out;
}

// |H|^n, or nullopt when it exceeds `cap`.
inline std::optional<std::size_t> predicate_count(const HeytingAlgebra& h, std::size_t n,
                                                  std::size_t cap) {
  const std::size_t c = count_maps(n, h.size(), cap);
  if (c > cap) return std::nullopt;
  return c;
}

// Predicates are numbered lexicographically: the first base element is the
// most significant digit.
inline Predicate predicate_at(const HeytingAlgebra& h, const FinSetObj& base, std::size_t index) {
  Predicate p{base, std::vector<Elem>(base.size())};
  for (std::size_t i = base.size(); i-- > 0;) {
    p.values[i] = static_cast<Elem>(index % h.size());
    index /= h.size();
  }
  return p;
}

inline std::size_t predicate_index(const HeytingAlgebra& h, const Predicate& p) {
  std::size_t idx = 0;
  for (Elem v : p.values) idx = idx * h.size() + v;
  return idx;
}

inline std::string predicate_name(const HeytingAlgebra& h, const Predicate& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) s += ',';
    s += p.base.name(i) + ":" + h.name(p.values[i]);
  }
  return s + "}";
}

inline std::vector<Predicate> all_predicates(const HeytingAlgebra& h, const FinSetObj& base,
                                             std::size_t cap = 1'000'000) {
  auto count = predicate_count(h, base.size(), cap);
  if (!count)
    throw Error(ErrorCode::bound_exceeded, "predicate space too large",
                json{{"base", base.size()}, {"algebra", h.size()}, {"cap", cap}});
  std::vector<Predicate> out;
  out.reserve(*count);
  for (std::size_t i = 0; i < *count; ++i) out.push_back(predicate_at(h, base, i));
  return out;
}

inline json to_json(const HeytingAlgebra& h, const Predicate& p) {
  json j = json::object();
  for (std::size_t i = 0; i < p.values.size(); ++i) j[p.base.name(i)] = h.name(p.values[i]);
  return j;
}

// π X with the generic predicate ε X ∈ T(π X × X).
struct PowerObject {
  FinSetObj base;
  FinSetObj carrier;
  Predicate eval;

  std::size_t size() const { return carrier.size(); }
};

inline constexpr std::size_t default_power_bound = 1u << 16;

inline PowerObject power_object(const HeytingAlgebra& h, const FinSetObj& x,
                                std::size_t bound = default_power_bound) {
  auto count = predicate_count(h, x.size(), bound);
  if (!count)
    throw Error(ErrorCode::bound_exceeded, "power object exceeds the enumeration bound",
                json{{"base", x.size()}, {"algebra", h.size()}, {"bound", bound}});
  std::vector<std::string> names;
  names.reserve(*count);
  std::vector<Elem> eval;
  eval.reserve(*count * x.size());
  for (std::size_t i = 0; i < *count; ++i) {
    Predicate p = predicate_at(h, x, i);
    names.push_back(predicate_name(h, p));
    eval.insert(eval.end(), p.values.begin(), p.values.end());
  }
  PowerObject po{x, FinSetObj(std::move(names)), {}};
  po.eval = Predicate{product(po.carrier, x), std::move(eval)};
  return po;
}

// The canonical a : Y → π X with T(a × id)(ε X) = α.
inline FinMap classify(const HeytingAlgebra& h, const PowerObject& po, const FinSetObj& y,
                       const Predicate& alpha) {
  require_base(product(y, po.base), alpha);
  const std::size_t nx = po.base.size();
  std::vector<std::size_t> g(y.size());
  for (std::size_t u = 0; u < y.size(); ++u) {
    std::size_t idx = 0;
    for (std::size_t x = 0; x < nx; ++x) idx = idx * h.size() + alpha.values[u * nx + x];
    g[u] = idx;
  }
  return FinMap{y, po.carrier, std::move(g)};
}

struct CanonicalQuantifiers {
  Predicate exists(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) const {
    return exists_along(h, f, p);
  }
  Predicate forall(const HeytingAlgebra& h, const FinMap& f, const Predicate& p) const {
    return forall_along(h, f, p);
  }
};

struct TriposOptions {
  std::size_t max_set = 2;
  std::size_t predicate_cap = 10'000;
  std::optional<std::uint64_t> seed;
};

namespace detail {

// The predicates of `base` a sweep visits: all of them when the space fits
// under the cap, otherwise `cap` seeded draws.
class PredicateSweep {
 public:
  PredicateSweep(const HeytingAlgebra& h, const FinSetObj& base, const TriposOptions& opt,
                 std::uint64_t salt)
      : h_(h), base_(base) {
    auto count = predicate_count(h, base.size(), opt.predicate_cap);
    if (count) {
      total_ = *count;
      return;
    }
    if (!opt.seed)
      throw Error(ErrorCode::validation_error,
                  "predicate space exceeds the cap; sampling requires a seed",
                  json{{"base", base.size()}, {"cap", opt.predicate_cap}});
    sampled_ = true;
    std::mt19937_64 rng(*opt.seed ^ (salt * 0x9E3779B97F4A7C15ull));
    picks_.reserve(opt.predicate_cap);
    for (std::size_t i = 0; i < opt.predicate_cap; ++i) {
      Predicate p{base, std::vector<Elem>(base.size())};
      for (auto& v : p.values) v = static_cast<Elem>(rng() % h.size());
      picks_.push_back(std::move(p));
    }
    total_ = picks_.size();
  }

  std::size_t size() const { return total_; }
  bool sampled() const { return sampled_; }
  Predicate operator[](std::size_t i) const {
    return sampled_ ? picks_[i] : predicate_at(h_, base_, i);
  }

 private:
  const HeytingAlgebra& h_;
  FinSetObj base_;
  std::size_t total_ = 0;
  bool sampled_ = false;
  std::vector<Predicate> picks_;
};

}  // namespace detail

// Exhaustively checks the tripos laws of T X = H^X over all sets of size
// ≤ opt.max_set and all maps between them.
template <class Quantifiers = CanonicalQuantifiers>
Report validate_tripos(const HeytingAlgebra& h, const TriposOptions& opt = {},
                       const Quantifiers& q = {}) {
  Report report;
  std::vector<FinSetObj> sets;
  for (std::size_t n = 0; n <= opt.max_set; ++n) sets.push_back(FinSetObj::standard(n));
  struct Arrow {
    std::size_t src, tgt;
    FinMap f;
  };
  std::vector<Arrow> maps;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < sets.size(); ++b)
      for (auto& f : all_maps(sets[a], sets[b])) maps.push_back({a, b, std::move(f)});

  bool any_sampled = false;
  std::uint64_t salt = 0;
  auto sweep = [&](const FinSetObj& base) {
    detail::PredicateSweep s(h, base, opt, ++salt);
    any_sampled = any_sampled || s.sampled();
    return s;
  };
  auto pname = [&](const Predicate& p) { return to_json(h, p); };
  auto mname = [&](const FinMap& f) { return to_json(f); };

  std::size_t instances = 0;
  report.timed("tripos.reindex.heyting_morphism", [&]() -> std::optional<json> {
    instances = 0;
    for (const auto& m : maps) {
      auto ps = sweep(m.f.target);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const Predicate p = ps[i];
        const Predicate tp = reindex(m.f, p);
        for (std::size_t j = 0; j < ps.size(); ++j) {
          const Predicate r = ps[j];
          const Predicate tr = reindex(m.f, r);
          ++instances;
          auto bad = [&](const char* op) {
            return json{{"op", op}, {"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)}};
          };
          if (reindex(m.f, pointwise(p, r, [&](Elem a, Elem b) { return h.meet(a, b); })) !=
              pointwise(tp, tr, [&](Elem a, Elem b) { return h.meet(a, b); }))
            return bad("meet");
          if (reindex(m.f, pointwise(p, r, [&](Elem a, Elem b) { return h.join(a, b); })) !=
              pointwise(tp, tr, [&](Elem a, Elem b) { return h.join(a, b); }))
            return bad("join");
          if (reindex(m.f, pointwise(p, r, [&](Elem a, Elem b) { return h.imp(a, b); })) !=
              pointwise(tp, tr, [&](Elem a, Elem b) { return h.imp(a, b); }))
            return bad("imp");
        }
      }
      if (reindex(m.f, constant_predicate(m.f.target, h.bot())) != constant_predicate(m.f.source, h.bot()) ||
          reindex(m.f, constant_predicate(m.f.target, h.top())) != constant_predicate(m.f.source, h.top()))
        return json{{"op", "bounds"}, {"map", mname(m.f)}};
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"instances", instances}};

  report.timed("tripos.exists.adjunction", [&]() -> std::optional<json> {
    instances = 0;
    for (const auto& m : maps) {
      auto ps = sweep(m.f.source);
      auto qs = sweep(m.f.target);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const Predicate p = ps[i];
        const Predicate ep = q.exists(h, m.f, p);
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const Predicate r = qs[j];
          ++instances;
          if (predicate_leq(h, ep, r) != predicate_leq(h, p, reindex(m.f, r)))
            return json{{"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)},
                        {"exists_p", pname(ep)}};
        }
      }
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"instances", instances}};

  report.timed("tripos.forall.adjunction", [&]() -> std::optional<json> {
    instances = 0;
    for (const auto& m : maps) {
      auto ps = sweep(m.f.source);
      auto qs = sweep(m.f.target);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const Predicate p = ps[i];
        const Predicate ap = q.forall(h, m.f, p);
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const Predicate r = qs[j];
          ++instances;
          if (predicate_leq(h, reindex(m.f, r), p) != predicate_leq(h, r, ap))
            return json{{"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)},
                        {"forall_p", pname(ap)}};
        }
      }
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"instances", instances}};

  report.timed("tripos.monotonicity", [&]() -> std::optional<json> {
    for (const auto& m : maps) {
      auto ps = sweep(m.f.source);
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
          const Predicate p = ps[i], r = ps[j];
          if (!predicate_leq(h, p, r)) continue;
          if (!predicate_leq(h, q.exists(h, m.f, p), q.exists(h, m.f, r)))
            return json{{"op", "exists"}, {"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)}};
          if (!predicate_leq(h, q.forall(h, m.f, p), q.forall(h, m.f, r)))
            return json{{"op", "forall"}, {"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)}};
        }
      auto qs = sweep(m.f.target);
      for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const Predicate p = qs[i], r = qs[j];
          if (predicate_leq(h, p, r) && !predicate_leq(h, reindex(m.f, p), reindex(m.f, r)))
            return json{{"op", "reindex"}, {"map", mname(m.f)}, {"p", pname(p)}, {"q", pname(r)}};
        }
    }
    return std::nullopt;
  });

  report.timed("tripos.frobenius_chain", [&]() -> std::optional<json> {
    for (const auto& m : maps) {
      auto qs = sweep(m.f.target);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        const Predicate r = qs[i];
        const Predicate tr = reindex(m.f, r);
        if (!predicate_leq(h, q.exists(h, m.f, tr), r))
          return json{{"law", "exists_reindex_below_id"}, {"map", mname(m.f)}, {"q", pname(r)}};
        if (!predicate_leq(h, r, q.forall(h, m.f, tr)))
          return json{{"law", "id_below_forall_reindex"}, {"map", mname(m.f)}, {"q", pname(r)}};
      }
    }
    return std::nullopt;
  });

  report.timed("tripos.reindex.functoriality", [&]() -> std::optional<json> {
    for (const auto& s : sets) {
      auto ps = sweep(s);
      const FinMap id = identity_map(s);
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (reindex(id, ps[i]) != ps[i]) return json{{"law", "identity"}, {"p", pname(ps[i])}};
    }
    for (const auto& f : maps)
      for (const auto& g : maps) {
        if (f.tgt != g.src) continue;
        const FinMap gf = compose(g.f, f.f);
        auto ps = sweep(g.f.target);
        for (std::size_t i = 0; i < ps.size(); ++i) {
          const Predicate p = ps[i];
          if (reindex(gf, p) != reindex(f.f, reindex(g.f, p)))
            return json{{"law", "composition"}, {"f", mname(f.f)}, {"g", mname(g.f)}, {"p", pname(p)}};
        }
      }
    return std::nullopt;
  });

  // ∃_{f×id_C} ∘ T(id_A×g) = T(id_B×g) ∘ ∃_{f×id_D} : T(A×D) → T(B×C)
  report.timed("tripos.beck_chevalley", [&]() -> std::optional<json> {
    instances = 0;
    for (const auto& f : maps)
      for (const auto& g : maps) {
        const FinSetObj& a = sets[f.src];
        const FinSetObj& b = sets[f.tgt];
        const FinSetObj& c = sets[g.src];
        const FinSetObj& d = sets[g.tgt];
        const FinMap f_id_c = product_map(f.f, identity_map(c));
        const FinMap f_id_d = product_map(f.f, identity_map(d));
        const FinMap id_a_g = product_map(identity_map(a), g.f);
        const FinMap id_b_g = product_map(identity_map(b), g.f);
        auto ps = sweep(product(a, d));
        for (std::size_t i = 0; i < ps.size(); ++i) {
          const Predicate p = ps[i];
          ++instances;
          const Predicate lhs = q.exists(h, f_id_c, reindex(id_a_g, p));
          const Predicate rhs = reindex(id_b_g, q.exists(h, f_id_d, p));
          if (lhs != rhs)
            return json{{"f", mname(f.f)}, {"g", mname(g.f)}, {"p", pname(p)},
                        {"lhs", pname(lhs)}, {"rhs", pname(rhs)}};
        }
      }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"instances", instances}};

  report.timed("tripos.generic_predicate", [&]() -> std::optional<json> {
    instances = 0;
    for (const auto& x : sets) {
      const PowerObject po = power_object(h, x);
      for (const auto& y : sets) {
        auto alphas = sweep(product(y, x));
        for (std::size_t i = 0; i < alphas.size(); ++i) {
          const Predicate alpha = alphas[i];
          ++instances;
          const FinMap a = classify(h, po, y, alpha);
          if (reindex(product_map(a, identity_map(x)), po.eval) != alpha)
            return json{{"x", x.size()}, {"y", y.size()}, {"alpha", pname(alpha)}};
        }
      }
    }
    return std::nullopt;
  });
  report.checks().back().detail = json{{"instances", instances}};

  for (auto& r : report.checks())
    if (r.detail.is_null()) r.detail = json::object();
  report.checks().front().detail["sampled"] = any_sampled;
  return report;
}

}  // namespace topos
