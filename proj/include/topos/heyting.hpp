#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topos/error.hpp"
#include "topos/report.hpp"

namespace topos {

// Index of an element in a finite Heyting algebra's declared element order.
using Elem = std::uint16_t;

// Raw operation tables. A HeytingAlgebra always holds tables that passed
// build_heyting; free-standing tables may be arbitrary (validate_heyting
// inspects them without assuming anything).
struct HeytingTables {
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq;  // row-major n*n
  std::vector<Elem> meet;
  std::vector<Elem> join;
  std::vector<Elem> imp;
  Elem bot = 0;
  Elem top = 0;

  std::size_t size() const { return names.size(); }
  std::size_t cell(Elem a, Elem b) const { return std::size_t{a} * size() + b; }
};

class HeytingAlgebra {
 public:
  HeytingAlgebra() = default;

  std::size_t size() const { return t_.size(); }
  const std::vector<std::string>& names() const { return t_.names; }
  const std::string& name(Elem a) const { return t_.names.at(a); }
  const HeytingTables& tables() const { return t_; }

  Elem element(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      throw Error(ErrorCode::unknown_element, "no element named '" + std::string(name) + "'",
                  json{{"element", name}});
    return it->second;
  }

  bool contains(Elem a) const { return a < size(); }

  Elem bot() const { return t_.bot; }
  Elem top() const { return t_.top; }
  bool leq(Elem a, Elem b) const { return t_.leq[t_.cell(a, b)] != 0; }
  Elem meet(Elem a, Elem b) const { return t_.meet[t_.cell(a, b)]; }
  Elem join(Elem a, Elem b) const { return t_.join[t_.cell(a, b)]; }
  Elem imp(Elem a, Elem b) const { return t_.imp[t_.cell(a, b)]; }
  Elem iff(Elem a, Elem b) const { return meet(imp(a, b), imp(b, a)); }
  Elem neg(Elem a) const { return imp(a, t_.bot); }

  friend bool operator==(const HeytingAlgebra& a, const HeytingAlgebra& b) {
    return a.t_.names == b.t_.names && a.t_.leq == b.t_.leq;
  }

 private:
  friend HeytingAlgebra build_heyting(const std::vector<std::string>&,
                                      const std::vector<std::pair<std::string, std::string>>&);

  HeytingTables t_;
  std::unordered_map<std::string, Elem> index_;
};

namespace detail {

inline std::optional<Elem> greatest_lower_bound(const HeytingTables& t, Elem a, Elem b) {
  const auto n = static_cast<Elem>(t.size());
  for (Elem g = 0; g < n; ++g) {
    if (!t.leq[t.cell(g, a)] || !t.leq[t.cell(g, b)]) continue;
    bool greatest = true;
    for (Elem c = 0; c < n && greatest; ++c)
      if (t.leq[t.cell(c, a)] && t.leq[t.cell(c, b)] && !t.leq[t.cell(c, g)]) greatest = false;
    if (greatest) return g;
  }
  return std::nullopt;
}

inline std::optional<Elem> least_upper_bound(const HeytingTables& t, Elem a, Elem b) {
  const auto n = static_cast<Elem>(t.size());
  for (Elem l = 0; l < n; ++l) {
    if (!t.leq[t.cell(a, l)] || !t.leq[t.cell(b, l)]) continue;
    bool least = true;
    for (Elem c = 0; c < n && least; ++c)
      if (t.leq[t.cell(a, c)] && t.leq[t.cell(b, c)] && !t.leq[t.cell(l, c)]) least = false;
    if (least) return l;
  }
  return std::nullopt;
}

inline json triple(const HeytingTables& t, Elem c, Elem a, Elem b) {
  return json{{"c", t.names[c]}, {"a", t.names[a]}, {"b", t.names[b]}};
}

// First (c, a, b) in lexicographic declared order where c∧a ≤ b and
// c ≤ a→b disagree.
inline std::optional<json> residuation_witness(const HeytingTables& t) {
  const auto n = static_cast<Elem>(t.size());
  for (Elem c = 0; c < n; ++c)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const bool lhs = t.leq[t.cell(t.meet[t.cell(c, a)], b)] != 0;
        const bool rhs = t.leq[t.cell(c, t.imp[t.cell(a, b)])] != 0;
        if (lhs != rhs) return triple(t, c, a, b);
      }
  return std::nullopt;
}

}  // namespace detail

// Builds the algebra from element names and generating order pairs. The
// reflexive-transitive closure of the pairs must be a lattice whose
// derived implication satisfies residuation.
inline HeytingAlgebra build_heyting(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& order_pairs) {
  HeytingAlgebra h;
  HeytingTables& t = h.t_;
  if (elements.empty())
    throw Error(ErrorCode::not_a_lattice, "an empty carrier has no bottom or top");
  if (elements.size() > 0xFFFF) throw Error(ErrorCode::bound_exceeded, "too many elements");
  t.names = elements;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!h.index_.emplace(elements[i], static_cast<Elem>(i)).second)
      throw Error(ErrorCode::duplicate_element, "element '" + elements[i] + "' declared twice",
                  json{{"element", elements[i]}});
  }
  const std::size_t n = t.size();
  t.leq.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) t.leq[i * n + i] = 1;
  for (const auto& [lo, hi] : order_pairs) t.leq[t.cell(h.element(lo), h.element(hi))] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (t.leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (t.leq[k * n + j]) t.leq[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t.leq[i * n + j] && t.leq[j * n + i])
        throw Error(ErrorCode::not_a_poset,
                    "'" + t.names[i] + "' and '" + t.names[j] + "' are mutually below each other",
                    json{{"a", t.names[i]}, {"b", t.names[j]}});

  t.meet.assign(n * n, 0);
  t.join.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      auto g = detail::greatest_lower_bound(t, a, b);
      if (!g)
        throw Error(ErrorCode::not_a_lattice, "no meet of '" + t.names[a] + "' and '" + t.names[b] + "'",
                    json{{"operation", "meet"}, {"a", t.names[a]}, {"b", t.names[b]}});
      auto l = detail::least_upper_bound(t, a, b);
      if (!l)
        throw Error(ErrorCode::not_a_lattice, "no join of '" + t.names[a] + "' and '" + t.names[b] + "'",
                    json{{"operation", "join"}, {"a", t.names[a]}, {"b", t.names[b]}});
      t.meet[t.cell(a, b)] = *g;
      t.join[t.cell(a, b)] = *l;
    }

  t.bot = 0;
  t.top = 0;
  for (Elem a = 1; a < n; ++a) {
    t.bot = t.meet[t.cell(t.bot, a)];
    t.top = t.join[t.cell(t.top, a)];
  }
  for (Elem a = 0; a < n; ++a)
    if (!t.leq[t.cell(t.bot, a)] || !t.leq[t.cell(a, t.top)])
      throw Error(ErrorCode::not_a_lattice, "no global bottom/top");

  t.imp.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem acc = t.bot;
      for (Elem c = 0; c < n; ++c)
        if (t.leq[t.cell(t.meet[t.cell(c, a)], b)]) acc = t.join[t.cell(acc, c)];
      t.imp[t.cell(a, b)] = acc;
    }

  if (auto w = detail::residuation_witness(t))
    throw Error(ErrorCode::no_residuation, "residuation fails (the lattice is not distributive)", *w);
  return h;
}

inline Elem implication(const HeytingAlgebra& h, Elem a, Elem b) {
  if (!h.contains(a) || !h.contains(b))
    throw Error(ErrorCode::unknown_element, "element index outside the carrier");
  return h.imp(a, b);
}

inline Elem implication(const HeytingAlgebra& h, std::string_view a, std::string_view b) {
  return h.imp(h.element(a), h.element(b));
}

// Checks every Heyting law on raw tables and reports the first
// counterexample of each under lexicographic declared-order enumeration.
inline Report validate_heyting(const HeytingTables& t) {
  Report report;
  const auto n = static_cast<Elem>(t.size());
  auto nm = [&](Elem a) { return t.names[a]; };
  auto leq = [&](Elem a, Elem b) { return t.leq[t.cell(a, b)] != 0; };
  auto meet = [&](Elem a, Elem b) { return t.meet[t.cell(a, b)]; };
  auto join = [&](Elem a, Elem b) { return t.join[t.cell(a, b)]; };

  report.timed("heyting.order.partial_order", [&]() -> std::optional<json> {
    for (Elem a = 0; a < n; ++a) {
      if (!leq(a, a)) return json{{"law", "reflexivity"}, {"a", nm(a)}};
      for (Elem b = 0; b < n; ++b) {
        if (a != b && leq(a, b) && leq(b, a))
          return json{{"law", "antisymmetry"}, {"a", nm(a)}, {"b", nm(b)}};
        for (Elem c = 0; c < n; ++c)
          if (leq(a, b) && leq(b, c) && !leq(a, c))
            return json{{"law", "transitivity"}, {"a", nm(a)}, {"b", nm(b)}, {"c", nm(c)}};
      }
    }
    return std::nullopt;
  });

  report.timed("heyting.lattice.meet_is_glb", [&]() -> std::optional<json> {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem m = meet(a, b);
        if (!leq(m, a) || !leq(m, b)) return json{{"a", nm(a)}, {"b", nm(b)}, {"meet", nm(m)}};
        for (Elem c = 0; c < n; ++c)
          if (leq(c, a) && leq(c, b) && !leq(c, m))
            return json{{"a", nm(a)}, {"b", nm(b)}, {"lower_bound", nm(c)}};
      }
    return std::nullopt;
  });

  report.timed("heyting.lattice.join_is_lub", [&]() -> std::optional<json> {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem j = join(a, b);
        if (!leq(a, j) || !leq(b, j)) return json{{"a", nm(a)}, {"b", nm(b)}, {"join", nm(j)}};
        for (Elem c = 0; c < n; ++c)
          if (leq(a, c) && leq(b, c) && !leq(j, c))
            return json{{"a", nm(a)}, {"b", nm(b)}, {"upper_bound", nm(c)}};
      }
    return std::nullopt;
  });

  report.timed("heyting.lattice.algebraic_laws", [&]() -> std::optional<json> {
    for (Elem a = 0; a < n; ++a) {
      if (meet(a, a) != a) return json{{"law", "meet_idempotent"}, {"a", nm(a)}};
      if (join(a, a) != a) return json{{"law", "join_idempotent"}, {"a", nm(a)}};
      for (Elem b = 0; b < n; ++b) {
        if (meet(a, b) != meet(b, a)) return json{{"law", "meet_commutative"}, {"a", nm(a)}, {"b", nm(b)}};
        if (join(a, b) != join(b, a)) return json{{"law", "join_commutative"}, {"a", nm(a)}, {"b", nm(b)}};
        if (meet(a, join(a, b)) != a) return json{{"law", "absorption_meet"}, {"a", nm(a)}, {"b", nm(b)}};
        if (join(a, meet(a, b)) != a) return json{{"law", "absorption_join"}, {"a", nm(a)}, {"b", nm(b)}};
        for (Elem c = 0; c < n; ++c) {
          if (meet(meet(a, b), c) != meet(a, meet(b, c)))
            return json{{"law", "meet_associative"}, {"a", nm(a)}, {"b", nm(b)}, {"c", nm(c)}};
          if (join(join(a, b), c) != join(a, join(b, c)))
            return json{{"law", "join_associative"}, {"a", nm(a)}, {"b", nm(b)}, {"c", nm(c)}};
        }
      }
    }
    return std::nullopt;
  });

  report.timed("heyting.bounds", [&]() -> std::optional<json> {
    if (n == 0) return json{{"law", "nonempty"}};
    for (Elem a = 0; a < n; ++a) {
      if (!leq(t.bot, a)) return json{{"law", "bot_below"}, {"a", nm(a)}};
      if (!leq(a, t.top)) return json{{"law", "top_above"}, {"a", nm(a)}};
    }
    return std::nullopt;
  });

  report.timed("heyting.residuation", [&]() { return detail::residuation_witness(t); });

  report.timed("heyting.distributivity", [&]() -> std::optional<json> {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
            return json{{"a", nm(a)}, {"b", nm(b)}, {"c", nm(c)}};
    return std::nullopt;
  });
  return report;
}

inline Report validate_heyting(const HeytingAlgebra& h) { return validate_heyting(h.tables()); }

}  // namespace topos
