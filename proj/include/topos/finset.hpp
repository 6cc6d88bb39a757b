#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "topos/error.hpp"

namespace topos {

// A finite set with named elements. Copies share the name storage.
class FinSetObj {
 public:
  FinSetObj() : names_(empty_names()) {}

  explicit FinSetObj(std::vector<std::string> names) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names)
      if (!seen.insert(n).second)
        throw Error(ErrorCode::duplicate_element, "set element '" + n + "' declared twice",
                    json{{"element", n}});
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  // The standard n-element set {a, b, c, ...}.
  static FinSetObj standard(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i));
    return FinSetObj(std::move(names));
  }

  std::size_t size() const { return names_->size(); }
  bool empty() const { return names_->empty(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const { return *names_; }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return i;
    throw Error(ErrorCode::unknown_element, "no element '" + std::string(name) + "' in set",
                json{{"element", name}});
  }

  friend bool operator==(const FinSetObj& a, const FinSetObj& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  static std::shared_ptr<const std::vector<std::string>> empty_names() {
    static const auto e = std::make_shared<const std::vector<std::string>>();
    return e;
  }

  std::shared_ptr<const std::vector<std::string>> names_;
};

// Cartesian product; element (x, y) sits at index x * |Y| + y.
inline FinSetObj product(const FinSetObj& x, const FinSetObj& y) {
  std::vector<std::string> names;
  names.reserve(x.size() * y.size());
  for (const auto& a : x.names())
    for (const auto& b : y.names()) names.push_back("(" + a + "," + b + ")");
  return FinSetObj(std::move(names));
}

inline FinSetObj singleton() { return FinSetObj({"*"}); }

struct FinMap {
  FinSetObj source;
  FinSetObj target;
  std::vector<std::size_t> graph;

  std::size_t operator()(std::size_t x) const { return graph[x]; }

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.graph == b.graph && a.source == b.source && a.target == b.target;
  }
};

inline FinMap make_map(FinSetObj source, FinSetObj target, std::vector<std::size_t> graph) {
  if (graph.size() != source.size())
    throw Error(ErrorCode::validation_error, "map is not total on its source");
  for (std::size_t v : graph)
    if (v >= target.size()) throw Error(ErrorCode::validation_error, "map leaves its target");
  return FinMap{std::move(source), std::move(target), std::move(graph)};
}

inline FinMap identity_map(const FinSetObj& x) {
  std::vector<std::size_t> g(x.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return FinMap{x, x, std::move(g)};
}

// g ∘ f
inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (!(f.target == g.source)) throw Error(ErrorCode::not_composable, "map targets do not match");
  std::vector<std::size_t> out(f.graph.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.graph[f.graph[i]];
  return FinMap{f.source, g.target, std::move(out)};
}

inline bool is_injective(const FinMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (std::size_t v : f.graph) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

inline bool is_surjective(const FinMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (std::size_t v : f.graph) hit[v] = 1;
  for (char c : hit)
    if (!c) return false;
  return true;
}

inline FinMap constant_map(const FinSetObj& source, const FinSetObj& target, std::size_t value) {
  return make_map(source, target, std::vector<std::size_t>(source.size(), value));
}

// f × g : A × C → B × D
inline FinMap product_map(const FinMap& f, const FinMap& g) {
  const FinSetObj src = product(f.source, g.source);
  const FinSetObj tgt = product(f.target, g.target);
  std::vector<std::size_t> out(src.size());
  for (std::size_t a = 0; a < f.source.size(); ++a)
    for (std::size_t c = 0; c < g.source.size(); ++c)
      out[a * g.source.size() + c] = f.graph[a] * g.target.size() + g.graph[c];
  return FinMap{src, tgt, std::move(out)};
}

inline FinMap projection0(const FinSetObj& x, const FinSetObj& y) {
  std::vector<std::size_t> g(x.size() * y.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i / y.size();
  return FinMap{product(x, y), x, std::move(g)};
}

inline FinMap projection1(const FinSetObj& x, const FinSetObj& y) {
  std::vector<std::size_t> g(x.size() * y.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i % y.size();
  return FinMap{product(x, y), y, std::move(g)};
}

// Number of maps |B|^|A|, saturating at `cap + 1`.
inline std::size_t count_maps(std::size_t a, std::size_t b, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < a; ++i) {
    if (b == 0) return 0;
    if (count > cap / b) return cap + 1;
    count *= b;
  }
  return count;
}

// All maps A → B in lexicographic order of their graphs.
inline std::vector<FinMap> all_maps(const FinSetObj& a, const FinSetObj& b,
                                    std::size_t cap = 1'000'000) {
  const std::size_t total = count_maps(a.size(), b.size(), cap);
  if (total > cap)
    throw Error(ErrorCode::hom_bound_exceeded, "hom-set too large to enumerate",
                json{{"source", a.size()}, {"target", b.size()}, {"cap", cap}});
  std::vector<FinMap> out;
  out.reserve(total);
  std::vector<std::size_t> g(a.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(FinMap{a, b, g});
    for (std::size_t i = g.size(); i-- > 0;) {
      if (++g[i] < b.size()) break;
      g[i] = 0;
    }
  }
  return out;
}

inline json to_json(const FinMap& f) {
  json j = json::object();
  for (std::size_t i = 0; i < f.graph.size(); ++i) j[f.source.name(i)] = f.target.name(f.graph[i]);
  return j;
}

}  // namespace topos
