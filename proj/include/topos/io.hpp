#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "topos/category.hpp"
#include "topos/error.hpp"
#include "topos/exact_completion.hpp"
#include "topos/fixtures.hpp"
#include "topos/heyting.hpp"
#include "topos/per_topos.hpp"
#include "topos/tripos.hpp"

// File formats. Every loader reports malformed input as ParseError naming
// the file and the line or field, and invariant violations as
// ValidationError.

namespace topos::io {

namespace fs = std::filesystem;

struct Source {
  std::string label;  // file path or "<string>"
  fs::path dir;       // for resolving relative references
};

[[noreturn]] inline void field_error(const Source& src, const std::string& field, const std::string& what) {
  throw Error(ErrorCode::parse_error, src.label + ": field '" + field + "': " + what,
              json{{"file", src.label}, {"field", field}});
}

inline json parse_text(const std::string& text, const Source& src) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + at, '\n'));
    throw Error(ErrorCode::parse_error, src.label + ":" + std::to_string(line) + ": malformed JSON",
                json{{"file", src.label}, {"line", line}});
  }
}

inline std::pair<json, Source> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  const Source src{path.string(), path.parent_path()};
  if (!in)
    throw Error(ErrorCode::parse_error, src.label + ": cannot open file", json{{"file", src.label}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return {parse_text(buf.str(), src), src};
}

inline void write_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::parse_error, path.string() + ": cannot write file");
  out << j.dump(2) << '\n';
}

inline const json& member(const json& j, const char* key, const Source& src) {
  if (!j.is_object()) field_error(src, key, "enclosing value is not an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(src, key, "missing");
  return *it;
}

inline std::vector<std::string> string_array(const json& j, const std::string& field, const Source& src) {
  if (!j.is_array()) field_error(src, field, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) field_error(src, field, "expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline FinSetObj finset_field(const json& j, const std::string& field, const Source& src) {
  try {
    return FinSetObj(string_array(j, field, src));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::duplicate_element) field_error(src, field, "duplicate element");
    throw;
  }
}

inline Elem element_of(const HeytingAlgebra& h, const json& v, const std::string& field, const Source& src) {
  if (!v.is_string()) field_error(src, field, "expected an algebra element name");
  const auto name = v.get<std::string>();
  for (Elem a = 0; a < h.size(); ++a)
    if (h.name(a) == name) return a;
  field_error(src, field, "unknown algebra element '" + name + "'");
}

// ---------------------------------------------------------------------------
// Algebras: {"elements": [...], "leq": [[lo, hi], ...]}

inline fixtures::AlgebraSpec parse_algebra_spec(const json& j, const Source& src) {
  fixtures::AlgebraSpec spec;
  spec.elements = string_array(member(j, "elements", src), "elements", src);
  const json& leq = member(j, "leq", src);
  if (!leq.is_array()) field_error(src, "leq", "expected an array of pairs");
  for (const auto& p : leq) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      field_error(src, "leq", "expected a pair of element names");
    spec.leq.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return spec;
}

inline HeytingAlgebra build_from_spec(const fixtures::AlgebraSpec& spec, const Source& src) {
  for (const auto& [lo, hi] : spec.leq)
    for (const auto* n : {&lo, &hi})
      if (std::find(spec.elements.begin(), spec.elements.end(), *n) == spec.elements.end())
        field_error(src, "leq", "unknown element '" + *n + "'");
  return build_heyting(spec.elements, spec.leq);
}

inline HeytingAlgebra parse_algebra(const std::string& text, const std::string& label = "<string>") {
  const Source src{label, {}};
  return build_from_spec(parse_algebra_spec(parse_text(text, src), src), src);
}

inline fixtures::AlgebraSpec load_algebra_spec(const fs::path& path) {
  auto [j, src] = read_file(path);
  return parse_algebra_spec(j, src);
}

inline HeytingAlgebra load_algebra(const fs::path& path) {
  auto [j, src] = read_file(path);
  return build_from_spec(parse_algebra_spec(j, src), src);
}

// A bundled name or a path.
inline fixtures::AlgebraSpec resolve_algebra_spec(const std::string& name_or_path) {
  if (fixtures::is_bundled(name_or_path)) return fixtures::bundled_spec(name_or_path);
  return load_algebra_spec(name_or_path);
}

inline HeytingAlgebra resolve_algebra(const std::string& name_or_path) {
  if (fixtures::is_bundled(name_or_path)) return fixtures::bundled(name_or_path);
  return load_algebra(name_or_path);
}

// Closure-normalized: every pair a ≤ b in declared order.
inline json algebra_json(const HeytingAlgebra& h) {
  json leq = json::array();
  for (Elem a = 0; a < h.size(); ++a)
    for (Elem b = 0; b < h.size(); ++b)
      if (h.leq(a, b)) leq.push_back(json::array({h.name(a), h.name(b)}));
  return json{{"elements", h.names()}, {"leq", std::move(leq)}};
}

inline std::string save_algebra(const HeytingAlgebra& h) { return algebra_json(h).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Predicates: {"base": [...], "values": {name: element}}

inline Predicate parse_predicate(const HeytingAlgebra& h, const json& j, const Source& src) {
  const FinSetObj base = finset_field(member(j, "base", src), "base", src);
  const json& values = member(j, "values", src);
  if (!values.is_object()) field_error(src, "values", "expected a map from base elements to algebra elements");
  std::vector<Elem> v(base.size());
  std::vector<char> seen(base.size(), 0);
  for (const auto& [k, val] : values.items()) {
    std::size_t i = 0;
    while (i < base.size() && base.name(i) != k) ++i;
    if (i == base.size()) field_error(src, "values." + k, "not a base element");
    v[i] = element_of(h, val, "values." + k, src);
    seen[i] = 1;
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!seen[i]) field_error(src, "values." + base.name(i), "missing");
  return Predicate{base, std::move(v)};
}

inline json predicate_json(const HeytingAlgebra& h, const Predicate& p) {
  json values = json::object();
  for (std::size_t i = 0; i < p.base.size(); ++i) values[p.base.name(i)] = h.name(p(i));
  return json{{"base", p.base.names()}, {"values", std::move(values)}};
}

// ---------------------------------------------------------------------------
// Relations and PERs: {"carrier": [...], "matrix": flat row-major or nested}

inline Relation parse_matrix(const HeytingAlgebra& h, const json& m, const FinSetObj& rows, const FinSetObj& cols,
                             const std::string& field, const Source& src) {
  if (!m.is_array()) field_error(src, field, "expected an array");
  std::vector<Elem> cells;
  const bool nested = !m.empty() && m.front().is_array();
  if (nested) {
    if (m.size() != rows.size()) field_error(src, field, "expected " + std::to_string(rows.size()) + " rows");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_array() || m[i].size() != cols.size())
        field_error(src, field + "[" + std::to_string(i) + "]", "expected " + std::to_string(cols.size()) + " entries");
      for (std::size_t k = 0; k < m[i].size(); ++k)
        cells.push_back(element_of(h, m[i][k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]", src));
    }
  } else {
    if (m.size() != rows.size() * cols.size())
      field_error(src, field, "expected " + std::to_string(rows.size() * cols.size()) + " entries");
    for (std::size_t k = 0; k < m.size(); ++k)
      cells.push_back(element_of(h, m[k], field + "[" + std::to_string(k) + "]", src));
  }
  return Relation{rows, cols, std::move(cells)};
}

inline json matrix_json(const HeytingAlgebra& h, const Relation& r) {
  json flat = json::array();
  for (Elem v : r.m) flat.push_back(h.name(v));
  return flat;
}

inline PerObject parse_per(const HeytingAlgebra& h, const json& j, const Source& src) {
  const FinSetObj carrier = finset_field(member(j, "carrier", src), "carrier", src);
  Relation e = parse_matrix(h, member(j, "matrix", src), carrier, carrier, "matrix", src);
  if (auto v = validate_per(h, e); !v) {
    json w = v.to_json(e);
    w["file"] = src.label;
    throw Error(ErrorCode::validation_error,
                src.label + ": matrix is not a partial equivalence relation (" + v.law + " fails" +
                    (v.entry ? " at (" + carrier.name(v.entry->row) + "," + carrier.name(v.entry->col) + ")" : "") + ")",
                std::move(w));
  }
  return PerObject{std::move(e)};
}

inline PerObject load_per(const HeytingAlgebra& h, const fs::path& path) {
  auto [j, src] = read_file(path);
  return parse_per(h, j, src);
}

inline json per_json(const HeytingAlgebra& h, const PerObject& a) {
  return json{{"carrier", a.carrier().names()}, {"matrix", matrix_json(h, a.e)}};
}

// A PER given inline or as a path relative to the referring file.
inline PerObject per_reference(const HeytingAlgebra& h, const json& j, const std::string& field, const Source& src) {
  if (j.is_string()) return load_per(h, src.dir / j.get<std::string>());
  if (!j.is_object()) field_error(src, field, "expected a PER record or a file path");
  return parse_per(h, j, Source{src.label + ":" + field, src.dir});
}

// FunRel: {"dom": PER or path, "cod": PER or path, "matrix": ...}
inline FunRel parse_funrel(const HeytingAlgebra& h, const json& j, const Source& src) {
  const PerObject dom = per_reference(h, member(j, "dom", src), "dom", src);
  const PerObject cod = per_reference(h, member(j, "cod", src), "cod", src);
  Relation f = parse_matrix(h, member(j, "matrix", src), dom.carrier(), cod.carrier(), "matrix", src);
  if (auto v = validate_funrel(h, f, dom, cod); !v) {
    json w = v.to_json(f);
    throw Error(ErrorCode::validation_error, src.label + ": relation is not functional", json{{"file", src.label}, {"failures", w}});
  }
  return FunRel{dom, cod, std::move(f)};
}

inline FunRel load_funrel(const HeytingAlgebra& h, const fs::path& path) {
  auto [j, src] = read_file(path);
  return parse_funrel(h, j, src);
}

inline json funrel_json(const HeytingAlgebra& h, const FunRel& f) {
  return json{{"dom", per_json(h, f.dom)}, {"cod", per_json(h, f.cod)}, {"matrix", matrix_json(h, f.rel)}};
}

// ---------------------------------------------------------------------------
// Pseudoequivalence spans.
//   finset: {"category": "finset", "X0": [...], "X1": [...], "d0": {x1: x0}, "d1": {...}}
//   per:    {"category": "per", "X0": PER, "X1": PER, "d0": matrix, "d1": matrix}

inline std::string pseq_category(const json& j, const Source& src) {
  const json& c = member(j, "category", src);
  if (!c.is_string() || (c != "finset" && c != "per")) field_error(src, "category", "expected \"finset\" or \"per\"");
  return c.get<std::string>();
}

inline FinMap parse_graph(const json& j, const FinSetObj& source, const FinSetObj& target, const std::string& field,
                          const Source& src) {
  if (!j.is_object()) field_error(src, field, "expected a map from X1 elements to X0 elements");
  std::vector<std::size_t> g(source.size(), target.size());
  for (const auto& [k, v] : j.items()) {
    std::size_t i = 0;
    while (i < source.size() && source.name(i) != k) ++i;
    if (i == source.size()) field_error(src, field + "." + k, "not an element of X1");
    if (!v.is_string()) field_error(src, field + "." + k, "expected an element name");
    std::size_t t = 0;
    while (t < target.size() && target.name(t) != v.get<std::string>()) ++t;
    if (t == target.size()) field_error(src, field + "." + k, "not an element of X0");
    g[i] = t;
  }
  for (std::size_t i = 0; i < source.size(); ++i)
    if (g[i] == target.size()) field_error(src, field + "." + source.name(i), "missing");
  return FinMap{source, target, std::move(g)};
}

inline PseqSpan<FinSetCategory> parse_finset_pseq(const json& j, const Source& src) {
  if (pseq_category(j, src) != "finset") field_error(src, "category", "expected \"finset\"");
  const FinSetObj x0 = finset_field(member(j, "X0", src), "X0", src);
  const FinSetObj x1 = finset_field(member(j, "X1", src), "X1", src);
  return {x1, x0, parse_graph(member(j, "d0", src), x1, x0, "d0", src),
          parse_graph(member(j, "d1", src), x1, x0, "d1", src)};
}

inline PseqSpan<PerCategory> parse_per_pseq(const HeytingAlgebra& h, const json& j, const Source& src) {
  if (pseq_category(j, src) != "per") field_error(src, "category", "expected \"per\"");
  const PerObject x0 = per_reference(h, member(j, "X0", src), "X0", src);
  const PerObject x1 = per_reference(h, member(j, "X1", src), "X1", src);
  auto leg = [&](const char* name) {
    Relation r = parse_matrix(h, member(j, name, src), x1.carrier(), x0.carrier(), name, src);
    if (auto v = validate_funrel(h, r, x1, x0); !v)
      throw Error(ErrorCode::validation_error, src.label + ": " + name + " is not functional",
                  json{{"file", src.label}, {"field", name}, {"failures", v.to_json(r)}});
    return FunRel{x1, x0, std::move(r)};
  };
  return {x1, x0, leg("d0"), leg("d1")};
}

inline json finset_pseq_json(const PseqSpan<FinSetCategory>& p) {
  return json{{"category", "finset"}, {"X0", p.x0.names()}, {"X1", p.x1.names()},
              {"d0", to_json(p.d0)},   {"d1", to_json(p.d1)}};
}

inline json per_pseq_json(const HeytingAlgebra& h, const PseqSpan<PerCategory>& p) {
  return json{{"category", "per"}, {"X0", per_json(h, p.x0)}, {"X1", per_json(h, p.x1)},
              {"d0", matrix_json(h, p.d0.rel)}, {"d1", matrix_json(h, p.d1.rel)}};
}

}  // namespace topos::io
