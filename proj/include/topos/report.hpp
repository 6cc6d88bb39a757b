#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topos/error.hpp"

namespace topos {

enum class Status { pass, fail, skipped };

constexpr std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

struct CheckResult {
  std::string id;
  Status status = Status::pass;
  json witness = nullptr;  // required when status == fail
  json detail = nullptr;   // counts and other deterministic diagnostics
  double elapsed_ms = 0.0;
};

// An ordered collection of law checks. Check ids are unique within a report.
class Report {
 public:
  void add(CheckResult r) {
    if (r.status == Status::fail && r.witness.is_null()) r.witness = json::object();
    checks_.push_back(std::move(r));
  }

  void pass(std::string id, json detail = nullptr) {
    add({std::move(id), Status::pass, nullptr, std::move(detail), 0.0});
  }
  void fail(std::string id, json witness, json detail = nullptr) {
    add({std::move(id), Status::fail, std::move(witness), std::move(detail), 0.0});
  }
  void skip(std::string id, json detail = nullptr) {
    add({std::move(id), Status::skipped, nullptr, std::move(detail), 0.0});
  }

  // Runs `body`, which returns the first counterexample or nullopt, and
  // records the outcome with its wall time.
  template <class Body>
  void timed(std::string id, Body&& body, json detail = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<json> witness = body();
    const auto stop = std::chrono::steady_clock::now();
    CheckResult r{std::move(id), witness ? Status::fail : Status::pass,
                  witness ? std::move(*witness) : json(nullptr), std::move(detail),
                  std::chrono::duration<double, std::milli>(stop - start).count()};
    add(std::move(r));
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (CheckResult r : other.checks_) {
      r.id = prefix + r.id;
      add(std::move(r));
    }
  }

  bool ok() const {
    return std::none_of(checks_.begin(), checks_.end(),
                        [](const CheckResult& r) { return r.status == Status::fail; });
  }

  const CheckResult* find(std::string_view id) const {
    for (const auto& r : checks_)
      if (r.id == id) return &r;
    return nullptr;
  }

  bool passed(std::string_view id) const {
    const auto* r = find(id);
    return r != nullptr && r->status == Status::pass;
  }

  const std::vector<CheckResult>& checks() const { return checks_; }
  std::vector<CheckResult>& checks() { return checks_; }

  void sort_by_id() {
    std::stable_sort(checks_.begin(), checks_.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  }

  json to_json(bool with_timing = true) const {
    json out = json::array();
    for (const auto& r : checks_) {
      json entry;
      entry["check"] = r.id;
      entry["status"] = std::string(to_string(r.status));
      if (!r.witness.is_null()) entry["witness"] = r.witness;
      if (!r.detail.is_null()) entry["detail"] = r.detail;
      if (with_timing) entry["elapsed_ms"] = r.elapsed_ms;
      out.push_back(std::move(entry));
    }
    return out;
  }

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace topos
