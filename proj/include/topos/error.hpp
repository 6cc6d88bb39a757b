#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace topos {

using json = nlohmann::ordered_json;

enum class ErrorCode {
  not_a_poset,
  not_a_lattice,
  no_residuation,
  unknown_element,
  duplicate_element,
  base_mismatch,
  bound_exceeded,
  carrier_mismatch,
  not_composable,
  invalid_result,
  shape_mismatch,
  not_mono,
  hom_bound_exceeded,
  not_exact_instance,
  resolution_unavailable,
  not_finitely_continuous,
  no_representation,
  parse_error,
  validation_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_a_poset: return "NotAPoset";
    case ErrorCode::not_a_lattice: return "NotALattice";
    case ErrorCode::no_residuation: return "NoResiduation";
    case ErrorCode::unknown_element: return "UnknownElement";
    case ErrorCode::duplicate_element: return "DuplicateElement";
    case ErrorCode::base_mismatch: return "BaseMismatch";
    case ErrorCode::bound_exceeded: return "BoundExceeded";
    case ErrorCode::carrier_mismatch: return "CarrierMismatch";
    case ErrorCode::not_composable: return "NotComposable";
    case ErrorCode::invalid_result: return "InvalidResult";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::not_mono: return "NotMono";
    case ErrorCode::hom_bound_exceeded: return "HomBoundExceeded";
    case ErrorCode::not_exact_instance: return "NotExactInstance";
    case ErrorCode::resolution_unavailable: return "ResolutionUnavailable";
    case ErrorCode::not_finitely_continuous: return "NotFinitelyContinuous";
    case ErrorCode::no_representation: return "NoRepresentation";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::validation_error: return "ValidationError";
  }
  return "Unknown";
}

// Every failure in the library is reported through this type. The optional
// witness carries the structured counterexample that triggered the error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, json witness = nullptr)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  json witness_;
};

}  // namespace topos
