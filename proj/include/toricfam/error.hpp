#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricfam {

enum class Errc {
  DimensionMismatch,
  NotInCone,
  SeriesMismatch,
  NotPrime,
  ReducibleModulus,
  CountMismatch,
  Infeasible,
  DimensionDeficient,
  RankOverflow,
  NotConvenient,
  PoleOnDomain,
  DegreeViolation,
  NonIntegralCoefficient,
  WeightOne,
  EmptyDeformation,
  ExtTooLarge,
  DegreeMismatch,
  UnboundedRequest,
  FiberDegenerate,
  UnsupportedOp,
  NoSolution,
  Unverified,
  Parse,
  Validation,
  BudgetExceeded,
};

std::string_view errc_name(Errc code);

/// Library-wide exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotInCone: return "NotInCone";
    case Errc::SeriesMismatch: return "SeriesMismatch";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::Infeasible: return "Infeasible";
    case Errc::DimensionDeficient: return "DimensionDeficient";
    case Errc::RankOverflow: return "RankOverflow";
    case Errc::NotConvenient: return "NotConvenient";
    case Errc::PoleOnDomain: return "PoleOnDomain";
    case Errc::DegreeViolation: return "DegreeViolation";
    case Errc::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case Errc::WeightOne: return "WeightOne";
    case Errc::EmptyDeformation: return "EmptyDeformation";
    case Errc::ExtTooLarge: return "ExtTooLarge";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::UnboundedRequest: return "UnboundedRequest";
    case Errc::FiberDegenerate: return "FiberDegenerate";
    case Errc::UnsupportedOp: return "UnsupportedOp";
    case Errc::NoSolution: return "NoSolution";
    case Errc::Unverified: return "Unverified";
    case Errc::Parse: return "Parse";
    case Errc::Validation: return "Validation";
    case Errc::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace toricfam
