#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsbdlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using VecRef = Eigen::Ref<const Vec>;
using MatRef = Eigen::Ref<const Mat>;

/// Error categories surfaced by the library; the CLI reports them by name.
enum class ErrorKind {
  OutOfDomain,
  AmbiguousPoint,
  DomainMismatch,
  InvalidFunction,
  NonFiniteIntegrand,
  DimensionMismatch,
  NonFiniteEnergy,
  InvalidParams,
  MissingEvaluator,
  EmptySelection,
  InvalidKappa,
  DegenerateSample,
  MissingPotential,
  NotLowerValue,
  NotCertifiable,
  ConditionViolation,
  BoundarySupport,
  ExceptionalCollision,
  RecipeOutOfDomain,
  NotConvergent,
  InfeasibleGrid,
  SearchSpaceTooLarge,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::AmbiguousPoint: return "AmbiguousPoint";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidFunction: return "InvalidFunction";
    case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::MissingEvaluator: return "MissingEvaluator";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::InvalidKappa: return "InvalidKappa";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::MissingPotential: return "MissingPotential";
    case ErrorKind::NotLowerValue: return "NotLowerValue";
    case ErrorKind::NotCertifiable: return "NotCertifiable";
    case ErrorKind::ConditionViolation: return "ConditionViolation";
    case ErrorKind::BoundarySupport: return "BoundarySupport";
    case ErrorKind::ExceptionalCollision: return "ExceptionalCollision";
    case ErrorKind::RecipeOutOfDomain: return "RecipeOutOfDomain";
    case ErrorKind::NotConvergent: return "NotConvergent";
    case ErrorKind::InfeasibleGrid: return "InfeasibleGrid";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Vec vec1(double v) {
  Vec out(1);
  out(0) = v;
  return out;
}

inline Vec vec2(double a, double b) {
  Vec out(2);
  out << a, b;
  return out;
}

/// Positive part s^+ = max(s, 0).
template <typename Scalar>
constexpr Scalar positive_part(Scalar s) {
  return s > Scalar(0) ? s : Scalar(0);
}

}  // namespace gsbdlab
