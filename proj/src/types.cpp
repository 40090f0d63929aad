#include "purelab/types.hpp"

#include <utility>

namespace purelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadTyping: return "BadTyping";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::CompositionViolation: return "CompositionViolation";
    case ErrorKind::EmptyActionEntry: return "EmptyActionEntry";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::ElementNotInAmbient: return "ElementNotInAmbient";
    case ErrorKind::NaturalityViolation: return "NaturalityViolation";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::DifferentAmbient: return "DifferentAmbient";
    case ErrorKind::NotMono: return "NotMono";
    case ErrorKind::SourceMismatch: return "SourceMismatch";
    case ErrorKind::TargetMismatch: return "TargetMismatch";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::IncompatibleSquare: return "IncompatibleSquare";
    case ErrorKind::BaseNotClosed: return "BaseNotClosed";
    case ErrorKind::ElementInBase: return "ElementInBase";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::NotPureInputs: return "NotPureInputs";
    case ErrorKind::ConnectivityPreconditionFailed: return "ConnectivityPreconditionFailed";
    case ErrorKind::NotSolvableInL: return "NotSolvableInL";
    case ErrorKind::SeedConditionViolated: return "SeedConditionViolated";
    case ErrorKind::GluingNotMono: return "GluingNotMono";
    case ErrorKind::BadSpan: return "BadSpan";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string location)
    : std::runtime_error(std::move(message)), kind_(kind), location_(std::move(location)) {}

}  // namespace purelab
