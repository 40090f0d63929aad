#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace purelab {

// Dense indices into the canonical tables of a FinCat / Presheaf.
enum class ObjectId : std::uint32_t {};
enum class ArrowId : std::uint32_t {};
enum class ElemId : std::uint32_t {};

constexpr std::size_t idx(ObjectId o) { return static_cast<std::size_t>(o); }
constexpr std::size_t idx(ArrowId a) { return static_cast<std::size_t>(a); }
constexpr std::size_t idx(ElemId e) { return static_cast<std::size_t>(e); }

constexpr ObjectId object_id(std::size_t i) { return static_cast<ObjectId>(i); }
constexpr ArrowId arrow_id(std::size_t i) { return static_cast<ArrowId>(i); }
constexpr ElemId elem_id(std::size_t i) { return static_cast<ElemId>(i); }

enum class ErrorKind {
  // fincat
  MissingComposite,
  NonAssociative,
  BadTyping,
  DuplicateName,
  BadUnit,
  NotAPoset,
  // presheaf
  CompositionViolation,
  EmptyActionEntry,
  UnknownObject,
  UnknownElement,
  ElementNotInAmbient,
  NaturalityViolation,
  NotClosed,
  DifferentAmbient,
  // limits
  NotMono,
  SourceMismatch,
  TargetMismatch,
  NotCommuting,
  IncompatibleSquare,
  // connectivity
  BaseNotClosed,
  ElementInBase,
  // purity
  BadParameters,
  SortMismatch,
  NotPureInputs,
  ConnectivityPreconditionFailed,
  NotSolvableInL,
  // witness
  SeedConditionViolated,
  GluingNotMono,
  BadSpan,
  // io / cli
  FileNotFound,
  MalformedJson,
  BadArgument,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Validation and precondition failures. `location` names the offending
/// entry (e.g. "compose[3]" or "actions/f/idZ") when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string location = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& location() const noexcept { return location_; }
  const std::string& file() const noexcept { return file_; }
  void set_file(std::string file) { file_ = std::move(file); }

 private:
  ErrorKind kind_;
  std::string location_;
  std::string file_;
};

}  // namespace purelab
