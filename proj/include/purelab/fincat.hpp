#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "purelab/types.hpp"

namespace purelab {

struct RawArrow {
  std::string name;
  std::string dom;
  std::string cod;
};

/// One entry of a composition table: gf = g after f.
struct RawComposite {
  std::string g;
  std::string f;
  std::string gf;
};

/// Unvalidated category description. Identities are implicit.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  std::vector<RawComposite> compose;
};

struct Arrow {
  std::string name;
  ObjectId dom;
  ObjectId cod;

  bool operator==(const Arrow&) const = default;
};

/// A finite category given by object/arrow tables and a total composition
/// table. Arrows are stored in canonical order: identities first (in object
/// order), then the non-identity arrows in input order.
///
/// compose(g, f) always means "first f, then g".
class FinCat {
 public:
  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  const std::string& object_name(ObjectId x) const { return objects_[idx(x)]; }
  const Arrow& arrow(ArrowId f) const { return arrows_[idx(f)]; }
  const std::string& arrow_name(ArrowId f) const { return arrows_[idx(f)].name; }
  ObjectId dom(ArrowId f) const { return arrows_[idx(f)].dom; }
  ObjectId cod(ArrowId f) const { return arrows_[idx(f)].cod; }

  ArrowId identity(ObjectId x) const { return identities_[idx(x)]; }
  bool is_identity(ArrowId f) const { return idx(f) < objects_.size(); }

  /// nullopt when cod(f) != dom(g).
  std::optional<ArrowId> compose(ArrowId g, ArrowId f) const;
  /// Throws BadTyping when the pair is not composable.
  ArrowId comp(ArrowId g, ArrowId f) const;

  std::optional<ObjectId> find_object(std::string_view name) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;
  ObjectId object_named(std::string_view name) const;
  ArrowId arrow_named(std::string_view name) const;

  /// All arrows with the given domain, in canonical order.
  std::span<const ArrowId> arrows_from(ObjectId x) const { return out_[idx(x)]; }
  /// All arrows x -> y, in canonical order.
  std::vector<ArrowId> hom(ObjectId x, ObjectId y) const;

  /// Inverse of validate_category up to reordering of compose entries.
  RawCategory to_raw() const;

  bool operator==(const FinCat& other) const;

 private:
  friend FinCat validate_category(const RawCategory& raw);

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<std::vector<ArrowId>> out_;
  // comp_[g * n + f], -1 when not composable.
  std::vector<std::int32_t> comp_;
  std::map<std::string, ObjectId, std::less<>> object_index_;
  std::map<std::string, ArrowId, std::less<>> arrow_index_;
};

std::string identity_name(std::string_view object);

FinCat validate_category(const RawCategory& raw);

/// One-object category of a finite monoid. table[i][j] is the index of the
/// product elements[i] * elements[j]. The unit becomes the identity "id_*";
/// every other element becomes an arrow of the same name.
FinCat monoid_to_cat(const std::vector<std::string>& elements,
                     const std::vector<std::vector<std::size_t>>& table, std::size_t unit);

/// Thin category of a finite poset; leq[i][j] means elements[i] <= elements[j].
/// The arrow i -> j (i != j) is named "<i>-><j>".
FinCat poset_to_cat(const std::vector<std::string>& elements,
                    const std::vector<std::vector<bool>>& leq);

struct SpanWitness {
  ObjectId apex;
  ArrowId left;
  ArrowId right;

  bool operator==(const SpanWitness&) const = default;
};

/// How one leg of a span factors through the other.
struct SpanFactorization {
  ArrowId mediator;
  // true: comp(mediator, left) == right; false: comp(mediator, right) == left.
  bool right_through_left;
};

std::optional<SpanFactorization> factor_span(const FinCat& cat, ArrowId left, ArrowId right);

struct LlpResult {
  bool holds = true;
  std::optional<SpanWitness> witness;

  explicit operator bool() const { return holds; }
};

/// Decides whether every span factors on one side. On failure the witness is
/// the first failing pair (left < right) in canonical arrow order.
LlpResult is_llp(const FinCat& cat);

bool is_groupoid(const FinCat& cat);

}  // namespace purelab
