#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "purelab/fincat.hpp"

namespace purelab {

using CatPtr = std::shared_ptr<const FinCat>;

using ElementMap = std::vector<std::pair<std::string, std::string>>;

/// Unvalidated presheaf description. Objects missing from `carriers` get an
/// empty carrier; identity actions may be omitted.
struct RawPresheaf {
  std::vector<std::pair<std::string, std::vector<std::string>>> carriers;
  std::vector<std::pair<std::string, ElementMap>> actions;
};

/// A finite presheaf, i.e. a multi-sorted unary algebra over a FinCat.
///
/// Elements get dense ids, grouped by sort in object order; within a sort
/// they keep the carrier order. Names are unique per sort only.
class Presheaf {
 public:
  const FinCat& cat() const { return *cat_; }
  const CatPtr& cat_ptr() const { return cat_; }

  /// Total number of elements over all sorts.
  std::size_t size() const { return sort_.size(); }
  std::size_t carrier_size(ObjectId x) const { return offset_[idx(x) + 1] - offset_[idx(x)]; }
  std::span<const ElemId> carrier(ObjectId x) const {
    return std::span<const ElemId>(ids_).subspan(offset_[idx(x)], carrier_size(x));
  }
  std::span<const ElemId> elements() const { return ids_; }

  ObjectId sort(ElemId e) const { return sort_[idx(e)]; }
  const std::string& name(ElemId e) const { return names_[idx(e)]; }
  /// The name, qualified as "name@Sort" when another sort uses it too.
  std::string label(ElemId e) const;

  /// f . x; x must have sort dom(f).
  ElemId act(ArrowId f, ElemId x) const {
    return actions_[idx(f)][idx(x) - offset_[idx(sort_[idx(x)])]];
  }
  /// Like act() but throws BadTyping on a sort mismatch.
  ElemId act_checked(ArrowId f, ElemId x) const;

  std::optional<ElemId> find(ObjectId sort, std::string_view name) const;
  ElemId element(ObjectId sort, std::string_view name) const;
  /// Resolves a plain name or a "name@Sort" label.
  ElemId element(std::string_view label) const;

  RawPresheaf to_raw() const;

  bool operator==(const Presheaf& other) const;

 private:
  friend Presheaf validate_presheaf(CatPtr cat, const RawPresheaf& raw);

  CatPtr cat_;
  std::vector<std::size_t> offset_;
  std::vector<ElemId> ids_;
  std::vector<ObjectId> sort_;
  std::vector<std::string> names_;
  // actions_[f][i] = f . (i-th element of carrier(dom f))
  std::vector<std::vector<ElemId>> actions_;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

Presheaf validate_presheaf(CatPtr cat, const RawPresheaf& raw);

/// Convenience constructor used by the algebraic constructions: carriers are
/// given per object (in object order) and act(f, i) returns the image of the
/// i-th element of carrier(dom f) as an index into carrier(cod f).
template <class ActFn>
Presheaf build_presheaf(CatPtr cat, std::vector<std::vector<std::string>> carriers, ActFn act);

/// The representable presheaf cat(X, -): sort Y holds the arrows X -> Y and
/// arrows act by postcomposition. Element names are arrow names.
Presheaf representable(CatPtr cat, ObjectId x);

/// An action-closed subset of an ambient presheaf.
class SubPresheaf {
 public:
  static SubPresheaf whole(PresheafPtr ambient);
  static SubPresheaf empty(PresheafPtr ambient);
  /// Throws NotClosed when the subset is not action-closed.
  static SubPresheaf from_mask(PresheafPtr ambient, std::vector<bool> mask);

  const Presheaf& ambient() const { return *ambient_; }
  const PresheafPtr& ambient_ptr() const { return ambient_; }
  bool contains(ElemId e) const { return mask_[idx(e)]; }
  const std::vector<bool>& mask() const { return mask_; }
  std::size_t size() const;
  std::vector<ElemId> elements() const;

  bool subset_of(const SubPresheaf& other) const;
  bool operator==(const SubPresheaf& other) const;

 private:
  SubPresheaf(PresheafPtr ambient, std::vector<bool> mask);

  PresheafPtr ambient_;
  std::vector<bool> mask_;
};

/// Whether the subset is closed under every action.
bool is_action_closed(const Presheaf& p, const std::vector<bool>& mask);

/// <A> = { f . a : a in A }.
SubPresheaf generate(const PresheafPtr& ambient, std::span<const ElemId> generators);
SubPresheaf intersect(const SubPresheaf& a, const SubPresheaf& b);
SubPresheaf unite(const SubPresheaf& a, const SubPresheaf& b);

/// A natural transformation between presheaves over the same category.
class Hom {
 public:
  const Presheaf& source() const { return *source_; }
  const Presheaf& target() const { return *target_; }
  const PresheafPtr& source_ptr() const { return source_; }
  const PresheafPtr& target_ptr() const { return target_; }

  ElemId operator()(ElemId x) const { return map_[idx(x)]; }
  const std::vector<ElemId>& table() const { return map_; }

  bool is_mono() const;
  SubPresheaf image() const;
  /// Inverse on the image; only meaningful for monos.
  std::vector<std::optional<ElemId>> preimages() const;

  std::vector<std::pair<std::string, ElementMap>> to_raw() const;

 private:
  friend Hom make_hom(PresheafPtr source, PresheafPtr target, std::vector<ElemId> map);

  PresheafPtr source_;
  PresheafPtr target_;
  std::vector<ElemId> map_;
};

/// Checks sorts and naturality; throws BadTyping / NaturalityViolation.
Hom make_hom(PresheafPtr source, PresheafPtr target, std::vector<ElemId> map);

/// Builds a Hom from per-object element maps given by name.
Hom validate_hom(PresheafPtr source, PresheafPtr target,
                 const std::vector<std::pair<std::string, ElementMap>>& raw);

Hom identity_hom(const PresheafPtr& p);
/// g after f.
Hom compose(const Hom& g, const Hom& f);

inline bool is_mono(const Hom& h) { return h.is_mono(); }

/// The unique Hom out of a presheaf generated by `images`' first components
/// sending each generator to the paired target element. Throws
/// NaturalityViolation when no such Hom exists and NotClosed when the
/// generators do not generate the whole source.
Hom hom_from_generators(PresheafPtr source, PresheafPtr target,
                        std::span<const std::pair<ElemId, ElemId>> images);

struct Materialized {
  PresheafPtr presheaf;
  Hom inclusion;
};

/// Turns a subpresheaf into a presheaf of its own (names preserved) together
/// with its inclusion into the ambient presheaf.
Materialized materialize(const SubPresheaf& sub);

/// Whether two presheaves are over the same category (pointer or value).
bool same_category(const Presheaf& a, const Presheaf& b);
/// Pointer equality or value equality.
bool same_presheaf(const Presheaf& a, const Presheaf& b);

template <class ActFn>
Presheaf build_presheaf(CatPtr cat, std::vector<std::vector<std::string>> carriers, ActFn act) {
  RawPresheaf raw;
  const FinCat& c = *cat;
  for (std::size_t x = 0; x < c.object_count(); ++x)
    raw.carriers.emplace_back(c.object_name(object_id(x)), carriers[x]);
  for (std::size_t f = 0; f < c.arrow_count(); ++f) {
    ArrowId fa = arrow_id(f);
    if (c.is_identity(fa)) continue;
    ElementMap entries;
    const auto& src = carriers[idx(c.dom(fa))];
    const auto& dst = carriers[idx(c.cod(fa))];
    for (std::size_t i = 0; i < src.size(); ++i) entries.emplace_back(src[i], dst[act(fa, i)]);
    raw.actions.emplace_back(c.arrow_name(fa), std::move(entries));
  }
  return validate_presheaf(std::move(cat), raw);
}

}  // namespace purelab
