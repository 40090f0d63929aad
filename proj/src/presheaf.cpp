#include "purelab/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace purelab {

std::string Presheaf::label(ElemId e) const {
  for (std::size_t x = 0; x < cat_->object_count(); ++x) {
    if (object_id(x) == sort(e)) continue;
    if (find(object_id(x), name(e))) return name(e) + "@" + cat_->object_name(sort(e));
  }
  return name(e);
}

ElemId Presheaf::act_checked(ArrowId f, ElemId x) const {
  if (idx(x) >= size()) throw Error(ErrorKind::UnknownElement, "element id out of range");
  if (cat_->dom(f) != sort(x))
    throw Error(ErrorKind::BadTyping, "arrow '" + cat_->arrow_name(f) +
                                          "' cannot act on element '" + label(x) + "' of sort " +
                                          cat_->object_name(sort(x)));
  return act(f, x);
}

std::optional<ElemId> Presheaf::find(ObjectId sort, std::string_view name) const {
  for (ElemId e : carrier(sort))
    if (names_[idx(e)] == name) return e;
  return std::nullopt;
}

ElemId Presheaf::element(ObjectId sort, std::string_view name) const {
  if (auto e = find(sort, name)) return *e;
  throw Error(ErrorKind::UnknownElement, "no element '" + std::string(name) + "' of sort " +
                                             cat_->object_name(sort));
}

ElemId Presheaf::element(std::string_view label) const {
  std::optional<ElemId> hit;
  for (ElemId e : ids_) {
    if (names_[idx(e)] != label) continue;
    if (hit)
      throw Error(ErrorKind::UnknownElement,
                  "element name '" + std::string(label) + "' is ambiguous; use name@Sort");
    hit = e;
  }
  if (hit) return *hit;
  if (auto at = label.rfind('@'); at != std::string_view::npos) {
    if (auto sort = cat_->find_object(label.substr(at + 1)))
      if (auto e = find(*sort, label.substr(0, at))) return *e;
  }
  throw Error(ErrorKind::UnknownElement, "no element '" + std::string(label) + "'");
}

RawPresheaf Presheaf::to_raw() const {
  RawPresheaf raw;
  for (std::size_t x = 0; x < cat_->object_count(); ++x) {
    std::vector<std::string> names;
    for (ElemId e : carrier(object_id(x))) names.push_back(name(e));
    raw.carriers.emplace_back(cat_->object_name(object_id(x)), std::move(names));
  }
  for (std::size_t f = cat_->object_count(); f < cat_->arrow_count(); ++f) {
    ArrowId fa = arrow_id(f);
    ElementMap entries;
    for (ElemId e : carrier(cat_->dom(fa))) entries.emplace_back(name(e), name(act(fa, e)));
    raw.actions.emplace_back(cat_->arrow_name(fa), std::move(entries));
  }
  return raw;
}

bool Presheaf::operator==(const Presheaf& other) const {
  return (cat_ == other.cat_ || *cat_ == *other.cat_) && offset_ == other.offset_ &&
         names_ == other.names_ && actions_ == other.actions_;
}

Presheaf validate_presheaf(CatPtr cat_ptr, const RawPresheaf& raw) {
  const FinCat& cat = *cat_ptr;
  Presheaf p;
  p.cat_ = cat_ptr;

  std::vector<std::optional<std::size_t>> carrier_entry(cat.object_count());
  for (std::size_t i = 0; i < raw.carriers.size(); ++i) {
    const auto& [object, elems] = raw.carriers[i];
    auto x = cat.find_object(object);
    if (!x)
      throw Error(ErrorKind::BadTyping, "carrier for unknown object '" + object + "'",
                  "carriers/" + object);
    if (carrier_entry[idx(*x)])
      throw Error(ErrorKind::DuplicateName, "object '" + object + "' has two carriers",
                  "carriers/" + object);
    carrier_entry[idx(*x)] = i;
  }

  p.offset_.push_back(0);
  for (std::size_t x = 0; x < cat.object_count(); ++x) {
    if (carrier_entry[x]) {
      const auto& [object, elems] = raw.carriers[*carrier_entry[x]];
      std::map<std::string, int, std::less<>> seen;
      for (const std::string& name : elems) {
        if (!seen.emplace(name, 0).second)
          throw Error(ErrorKind::DuplicateName, "duplicate element '" + name + "'",
                      "carriers/" + object);
        p.ids_.push_back(elem_id(p.sort_.size()));
        p.sort_.push_back(object_id(x));
        p.names_.push_back(name);
      }
    }
    p.offset_.push_back(p.sort_.size());
  }

  constexpr auto unset = static_cast<ElemId>(~std::uint32_t{0});
  p.actions_.resize(cat.arrow_count());
  for (std::size_t f = 0; f < cat.arrow_count(); ++f)
    p.actions_[f].assign(p.carrier_size(cat.dom(arrow_id(f))), unset);

  for (const auto& [arrow, entries] : raw.actions) {
    std::string loc = "actions/" + arrow;
    auto f = cat.find_arrow(arrow);
    if (!f) throw Error(ErrorKind::BadTyping, "action for unknown arrow '" + arrow + "'", loc);
    ObjectId dom = cat.dom(*f);
    ObjectId cod = cat.cod(*f);
    for (const auto& [from, to] : entries) {
      auto x = p.find(dom, from);
      if (!x)
        throw Error(ErrorKind::BadTyping,
                    "'" + from + "' is not an element of sort " + cat.object_name(dom), loc + "/" + from);
      auto y = p.find(cod, to);
      if (!y)
        throw Error(ErrorKind::BadTyping,
                    "'" + to + "' is not an element of sort " + cat.object_name(cod), loc + "/" + from);
      auto& slot = p.actions_[idx(*f)][idx(*x) - p.offset_[idx(dom)]];
      if (slot != unset)
        throw Error(ErrorKind::DuplicateName, "two action entries for '" + from + "'", loc + "/" + from);
      slot = *y;
    }
  }

  for (std::size_t x = 0; x < cat.object_count(); ++x) {
    ArrowId id = cat.identity(object_id(x));
    auto& row = p.actions_[idx(id)];
    for (std::size_t i = 0; i < row.size(); ++i) {
      ElemId e = elem_id(p.offset_[x] + i);
      if (row[i] != unset && row[i] != e)
        throw Error(ErrorKind::CompositionViolation, "identity must act trivially",
                    "actions/" + cat.arrow_name(id) + "/" + p.names_[idx(e)]);
      row[i] = e;
    }
  }
  for (std::size_t f = 0; f < cat.arrow_count(); ++f) {
    const auto& row = p.actions_[f];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == unset) {
        ArrowId fa = arrow_id(f);
        throw Error(ErrorKind::EmptyActionEntry,
                    "no action of '" + cat.arrow_name(fa) + "' on '" +
                        p.names_[p.offset_[idx(cat.dom(fa))] + i] + "'",
                    "actions/" + cat.arrow_name(fa));
      }
    }
  }

  for (std::size_t f = 0; f < cat.arrow_count(); ++f) {
    ArrowId fa = arrow_id(f);
    for (ArrowId g : cat.arrows_from(cat.cod(fa))) {
      ArrowId gf = cat.comp(g, fa);
      for (ElemId x : p.carrier(cat.dom(fa))) {
        if (p.act(g, p.act(fa, x)) != p.act(gf, x))
          throw Error(ErrorKind::CompositionViolation,
                      cat.arrow_name(g) + "(" + cat.arrow_name(fa) + "(" + p.names_[idx(x)] +
                          ")) != " + cat.arrow_name(gf) + "(" + p.names_[idx(x)] + ")",
                      "actions/" + cat.arrow_name(gf) + "/" + p.names_[idx(x)]);
      }
    }
  }
  return p;
}

Presheaf representable(CatPtr cat, ObjectId x) {
  const FinCat& c = *cat;
  if (idx(x) >= c.object_count()) throw Error(ErrorKind::UnknownObject, "object id out of range");
  std::vector<std::vector<ArrowId>> homs(c.object_count());
  std::vector<std::vector<std::string>> carriers(c.object_count());
  for (std::size_t y = 0; y < c.object_count(); ++y) {
    homs[y] = c.hom(x, object_id(y));
    for (ArrowId a : homs[y]) carriers[y].push_back(c.arrow_name(a));
  }
  return build_presheaf(std::move(cat), std::move(carriers), [&](ArrowId f, std::size_t i) {
    const auto& src = homs[idx(c.dom(f))];
    const auto& dst = homs[idx(c.cod(f))];
    ArrowId composite = c.comp(f, src[i]);
    return static_cast<std::size_t>(std::find(dst.begin(), dst.end(), composite) - dst.begin());
  });
}

// -- SubPresheaf ------------------------------------------------------------

SubPresheaf::SubPresheaf(PresheafPtr ambient, std::vector<bool> mask)
    : ambient_(std::move(ambient)), mask_(std::move(mask)) {}

SubPresheaf SubPresheaf::whole(PresheafPtr ambient) {
  std::vector<bool> mask(ambient->size(), true);
  return SubPresheaf(std::move(ambient), std::move(mask));
}

SubPresheaf SubPresheaf::empty(PresheafPtr ambient) {
  std::vector<bool> mask(ambient->size(), false);
  return SubPresheaf(std::move(ambient), std::move(mask));
}

bool is_action_closed(const Presheaf& p, const std::vector<bool>& mask) {
  const FinCat& cat = p.cat();
  for (ElemId e : p.elements()) {
    if (!mask[idx(e)]) continue;
    for (ArrowId f : cat.arrows_from(p.sort(e)))
      if (!mask[idx(p.act(f, e))]) return false;
  }
  return true;
}

SubPresheaf SubPresheaf::from_mask(PresheafPtr ambient, std::vector<bool> mask) {
  if (mask.size() != ambient->size())
    throw Error(ErrorKind::ElementNotInAmbient, "subset mask has the wrong size");
  if (!is_action_closed(*ambient, mask))
    throw Error(ErrorKind::NotClosed, "subset is not closed under the actions");
  return SubPresheaf(std::move(ambient), std::move(mask));
}

std::size_t SubPresheaf::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<ElemId> SubPresheaf::elements() const {
  std::vector<ElemId> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(elem_id(i));
  return out;
}

bool SubPresheaf::subset_of(const SubPresheaf& other) const {
  if (!same_presheaf(*ambient_, *other.ambient_))
    throw Error(ErrorKind::DifferentAmbient, "subpresheaves of different presheaves");
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !other.mask_[i]) return false;
  return true;
}

bool SubPresheaf::operator==(const SubPresheaf& other) const {
  return same_presheaf(*ambient_, *other.ambient_) && mask_ == other.mask_;
}

SubPresheaf generate(const PresheafPtr& ambient, std::span<const ElemId> generators) {
  const Presheaf& p = *ambient;
  std::vector<bool> mask(p.size(), false);
  for (ElemId a : generators) {
    if (idx(a) >= p.size())
      throw Error(ErrorKind::ElementNotInAmbient, "generator is not an element of the presheaf");
    for (ArrowId f : p.cat().arrows_from(p.sort(a))) mask[idx(p.act(f, a))] = true;
  }
  return SubPresheaf::from_mask(ambient, std::move(mask));
}

SubPresheaf intersect(const SubPresheaf& a, const SubPresheaf& b) {
  if (!same_presheaf(a.ambient(), b.ambient()))
    throw Error(ErrorKind::DifferentAmbient, "cannot intersect subpresheaves of different presheaves");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = a.mask()[i] && b.mask()[i];
  return SubPresheaf::from_mask(a.ambient_ptr(), std::move(mask));
}

SubPresheaf unite(const SubPresheaf& a, const SubPresheaf& b) {
  if (!same_presheaf(a.ambient(), b.ambient()))
    throw Error(ErrorKind::DifferentAmbient, "cannot unite subpresheaves of different presheaves");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = a.mask()[i] || b.mask()[i];
  return SubPresheaf::from_mask(a.ambient_ptr(), std::move(mask));
}

// -- Hom --------------------------------------------------------------------

bool Hom::is_mono() const {
  std::vector<bool> hit(target_->size(), false);
  for (ElemId y : map_) {
    if (hit[idx(y)]) return false;
    hit[idx(y)] = true;
  }
  return true;
}

SubPresheaf Hom::image() const {
  std::vector<bool> mask(target_->size(), false);
  for (ElemId y : map_) mask[idx(y)] = true;
  return SubPresheaf::from_mask(target_, std::move(mask));
}

std::vector<std::optional<ElemId>> Hom::preimages() const {
  std::vector<std::optional<ElemId>> inv(target_->size());
  for (std::size_t x = 0; x < map_.size(); ++x)
    if (!inv[idx(map_[x])]) inv[idx(map_[x])] = elem_id(x);
  return inv;
}

std::vector<std::pair<std::string, ElementMap>> Hom::to_raw() const {
  std::vector<std::pair<std::string, ElementMap>> raw;
  const FinCat& cat = source_->cat();
  for (std::size_t x = 0; x < cat.object_count(); ++x) {
    ElementMap entries;
    for (ElemId e : source_->carrier(object_id(x)))
      entries.emplace_back(source_->name(e), target_->name(map_[idx(e)]));
    raw.emplace_back(cat.object_name(object_id(x)), std::move(entries));
  }
  return raw;
}

Hom make_hom(PresheafPtr source, PresheafPtr target, std::vector<ElemId> map) {
  if (!same_category(*source, *target))
    throw Error(ErrorKind::BadTyping, "source and target live over different categories");
  if (map.size() != source->size())
    throw Error(ErrorKind::BadTyping, "map is not total on the source");
  const FinCat& cat = source->cat();
  for (ElemId x : source->elements()) {
    ElemId y = map[idx(x)];
    if (idx(y) >= target->size() || target->sort(y) != source->sort(x))
      throw Error(ErrorKind::BadTyping, "'" + source->label(x) + "' is not sent to an element of sort " +
                                            cat.object_name(source->sort(x)),
                  "map/" + cat.object_name(source->sort(x)) + "/" + source->name(x));
  }
  for (ElemId x : source->elements()) {
    for (ArrowId f : cat.arrows_from(source->sort(x))) {
      if (map[idx(source->act(f, x))] != target->act(f, map[idx(x)]))
        throw Error(ErrorKind::NaturalityViolation,
                    "image of " + cat.arrow_name(f) + "(" + source->label(x) + ") differs from " +
                        cat.arrow_name(f) + " applied to the image of " + source->label(x),
                    "map/" + cat.object_name(source->sort(x)) + "/" + source->name(x));
    }
  }
  Hom h;
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.map_ = std::move(map);
  return h;
}

Hom validate_hom(PresheafPtr source, PresheafPtr target,
                 const std::vector<std::pair<std::string, ElementMap>>& raw) {
  const FinCat& cat = source->cat();
  constexpr auto unset = static_cast<ElemId>(~std::uint32_t{0});
  std::vector<ElemId> map(source->size(), unset);
  for (const auto& [object, entries] : raw) {
    std::string loc = "map/" + object;
    auto x = cat.find_object(object);
    if (!x) throw Error(ErrorKind::BadTyping, "map for unknown object '" + object + "'", loc);
    for (const auto& [from, to] : entries) {
      auto a = source->find(*x, from);
      if (!a) throw Error(ErrorKind::BadTyping, "'" + from + "' is not in the source", loc + "/" + from);
      auto b = target->find(*x, to);
      if (!b) throw Error(ErrorKind::BadTyping, "'" + to + "' is not in the target", loc + "/" + from);
      if (map[idx(*a)] != unset)
        throw Error(ErrorKind::DuplicateName, "two entries for '" + from + "'", loc + "/" + from);
      map[idx(*a)] = *b;
    }
  }
  for (ElemId e : source->elements())
    if (map[idx(e)] == unset)
      throw Error(ErrorKind::BadTyping, "map is not defined on '" + source->name(e) + "'",
                  "map/" + cat.object_name(source->sort(e)));
  return make_hom(std::move(source), std::move(target), std::move(map));
}

Hom identity_hom(const PresheafPtr& p) {
  return make_hom(p, p, std::vector<ElemId>(p->elements().begin(), p->elements().end()));
}

Hom compose(const Hom& g, const Hom& f) {
  if (!same_presheaf(f.target(), g.source()))
    throw Error(ErrorKind::BadTyping, "homs are not composable");
  std::vector<ElemId> map(f.source().size());
  for (ElemId x : f.source().elements()) map[idx(x)] = g(f(x));
  return make_hom(f.source_ptr(), g.target_ptr(), std::move(map));
}

Hom hom_from_generators(PresheafPtr source, PresheafPtr target,
                        std::span<const std::pair<ElemId, ElemId>> images) {
  constexpr auto unset = static_cast<ElemId>(~std::uint32_t{0});
  const FinCat& cat = source->cat();
  std::vector<ElemId> map(source->size(), unset);
  for (const auto& [gen, img] : images) {
    if (source->sort(gen) != target->sort(img))
      throw Error(ErrorKind::BadTyping, "generator sent to an element of another sort");
    for (ArrowId f : cat.arrows_from(source->sort(gen))) {
      ElemId x = source->act(f, gen);
      ElemId y = target->act(f, img);
      if (map[idx(x)] != unset && map[idx(x)] != y)
        throw Error(ErrorKind::NaturalityViolation,
                    "generator images force two values for '" + source->label(x) + "'");
      map[idx(x)] = y;
    }
  }
  for (ElemId e : map)
    if (e == unset) throw Error(ErrorKind::NotClosed, "generators do not generate the source");
  return make_hom(std::move(source), std::move(target), std::move(map));
}

Materialized materialize(const SubPresheaf& sub) {
  const Presheaf& amb = sub.ambient();
  const FinCat& cat = amb.cat();
  std::vector<std::vector<std::string>> carriers(cat.object_count());
  std::vector<std::vector<ElemId>> members(cat.object_count());
  std::vector<std::size_t> local(amb.size(), 0);
  for (ElemId e : amb.elements()) {
    if (!sub.contains(e)) continue;
    auto s = idx(amb.sort(e));
    local[idx(e)] = members[s].size();
    members[s].push_back(e);
    carriers[s].push_back(amb.name(e));
  }
  auto p = std::make_shared<const Presheaf>(
      build_presheaf(amb.cat_ptr(), carriers, [&](ArrowId f, std::size_t i) {
        return local[idx(amb.act(f, members[idx(cat.dom(f))][i]))];
      }));
  std::vector<ElemId> map;
  for (const auto& m : members) map.insert(map.end(), m.begin(), m.end());
  Hom incl = make_hom(p, sub.ambient_ptr(), std::move(map));
  return {std::move(p), std::move(incl)};
}

bool same_category(const Presheaf& a, const Presheaf& b) {
  return a.cat_ptr() == b.cat_ptr() || a.cat() == b.cat();
}

bool same_presheaf(const Presheaf& a, const Presheaf& b) { return &a == &b || a == b; }

}  // namespace purelab
