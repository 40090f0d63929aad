#include "purelab/fincat.hpp"

#include <set>
#include <utility>

namespace purelab {

namespace {

std::string describe(const FinCat& cat, ArrowId f) {
  return cat.arrow_name(f) + ": " + cat.object_name(cat.dom(f)) + " -> " +
         cat.object_name(cat.cod(f));
}

}  // namespace

std::string identity_name(std::string_view object) { return "id_" + std::string(object); }

std::optional<ArrowId> FinCat::compose(ArrowId g, ArrowId f) const {
  auto h = comp_[idx(g) * arrows_.size() + idx(f)];
  if (h < 0) return std::nullopt;
  return arrow_id(static_cast<std::size_t>(h));
}

ArrowId FinCat::comp(ArrowId g, ArrowId f) const {
  if (auto h = compose(g, f)) return *h;
  throw Error(ErrorKind::BadTyping,
              "arrows are not composable: " + describe(*this, g) + " after " + describe(*this, f));
}

std::optional<ObjectId> FinCat::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> FinCat::find_arrow(std::string_view name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ObjectId FinCat::object_named(std::string_view name) const {
  if (auto x = find_object(name)) return *x;
  throw Error(ErrorKind::UnknownObject, "unknown object '" + std::string(name) + "'");
}

ArrowId FinCat::arrow_named(std::string_view name) const {
  if (auto f = find_arrow(name)) return *f;
  throw Error(ErrorKind::BadTyping, "unknown arrow '" + std::string(name) + "'");
}

std::vector<ArrowId> FinCat::hom(ObjectId x, ObjectId y) const {
  std::vector<ArrowId> out;
  for (ArrowId f : arrows_from(x))
    if (cod(f) == y) out.push_back(f);
  return out;
}

RawCategory FinCat::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  for (std::size_t i = objects_.size(); i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    raw.arrows.push_back({a.name, objects_[idx(a.dom)], objects_[idx(a.cod)]});
  }
  for (std::size_t g = objects_.size(); g < arrows_.size(); ++g) {
    for (std::size_t f = objects_.size(); f < arrows_.size(); ++f) {
      if (auto h = compose(arrow_id(g), arrow_id(f)))
        raw.compose.push_back({arrows_[g].name, arrows_[f].name, arrows_[idx(*h)].name});
    }
  }
  return raw;
}

bool FinCat::operator==(const FinCat& other) const {
  return objects_ == other.objects_ && arrows_ == other.arrows_ && comp_ == other.comp_;
}

FinCat validate_category(const RawCategory& raw) {
  FinCat cat;
  for (std::size_t i = 0; i < raw.objects.size(); ++i) {
    const std::string& name = raw.objects[i];
    if (!cat.object_index_.emplace(name, object_id(i)).second)
      throw Error(ErrorKind::DuplicateName, "duplicate object '" + name + "'",
                  "objects[" + std::to_string(i) + "]");
    cat.objects_.push_back(name);
  }
  for (std::size_t i = 0; i < raw.objects.size(); ++i) {
    std::string id = identity_name(raw.objects[i]);
    cat.arrow_index_.emplace(id, arrow_id(i));
    cat.arrows_.push_back({id, object_id(i), object_id(i)});
    cat.identities_.push_back(arrow_id(i));
  }
  for (std::size_t i = 0; i < raw.arrows.size(); ++i) {
    const RawArrow& a = raw.arrows[i];
    std::string loc = "arrows[" + std::to_string(i) + "]";
    auto dom = cat.find_object(a.dom);
    auto cod = cat.find_object(a.cod);
    if (!dom || !cod)
      throw Error(ErrorKind::BadTyping, "arrow '" + a.name + "' refers to an unknown object", loc);
    ArrowId id = arrow_id(cat.arrows_.size());
    if (!cat.arrow_index_.emplace(a.name, id).second)
      throw Error(ErrorKind::DuplicateName, "duplicate or reserved arrow name '" + a.name + "'", loc);
    cat.arrows_.push_back({a.name, *dom, *cod});
  }

  const std::size_t n = cat.arrows_.size();
  cat.out_.assign(cat.objects_.size(), {});
  for (std::size_t f = 0; f < n; ++f) cat.out_[idx(cat.arrows_[f].dom)].push_back(arrow_id(f));

  cat.comp_.assign(n * n, -1);
  auto set = [&](std::size_t g, std::size_t f, std::size_t h) {
    cat.comp_[g * n + f] = static_cast<std::int32_t>(h);
  };
  for (std::size_t f = 0; f < n; ++f) {
    const Arrow& a = cat.arrows_[f];
    set(idx(cat.identities_[idx(a.cod)]), f, f);
    set(f, idx(cat.identities_[idx(a.dom)]), f);
  }

  for (std::size_t i = 0; i < raw.compose.size(); ++i) {
    const RawComposite& c = raw.compose[i];
    std::string loc = "compose[" + std::to_string(i) + "]";
    auto g = cat.find_arrow(c.g);
    auto f = cat.find_arrow(c.f);
    auto h = cat.find_arrow(c.gf);
    if (!g || !f || !h)
      throw Error(ErrorKind::BadTyping, "composition entry refers to an unknown arrow", loc);
    if (cat.cod(*f) != cat.dom(*g))
      throw Error(ErrorKind::BadTyping,
                  "'" + c.g + "' and '" + c.f + "' are not composable", loc);
    if (cat.dom(*h) != cat.dom(*f) || cat.cod(*h) != cat.cod(*g))
      throw Error(ErrorKind::BadTyping,
                  "composite '" + c.gf + "' has the wrong domain or codomain", loc);
    auto& slot = cat.comp_[idx(*g) * n + idx(*f)];
    if (slot >= 0 && slot != static_cast<std::int32_t>(idx(*h)))
      throw Error(ErrorKind::DuplicateName,
                  "conflicting composite for (" + c.g + ", " + c.f + ")", loc);
    slot = static_cast<std::int32_t>(idx(*h));
  }

  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (cat.arrows_[f].cod == cat.arrows_[g].dom && cat.comp_[g * n + f] < 0)
        throw Error(ErrorKind::MissingComposite,
                    "no composite for (" + cat.arrows_[g].name + ", " + cat.arrows_[f].name + ")",
                    "compose");
    }
  }

  for (std::size_t f = 0; f < n; ++f) {
    for (ArrowId g : cat.out_[idx(cat.arrows_[f].cod)]) {
      ArrowId gf = cat.comp(g, arrow_id(f));
      for (ArrowId h : cat.out_[idx(cat.cod(g))]) {
        ArrowId lhs = cat.comp(h, gf);
        ArrowId rhs = cat.comp(cat.comp(h, g), arrow_id(f));
        if (lhs != rhs)
          throw Error(ErrorKind::NonAssociative,
                      "(" + cat.arrow_name(h) + " " + cat.arrow_name(g) + ") " +
                          cat.arrows_[f].name + " != " + cat.arrow_name(h) + " (" +
                          cat.arrow_name(g) + " " + cat.arrows_[f].name + ")",
                      "compose");
      }
    }
  }
  return cat;
}

FinCat monoid_to_cat(const std::vector<std::string>& elements,
                     const std::vector<std::vector<std::size_t>>& table, std::size_t unit) {
  const std::size_t n = elements.size();
  if (unit >= n) throw Error(ErrorKind::BadUnit, "unit index out of range");
  if (table.size() != n)
    throw Error(ErrorKind::BadTyping, "multiplication table must have one row per element");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw Error(ErrorKind::BadTyping, "multiplication table row " + std::to_string(i) +
                                            " has the wrong length");
    for (std::size_t v : table[i])
      if (v >= n) throw Error(ErrorKind::BadTyping, "product index out of range");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (table[unit][x] != x || table[x][unit] != x)
      throw Error(ErrorKind::BadUnit,
                  "'" + elements[unit] + "' is not a two-sided unit for '" + elements[x] + "'");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::NonAssociative, "(" + elements[a] + " " + elements[b] + ") " +
                                                     elements[c] + " != " + elements[a] + " (" +
                                                     elements[b] + " " + elements[c] + ")");

  RawCategory raw;
  raw.objects = {"*"};
  auto name = [&](std::size_t i) { return i == unit ? identity_name("*") : elements[i]; };
  for (std::size_t i = 0; i < n; ++i)
    if (i != unit) raw.arrows.push_back({elements[i], "*", "*"});
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (g != unit && f != unit) raw.compose.push_back({name(g), name(f), name(table[g][f])});
  return validate_category(raw);
}

FinCat poset_to_cat(const std::vector<std::string>& elements,
                    const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = elements.size();
  if (leq.size() != n)
    throw Error(ErrorKind::BadTyping, "order relation must have one row per element");
  for (const auto& row : leq)
    if (row.size() != n) throw Error(ErrorKind::BadTyping, "order relation row has the wrong length");
  for (std::size_t x = 0; x < n; ++x)
    if (!leq[x][x]) throw Error(ErrorKind::NotAPoset, "not reflexive at '" + elements[x] + "'");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && leq[x][y] && leq[y][x])
        throw Error(ErrorKind::NotAPoset,
                    "not antisymmetric at ('" + elements[x] + "', '" + elements[y] + "')");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (leq[x][y] && leq[y][z] && !leq[x][z])
          throw Error(ErrorKind::NotAPoset, "not transitive at ('" + elements[x] + "', '" +
                                                elements[y] + "', '" + elements[z] + "')");

  RawCategory raw;
  raw.objects = elements;
  auto name = [&](std::size_t x, std::size_t y) {
    return x == y ? identity_name(elements[x]) : elements[x] + "->" + elements[y];
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && leq[x][y]) raw.arrows.push_back({name(x, y), elements[x], elements[y]});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (x != y && y != z && leq[x][y] && leq[y][z])
          raw.compose.push_back({name(y, z), name(x, y), name(x, z)});
  return validate_category(raw);
}

std::optional<SpanFactorization> factor_span(const FinCat& cat, ArrowId left, ArrowId right) {
  if (cat.dom(left) != cat.dom(right))
    throw Error(ErrorKind::BadSpan, "arrows '" + cat.arrow_name(left) + "' and '" +
                                        cat.arrow_name(right) + "' do not share a domain");
  for (ArrowId h : cat.hom(cat.cod(left), cat.cod(right)))
    if (cat.comp(h, left) == right) return SpanFactorization{h, true};
  for (ArrowId h : cat.hom(cat.cod(right), cat.cod(left)))
    if (cat.comp(h, right) == left) return SpanFactorization{h, false};
  return std::nullopt;
}

LlpResult is_llp(const FinCat& cat) {
  for (std::size_t l = 0; l < cat.arrow_count(); ++l) {
    for (std::size_t r = l + 1; r < cat.arrow_count(); ++r) {
      ArrowId left = arrow_id(l);
      ArrowId right = arrow_id(r);
      if (cat.dom(left) != cat.dom(right)) continue;
      if (!factor_span(cat, left, right))
        return LlpResult{false, SpanWitness{cat.dom(left), left, right}};
    }
  }
  return LlpResult{};
}

bool is_groupoid(const FinCat& cat) {
  for (std::size_t f = 0; f < cat.arrow_count(); ++f) {
    ArrowId fa = arrow_id(f);
    bool invertible = false;
    for (ArrowId g : cat.hom(cat.cod(fa), cat.dom(fa))) {
      if (cat.comp(g, fa) == cat.identity(cat.dom(fa)) &&
          cat.comp(fa, g) == cat.identity(cat.cod(fa))) {
        invertible = true;
        break;
      }
    }
    if (!invertible) return false;
  }
  return true;
}

}  // namespace purelab
