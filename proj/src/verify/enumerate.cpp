#include "purelab/verify/enumerate.hpp"

namespace purelab::verify {

namespace {

// Odometer over vectors with digit i ranging over [0, base[i]).
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& base) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < base[i]) return true;
    digits[i] = 0;
  }
  return false;
}

void size_vectors(std::size_t objects, std::size_t max_total, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == objects) {
    out.push_back(cur);
    return;
  }
  std::size_t used = 0;
  for (std::size_t s : cur) used += s;
  for (std::size_t s = 0; used + s <= max_total; ++s) {
    cur.push_back(s);
    size_vectors(objects, max_total, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void for_each_presheaf(const CatPtr& cat, std::size_t max_total,
                       const std::function<void(const PresheafPtr&)>& visit) {
  const FinCat& c = *cat;
  const std::size_t n_obj = c.object_count();
  std::vector<ArrowId> arrows;
  for (std::size_t a = n_obj; a < c.arrow_count(); ++a) arrows.push_back(arrow_id(a));

  std::vector<std::vector<std::size_t>> sizes;
  std::vector<std::size_t> cur;
  size_vectors(n_obj, max_total, cur, sizes);

  for (const auto& sz : sizes) {
    // One table per non-identity arrow, flattened into a single odometer.
    std::vector<std::size_t> slot_offset;
    std::vector<std::size_t> base;
    bool impossible = false;
    for (ArrowId f : arrows) {
      slot_offset.push_back(base.size());
      std::size_t from = sz[idx(c.dom(f))], to = sz[idx(c.cod(f))];
      if (from > 0 && to == 0) impossible = true;
      for (std::size_t i = 0; i < from; ++i) base.push_back(to);
    }
    if (impossible) continue;
    auto act = [&](const std::vector<std::size_t>& digits, ArrowId f, std::size_t i) -> std::size_t {
      if (c.is_identity(f)) return i;
      return digits[slot_offset[idx(f) - n_obj] + i];
    };
    std::vector<std::size_t> digits(base.size(), 0);
    do {
      bool functorial = true;
      for (std::size_t fi = 0; fi < c.arrow_count() && functorial; ++fi)
        for (std::size_t gi = 0; gi < c.arrow_count() && functorial; ++gi) {
          ArrowId f = arrow_id(fi), g = arrow_id(gi);
          auto gf = c.compose(g, f);
          if (!gf) continue;
          for (std::size_t i = 0; i < sz[idx(c.dom(f))]; ++i)
            if (act(digits, g, act(digits, f, i)) != act(digits, *gf, i)) {
              functorial = false;
              break;
            }
        }
      if (!functorial) continue;
      std::vector<std::vector<std::string>> carriers(n_obj);
      std::size_t k = 0;
      for (std::size_t x = 0; x < n_obj; ++x)
        for (std::size_t i = 0; i < sz[x]; ++i) carriers[x].push_back("e" + std::to_string(k++));
      visit(std::make_shared<const Presheaf>(
          build_presheaf(cat, std::move(carriers), [&](ArrowId f, std::size_t i) { return act(digits, f, i); })));
    } while (advance(digits, base));
  }
}

std::vector<std::vector<bool>> all_submasks(const Presheaf& p) {
  std::vector<std::vector<bool>> out;
  const std::size_t n = p.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = (bits >> i) & 1;
    if (is_action_closed(p, mask)) out.push_back(std::move(mask));
  }
  return out;
}

std::vector<std::vector<ElemId>> all_hom_tables(const Presheaf& source, const Presheaf& target) {
  const FinCat& c = source.cat();
  std::vector<std::size_t> base;
  for (ElemId x : source.elements()) base.push_back(target.carrier_size(source.sort(x)));
  std::vector<std::vector<ElemId>> out;
  for (std::size_t b : base)
    if (b == 0) return out;
  std::vector<std::size_t> digits(base.size(), 0);
  do {
    std::vector<ElemId> map(source.size());
    for (ElemId x : source.elements()) map[idx(x)] = target.carrier(source.sort(x))[digits[idx(x)]];
    bool natural = true;
    for (std::size_t a = 0; a < c.arrow_count() && natural; ++a)
      for (ElemId x : source.carrier(c.dom(arrow_id(a))))
        if (map[idx(source.act(arrow_id(a), x))] != target.act(arrow_id(a), map[idx(x)])) {
          natural = false;
          break;
        }
    if (natural) out.push_back(std::move(map));
  } while (advance(digits, base));
  return out;
}

}  // namespace purelab::verify
