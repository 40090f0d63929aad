#include "purelab/verify/oracle.hpp"

#include "purelab/verify/enumerate.hpp"

namespace purelab::verify {

namespace {

struct Atom {
  ArrowId f;
  std::size_t i;
  ArrowId g;
  std::size_t j;  // ignored when anchored
  bool anchored;
  ElemId d;       // element of K
};

}  // namespace

bool pp_type_pure(const Hom& incl) {
  const Presheaf& K = incl.source();
  const Presheaf& L = incl.target();
  const FinCat& cat = L.cat();

  for (std::size_t x = 0; x < cat.object_count(); ++x)
    if (L.carrier_size(object_id(x)) > 0 && K.carrier_size(object_id(x)) == 0) return false;

  std::vector<std::optional<ElemId>> back(L.size());
  for (ElemId k : K.elements()) back[idx(incl(k))] = k;
  std::vector<ElemId> tuple;
  for (ElemId e : L.elements())
    if (!back[idx(e)]) tuple.push_back(e);

  // Atoms are attached to the larger of the variable indices they mention,
  // so each is checked as soon as it is fully assigned.
  std::vector<std::vector<Atom>> atoms(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (ArrowId f : cat.arrows_from(L.sort(tuple[i]))) {
      ElemId fx = L.act(f, tuple[i]);
      if (back[idx(fx)]) atoms[i].push_back({f, i, f, i, true, *back[idx(fx)]});
      for (std::size_t j = 0; j <= i; ++j)
        for (ArrowId g : cat.arrows_from(L.sort(tuple[j])))
          if (cat.cod(g) == cat.cod(f) && L.act(g, tuple[j]) == fx) atoms[i].push_back({f, i, g, j, false, {}});
    }
  }

  std::vector<ElemId> value(tuple.size());
  auto holds = [&](const Atom& a) {
    ElemId lhs = K.act(a.f, value[a.i]);
    return a.anchored ? lhs == a.d : lhs == K.act(a.g, value[a.j]);
  };
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == tuple.size()) return true;
    for (ElemId candidate : K.carrier(L.sort(tuple[i]))) {
      value[i] = candidate;
      bool ok = true;
      for (const Atom& a : atoms[i])
        if (!holds(a)) {
          ok = false;
          break;
        }
      if (ok && self(self, i + 1)) return true;
    }
    return false;
  };
  return search(search, 0);
}

std::size_t count_homs(const Presheaf& source, const Presheaf& target) {
  return all_hom_tables(source, target).size();
}

}  // namespace purelab::verify
