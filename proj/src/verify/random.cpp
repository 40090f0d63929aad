#include "purelab/verify/random.hpp"

#include <algorithm>
#include <numeric>

namespace purelab::verify {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

PresheafPtr random_presheaf(const CatPtr& cat, Rng& rng, std::size_t max_total) {
  const FinCat& c = *cat;
  // Elements of the coproduct are pairs (summand, arrow out of its object).
  struct Elem {
    std::size_t summand;
    ArrowId arrow;
  };
  std::vector<Elem> elems;
  std::size_t target = uniform(rng, (max_total + 1) / 2, max_total);
  std::size_t summands = 0;
  for (;;) {
    std::vector<ObjectId> fits;
    for (std::size_t x = 0; x < c.object_count(); ++x) {
      std::size_t total = 0;
      for (std::size_t y = 0; y < c.object_count(); ++y) total += c.hom(object_id(x), object_id(y)).size();
      if (elems.size() + total <= target) fits.push_back(object_id(x));
    }
    if (fits.empty()) break;
    ObjectId x = fits[uniform(rng, 0, fits.size() - 1)];
    for (ArrowId a : c.arrows_from(x)) elems.push_back({summands, a});
    ++summands;
  }
  const std::size_t n = elems.size();
  auto act = [&](ArrowId f, std::size_t e) {
    ArrowId fa = c.comp(f, elems[e].arrow);
    for (std::size_t k = 0; k < n; ++k)
      if (elems[k].summand == elems[e].summand && elems[k].arrow == fa) return k;
    throw Error(ErrorKind::Internal, "coproduct element missing");
  };

  // Congruence generated by a few random same-sort pairs.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t pairs = n == 0 ? 0 : uniform(rng, 0, 2);
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
    if (c.cod(elems[a].arrow) == c.cod(elems[b].arrow)) parent[find(a)] = find(b);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (find(a) != find(b)) continue;
        for (ArrowId f : c.arrows_from(c.cod(elems[a].arrow))) {
          std::size_t fa = find(act(f, a)), fb = find(act(f, b));
          if (fa != fb) {
            parent[fa] = fb;
            changed = true;
          }
        }
      }
  }

  // Classes, grouped by sort.
  std::vector<std::vector<std::size_t>> reps(c.object_count());
  std::vector<std::size_t> local(n);
  for (std::size_t e = 0; e < n; ++e)
    if (find(e) == e) {
      auto& r = reps[idx(c.cod(elems[e].arrow))];
      local[e] = r.size();
      r.push_back(e);
    }
  std::vector<std::vector<std::string>> carriers(c.object_count());
  std::size_t k = 0;
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t i = 0; i < reps[x].size(); ++i) carriers[x].push_back("e" + std::to_string(k++));
  return std::make_shared<const Presheaf>(build_presheaf(cat, std::move(carriers), [&](ArrowId f, std::size_t i) {
    return local[find(act(f, reps[idx(c.dom(f))][i]))];
  }));
}

SubPresheaf random_subpresheaf(const PresheafPtr& L, Rng& rng) {
  std::bernoulli_distribution pick(static_cast<double>(uniform(rng, 0, 4)) / 8.0);
  std::vector<ElemId> gens;
  for (ElemId e : L->elements())
    if (pick(rng)) gens.push_back(e);
  return generate(L, gens);
}

Hom inclusion_between(const Materialized& small, const Materialized& big) {
  std::vector<std::optional<ElemId>> back = big.inclusion.preimages();
  std::vector<ElemId> map;
  for (ElemId e : small.presheaf->elements()) {
    auto b = back[idx(small.inclusion(e))];
    if (!b) throw Error(ErrorKind::Internal, "subpresheaves are not nested");
    map.push_back(*b);
  }
  return make_hom(small.presheaf, big.presheaf, std::move(map));
}

SpanOfMonos random_span_of_monos(const CatPtr& cat, Rng& rng, std::size_t max_total) {
  PresheafPtr X = random_presheaf(cat, rng, max_total);
  SubPresheaf A = random_subpresheaf(X, rng);
  SubPresheaf B = random_subpresheaf(X, rng);
  SubPresheaf meet = intersect(A, B);
  // A random subpresheaf of the intersection, pushed back into X.
  Materialized meet_m = materialize(meet);
  SubPresheaf k_in_meet = random_subpresheaf(meet_m.presheaf, rng);
  std::vector<bool> mask(X->size(), false);
  for (ElemId e : k_in_meet.elements()) mask[idx(meet_m.inclusion(e))] = true;
  Materialized K = materialize(SubPresheaf::from_mask(X, mask));
  Materialized Am = materialize(A), Bm = materialize(B);
  return {inclusion_between(K, Am), inclusion_between(K, Bm)};
}

std::optional<Square> random_pure_pullback_square(const CatPtr& cat, Rng& rng, std::size_t max_total,
                                                  bool require_proper, std::size_t attempts) {
  for (std::size_t t = 0; t < attempts; ++t) {
    PresheafPtr L = random_presheaf(cat, rng, max_total);
    Materialized A = materialize(random_subpresheaf(L, rng));
    if (!is_pure(A.inclusion).pure) continue;
    // Seed B partly from A so that the intersection is often proper.
    SubPresheaf b_part = random_subpresheaf(L, rng);
    std::vector<ElemId> gens = b_part.elements();
    for (ElemId e : A.presheaf->elements())
      if (uniform(rng, 0, 2) == 0) gens.push_back(A.inclusion(e));
    Materialized B = materialize(generate(L, gens));
    if (!is_pure(B.inclusion).pure) continue;
    Square sq = pullback_monos(A.inclusion, B.inclusion);
    if (require_proper && (sq.K().size() == 0 || sq.K().size() == sq.A().size() ||
                           sq.K().size() == sq.B().size() || sq.A().size() == sq.L().size() ||
                           sq.B().size() == sq.L().size()))
      continue;
    if (!is_pure(sq.kA).pure || !is_pure(sq.kB).pure) continue;
    return sq;
  }
  return std::nullopt;
}

SystemInstance random_solvable_system(const Hom& u, Rng& rng, std::size_t max_vars) {
  const Presheaf& L = u.target();
  const FinCat& cat = L.cat();
  SystemInstance out;
  if (L.size() == 0) return out;
  std::size_t nvars = uniform(rng, 1, max_vars);
  for (std::size_t i = 0; i < nvars; ++i) {
    ElemId v = L.elements()[uniform(rng, 0, L.size() - 1)];
    out.system.vars.push_back({"x" + std::to_string(i), L.sort(v)});
    out.solution.push_back(v);
  }
  std::vector<std::optional<ElemId>> back = u.preimages();
  std::vector<Equation> candidates;
  for (std::size_t i = 0; i < nvars; ++i)
    for (ArrowId f : cat.arrows_from(L.sort(out.solution[i]))) {
      ElemId fx = L.act(f, out.solution[i]);
      if (back[idx(fx)]) candidates.emplace_back(Anchor{f, i, *back[idx(fx)]});
      for (std::size_t j = 0; j < nvars; ++j)
        for (ArrowId g : cat.arrows_from(L.sort(out.solution[j])))
          if ((i != j || f != g) && cat.cod(f) == cat.cod(g) && L.act(g, out.solution[j]) == fx)
            candidates.emplace_back(Link{f, i, g, j});
    }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::size_t keep = std::min(candidates.size(), uniform(rng, 1, 2 * nvars + 1));
  out.system.eqs.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep));
  return out;
}

}  // namespace purelab::verify
