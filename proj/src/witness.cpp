#include "purelab/witness.hpp"

#include <algorithm>
#include <functional>

namespace purelab {

namespace {

bool generates(const Presheaf& p, ElemId from, ElemId to) {
  for (ArrowId h : p.cat().arrows_from(p.sort(from)))
    if (p.act(h, from) == to) return true;
  return false;
}

SubPresheaf principal(const PresheafPtr& p, ElemId e) {
  ElemId gens[] = {e};
  return generate(p, gens);
}

}  // namespace

void check_seed(const ChainSeed& seed) {
  const Presheaf& K = *seed.K;
  const FinCat& cat = K.cat();
  for (ElemId e : {seed.a, seed.b, seed.c})
    if (idx(e) >= K.size()) throw Error(ErrorKind::UnknownElement, "seed element out of range");
  if (cat.dom(seed.f) != K.sort(seed.c) || K.act(seed.f, seed.c) != seed.a)
    throw Error(ErrorKind::SeedConditionViolated, "a is not f . c", "a = f.c");
  if (cat.dom(seed.g) != K.sort(seed.c) || K.act(seed.g, seed.c) != seed.b)
    throw Error(ErrorKind::SeedConditionViolated, "b is not g . c", "b = g.c");
  for (ArrowId h : cat.arrows_from(K.sort(seed.a)))
    if (K.act(h, seed.a) == seed.b)
      throw Error(ErrorKind::SeedConditionViolated,
                  "b = " + cat.arrow_name(h) + " . a", "no h with h.a = b");
  for (ArrowId h : cat.arrows_from(K.sort(seed.b)))
    if (K.act(h, seed.b) == seed.a)
      throw Error(ErrorKind::SeedConditionViolated,
                  "a = " + cat.arrow_name(h) + " . b", "no h' with a = h'.b");
}

ChainTrace build_chain(const ChainSeed& seed, std::size_t depth) {
  if (depth < 1) throw Error(ErrorKind::BadArgument, "depth must be at least 1");
  check_seed(seed);

  ChainTrace trace;
  trace.seed = seed;
  trace.depth = depth;
  trace.a.assign(depth, ElemId{});
  trace.b.assign(depth, ElemId{});
  trace.c.assign(depth, {});
  for (std::size_t n = 0; n < depth; ++n) trace.c[n].assign(n + 1, ElemId{});

  trace.stages.push_back({{0, 0}, seed.K, std::nullopt, identity_hom(seed.K), 0});
  trace.a[0] = seed.a;
  trace.b[0] = seed.b;
  trace.c[0][0] = seed.c;

  auto transport = [&](const Hom& link, ChainIndex upto) {
    for (std::size_t n = 0; n < depth; ++n) {
      if (ChainIndex{n, 0} <= upto) trace.a[n] = link(trace.a[n]);
      if (ChainIndex{n, n} <= upto) trace.b[n] = link(trace.b[n]);
      for (std::size_t m = 0; m <= n; ++m)
        if (ChainIndex{n, m} <= upto) trace.c[n][m] = link(trace.c[n][m]);
    }
  };

  for (std::size_t n = 1; n < depth; ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      const PresheafPtr& current = trace.stages.back().presheaf;
      ChainIndex previous = trace.stages.back().index;

      std::vector<std::pair<ElemId, ElemId>> targets;  // seed element -> current stage
      if (m == 0) {
        targets = {{seed.b, trace.b[0]}};
      } else if (m < n) {
        targets = {{seed.a, trace.a[n]}, {seed.b, trace.b[m]}};
      } else {
        targets = {{seed.a, trace.a[n]}};
      }

      std::vector<ElemId> gens;
      for (const auto& t : targets) gens.push_back(t.first);
      Materialized glued = materialize(generate(seed.K, gens));
      auto back = glued.inclusion.preimages();
      std::vector<std::pair<ElemId, ElemId>> images;
      for (const auto& [gen, img] : targets) images.emplace_back(*back[idx(gen)], img);

      std::optional<Hom> gluing;
      try {
        gluing = hom_from_generators(glued.presheaf, current, images);
      } catch (const Error& e) {
        throw Error(ErrorKind::GluingNotMono,
                    "gluing map at (" + std::to_string(n) + "," + std::to_string(m) +
                        ") is not well defined: " + e.what());
      }
      if (!gluing->is_mono())
        throw Error(ErrorKind::GluingNotMono, "gluing map at (" + std::to_string(n) + "," +
                                                  std::to_string(m) + ") is not injective");

      PushoutNaming naming;
      naming.base_prefix = "";
      naming.left_prefix = "";
      naming.right_prefix = "";
      naming.right_suffix = "#" + std::to_string(n) + "." + std::to_string(m);
      naming.base_takes_left_name = true;
      PushoutResult po = pushout_monos(*gluing, glued.inclusion, naming);
      if (!po.inA.is_mono() || !po.inB.is_mono())
        throw Error(ErrorKind::Internal, "pushout of monos produced a non-mono");

      transport(po.inA, previous);
      trace.c[n][m] = po.inB(seed.c);
      if (m == 0) trace.a[n] = po.inB(seed.a);
      if (m == n) trace.b[n] = po.inB(seed.b);
      trace.stages.push_back({{n, m}, po.P, po.inA, po.inB, glued.presheaf->size()});
    }
  }
  return trace;
}

OrderReport check_order_pattern(const ChainTrace& trace) {
  const Presheaf& P = trace.final_stage();
  const ArrowId f = trace.seed.f;
  const ArrowId g = trace.seed.g;
  OrderReport report;
  for (std::size_t n = 0; n < trace.depth; ++n) {
    for (std::size_t m = 0; m < trace.depth; ++m) {
      OrderEntry e{n, m, m <= n};
      ElemId an = trace.a[n];
      ElemId bm = trace.b[m];
      if (e.expected) {
        ElemId c = trace.c[n][m];
        e.recorded_ok = P.act(f, c) == an && P.act(g, c) == bm;
      }
      for (ElemId d : P.carrier(P.cat().dom(f)))
        if (P.act(f, d) == an && P.act(g, d) == bm) e.witness = true;
      for (ElemId d : P.elements())
        if (generates(P, d, an) && generates(P, d, bm)) e.connected = true;
      e.violation = e.expected ? !e.recorded_ok : e.connected;
      if (e.violation) ++report.violations;
      report.entries.push_back(e);
    }
  }
  return report;
}

HReport check_H_properties(const ChainTrace& trace) {
  const PresheafPtr& P = trace.final_ptr();
  const std::size_t depth = trace.depth;
  HReport report;
  std::vector<SubPresheaf> ga, gb;
  for (std::size_t n = 0; n < depth; ++n) {
    ga.push_back(principal(P, trace.a[n]));
    gb.push_back(principal(P, trace.b[n]));
  }
  SubPresheaf H = intersect(ga[0], gb[0]);
  report.H = H.elements();

  auto pair_name = [](const char* what, std::size_t i, std::size_t j) {
    return std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t n = 0; n < depth; ++n)
    for (std::size_t m = 0; m < depth; ++m)
      if (!(intersect(ga[n], gb[m]) == H)) {
        report.meets_ab = false;
        report.failures.push_back(pair_name("<a_n>&<b_m>", n, m));
      }
  for (std::size_t n = 0; n < depth; ++n)
    for (std::size_t k = 0; k < depth; ++k) {
      if (n == k) continue;
      if (!(intersect(ga[n], ga[k]) == H)) {
        report.meets_same = false;
        report.failures.push_back(pair_name("<a_n>&<a_n'>", n, k));
      }
      if (!(intersect(gb[n], gb[k]) == H)) {
        report.meets_same = false;
        report.failures.push_back(pair_name("<b_n>&<b_n'>", n, k));
      }
    }
  for (std::size_t n = 0; n < depth; ++n) {
    if (H.contains(trace.a[n])) {
      report.avoids_marked = false;
      report.failures.push_back("a_" + std::to_string(n) + " in H");
    }
    if (H.contains(trace.b[n])) {
      report.avoids_marked = false;
      report.failures.push_back("b_" + std::to_string(n) + " in H");
    }
    for (std::size_t m = 0; m <= n; ++m)
      if (H.contains(trace.c[n][m])) {
        report.avoids_marked = false;
        report.failures.push_back(pair_name("c", n, m) + " in H");
      }
  }
  return report;
}

namespace {

/// edge[x][y] holds some c with f.c = x and g.c = y.
struct SpanRelation {
  std::vector<std::vector<std::optional<ElemId>>> edge;

  SpanRelation(const Presheaf& P, ArrowId f, ArrowId g)
      : edge(P.size(), std::vector<std::optional<ElemId>>(P.size())) {
    for (ElemId c : P.carrier(P.cat().dom(f))) {
      auto& slot = edge[idx(P.act(f, c))][idx(P.act(g, c))];
      if (!slot) slot = c;
    }
  }
  bool has(ElemId x, ElemId y) const { return edge[idx(x)][idx(y)].has_value(); }
};

PatternWitness make_witness(ArrowId f, ArrowId g, const PatternShape& shape,
                            std::vector<ElemId> rows, std::vector<ElemId> cols,
                            const SpanRelation& rel) {
  PatternWitness w{f, g, std::move(rows), std::move(cols), {}};
  for (std::size_t i = 0; i < w.rows.size(); ++i)
    for (std::size_t j = 0; j < w.cols.size(); ++j) {
      if (shape.kind == PatternShape::Kind::Order && i > j) continue;
      w.witnesses.push_back({i, j, *rel.edge[idx(w.rows[i])][idx(w.cols[j])]});
    }
  return w;
}

}  // namespace

std::optional<PatternWitness> find_pattern(const Presheaf& P, ArrowId f, ArrowId g,
                                           const PatternShape& shape) {
  const FinCat& cat = P.cat();
  if (cat.dom(f) != cat.dom(g))
    throw Error(ErrorKind::BadSpan, "'" + cat.arrow_name(f) + "' and '" + cat.arrow_name(g) +
                                        "' do not share a domain");
  if (shape.rows < 1 || shape.cols < 1)
    throw Error(ErrorKind::BadArgument, "pattern thresholds must be at least 1");

  SpanRelation rel(P, f, g);
  auto row_pool = P.carrier(cat.cod(f));
  auto col_pool = P.carrier(cat.cod(g));
  std::vector<ElemId> rows, cols;

  if (shape.kind == PatternShape::Kind::Bipartite) {
    std::function<bool(std::size_t, std::vector<ElemId>)> pick_rows =
        [&](std::size_t from, std::vector<ElemId> common) -> bool {
      if (common.size() < shape.cols) return false;
      if (rows.size() == shape.rows) {
        cols.assign(common.begin(), common.begin() + static_cast<std::ptrdiff_t>(shape.cols));
        return true;
      }
      for (std::size_t r = from; r < row_pool.size(); ++r) {
        ElemId x = row_pool[r];
        std::vector<ElemId> next;
        for (ElemId y : common)
          if (rel.has(x, y)) next.push_back(y);
        rows.push_back(x);
        if (pick_rows(r + 1, std::move(next))) return true;
        rows.pop_back();
      }
      return false;
    };
    if (!pick_rows(0, std::vector<ElemId>(col_pool.begin(), col_pool.end()))) return std::nullopt;
    return make_witness(f, g, shape, rows, cols, rel);
  }

  const std::size_t len = shape.rows;
  std::function<bool()> extend = [&]() -> bool {
    const std::size_t k = rows.size();
    if (k == len) return true;
    for (ElemId x : row_pool) {
      if (std::find(rows.begin(), rows.end(), x) != rows.end()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = !rel.has(x, cols[i]);
      if (!ok) continue;
      for (ElemId y : col_pool) {
        if (std::find(cols.begin(), cols.end(), y) != cols.end() || !rel.has(x, y)) continue;
        bool fits = true;
        for (std::size_t i = 0; i < k && fits; ++i) fits = rel.has(rows[i], y);
        if (!fits) continue;
        rows.push_back(x);
        cols.push_back(y);
        if (extend()) return true;
        rows.pop_back();
        cols.pop_back();
      }
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  return make_witness(f, g, shape, rows, cols, rel);
}

bool verify_pattern(const Presheaf& P, ArrowId f, ArrowId g, const PatternShape& shape,
                    const std::vector<ElemId>& rows, const std::vector<ElemId>& cols) {
  if (P.cat().dom(f) != P.cat().dom(g)) return false;
  if (rows.size() != shape.rows || cols.size() != shape.cols) return false;
  auto distinct = [](std::vector<ElemId> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(rows) || !distinct(cols)) return false;
  SpanRelation rel(P, f, g);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      bool want = shape.kind == PatternShape::Kind::Bipartite || i <= j;
      if (rel.has(rows[i], cols[j]) != want) return false;
    }
  return true;
}

}  // namespace purelab
