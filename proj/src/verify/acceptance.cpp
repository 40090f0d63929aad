#include "purelab/verify/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "purelab/connectivity.hpp"
#include "purelab/fixtures.hpp"
#include "purelab/purity.hpp"
#include "purelab/verify/enumerate.hpp"
#include "purelab/verify/oracle.hpp"
#include "purelab/verify/random.hpp"
#include "purelab/witness.hpp"

namespace purelab::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Tally {
 public:
  Tally(int id, std::string title) : start_(Clock::now()) {
    r_.id = id;
    r_.title = std::move(title);
  }

  void count() { ++r_.instances; }
  void fail(const std::string& what) {
    if (ok_) r_.detail = what;
    ok_ = false;
  }
  bool ok() const { return ok_; }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  CriterionResult finish(bool extra_ok = true, const std::string& summary = {}) {
    r_.seconds = elapsed();
    r_.pass = ok_ && extra_ok;
    if (ok_ && !summary.empty()) r_.detail = summary;
    return r_;
  }

 private:
  CriterionResult r_;
  bool ok_ = true;
  Clock::time_point start_;
};

std::string describe_inclusion(const Hom& incl) {
  std::ostringstream out;
  out << "|L|=" << incl.target().size() << " |K|=" << incl.source().size();
  return out.str();
}

Materialized sub_of(const PresheafPtr& L, const std::vector<bool>& mask) {
  return materialize(SubPresheaf::from_mask(L, mask));
}

// Mixes the criterion number into the seed so the criteria draw
// independent streams.
Rng stream(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return Rng(seq);
}

}  // namespace

CriterionResult check_llp_fixtures() {
  Tally t(1, "LLP fixtures");
  auto expect = [&](const char* name, const CatPtr& cat, bool holds, const char* apex, const char* left,
                    const char* right) {
    t.count();
    LlpResult r = is_llp(*cat);
    if (r.holds != holds) return t.fail(std::string(name) + ": wrong verdict");
    if (holds) return;
    if (!r.witness) return t.fail(std::string(name) + ": no witness");
    const SpanWitness& w = *r.witness;
    if (cat->object_name(w.apex) != apex || cat->arrow_name(w.left) != left || cat->arrow_name(w.right) != right)
      t.fail(std::string(name) + ": witness " + cat->arrow_name(w.left) + "," + cat->arrow_name(w.right));
  };
  expect("SPAN", fixtures::span(), false, "Z", "f", "g");
  expect("C2", fixtures::c2(), true, "", "", "");
  expect("CHAIN3", fixtures::chain3(), true, "", "", "");
  expect("VEE", fixtures::vee(), false, "a", "a->b", "a->c");
  expect("NXTRUNC", fixtures::nxtrunc(), false, "*", "2", "3");
  expect("DELTA1OP", fixtures::delta1_op(), false, "1", "d0", "d1");
  double secs = t.elapsed();
  if (secs >= kLlpSeconds) t.fail("took " + std::to_string(secs) + " s");
  return t.finish(true, "6 categories");
}

CriterionResult check_oracle_equivalence() {
  Tally t(2, "purity oracle equivalence");
  std::size_t pure_count = 0, impure_count = 0;
  for (const CatPtr& cat : {fixtures::span(), fixtures::c2()}) {
    for_each_presheaf(cat, kOracleMaxSize, [&](const PresheafPtr& L) {
      for (const auto& mask : all_submasks(*L)) {
        Materialized K = sub_of(L, mask);
        t.count();
        bool pure = is_pure(K.inclusion).pure;
        ++(pure ? pure_count : impure_count);
        if (pure != pp_type_pure(K.inclusion))
          t.fail("disagreement at " + describe_inclusion(K.inclusion));
      }
    });
  }
  double secs = t.elapsed();
  if (secs >= kOracleSeconds) t.fail("took " + std::to_string(secs) + " s");
  return t.finish(true, std::to_string(pure_count) + " pure, " + std::to_string(impure_count) + " not pure");
}

CriterionResult check_span_pure_iff_split() {
  Tally t(3, "SPAN pure iff split");
  std::size_t split_count = 0, other_count = 0;
  for_each_presheaf(fixtures::span(), kSplitMaxSize, [&](const PresheafPtr& L) {
    for (const auto& mask : all_submasks(*L)) {
      Materialized K = sub_of(L, mask);
      t.count();
      bool split = is_split(K.inclusion).has_value();
      bool pure = is_pure(K.inclusion).pure;
      // The pp-type oracle is the reference notion of purity here.
      bool oracle = pp_type_pure(K.inclusion);
      ++(split ? split_count : other_count);
      if (split != pure || split != oracle) t.fail("mismatch at " + describe_inclusion(K.inclusion));
    }
  });
  return t.finish(true, std::to_string(split_count) + " split, " + std::to_string(other_count) + " not split");
}

CriterionResult check_pullbacks_effective(std::uint64_t seed) {
  Tally t(4, "pullbacks of pure monos are pure-effective");
  Rng rng = stream(seed, 4);
  const std::vector<CatPtr> cats = {fixtures::chain3(), fixtures::c2()};
  for (std::size_t k = 0; k < kEffectiveSquares; ++k) {
    const CatPtr& cat = cats[k % cats.size()];
    auto sq = random_pure_pullback_square(cat, rng, kEffectiveMaxSize, k % 4 >= 2);
    if (!sq) {
      t.fail("could not sample a square");
      break;
    }
    t.count();
    PureEffectiveResult r = is_pure_effective(*sq);
    if (!r.holds) t.fail(std::string("square ") + std::to_string(k) + ": " + std::string(to_string(r.diagnostic)));
  }
  double secs = t.elapsed();
  if (secs >= kEffectiveSeconds) t.fail("took " + std::to_string(secs) + " s");
  return t.finish();
}

CriterionResult check_path_bound(std::uint64_t seed) {
  Tally t(5, "paths outside K have length at most 2");
  Rng rng = stream(seed, 5);
  const std::vector<CatPtr> cats = {fixtures::chain3(), fixtures::c2()};
  std::size_t pairs = 0, long_paths = 0;
  for (std::size_t k = 0; k < kPathInstances; ++k) {
    const CatPtr& cat = cats[k % cats.size()];
    PresheafPtr L = random_presheaf(cat, rng, kPathMaxSize);
    SubPresheaf K = random_subpresheaf(L, rng);
    ConnectivityReport report = components_outside(K);
    t.count();
    auto adjacent = [&](ElemId x, ElemId y) {
      for (ArrowId f : cat->arrows_from(L->sort(x)))
        if (L->act(f, x) == y) return true;
      for (ArrowId f : cat->arrows_from(L->sort(y)))
        if (L->act(f, y) == x) return true;
      return false;
    };
    for (ElemId a : L->elements())
      for (ElemId b : L->elements()) {
        if (idx(a) >= idx(b) || K.contains(a) || K.contains(b)) continue;
        auto path = connected_outside(K, a, b);
        bool same = report.component_of[idx(a)] == report.component_of[idx(b)];
        if (path.has_value() != same) {
          t.fail("path search disagrees with the components");
          continue;
        }
        if (!path) continue;
        ++pairs;
        const auto& p = *path;
        for (std::size_t s = 0; s + 1 < p.size(); ++s)
          if (K.contains(p[s + 1]) || !adjacent(p[s], p[s + 1])) t.fail("invalid path step");
        if (p.size() > 3) t.fail("path of length " + std::to_string(p.size() - 1));
        if (p.size() == 3) {
          ++long_paths;
          if (adjacent(a, b)) t.fail("length-2 path between adjacent elements");
          ElemId ga[] = {a}, gb[] = {b};
          SubPresheaf meet = intersect(generate(L, ga), generate(L, gb));
          if (!meet.contains(p[1])) t.fail("midpoint outside <a> & <b>");
        }
      }
  }
  return t.finish(true, std::to_string(pairs) + " connected pairs, " + std::to_string(long_paths) +
                            " at distance 2");
}

CriterionResult check_chain_construction() {
  Tally t(6, "order-property chain at depth 4");
  PresheafPtr K = fixtures::rep_z();
  const FinCat& cat = K->cat();
  ChainSeed seed{K, K->element("f"), K->element("g"), K->element("idZ"), cat.arrow_named("f"),
                 cat.arrow_named("g")};
  ChainTrace trace = build_chain(seed, kChainDepth);
  const std::vector<std::size_t> prefix = {3, 5, 7, 9, 10, 12};
  std::size_t prev = 0;
  for (std::size_t s = 0; s < trace.stages.size(); ++s) {
    const ChainStage& st = trace.stages[s];
    t.count();
    if (!st.embedding.is_mono()) t.fail("embedding not mono at stage " + std::to_string(s));
    if (st.link && !st.link->is_mono()) t.fail("link not mono at stage " + std::to_string(s));
    std::size_t size = st.presheaf->size();
    if (s > 0 && size != prev + K->size() - st.glued) t.fail("size formula fails at stage " + std::to_string(s));
    if (s < prefix.size() && size != prefix[s]) t.fail("stage " + std::to_string(s) + " has size " + std::to_string(size));
    prev = size;
  }
  if (trace.stages.size() != kChainDepth * (kChainDepth + 1) / 2) t.fail("wrong number of stages");
  OrderReport order = check_order_pattern(trace);
  if (!order.ok()) t.fail(std::to_string(order.violations) + " order violations");
  for (const auto& e : order.entries)
    if (e.witness != (e.m <= e.n)) t.fail("witness pattern differs at (" + std::to_string(e.n) + "," + std::to_string(e.m) + ")");
  HReport h = check_H_properties(trace);
  if (!h.ok()) t.fail("H clauses fail");
  if (!h.H.empty()) t.fail("H is not empty");
  double secs = t.elapsed();
  if (secs >= kChainSeconds) t.fail("took " + std::to_string(secs) + " s");
  std::string sizes;
  for (const auto& st : trace.stages) sizes += (sizes.empty() ? "" : ",") + std::to_string(st.presheaf->size());
  return t.finish(true, "sizes " + sizes);
}

CriterionResult check_pure_mono_facts(std::uint64_t seed) {
  Tally t(7, "pure mono facts");
  Rng rng = stream(seed, 7);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::vee()};
  const std::size_t cap = 100 * kFactInstances;

  std::size_t split_cases = 0;
  for (std::size_t k = 0; k < cap && split_cases < kFactInstances; ++k) {
    PresheafPtr L = random_presheaf(cats[k % cats.size()], rng, kFactMaxSize);
    Materialized K = materialize(random_subpresheaf(L, rng));
    if (!is_split(K.inclusion)) continue;
    ++split_cases;
    t.count();
    if (!is_pure(K.inclusion).pure || !pp_type_pure(K.inclusion)) t.fail("split but not pure");
  }

  std::size_t cancel_cases = 0;
  for (std::size_t k = 0; k < cap && cancel_cases < kFactInstances; ++k) {
    PresheafPtr L = random_presheaf(cats[k % cats.size()], rng, kFactMaxSize);
    Materialized A = materialize(random_subpresheaf(L, rng));
    Materialized K = materialize(random_subpresheaf(A.presheaf, rng));
    Hom gf = compose(A.inclusion, K.inclusion);
    if (!pp_type_pure(gf)) continue;
    ++cancel_cases;
    t.count();
    if (!is_pure(gf).pure) t.fail("composite purity disagrees with the oracle");
    if (!is_pure(K.inclusion).pure || !pp_type_pure(K.inclusion)) t.fail("left cancellation fails");
  }

  std::size_t pushout_cases = 0;
  for (std::size_t k = 0; k < cap && pushout_cases < kFactInstances; ++k) {
    SpanOfMonos span = random_span_of_monos(cats[k % cats.size()], rng, kFactMaxSize);
    if (!is_pure(span.kA).pure) continue;
    ++pushout_cases;
    t.count();
    PushoutResult po = pushout_monos(span.kA, span.kB);
    if (!is_pure(po.inB).pure || !pp_type_pure(po.inB)) t.fail("pushout of a pure mono is not pure");
  }
  bool enough = split_cases >= kFactInstances && cancel_cases >= kFactInstances && pushout_cases >= kFactInstances;
  if (!enough) t.fail("too few instances sampled");
  return t.finish(true, std::to_string(split_cases) + " split, " + std::to_string(cancel_cases) +
                            " cancellation, " + std::to_string(pushout_cases) + " pushout instances");
}

CriterionResult check_pushout_is_pullback(std::uint64_t seed) {
  Tally t(8, "pushout squares are pullbacks");
  Rng rng = stream(seed, 8);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::vee(),
                                    fixtures::delta1_op()};
  for (std::size_t k = 0; k < kPushoutInstances; ++k) {
    SpanOfMonos span = random_span_of_monos(cats[k % cats.size()], rng, kFactMaxSize);
    PushoutResult po = pushout_monos(span.kA, span.kB);
    t.count();
    if (!po.inA.is_mono() || !po.inB.is_mono()) t.fail("coprojection not mono");
    if (!is_pullback_square(as_square(po))) t.fail("pushout square is not a pullback at instance " + std::to_string(k));
  }
  return t.finish();
}

CriterionResult check_amalgamation(std::uint64_t seed) {
  Tally t(9, "amalgamation of solutions");
  Rng rng = stream(seed, 9);
  const std::vector<CatPtr> cats = {fixtures::chain3(), fixtures::c2()};
  std::size_t systems = 0;
  for (std::size_t k = 0; k < kAmalgamationSquares; ++k) {
    auto sq = random_pure_pullback_square(cats[k % cats.size()], rng, kEffectiveMaxSize, k % 4 >= 2);
    if (!sq) {
      t.fail("could not sample a square");
      break;
    }
    t.count();
    PushoutResult po = pushout_monos(sq->kA, sq->kB);
    Hom u = induced_map(po, *sq);
    if (!u.is_mono()) {
      t.fail("induced map not mono");
      continue;
    }
    for (int rep = 0; rep < 3; ++rep) {
      SystemInstance inst = random_solvable_system(u, rng, kAmalgamationVars);
      if (inst.system.vars.empty()) continue;
      ++systems;
      if (!satisfies(u.target(), map_parameters(inst.system, u), inst.solution)) {
        t.fail("generated system is not solved in L");
        continue;
      }
      AmalgamationResult r = amalgamate_solution(*sq, po, inst.system, inst.solution);
      if (!satisfies(*po.P, inst.system, r.assignment)) t.fail("amalgamated assignment fails in P");
      auto direct = solve_system(*po.P, inst.system);
      if (!direct) t.fail("direct solving in P fails although amalgamation succeeded");
      else if (!satisfies(*po.P, inst.system, *direct)) t.fail("direct solution is wrong");
    }
  }
  return t.finish(true, std::to_string(systems) + " systems");
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  return {check_llp_fixtures(),         check_oracle_equivalence(),  check_span_pure_iff_split(),
          check_pullbacks_effective(seed), check_path_bound(seed),   check_chain_construction(),
          check_pure_mono_facts(seed),  check_pushout_is_pullback(seed), check_amalgamation(seed)};
}

std::string format_line(const CriterionResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%zu instances, %.3f s)", r.instances, r.seconds);
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + "  " + r.title + "  " + buf;
  if (!r.detail.empty()) line += "  " + r.detail;
  return line;
}

}  // namespace purelab::verify
