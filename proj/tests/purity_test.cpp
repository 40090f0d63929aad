#include <gtest/gtest.h>

#include "purelab/io.hpp"
#include "purelab/verify/enumerate.hpp"
#include "purelab/verify/oracle.hpp"
#include "purelab/verify/random.hpp"
#include "test_support.hpp"

using namespace purelab;
using namespace purelab::testing;

namespace {

EqSystem rep_z_system(const Presheaf& rep) {
  const FinCat& c = rep.cat();
  EqSystem sys;
  sys.vars.push_back({"z", c.object_named("Z")});
  sys.eqs.emplace_back(Anchor{c.arrow_named("f"), 0, rep.element("f")});
  sys.eqs.emplace_back(Anchor{c.arrow_named("g"), 0, rep.element("g")});
  return sys;
}

// A presheaf over the truncated simplex category's opposite in which two
// pure subpresheaves meet purely, yet the induced map out of their pushout
// is not pure.
const char* kDeltaL = R"({
  "category": "unused",
  "carriers": {"0": ["e0", "e1", "e2"], "1": ["e3", "e4", "e5", "e6"]},
  "actions": {
    "d0": {"e3": "e0", "e4": "e1", "e5": "e2", "e6": "e1"},
    "d1": {"e3": "e0", "e4": "e2", "e5": "e2", "e6": "e1"},
    "s0": {"e0": "e3", "e1": "e6", "e2": "e5"},
    "c0": {"e3": "e3", "e4": "e5", "e5": "e5", "e6": "e6"},
    "c1": {"e3": "e3", "e4": "e6", "e5": "e5", "e6": "e6"}
  }
})";

}  // namespace

TEST(SolveSystem, Examples) {
  auto rep = fixtures::rep_z();
  EqSystem sys = rep_z_system(*rep);
  auto sol = solve_system(*rep, sys);
  ASSERT_TRUE(sol);
  EXPECT_EQ(rep->name((*sol)[0]), "idZ");

  auto empty = solve_system(*rep, EqSystem{});
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->empty());

  EqSystem only_f;
  only_f.vars = sys.vars;
  only_f.eqs = {sys.eqs[0]};
  EXPECT_FALSE(solve_system(gen(rep, {"f"}), only_f));
}

TEST(SolveSystem, TypeErrors) {
  auto rep = fixtures::rep_z();
  const FinCat& c = rep->cat();
  EqSystem wrong_sort;
  wrong_sort.vars.push_back({"x", c.object_named("X")});
  wrong_sort.eqs.emplace_back(Anchor{c.arrow_named("f"), 0, rep->element("f")});
  EXPECT_EQ(kind_of([&] { solve_system(*rep, wrong_sort); }), ErrorKind::SortMismatch);

  EqSystem bad_param;
  bad_param.vars.push_back({"z", c.object_named("Z")});
  bad_param.eqs.emplace_back(Anchor{c.arrow_named("f"), 0, rep->element("g")});
  EXPECT_EQ(kind_of([&] { solve_system(*rep, bad_param); }), ErrorKind::SortMismatch);

  EqSystem out_of_range;
  out_of_range.vars.push_back({"z", c.object_named("Z")});
  out_of_range.eqs.emplace_back(Link{c.arrow_named("f"), 0, c.arrow_named("f"), 3});
  EXPECT_NE(kind_of([&] { solve_system(*rep, out_of_range); }), ErrorKind::Internal);

  EqSystem param_outside;
  param_outside.vars.push_back({"z", c.object_named("Z")});
  param_outside.eqs.emplace_back(Anchor{c.arrow_named("g"), 0, rep->element("g")});
  EXPECT_EQ(kind_of([&] { solve_system(gen(rep, {"f"}), param_outside); }), ErrorKind::BadParameters);
}

TEST(SolveSystem, AgreesWithBruteForce) {
  verify::Rng rng(41);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::delta1_op()};
  for (int t = 0; t < 300; ++t) {
    auto M = verify::random_presheaf(cats[t % cats.size()], rng, 7);
    if (M->size() == 0) continue;
    // A system generated from a random tuple, then posed in a random
    // subpresheaf containing the parameters.
    auto inst = verify::random_solvable_system(identity_hom(M), rng, 3);
    auto sol = solve_system(*M, inst.system);
    ASSERT_TRUE(sol);
    EXPECT_TRUE(satisfies(*M, inst.system, *sol));

    std::vector<ElemId> params;
    for (const auto& eq : inst.system.eqs)
      if (auto* a = std::get_if<Anchor>(&eq)) params.push_back(a->p);
    SubPresheaf within = unite(generate(M, params), verify::random_subpresheaf(M, rng));
    bool brute = false;
    std::vector<std::size_t> digits(inst.system.vars.size(), 0);
    std::vector<std::vector<ElemId>> domains;
    for (const auto& v : inst.system.vars) {
      std::vector<ElemId> d;
      for (ElemId e : M->carrier(v.sort))
        if (within.contains(e)) d.push_back(e);
      domains.push_back(d);
    }
    std::function<void(std::size_t, Assignment&)> rec = [&](std::size_t i, Assignment& a) {
      if (brute) return;
      if (i == domains.size()) {
        brute = satisfies(*M, inst.system, a);
        return;
      }
      for (ElemId e : domains[i]) {
        a.push_back(e);
        rec(i + 1, a);
        a.pop_back();
      }
    };
    Assignment scratch;
    rec(0, scratch);
    auto restricted = solve_system(within, inst.system);
    EXPECT_EQ(restricted.has_value(), brute);
    if (restricted)
      for (ElemId e : *restricted) EXPECT_TRUE(within.contains(e));
  }
}

TEST(Purity, IdentityIsPure) {
  auto rep = fixtures::rep_z();
  PurityCertificate cert = is_pure(identity_hom(rep));
  EXPECT_TRUE(cert.pure);
  ASSERT_TRUE(cert.retraction);
  EXPECT_EQ(cert.retraction->table(), identity_hom(rep).table());
  EXPECT_TRUE(is_split(identity_hom(rep)));
}

TEST(Purity, GeneratedByFIsNotPure) {
  auto rep = fixtures::rep_z();
  Materialized f = materialize(gen(rep, {"f"}));
  PurityCertificate cert = is_pure(f.inclusion);
  EXPECT_FALSE(cert.pure);
  ASSERT_TRUE(cert.falsifier);
  const EqSystem& sys = cert.falsifier->system;
  ASSERT_EQ(sys.vars.size(), 1u);
  EXPECT_EQ(rep->cat().object_name(sys.vars[0].sort), "Y");
  EXPECT_TRUE(sys.eqs.empty());
  EXPECT_TRUE(satisfies(*rep, sys, cert.falsifier->solution));
  EXPECT_FALSE(solve_system(f.inclusion.image(), sys));
  EXPECT_FALSE(is_split(f.inclusion));
}

TEST(Purity, FixedPointInTwoPoints) {
  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  PurityCertificate cert = is_pure(p.inclusion);
  ASSERT_TRUE(cert.pure);
  ASSERT_TRUE(cert.retraction);
  EXPECT_EQ(cert.retraction->source().size(), 2u);
  EXPECT_EQ(cert.retraction->target().name((*cert.retraction)(two->element("q"))), "p");
}

TEST(Purity, RejectsNonMono) {
  auto regular = fixtures::c2_regular();
  auto point = fixtures::c2_point();
  Hom collapse = make_hom(regular, point, verify::all_hom_tables(*regular, *point)[0]);
  EXPECT_EQ(kind_of([&] { is_pure(collapse); }), ErrorKind::NotMono);
}

TEST(Purity, SpanCategoryCaseAnalysis) {
  // Over the span category a pure inclusion whose Z sort is inhabited in K
  // splits. Purity is decided by the pp-type oracle here.
  auto span = fixtures::span();
  ObjectId z = span->object_named("Z");
  std::size_t cases = 0;
  verify::for_each_presheaf(span, 6, [&](const PresheafPtr& L) {
    for (const auto& mask : verify::all_submasks(*L)) {
      Materialized K = materialize(SubPresheaf::from_mask(L, mask));
      if (K.presheaf->carrier_size(z) == 0 || !verify::pp_type_pure(K.inclusion)) continue;
      ++cases;
      EXPECT_TRUE(is_split(K.inclusion).has_value());
    }
  });
  EXPECT_GT(cases, 100u);
}

TEST(Purity, CertificatesAreReverifiable) {
  verify::Rng rng(42);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::vee(),
                                    fixtures::delta1_op()};
  for (int t = 0; t < 400; ++t) {
    auto L = verify::random_presheaf(cats[t % cats.size()], rng, 7);
    Materialized K = materialize(verify::random_subpresheaf(L, rng));
    PurityCertificate cert = is_pure(K.inclusion);
    EXPECT_EQ(cert.pure, verify::pp_type_pure(K.inclusion));
    if (cert.pure) {
      ASSERT_TRUE(cert.retraction);
      EXPECT_EQ(compose(*cert.retraction, K.inclusion).table(), identity_hom(K.presheaf).table());
    } else {
      ASSERT_TRUE(cert.falsifier);
      EXPECT_TRUE(satisfies(*L, cert.falsifier->system, cert.falsifier->solution));
      EXPECT_FALSE(solve_system(K.inclusion.image(), cert.falsifier->system));
    }
    // The canonical system is solvable in the image exactly when a
    // retraction exists.
    EXPECT_EQ(solve_system(K.inclusion.image(), canonical_system(K.inclusion)).has_value(),
              is_split(K.inclusion).has_value());
  }
}

TEST(PurityFacts, SplitImpliesPureAndLeftCancellation) {
  verify::Rng rng(43);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::vee()};
  std::size_t cancel = 0;
  for (int t = 0; t < 600; ++t) {
    auto L = verify::random_presheaf(cats[t % cats.size()], rng, 6);
    Materialized A = materialize(verify::random_subpresheaf(L, rng));
    Materialized K = materialize(verify::random_subpresheaf(A.presheaf, rng));
    if (is_split(A.inclusion)) EXPECT_TRUE(verify::pp_type_pure(A.inclusion));
    Hom gf = compose(A.inclusion, K.inclusion);
    if (is_pure(gf).pure) {
      ++cancel;
      EXPECT_TRUE(is_pure(K.inclusion).pure);
    }
  }
  EXPECT_GT(cancel, 50u);
}

TEST(PurityFacts, PushoutOfPureMonoIsPure) {
  verify::Rng rng(44);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::delta1_op()};
  std::size_t cases = 0;
  for (int t = 0; t < 600; ++t) {
    auto span = verify::random_span_of_monos(cats[t % cats.size()], rng, 6);
    if (!is_pure(span.kA).pure) continue;
    ++cases;
    PushoutResult po = pushout_monos(span.kA, span.kB);
    EXPECT_TRUE(verify::pp_type_pure(po.inB));
  }
  EXPECT_GT(cases, 50u);
}

TEST(PureEffective, PushoutSquareIntoItsOwnPushout) {
  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  PushoutResult po = pushout_monos(p.inclusion, p.inclusion);
  PureEffectiveResult r = is_pure_effective(as_square(po));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.diagnostic, EffectiveDiagnostic::PureEffective);
  EXPECT_TRUE(is_iso(r.induced));
}

TEST(PureEffective, EmptyBaseOverC2) {
  // The empty subpresheaf of the regular act is not pure (the sort is
  // inhabited in L only), so the square is rejected up front; its induced
  // map is still computable and fails to be mono.
  auto regular = fixtures::c2_regular();
  Materialized empty = materialize(SubPresheaf::empty(regular));
  Hom id = identity_hom(regular);
  Square sq = make_square(empty.inclusion, empty.inclusion, id, id);
  EXPECT_EQ(kind_of([&] { is_pure_effective(sq); }), ErrorKind::NotPureInputs);
  PushoutResult po = pushout_monos(sq.kA, sq.kB);
  EXPECT_EQ(po.P->size(), 4u);
  EXPECT_FALSE(induced_map(po, sq).is_mono());
}

TEST(PureEffective, GluedFixedPointIsNotMono) {
  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  Hom id = identity_hom(two);
  PureEffectiveResult r = is_pure_effective(make_square(p.inclusion, p.inclusion, id, id));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.diagnostic, EffectiveDiagnostic::InducedNotMono);
}

TEST(PureEffective, NonLlpPullbackCanFail) {
  std::string cat_ref;
  auto L = std::make_shared<const Presheaf>(
      validate_presheaf(fixtures::delta1_op(), io::presheaf_from_json(io::Json::parse(kDeltaL), cat_ref)));
  Materialized A = materialize(gen(L, {"e0", "e2", "e3", "e5"}));
  Materialized B = materialize(gen(L, {"e0", "e1", "e3", "e6"}));
  ASSERT_EQ(A.presheaf->size(), 4u);
  ASSERT_EQ(B.presheaf->size(), 4u);
  Square sq = pullback_monos(A.inclusion, B.inclusion);
  PureEffectiveResult r = is_pure_effective(sq);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.diagnostic, EffectiveDiagnostic::InducedNotPure);
  EXPECT_TRUE(r.induced.is_mono());
  EXPECT_FALSE(verify::pp_type_pure(r.induced));
}

TEST(PureEffective, ChainPullbacksOfPureMonos) {
  verify::Rng rng(45);
  for (int t = 0; t < 200; ++t) {
    auto sq = verify::random_pure_pullback_square(fixtures::chain3(), rng, 8, t % 2 == 1);
    ASSERT_TRUE(sq);
    EXPECT_TRUE(is_pure_effective(*sq).holds);
  }
}

TEST(PureEffective, DisjointConnectivityImpliesEffective) {
  // Over any category: pullback squares of pure monos whose outside
  // components separate A \ K from B \ K are pure-effective.
  verify::Rng rng(46);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::delta1_op(), fixtures::vee(), fixtures::nxtrunc()};
  std::size_t cases = 0;
  for (int t = 0; t < 400; ++t) {
    auto sq = verify::random_pure_pullback_square(cats[t % cats.size()], rng, 7);
    if (!sq) continue;
    ConnectivityReport report = components_outside(intersect(sq->aL.image(), sq->bL.image()));
    std::vector<bool> a_out(sq->L().size()), b_out(sq->L().size());
    auto a_img = sq->aL.image(), b_img = sq->bL.image();
    for (ElemId e : sq->L().elements()) {
      bool in_k = a_img.contains(e) && b_img.contains(e);
      a_out[idx(e)] = a_img.contains(e) && !in_k;
      b_out[idx(e)] = b_img.contains(e) && !in_k;
    }
    auto ca = report.closure(a_out), cb = report.closure(b_out);
    bool disjoint = true;
    for (std::size_t i = 0; i < ca.size(); ++i) disjoint = disjoint && !(ca[i] && cb[i]);
    if (!disjoint) continue;
    ++cases;
    EXPECT_TRUE(is_pure_effective(*sq).holds);
  }
  EXPECT_GT(cases, 50u);
}

TEST(Amalgamation, Examples) {
  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  Materialized q_side = materialize(gen(two, {"p", "q"}));
  // A = {p}, B = {p, q}, K = {p}: the square is a pullback of pure monos.
  Square sq = pullback_monos(p.inclusion, q_side.inclusion);
  PushoutResult po = pushout_monos(sq.kA, sq.kB);

  AmalgamationResult empty = amalgamate_solution(sq, po, EqSystem{}, Assignment{});
  EXPECT_TRUE(empty.assignment.empty());

  const FinCat& c = two->cat();
  ArrowId s = c.arrow_named("s");
  ElemId q_in_p = po.inB(sq.B().element("q"));
  EqSystem anchored;
  anchored.vars.push_back({"x", c.object_named("*")});
  anchored.eqs.emplace_back(Anchor{s, 0, q_in_p});
  AmalgamationResult r = amalgamate_solution(sq, po, anchored, {two->element("q")});
  ASSERT_EQ(r.assignment.size(), 1u);
  EXPECT_EQ(r.assignment[0], q_in_p);
  EXPECT_FALSE(r.in_left_part[0]);
}

TEST(Amalgamation, CrossLinkValueLiesInK) {
  auto chain = fixtures::chain3();
  verify::Rng rng(47);
  std::size_t cross = 0;
  for (int t = 0; t < 300 && cross == 0; ++t) {
    auto sq = verify::random_pure_pullback_square(chain, rng, 8, true);
    ASSERT_TRUE(sq);
    PushoutResult po = pushout_monos(sq->kA, sq->kB);
    Hom u = induced_map(po, *sq);
    auto inst = verify::random_solvable_system(u, rng, 4);
    if (inst.system.vars.empty()) continue;
    AmalgamationResult r = amalgamate_solution(*sq, po, inst.system, inst.solution);
    EXPECT_TRUE(satisfies(*po.P, inst.system, r.assignment));
    auto k_img = intersect(sq->aL.image(), sq->bL.image());
    for (const CrossValue& cv : r.cross) {
      ++cross;
      EXPECT_TRUE(k_img.contains(cv.value));
      const auto& link = std::get<Link>(inst.system.eqs[cv.equation]);
      EXPECT_NE(r.in_left_part[link.i], r.in_left_part[link.j]);
    }
  }
  EXPECT_GT(cross, 0u);
}

TEST(Amalgamation, Errors) {
  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  Hom id = identity_hom(two);
  Square glued = make_square(p.inclusion, p.inclusion, id, id);
  PushoutResult po = pushout_monos(glued.kA, glued.kB);
  EXPECT_EQ(kind_of([&] { amalgamate_solution(glued, po, EqSystem{}, Assignment{}); }),
            ErrorKind::ConnectivityPreconditionFailed);

  Materialized whole = materialize(gen(two, {"p", "q"}));
  Square sq = pullback_monos(p.inclusion, whole.inclusion);
  PushoutResult po2 = pushout_monos(sq.kA, sq.kB);
  const FinCat& c = two->cat();
  EqSystem sys;
  sys.vars.push_back({"x", c.object_named("*")});
  sys.eqs.emplace_back(Anchor{c.identity(c.object_named("*")), 0, po2.inA(sq.A().element("p"))});
  EXPECT_EQ(kind_of([&] { amalgamate_solution(sq, po2, sys, {two->element("q")}); }), ErrorKind::NotSolvableInL);
}
