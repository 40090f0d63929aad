#include <gtest/gtest.h>

#include "purelab/verify/enumerate.hpp"
#include "purelab/verify/random.hpp"
#include "test_support.hpp"

using namespace purelab;
using namespace purelab::testing;

TEST(Pushout, AlongGInRepZ) {
  auto rep = fixtures::rep_z();
  Materialized k = materialize(gen(rep, {"g"}));
  PushoutResult po = pushout_monos(k.inclusion, k.inclusion);
  EXPECT_EQ(po.P->size(), 5u);
  EXPECT_TRUE(po.inA.is_mono());
  EXPECT_TRUE(po.inB.is_mono());
  EXPECT_EQ(intersect(po.inA.image(), po.inB.image()).size(), 1u);
}

TEST(Pushout, IdentityLegGivesB) {
  auto rep = fixtures::rep_z();
  Materialized b = materialize(gen(rep, {"f", "g"}));
  Materialized k = materialize(gen(rep, {"f"}));
  Hom kB = verify::inclusion_between(k, b);
  PushoutResult po = pushout_monos(identity_hom(k.presheaf), kB);
  EXPECT_TRUE(is_iso(po.inB));
}

TEST(Pushout, CoproductOfPoints) {
  auto point = fixtures::c2_point();
  Materialized empty = materialize(SubPresheaf::empty(point));
  PushoutResult po = pushout_monos(empty.inclusion, empty.inclusion);
  EXPECT_EQ(po.P->size(), 2u);
  ArrowId s = po.P->cat().arrow_named("s");
  for (ElemId e : po.P->elements()) EXPECT_EQ(po.P->act(s, e), e);
}

TEST(Pushout, ElementOrderWithinSorts) {
  auto rep = fixtures::rep_z();
  Materialized k = materialize(gen(rep, {"g"}));
  PushoutResult po = pushout_monos(k.inclusion, k.inclusion);
  const FinCat& c = po.P->cat();
  auto names = [&](const char* obj) {
    std::vector<std::string> out;
    for (ElemId e : po.P->carrier(c.object_named(obj))) out.push_back(po.P->name(e));
    return out;
  };
  EXPECT_EQ(names("Y"), (std::vector<std::string>{"K/g"}));
  EXPECT_EQ(names("X"), (std::vector<std::string>{"A/f", "B/f"}));
  EXPECT_EQ(names("Z"), (std::vector<std::string>{"A/idZ", "B/idZ"}));
}

TEST(Pushout, RejectsNonMono) {
  auto regular = fixtures::c2_regular();
  auto point = fixtures::c2_point();
  Hom collapse = make_hom(regular, point, verify::all_hom_tables(*regular, *point)[0]);
  EXPECT_EQ(kind_of([&] { pushout_monos(collapse, collapse); }), ErrorKind::NotMono);
}

TEST(Pullback, Examples) {
  auto rep = fixtures::rep_z();
  Materialized f = materialize(gen(rep, {"f"}));
  Materialized g = materialize(gen(rep, {"g"}));
  EXPECT_EQ(pullback_monos(f.inclusion, g.inclusion).K().size(), 0u);

  Hom id = identity_hom(rep);
  Square whole = pullback_monos(id, id);
  EXPECT_EQ(whole.K().size(), rep->size());

  Square sq = pullback_monos(id, f.inclusion);
  ASSERT_EQ(sq.K().size(), 1u);
  EXPECT_EQ(sq.K().name(sq.K().elements()[0]), "f");
  EXPECT_TRUE(is_pullback_square(sq));
}

TEST(InducedMap, Examples) {
  auto rep = fixtures::rep_z();
  Materialized k = materialize(gen(rep, {"g"}));
  PushoutResult po = pushout_monos(k.inclusion, k.inclusion);
  EXPECT_TRUE(is_iso(induced_map(po, as_square(po))));

  Hom id = identity_hom(rep);
  Materialized empty = materialize(SubPresheaf::empty(rep));
  Square disjoint = make_square(empty.inclusion, empty.inclusion, id, id);
  PushoutResult po2 = pushout_monos(disjoint.kA, disjoint.kB);
  EXPECT_FALSE(induced_map(po2, disjoint).is_mono());
  EXPECT_FALSE(is_pullback_square(disjoint));

  Materialized f = materialize(gen(rep, {"f"}));
  Square pb = pullback_monos(id, f.inclusion);
  PushoutResult po3 = pushout_monos(pb.kA, pb.kB);
  EXPECT_TRUE(is_iso(induced_map(po3, pb)));
}

TEST(Square, Validation) {
  auto rep = fixtures::rep_z();
  Hom id = identity_hom(rep);
  Materialized f = materialize(gen(rep, {"f"}));
  EXPECT_EQ(kind_of([&] { make_square(f.inclusion, id, id, id); }), ErrorKind::SourceMismatch);
  EXPECT_EQ(kind_of([&] { make_square(id, id, id, identity_hom(rep_z_twice())); }), ErrorKind::TargetMismatch);

  auto two = fixtures::c2_two_points();
  Materialized p = materialize(gen(two, {"p"}));
  Hom swap = make_hom(two, two, {two->element("q"), two->element("p")});
  EXPECT_EQ(kind_of([&] { make_square(p.inclusion, p.inclusion, identity_hom(two), swap); }),
            ErrorKind::NotCommuting);
}

TEST(PushoutProperty, MonosAndPullbacks) {
  verify::Rng rng(21);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::delta1_op(),
                                    fixtures::nxtrunc()};
  for (int t = 0; t < 300; ++t) {
    auto span = verify::random_span_of_monos(cats[t % cats.size()], rng, 7);
    PushoutResult po = pushout_monos(span.kA, span.kB);
    EXPECT_TRUE(po.inA.is_mono());
    EXPECT_TRUE(po.inB.is_mono());
    EXPECT_EQ(po.P->size(), span.kA.target().size() + span.kB.target().size() - span.kA.source().size());
    EXPECT_TRUE(is_pullback_square(as_square(po)));
  }
}

TEST(PushoutProperty, InducedMapIsUnique) {
  verify::Rng rng(22);
  const std::vector<CatPtr> cats = {fixtures::span(), fixtures::c2(), fixtures::chain3()};
  for (int t = 0; t < 120; ++t) {
    auto L = verify::random_presheaf(cats[t % cats.size()], rng, 6);
    Materialized A = materialize(verify::random_subpresheaf(L, rng));
    Materialized B = materialize(verify::random_subpresheaf(L, rng));
    Square sq = pullback_monos(A.inclusion, B.inclusion);
    PushoutResult po = pushout_monos(sq.kA, sq.kB);
    Hom u = induced_map(po, sq);
    std::size_t commuting = 0;
    for (const auto& table : verify::all_hom_tables(*po.P, *L)) {
      Hom h = make_hom(po.P, L, table);
      if (compose(h, po.inA).table() == sq.aL.table() && compose(h, po.inB).table() == sq.bL.table()) {
        ++commuting;
        EXPECT_EQ(table, u.table());
      }
    }
    EXPECT_EQ(commuting, 1u);
  }
}
