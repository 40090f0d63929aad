#include <bit>

#include <gtest/gtest.h>

#include "purelab/verify/enumerate.hpp"
#include "purelab/witness.hpp"
#include "test_support.hpp"

using namespace purelab;
using namespace purelab::testing;

namespace {

ChainSeed span_seed() {
  PresheafPtr K = fixtures::rep_z();
  const FinCat& c = K->cat();
  return {K, K->element("f"), K->element("g"), K->element("idZ"), c.arrow_named("f"), c.arrow_named("g")};
}

ChainSeed representable_seed(const CatPtr& cat, const char* object, const char* f, const char* g) {
  auto K = std::make_shared<const Presheaf>(representable(cat, cat->object_named(object)));
  ArrowId fa = cat->arrow_named(f), ga = cat->arrow_named(g);
  ElemId c = K->element(identity_name(object));
  return {K, K->act(fa, c), K->act(ga, c), c, fa, ga};
}

std::vector<std::size_t> sizes(const ChainTrace& t) {
  std::vector<std::size_t> out;
  for (const auto& st : t.stages) out.push_back(st.presheaf->size());
  return out;
}

// Glues one more copy of K onto the final stage along <a, b>, sending a to
// a_n and b to b_m. Used to corrupt a trace.
void glue_extra(ChainTrace& trace, std::size_t n, std::size_t m) {
  const ChainSeed& s = trace.seed;
  ElemId gens[] = {s.a, s.b};
  Materialized ab = materialize(generate(s.K, gens));
  std::pair<ElemId, ElemId> images[] = {{ab.presheaf->element(s.K->label(s.a)), trace.a[n]},
                                        {ab.presheaf->element(s.K->label(s.b)), trace.b[m]}};
  Hom into_final = hom_from_generators(ab.presheaf, trace.final_ptr(), images);
  PushoutResult po = pushout_monos(ab.inclusion, into_final);
  auto move = [&](ElemId e) { return po.inB(e); };
  for (auto& e : trace.a) e = move(e);
  for (auto& e : trace.b) e = move(e);
  for (auto& row : trace.c)
    for (auto& e : row) e = move(e);
  trace.stages.back().presheaf = po.P;
}

}  // namespace

TEST(BuildChain, SpanDepth3Sizes) {
  ChainTrace t = build_chain(span_seed(), 3);
  EXPECT_EQ(sizes(t), (std::vector<std::size_t>{3, 5, 7, 9, 10, 12}));
  std::vector<ChainIndex> order;
  for (const auto& st : t.stages) order.push_back(st.index);
  EXPECT_EQ(order, (std::vector<ChainIndex>{{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}));
}

TEST(BuildChain, Depth1IsTheSeed) {
  ChainSeed seed = span_seed();
  ChainTrace t = build_chain(seed, 1);
  ASSERT_EQ(t.stages.size(), 1u);
  EXPECT_EQ(t.final_stage().size(), 3u);
  EXPECT_EQ(t.final_stage().name(t.a[0]), "f");
  EXPECT_EQ(t.final_stage().name(t.b[0]), "g");
  EXPECT_EQ(t.final_stage().name(t.c[0][0]), "idZ");
  EXPECT_EQ(kind_of([&] { build_chain(seed, 0); }), ErrorKind::BadArgument);
}

TEST(BuildChain, SeedConditions) {
  EXPECT_NO_THROW(check_seed(span_seed()));
  // In the chain 0 < 1 < 2, the element 0->1 generates 0->2.
  ChainSeed bad = representable_seed(fixtures::chain3(), "0", "0->1", "0->2");
  EXPECT_EQ(kind_of([&] { check_seed(bad); }), ErrorKind::SeedConditionViolated);
  ChainSeed mismatch = span_seed();
  std::swap(mismatch.a, mismatch.b);
  EXPECT_EQ(kind_of([&] { check_seed(mismatch); }), ErrorKind::SeedConditionViolated);
}

TEST(BuildChain, MapsAreMonoAndSizesAdd) {
  for (const ChainSeed& seed : {span_seed(), representable_seed(fixtures::vee(), "a", "a->b", "a->c"),
                                representable_seed(fixtures::delta1_op(), "1", "d0", "d1")}) {
    ChainTrace t = build_chain(seed, 4);
    ASSERT_EQ(t.stages.size(), 10u);
    for (std::size_t s = 0; s < t.stages.size(); ++s) {
      const ChainStage& st = t.stages[s];
      EXPECT_TRUE(st.embedding.is_mono());
      EXPECT_EQ(st.link.has_value(), s > 0);
      if (st.link) {
        EXPECT_TRUE(st.link->is_mono());
        EXPECT_EQ(st.presheaf->size(), t.stages[s - 1].presheaf->size() + seed.K->size() - st.glued);
      }
    }
    EXPECT_TRUE(check_order_pattern(t).ok());
  }
}

TEST(OrderPattern, SpanDepth3) {
  ChainTrace t = build_chain(span_seed(), 3);
  OrderReport r = check_order_pattern(t);
  ASSERT_EQ(r.entries.size(), 9u);
  EXPECT_EQ(r.violations, 0u);
  for (const auto& e : r.entries) {
    EXPECT_EQ(e.witness, e.m <= e.n) << e.n << "," << e.m;
    EXPECT_EQ(e.connected, e.m <= e.n);
  }
}

TEST(OrderPattern, Depth1) {
  OrderReport r = check_order_pattern(build_chain(span_seed(), 1));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_TRUE(r.entries[0].witness);
  EXPECT_TRUE(r.ok());
}

TEST(OrderPattern, ExtraGluingIsFlagged) {
  ChainTrace t = build_chain(span_seed(), 3);
  glue_extra(t, 0, 1);
  OrderReport r = check_order_pattern(t);
  EXPECT_FALSE(r.ok());
  bool flagged = false;
  for (const auto& e : r.entries)
    if (e.n == 0 && e.m == 1) flagged = e.violation;
  EXPECT_TRUE(flagged);
}

TEST(HProperties, SpanTrace) {
  ChainTrace t = build_chain(span_seed(), 3);
  HReport h = check_H_properties(t);
  EXPECT_TRUE(h.H.empty());
  EXPECT_TRUE(h.meets_ab);
  EXPECT_TRUE(h.meets_same);
  EXPECT_TRUE(h.avoids_marked);
}

TEST(HProperties, Depth1) {
  ChainTrace t = build_chain(span_seed(), 1);
  HReport h = check_H_properties(t);
  EXPECT_TRUE(h.ok());
  EXPECT_TRUE(h.H.empty());
}

TEST(HProperties, IdentifyingA1WithA0BreaksClauseTwo) {
  ChainTrace t = build_chain(span_seed(), 3);
  t.a[1] = t.a[0];
  HReport h = check_H_properties(t);
  EXPECT_FALSE(h.meets_same);
  EXPECT_FALSE(h.ok());
}

TEST(FindPattern, OrderOnSpanTrace) {
  ChainTrace t = build_chain(span_seed(), 3);
  const Presheaf& P = t.final_stage();
  auto w = find_pattern(P, t.seed.f, t.seed.g, PatternShape::order(3));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->rows, (std::vector<ElemId>{t.a[2], t.a[1], t.a[0]}));
  EXPECT_EQ(w->cols, (std::vector<ElemId>{t.b[2], t.b[1], t.b[0]}));
  EXPECT_EQ(w->witnesses.size(), 6u);
  EXPECT_TRUE(verify_pattern(P, t.seed.f, t.seed.g, PatternShape::order(3), w->rows, w->cols));
  // The construction's own order does not fit the orientation i <= j.
  EXPECT_FALSE(verify_pattern(P, t.seed.f, t.seed.g, PatternShape::order(3), {t.a[0], t.a[1], t.a[2]},
                              {t.b[0], t.b[1], t.b[2]}));
}

TEST(FindPattern, SmallShapes) {
  auto rep = fixtures::rep_z();
  const FinCat& c = rep->cat();
  ArrowId f = c.arrow_named("f"), g = c.arrow_named("g");
  auto one = find_pattern(*rep, f, g, PatternShape::bipartite(1, 1));
  ASSERT_TRUE(one);
  EXPECT_EQ(one->rows, std::vector<ElemId>{rep->element("f")});
  EXPECT_EQ(one->cols, std::vector<ElemId>{rep->element("g")});
  EXPECT_FALSE(find_pattern(*rep, f, g, PatternShape::bipartite(2, 2)));
  EXPECT_EQ(kind_of([&] { find_pattern(*rep, f, c.identity(c.object_named("X")), PatternShape::bipartite(1, 1)); }),
            ErrorKind::BadSpan);
  EXPECT_EQ(kind_of([&] { find_pattern(*rep, f, g, PatternShape::order(0)); }), ErrorKind::BadArgument);
}

TEST(FindPattern, BipartiteAgreesWithBruteForce) {
  ChainTrace t = build_chain(span_seed(), 3);
  const Presheaf& P = t.final_stage();
  const FinCat& cat = P.cat();
  ArrowId f = t.seed.f, g = t.seed.g;
  auto xs = P.carrier(cat.cod(f));
  auto ys = P.carrier(cat.cod(g));
  auto edge = [&](ElemId x, ElemId y) {
    for (ElemId c : P.carrier(cat.dom(f)))
      if (P.act(f, c) == x && P.act(g, c) == y) return true;
    return false;
  };
  // Every r-subset of X against every c-subset of Y.
  auto brute = [&](std::size_t r, std::size_t c) {
    for (std::uint32_t rb = 0; rb < (1u << xs.size()); ++rb) {
      if (static_cast<std::size_t>(std::popcount(rb)) != r) continue;
      for (std::uint32_t cb = 0; cb < (1u << ys.size()); ++cb) {
        if (static_cast<std::size_t>(std::popcount(cb)) != c) continue;
        bool all = true;
        for (std::size_t i = 0; i < xs.size() && all; ++i)
          for (std::size_t j = 0; j < ys.size() && all; ++j)
            if ((rb >> i & 1) && (cb >> j & 1) && !edge(xs[i], ys[j])) all = false;
        if (all) return true;
      }
    }
    return false;
  };
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t c = 1; c <= 3; ++c) {
      auto w = find_pattern(P, f, g, PatternShape::bipartite(r, c));
      EXPECT_EQ(w.has_value(), brute(r, c)) << r << "x" << c;
      if (w) EXPECT_TRUE(verify_pattern(P, f, g, PatternShape::bipartite(r, c), w->rows, w->cols));
    }
  // Rows a_1, a_2 against columns b_0, b_1.
  EXPECT_TRUE(verify_pattern(P, f, g, PatternShape::bipartite(2, 2), {t.a[1], t.a[2]}, {t.b[0], t.b[1]}));
}

TEST(FindPatternProperty, NoLongOrdersOverLlpCategories) {
  for (const CatPtr& cat : {fixtures::chain3(), fixtures::c2()}) {
    std::size_t searched = 0;
    verify::for_each_presheaf(cat, 6, [&](const PresheafPtr& P) {
      for (std::size_t fi = 0; fi < cat->arrow_count(); ++fi)
        for (std::size_t gi = 0; gi < cat->arrow_count(); ++gi) {
          ArrowId f = arrow_id(fi), g = arrow_id(gi);
          if (cat->dom(f) != cat->dom(g)) continue;
          ++searched;
          EXPECT_FALSE(find_pattern(*P, f, g, PatternShape::order(3)));
        }
    });
    EXPECT_GT(searched, 100u);
  }
}
