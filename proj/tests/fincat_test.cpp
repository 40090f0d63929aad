#include <gtest/gtest.h>

#include "purelab/fixtures.hpp"

using namespace purelab;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// Upper sets of a poset are linearly ordered.
bool upper_sets_linear(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (leq[x][y] && leq[x][z] && !leq[y][z] && !leq[z][y]) return false;
  return true;
}

}  // namespace

TEST(FinCat, SpanFixtureHasFiveArrows) {
  auto cat = fixtures::span();
  EXPECT_EQ(cat->object_count(), 3u);
  EXPECT_EQ(cat->arrow_count(), 5u);
  EXPECT_EQ(cat->arrow_name(cat->identity(cat->object_named("Z"))), "id_Z");
  ArrowId f = cat->arrow_named("f");
  EXPECT_EQ(cat->object_name(cat->dom(f)), "Z");
  EXPECT_EQ(cat->object_name(cat->cod(f)), "X");
  EXPECT_FALSE(cat->compose(cat->arrow_named("g"), f).has_value());
}

TEST(FinCat, TrivialCategory) {
  RawCategory raw;
  raw.objects = {"*"};
  FinCat cat = validate_category(raw);
  EXPECT_EQ(cat.arrow_count(), 1u);
  EXPECT_TRUE(is_llp(cat).holds);
  EXPECT_TRUE(is_groupoid(cat));
}

TEST(FinCat, NonAssociativeTableRejected) {
  EXPECT_TRUE(throws_kind(ErrorKind::NonAssociative, [] { validate_category(fixtures::nonassociative_raw()); }));
}

TEST(FinCat, ValidationErrors) {
  RawCategory dup;
  dup.objects = {"X", "X"};
  EXPECT_TRUE(throws_kind(ErrorKind::DuplicateName, [&] { validate_category(dup); }));

  RawCategory unknown;
  unknown.objects = {"X"};
  unknown.arrows = {{"f", "X", "Q"}};
  EXPECT_TRUE(throws_kind(ErrorKind::BadTyping, [&] { validate_category(unknown); }));

  RawCategory missing;
  missing.objects = {"X", "Y", "Z"};
  missing.arrows = {{"f", "X", "Y"}, {"g", "Y", "Z"}};
  EXPECT_TRUE(throws_kind(ErrorKind::MissingComposite, [&] { validate_category(missing); }));

  RawCategory badtype = missing;
  badtype.arrows.push_back({"h", "X", "Z"});
  badtype.compose = {{"f", "g", "h"}};
  EXPECT_TRUE(throws_kind(ErrorKind::BadTyping, [&] { validate_category(badtype); }));
}

TEST(FinCat, RoundTripsThroughRaw) {
  for (const CatPtr& cat : {fixtures::span(), fixtures::c2(), fixtures::chain3(), fixtures::nxtrunc(),
                            fixtures::delta1_op()}) {
    EXPECT_EQ(validate_category(cat->to_raw()), *cat);
  }
}

TEST(Llp, Fixtures) {
  auto span = fixtures::span();
  LlpResult r = is_llp(*span);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(span->object_name(r.witness->apex), "Z");
  EXPECT_EQ(span->arrow_name(r.witness->left), "f");
  EXPECT_EQ(span->arrow_name(r.witness->right), "g");

  EXPECT_TRUE(is_llp(*fixtures::c2()).holds);
  EXPECT_TRUE(is_llp(*fixtures::chain3()).holds);

  auto vee = fixtures::vee();
  LlpResult v = is_llp(*vee);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(vee->arrow_name(v.witness->left), "a->b");
  EXPECT_EQ(vee->arrow_name(v.witness->right), "a->c");

  auto nx = fixtures::nxtrunc();
  LlpResult n = is_llp(*nx);
  ASSERT_FALSE(n.holds);
  EXPECT_EQ(nx->arrow_name(n.witness->left), "2");
  EXPECT_EQ(nx->arrow_name(n.witness->right), "3");

  auto d = fixtures::delta1_op();
  LlpResult dr = is_llp(*d);
  ASSERT_FALSE(dr.holds);
  EXPECT_EQ(d->arrow_name(dr.witness->left), "d0");
  EXPECT_EQ(d->arrow_name(dr.witness->right), "d1");
}

TEST(Llp, Delta1OpComposites) {
  // Recomputed by hand: comp(g, f) is the monotone map f after g.
  auto d = fixtures::delta1_op();
  auto c = [&](const char* g, const char* f) { return d->arrow_name(d->comp(d->arrow_named(g), d->arrow_named(f))); };
  EXPECT_EQ(c("d0", "s0"), "id_0");
  EXPECT_EQ(c("d1", "s0"), "id_0");
  EXPECT_EQ(c("s0", "d0"), "c1");
  EXPECT_EQ(c("s0", "d1"), "c0");
  EXPECT_EQ(c("d0", "c0"), "d1");
  EXPECT_EQ(c("c1", "c0"), "c0");
  EXPECT_EQ(d->arrow_count(), 7u);
}

TEST(MonoidToCat, C2AndNxtrunc) {
  auto c2 = fixtures::c2();
  EXPECT_EQ(c2->object_count(), 1u);
  EXPECT_EQ(c2->arrow_count(), 2u);
  ArrowId s = c2->arrow_named("s");
  EXPECT_TRUE(c2->is_identity(c2->comp(s, s)));
  EXPECT_TRUE(is_groupoid(*c2));

  auto nx = fixtures::nxtrunc();
  EXPECT_EQ(nx->arrow_count(), 4u);
  EXPECT_EQ(nx->arrow_name(nx->comp(nx->arrow_named("2"), nx->arrow_named("3"))), "inf");
  EXPECT_FALSE(is_groupoid(*nx));
}

TEST(MonoidToCat, NxtruncAssociativeByBruteForce) {
  // Independent check over the 4x4 table.
  std::vector<std::vector<std::size_t>> t = {{0, 1, 2, 3}, {1, 3, 3, 3}, {2, 3, 3, 3}, {3, 3, 3, 3}};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(t[t[a][b]][c], t[a][t[b][c]]);
  // No n with n*3 = 2 or n*2 = 3.
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_NE(t[n][2], 1u);
    EXPECT_NE(t[n][1], 2u);
  }
}

TEST(MonoidToCat, BadUnit) {
  EXPECT_TRUE(throws_kind(ErrorKind::BadUnit, [] { monoid_to_cat({"e", "s"}, {{0, 1}, {1, 0}}, 1); }));
}

TEST(PosetToCat, Chain3AndAntichain) {
  auto chain = fixtures::chain3();
  EXPECT_EQ(chain->arrow_count(), 6u);
  FinCat anti = poset_to_cat({"p", "q"}, {{true, false}, {false, true}});
  EXPECT_EQ(anti.arrow_count(), 2u);
  EXPECT_TRUE(is_llp(anti).holds);
  EXPECT_TRUE(throws_kind(ErrorKind::NotAPoset, [] { poset_to_cat({"p", "q"}, {{true, true}, {true, true}}); }));
}

TEST(LlpProperty, PosetsMatchUpperSetCriterion) {
  // Every reflexive, antisymmetric, transitive relation on four points.
  const std::size_t n = 4;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.push_back({i, j});
  std::size_t posets = 0;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (bits >> k & 1) leq[pairs[k].first][pairs[k].second] = true;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (x != y && leq[x][y] && leq[y][x]) ok = false;
        for (std::size_t z = 0; z < n && ok; ++z)
          if (leq[x][y] && leq[y][z] && !leq[x][z]) ok = false;
      }
    if (!ok) continue;
    ++posets;
    FinCat cat = poset_to_cat({"a", "b", "c", "d"}, leq);
    EXPECT_EQ(is_llp(cat).holds, upper_sets_linear(leq));
  }
  EXPECT_EQ(posets, 219u);  // labelled posets on 4 points
}

TEST(LlpProperty, PositiveAnswersAreCertified) {
  for (const CatPtr& cat : {fixtures::c2(), fixtures::chain3(), fixtures::span(), fixtures::vee(),
                            fixtures::nxtrunc(), fixtures::delta1_op()}) {
    bool all = true;
    for (std::size_t l = 0; l < cat->arrow_count(); ++l)
      for (std::size_t r = 0; r < cat->arrow_count(); ++r) {
        ArrowId left = arrow_id(l), right = arrow_id(r);
        if (cat->dom(left) != cat->dom(right)) continue;
        auto fac = factor_span(*cat, left, right);
        if (!fac) {
          all = false;
          continue;
        }
        if (fac->right_through_left)
          EXPECT_EQ(cat->compose(fac->mediator, left), std::optional<ArrowId>(right));
        else
          EXPECT_EQ(cat->compose(fac->mediator, right), std::optional<ArrowId>(left));
      }
    EXPECT_EQ(all, is_llp(*cat).holds);
  }
}

TEST(LlpProperty, GroupoidsAreLlp) {
  // Z/3 and the symmetric group on three letters.
  auto z3 = monoid_to_cat({"0", "1", "2"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0);
  EXPECT_TRUE(is_groupoid(z3));
  EXPECT_TRUE(is_llp(z3).holds);

  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> ab{};
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      table[a][b] = std::find(perms.begin(), perms.end(), ab) - perms.begin();
    }
  auto s3 = monoid_to_cat({"e", "t12", "t01", "r1", "r2", "t02"}, table, 0);
  EXPECT_TRUE(is_groupoid(s3));
  EXPECT_TRUE(is_llp(s3).holds);

  // A connected groupoid with two objects.
  RawCategory raw;
  raw.objects = {"A", "B"};
  raw.arrows = {{"u", "A", "B"}, {"v", "B", "A"}};
  raw.compose = {{"v", "u", "id_A"}, {"u", "v", "id_B"}};
  FinCat two = validate_category(raw);
  EXPECT_TRUE(is_groupoid(two));
  EXPECT_TRUE(is_llp(two).holds);
}
