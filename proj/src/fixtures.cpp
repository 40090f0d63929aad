#include "purelab/fixtures.hpp"

#include <fstream>

#include "purelab/io.hpp"

namespace purelab::fixtures {

namespace fs = std::filesystem;

CatPtr span() {
  RawCategory raw;
  raw.objects = {"X", "Y", "Z"};
  raw.arrows = {{"f", "Z", "X"}, {"g", "Z", "Y"}};
  return std::make_shared<const FinCat>(validate_category(raw));
}

CatPtr c2() {
  return std::make_shared<const FinCat>(monoid_to_cat({"e", "s"}, {{0, 1}, {1, 0}}, 0));
}

CatPtr chain3() {
  return std::make_shared<const FinCat>(
      poset_to_cat({"0", "1", "2"}, {{true, true, true}, {false, true, true}, {false, false, true}}));
}

CatPtr vee() {
  return std::make_shared<const FinCat>(
      poset_to_cat({"a", "b", "c"}, {{true, true, true}, {false, true, false}, {false, false, true}}));
}

CatPtr nxtrunc() {
  // 0 = 1, 1 = 2, 2 = 3, 3 = inf
  std::vector<std::vector<std::size_t>> table = {
      {0, 1, 2, 3}, {1, 3, 3, 3}, {2, 3, 3, 3}, {3, 3, 3, 3}};
  return std::make_shared<const FinCat>(monoid_to_cat({"1", "2", "3", "inf"}, table, 0));
}

CatPtr delta1_op() {
  // Monotone maps [p] -> [q] as value lists; the opposite arrow runs q -> p.
  struct Map {
    std::string name;
    int from, to;
    std::vector<int> values;
  };
  const std::vector<Map> maps = {{"id_0", 0, 0, {0}},  {"id_1", 1, 1, {0, 1}}, {"d0", 0, 1, {1}},
                                 {"d1", 0, 1, {0}},    {"s0", 1, 0, {0, 0}},   {"c0", 1, 1, {0, 0}},
                                 {"c1", 1, 1, {1, 1}}};
  RawCategory raw;
  raw.objects = {"0", "1"};
  for (std::size_t i = 2; i < maps.size(); ++i)
    raw.arrows.push_back({maps[i].name, std::to_string(maps[i].to), std::to_string(maps[i].from)});
  auto find = [&](int from, int to, const std::vector<int>& values) -> const Map& {
    for (const auto& m : maps)
      if (m.from == from && m.to == to && m.values == values) return m;
    throw Error(ErrorKind::Internal, "monotone map missing from the list");
  };
  // comp(g, f) in the opposite category is f° after g°.
  for (const auto& f : maps)
    for (const auto& g : maps) {
      if (g.to != f.from) continue;
      std::vector<int> values;
      for (int v : g.values) values.push_back(f.values[v]);
      const Map& gf = find(g.from, f.to, values);
      if (f.name.starts_with("id_") || g.name.starts_with("id_")) continue;
      raw.compose.push_back({g.name, f.name, gf.name});
    }
  return std::make_shared<const FinCat>(validate_category(raw));
}

RawCategory nonassociative_raw() {
  // (a.a).a = b.a = a but a.(a.a) = a.b = b.
  RawCategory raw;
  raw.objects = {"*"};
  raw.arrows = {{"a", "*", "*"}, {"b", "*", "*"}};
  raw.compose = {{"a", "a", "b"}, {"a", "b", "b"}, {"b", "a", "a"}, {"b", "b", "a"}};
  return raw;
}

PresheafPtr rep_z() {
  // Every carrier is a singleton, so every action lands on index 0.
  return std::make_shared<const Presheaf>(
      build_presheaf(span(), {{"f"}, {"g"}, {"idZ"}}, [](ArrowId, std::size_t) -> std::size_t { return 0; }));
}

PresheafPtr c2_regular() {
  auto cat = c2();
  return std::make_shared<const Presheaf>(build_presheaf(
      cat, {{"e", "s"}}, [&](ArrowId a, std::size_t i) { return cat->is_identity(a) ? i : 1 - i; }));
}

PresheafPtr c2_point() {
  return std::make_shared<const Presheaf>(
      build_presheaf(c2(), {{"p"}}, [](ArrowId, std::size_t i) { return i; }));
}

PresheafPtr c2_two_points() {
  return std::make_shared<const Presheaf>(
      build_presheaf(c2(), {{"p", "q"}}, [](ArrowId, std::size_t i) { return i; }));
}

namespace {

void write(const fs::path& path, const io::Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::FileNotFound, "cannot write '" + path.string() + "'");
  out << io::dump(j);
}

}  // namespace

void write_all(const fs::path& dir) {
  fs::create_directories(dir);
  write(dir / "span.cat.json", io::to_json(*span()));
  write(dir / "c2.cat.json", io::to_json(*c2()));
  write(dir / "chain3.cat.json", io::to_json(*chain3()));
  write(dir / "vee.cat.json", io::to_json(*vee()));
  write(dir / "nxtrunc.cat.json", io::to_json(*nxtrunc()));
  write(dir / "delta1op.cat.json", io::to_json(*delta1_op()));

  auto rep = rep_z();
  write(dir / "rep_Z.psh.json", io::to_json(*rep, "span.cat.json"));
  write(dir / "c2_regular.psh.json", io::to_json(*c2_regular(), "c2.cat.json"));
  write(dir / "c2_point.psh.json", io::to_json(*c2_point(), "c2.cat.json"));
  write(dir / "c2_two_points.psh.json", io::to_json(*c2_two_points(), "c2.cat.json"));

  // <f> inside REP_Z and its inclusion.
  ElemId f = rep->element("f");
  auto f_sub = materialize(generate(rep, std::span<const ElemId>(&f, 1)));
  write(dir / "rep_Z_f.psh.json", io::to_json(*f_sub.presheaf, "span.cat.json"));
  write(dir / "rep_Z_f_incl.hom.json", io::hom_to_json(f_sub.inclusion, "rep_Z_f.psh.json", "rep_Z.psh.json"));

  // The fixed point p inside {p, q} over c2.
  auto two = c2_two_points();
  ElemId p = two->element("p");
  auto p_sub = materialize(generate(two, std::span<const ElemId>(&p, 1)));
  write(dir / "c2_p.psh.json", io::to_json(*p_sub.presheaf, "c2.cat.json"));
  write(dir / "c2_p_incl.hom.json", io::hom_to_json(p_sub.inclusion, "c2_p.psh.json", "c2_two_points.psh.json"));

  // Pullback square K = <f>, A = REP_Z, B = <f>, L = REP_Z.
  io::Json sq;
  sq["K"] = "rep_Z_f.psh.json";
  sq["A"] = "rep_Z.psh.json";
  sq["B"] = "rep_Z_f.psh.json";
  sq["L"] = "rep_Z.psh.json";
  sq["kA"] = io::hom_map_to_json(f_sub.inclusion);
  sq["kB"] = io::hom_map_to_json(identity_hom(f_sub.presheaf));
  sq["aL"] = io::hom_map_to_json(identity_hom(rep));
  sq["bL"] = io::hom_map_to_json(f_sub.inclusion);
  write(dir / "rep_Z_pullback.square.json", sq);

  // Over c2: {p} glued into two fixed points, once as a pullback and once
  // along both identities (not a pullback).
  auto p_id = identity_hom(p_sub.presheaf);
  auto two_id = identity_hom(two);
  io::Json pb;
  pb["K"] = "c2_p.psh.json";
  pb["A"] = "c2_p.psh.json";
  pb["B"] = "c2_two_points.psh.json";
  pb["L"] = "c2_two_points.psh.json";
  pb["kA"] = io::hom_map_to_json(p_id);
  pb["kB"] = io::hom_map_to_json(p_sub.inclusion);
  pb["aL"] = io::hom_map_to_json(p_sub.inclusion);
  pb["bL"] = io::hom_map_to_json(two_id);
  write(dir / "c2_pullback.square.json", pb);
  io::Json glued;
  glued["K"] = "c2_p.psh.json";
  glued["A"] = "c2_two_points.psh.json";
  glued["B"] = "c2_two_points.psh.json";
  glued["L"] = "c2_two_points.psh.json";
  glued["kA"] = "c2_p_incl.hom.json";
  glued["kB"] = "c2_p_incl.hom.json";
  glued["aL"] = io::hom_map_to_json(two_id);
  glued["bL"] = io::hom_map_to_json(two_id);
  write(dir / "c2_glued.square.json", glued);

  // The system {f.z = f, g.z = g} over REP_Z.
  EqSystem sys;
  const FinCat& c = rep->cat();
  sys.vars.push_back({"z", c.object_named("Z")});
  sys.eqs.emplace_back(Anchor{c.arrow_named("f"), 0, rep->element("f")});
  sys.eqs.emplace_back(Anchor{c.arrow_named("g"), 0, rep->element("g")});
  write(dir / "rep_Z.sys.json", io::to_json(sys, *rep));
}

}  // namespace purelab::fixtures
