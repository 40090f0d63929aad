#include "purelab/io.hpp"

#include <fstream>
#include <sstream>

namespace purelab::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void malformed(const std::string& what, const std::string& loc) {
  throw Error(ErrorKind::MalformedJson, what, loc);
}

const Json& field(const Json& j, const char* key, const std::string& loc) {
  if (!j.is_object()) malformed("expected an object", loc);
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'", loc);
  return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& loc) {
  const Json& v = field(j, key, loc);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string", loc + "/" + key);
  return v.get<std::string>();
}

std::size_t index_field(const Json& j, const char* key, const std::string& loc) {
  const Json& v = field(j, key, loc);
  if (!v.is_number_unsigned()) malformed(std::string("field '") + key + "' must be a non-negative integer",
                                         loc + "/" + key);
  return v.get<std::size_t>();
}

ElementMap element_map(const Json& j, const std::string& loc) {
  if (!j.is_object()) malformed("expected an object of element pairs", loc);
  ElementMap out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) malformed("element images must be strings", loc + "/" + k);
    out.emplace_back(k, v.get<std::string>());
  }
  return out;
}

Json labels(const Presheaf& p, const std::vector<ElemId>& elems) {
  Json out = Json::array();
  for (ElemId e : elems) out.push_back(p.label(e));
  return out;
}

std::string stage_stem(const ChainIndex& i) {
  return std::to_string(i.n) + "_" + std::to_string(i.m);
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RawCategory category_from_json(const Json& j) {
  RawCategory raw;
  const Json& objects = field(j, "objects", "");
  if (!objects.is_array()) malformed("'objects' must be an array", "objects");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!objects[i].is_string()) malformed("object names must be strings", "objects[" + std::to_string(i) + "]");
    raw.objects.push_back(objects[i].get<std::string>());
  }
  const Json& arrows = field(j, "arrows", "");
  if (!arrows.is_array()) malformed("'arrows' must be an array", "arrows");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    std::string loc = "arrows[" + std::to_string(i) + "]";
    raw.arrows.push_back({string_field(arrows[i], "name", loc), string_field(arrows[i], "dom", loc),
                          string_field(arrows[i], "cod", loc)});
  }
  if (auto it = j.find("compose"); it != j.end()) {
    if (!it->is_array()) malformed("'compose' must be an array", "compose");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string loc = "compose[" + std::to_string(i) + "]";
      const Json& c = (*it)[i];
      raw.compose.push_back(
          {string_field(c, "g", loc), string_field(c, "f", loc), string_field(c, "gf", loc)});
    }
  }
  return raw;
}

Json to_json(const FinCat& cat) {
  RawCategory raw = cat.to_raw();
  Json j;
  j["objects"] = raw.objects;
  j["arrows"] = Json::array();
  for (const auto& a : raw.arrows) j["arrows"].push_back({{"name", a.name}, {"dom", a.dom}, {"cod", a.cod}});
  j["compose"] = Json::array();
  for (const auto& c : raw.compose) j["compose"].push_back({{"g", c.g}, {"f", c.f}, {"gf", c.gf}});
  return j;
}

RawPresheaf presheaf_from_json(const Json& j, std::string& category_path) {
  category_path = string_field(j, "category", "");
  RawPresheaf raw;
  const Json& carriers = field(j, "carriers", "");
  if (!carriers.is_object()) malformed("'carriers' must be an object", "carriers");
  for (const auto& [object, elems] : carriers.items()) {
    std::string loc = "carriers/" + object;
    if (!elems.is_array()) malformed("a carrier must be an array", loc);
    std::vector<std::string> names;
    for (const auto& e : elems) {
      if (!e.is_string()) malformed("element names must be strings", loc);
      names.push_back(e.get<std::string>());
    }
    raw.carriers.emplace_back(object, std::move(names));
  }
  if (auto it = j.find("actions"); it != j.end()) {
    if (!it->is_object()) malformed("'actions' must be an object", "actions");
    for (const auto& [arrow, entries] : it->items())
      raw.actions.emplace_back(arrow, element_map(entries, "actions/" + arrow));
  }
  return raw;
}

Json to_json(const Presheaf& p, const std::string& category_path) {
  RawPresheaf raw = p.to_raw();
  Json j;
  j["category"] = category_path;
  j["carriers"] = Json::object();
  for (const auto& [object, elems] : raw.carriers) j["carriers"][object] = elems;
  j["actions"] = Json::object();
  for (const auto& [arrow, entries] : raw.actions) {
    Json m = Json::object();
    for (const auto& [from, to] : entries) m[from] = to;
    j["actions"][arrow] = m;
  }
  return j;
}

std::vector<std::pair<std::string, ElementMap>> hom_map_from_json(const Json& j) {
  if (!j.is_object()) malformed("a hom map must be an object", "map");
  std::vector<std::pair<std::string, ElementMap>> out;
  for (const auto& [object, entries] : j.items())
    out.emplace_back(object, element_map(entries, "map/" + object));
  return out;
}

Json hom_map_to_json(const Hom& h) {
  Json j = Json::object();
  for (const auto& [object, entries] : h.to_raw()) {
    Json m = Json::object();
    for (const auto& [from, to] : entries) m[from] = to;
    j[object] = m;
  }
  return j;
}

Json hom_to_json(const Hom& h, const std::string& source_path, const std::string& target_path) {
  Json j;
  j["source"] = source_path;
  j["target"] = target_path;
  j["map"] = hom_map_to_json(h);
  return j;
}

EqSystem system_from_json(const Json& j, const Presheaf& params) {
  const FinCat& cat = params.cat();
  EqSystem system;
  const Json& vars = field(j, "vars", "");
  if (!vars.is_array()) malformed("'vars' must be an array", "vars");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string loc = "vars[" + std::to_string(i) + "]";
    std::string sort = string_field(vars[i], "sort", loc);
    auto x = cat.find_object(sort);
    if (!x) throw Error(ErrorKind::SortMismatch, "unknown sort '" + sort + "'", loc);
    system.vars.push_back({string_field(vars[i], "name", loc), *x});
  }
  const Json& eqs = field(j, "eqs", "");
  if (!eqs.is_array()) malformed("'eqs' must be an array", "eqs");
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    std::string loc = "eqs[" + std::to_string(k) + "]";
    const Json& e = eqs[k];
    std::string kind = string_field(e, "kind", loc);
    auto arrow = [&](const char* key) {
      std::string name = string_field(e, key, loc);
      auto f = cat.find_arrow(name);
      if (!f) throw Error(ErrorKind::BadTyping, "unknown arrow '" + name + "'", loc);
      return *f;
    };
    if (kind == "link") {
      system.eqs.emplace_back(Link{arrow("f"), index_field(e, "i", loc), arrow("g"), index_field(e, "j", loc)});
    } else if (kind == "anchor") {
      ArrowId f = arrow("f");
      std::string p = string_field(e, "p", loc);
      auto elem = params.find(cat.cod(f), p);
      if (!elem)
        throw Error(ErrorKind::BadParameters, "no parameter '" + p + "' of sort " +
                                                  cat.object_name(cat.cod(f)), loc);
      system.eqs.emplace_back(Anchor{f, index_field(e, "i", loc), *elem});
    } else {
      malformed("equation kind must be 'link' or 'anchor'", loc);
    }
  }
  check_system(params, system);
  return system;
}

Json to_json(const EqSystem& system, const Presheaf& params) {
  const FinCat& cat = params.cat();
  Json j;
  j["vars"] = Json::array();
  for (const auto& v : system.vars) j["vars"].push_back({{"name", v.name}, {"sort", cat.object_name(v.sort)}});
  j["eqs"] = Json::array();
  for (const Equation& eq : system.eqs) {
    if (const auto* a = std::get_if<Anchor>(&eq)) {
      j["eqs"].push_back({{"kind", "anchor"}, {"f", cat.arrow_name(a->f)}, {"i", a->i}, {"p", params.name(a->p)}});
    } else {
      const auto& l = std::get<Link>(eq);
      j["eqs"].push_back({{"kind", "link"}, {"f", cat.arrow_name(l.f)}, {"i", l.i},
                          {"g", cat.arrow_name(l.g)}, {"j", l.j}});
    }
  }
  return j;
}

Json assignment_to_json(const Presheaf& m, const Assignment& a) { return labels(m, a); }

Json to_json(const SpanWitness& w, const FinCat& cat) {
  return {{"apex", cat.object_name(w.apex)}, {"left", cat.arrow_name(w.left)}, {"right", cat.arrow_name(w.right)}};
}

Json to_json(const PurityCertificate& cert, const Hom& incl) {
  Json j;
  j["verdict"] = cert.pure ? "pure" : "not-pure";
  if (cert.retraction) j["retraction"] = hom_map_to_json(*cert.retraction);
  if (cert.falsifier) {
    j["falsifier"] = {{"system", to_json(cert.falsifier->system, incl.target())},
                      {"solution", assignment_to_json(incl.target(), cert.falsifier->solution)}};
  }
  return j;
}

Json to_json(const ConnectivityReport& report) {
  const Presheaf& L = report.base.ambient();
  Json j;
  j["components"] = Json::array();
  for (const auto& c : report.components) j["components"].push_back(labels(L, c));
  j["edges"] = Json::array();
  for (const auto& e : report.edges)
    j["edges"].push_back({L.label(e.from), L.cat().arrow_name(e.arrow), L.label(e.to)});
  return j;
}

Json to_json(const OrderReport& report) {
  Json j;
  j["violations"] = report.violations;
  j["matrix"] = Json::array();
  for (const auto& e : report.entries)
    j["matrix"].push_back({{"n", e.n}, {"m", e.m}, {"expected", e.expected}, {"witness", e.witness},
                           {"connected", e.connected}, {"violation", e.violation}});
  return j;
}

Json to_json(const HReport& report, const Presheaf& final_stage) {
  Json j;
  j["H"] = labels(final_stage, report.H);
  j["clauses"] = {{"i", report.meets_ab}, {"ii", report.meets_same}, {"iii", report.avoids_marked}};
  j["failures"] = report.failures;
  return j;
}

Json to_json(const PatternWitness& w, const Presheaf& p) {
  Json j;
  j["f"] = p.cat().arrow_name(w.f);
  j["g"] = p.cat().arrow_name(w.g);
  j["rows"] = labels(p, w.rows);
  j["cols"] = labels(p, w.cols);
  j["witnesses"] = Json::array();
  for (const auto& c : w.witnesses) j["witnesses"].push_back({c.row, c.col, p.label(c.c)});
  return j;
}

// -- Workspace ----------------------------------------------------------------

Json Workspace::read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    Error e(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
    e.set_file(path.string());
    throw e;
  }
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    Error e(ErrorKind::MalformedJson, ex.what());
    e.set_file(path.string());
    throw e;
  }
}

namespace {

template <class F>
auto in_file(const fs::path& path, F&& body) {
  try {
    return body();
  } catch (Error& e) {
    if (e.file().empty()) e.set_file(path.string());
    throw;
  }
}

fs::path resolve(const fs::path& base_file, const std::string& ref) {
  fs::path p(ref);
  if (p.is_relative()) p = base_file.parent_path() / p;
  return fs::weakly_canonical(p);
}

}  // namespace

CatPtr Workspace::category(const fs::path& path) {
  fs::path key = fs::weakly_canonical(path);
  if (auto it = cats_.find(key); it != cats_.end()) return it->second;
  return in_file(path, [&] {
    auto cat = std::make_shared<const FinCat>(validate_category(category_from_json(read_json(path))));
    cats_.emplace(key, cat);
    return CatPtr(cat);
  });
}

PresheafPtr Workspace::presheaf(const fs::path& path) {
  fs::path key = fs::weakly_canonical(path);
  if (auto it = presheaves_.find(key); it != presheaves_.end()) return it->second;
  Json j = read_json(path);
  std::string cat_ref;
  RawPresheaf raw = in_file(path, [&] { return presheaf_from_json(j, cat_ref); });
  fs::path cat_path = resolve(key, cat_ref);
  CatPtr cat = category(cat_path);
  return in_file(path, [&] {
    auto p = std::make_shared<const Presheaf>(validate_presheaf(cat, raw));
    presheaves_.emplace(key, p);
    presheaf_paths_[p.get()] = key;
    presheaf_cats_[p.get()] = cat_path;
    return PresheafPtr(p);
  });
}

Hom Workspace::hom(const fs::path& path) {
  fs::path key = fs::weakly_canonical(path);
  Json j = read_json(path);
  auto [src, dst] = in_file(path, [&] {
    return std::pair{string_field(j, "source", ""), string_field(j, "target", "")};
  });
  PresheafPtr source = presheaf(resolve(key, src));
  PresheafPtr target = presheaf(resolve(key, dst));
  return in_file(path, [&] {
    return validate_hom(source, target, hom_map_from_json(field(j, "map", "")));
  });
}

Square Workspace::square(const fs::path& path) {
  fs::path key = fs::weakly_canonical(path);
  Json j = read_json(path);
  auto ref = [&](const char* name) {
    std::string r = in_file(path, [&] { return string_field(j, name, ""); });
    return presheaf(resolve(key, r));
  };
  PresheafPtr K = ref("K"), A = ref("A"), B = ref("B"), L = ref("L");
  return in_file(path, [&] {
    // A leg is either an inline map or the path of a hom file.
    auto leg = [&](const char* name, const PresheafPtr& s, const PresheafPtr& t) {
      const Json& v = field(j, name, "");
      if (v.is_string()) {
        Hom h = hom(resolve(key, v.get<std::string>()));
        if (!same_presheaf(h.source(), *s))
          throw Error(ErrorKind::SourceMismatch, "source of the hom file differs from the square", name);
        if (!same_presheaf(h.target(), *t))
          throw Error(ErrorKind::TargetMismatch, "target of the hom file differs from the square", name);
        return h;
      }
      try {
        return validate_hom(s, t, hom_map_from_json(v));
      } catch (Error& e) {
        throw Error(e.kind(), e.what(), std::string(name) + "/" + e.location());
      }
    };
    return make_square(leg("kA", K, A), leg("kB", K, B), leg("aL", A, L), leg("bL", B, L));
  });
}

EqSystem Workspace::system(const fs::path& path, const Presheaf& params) {
  Json j = read_json(path);
  return in_file(path, [&] { return system_from_json(j, params); });
}

fs::path Workspace::category_path_of(const Presheaf& p) const {
  auto it = presheaf_cats_.find(&p);
  return it == presheaf_cats_.end() ? fs::path{} : it->second;
}

fs::path Workspace::path_of(const Presheaf& p) const {
  auto it = presheaf_paths_.find(&p);
  return it == presheaf_paths_.end() ? fs::path{} : it->second;
}

void write_chain_trace(const ChainTrace& trace, const fs::path& dir, const fs::path& category_path) {
  fs::create_directories(dir);
  auto write = [&](const fs::path& file, const Json& j) {
    std::ofstream out(dir / file);
    out << dump(j);
  };
  std::string cat_ref = fs::proximate(fs::absolute(category_path), fs::absolute(dir)).generic_string();
  const FinCat& cat = trace.seed.K->cat();
  const Presheaf& final_stage = trace.final_stage();

  Json manifest;
  manifest["category"] = cat_ref;
  manifest["depth"] = trace.depth;
  manifest["seed"] = {{"a", trace.seed.K->label(trace.seed.a)}, {"b", trace.seed.K->label(trace.seed.b)},
                      {"c", trace.seed.K->label(trace.seed.c)}, {"f", cat.arrow_name(trace.seed.f)},
                      {"g", cat.arrow_name(trace.seed.g)}};
  manifest["stages"] = Json::array();
  std::string previous;
  const std::string base = "stage_0_0.psh.json";
  for (const auto& stage : trace.stages) {
    std::string stem = stage_stem(stage.index);
    std::string file = "stage_" + stem + ".psh.json";
    write(file, to_json(*stage.presheaf, cat_ref));
    Json entry;
    entry["index"] = {stage.index.n, stage.index.m};
    entry["file"] = file;
    entry["size"] = stage.presheaf->size();
    entry["glued"] = stage.glued;
    entry["link"] = nullptr;
    if (stage.link) {
      std::string link = "link_" + stem + ".hom.json";
      write(link, hom_to_json(*stage.link, previous, file));
      entry["link"] = link;
    }
    std::string emb = "v_" + stem + ".hom.json";
    write(emb, hom_to_json(stage.embedding, base, file));
    entry["embedding"] = emb;
    manifest["stages"].push_back(entry);
    previous = file;
  }
  manifest["a"] = labels(final_stage, trace.a);
  manifest["b"] = labels(final_stage, trace.b);
  manifest["c"] = Json::array();
  for (std::size_t n = 0; n < trace.c.size(); ++n)
    for (std::size_t m = 0; m <= n; ++m)
      manifest["c"].push_back({n, m, final_stage.label(trace.c[n][m])});
  write("manifest.json", manifest);
}

}  // namespace purelab::io
