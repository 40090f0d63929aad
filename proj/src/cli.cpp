#include "purelab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "purelab/fixtures.hpp"
#include "purelab/verify/acceptance.hpp"
#include "purelab/version.hpp"

#ifndef PURELAB_FIXTURE_DIR
#define PURELAB_FIXTURE_DIR "fixtures"
#endif

namespace purelab::cli {

namespace fs = std::filesystem;
using io::Json;

int exit_code(const Json& report) {
  if (report.contains("error")) return kInputError;
  auto it = report.find("holds");
  return it != report.end() && it->is_boolean() && it->get<bool>() ? kHolds : kFails;
}

fs::path fixture_dir() {
  if (const char* env = std::getenv("PURELAB_FIXTURES"); env && *env) return env;
  return PURELAB_FIXTURE_DIR;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

namespace {

Json error_object(const Error& e) {
  return {{"kind", std::string(to_string(e.kind()))},
          {"file", e.file()},
          {"location", e.location()},
          {"message", e.what()}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(s, &pos);
    if (pos != s.size() || v == 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::BadArgument, what + " must be a positive integer, got '" + s + "'");
  }
}

PatternShape parse_shape(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::BadArgument, "shape must be bipartite:R,C or order:N");
  std::string kind = s.substr(0, colon);
  auto args = split(s.substr(colon + 1), ',');
  if (kind == "bipartite" && args.size() == 2)
    return PatternShape::bipartite(parse_count(args[0], "rows"), parse_count(args[1], "cols"));
  if (kind == "order" && args.size() == 1) return PatternShape::order(parse_count(args[0], "length"));
  throw Error(ErrorKind::BadArgument, "shape must be bipartite:R,C or order:N");
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.items()) {
    out << key << ": ";
    if (value.is_string()) out << value.get<std::string>();
    else out << value.dump();
    out << "\n";
  }
  return out.str();
}

// A presheaf file path, or a bare name looked up in the fixture directory.
fs::path presheaf_ref(const std::string& name) {
  if (fs::exists(name)) return name;
  fs::path candidate = fixture_dir() / (name + ".psh.json");
  if (fs::exists(candidate)) return candidate;
  return name;
}

ArrowId infer_arrow(const Presheaf& K, ElemId c, ElemId target, const std::string& role) {
  for (ArrowId f : K.cat().arrows_from(K.sort(c)))
    if (!K.cat().is_identity(f) && K.act(f, c) == target) return f;
  throw Error(ErrorKind::SeedConditionViolated, "no arrow sends " + K.label(c) + " to " + K.label(target), role);
}

struct Context {
  io::Workspace ws;
  std::vector<fs::path> inputs;

  void input(const fs::path& p) { inputs.push_back(p); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite presheaf toolkit: purity, pushouts, connectivity and order-property witnesses", "purelab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "Write the report to a file");

  Context ctx;
  std::function<Json()> action;

  // validate
  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Validate category, presheaf, hom or square files");
  validate->add_option("files", validate_paths)->required();
  validate->callback([&] {
    action = [&] {
      Json objects = Json::array();
      Json errors = Json::array();
      for (const auto& p : validate_paths) {
        ctx.input(p);
        try {
          Json j = io::Workspace::read_json(p);
          std::string kind;
          if (j.contains("objects")) {
            kind = "category";
            ctx.ws.category(p);
          } else if (j.contains("carriers")) {
            kind = "presheaf";
            ctx.ws.presheaf(p);
          } else if (j.contains("map")) {
            kind = "hom";
            ctx.ws.hom(p);
          } else if (j.contains("kA")) {
            kind = "square";
            ctx.ws.square(p);
          } else {
            Error e(ErrorKind::MalformedJson, "unrecognised file kind");
            e.set_file(p);
            throw e;
          }
          objects.push_back({{"file", p}, {"kind", kind}});
        } catch (const Error& e) {
          errors.push_back(error_object(e));
        }
      }
      Json r;
      r["holds"] = errors.empty();
      r["objects"] = objects;
      if (!errors.empty()) r["error"] = errors.front(), r["errors"] = errors;
      return r;
    };
  });

  // llp
  std::string llp_path;
  auto* llp = app.add_subcommand("llp", "Decide whether a category is locally linearly preordered");
  llp->add_option("category", llp_path)->required();
  llp->callback([&] {
    action = [&] {
      ctx.input(llp_path);
      CatPtr cat = ctx.ws.category(llp_path);
      LlpResult res = is_llp(*cat);
      Json r;
      r["llp"] = res.holds;
      if (res.witness) r["witness"] = io::to_json(*res.witness, *cat);
      r["groupoid"] = is_groupoid(*cat);
      r["holds"] = res.holds;
      return r;
    };
  });

  // pure / split
  std::string pure_path, split_path;
  auto* pure = app.add_subcommand("pure", "Decide whether a mono is pure");
  pure->add_option("hom", pure_path)->required();
  pure->callback([&] {
    action = [&] {
      ctx.input(pure_path);
      Hom h = ctx.ws.hom(pure_path);
      PurityCertificate cert = is_pure(h);
      Json r;
      r["pure"] = cert.pure;
      r["certificate"] = io::to_json(cert, h);
      r["holds"] = cert.pure;
      return r;
    };
  });
  auto* split_cmd = app.add_subcommand("split", "Search for a retraction of a mono");
  split_cmd->add_option("hom", split_path)->required();
  split_cmd->callback([&] {
    action = [&] {
      ctx.input(split_path);
      Hom h = ctx.ws.hom(split_path);
      auto r_hom = is_split(h);
      Json r;
      r["split"] = r_hom.has_value();
      if (r_hom) r["retraction"] = io::hom_map_to_json(*r_hom);
      r["holds"] = r_hom.has_value();
      return r;
    };
  });

  // square
  std::string square_path, square_check = "pure-effective";
  auto* square = app.add_subcommand("square", "Check a commuting square");
  square->add_option("square", square_path)->required();
  square->add_option("--check", square_check)->check(CLI::IsMember({"pure-effective", "pullback"}));
  square->callback([&] {
    action = [&] {
      ctx.input(square_path);
      Square sq = ctx.ws.square(square_path);
      Json r;
      r["check"] = square_check;
      if (square_check == "pullback") {
        bool pb = is_pullback_square(sq);
        r["pullback"] = pb;
        r["holds"] = pb;
      } else {
        PureEffectiveResult res = is_pure_effective(sq);
        r["pure_effective"] = res.holds;
        r["diagnostic"] = std::string(to_string(res.diagnostic));
        r["induced"] = io::hom_map_to_json(res.induced);
        if (res.purity && res.purity->falsifier) r["certificate"] = io::to_json(*res.purity, res.induced);
        r["holds"] = res.holds;
      }
      return r;
    };
  });

  // pushout / pullback
  std::vector<std::string> pushout_paths, pullback_paths;
  auto* pushout = app.add_subcommand("pushout", "Pushout of two monos with a common source");
  pushout->add_option("homs", pushout_paths)->required()->expected(2);
  pushout->callback([&] {
    action = [&] {
      for (const auto& p : pushout_paths) ctx.input(p);
      Hom kA = ctx.ws.hom(pushout_paths[0]);
      Hom kB = ctx.ws.hom(pushout_paths[1]);
      PushoutResult po = pushout_monos(kA, kB);
      std::string cat_path = ctx.ws.category_path_of(kA.source()).string();
      Json r;
      r["P"] = io::to_json(*po.P, cat_path);
      r["inA"] = io::hom_map_to_json(po.inA);
      r["inB"] = io::hom_map_to_json(po.inB);
      r["size"] = po.P->size();
      r["holds"] = true;
      return r;
    };
  });
  auto* pullback = app.add_subcommand("pullback", "Pullback of two monos with a common target");
  pullback->add_option("homs", pullback_paths)->required()->expected(2);
  pullback->callback([&] {
    action = [&] {
      for (const auto& p : pullback_paths) ctx.input(p);
      Hom aL = ctx.ws.hom(pullback_paths[0]);
      Hom bL = ctx.ws.hom(pullback_paths[1]);
      Square sq = pullback_monos(aL, bL);
      std::string cat_path = ctx.ws.category_path_of(aL.target()).string();
      Json r;
      r["K"] = io::to_json(sq.K(), cat_path);
      r["kA"] = io::hom_map_to_json(sq.kA);
      r["kB"] = io::hom_map_to_json(sq.kB);
      r["size"] = sq.K().size();
      r["holds"] = true;
      return r;
    };
  });

  // components
  std::string comp_path, comp_base;
  bool comp_base_given = false;
  auto* components = app.add_subcommand("components", "Connectivity classes outside a subpresheaf");
  components->add_option("input", comp_path, "Mono (hom file) or presheaf file")->required();
  components->add_option("--base", comp_base, "Comma-separated elements of the base, for a presheaf input");
  components->callback([&] {
    comp_base_given = components->count("--base") > 0;
    action = [&] {
      ctx.input(comp_path);
      Json j = io::Workspace::read_json(comp_path);
      ConnectivityReport report = [&] {
        if (j.contains("map")) {
          Hom h = ctx.ws.hom(comp_path);
          if (!h.is_mono()) throw Error(ErrorKind::NotMono, "the hom is not a mono");
          return components_outside(h.image());
        }
        PresheafPtr L = ctx.ws.presheaf(comp_path);
        std::vector<bool> mask(L->size(), false);
        if (comp_base_given)
          for (const auto& label : split(comp_base, ','))
            if (!label.empty()) mask[idx(L->element(label))] = true;
        return components_outside(L, mask);
      }();
      Json r = io::to_json(report);
      r["holds"] = true;
      return r;
    };
  });

  // witness
  std::string w_cat, w_seed, w_f, w_g, w_trace;
  std::size_t w_depth = 3;
  auto* witness = app.add_subcommand("witness", "Build the order-property chain and check it");
  witness->add_option("--cat", w_cat)->required();
  witness->add_option("--seed", w_seed, "PRESHEAF:a,b,c")->required();
  witness->add_option("--depth", w_depth)->check(CLI::PositiveNumber);
  witness->add_option("--f", w_f);
  witness->add_option("--g", w_g);
  witness->add_option("--trace-dir", w_trace, "Write the chain files into this directory");
  witness->callback([&] {
    action = [&] {
      auto colon = w_seed.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorKind::BadArgument, "seed must be PRESHEAF:a,b,c");
      auto elems = split(w_seed.substr(colon + 1), ',');
      if (elems.size() != 3) throw Error(ErrorKind::BadArgument, "seed must name three elements a,b,c");
      ctx.input(w_cat);
      CatPtr cat = ctx.ws.category(w_cat);
      fs::path psh = presheaf_ref(w_seed.substr(0, colon));
      ctx.input(psh);
      PresheafPtr K = ctx.ws.presheaf(psh);
      if (!(K->cat() == *cat)) throw Error(ErrorKind::BadArgument, "the seed presheaf is over a different category");
      ElemId a = K->element(elems[0]), b = K->element(elems[1]), c = K->element(elems[2]);
      ArrowId f = w_f.empty() ? infer_arrow(*K, c, a, "f") : K->cat().arrow_named(w_f);
      ArrowId g = w_g.empty() ? infer_arrow(*K, c, b, "g") : K->cat().arrow_named(w_g);
      ChainTrace trace = build_chain(ChainSeed{K, a, b, c, f, g}, w_depth);
      OrderReport order = check_order_pattern(trace);
      HReport h = check_H_properties(trace);
      if (!w_trace.empty()) io::write_chain_trace(trace, w_trace, ctx.ws.category_path_of(*K));
      Json r;
      r["depth"] = w_depth;
      r["stages"] = Json::array();
      for (const auto& st : trace.stages) r["stages"].push_back(st.presheaf->size());
      r["order"] = io::to_json(order);
      r["H"] = io::to_json(h, trace.final_stage());
      r["holds"] = order.ok() && h.ok();
      return r;
    };
  });

  // pattern
  std::string p_path, p_f, p_g, p_shape;
  auto* pattern = app.add_subcommand("pattern", "Search an (f,g)-interpreted bipartite or order pattern");
  pattern->add_option("presheaf", p_path)->required();
  pattern->add_option("--f", p_f)->required();
  pattern->add_option("--g", p_g)->required();
  pattern->add_option("--shape", p_shape, "bipartite:R,C or order:N")->required();
  pattern->callback([&] {
    action = [&] {
      ctx.input(p_path);
      PresheafPtr P = ctx.ws.presheaf(p_path);
      PatternShape shape = parse_shape(p_shape);
      auto found = find_pattern(*P, P->cat().arrow_named(p_f), P->cat().arrow_named(p_g), shape);
      Json r;
      r["found"] = found.has_value();
      if (found) r["pattern"] = io::to_json(*found, *P);
      r["holds"] = found.has_value();
      return r;
    };
  });

  // suite
  std::uint64_t suite_seed = 0;
  auto* suite = app.add_subcommand("suite", "Run the acceptance suites");
  suite->add_option("--seed", suite_seed);
  suite->callback([&] {
    action = [&] {
      Json r;
      r["seed"] = suite_seed;
      r["criteria"] = Json::array();
      bool all = true;
      for (const auto& c : verify::run_acceptance(suite_seed)) {
        r["criteria"].push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass},
                                 {"instances", c.instances}, {"seconds", c.seconds}, {"detail", c.detail}});
        all = all && c.pass;
      }
      r["holds"] = all;
      return r;
    };
  });

  // fixtures
  std::string fixtures_out;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the canonical fixture files");
  fixtures_cmd->add_option("--dir", fixtures_out)->required();
  fixtures_cmd->callback([&] {
    action = [&] {
      fixtures::write_all(fixtures_out);
      Json r;
      r["dir"] = fixtures_out;
      r["holds"] = true;
      return r;
    };
  });

  Json report;
  report["tool"] = "purelab";
  report["version"] = std::string(kVersion);
  try {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    // --help and --version
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report["error"] = {{"kind", std::string(to_string(ErrorKind::BadArgument))},
                       {"file", ""}, {"location", ""}, {"message", e.what()}};
    out << io::dump(report);
    return kInputError;
  }

  report["command"] = app.get_subcommands().front()->get_name();
  try {
    Json result = action();
    for (auto& [k, v] : result.items()) report[k] = v;
  } catch (Error& e) {
    if (e.file().empty() && !ctx.inputs.empty()) e.set_file(ctx.inputs.back().string());
    report["error"] = error_object(e);
    report.erase("holds");
  }
  Json inputs = Json::array();
  for (const auto& p : ctx.inputs) {
    std::string digest;
    try {
      digest = sha256_file(p);
    } catch (const Error&) {
    }
    inputs.push_back({{"path", p.string()}, {"sha256", digest}});
  }
  report["inputs"] = inputs;

  std::string text = format == "text" ? render_text(report) : io::dump(report);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path);
    if (!file) {
      err << "cannot write " << out_path << "\n";
      return kInputError;
    }
    file << text;
  }
  return exit_code(report);
}

}  // namespace purelab::cli
