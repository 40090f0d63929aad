#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "purelab/connectivity.hpp"
#include "purelab/purity.hpp"
#include "purelab/witness.hpp"

namespace purelab::io {

using Json = nlohmann::ordered_json;

/// Canonical text form of every file this library writes: two-space
/// indentation, keys in schema order, trailing newline.
std::string dump(const Json& j);

RawCategory category_from_json(const Json& j);
Json to_json(const FinCat& cat);

/// `category_path` receives the "category" field verbatim.
RawPresheaf presheaf_from_json(const Json& j, std::string& category_path);
Json to_json(const Presheaf& p, const std::string& category_path);

std::vector<std::pair<std::string, ElementMap>> hom_map_from_json(const Json& j);
Json hom_map_to_json(const Hom& h);
Json hom_to_json(const Hom& h, const std::string& source_path, const std::string& target_path);

EqSystem system_from_json(const Json& j, const Presheaf& params);
Json to_json(const EqSystem& system, const Presheaf& params);
Json assignment_to_json(const Presheaf& m, const Assignment& a);

Json to_json(const SpanWitness& w, const FinCat& cat);
Json to_json(const PurityCertificate& cert, const Hom& incl);
Json to_json(const ConnectivityReport& report);
Json to_json(const OrderReport& report);
Json to_json(const HReport& report, const Presheaf& final_stage);
Json to_json(const PatternWitness& w, const Presheaf& p);

/// Loads files and resolves the paths they reference relative to the
/// referencing file. Each file is parsed once, so presheaves named by the
/// same path are the same object. Errors carry the offending file name.
class Workspace {
 public:
  CatPtr category(const std::filesystem::path& path);
  PresheafPtr presheaf(const std::filesystem::path& path);
  Hom hom(const std::filesystem::path& path);
  Square square(const std::filesystem::path& path);
  EqSystem system(const std::filesystem::path& path, const Presheaf& params);

  /// The category file a presheaf was loaded against.
  std::filesystem::path category_path_of(const Presheaf& p) const;
  std::filesystem::path path_of(const Presheaf& p) const;

  static Json read_json(const std::filesystem::path& path);

 private:
  std::map<std::filesystem::path, CatPtr> cats_;
  std::map<std::filesystem::path, PresheafPtr> presheaves_;
  std::map<const Presheaf*, std::filesystem::path> presheaf_paths_;
  std::map<const Presheaf*, std::filesystem::path> presheaf_cats_;
};

/// Writes the canonical form of a chain trace into a directory: one
/// presheaf file per stage, link and embedding hom files, and
/// manifest.json.
void write_chain_trace(const ChainTrace& trace, const std::filesystem::path& dir,
                       const std::filesystem::path& category_path);

}  // namespace purelab::io
