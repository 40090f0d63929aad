#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "purelab/io.hpp"

namespace purelab::cli {

/// Exit statuses.
inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kInputError = 2;

/// Exit status implied by a report: 2 when it carries an error, otherwise
/// 0 or 1 according to its "holds" field.
int exit_code(const io::Json& report);

/// Directory used to resolve bare fixture names: $PURELAB_FIXTURES if set,
/// otherwise the directory compiled in.
std::filesystem::path fixture_dir();

/// SHA-256 of a file as lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

/// Runs one command line (args[0] is the program name). The report goes to
/// `out` (or the --out file); usage text and help go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace purelab::cli
