#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace oapl::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kInputError = 2, kInfeasible = 3 };

// Runs `oa-policy-lab` with the given arguments (argv[0] included). Normal
// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes `content` to dir/name through a temporary file and a rename, creating
// `dir` if needed. Returns the final path.
std::filesystem::path write_atomic(const std::filesystem::path& dir, std::string_view name, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace oapl::cli
