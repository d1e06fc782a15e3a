#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "oapl/cli/app.hpp"
#include "oapl/common/error.hpp"

namespace oapl::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open (" + std::strerror(errno) + ")");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_atomic(const fs::path& dir, std::string_view name, std::string_view content) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError(dir.string() + ": cannot create output directory (" + ec.message() + ")");

    const fs::path target = dir / std::string(name);
    const fs::path tmp = dir / ("." + std::string(name) + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError(tmp.string() + ": cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw InputError(tmp.string() + ": write failed");
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        const std::string reason = ec.message();
        fs::remove(tmp, ec);
        throw InputError(target.string() + ": cannot replace (" + reason + ")");
    }
    return target;
}

}  // namespace oapl::cli
