#pragma once

// Helpers for driving the queuesim binary from tests.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace cli {

inline std::filesystem::path workdir()
{
    static const std::filesystem::path dir = [] {
        std::filesystem::path d = QUEUESIM_WORKDIR;
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

inline std::string path(const std::string& name) { return (workdir() / name).string(); }

inline std::string slurp(const std::string& file)
{
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& file, const std::string& content)
{
    std::ofstream(file, std::ios::binary | std::ios::trunc) << content;
}

/// Runs the binary with `args`; stdout and stderr land in the named files.
inline int run(const std::string& args, const std::string& out = "stdout.txt", const std::string& err = "stderr.txt")
{
    const std::string cmd = std::string("\"") + QUEUESIM_CLI + "\" " + args + " > \"" + path(out) + "\" 2> \"" +
                            path(err) + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace cli
