#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace chm::testing {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

inline CommandResult run_command(const std::string& command) {
    const std::string full = command + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed for: " + command);
    CommandResult result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace chm::testing
