#pragma once

#include "infogeo/io.hpp"

#include <string>
#include <vector>

namespace infogeo::cli {

struct CommandResult {
    bool ok = true;
    Json payload = Json::object();
    Json diagnostics = Json::object();
    std::string code;     // error results only
    std::string message;  // error results only

    Json to_json() const;
};

/// Runs one command line (without the program name). Never throws: failures
/// become error results carrying an ErrorCode name.
CommandResult dispatch(const std::vector<std::string>& args);

/// dispatch + one JSON document on stdout; returns the exit status.
int run(int argc, char** argv);

}  // namespace infogeo::cli
