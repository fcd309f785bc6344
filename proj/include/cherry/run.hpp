#pragma once

#include <string>

#include "cherry/io/config.hpp"

namespace cherry {

// Orchestrates one CLI command: builds the configured family, runs the
// requested computation, writes artifacts under out_dir. Deterministic for a
// fixed config and seed. Throws cherry::Error subclasses; the CLI maps their
// class to the exit code.
struct RunConfig {
    std::string command;
    Config cfg;
    std::string out_dir = ".";
    int jobs = 1;
    unsigned long long seed = 1;
};

void run(const RunConfig& rc);

}  // namespace cherry
