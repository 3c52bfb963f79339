// cli.hpp -- command-line front end

#pragma once

#include "mastermind/advisor.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mastermind::cli {

/// Parses and runs one command line (`args[0]` is the program name).
/// Returns the process exit code.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err);

/// Terminal advisor loop: prints suggestions and reads "b w" feedback lines.
/// Returns 0 once solved, 1 if input ends first.
int play_terminal(const advisor::SessionParams &params, std::istream &in,
                  std::ostream &out);

} // namespace mastermind::cli
