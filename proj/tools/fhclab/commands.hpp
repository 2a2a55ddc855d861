#ifndef FHCLAB_COMMANDS_HPP
#define FHCLAB_COMMANDS_HPP

#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"

namespace fhclab {

struct Command {
  CLI::App* app = nullptr;
  std::function<Result()> run;
};

// Registers indicator, norm, membership, series-check, density-fit, borel,
// construct, recurrence, growth, zeros, carleman and obstruct on `app`.
std::vector<Command> register_commands(CLI::App& app);

// Fills options of `sub` that were not given on the command line from a JSON
// object: either the section named after the subcommand or the whole object.
// Keys are option names without dashes; '_' and '-' are interchangeable.
void apply_config(CLI::App& sub, const json& config);

}  // namespace fhclab

#endif  // FHCLAB_COMMANDS_HPP
