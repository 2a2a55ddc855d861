#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fhc/error.hpp"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2, kNumericFailure = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fhclab: desk-scale checks for frequently universal functions of exponential type"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string out_path, config_path;
  app.add_flag("--json", as_json, "Machine-readable JSON instead of CSV");
  app.add_option("-o,--out", out_path, "Write the result here instead of stdout");
  app.add_option("--config", config_path, "JSON config; command-line flags take precedence");
  const auto commands = fhclab::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInputError;
  }

  try {
    for (const auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      if (!config_path.empty()) fhclab::apply_config(*cmd.app, fhclab::load_json(config_path));
      const auto result = cmd.run();
      fhclab::emit(result, as_json, out_path);
      return result.exit_code;
    }
  } catch (const fhc::MembershipError& e) {
    std::cerr << "membership error (target " << e.target_index() << "): " << e.what() << '\n';
    return kInputError;
  } catch (const fhc::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const fhc::RangeError& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const fhc::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kCheckFailed;
}
