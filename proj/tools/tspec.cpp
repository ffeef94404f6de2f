#include "tspec/report.hpp"
#include "tspec/specfile.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Reidemeister spectra, zeta functions and heights of affine endomorphisms"};
  std::string command_name, path, out;
  tspec::CommandOptions options;
  app.add_option("command", command_name, "spectrum | zeta | heights | orbits | classify | verify")->required();
  app.add_option("spec", path, "spec document (TOML)")->required();
  app.add_option("--kmax", options.kmax, "last iterate to compute");
  app.add_option("--k", options.k, "iterate for the orbits command");
  app.add_option("--guard", options.guard, "extra terms required to confirm a recurrence");
  app.add_option("--out", out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto command = tspec::parse_command(command_name);
  if (!command) {
    std::cerr << "tspec: unknown command '" << command_name << "'\n";
    return 1;
  }

  try {
    const tspec::SpecFile file = tspec::parse_spec_file(path);
    const tspec::CommandResult result = tspec::run_command(*command, file, options);
    for (const auto& line : result.diagnostics) std::cerr << line << '\n';
    if (out.empty()) {
      std::cout << result.json;
    } else {
      std::ofstream stream(out, std::ios::binary);
      stream << result.json;
      if (!stream) {
        std::cerr << "tspec: cannot write " << out << '\n';
        return 1;
      }
    }
    return result.status;
  } catch (const tspec::Error& e) {
    std::cerr << "tspec: " << e.what() << '\n';
    return tspec::exit_code(e);
  }
}
