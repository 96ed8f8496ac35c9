// Copyright 2026 The gemsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <string>

#include "gemsim/gemsim.h"

int main(int argc, char** argv) {
  CLI::App app{"Gradient-echo memory simulator and reproduction harness", "gemsim"};
  app.set_version_flag("--version", std::string(gem_version()));
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"simulate", "run a time-domain scenario (vacuum, single-echo, multi-echo, "
                   "auxiliary-recall, time-reversal)"},
      {"analytic", "closed-form echo, stored k-space state and Gamma identities"},
      {"network", "beamsplitter network: closed forms, path sum and unitarity"},
      {"fig4", "echo efficiency against beta with repeated switching"},
      {"fig5", "transverse-broadening echo efficiency against optical depth"},
      {"converge", "grid convergence study of the solver"},
      {"series", "phase excursion of two memories in series"},
  };

  std::string config, out;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config, "scenario configuration file")->required();
    sub->add_option("--out", out, "output directory (overrides output.dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  int exit_code = 2;
  gem_run_command(command.c_str(), config.c_str(), out.empty() ? nullptr : out.c_str(),
                  &exit_code);
  return exit_code;
}
