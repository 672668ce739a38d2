// Copyright 2026 The bmcarpet Authors
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

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bmcarpet/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the intermediate dimensions of Bedford-McMullen carpets"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::string out_path;
  int grid = 200;
  bool three_scale = false;
  app.add_flag("--json", json, "Emit JSON instead of aligned text");
  app.add_option("--out", out_path, "Write the curve CSV here instead of stdout");
  app.add_option("--grid", grid, "Number of uniform theta points in [0, 1]")->check(CLI::Range(2, 1000000));
  app.add_flag("--include-three-scale", three_scale,
               "Fill upper3 with the three-scale cover bound on [log_n m + 0.01, 0.99]");

  std::string spec_path;
  auto* dims = app.add_subcommand("dims", "Dimensions and carpet constants");
  dims->add_option("spec", spec_path, "Carpet spec (JSON)")->required();

  auto* curve = app.add_subcommand("curve", "Upper and lower bound curves as CSV");
  curve->add_option("spec", spec_path, "Carpet spec (JSON)")->required();

  std::vector<double> xs;
  auto* rate = app.add_subcommand("rate", "Rate function table");
  rate->add_option("spec", spec_path, "Carpet spec (JSON)")->required();
  rate->add_option("--x", xs, "Evaluation points (repeat or comma separate)")->delimiter(',');

  std::string theta;
  long K = 0;
  std::optional<double> s;
  std::optional<double> delta0;
  auto* oracle = app.add_subcommand("oracle", "Exact Good/Bad counts and two-scale cover cost");
  oracle->add_option("spec", spec_path, "Carpet spec (JSON)")->required();
  oracle->add_option("--theta", theta, "theta in [log_n m, 1); accepts p/q")->required();
  oracle->add_option("--K", K, "Level of the coarse squares")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--s", s, "Cover exponent (default: two-scale bound)");
  oracle->add_option("--delta0", delta0, "Good/Bad threshold offset (default: balance point)");

  std::string csv_path;
  auto* check = app.add_subcommand("check", "Validate the bound ordering of a curve CSV");
  check->add_option("csv", csv_path, "Curve CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bmc::kExitSpec;
  }

  const bmc::OutputStreams io{std::cout, std::cerr};
  if (*dims) return bmc::cmd_dims(spec_path, json, io);
  if (*curve) return bmc::cmd_curve(spec_path, grid, three_scale, out_path, io);
  if (*rate) return bmc::cmd_rate(spec_path, xs, json, io);
  if (*oracle) return bmc::cmd_oracle(spec_path, theta, K, s, delta0, json, io);
  return bmc::cmd_check(csv_path, json, io);
}
