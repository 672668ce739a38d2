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

#ifndef BMCARPET_COMMANDS_HPP_
#define BMCARPET_COMMANDS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bmc {

// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,  // check: the curve breaks the bound ordering
  kExitSpec = 2,
  kExitIo = 3,
  kExitDomain = 4,
};

struct OutputStreams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_dims(const std::string& spec_path, bool json, OutputStreams io);

// An empty out_path writes the CSV to io.out.
int cmd_curve(const std::string& spec_path, int grid_size, bool include_three_scale,
              const std::string& out_path, OutputStreams io);

// Without x values, tabulates 11 evenly spaced points of the support.
int cmd_rate(const std::string& spec_path, const std::vector<double>& xs, bool json,
             OutputStreams io);

// theta is parsed by parse_theta, so "3/4" is exact. delta0 defaults to
// the balance point (1e-6 for uniform fibres) and s to the two-scale bound.
int cmd_oracle(const std::string& spec_path, const std::string& theta, long K,
               std::optional<double> s, std::optional<double> delta0, bool json,
               OutputStreams io);

int cmd_check(const std::string& csv_path, bool json, OutputStreams io);

}  // namespace bmc

#endif  // BMCARPET_COMMANDS_HPP_
