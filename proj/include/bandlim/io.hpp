// Copyright 2026 The bandlim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BANDLIM_IO_HPP
#define BANDLIM_IO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "bandlim/energy.hpp"
#include "bandlim/lattice.hpp"
#include "bandlim/spectral_profile.hpp"

namespace bandlim {

using Json = nlohmann::json;

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// --- profiles -------------------------------------------------------------

// Canonical (fully materialized) representation; mollified profiles carry
// their samples so reloading does not re-run the convolution.
Json profile_to_json(const SpectralProfile& profile);

// Accepts the canonical form as well as build specs:
//   kind "triangle"          1D triangle profile
//   kind "longrange"         3D polynomial with f(K0) = f'(K0) = 0 checks
//   kind "longrange-example" the stock quartic with the cos/r^4 tail
//   kind "mollified" without samples: base "flat" or polynomial
//   kinds "polynomial" / "piecewise" / "tabulated" as stored
SpectralProfile profile_from_json(const Json& j);

// --- lattices ---------------------------------------------------------------

Json configuration_to_json(const PeriodicConfiguration& config);

// Accepts {"name", "scale"?, "c_over_a"?, "density"?} or explicit
// {"dimension", "generators", "offsets"? (cartesian), "density"?}.
PeriodicConfiguration configuration_from_json(const Json& j);

Json energy_report_to_json(const EnergyReport& report);

// --- csv --------------------------------------------------------------------

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  void save(const std::string& path) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t columns_ = 0;
};

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace bandlim

#endif  // BANDLIM_IO_HPP
