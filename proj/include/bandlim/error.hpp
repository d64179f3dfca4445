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

#ifndef BANDLIM_ERROR_HPP
#define BANDLIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bandlim {

enum class Errc {
  invalid_parameter,
  invalid_profile,
  constraint_violation,
  unsupported,
  degenerate_basis,
  unknown_lattice,
  hypothesis_violation,
  tolerance_unreachable,
  window_too_small,
  optimizer_failed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_profile: return "invalid-profile";
    case Errc::constraint_violation: return "constraint-violation";
    case Errc::unsupported: return "unsupported";
    case Errc::degenerate_basis: return "degenerate-basis";
    case Errc::unknown_lattice: return "unknown-lattice";
    case Errc::hypothesis_violation: return "hypothesis-violation";
    case Errc::tolerance_unreachable: return "tolerance-unreachable";
    case Errc::window_too_small: return "window-too-small";
    case Errc::optimizer_failed: return "optimizer-failed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace bandlim

#endif  // BANDLIM_ERROR_HPP
