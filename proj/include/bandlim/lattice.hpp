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

#ifndef BANDLIM_LATTICE_HPP
#define BANDLIM_LATTICE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bandlim/vec.hpp"

namespace bandlim {

// Bravais lattice: integer combinations of the generator rows.
struct LatticeBasis {
  int dim = 3;
  Mat3 generators;  // rows a_1..a_d; unused rows hold unit vectors

  double det() const { return bandlim::det(generators, dim); }
  double density() const;  // 1/|det|
};

struct ShortestVector {
  double norm = 0.0;
  std::array<int, 3> coeffs{0, 0, 0};
};

// Exact shortest nonzero lattice vector for d <= 3: greedy (Minkowski)
// reduction followed by an exhaustive scan of small coefficients in the
// reduced basis. Coefficients refer to the original generators.
ShortestVector shortest_vector(const Mat3& generators, int dim);

struct ReciprocalBasis {
  int dim = 3;
  Mat3 generators;                      // rows b_1..b_d, a_i . b_j = 2pi d_ij
  double shortest_norm = 0.0;           // q
  std::array<int, 3> shortest_coeffs{0, 0, 0};
};

ReciprocalBasis reciprocal(const LatticeBasis& basis);

struct LatticePoint {
  Vec3 k;
  std::array<int, 3> coeffs{0, 0, 0};
  double norm = 0.0;
};

// All lattice vectors with |k| < radius (strict), each exactly once,
// including the origin; sorted by (norm, coefficients).
std::vector<LatticePoint> enumerate_in_ball(const Mat3& generators, int dim,
                                            double radius);

// Union of J shifted copies of one Bravais lattice. Offsets are stored in
// fractional (generator) coordinates with y_1 = 0.
struct PeriodicConfiguration {
  LatticeBasis basis;
  std::vector<Vec3> offsets{Vec3{}};

  int point_count() const { return static_cast<int>(offsets.size()); }
  double density() const { return point_count() * basis.density(); }
  Vec3 offset_cartesian(std::size_t j) const {
    return apply(offsets[j], basis.generators);
  }
};

// Builds a configuration from cartesian offsets: wraps into the unit cell,
// translates so the first offset is zero, and rejects coincident points.
PeriodicConfiguration make_configuration(LatticeBasis basis,
                                         const std::vector<Vec3>& cartesian);

// Heuristic minimality check on J: returns false when translating the
// offset set by one of its internal differences maps it onto itself
// (difference of finite order m <= 4 modulo the lattice).
bool offsets_minimal(const PeriodicConfiguration& config);

// Parallelepiped of L_alpha * a_alpha; period cell for B-periodic
// configurations. Its dual grid (rows b_alpha / L_alpha) contains B*.
struct PeriodCell {
  LatticeBasis basis;
  std::array<int, 3> multipliers{1, 1, 1};

  int points_per_cell() const;            // prod L_alpha
  double volume() const;                  // |det| * prod L_alpha
  Mat3 cell_matrix() const;               // rows L_alpha a_alpha
  Mat3 dual_matrix() const;               // rows b_alpha / L_alpha
};

enum class LatticeName { chain, square, triangular, sc, bcc, fcc, sh, hcp };

const char* lattice_name_string(LatticeName n);
LatticeName lattice_name_from_string(const std::string& s);
int lattice_dimension(LatticeName n);
double default_axial_ratio(LatticeName n);  // sh, hcp; 0 otherwise

// Conventional generators at lattice constant `scale`; hcp carries J = 2.
PeriodicConfiguration named_lattice(LatticeName name, double scale,
                                    double c_over_a = 0.0);

// Uniform dilation to the target density; offsets (fractional) unchanged.
PeriodicConfiguration scale_to_density(const PeriodicConfiguration& config,
                                       double rho_target);

struct ThresholdDensity {
  double closed_form = 0.0;  // analytic value
  double computed = 0.0;     // scale-until-q-equals-K0 route
};

// Density at which the named lattice's shortest reciprocal vector reaches
// the cutoff; both the closed form and the independently scaled value.
ThresholdDensity threshold_density(LatticeName name, double k0,
                                   double c_over_a = 0.0);

struct MinimalBravaisResult {
  int dim = 0;
  LatticeName name = LatticeName::chain;
  double density = 0.0;      // minimized rho(B) subject to q = K0
  double closed_form = 0.0;  // threshold density of the winner
  Mat3 reciprocal_generators;  // optimizer's B* (scaled so q = K0)
  double q = 0.0;
};

// Numerically minimizes rho(B) over Bravais lattices constrained to
// q_{B*} = K0 (Cholesky-parameterized Gram, Nelder-Mead multistart) and
// matches the winner against the known minimal lattice.
MinimalBravaisResult minimal_bravais_check(int dim, double k0,
                                           std::uint64_t seed = 1,
                                           int restarts = 64);

}  // namespace bandlim

#endif  // BANDLIM_LATTICE_HPP
