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

#include "bandlim/pair_potential.hpp"

#include <cmath>

#include "bandlim/bessel.hpp"
#include "bandlim/error.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/summation.hpp"

namespace bandlim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;
constexpr double kLargeArgSwitch = 30.0;  // K0*r above which Eq-by-parts wins

// Batched  sum_i w_i * trig(k_i r)  through the phase kernels.
double oscillatory_sum(const std::vector<double>& nodes,
                       const std::vector<double>& weighted, double r,
                       bool use_sin) {
  const std::size_t n = nodes.size();
  static thread_local std::vector<double> t, c, s;
  t.resize(n);
  c.resize(n);
  s.resize(n);
  static thread_local std::vector<double> zeros;
  if (zeros.size() < n) zeros.assign(n, 0.0);
  kernels::linear_phases(r / kTwoPi, 0.0, 0.0, nodes.data(), zeros.data(),
                         zeros.data(), t.data(), n);
  kernels::sincos_turns(t.data(), c.data(), s.data(), n);
  const double* trig = use_sin ? s.data() : c.data();
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(weighted[i] * trig[i]);
  return acc.value();
}

int panels_for(double k0, double r) {
  const double osc = k0 * std::abs(r) / M_PI;
  int p = static_cast<int>(std::ceil(osc)) + 8;
  return std::min(p, 100000);
}

}  // namespace

PairPotential::PairPotential(SpectralProfile profile)
    : profile_(std::move(profile)) {
  phi_zero_ = profile_.phi_zero();
  if (const Poly* f = profile_.polynomial()) {
    h_ = poly_shift_up(*f);
    h2_ = poly_derivative(poly_derivative(h_));
    h3_ = poly_derivative(h2_);
  }
  if (profile_.kind() == ProfileKind::tabulated ||
      profile_.kind() == ProfileKind::mollified) {
    // Per-segment 4-point rule; exact for the linear interpolant as long as
    // the trig factor stays resolved, which holds for K0 r well beyond any
    // distance the library sums over.
    const auto& samples = profile_.samples();
    const std::size_t nseg = samples.size() - 1;
    const double h = profile_.cutoff() / static_cast<double>(nseg);
    const GaussRule& rule = gauss_legendre(4);
    const int dim = profile_.dimension();
    tab_nodes_.reserve(4 * nseg);
    tab_weighted_.reserve(4 * nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
      const double mid = (i + 0.5) * h;
      for (int j = 0; j < 4; ++j) {
        const double k = mid + 0.5 * h * rule.nodes[j];
        double w = 0.5 * h * rule.weights[j] * profile_(k);
        if (dim > 1) w *= k;  // radial kernels carry one k in 2D and 3D
        tab_nodes_.push_back(k);
        tab_weighted_.push_back(w);
      }
    }
  }
}

double PairPotential::eval_direct(double r) const {
  r = std::abs(r);
  const int dim = profile_.dimension();
  const double k0 = profile_.cutoff();
  if (r == 0.0) return phi_zero_;

  if (!tab_nodes_.empty()) {
    if (dim == 1) {
      return oscillatory_sum(tab_nodes_, tab_weighted_, r, false) / M_PI;
    }
    if (dim == 3) {
      return oscillatory_sum(tab_nodes_, tab_weighted_, r, true) /
             (2.0 * M_PI * M_PI * r);
    }
    // d = 2: scalar Bessel loop over the cached nodes.
    Kahan acc;
    for (std::size_t i = 0; i < tab_nodes_.size(); ++i)
      acc.add(tab_weighted_[i] * bessel_j0(tab_nodes_[i] * r));
    return acc.value() / kTwoPi;
  }

  const int panels = panels_for(k0, r);
  const PanelGrid grid = panel_grid(0.0, k0, panels);
  std::vector<double> weighted(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    double w = grid.weights[i] * profile_(grid.nodes[i]);
    if (dim > 1) w *= grid.nodes[i];
    weighted[i] = w;
  }
  if (dim == 1)
    return oscillatory_sum(grid.nodes, weighted, r, false) / M_PI;
  if (dim == 3)
    return oscillatory_sum(grid.nodes, weighted, r, true) /
           (2.0 * M_PI * M_PI * r);
  Kahan acc;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    acc.add(weighted[i] * bessel_j0(grid.nodes[i] * r));
  return acc.value() / kTwoPi;
}

double PairPotential::eval_partial_integration(double r) const {
  if (profile_.dimension() != 3 || !profile_.polynomial())
    throw Error(Errc::unsupported,
                "partial-integration form needs a 3D polynomial profile");
  r = std::abs(r);
  if (r == 0.0) return phi_zero_;
  const double k0 = profile_.cutoff();
  // (1/2pi^2 r^4) { [h'' cos(kr)]_0^{K0} - int_0^{K0} h''' cos(kr) dk }
  const int panels = panels_for(k0, r);
  const PanelGrid grid = panel_grid(0.0, k0, panels);
  std::vector<double> weighted(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    weighted[i] = grid.weights[i] * poly_eval(h3_, grid.nodes[i]);
  const double integral = oscillatory_sum(grid.nodes, weighted, r, false);
  const double boundary =
      poly_eval(h2_, k0) * std::cos(k0 * r) - poly_eval(h2_, 0.0);
  const double r2 = r * r;
  return (boundary - integral) / (2.0 * M_PI * M_PI * r2 * r2);
}

double PairPotential::operator()(double r) const {
  r = std::abs(r);
  if (profile_.dimension() == 3 && profile_.polynomial() &&
      profile_.cutoff() * r > kLargeArgSwitch)
    return eval_partial_integration(r);
  return eval_direct(r);
}

PairPotential::Asymptotics PairPotential::asymptotics() const {
  if (profile_.dimension() != 3 || !profile_.polynomial())
    throw Error(Errc::unsupported,
                "asymptotic amplitude needs a 3D polynomial profile");
  const double k0 = profile_.cutoff();
  const double norm = 2.0 * M_PI * M_PI;
  return {poly_eval(h2_, k0) / norm, -poly_eval(h2_, 0.0) / norm};
}

const PairPotential::Envelope& PairPotential::envelope() const {
  if (envelope_) return *envelope_;
  const double k0 = profile_.cutoff();
  const int dim = profile_.dimension();
  Envelope env{};
  if (profile_.kind() == ProfileKind::tabulated ||
      profile_.kind() == ProfileKind::mollified) {
    // Smooth profiles decay faster than any power; an r^-8 envelope fitted
    // on a finite window is a serviceable bound for window sums.
    env.power = 8.0;
    double fit = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double r = (10.0 + 0.5 * i) / k0;
      fit = std::max(fit, std::abs((*this)(r)) * std::pow(r, 8.0));
    }
    env.amplitude = 2.0 * fit;
  } else {
    // Algebraic tails, set by the band-edge derivative order: 1/r^4 for the
    // constrained 3D family, 1/r^2 (1D) and 1/r^{5/2} (2D) when only the
    // value vanishes at the edge.
    env.power = (dim == 3) ? 4.0 : (dim == 2 ? 2.5 : 2.0);
    double fit = 0.0;
    if (dim == 3 && profile_.polynomial()) {
      const Asymptotics a = asymptotics();
      fit = std::abs(a.cos_amplitude) + std::abs(a.constant_term);
    }
    for (int i = 0; i <= 90; ++i) {
      const double r = (20.0 + 2.0 * i) / k0;
      fit = std::max(fit, std::abs((*this)(r)) * std::pow(r, env.power));
    }
    env.amplitude = 1.5 * fit;
  }
  envelope_ = std::make_unique<Envelope>(env);
  return *envelope_;
}

RadialInterpolant::RadialInterpolant(const PairPotential& pot, double r_max,
                                     int points)
    : r_max_(r_max), h_(r_max / (points - 1)), values_(points) {
  for (int i = 0; i < points; ++i) values_[i] = pot(i * h_);
}

double RadialInterpolant::operator()(double r) const {
  r = std::abs(r);
  const double x = r / h_;
  const std::size_t n = values_.size();
  std::size_t i = static_cast<std::size_t>(x);
  if (i + 2 >= n) {
    // top edge: fall back to linear on the last segment
    if (i + 1 >= n) return values_.back();
    const double w = x - static_cast<double>(i);
    return values_[i] * (1.0 - w) + values_[i + 1] * w;
  }
  // Catmull-Rom cubic on the four surrounding nodes.
  const double w = x - static_cast<double>(i);
  const double ym = (i == 0) ? values_[1] : values_[i - 1];  // even extension
  const double y0 = values_[i];
  const double y1 = values_[i + 1];
  const double y2 = values_[i + 2];
  const double a0 = -0.5 * ym + 1.5 * y0 - 1.5 * y1 + 0.5 * y2;
  const double a1 = ym - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
  const double a2 = -0.5 * ym + 0.5 * y1;
  const double a3 = y0;
  return ((a0 * w + a1) * w + a2) * w + a3;
}

}  // namespace bandlim
