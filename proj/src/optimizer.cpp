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

#include "bandlim/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/error.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/rng.hpp"
#include "bandlim/summation.hpp"

namespace bandlim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

void wrap_fraction(Vec3& f, int dim) {
  for (int c = 0; c < dim; ++c) {
    f[c] -= std::floor(f[c]);
    if (f[c] >= 1.0) f[c] = 0.0;  // floor rounding edge
  }
  for (int c = dim; c < 3; ++c) f[c] = 0.0;
}

// Structure factors for every nonzero ball point, with the per-particle
// sin/cos retained so the gradient pass can reuse them.
struct SumsWorkspace {
  std::vector<double> f0, f1, f2, t;
  std::vector<double> c, s;  // per (k, particle), row-major over k

  void load(const std::vector<Vec3>& fracs, std::size_t nk) {
    const std::size_t n = fracs.size();
    f0.resize(n);
    f1.resize(n);
    f2.resize(n);
    t.resize(n);
    c.resize(n * nk);
    s.resize(n * nk);
    for (std::size_t i = 0; i < n; ++i) {
      f0[i] = fracs[i][0];
      f1[i] = fracs[i][1];
      f2[i] = fracs[i][2];
    }
  }
};

}  // namespace

std::vector<SfEntry> structure_factor_map(const PeriodCell& cell,
                                          const std::vector<Vec3>& fracs,
                                          double k0) {
  const auto points = enumerate_in_ball(cell.dual_matrix(), cell.basis.dim, k0);
  const std::size_t n = fracs.size();
  std::vector<double> f0(n), f1(n), f2(n), t(n), c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    f0[i] = fracs[i][0];
    f1[i] = fracs[i][1];
    f2[i] = fracs[i][2];
  }
  std::vector<SfEntry> out;
  out.reserve(points.size());
  for (const LatticePoint& p : points) {
    kernels::linear_phases(p.coeffs[0], p.coeffs[1], p.coeffs[2], f0.data(),
                           f1.data(), f2.data(), t.data(), n);
    kernels::sincos_turns(t.data(), c.data(), s.data(), n);
    Kahan re, im;
    for (std::size_t i = 0; i < n; ++i) {
      re.add(c[i]);
      im.add(s[i]);
    }
    SfEntry e;
    e.row = p.coeffs;
    e.k_norm = p.norm;
    const double rr = re.value(), ii = im.value();
    e.s2 = rr * rr + ii * ii;
    out.push_back(e);
  }
  return out;
}

GradientResult box_energy_gradient(const PairPotential& pot,
                                   const PeriodCell& cell,
                                   const DualBall& ball,
                                   const std::vector<Vec3>& fracs) {
  const int dim = cell.basis.dim;
  const double volume = cell.volume();
  const std::size_t n = fracs.size();
  const std::size_t nk = ball.size();

  GradientResult out;
  out.energy.n_points = static_cast<int>(n);
  const double nn = static_cast<double>(n);
  out.energy.self_term =
      nn * (nn * pot.phi_hat_zero() - ball.phi_hat_sum()) / (2.0 * volume);
  out.energy.floor = out.energy.self_term;
  out.gradient.assign(n, Vec3{});
  if (n == 0) return out;

  SumsWorkspace ws;
  ws.load(fracs, nk);
  out.energy.s2.resize(nk);

  // pass 1: all sin/cos and structure factors
  std::vector<double> s_re(nk), s_im(nk);
  {
    std::size_t ki = 0;
    for (const DualPoint& p : ball.points()) {
      double* cs = ws.c.data() + ki * n;
      double* sn = ws.s.data() + ki * n;
      kernels::linear_phases(p.row[0], p.row[1], p.row[2], ws.f0.data(),
                             ws.f1.data(), ws.f2.data(), ws.t.data(), n);
      kernels::sincos_turns(ws.t.data(), cs, sn, n);
      Kahan re, im;
      for (std::size_t i = 0; i < n; ++i) {
        re.add(cs[i]);
        im.add(sn[i]);
      }
      s_re[ki] = re.value();
      s_im[ki] = im.value();
      out.energy.s2[ki] = s_re[ki] * s_re[ki] + s_im[ki] * s_im[ki];
      ++ki;
    }
  }

  // pass 2: energy and fractional-coordinate gradient
  Kahan acc;
  std::vector<Vec3> grad_f(n, Vec3{});
  {
    std::size_t ki = 0;
    for (const DualPoint& p : ball.points()) {
      if (!(p.row[0] == 0 && p.row[1] == 0 && p.row[2] == 0)) {
        acc.add(p.phi_hat * out.energy.s2[ki]);
        const double w = -kTwoPi * p.phi_hat / volume;
        const double* cs = ws.c.data() + ki * n;
        const double* sn = ws.s.data() + ki * n;
        for (std::size_t i = 0; i < n; ++i) {
          const double im_part = s_re[ki] * sn[i] - s_im[ki] * cs[i];
          const double f = w * im_part;
          for (int c = 0; c < dim; ++c) grad_f[i][c] += f * p.row[c];
        }
      }
      ++ki;
    }
  }
  out.energy.interaction_sum = acc.value() / (2.0 * volume);
  out.energy.total = out.energy.interaction_sum + out.energy.self_term;

  const Mat3 cinv_t = transpose(inverse(cell.cell_matrix(), dim));
  for (std::size_t i = 0; i < n; ++i)
    out.gradient[i] = apply(grad_f[i], cinv_t);
  return out;
}

GradientResult box_energy_gradient(const PairPotential& pot,
                                   const PeriodCell& cell,
                                   const std::vector<Vec3>& fracs) {
  const DualBall ball(cell.dual_matrix(), cell.basis.dim, pot.profile());
  return box_energy_gradient(pot, cell, ball, fracs);
}

MinimizationRun minimize(const PairPotential& pot, const PeriodCell& cell,
                         int n_particles, const MinimizeOptions& options) {
  if (n_particles < 1)
    throw Error(Errc::invalid_parameter, "need at least one particle");
  const int dim = cell.basis.dim;
  const double volume = cell.volume();
  const DualBall ball(cell.dual_matrix(), dim, pot.profile());

  MinimizationRun run;
  run.n = n_particles;
  run.seed = options.seed;

  Rng rng(options.seed, 0);
  std::vector<Vec3> fracs(n_particles);
  for (Vec3& f : fracs)
    for (int c = 0; c < dim; ++c) f[c] = rng.uniform();
  run.initial_positions = fracs;

  const double nn = static_cast<double>(n_particles);
  const double floor_energy =
      nn * (nn * pot.phi_hat_zero() - ball.phi_hat_sum()) / (2.0 * volume);
  run.floor = floor_energy;
  const double gap_scale = std::max(std::abs(floor_energy), 1e-300);

  auto gap_of = [&](const std::vector<Vec3>& f) {
    return box_energy(pot, cell, ball, f).interaction_sum;
  };

  // ---- annealing stage (incremental structure-factor updates) ----
  if (options.method == MinimizeMethod::anneal_descent && n_particles > 1) {
    std::vector<const DualPoint*> live;
    for (const DualPoint& p : ball.points())
      if (!(p.row[0] == 0 && p.row[1] == 0 && p.row[2] == 0))
        live.push_back(&p);
    const std::size_t nk = live.size();
    std::vector<double> s_re(nk, 0.0), s_im(nk, 0.0);
    auto phase = [&](const DualPoint& p, const Vec3& f) {
      const double t = p.row[0] * f[0] + p.row[1] * f[1] + p.row[2] * f[2];
      const double w = kTwoPi * (t - std::floor(t));
      return std::pair<double, double>(std::cos(w), std::sin(w));
    };
    auto recompute = [&]() {
      for (std::size_t k = 0; k < nk; ++k) {
        Kahan re, im;
        for (const Vec3& f : fracs) {
          auto [c, s] = phase(*live[k], f);
          re.add(c);
          im.add(s);
        }
        s_re[k] = re.value();
        s_im[k] = im.value();
      }
    };
    auto total_gap = [&]() {
      Kahan acc;
      for (std::size_t k = 0; k < nk; ++k)
        acc.add(live[k]->phi_hat * (s_re[k] * s_re[k] + s_im[k] * s_im[k]));
      return acc.value() / (2.0 * volume);
    };
    recompute();
    double gap = total_gap();
    double temperature = std::max(gap / nn, 1e-30);
    const double sigma = 0.5 * std::pow(volume / nn, 1.0 / dim);
    const Mat3 cinv = inverse(cell.cell_matrix(), dim);
    for (int sweep = 0; sweep < options.max_anneal_sweeps; ++sweep) {
      int accepted = 0;
      for (int m = 0; m < n_particles; ++m) {
        const int pick = static_cast<int>(rng.below(n_particles));
        Vec3 dr{};
        for (int c = 0; c < dim; ++c) dr[c] = sigma * rng.normal();
        Vec3 nf = fracs[pick] + apply(dr, cinv);
        wrap_fraction(nf, dim);
        // energy change from moving one particle
        double dgap = 0.0;
        std::vector<std::pair<double, double>> delta(nk);
        for (std::size_t k = 0; k < nk; ++k) {
          auto [co, so] = phase(*live[k], fracs[pick]);
          auto [cn, sn] = phase(*live[k], nf);
          const double nre = s_re[k] + cn - co;
          const double nim = s_im[k] + sn - so;
          delta[k] = {nre, nim};
          dgap += live[k]->phi_hat *
                  (nre * nre + nim * nim - s_re[k] * s_re[k] -
                   s_im[k] * s_im[k]);
        }
        dgap /= 2.0 * volume;
        if (dgap <= 0.0 || rng.uniform() < std::exp(-dgap / temperature)) {
          fracs[pick] = nf;
          for (std::size_t k = 0; k < nk; ++k) {
            s_re[k] = delta[k].first;
            s_im[k] = delta[k].second;
          }
          gap += dgap;
          ++accepted;
        }
      }
      run.energy_trajectory.push_back(floor_energy + std::max(gap, 0.0));
      ++run.anneal_sweeps;
      temperature *= options.anneal_cooling;
      if (accepted < options.anneal_min_acceptance * n_particles) break;
      if (sweep % 32 == 31) {
        recompute();  // refresh against incremental drift
        gap = total_gap();
      }
    }
  }

  // ---- descent stage: Barzilai-Borwein steps under an Armijo guard ----
  const double step0 = 0.1 * std::pow(volume / nn, 1.0 / dim);
  double step = step0;
  const Mat3 cinv = inverse(cell.cell_matrix(), dim);
  const double grad_floor = 1e-10 * pot.phi_hat_zero() * nn / volume;

  GradientResult g = box_energy_gradient(pot, cell, ball, fracs);
  double gap = g.energy.interaction_sum;
  std::vector<Vec3> prev_grad;
  std::vector<Vec3> last_move;  // cartesian displacement of the last step
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    run.energy_trajectory.push_back(g.energy.total);
    double gnorm2 = 0.0, gmax = 0.0;
    for (const Vec3& v : g.gradient) {
      gnorm2 += norm2(v);
      gmax = std::max(gmax, std::max(std::abs(v[0]),
                                     std::max(std::abs(v[1]), std::abs(v[2]))));
    }
    const double residual_now = [&] {
      double m = 0.0;
      std::size_t ki = 0;
      for (const DualPoint& p : ball.points()) {
        if (!(p.row[0] == 0 && p.row[1] == 0 && p.row[2] == 0))
          m = std::max(m, g.energy.s2[ki]);
        ++ki;
      }
      return m / (nn * nn);
    }();
    if ((gap <= options.gap_tolerance * gap_scale &&
         residual_now <= options.residual_tolerance) ||
        gmax < grad_floor) {
      run.converged = gap <= options.gap_tolerance * gap_scale &&
                      residual_now <= options.residual_tolerance;
      break;
    }
    // spectral (Barzilai-Borwein) trial step from the last displacement
    if (!prev_grad.empty()) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t i = 0; i < fracs.size(); ++i) {
        const Vec3 y = g.gradient[i] - prev_grad[i];
        sy += dot(last_move[i], y);
        yy += norm2(y);
      }
      if (sy > 0.0 && yy > 0.0) {
        const double bb = sy / yy;
        if (bb > 1e-6 * step0 && bb < 1e4 * step0) step = bb;
      }
    }
    // Armijo backtracking on U along -grad
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<Vec3> trial(fracs.size());
      for (std::size_t i = 0; i < fracs.size(); ++i) {
        const Vec3 dr = -step * g.gradient[i];
        trial[i] = fracs[i] + apply(dr, cinv);
        wrap_fraction(trial[i], dim);
      }
      const double trial_gap = gap_of(trial);
      if (trial_gap <= gap - 1e-4 * step * gnorm2) {
        last_move.assign(fracs.size(), Vec3{});
        for (std::size_t i = 0; i < fracs.size(); ++i)
          last_move[i] = -step * g.gradient[i];
        fracs = std::move(trial);
        gap = trial_gap;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // step underflow: stationary to machine precision
    prev_grad = g.gradient;
    g = box_energy_gradient(pot, cell, ball, fracs);
    gap = g.energy.interaction_sum;
  }
  run.iterations = iter;

  const BoxEnergy final_energy = box_energy(pot, cell, ball, fracs);
  run.positions = fracs;
  run.final_energy = final_energy.total;
  run.gap = final_energy.interaction_sum;
  double res = 0.0;
  std::size_t ki = 0;
  for (const DualPoint& p : ball.points()) {
    if (!(p.row[0] == 0 && p.row[1] == 0 && p.row[2] == 0))
      res = std::max(res, final_energy.s2[ki]);
    ++ki;
  }
  run.residual = res / (nn * nn);
  if (!run.converged)
    run.converged = run.gap <= options.gap_tolerance * gap_scale &&
                    run.residual <= options.residual_tolerance;
  return run;
}

}  // namespace bandlim
