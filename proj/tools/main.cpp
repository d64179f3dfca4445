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

// Command-line front end. Every subcommand reads profile/lattice specs
// (inline flags or JSON files), writes one <name>_summary.json plus CSV
// tables into --output-dir, and keeps all randomness behind --seed so
// reruns are byte-identical apart from the metadata timestamp block.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bandlim/energy.hpp"
#include "bandlim/error.hpp"
#include "bandlim/io.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/optimizer.hpp"
#include "bandlim/rng.hpp"
#include "bandlim/thermo.hpp"
#include "bandlim/verifier.hpp"

namespace fs = std::filesystem;
using namespace bandlim;

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

struct CommonOpts {
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--output-dir", c.output_dir, "directory for result files");
  cmd->add_option("--seed", c.seed, "random seed recorded in every output");
  cmd->add_option("--threads", c.threads, "worker thread count");
}

struct ProfileOpts {
  std::string file;
  std::string preset;
  double k0 = kTwoPi;
  int dim = 3;
  double epsilon = 0.0;
  int grid_points = 4096;
  double support_factor = 1.0;
};

void add_profile(CLI::App* cmd, ProfileOpts& p) {
  cmd->add_option("--profile", p.file, "profile JSON (canonical or build spec)");
  cmd->add_option("--preset", p.preset,
                  "triangle | longrange-example | mollified-flat | "
                  "mollified-bump");
  cmd->add_option("--k0", p.k0, "cutoff wave number for presets");
  cmd->add_option("--dim", p.dim, "dimension for presets");
  cmd->add_option("--epsilon", p.epsilon, "mollifier width (mollified-flat)");
  cmd->add_option("--grid-points", p.grid_points, "mollified sample count");
  cmd->add_option("--support-factor", p.support_factor,
                  "mollified-bump support edge as a fraction of K0");
}

SpectralProfile make_profile(const ProfileOpts& p) {
  if (!p.file.empty()) return profile_from_json(load_json_file(p.file));
  if (p.preset == "triangle") return SpectralProfile::triangle(p.k0);
  if (p.preset == "longrange-example") return longrange_example_3d(p.k0);
  if (p.preset == "mollified-flat") {
    const double eps = p.epsilon > 0.0 ? p.epsilon : 0.5 * p.k0;
    return build_mollified([](double) { return 1.0; }, eps, p.k0, p.dim,
                           p.grid_points);
  }
  if (p.preset == "mollified-bump")
    return mollified_bump_profile(p.k0, p.dim, p.grid_points,
                                  p.support_factor);
  if (p.preset.empty())
    throw Error(Errc::invalid_parameter,
                "need --profile <file> or --preset <name>");
  throw Error(Errc::invalid_parameter, "unknown preset: " + p.preset);
}

struct LatticeOpts {
  std::string file;
  std::string name;
  double scale = 1.0;
  double density = 0.0;
  double c_over_a = 0.0;
};

void add_lattice(CLI::App* cmd, LatticeOpts& l, const char* prefix = "") {
  const std::string p(prefix);
  cmd->add_option("--" + p + "lattice", l.file, "lattice JSON file");
  cmd->add_option("--" + p + "name", l.name,
                  "chain|square|triangular|sc|bcc|fcc|sh|hcp");
  cmd->add_option("--" + p + "scale", l.scale, "lattice constant");
  cmd->add_option("--" + p + "density", l.density,
                  "rescale to this density after construction");
  cmd->add_option("--" + p + "c-over-a", l.c_over_a, "axial ratio (sh, hcp)");
}

PeriodicConfiguration make_lattice(const LatticeOpts& l) {
  PeriodicConfiguration cfg;
  if (!l.file.empty()) {
    cfg = configuration_from_json(load_json_file(l.file));
  } else if (!l.name.empty()) {
    cfg = named_lattice(lattice_name_from_string(l.name), l.scale, l.c_over_a);
  } else {
    throw Error(Errc::invalid_parameter,
                "need --lattice <file> or --name <lattice>");
  }
  if (l.density > 0.0) cfg = scale_to_density(cfg, l.density);
  return cfg;
}

std::array<int, 3> parse_multipliers(const std::vector<int>& m) {
  std::array<int, 3> out{1, 1, 1};
  for (std::size_t i = 0; i < m.size() && i < 3; ++i) out[i] = m[i];
  return out;
}

void write_summary(const CommonOpts& c, const std::string& name, Json params,
                   Json results) {
  fs::create_directories(c.output_dir);
  Json j;
  j["command"] = name;
  params["seed"] = c.seed;
  params["threads"] = c.threads;
  j["parameters"] = params;
  j["results"] = std::move(results);
  Json meta;
  meta["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  meta["kernel_backend"] =
      kernels::backend_name(kernels::active_backend());
  j["metadata"] = meta;
  save_json_file((fs::path(c.output_dir) / (name + "_summary.json")).string(),
                 j);
}

std::string out_path(const CommonOpts& c, const std::string& file) {
  fs::create_directories(c.output_dir);
  return (fs::path(c.output_dir) / file).string();
}

std::vector<Vec3> load_positions_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_parameter, "cannot read " + path);
  std::vector<Vec3> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    Vec3 f{};
    std::string cell;
    for (int c = 0; c < 3 && std::getline(ss, cell, ','); ++c)
      f[c] = std::stod(cell);
    out.push_back(f);
  }
  return out;
}

int failures_to_exit(bool passed) { return passed ? 0 : 1; }

// ---------------------------------------------------------------------------

int cmd_potential_build(const CommonOpts& c, const ProfileOpts& p) {
  const SpectralProfile profile = make_profile(p);
  const PairPotential pot(profile);
  save_json_file(out_path(c, "profile.json"), profile_to_json(profile));
  Json res;
  res["phi_hat_zero"] = profile.phi_hat_zero();
  res["phi_zero"] = pot.phi_zero();
  res["kind"] = profile_kind_name(profile.kind());
  res["dimension"] = profile.dimension();
  res["cutoff"] = profile.cutoff();
  if (profile.dimension() == 3 && profile.polynomial()) {
    const auto a = pot.asymptotics();
    res["cos_amplitude"] = a.cos_amplitude;
    res["constant_term"] = a.constant_term;
  }
  write_summary(c, "potential_build", Json::object(), res);
  return 0;
}

int cmd_potential_eval(const CommonOpts& c, const ProfileOpts& p,
                       const std::vector<double>& rs,
                       const std::vector<double>& ks) {
  const PairPotential pot(make_profile(p));
  Json res;
  CsvWriter csv({"kind", "argument", "value"});
  Json rv = Json::array(), kv = Json::array();
  for (double r : rs) {
    const double v = pot(r);
    rv.push_back(Json{{"r", r}, {"phi", v}});
    csv.raw_row({"phi", format_double(r), format_double(v)});
  }
  for (double k : ks) {
    const double v = pot.profile()(k);
    kv.push_back(Json{{"k", k}, {"phi_hat", v}});
    csv.raw_row({"phi_hat", format_double(k), format_double(v)});
  }
  res["phi"] = rv;
  res["phi_hat"] = kv;
  res["phi_zero"] = pot.phi_zero();
  csv.save(out_path(c, "potential_eval.csv"));
  write_summary(c, "potential_eval", Json::object(), res);
  return 0;
}

int cmd_potential_tabulate(const CommonOpts& c, const ProfileOpts& p,
                           int points, double r_max) {
  const PairPotential pot(make_profile(p));
  const double k0 = pot.cutoff();
  if (r_max <= 0.0) r_max = 60.0 / k0;
  CsvWriter khat({"k", "phi_hat"});
  for (int i = 0; i < points; ++i) {
    const double k = 1.25 * k0 * i / (points - 1);
    khat.row({k, pot.profile()(k)});
  }
  khat.save(out_path(c, "phi_hat.csv"));
  CsvWriter phi({"r", "phi"});
  for (int i = 0; i < points; ++i) {
    const double r = r_max * i / (points - 1);
    phi.row({r, pot(r)});
  }
  phi.save(out_path(c, "phi.csv"));
  Json res;
  res["points"] = points;
  res["r_max"] = r_max;
  write_summary(c, "potential_tabulate",
                Json{{"points", points}, {"r_max", r_max}}, res);
  return 0;
}

int cmd_lattice_info(const CommonOpts& c, const LatticeOpts& l,
                     double shell_radius_factor) {
  const PeriodicConfiguration cfg = make_lattice(l);
  const ReciprocalBasis rec = reciprocal(cfg.basis);
  Json res = configuration_to_json(cfg);
  Json rgen = Json::array();
  for (int i = 0; i < cfg.basis.dim; ++i) {
    Json row = Json::array();
    for (int j = 0; j < cfg.basis.dim; ++j) row.push_back(rec.generators[i][j]);
    rgen.push_back(row);
  }
  res["reciprocal_generators"] = rgen;
  res["q_shortest"] = rec.shortest_norm;
  res["shortest_coeffs"] = rec.shortest_coeffs;
  res["offsets_minimal"] = offsets_minimal(cfg);

  const double radius = shell_radius_factor * rec.shortest_norm;
  const auto points = enumerate_in_ball(rec.generators, cfg.basis.dim, radius);
  CsvWriter csv({"k_norm", "multiplicity", "n1", "n2", "n3"});
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j < points.size() &&
           points[j].norm <= points[i].norm * (1.0 + 1e-12))
      ++j;
    csv.raw_row({format_double(points[i].norm), std::to_string(j - i),
                 std::to_string(points[i].coeffs[0]),
                 std::to_string(points[i].coeffs[1]),
                 std::to_string(points[i].coeffs[2])});
    i = j;
  }
  csv.save(out_path(c, "reciprocal_shells.csv"));
  write_summary(c, "lattice_info", Json::object(), res);
  return 0;
}

int cmd_lattice_thresholds(const CommonOpts& c, double k0) {
  CsvWriter csv({"lattice", "threshold_closed_form", "threshold_computed"});
  Json rows = Json::array();
  for (LatticeName n :
       {LatticeName::chain, LatticeName::square, LatticeName::triangular,
        LatticeName::sc, LatticeName::bcc, LatticeName::fcc, LatticeName::sh,
        LatticeName::hcp}) {
    const ThresholdDensity t = threshold_density(n, k0);
    csv.raw_row({lattice_name_string(n), format_double(t.closed_form),
                 format_double(t.computed)});
    rows.push_back(Json{{"lattice", lattice_name_string(n)},
                        {"closed_form", t.closed_form},
                        {"computed", t.computed}});
  }
  csv.save(out_path(c, "thresholds.csv"));
  Json res;
  res["k0"] = k0;
  res["table"] = rows;
  const double b = threshold_density(LatticeName::bcc, k0).closed_form;
  const double f = threshold_density(LatticeName::fcc, k0).closed_form;
  const double s = threshold_density(LatticeName::sc, k0).closed_form;
  res["ordering_bcc_fcc_sc"] = (b < f && f < s);
  write_summary(c, "lattice_thresholds", Json{{"k0", k0}}, res);
  return failures_to_exit(b < f && f < s);
}

int cmd_lattice_minimal_bravais(const CommonOpts& c, int dim, double k0,
                                int restarts) {
  const MinimalBravaisResult r = minimal_bravais_check(dim, k0, c.seed,
                                                       restarts);
  Json res;
  res["dim"] = dim;
  res["winner"] = lattice_name_string(r.name);
  res["density"] = r.density;
  res["closed_form"] = r.closed_form;
  res["q"] = r.q;
  write_summary(c, "lattice_minimal_bravais",
                Json{{"dim", dim}, {"k0", k0}, {"restarts", restarts}}, res);
  return 0;
}

int cmd_energy_density(const CommonOpts& c, const ProfileOpts& p,
                       const LatticeOpts& l) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  const EnergyReport rep = energy_density(pot, cfg);
  CsvWriter csv({"k_norm", "n1", "n2", "n3", "phi_hat", "s2", "contribution"});
  for (const ShellTerm& s : rep.shells)
    csv.raw_row({format_double(s.k_norm), std::to_string(s.row[0]),
                 std::to_string(s.row[1]), std::to_string(s.row[2]),
                 format_double(s.phi_hat), format_double(s.s2),
                 format_double(s.contribution)});
  csv.save(out_path(c, "energy_shells.csv"));
  write_summary(c, "energy_density", Json::object(),
                energy_report_to_json(rep));
  return 0;
}

int cmd_energy_box(const CommonOpts& c, const ProfileOpts& p,
                   const LatticeOpts& l, const std::vector<int>& mult,
                   const std::string& positions_file, int random_n) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  const std::array<int, 3> m = parse_multipliers(mult);
  PeriodCell cell{cfg.basis, m};
  std::vector<Vec3> fracs;
  if (!positions_file.empty()) {
    fracs = load_positions_csv(positions_file);
  } else if (random_n > 0) {
    Rng rng(c.seed, 0);
    fracs.resize(random_n);
    for (Vec3& f : fracs)
      for (int d = 0; d < cfg.basis.dim; ++d) f[d] = rng.uniform();
  } else {
    fracs = configuration_in_cell(cfg, m);
  }
  const BoxEnergy e = box_energy(pot, cell, fracs);
  Json res;
  res["n"] = e.n_points;
  res["total"] = e.total;
  res["interaction_sum"] = e.interaction_sum;
  res["self_term"] = e.self_term;
  res["floor"] = e.floor;
  res["volume"] = cell.volume();
  write_summary(c, "energy_box", Json{{"multipliers", m}}, res);
  return 0;
}

int cmd_energy_field(const CommonOpts& c, const ProfileOpts& p,
                     const LatticeOpts& l, int points) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  Rng rng(c.seed, 0);
  CsvWriter csv({"x", "y", "z", "value", "deviation"});
  double max_dev = 0.0;
  for (int i = 0; i < points; ++i) {
    Vec3 fr{};
    for (int d = 0; d < cfg.basis.dim; ++d) fr[d] = rng.uniform(-1.0, 2.0);
    const Vec3 r = apply(fr, cfg.basis.generators);
    const FieldSample f = external_field(pot, cfg, r);
    csv.row({r[0], r[1], r[2], f.value, f.deviation});
    max_dev = std::max(max_dev, std::abs(f.deviation));
  }
  csv.save(out_path(c, "field_samples.csv"));
  Json res;
  res["points"] = points;
  res["expected"] = cfg.density() * pot.phi_hat_zero();
  res["max_abs_deviation"] = max_dev;
  const double q = reciprocal(cfg.basis).shortest_norm;
  res["admissible"] = q >= pot.cutoff() * (1.0 - 1e-12);
  write_summary(c, "energy_field", Json{{"points", points}}, res);
  return 0;
}

int cmd_energy_oracle(const CommonOpts& c, const ProfileOpts& p,
                      const LatticeOpts& l, double cutoff,
                      double window_inner) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  if (cutoff <= 0.0) cutoff = 40.0 / pot.cutoff();
  const RadialInterpolant table(pot, cutoff * 1.02);
  const OracleResult oracle =
      realspace_energy_density(pot, cfg, cutoff, &table, 0.0, window_inner);
  const EnergyReport recip = energy_density(pot, cfg);
  Json res;
  res["cutoff"] = cutoff;
  res["realspace_energy_density"] = oracle.energy_density;
  res["reciprocal_energy_density"] = recip.energy_density;
  res["difference"] = oracle.energy_density - recip.energy_density;
  res["truncated_sum"] = oracle.truncated_sum;
  res["continuum_tail"] = oracle.continuum_tail;
  res["tail_bound"] = oracle.tail_bound;
  res["pair_terms"] = oracle.pair_terms;
  const bool ok = std::abs(oracle.energy_density - recip.energy_density) <=
                  oracle.tail_bound +
                      1e-6 * std::abs(recip.energy_density) + 1e-300;
  res["within_bound"] = ok;
  write_summary(c, "energy_oracle", Json{{"cutoff", cutoff}}, res);
  return failures_to_exit(ok);
}

int cmd_verify_perturb(const CommonOpts& c, const ProfileOpts& p,
                       const LatticeOpts& l, const std::vector<int>& mult,
                       const std::string& mode, double mu, int trials,
                       bool mu_from_density) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  PerturbationOptions opt;
  opt.mode = (mode == "grand") ? EnsembleMode::grand : EnsembleMode::canonical;
  opt.trials = trials;
  opt.seed = c.seed;
  opt.threads = c.threads;
  if (opt.mode == EnsembleMode::grand && mu_from_density)
    mu = mu_of_density(cfg.density(), pot.phi_hat_zero(), pot.phi_zero());
  opt.mu = mu;
  const PerturbationResult res =
      perturbation_test(pot, cfg, parse_multipliers(mult), opt);

  // JSON-lines trial log: one record per line
  {
    std::ofstream out(out_path(c, "perturb_trials.jsonl"));
    for (const TrialRecord& r : res.log) {
      Json line;
      line["index"] = r.index;
      line["kind"] = trial_kind_name(r.kind);
      line["delta_n"] = r.delta_n;
      line["delta"] = r.delta;
      out << line.dump() << '\n';
    }
  }
  CsvWriter csv({"index", "kind", "delta_n", "delta"});
  for (const TrialRecord& r : res.log)
    csv.raw_row({std::to_string(r.index), trial_kind_name(r.kind),
                 std::to_string(r.delta_n), format_double(r.delta)});
  csv.save(out_path(c, "perturb_trials.csv"));

  Json out;
  out["mode"] = mode;
  out["mu"] = mu;
  out["n_reference"] = res.n_reference;
  out["worst_delta"] = res.worst_delta;
  out["worst_kind"] = trial_kind_name(res.worst_trial.kind);
  out["tolerance_floor"] = res.tolerance_floor;
  out["violations"] = res.violations;
  out["passed"] = (res.violations == 0);
  write_summary(c, "verify_perturb",
                Json{{"trials", trials}, {"mode", mode}, {"mu", mu}}, out);
  return failures_to_exit(res.violations == 0);
}

int cmd_verify_deform(const CommonOpts& c, const ProfileOpts& p,
                      const LatticeOpts& l, int samples, double step) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  const DeformationScan scan = deformation_scan(pot, cfg, samples, step, c.seed);
  CsvWriter csv({"q", "admissible", "energy_density", "plateau_deviation"});
  for (const DeformationSample& s : scan.samples)
    csv.raw_row({format_double(s.q), s.admissible ? "1" : "0",
                 format_double(s.energy_density),
                 format_double(s.plateau_deviation)});
  csv.save(out_path(c, "deform_samples.csv"));
  const bool passed =
      scan.max_admissible_deviation <= 1e-12 * std::abs(scan.plateau) &&
      scan.admissible_count > 0;
  Json res;
  res["plateau"] = scan.plateau;
  res["admissible_count"] = scan.admissible_count;
  res["max_admissible_deviation"] = scan.max_admissible_deviation;
  res["min_inadmissible_excess"] = scan.min_inadmissible_excess;
  res["passed"] = passed;
  write_summary(c, "verify_deform",
                Json{{"samples", samples}, {"step", step}}, res);
  return failures_to_exit(passed);
}

int cmd_verify_threshold_unique(const CommonOpts& c, const ProfileOpts& p,
                                int random_bravais, int random_two_point) {
  const PairPotential pot(make_profile(p));
  const int dim = pot.dimension();
  const auto set =
      default_competitors(dim, random_bravais, random_two_point, c.seed);
  const UniquenessReport rep = uniqueness_at_threshold(pot, dim, set);
  CsvWriter csv({"label", "q", "energy", "gap"});
  for (const UniquenessEntry& e : rep.entries)
    csv.raw_row({e.label, format_double(e.q), format_double(e.energy),
                 format_double(e.gap)});
  csv.save(out_path(c, "uniqueness.csv"));
  const bool passed =
      rep.min_gap > 1e-6 * std::abs(rep.reference_energy);
  Json res;
  res["threshold_density"] = rep.threshold_density;
  res["reference_energy"] = rep.reference_energy;
  res["min_gap"] = rep.min_gap;
  res["competitors"] = rep.entries.size();
  res["passed"] = passed;
  write_summary(c, "verify_threshold_unique",
                Json{{"dim", dim},
                     {"random_bravais", random_bravais},
                     {"random_two_point", random_two_point}},
                res);
  return failures_to_exit(passed);
}

int cmd_verify_global_min(const CommonOpts& c, const ProfileOpts& p,
                          const LatticeOpts& lx, const LatticeOpts& ly,
                          std::vector<double> windows, double cutoff) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration x = make_lattice(lx);
  PeriodicConfiguration y = make_lattice(ly);
  y = scale_to_density(y, x.density());
  if (windows.empty()) windows = {6.0, 9.0, 12.0};
  if (cutoff <= 0.0) cutoff = 40.0 / pot.cutoff();
  const GlobalMinReport rep =
      global_minimality_check(pot, x, y, windows, cutoff);
  CsvWriter csv({"window", "n_points", "u_reference", "u_competitor",
                 "gap_per_volume", "tail_bound"});
  for (const WindowGap& w : rep.windows)
    csv.row({w.window_side, static_cast<double>(w.n_points), w.u_reference,
             w.u_competitor, w.gap_per_volume, w.tail_bound});
  csv.save(out_path(c, "global_min_windows.csv"));
  Json res;
  res["predicted_gap_per_volume"] = rep.predicted_gap_per_volume;
  res["fitted_gap_per_volume"] = rep.fitted_gap_per_volume;
  const double denom = std::max(std::abs(rep.predicted_gap_per_volume), 1e-300);
  const bool passed =
      rep.predicted_gap_per_volume == 0.0
          ? std::abs(rep.fitted_gap_per_volume) <=
                rep.windows.back().tail_bound
          : std::abs(rep.fitted_gap_per_volume -
                     rep.predicted_gap_per_volume) <= 0.1 * denom;
  res["passed"] = passed;
  write_summary(c, "verify_global_min",
                Json{{"windows", windows}, {"cutoff", cutoff}}, res);
  return failures_to_exit(passed);
}

int cmd_verify_union(const CommonOpts& c, const ProfileOpts& p,
                     const std::vector<std::string>& lattice_files,
                     double window, double mu, int field_points, int trials,
                     bool mu_from_density) {
  const PairPotential pot(make_profile(p));
  std::vector<PeriodicConfiguration> parts;
  double rho = 0.0;
  for (const std::string& f : lattice_files) {
    parts.push_back(configuration_from_json(load_json_file(f)));
    rho += parts.back().density();
  }
  if (mu_from_density)
    mu = mu_of_density(rho, pot.phi_hat_zero(), pot.phi_zero());
  const UnionReport rep = union_window_check(pot, parts, window, mu,
                                             field_points, trials, c.seed);
  const bool passed =
      rep.max_field_deviation <=
          rep.field_tail_bound + 1e-9 * std::abs(rep.expected_field) &&
      rep.worst_delta >= -rep.delta_tail_bound;
  Json res;
  res["expected_field"] = rep.expected_field;
  res["max_field_deviation"] = rep.max_field_deviation;
  res["field_tail_bound"] = rep.field_tail_bound;
  res["worst_delta"] = rep.worst_delta;
  res["delta_tail_bound"] = rep.delta_tail_bound;
  res["passed"] = passed;
  write_summary(c, "verify_union",
                Json{{"window", window},
                     {"mu", mu},
                     {"field_points", field_points},
                     {"trials", trials}},
                res);
  return failures_to_exit(passed);
}

int cmd_optimize_run(const CommonOpts& c, const ProfileOpts& p,
                     const LatticeOpts& l, const std::vector<int>& mult,
                     int n, const std::string& method) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  const std::array<int, 3> m = parse_multipliers(mult);
  PeriodCell cell{cfg.basis, m};
  if (n <= 0) n = cell.points_per_cell() * cfg.point_count();
  MinimizeOptions opt;
  opt.seed = c.seed;
  opt.method = (method == "descent") ? MinimizeMethod::descent
                                     : MinimizeMethod::anneal_descent;
  const MinimizationRun run = minimize(pot, cell, n, opt);

  CsvWriter pos({"f1", "f2", "f3"});
  for (const Vec3& f : run.positions) pos.row({f[0], f[1], f[2]});
  pos.save(out_path(c, "optimize_positions.csv"));
  CsvWriter traj({"iteration", "energy"});
  for (std::size_t i = 0; i < run.energy_trajectory.size(); ++i)
    traj.row({static_cast<double>(i), run.energy_trajectory[i]});
  traj.save(out_path(c, "optimize_trajectory.csv"));

  Json res;
  res["seed"] = run.seed;
  res["n"] = run.n;
  res["final_energy"] = run.final_energy;
  res["floor"] = run.floor;
  res["gap"] = run.gap;
  res["residual"] = run.residual;
  res["iterations"] = run.iterations;
  res["anneal_sweeps"] = run.anneal_sweeps;
  res["converged"] = run.converged;
  write_summary(c, "optimize_run",
                Json{{"n", n}, {"method", method}, {"multipliers", m}}, res);
  return 0;
}

int cmd_optimize_sfmap(const CommonOpts& c, const ProfileOpts& p,
                       const LatticeOpts& l, const std::vector<int>& mult,
                       const std::string& positions_file) {
  const PairPotential pot(make_profile(p));
  const PeriodicConfiguration cfg = make_lattice(l);
  const std::array<int, 3> m = parse_multipliers(mult);
  PeriodCell cell{cfg.basis, m};
  const std::vector<Vec3> fracs = positions_file.empty()
                                      ? configuration_in_cell(cfg, m)
                                      : load_positions_csv(positions_file);
  const auto map = structure_factor_map(cell, fracs, pot.cutoff());
  CsvWriter csv({"k_norm", "n1", "n2", "n3", "s2"});
  for (const SfEntry& e : map)
    csv.raw_row({format_double(e.k_norm), std::to_string(e.row[0]),
                 std::to_string(e.row[1]), std::to_string(e.row[2]),
                 format_double(e.s2)});
  csv.save(out_path(c, "structure_factor.csv"));
  Json res;
  res["n"] = fracs.size();
  res["k_points"] = map.size();
  double max_nonzero = 0.0;
  for (const SfEntry& e : map)
    if (!(e.row[0] == 0 && e.row[1] == 0 && e.row[2] == 0))
      max_nonzero = std::max(max_nonzero, e.s2);
  res["max_offzero_s2"] = max_nonzero;
  write_summary(c, "optimize_sfmap", Json{{"multipliers", m}}, res);
  return 0;
}

int cmd_thermo_legendre(const CommonOpts& c, const ProfileOpts& p, double rho,
                        int grid) {
  const PairPotential pot(make_profile(p));
  const LegendreReport rep = legendre_check(pot, rho, grid);
  Json res;
  res["rho"] = rep.rho;
  res["mu_star_analytic"] = rep.mu_star_analytic;
  res["mu_star_grid"] = rep.mu_star_grid;
  res["e_rho_closed"] = rep.e_rho_closed;
  res["e_rho_from_transform"] = rep.e_rho_from_transform;
  res["e_mu_closed"] = rep.e_mu_closed;
  res["e_mu_from_transform"] = rep.e_mu_from_transform;
  res["max_rel_error"] = rep.max_rel_error;
  res["phi_zero"] = pot.phi_zero();
  res["phi_hat_zero"] = pot.phi_hat_zero();
  write_summary(c, "thermo_legendre", Json{{"rho", rho}, {"grid", grid}}, res);
  return failures_to_exit(rep.max_rel_error < 1e-6);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band-limited pair potentials: lattice energies, ground-state "
               "verification and exploration"};
  app.require_subcommand(1);

  CommonOpts common;
  ProfileOpts prof;
  LatticeOpts lat, lat_y;
  std::vector<int> multipliers{2, 2, 2};
  std::vector<double> r_values, k_values;
  std::vector<double> windows;
  std::vector<std::string> lattice_files;
  std::string mode = "canonical", method = "anneal-descent";
  std::string positions_file;
  double mu = 0.0, rho = 0.0, cutoff = 0.0, k0 = kTwoPi;
  double step = 0.02, window = 8.0, shell_factor = 2.5;
  int trials = 10000, samples = 200, points = 512, n_particles = 0;
  int dim = 3, restarts = 64, random_bravais = 20, random_two_point = 5;
  int grid = 4001, field_points = 64, random_n = 0;
  double r_max = 0.0;
  bool mu_from_density = false;

  int backend_requested = -1;
  app.add_option("--kernel-backend", backend_requested,
                 "0 = scalar, 1 = avx2 (default: auto)");

  // potential ---------------------------------------------------------------
  auto* potential = app.add_subcommand("potential", "spectral profiles");
  auto* pb = potential->add_subcommand("build", "construct and store a profile");
  add_common(pb, common);
  add_profile(pb, prof);
  auto* pe = potential->add_subcommand("eval", "evaluate phi and phi_hat");
  add_common(pe, common);
  add_profile(pe, prof);
  pe->add_option("--r", r_values, "distances");
  pe->add_option("--k", k_values, "wave numbers");
  auto* pt = potential->add_subcommand("tabulate", "CSV tables of the pair");
  add_common(pt, common);
  add_profile(pt, prof);
  pt->add_option("--points", points, "rows per table");
  pt->add_option("--r-max", r_max, "largest tabulated distance");

  // lattice -----------------------------------------------------------------
  auto* lattice = app.add_subcommand("lattice", "Bravais lattice machinery");
  auto* li = lattice->add_subcommand("info", "basis, reciprocal, shells");
  add_common(li, common);
  add_lattice(li, lat);
  li->add_option("--shell-radius-factor", shell_factor,
                 "shell table reach in units of q");
  auto* lt = lattice->add_subcommand("thresholds", "threshold density table");
  add_common(lt, common);
  lt->add_option("--k0", k0, "cutoff wave number");
  auto* lm = lattice->add_subcommand("minimal-bravais",
                                     "search the minimal constrained lattice");
  add_common(lm, common);
  lm->add_option("--dim", dim, "dimension");
  lm->add_option("--k0", k0, "cutoff wave number");
  lm->add_option("--restarts", restarts, "multistart count");

  // energy ------------------------------------------------------------------
  auto* energy = app.add_subcommand("energy", "reciprocal-space energies");
  auto* ed = energy->add_subcommand("density", "energy density of a configuration");
  add_common(ed, common);
  add_profile(ed, prof);
  add_lattice(ed, lat);
  auto* eb = energy->add_subcommand("box", "periodized cell energy");
  add_common(eb, common);
  add_profile(eb, prof);
  add_lattice(eb, lat);
  eb->add_option("--multipliers", multipliers, "cell multipliers L1 L2 L3");
  eb->add_option("--positions", positions_file, "fractional positions CSV");
  eb->add_option("--random-n", random_n, "use N random positions");
  auto* ef = energy->add_subcommand("field", "external field on test points");
  add_common(ef, common);
  add_profile(ef, prof);
  add_lattice(ef, lat);
  ef->add_option("--points", field_points, "number of test points");
  auto* eo = energy->add_subcommand("oracle", "real-space cross-check");
  add_common(eo, common);
  add_profile(eo, prof);
  add_lattice(eo, lat);
  eo->add_option("--cutoff", cutoff, "real-space truncation radius");
  double window_inner = 0.5;
  eo->add_option("--window-inner-fraction", window_inner,
                 "where the truncation window starts tapering");

  // verify --------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "ground-state property tests");
  auto* vp = verify->add_subcommand("perturb", "random perturbation suite");
  add_common(vp, common);
  add_profile(vp, prof);
  add_lattice(vp, lat);
  vp->add_option("--multipliers", multipliers, "cell multipliers");
  vp->add_option("--mode", mode, "canonical | grand");
  vp->add_option("--mu", mu, "chemical potential (grand)");
  vp->add_flag("--mu-from-density", mu_from_density,
               "derive mu from the configuration density");
  vp->add_option("--trials", trials, "trial count");
  auto* vd = verify->add_subcommand("deform", "volume-preserving deformations");
  add_common(vd, common);
  add_profile(vd, prof);
  add_lattice(vd, lat);
  vd->add_option("--samples", samples, "walk length");
  vd->add_option("--step", step, "walk step scale");
  auto* vt = verify->add_subcommand("threshold-unique",
                                    "uniqueness at the threshold density");
  add_common(vt, common);
  add_profile(vt, prof);
  vt->add_option("--random-bravais", random_bravais, "random lattice count");
  vt->add_option("--random-two-point", random_two_point,
                 "random J=2 configuration count");
  auto* vg = verify->add_subcommand("global-min", "window energy comparison");
  add_common(vg, common);
  add_profile(vg, prof);
  add_lattice(vg, lat);
  add_lattice(vg, lat_y, "competitor-");
  vg->add_option("--windows", windows, "window side lengths");
  vg->add_option("--cutoff", cutoff, "real-space truncation radius");
  auto* vu = verify->add_subcommand("union", "union-of-GSC window checks");
  add_common(vu, common);
  add_profile(vu, prof);
  vu->add_option("--lattice", lattice_files, "lattice JSON files (repeat)")
      ->required();
  vu->add_option("--window", window, "window side length");
  vu->add_option("--mu", mu, "chemical potential");
  vu->add_flag("--mu-from-density", mu_from_density,
               "derive mu from the union density");
  vu->add_option("--field-points", field_points, "field sample count");
  vu->add_option("--trials", trials, "perturbation trials");

  // optimize ------------------------------------------------------------
  auto* optimize = app.add_subcommand("optimize", "periodized-energy minimization");
  auto* orun = optimize->add_subcommand("run", "minimize U over positions");
  add_common(orun, common);
  add_profile(orun, prof);
  add_lattice(orun, lat);
  orun->add_option("--multipliers", multipliers, "cell multipliers");
  orun->add_option("-n,--particles", n_particles,
                   "particle count (default: lattice points in the cell)");
  orun->add_option("--method", method, "descent | anneal-descent");
  auto* osf = optimize->add_subcommand("sfmap", "structure-factor table");
  add_common(osf, common);
  add_profile(osf, prof);
  add_lattice(osf, lat);
  osf->add_option("--multipliers", multipliers, "cell multipliers");
  osf->add_option("--positions", positions_file, "fractional positions CSV");

  // thermo --------------------------------------------------------------
  auto* thermo = app.add_subcommand("thermo", "ground-state thermodynamics");
  auto* tl = thermo->add_subcommand("legendre", "transform-pair check");
  add_common(tl, common);
  add_profile(tl, prof);
  tl->add_option("--rho", rho, "density")->required();
  tl->add_option("--grid", grid, "grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (backend_requested >= 0)
      kernels::set_backend(static_cast<kernels::Backend>(backend_requested));
    if (pb->parsed()) return cmd_potential_build(common, prof);
    if (pe->parsed()) return cmd_potential_eval(common, prof, r_values, k_values);
    if (pt->parsed()) return cmd_potential_tabulate(common, prof, points, r_max);
    if (li->parsed()) return cmd_lattice_info(common, lat, shell_factor);
    if (lt->parsed()) return cmd_lattice_thresholds(common, k0);
    if (lm->parsed())
      return cmd_lattice_minimal_bravais(common, dim, k0, restarts);
    if (ed->parsed()) return cmd_energy_density(common, prof, lat);
    if (eb->parsed())
      return cmd_energy_box(common, prof, lat, multipliers, positions_file,
                            random_n);
    if (ef->parsed()) return cmd_energy_field(common, prof, lat, field_points);
    if (eo->parsed())
      return cmd_energy_oracle(common, prof, lat, cutoff, window_inner);
    if (vp->parsed())
      return cmd_verify_perturb(common, prof, lat, multipliers, mode, mu,
                                trials, mu_from_density);
    if (vd->parsed()) return cmd_verify_deform(common, prof, lat, samples, step);
    if (vt->parsed())
      return cmd_verify_threshold_unique(common, prof, random_bravais,
                                         random_two_point);
    if (vg->parsed())
      return cmd_verify_global_min(common, prof, lat, lat_y, windows, cutoff);
    if (vu->parsed())
      return cmd_verify_union(common, prof, lattice_files, window, mu,
                              field_points, trials, mu_from_density);
    if (orun->parsed())
      return cmd_optimize_run(common, prof, lat, multipliers, n_particles,
                              method);
    if (osf->parsed())
      return cmd_optimize_sfmap(common, prof, lat, multipliers, positions_file);
    if (tl->parsed()) return cmd_thermo_legendre(common, prof, rho, grid);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::invalid_parameter:
      case Errc::invalid_profile:
      case Errc::unknown_lattice:
      case Errc::unsupported:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
