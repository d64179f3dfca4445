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

#include "bandlim/io.hpp"

#include <charconv>
#include <fstream>

#include "bandlim/error.hpp"

namespace bandlim {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json profile_to_json(const SpectralProfile& profile) {
  Json j;
  j["dimension"] = profile.dimension();
  j["cutoff"] = profile.cutoff();
  j["kind"] = profile_kind_name(profile.kind());
  switch (profile.kind()) {
    case ProfileKind::polynomial:
      j["coefficients"] = *profile.polynomial();
      break;
    case ProfileKind::piecewise: {
      // reconstruct by sampling is lossy; piecewise profiles are stored by
      // evaluating on a fine grid instead
      const int n = 4096;
      std::vector<double> samples(n);
      for (int i = 0; i < n; ++i)
        samples[i] = profile(profile.cutoff() * i / (n - 1));
      j["kind"] = profile_kind_name(ProfileKind::tabulated);
      j["samples"] = samples;
      break;
    }
    case ProfileKind::tabulated:
      j["samples"] = profile.samples();
      break;
    case ProfileKind::mollified:
      j["samples"] = profile.samples();
      j["epsilon"] = profile.mollifier_width();
      break;
  }
  j["phi_hat_zero"] = profile.phi_hat_zero();
  return j;
}

SpectralProfile profile_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double k0 = j.value("cutoff", 0.0);
  const int dim = j.value("dimension", 3);
  if (kind == "triangle") return SpectralProfile::triangle(k0);
  if (kind == "longrange")
    return build_longrange_3d(j.at("coefficients").get<Poly>(), k0);
  if (kind == "longrange-example") return longrange_example_3d(k0);
  if (kind == "polynomial")
    return SpectralProfile::make_polynomial(
        dim, k0, j.at("coefficients").get<Poly>());
  if (kind == "piecewise") {
    std::vector<double> breaks = j.at("breaks").get<std::vector<double>>();
    std::vector<Poly> pieces;
    for (const Json& p : j.at("pieces")) pieces.push_back(p.get<Poly>());
    return SpectralProfile::make_piecewise(dim, k0, std::move(breaks),
                                           std::move(pieces));
  }
  if (kind == "tabulated")
    return SpectralProfile::make_tabulated(
        dim, k0, j.at("samples").get<std::vector<double>>());
  if (kind == "mollified") {
    if (j.contains("samples"))  // canonical reload: keep the stored samples
      return SpectralProfile::make_mollified_samples(
          dim, k0, j.value("epsilon", 0.0),
          j.at("samples").get<std::vector<double>>());
    const double eps = j.at("epsilon").get<double>();
    const int grid = j.value("grid_points", 4096);
    if (!j.contains("base") || j.at("base") == "flat")
      return build_mollified([](double) { return 1.0; }, eps, k0, dim, grid);
    const Poly g = j.at("base").at("coefficients").get<Poly>();
    return build_mollified([g](double s) { return poly_eval(g, s); }, eps, k0,
                           dim, grid);
  }
  throw Error(Errc::invalid_parameter, "unknown profile kind: " + kind);
}

Json configuration_to_json(const PeriodicConfiguration& config) {
  Json j;
  j["dimension"] = config.basis.dim;
  Json gens = Json::array();
  for (int i = 0; i < config.basis.dim; ++i) {
    Json row = Json::array();
    for (int c = 0; c < config.basis.dim; ++c)
      row.push_back(config.basis.generators[i][c]);
    gens.push_back(row);
  }
  j["generators"] = gens;
  Json offs = Json::array();
  for (std::size_t i = 0; i < config.offsets.size(); ++i) {
    const Vec3 y = config.offset_cartesian(i);
    Json row = Json::array();
    for (int c = 0; c < config.basis.dim; ++c) row.push_back(y[c]);
    offs.push_back(row);
  }
  j["offsets"] = offs;
  j["density"] = config.density();
  return j;
}

PeriodicConfiguration configuration_from_json(const Json& j) {
  PeriodicConfiguration cfg;
  if (j.contains("name")) {
    const LatticeName name =
        lattice_name_from_string(j.at("name").get<std::string>());
    const double scale = j.value("scale", 1.0);
    const double c_over_a = j.value("c_over_a", 0.0);
    cfg = named_lattice(name, scale, c_over_a);
  } else {
    const int dim = j.at("dimension").get<int>();
    if (dim < 1 || dim > 3)
      throw Error(Errc::invalid_parameter, "dimension must be 1, 2 or 3");
    LatticeBasis basis;
    basis.dim = dim;
    basis.generators = Mat3::identity();
    const Json& gens = j.at("generators");
    if (static_cast<int>(gens.size()) != dim)
      throw Error(Errc::invalid_parameter, "need one generator per dimension");
    for (int i = 0; i < dim; ++i)
      for (int c = 0; c < dim; ++c)
        basis.generators[i][c] = gens.at(i).at(c).get<double>();
    std::vector<Vec3> offsets{Vec3{}};
    if (j.contains("offsets")) {
      offsets.clear();
      for (const Json& row : j.at("offsets")) {
        Vec3 y{};
        for (int c = 0; c < dim; ++c) y[c] = row.at(c).get<double>();
        offsets.push_back(y);
      }
    }
    cfg = make_configuration(basis, offsets);
  }
  if (j.contains("density"))
    cfg = scale_to_density(cfg, j.at("density").get<double>());
  return cfg;
}

Json energy_report_to_json(const EnergyReport& report) {
  Json j;
  j["density"] = report.density;
  j["sublattice_density"] = report.sublattice_density;
  j["energy_density"] = report.energy_density;
  j["k0_term"] = report.k0_term;
  j["phi0_term"] = report.phi0_term;
  j["plateau"] = report.plateau();
  Json shells = Json::array();
  for (const ShellTerm& s : report.shells) {
    Json row;
    row["k_norm"] = s.k_norm;
    row["row"] = s.row;
    row["phi_hat"] = s.phi_hat;
    row["s2"] = s.s2;
    row["contribution"] = s.contribution;
    shells.push_back(row);
  }
  j["shells"] = shells;
  return j;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw Error(Errc::invalid_parameter, "csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw Error(Errc::invalid_parameter, "csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out)
    throw Error(Errc::invalid_parameter, "cannot write file: " + path);
  out << text_;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_parameter, "cannot read file: " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out)
    throw Error(Errc::invalid_parameter, "cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace bandlim
