/*
 * Copyright 2026 The hnsf Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hnsf/harness/config.hpp"

#include "hnsf/errors.hpp"
#include "hnsf/random.hpp"
#include "hnsf/snapshot.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hnsf::harness {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& field) {
  T value{};
  const std::string s = trim(text);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(field, "cannot parse '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(field, "expected true or false (got '" + text + "')");
}

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

template <class T>
std::string join(const std::vector<T>& v, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::smooth: return "smooth";
    case InitialKind::single_mode: return "single_mode";
    case InitialKind::zero: return "zero";
    case InitialKind::file: return "file";
  }
  return "?";
}

InitialKind initial_kind_from_string(const std::string& s) {
  if (s == "smooth") return InitialKind::smooth;
  if (s == "single_mode") return InitialKind::single_mode;
  if (s == "zero") return InitialKind::zero;
  if (s == "file") return InitialKind::file;
  throw ConfigError("initial.kind", "expected smooth, single_mode, zero or file (got '" + s + "')");
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"solver",
       {"nu", "alpha", "gamma", "dt", "T", "seed", "mode", "theta_track", "override_regularity", "blowup_factor",
        "snapshot_every", "noise_dt"}},
      {"torus", {"period", "trunc_n", "grid_n"}},
      {"initial", {"kind", "seed", "radius", "amplitude", "wavevector", "direction", "path"}},
      {"convergence", {"levels", "dt_halvings", "max_modes"}},
      {"uniqueness", {"epsilons", "perturbation_seed"}},
      {"ou", {"ensemble", "theta"}},
      {"inequalities", {"ids", "trials"}},
      {"sweep", {"alphas", "s_levels", "levels", "ensemble"}},
      {"output", {"noise_dump"}},
  };
  return keys;
}

/// Typed accessor that remembers which field it is reading.
class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <class F>
  void read(const std::string& field, F&& apply) const {
    const auto node = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'));
    if (node) apply(*node, field);
  }

 private:
  const pt::ptree& tree_;
};

template <int N, class Scalar>
Eigen::Matrix<Scalar, N, 1> parse_vector(const std::string& text, const std::string& field) {
  const auto items = split_list(text);
  if (items.size() != N) throw ConfigError(field, "expected " + std::to_string(N) + " comma-separated values");
  Eigen::Matrix<Scalar, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = parse_number<Scalar>(items[static_cast<std::size_t>(i)], field);
  return v;
}

template <class T>
std::vector<T> parse_number_list(const std::string& text, const std::string& field) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<T>(item, field));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", std::string("malformed INI: ") + e.message() + " at line " +
                                    std::to_string(e.line()));
  }
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError(section, "key outside any section");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }

  RunConfig c;
  const Reader r(tree);
  SolverConfig& s = c.solver;
  auto num = [](auto& target) {
    return [&target](const std::string& v, const std::string& f) {
      target = parse_number<std::remove_reference_t<decltype(target)>>(v, f);
    };
  };
  r.read("solver.nu", num(s.nu));
  r.read("solver.alpha", num(s.alpha));
  r.read("solver.gamma", num(s.gamma));
  r.read("solver.dt", num(s.dt));
  r.read("solver.T", num(s.T));
  r.read("solver.seed", num(s.seed));
  r.read("solver.mode", [&](const std::string& v, const std::string& f) {
    try {
      s.mode = solver_mode_from_string(trim(v));
    } catch (const ConfigError& e) {
      throw ConfigError(f, e.what());
    }
  });
  r.read("solver.theta_track", [&](const std::string& v, const std::string& f) { s.theta_track = parse_number_list<double>(v, f); });
  r.read("solver.override_regularity", [&](const std::string& v, const std::string& f) { s.override_regularity = parse_bool(v, f); });
  r.read("solver.blowup_factor", num(s.blowup_factor));
  r.read("solver.snapshot_every", num(s.snapshot_every));
  r.read("solver.noise_dt", num(s.noise_dt));

  double period = s.torus.period;
  int trunc_n = s.torus.trunc_n;
  int grid_n = 0;
  r.read("torus.period", num(period));
  r.read("torus.trunc_n", num(trunc_n));
  r.read("torus.grid_n", num(grid_n));
  try {
    s.torus = make_torus(period, trunc_n, grid_n);
  } catch (const ConfigError& e) {
    throw ConfigError("torus." + e.field(), e.what());
  }

  InitialConfig& ic = c.initial;
  r.read("initial.kind", [&](const std::string& v, const std::string&) { ic.kind = initial_kind_from_string(trim(v)); });
  r.read("initial.seed", num(ic.seed));
  r.read("initial.radius", num(ic.radius));
  r.read("initial.amplitude", num(ic.amplitude));
  r.read("initial.wavevector", [&](const std::string& v, const std::string& f) { ic.wavevector = parse_vector<3, int>(v, f); });
  r.read("initial.direction", [&](const std::string& v, const std::string& f) { ic.direction = parse_vector<3, double>(v, f); });
  r.read("initial.path", [&](const std::string& v, const std::string&) { ic.path = trim(v); });

  r.read("convergence.levels", [&](const std::string& v, const std::string& f) { c.convergence.levels = parse_number_list<int>(v, f); });
  r.read("convergence.dt_halvings", num(c.convergence.dt_halvings));
  r.read("convergence.max_modes", num(c.convergence.max_modes));

  r.read("uniqueness.epsilons", [&](const std::string& v, const std::string& f) { c.uniqueness.epsilons = parse_number_list<double>(v, f); });
  r.read("uniqueness.perturbation_seed", num(c.uniqueness.perturbation_seed));

  r.read("ou.ensemble", num(c.ou.ensemble));
  r.read("ou.theta", num(c.ou.theta));

  r.read("inequalities.ids", [&](const std::string& v, const std::string& f) {
    c.inequalities.ids.clear();
    for (const auto& item : split_list(v)) {
      try {
        c.inequalities.ids.push_back(inequality_from_string(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(f, e.what());
      }
    }
  });
  r.read("inequalities.trials", num(c.inequalities.trials));

  r.read("sweep.alphas", [&](const std::string& v, const std::string& f) { c.sweep.alphas = parse_number_list<double>(v, f); });
  r.read("sweep.s_levels", [&](const std::string& v, const std::string& f) { c.sweep.s_levels = parse_number_list<int>(v, f); });
  r.read("sweep.levels", [&](const std::string& v, const std::string& f) { c.sweep.levels = parse_number_list<int>(v, f); });
  r.read("sweep.ensemble", num(c.sweep.ensemble));

  r.read("output.noise_dump", [&](const std::string& v, const std::string& f) { c.noise_dump = parse_bool(v, f); });
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  const SolverConfig& s = c.solver;
  const auto d = [](double x) { return fmt_double(x); };
  const auto i = [](auto x) { return std::to_string(x); };
  const auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::ostringstream o;
  o << "[solver]\n"
    << "nu = " << d(s.nu) << "\n"
    << "alpha = " << d(s.alpha) << "\n"
    << "gamma = " << d(s.gamma) << "\n"
    << "dt = " << d(s.dt) << "\n"
    << "T = " << d(s.T) << "\n"
    << "seed = " << s.seed << "\n"
    << "mode = " << to_string(s.mode) << "\n"
    << "theta_track = " << join(s.theta_track, d) << "\n"
    << "override_regularity = " << b(s.override_regularity) << "\n"
    << "blowup_factor = " << d(s.blowup_factor) << "\n"
    << "snapshot_every = " << s.snapshot_every << "\n"
    << "noise_dt = " << d(s.noise_dt) << "\n\n";
  o << "[torus]\n"
    << "period = " << d(s.torus.period) << "\n"
    << "trunc_n = " << s.torus.trunc_n << "\n"
    << "grid_n = " << s.torus.grid_n << "\n\n";
  const InitialConfig& ic = c.initial;
  o << "[initial]\n"
    << "kind = " << to_string(ic.kind) << "\n"
    << "seed = " << ic.seed << "\n"
    << "radius = " << ic.radius << "\n"
    << "amplitude = " << d(ic.amplitude) << "\n"
    << "wavevector = " << ic.wavevector(0) << ", " << ic.wavevector(1) << ", " << ic.wavevector(2) << "\n"
    << "direction = " << d(ic.direction(0)) << ", " << d(ic.direction(1)) << ", " << d(ic.direction(2)) << "\n"
    << "path = " << ic.path << "\n\n";
  o << "[convergence]\n"
    << "levels = " << join(c.convergence.levels, i) << "\n"
    << "dt_halvings = " << c.convergence.dt_halvings << "\n"
    << "max_modes = " << c.convergence.max_modes << "\n\n";
  o << "[uniqueness]\n"
    << "epsilons = " << join(c.uniqueness.epsilons, d) << "\n"
    << "perturbation_seed = " << c.uniqueness.perturbation_seed << "\n\n";
  o << "[ou]\n"
    << "ensemble = " << c.ou.ensemble << "\n"
    << "theta = " << d(c.ou.theta) << "\n\n";
  o << "[inequalities]\n"
    << "ids = " << join(c.inequalities.ids, [](InequalityId id) { return std::string(to_string(id)); }) << "\n"
    << "trials = " << c.inequalities.trials << "\n\n";
  o << "[sweep]\n"
    << "alphas = " << join(c.sweep.alphas, d) << "\n"
    << "s_levels = " << join(c.sweep.s_levels, i) << "\n"
    << "levels = " << join(c.sweep.levels, i) << "\n"
    << "ensemble = " << c.sweep.ensemble << "\n\n";
  o << "[output]\n"
    << "noise_dump = " << b(c.noise_dump) << "\n";
  return o.str();
}

SpectralField make_initial(const InitialConfig& cfg, const LatticePtr& lattice) {
  switch (cfg.kind) {
    case InitialKind::zero:
      return SpectralField(lattice);
    case InitialKind::smooth:
      if (cfg.radius < 1) throw ConfigError("initial.radius", "must be >= 1");
      if (!(cfg.amplitude >= 0.0)) throw ConfigError("initial.amplitude", "must be >= 0");
      return smooth_random_field(lattice, cfg.seed, std::min(cfg.radius, lattice->trunc_n()), cfg.amplitude);
    case InitialKind::single_mode: {
      if (lattice->find(cfg.wavevector) < 0) throw ConfigError("initial.wavevector", "outside the retained lattice");
      const Vector3c a = (cfg.amplitude * cfg.direction).cast<Complex>();
      SpectralField u = leray_project(single_mode(lattice, cfg.wavevector, a));
      if (sobolev_norm(u, 0.0) == 0.0) throw ConfigError("initial.direction", "parallel to the wavevector");
      return u;
    }
    case InitialKind::file: {
      if (cfg.path.empty()) throw ConfigError("initial.path", "required for kind = file");
      SpectralField u = [&] {
        try {
          return read_snapshot(cfg.path);
        } catch (const std::exception& e) {
          throw ConfigError("initial.path", e.what());
        }
      }();
      if (u.lattice().period() != lattice->period()) throw ConfigError("initial.path", "snapshot period differs");
      return resample(u, lattice);
    }
  }
  throw ConfigError("initial.kind", "unknown");
}

long mode_count(int trunc_n) {
  long count = 0;
  const long n2 = static_cast<long>(trunc_n) * trunc_n;
  for (long x = -trunc_n; x <= trunc_n; ++x)
    for (long y = -trunc_n; y <= trunc_n; ++y)
      for (long z = -trunc_n; z <= trunc_n; ++z)
        if (x * x + y * y + z * z <= n2) ++count;
  return count - 1;
}

}  // namespace hnsf::harness
