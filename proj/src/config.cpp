#include "condkin/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "condkin/bogoliubov.hpp"
#include "condkin/condensation.hpp"
#include "condkin/dispersion.hpp"
#include "condkin/errors.hpp"
#include "condkin/grid.hpp"
#include "condkin/io.hpp"
#include "condkin/kinetics.hpp"
#include "condkin/landau.hpp"

namespace condkin::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// --- JSON plumbing -----------------------------------------------------------

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfiguration("cli", "cannot read config file: " + path);
  try {
    return json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InvalidConfiguration("cli", std::string("config parse error: ") + e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidConfiguration("cli", "missing key \"" + key + "\" in " + where);
  return *it;
}

double get_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number())
    throw InvalidConfiguration("cli", "key \"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer())
    throw InvalidConfiguration("cli", "key \"" + key + "\" in " + where + " must be an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string())
    throw InvalidConfiguration("cli", "key \"" + key + "\" in " + where + " must be a string");
  return v.get<std::string>();
}

// Manifest serializer: floats carry 17 significant digits so a rerun sees
// bit-exact values. Keys are already sorted (nlohmann object = std::map).
void dump_json_17(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out << ",\n";
      first = false;
      out << pad_in << json(key).dump() << ": ";
      dump_json_17(value, out, indent + 2);
    }
    out << "\n" << pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
      return;
    }
    out << "[\n";
    bool first = true;
    for (const auto& value : j) {
      if (!first) out << ",\n";
      first = false;
      out << pad_in;
      dump_json_17(value, out, indent + 2);
    }
    out << "\n" << pad << "]";
  } else if (j.is_number_float()) {
    out << format_double(j.get<double>());
  } else {
    out << j.dump();
  }
}

void write_manifest(const json& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidConfiguration("cli", "cannot open output file: " + path);
  dump_json_17(manifest, out, 0);
  out << "\n";
}

// --- config -> domain objects ------------------------------------------------

InteractionKernel parse_interaction(const json& j) {
  const std::string kind = get_string(j, "kind", "physical.interaction");
  if (kind == "constant") return InteractionKernel::constant(get_number(j, "g0", "interaction"));
  if (kind == "gaussian")
    return InteractionKernel::gaussian(get_number(j, "g0", "interaction"),
                                       get_number(j, "cutoff", "interaction"));
  throw InvalidConfiguration("cli", "unknown interaction kind: " + kind);
}

FormFactor parse_form_factor(const json& j) {
  const std::string kind = get_string(j, "kind", "physical.form_factor");
  if (kind == "constant") return FormFactor::constant(get_number_or(j, "value", 1.0));
  if (kind == "gaussian")
    return FormFactor::gaussian(get_number(j, "cutoff", "form_factor"),
                                get_number_or(j, "amplitude", 1.0));
  throw InvalidConfiguration("cli", "unknown form factor kind: " + kind);
}

PhysicalParams parse_physical(const json& root) {
  const json& j = require(root, "physical", "config");
  PhysicalParams p;
  p.mass = get_number(j, "mass", "physical");
  p.beta = get_number_or(j, "beta", 1.0);
  p.gamma = get_number_or(j, "gamma", 0.0);
  p.rho = get_number_or(j, "rho", 1.0);
  if (j.contains("interaction")) p.g = parse_interaction(j["interaction"]);
  if (j.contains("form_factor")) p.f = parse_form_factor(j["form_factor"]);
  validate_params(p);
  return p;
}

MomentumGrid parse_grid(const json& root) {
  const json& j = require(root, "grid", "config");
  return make_grid(get_int(j, "dim", "grid"), get_number(j, "q_max", "grid"),
                   get_int(j, "points_per_axis", "grid"));
}

DispersionModel parse_dispersion(const json& root, const PhysicalParams& params,
                                 const fs::path& base_dir) {
  const json& j = require(root, "dispersion", "config");
  const std::string kind = get_string(j, "kind", "dispersion");
  if (kind == "free") return DispersionModel(FreeDispersion{params.mass});
  if (kind == "radiative")
    return DispersionModel(RadiativeDispersion{get_number(j, "sound_speed", "dispersion")});
  if (kind == "polaron")
    return DispersionModel(PolaronDispersion{get_number(j, "omega0", "dispersion")});
  if (kind == "bogoliubov")
    return DispersionModel(BogoliubovBulkDispersion{params.mass, params.gamma, params.g});
  if (kind == "tabulated") {
    fs::path table = get_string(j, "path", "dispersion");
    if (table.is_relative()) table = base_dir / table;
    return DispersionModel(load_tabulated_csv(table.string()));
  }
  throw InvalidConfiguration("cli", "unknown dispersion kind: " + kind);
}

Vec3 parse_point(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InvalidConfiguration("cli", where + " must be an array of length " +
                                          std::to_string(dim));
  Vec3 v;
  v.x = j[0].get<double>();
  if (dim > 1) v.y = j[1].get<double>();
  if (dim > 2) v.z = j[2].get<double>();
  return v;
}

DensityField parse_initial_state(const json& root, const MomentumGrid& grid) {
  const json& j = require(root, "initial_state", "config");
  const std::string kind = get_string(j, "kind", "initial_state");
  DensityField n(grid);
  if (kind == "gaussian") {
    const Vec3 center = j.contains("center") ? parse_point(j["center"], grid.dim(), "center")
                                             : Vec3();
    const double width = get_number(j, "width", "initial_state");
    const double amplitude = get_number_or(j, "amplitude", 1.0);
    const double truncate = get_number_or(j, "truncate_radius", 0.0);
    if (!(width > 0.0)) throw InvalidConfiguration("cli", "initial state width must be positive");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const Vec3 q = grid.node(i);
      if (truncate > 0.0 && q.norm() > truncate) continue;
      n[i] = amplitude * std::exp(-(q - center).norm2() / (2.0 * width * width));
    }
  } else if (kind == "shell") {
    const double radius = get_number(j, "radius", "initial_state");
    const double width = get_number(j, "width", "initial_state");
    const double amplitude = get_number_or(j, "amplitude", 1.0);
    const double floor = get_number_or(j, "floor", 0.0);
    if (!(width > 0.0)) throw InvalidConfiguration("cli", "initial state width must be positive");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const double r = grid.node(i).norm();
      const double u = (r - radius) / width;
      n[i] = amplitude * std::exp(-0.5 * u * u) + floor;
    }
  } else if (kind == "single_cell") {
    const Vec3 at = parse_point(require(j, "at", "initial_state"), grid.dim(), "at");
    const double value = get_number_or(j, "value", 1.0);
    std::size_t best = 0;
    double best_dist = (grid.node(0) - at).norm2();
    for (std::size_t i = 1; i < n.size(); ++i) {
      const double d = (grid.node(i) - at).norm2();
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    n[best] = value;
  } else if (kind == "constant") {
    const double value = get_number(j, "value", "initial_state");
    for (auto& v : n.values) v = value;
  } else {
    throw InvalidConfiguration("cli", "unknown initial state kind: " + kind);
  }
  validate_density(n);
  return n;
}

RhsForm parse_rhs_form(const std::string& mode) {
  if (mode == "linear") return RhsForm::linear;
  if (mode == "nonlinear") return RhsForm::nonlinear;
  if (mode == "nonlinear-with-bose-factors") return RhsForm::nonlinear_with_bose_factors;
  throw InvalidConfiguration("cli", "unknown evolution mode: " + mode);
}

double resolve_sigma(const json& root, const MomentumGrid& grid, const DispersionModel& model,
                     const PhysicalParams& params) {
  if (root.contains("sigma_e")) {
    const double sigma = root["sigma_e"].get<double>();
    if (!(sigma > 0.0))
      throw InvalidConfiguration("grid", "mollifier width sigma_e must be positive");
    return sigma;
  }
  return default_mollifier_width(grid, model, params.mass);
}

ReservoirSpec parse_reservoir(const json& root, const MomentumGrid& grid,
                              const DispersionModel& dispersion) {
  const json& j = require(root, "reservoir", "config");
  ReservoirSpec res;
  res.beta = get_number(j, "beta", "reservoir");
  if (!(res.beta > 0.0))
    throw InvalidConfiguration("kinetics", "reservoir beta must be positive");
  res.dispersion = dispersion;
  res.occupation = DensityField(grid);
  const json& occ = require(j, "occupation", "reservoir");
  const std::string kind = get_string(occ, "kind", "reservoir.occupation");
  if (kind == "zero") {
    // already zero
  } else if (kind == "constant") {
    const double value = get_number(occ, "value", "reservoir.occupation");
    if (value < 0.0)
      throw InvalidConfiguration("kinetics", "reservoir occupation must be nonnegative");
    for (auto& v : res.occupation.values) v = value;
  } else {
    throw InvalidConfiguration("cli", "unknown reservoir occupation kind: " + kind);
  }
  return res;
}

// --- experiment runners ------------------------------------------------------

struct Context {
  json root;
  fs::path base_dir;
  fs::path out_dir;
  std::string experiment;
};

json physical_manifest(const PhysicalParams& p) {
  json j;
  j["mass"] = p.mass;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["rho"] = p.rho;
  j["interaction"] = {{"kind", p.g.is_gaussian() ? "gaussian" : "constant"},
                      {"g0", p.g.amplitude()}};
  if (p.g.is_gaussian()) j["interaction"]["cutoff"] = p.g.cutoff();
  j["form_factor"] = {{"kind", p.f.is_gaussian() ? "gaussian" : "constant"},
                      {"amplitude", p.f.amplitude().real()}};
  if (p.f.is_gaussian()) j["form_factor"]["cutoff"] = p.f.cutoff();
  return j;
}

json grid_manifest(const MomentumGrid& g) {
  return {{"dim", g.dim()},
          {"q_max", g.q_max()},
          {"points_per_axis", g.points_per_axis()},
          {"dq", g.dq()}};
}

json base_manifest(const Context& ctx) {
  json m;
  m["experiment"] = ctx.experiment;
  m["config"] = ctx.root;
  return m;
}

void run_dispersion_sweep(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  const DispersionModel model = parse_dispersion(ctx.root, params, ctx.base_dir);
  const json& sweep = require(ctx.root, "sweep", "config");
  const double k_min = get_number(sweep, "k_min", "sweep");
  const double k_max = get_number(sweep, "k_max", "sweep");
  const int points = get_int(sweep, "points", "sweep");
  if (!(k_min > 0.0) || !(k_max > k_min) || points < 2)
    throw InvalidConfiguration("cli", "sweep needs 0 < k_min < k_max and points >= 2");

  std::ofstream csv(ctx.out_dir / "dispersion.csv");
  csv << "k,E,epsilon\n";
  for (int i = 0; i < points; ++i) {
    const double k = k_min + (k_max - k_min) * i / (points - 1);
    csv << format_double(k) << "," << format_double(model(k)) << ","
        << format_double(epsilon(k, params.mass)) << "\n";
  }

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["dispersion_kind"] = model.name();
  try {
    manifest["sound_speed"] = sound_speed(model);
  } catch (const NoSoundSpeed&) {
    manifest["sound_speed"] = nullptr;
  }
  manifest["artifacts"] = json::array({"dispersion.csv"});
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());
}

void run_bogoliubov_sweep(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  const json& sweep = require(ctx.root, "sweep", "config");
  const double p_min = get_number(sweep, "p_min", "sweep");
  const double p_max = get_number(sweep, "p_max", "sweep");
  const int points = get_int(sweep, "points", "sweep");
  if (!(p_min > 0.0) || !(p_max > p_min) || points < 2)
    throw InvalidConfiguration("cli", "sweep needs 0 < p_min < p_max and points >= 2");

  std::ofstream csv(ctx.out_dir / "bogoliubov.csv");
  csv << "p,omega,t,x,u,v,offdiag_residual,diag_coefficient,excitation_energy\n";
  for (int i = 0; i < points; ++i) {
    const double p = p_min + (p_max - p_min) * i / (points - 1);
    const QuadraticHamiltonianPoint point{epsilon(p, params.mass), params.gamma * params.g(p)};
    const double x = compensation_x(point);
    const BogoliubovCoeffs c = coeffs(x);
    csv << format_double(p) << "," << format_double(point.omega) << ","
        << format_double(point.t) << "," << format_double(x) << "," << format_double(c.u) << ","
        << format_double(c.v) << "," << format_double(offdiagonal_residual(point, c)) << ","
        << format_double(diagonal_coefficient(point, c)) << ","
        << format_double(bogoliubov_dispersion(Vec3(p), params)) << "\n";
  }

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["chemical_potential"] = chemical_potential(params);
  manifest["artifacts"] = json::array({"bogoliubov.csv"});
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());
}

void run_condense(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  int temperatures = 16;
  if (ctx.root.contains("condense"))
    temperatures = get_int(ctx.root["condense"], "temperatures", "condense");
  if (temperatures < 2)
    throw InvalidConfiguration("cli", "condense needs at least 2 temperatures");

  const double theta_c = critical_temperature(params.rho, params.mass);
  std::ofstream csv(ctx.out_dir / "condense.csv");
  csv << "theta,c,normal_density,rho_check\n";
  for (int i = 0; i < temperatures; ++i) {
    const double theta = theta_c * i / (temperatures - 1);
    const CondensateState s = condensate_fraction(theta, params.rho, params.mass);
    const double nd = theta == 0.0 ? 0.0 : normal_density(1.0 / theta, params.mass);
    csv << format_double(theta) << "," << format_double(s.condensate_weight) << ","
        << format_double(nd) << "," << format_double(s.condensate_weight + nd) << "\n";
  }

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["theta_c"] = theta_c;
  manifest["artifacts"] = json::array({"condense.csv"});
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());
}

void run_landau(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  const DispersionModel model = parse_dispersion(ctx.root, params, ctx.base_dir);
  double k_min = 1e-8, k_max = 10.0;
  int points = 400;
  if (ctx.root.contains("landau")) {
    const json& j = ctx.root["landau"];
    k_min = get_number_or(j, "k_min", k_min);
    k_max = get_number_or(j, "k_max", k_max);
    points = static_cast<int>(get_number_or(j, "points", points));
  }
  const StabilityReport report =
      critical_velocity(model, params.mass, log_spaced(k_min, k_max, points));

  std::ofstream txt(ctx.out_dir / "landau_report.txt");
  txt << "model = " << model.name() << "\n";
  txt << "v_c = " << format_double(report.v_c) << "\n";
  txt << "argmin_k = " << format_double(report.argmin_k) << "\n";
  txt << "infimum_at_zero = " << (report.infimum_at_zero ? "true" : "false") << "\n";
  if (const auto* polaron = std::get_if<PolaronDispersion>(&model.variant())) {
    // the simple |u| < sqrt(omega0) bound is sufficient but not tight
    txt << "sufficient_bound = " << format_double(std::sqrt(polaron->omega0)) << "\n";
  }

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["dispersion_kind"] = model.name();
  manifest["v_c"] = report.v_c;
  manifest["argmin_k"] = report.argmin_k;
  manifest["infimum_at_zero"] = report.infimum_at_zero;
  manifest["artifacts"] = json::array({"landau_report.txt"});
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());
}

json evolution_manifest(const EvolutionConfig& config) {
  const char* mode = config.form == RhsForm::linear ? "linear"
                     : config.form == RhsForm::nonlinear ? "nonlinear"
                                                         : "nonlinear-with-bose-factors";
  return {{"dt", config.dt},
          {"t_end", config.t_end},
          {"sigma_e", config.sigma_e},
          {"mode", mode},
          {"record_every", config.record_every}};
}

void run_evolve(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  const MomentumGrid grid = parse_grid(ctx.root);
  const DispersionModel model = parse_dispersion(ctx.root, params, ctx.base_dir);
  const DensityField n0 = parse_initial_state(ctx.root, grid);

  const json& ev = require(ctx.root, "evolution", "config");
  EvolutionConfig config;
  config.dt = get_number(ev, "dt", "evolution");
  config.t_end = get_number(ev, "t_end", "evolution");
  config.record_every = static_cast<int>(get_number_or(ev, "record_every", 1));
  config.form = parse_rhs_form(get_string(ev, "mode", "evolution"));
  config.sigma_e = resolve_sigma(ctx.root, grid, model, params);
  validate_evolution_config(config);

  std::optional<ReservoirSpec> reservoir;
  if (config.form != RhsForm::nonlinear && ctx.root.contains("reservoir"))
    reservoir = parse_reservoir(ctx.root, grid, model);
  if (config.form == RhsForm::linear && !reservoir)
    throw InvalidConfiguration("kinetics", "linear evolution needs a reservoir section");

  const Trajectory traj =
      evolve(n0, model, params, config, reservoir ? &*reservoir : nullptr);

  write_trajectory_csv(traj, (ctx.out_dir / "trajectory.csv").string());
  const fs::path snap_dir = ctx.out_dir / "snapshots";
  fs::create_directories(snap_dir);
  json snapshot_files = json::array();
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%06zu.csv", s);
    write_density_csv(traj.snapshots[s].density, (snap_dir / name).string());
    snapshot_files.push_back(std::string("snapshots/") + name);
  }

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["grid"] = grid_manifest(grid);
  manifest["dispersion_kind"] = model.name();
  manifest["evolution"] = evolution_manifest(config);
  manifest["status"] = traj.status == EvolutionStatus::ok ? "ok"
                       : traj.status == EvolutionStatus::diverged ? "diverged"
                                                                  : "step_size_exceeded";
  manifest["artifacts"] = json::array({"trajectory.csv"});
  for (const auto& f : snapshot_files) manifest["artifacts"].push_back(f);
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());

  if (!traj.ok()) throw NumericalFailure("kinetics", traj.message);
}

void run_check_superfluid(const Context& ctx) {
  const PhysicalParams params = parse_physical(ctx.root);
  const MomentumGrid grid = parse_grid(ctx.root);
  const DispersionModel model = parse_dispersion(ctx.root, params, ctx.base_dir);
  const DensityField n = parse_initial_state(ctx.root, grid);
  const double sigma = resolve_sigma(ctx.root, grid, model, params);
  const double tol = get_number_or(ctx.root, "superfluid_tol", 1e-2);

  const SuperfluidityReport report = superfluidity_check(n, model, params, sigma, tol);

  json r;
  r["applicable"] = report.applicable;
  r["sound_speed"] = report.sound_speed;
  r["support_radius_limit"] = report.support_radius_limit;
  r["support_max_radius"] = report.support_max_radius;
  r["support_ok"] = report.support_ok;
  r["prod1_residual"] = report.prod1_residual;
  r["prod2_residual"] = report.prod2_residual;
  r["nonlinear_residual"] = report.nonlinear_residual;
  r["linear_residual"] = report.linear_residual;
  r["support_gap"] = report.support_gap;
  r["mollifier_bound"] = report.mollifier_bound;
  r["tol"] = report.tol;
  r["superfluid"] = report.superfluid;
  r["sigma_e"] = sigma;
  write_manifest(r, (ctx.out_dir / "superfluid_report.json").string());

  json manifest = base_manifest(ctx);
  manifest["physical"] = physical_manifest(params);
  manifest["grid"] = grid_manifest(grid);
  manifest["dispersion_kind"] = model.name();
  manifest["sigma_e"] = sigma;
  manifest["artifacts"] = json::array({"superfluid_report.json"});
  write_manifest(manifest, (ctx.out_dir / "manifest.json").string());
}

Context make_context(const std::string& path) {
  Context ctx;
  ctx.root = load_json(path);
  ctx.base_dir = fs::path(path).parent_path();
  ctx.experiment = get_string(ctx.root, "experiment", "config");
  fs::path out = get_string(ctx.root, "output_dir", "config");
  if (out.is_relative()) out = ctx.base_dir / out;
  ctx.out_dir = out;
  return ctx;
}

}  // namespace

void run_file(const std::string& path) {
  try {
    Context ctx = make_context(path);
    fs::create_directories(ctx.out_dir);

    if (ctx.experiment == "dispersion-sweep")
      run_dispersion_sweep(ctx);
    else if (ctx.experiment == "bogoliubov-sweep")
      run_bogoliubov_sweep(ctx);
    else if (ctx.experiment == "condense")
      run_condense(ctx);
    else if (ctx.experiment == "landau")
      run_landau(ctx);
    else if (ctx.experiment == "evolve")
      run_evolve(ctx);
    else if (ctx.experiment == "check-superfluid")
      run_check_superfluid(ctx);
    else
      throw InvalidConfiguration("cli", "unknown experiment: " + ctx.experiment);
  } catch (const json::exception& e) {
    throw InvalidConfiguration("cli", std::string("config error: ") + e.what());
  }
}

std::vector<Diagnostic> validate_file(const std::string& path) {
  std::vector<Diagnostic> diagnostics;
  auto attempt = [&diagnostics](const std::function<void()>& stage) {
    try {
      stage();
    } catch (const Error& e) {
      diagnostics.push_back({e.module(), e.what()});
    } catch (const std::exception& e) {
      diagnostics.push_back({"cli", e.what()});
    }
  };

  Context ctx = make_context(path);  // unreadable/unparseable files throw to the caller

  const std::string& kind = ctx.experiment;
  if (kind != "dispersion-sweep" && kind != "bogoliubov-sweep" && kind != "condense" &&
      kind != "landau" && kind != "evolve" && kind != "check-superfluid") {
    diagnostics.push_back({"cli", "unknown experiment: " + kind});
    return diagnostics;
  }

  PhysicalParams params;
  bool have_params = false;
  attempt([&] {
    params = parse_physical(ctx.root);
    have_params = true;
  });
  if (!have_params) return diagnostics;

  const bool needs_grid = kind == "evolve" || kind == "check-superfluid";
  const bool needs_dispersion =
      kind == "dispersion-sweep" || kind == "landau" || needs_grid;

  std::optional<MomentumGrid> grid;
  if (needs_grid) attempt([&] { grid = parse_grid(ctx.root); });

  std::optional<DispersionModel> model;
  if (needs_dispersion)
    attempt([&] { model = parse_dispersion(ctx.root, params, ctx.base_dir); });

  if (needs_grid && ctx.root.contains("sigma_e")) {
    attempt([&] {
      if (!(ctx.root["sigma_e"].get<double>() > 0.0))
        throw InvalidConfiguration("grid", "mollifier width sigma_e must be positive");
    });
  }
  if (grid) attempt([&] { parse_initial_state(ctx.root, *grid); });
  if (grid && model && !ctx.root.contains("sigma_e")) {
    // exercises the default-width computation (the dispersion can reject)
    attempt([&] { resolve_sigma(ctx.root, *grid, *model, params); });
  }

  if (kind == "evolve" && grid && model) {
    attempt([&] {
      const json& ev = require(ctx.root, "evolution", "config");
      EvolutionConfig config;
      config.dt = get_number(ev, "dt", "evolution");
      config.t_end = get_number(ev, "t_end", "evolution");
      config.record_every = static_cast<int>(get_number_or(ev, "record_every", 1));
      config.form = parse_rhs_form(get_string(ev, "mode", "evolution"));
      config.sigma_e = 1.0;  // the width is diagnosed separately above
      validate_evolution_config(config);
      if (config.form == RhsForm::linear) {
        if (!ctx.root.contains("reservoir"))
          throw InvalidConfiguration("kinetics", "linear evolution needs a reservoir section");
        parse_reservoir(ctx.root, *grid, *model);
      }
    });
  }
  return diagnostics;
}

}  // namespace condkin::cli
