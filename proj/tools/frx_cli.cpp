// frx: exact Riemann solutions, verification and finite-volume comparison
// for pressureless gas with friction and its Chaplygin-type perturbation.
//
//   frx solve  --config run.json [--out file] [--format csv|json]
//   frx sample | verify | oracle | limit  (same options)
//
// Exit codes: 0 success, 2 configuration or validation error, 3 a check
// exceeded its tolerance. Log verbosity follows SPDLOG_LEVEL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "frx/frx.hpp"
#include "run_config.hpp"

namespace {

using frx::cli::RunConfig;
using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string, bool>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  Table table;
  json doc = json::object();
  std::vector<std::string> trailer;  // extra '#' lines after the CSV rows
  int exit_code = 0;
};

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(double d) const {
      if (std::isnan(d)) return "nan";
      return fmt::format("{:.17g}", d);
    }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

json rows_as_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(r[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::string region_name(const frx::WaveFan& fan) {
  return fan.region ? std::string(frx::to_string(*fan.region)) : "none";
}

// Check rows: name, residual, tolerance, pass.
struct CheckList {
  Table table{{"check", "residual", "tolerance", "pass"}, {}};
  bool all_pass = true;

  void add(const std::string& name, double residual, double tol) {
    const bool ok = residual <= tol;
    all_pass = all_pass && ok;
    table.rows.push_back({name, residual, tol, ok});
    spdlog::debug("{}: {:.3e} (tol {:.1e}) {}", name, residual, tol, ok ? "ok" : "FAILED");
  }
  void info(const std::string& name, double value) {
    table.rows.push_back({name, value, kNaN, true});
  }
};

Output cmd_solve(const RunConfig& cfg) {
  const frx::WaveFan fan = frx::solve(cfg.problem);
  Output out;
  out.table.columns = {"field", "value"};
  auto& rows = out.table.rows;
  json& doc = out.doc;
  doc["variant"] = frx::variant_name(fan);
  doc["region"] = region_name(fan);
  rows.push_back({std::string("variant"), frx::variant_name(fan)});
  rows.push_back({std::string("region"), region_name(fan)});

  json waves = json::array();
  for (const auto& w : frx::wave_positions(fan, 1.0)) {
    waves.push_back({{"label", w.label}, {"coefficient", w.coefficient}});
    rows.push_back({"c_" + w.label, w.coefficient});
  }
  doc["waves"] = waves;

  auto star = [&](const frx::PrimState& s) {
    doc["star"] = {{"rho", s.rho}, {"v", s.v}};
    rows.push_back({std::string("star_rho"), s.rho});
    rows.push_back({std::string("star_v"), s.v});
  };
  if (const auto* rc = std::get_if<frx::RarefactionContact>(&fan.waves)) star(rc->star);
  if (const auto* sc = std::get_if<frx::ShockContact>(&fan.waves)) star(sc->star);
  if (const auto* ds = std::get_if<frx::DeltaShock>(&fan.waves)) {
    doc["v_delta"] = ds->delta.v_delta;
    doc["w0"] = ds->delta.w0;
    rows.push_back({std::string("v_delta"), ds->delta.v_delta});
    rows.push_back({std::string("w0"), ds->delta.w0});
  }
  return out;
}

Output cmd_sample(const RunConfig& cfg) {
  frx::cli::require_sample_grid(cfg);
  const frx::WaveFan fan = frx::solve(cfg.problem);
  Output out;
  out.table.columns = {"x", "t", "rho", "u", "flag", "weight"};
  for (double t : cfg.sample.t) {
    for (double x : cfg.sample.x) {
      const auto s = frx::evaluate(fan, x, t);
      switch (s.kind) {
        case frx::SampleKind::Regular:
          out.table.rows.push_back({x, t, s.rho, s.u, std::string("regular"), 0.0});
          break;
        case frx::SampleKind::Vacuum:
          out.table.rows.push_back({x, t, 0.0, kNaN, std::string("vacuum"), 0.0});
          break;
        case frx::SampleKind::OnDelta:
          out.table.rows.push_back({x, t, kNaN, s.u_delta, std::string("delta"), s.weight});
          break;
      }
    }
  }
  out.doc["rows"] = rows_as_json(out.table);
  return out;
}

Output cmd_verify(const RunConfig& cfg) {
  const frx::RiemannProblem& p = cfg.problem;
  const frx::GasParams& g = p.params;
  frx::WaveFan fan = frx::solve(p);
  if (auto* ds = std::get_if<frx::DeltaShock>(&fan.waves)) {
    ds->delta.w0 *= cfg.verify.perturb_w0;
  }
  CheckList checks;
  const std::vector<double> times{0.0, 1.0, 10.0};

  if (const auto* rc = std::get_if<frx::RarefactionContact>(&fan.waves)) {
    const auto wl = frx::riemann_invariants(p.left, g), ws = frx::riemann_invariants(rc->star, g);
    const auto wr = frx::riemann_invariants(p.right, g);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };
    checks.add("invariant_w", rel(wl.w, ws.w), 1e-12);
    checks.add("invariant_z", rel(ws.z, wr.z), 1e-12);
    for (double t : times) {
      checks.add(fmt::format("rh_contact_t{}", t),
                 frx::jump_residual(rc->star, p.right, rc->c_contact + g.beta * t, t, g), 1e-12);
    }
    checks.add("entropy", rc->c_tail < rc->c_head ? 0.0 : 1.0, 0.0);
  }
  if (const auto* sc = std::get_if<frx::ShockContact>(&fan.waves)) {
    const auto wl = frx::riemann_invariants(p.left, g), ws = frx::riemann_invariants(sc->star, g);
    checks.add("invariant_w", std::abs(wl.w - ws.w) / std::max({1.0, std::abs(wl.w), std::abs(ws.w)}), 1e-12);
    bool lax = true;
    for (double t : times) {
      const double sigma = sc->c_shock + g.beta * t;
      checks.add(fmt::format("rh_shock_t{}", t), frx::jump_residual(p.left, sc->star, sigma, t, g), 1e-12);
      checks.add(fmt::format("rh_contact_t{}", t),
                 frx::jump_residual(sc->star, p.right, sc->c_contact + g.beta * t, t, g), 1e-12);
      lax = lax && frx::eigenvalues(sc->star, t, g).lambda1 < sigma &&
            sigma < frx::eigenvalues(p.left, t, g).lambda1;
    }
    checks.add("entropy", lax ? 0.0 : 1.0, 0.0);
  }
  if (const auto* ds = std::get_if<frx::DeltaShock>(&fan.waves)) {
    const frx::DeltaShockWave& d = ds->delta;
    if (!g.pressureless()) {
      checks.add("speed_quadratic", frx::delta_quadratic_residual(p, d.v_delta).relative(), 1e-10);
    }
    for (double t : times) {
      checks.add(fmt::format("grh_t{}", t), frx::grh_residual(p, d, t).max_relative(), 1e-10);
      checks.add(fmt::format("c_identity_t{}", t), frx::c_identity_residual(p, d, t).relative(), 1e-10);
    }
    checks.add("entropy", frx::entropy_check(p, d, 1.0) ? 0.0 : 1.0, 0.0);
  }

  double weak = 0.0;
  for (const auto& psi : frx::default_bump_battery(fan)) {
    weak = std::max(weak, frx::weak_residual(p, fan, psi, cfg.verify.quad_n).max_relative());
  }
  checks.add(fmt::format("weak_form_n{}", cfg.verify.quad_n), weak, 1e-6);

  Output out;
  out.table = checks.table;
  out.doc["variant"] = frx::variant_name(fan);
  out.doc["checks"] = rows_as_json(out.table);
  out.doc["passed"] = checks.all_pass;
  out.exit_code = checks.all_pass ? 0 : kExitCheck;
  return out;
}

Output cmd_oracle(const RunConfig& cfg) {
  const frx::cli::OracleSettings& o = cfg.oracle;
  frx::FvConfig fv;
  if (o.grid == "fitted") {
    try {
      fv = frx::fitted_config(cfg.problem, o.cells, o.t_end);
    } catch (const frx::Error&) {
      // a lone contact has no width in its own frame
      fv = frx::fitted_config(cfg.problem, o.cells, o.t_end, 0.5);
    }
    fv.cfl = o.cfl;
  } else {
    fv = {cfg.problem, o.x_lo, o.x_hi, o.cells, o.cfl, o.t_end, 0.0};
  }
  spdlog::info("running {} cells on [{}, {}] moving at {} to t = {}", fv.cells, fv.x_lo, fv.x_hi,
               fv.frame_speed, fv.t_end);
  const frx::FvState s = frx::run(fv);
  spdlog::info("{} steps, {} density clamps", s.steps, s.clamp_count);
  const frx::WaveFan fan = frx::solve(cfg.problem);

  CheckList checks;
  checks.info("cells", fv.cells);
  checks.info("dx", s.dx());
  checks.info("steps", s.steps);
  checks.info("clamp_count", static_cast<double>(s.clamp_count));
  checks.info("l1_error", frx::compare_to_exact(s, fan, o.exclusion));
  for (const auto& w : frx::wave_offsets(s, fan, o.search_cells)) {
    checks.add("offset_cells_" + w.label, std::abs(w.cells), 3.0);
  }
  if (const auto plateau = frx::plateau_density(s, fan)) {
    const double star = std::get<frx::ShockContact>(fan.waves).star.rho;
    checks.add("plateau_rel_error", std::abs(*plateau - star) / star, 0.02);
  }
  if (const auto* ds = std::get_if<frx::DeltaShock>(&fan.waves)) {
    const double w = ds->delta.weight(s.t);
    const double mass = frx::measure_delta_mass(s, ds->delta.position(s.t), o.delta_halfwidth);
    checks.info("delta_mass", mass);
    checks.add("delta_mass_rel_error", std::abs(mass - w) / w, 0.15);
  }

  Output out;
  out.table = checks.table;
  out.doc["variant"] = frx::variant_name(fan);
  out.doc["metrics"] = rows_as_json(out.table);
  out.doc["passed"] = checks.all_pass;
  out.exit_code = checks.all_pass ? 0 : kExitCheck;
  return out;
}

Output cmd_limit(const RunConfig& cfg) {
  const frx::cli::LimitSettings& l = cfg.limit;
  std::vector<double> sweep = l.sweep;
  if (l.sweep_kind == "default") sweep = frx::default_sweep(cfg.problem, l.count);
  if (l.sweep_kind == "approach") sweep = frx::approach_sweep(cfg.problem, l.count);
  const frx::LimitReport rep = frx::limit_study(cfg.problem, sweep);

  Output out;
  out.table.columns = {"A", "variant", "region", "rho_star", "c_first", "c_second",
                       "v_delta", "w0", "mass", "momentum", "error"};
  for (const auto& e : rep.entries) {
    out.table.rows.push_back({e.A, e.variant,
                              e.region ? std::string(frx::to_string(*e.region)) : std::string("none"),
                              e.rho_star, e.c_first, e.c_second, e.v_delta, e.w0, e.mass,
                              e.momentum, e.error});
  }
  json& doc = out.doc;
  doc["case"] = std::string(frx::to_string(rep.which));
  if (rep.limits) {
    doc["A0"] = rep.limits->A0;
    doc["A1"] = rep.limits->A1;
    doc["A1_status"] = rep.limits->a1_applicable ? "bound" : "informational";
    out.trailer.push_back(fmt::format("# A0 {:.17g}", rep.limits->A0));
    out.trailer.push_back(fmt::format("# A1 {:.17g} {}", rep.limits->A1,
                                      rep.limits->a1_applicable ? "bound" : "informational"));
  }
  doc["rows"] = rows_as_json(out.table);
  doc["targets"] = json::object();
  for (const auto& [k, v] : rep.targets) {
    doc["targets"][k] = v;
    out.trailer.push_back(fmt::format("# target {} {:.17g}", k, v));
  }
  doc["rates"] = json::object();
  for (const auto& [k, v] : rep.rates) {
    doc["rates"][k] = v;
    out.trailer.push_back(fmt::format("# rate {} {:.17g}", k, v));
  }
  return out;
}

void write_output(const Output& out, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << out.doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < out.table.columns.size(); ++i) {
    os << (i ? "," : "") << out.table.columns[i];
  }
  os << '\n';
  for (const auto& row : out.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& line : out.trailer) os << line << '\n';
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw frx::Error(frx::ErrorCode::InvalidConfig, "cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw frx::Error(frx::ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return frx::cli::parse_config(doc);
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("frx");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();

  CLI::App app{"Exact Riemann solutions, verification and finite-volume comparison"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  struct Command {
    const char* name;
    const char* help;
    Output (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"solve", "wave fan: variant, region, speeds, star state or delta parameters", cmd_solve},
      {"sample", "tabulate the exact solution on an (x, t) grid", cmd_sample},
      {"verify", "jump conditions, entropy and weak-form residuals of the exact fan", cmd_verify},
      {"oracle", "finite-volume run compared with the exact fan", cmd_oracle},
      {"limit", "sweep the pressure magnitude A toward its limits", cmd_limit},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "flat JSON run configuration")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const Command* command = nullptr;
  for (const auto& c : commands) {
    if (chosen->get_name() == c.name) command = &c;
  }

  Output out;
  try {
    const RunConfig cfg = load_config(config_path);
    spdlog::info("{} with rho_l={} u_l={} rho_r={} u_r={} A={} alpha={} beta={}", command->name,
                 cfg.problem.left.rho, cfg.problem.left.v, cfg.problem.right.rho,
                 cfg.problem.right.v, cfg.problem.params.A, cfg.problem.params.alpha,
                 cfg.problem.params.beta);
    out = command->run(cfg);
  } catch (const frx::Error& e) {
    std::cerr << "frx: error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (out_path.empty()) {
    write_output(out, format, std::cout);
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "frx: error: cannot write '" << out_path << "'\n";
      return kExitConfig;
    }
    write_output(out, format, os);
  }
  if (out.exit_code == kExitCheck) spdlog::warn("{}: a check exceeded its tolerance", command->name);
  return out.exit_code;
}
