#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "ebreak/cli.hpp"
#include "ebreak/cm_text.hpp"
#include "ebreak/discord.hpp"
#include "ebreak/errors.hpp"
#include "ebreak/parallel.hpp"
#include "ebreak/propagation.hpp"
#include "ebreak/qudit.hpp"
#include "ebreak/qudit_json.hpp"

namespace ebreak::cli {

using environment::EnvSpec;
using environment::Family;
using nlohmann::ordered_json;

namespace {

constexpr int kMaxGrid = 4001;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double axis(double lo, double hi, int n, int i) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * i / (n - 1);
}

Cell text(std::string s) { return Cell(std::move(s)); }

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, what));
  return out;
}

// "a,b,c" or "start:stop:step" (inclusive).
std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  if (s.find(':') == std::string::npos) return parse_list(s, what);
  std::vector<double> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(parse_number(item, what));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError(what + " must be start:stop:step with step > 0");
  }
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  if (count > kMaxGrid) throw UsageError(what + " has too many points");
  std::vector<double> out;
  for (long k = 0; k < count; ++k) out.push_back(parts[0] + k * parts[2]);
  return out;
}

Family parse_family(const std::string& s) {
  if (s == "sc") return Family::SC;
  if (s == "ac") return Family::AC;
  throw UsageError("--family must be sc or ac");
}

const char* family_name(Family f) { return f == Family::SC ? "sc" : "ac"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
  if (const bool* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

Table flatten(std::vector<std::vector<std::vector<Cell>>>&& blocks, std::vector<std::string> columns) {
  Table t;
  t.columns = std::move(columns);
  for (auto& block : blocks) {
    for (auto& row : block) t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

double ScanConfig::omega() const { return omega_eb ? environment::omega_eb(tau) : omega_value; }

Range ScanConfig::resolved_range() const {
  if (range) return *range;
  const double w = omega();
  return {-w, w, -w, w};
}

ordered_json ScanConfig::config_json() const {
  const Range r = resolved_range();
  ordered_json j;
  j["tau"] = tau;
  j["omega"] = omega();
  j["omega_mode"] = omega_eb ? "eb" : "value";
  j["grid_n"] = grid_n;
  j["range"] = {r.g_min, r.g_max, r.gp_min, r.gp_max};
  j["range_mode"] = range ? "explicit" : "auto";
  j["format"] = format == Format::Csv ? "csv" : "json";
  j["seed"] = seed;
  return j;
}

void validate(const ScanConfig& c) {
  if (!(c.tau >= 0.0 && c.tau <= 1.0)) throw UsageError("--tau must lie in [0, 1]");
  if (c.omega_eb && !(c.tau < 1.0)) throw UsageError("--omega eb needs --tau < 1");
  if (!c.omega_eb && !(c.omega_value >= 1.0 && std::isfinite(c.omega_value))) {
    throw UsageError("--omega must be a finite number >= 1 or 'eb'");
  }
  if (c.grid_n < 2 || c.grid_n > kMaxGrid) throw UsageError("--grid must lie in [2, 4001]");
  if (c.range) {
    const Range& r = *c.range;
    for (double v : {r.g_min, r.g_max, r.gp_min, r.gp_max}) {
      if (!std::isfinite(v)) throw UsageError("--range values must be finite");
    }
    if (!(r.g_min < r.g_max && r.gp_min < r.gp_max)) throw UsageError("--range needs g_min < g_max and gp_min < gp_max");
  }
}

Table env_map(const ScanConfig& config) {
  validate(config);
  const double w = config.omega();
  const Range r = config.resolved_range();
  const int n = config.grid_n;
  std::vector<std::vector<std::vector<Cell>>> blocks(n);
  parallel_for(n, [&](std::size_t i) {
    const double g = axis(r.g_min, r.g_max, n, static_cast<int>(i));
    auto& rows = blocks[i];
    rows.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double gp = axis(r.gp_min, r.gp_max, n, j);
      const EnvSpec spec{config.tau, w, g, gp};
      rows.push_back({g, gp, text(std::string(1, environment::class_code(environment::classify(spec))))});
    }
  });
  return flatten(std::move(blocks), {"g", "g_prime", "class"});
}

Table reactivation_map(const ScanConfig& config) {
  validate(config);
  if (!(config.tau < 1.0)) throw UsageError("reactivation-map needs --tau < 1");
  const double w = config.omega();
  const Range r = config.resolved_range();
  const int n = config.grid_n;
  const double inv_e = 1.0 / std::numbers::e;
  std::vector<std::vector<std::vector<Cell>>> blocks(n);
  parallel_for(n, [&](std::size_t i) {
    const double g = axis(r.g_min, r.g_max, n, static_cast<int>(i));
    auto& rows = blocks[i];
    rows.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double gp = axis(r.gp_min, r.gp_max, n, j);
      const EnvSpec spec{config.tau, w, g, gp};
      const auto cls = environment::classify(spec);
      const std::string code(1, environment::class_code(cls));
      if (cls == environment::EnvClass::Forbidden) {
        rows.push_back({g, gp, text(code), kNaN, false, false});
        continue;
      }
      const double eps = propagation::asymptotic_report(spec).eps;
      rows.push_back({g, gp, text(code), eps, eps < 1.0, eps < inv_e});
    }
  });
  return flatten(std::move(blocks), {"g", "g_prime", "class", "eps", "reactivated", "distillable"});
}

Table thresholds_table(Family family, const std::vector<double>& taus) {
  Table t;
  t.columns = {"tau", "omega_eb", "g_er", "g_ed", "g_max_sep", "g_max_phys"};
  for (double tau : taus) {
    if (!(tau > 0.0 && tau < 1.0)) throw UsageError("every tau must lie in (0, 1)");
    const auto th = environment::thresholds(family, tau);
    const double limit = th.g_max_physical * (1.0 + 1e-12);
    auto capped = [&](double g) { return g > limit ? text("none") : Cell(g); };
    t.rows.push_back({tau, environment::omega_eb(tau), capped(th.g_er), capped(th.g_ed), th.g_max_separable,
                      th.g_max_physical});
  }
  return t;
}

Table correlation_curves(Family family, double tau, int grid_n) {
  if (!(tau > 0.0 && tau < 1.0)) throw UsageError("--tau must lie in (0, 1)");
  if (grid_n < 2 || grid_n > kMaxGrid) throw UsageError("--grid must lie in [2, 4001]");
  const double w = environment::omega_eb(tau);
  const auto th = environment::thresholds(family, tau);
  auto row = [&](const char* kind, double g) -> std::vector<Cell> {
    const EnvSpec spec{tau, w, g, family == Family::SC ? g : -g};
    const double eps = propagation::eps_asymptotic(spec);
    const auto b = environment::correlation_budget(spec, environment::BudgetMethod::ClosedForm);
    return {text(kind), g, eps, log_negativity(eps), b.classical_c, b.discord_d, b.mutual_i};
  };
  Table t;
  t.columns = {"kind", "g", "eps", "N_ebits", "C_cbits", "D_dbits", "I_bits"};
  t.rows.resize(grid_n);
  parallel_for(grid_n, [&](std::size_t i) {
    t.rows[i] = row("curve", axis(0.0, th.g_max_physical, grid_n, static_cast<int>(i)));
  });
  if (family == Family::AC || tau > 2.0 / 3.0) t.rows.push_back(row("critical", th.g_er));
  return t;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      const Cell& cell = row[c];
      if (const double* d = std::get_if<double>(&cell)) {
        out += format_number(*d);
      } else if (const bool* b = std::get_if<bool>(&cell)) {
        out += *b ? '1' : '0';
      } else {
        out += std::get<std::string>(cell);
      }
    }
    out += '\n';
  }
  return out;
}

ordered_json table_to_json(const Table& table, const ordered_json& config) {
  ordered_json columns = ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    ordered_json values = ordered_json::array();
    for (const auto& row : table.rows) values.push_back(cell_json(row[c]));
    columns[table.columns[c]] = std::move(values);
  }
  ordered_json doc;
  doc["config"] = config;
  doc["columns"] = std::move(columns);
  return doc;
}

namespace {

struct Output {
  std::string format = "csv";
  std::string path;
  bool print_config = false;
};

struct ScanFlags {
  std::optional<double> tau;
  std::string omega;
  std::optional<double> nbar;
  int grid = 401;
  std::string range = "auto";
  std::uint64_t seed = 0;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "write to FILE instead of stdout");
  cmd->add_flag("--print-config", o.print_config, "echo the resolved configuration to stderr");
}

Format to_format(const std::string& s) { return s == "json" ? Format::Json : Format::Csv; }

ScanConfig resolve(const ScanFlags& f, const std::string& default_omega, const Output& o) {
  ScanConfig c;
  c.tau = f.tau.value_or(0.0);
  const std::string omega = f.omega.empty() ? default_omega : f.omega;
  if (f.nbar) {
    if (!f.omega.empty()) throw UsageError("give --omega or --nbar, not both");
    if (!(*f.nbar >= 0.0)) throw UsageError("--nbar must be >= 0");
    c.omega_value = environment::omega_from_nbar(*f.nbar);
  } else if (omega == "eb") {
    if (!f.tau) throw UsageError("--omega eb needs --tau");
    c.omega_eb = true;
  } else {
    c.omega_value = parse_number(omega, "--omega");
  }
  c.grid_n = f.grid;
  if (f.range != "auto") {
    const auto v = parse_list(f.range, "--range");
    if (v.size() != 4) throw UsageError("--range needs g_min,g_max,gp_min,gp_max or auto");
    c.range = Range{v[0], v[1], v[2], v[3]};
  }
  c.format = to_format(o.format);
  c.seed = f.seed;
  validate(c);
  return c;
}

void emit(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw UsageError("cannot open " + o.path + " for writing");
  file << text;
  if (!file) throw UsageError("failed writing " + o.path);
}

void emit_table(const Table& t, ordered_json config, const Output& o, std::ostream& out, std::ostream& err) {
  if (o.print_config) err << config.dump(2) << '\n';
  if (o.format == "json") {
    emit(table_to_json(t, config).dump() + "\n", o, out);
  } else {
    emit(to_csv(t), o, out);
  }
}

// Reports carry a "pass" field; a failed assertion maps to exit code 1.
int emit_report(const ordered_json& report, const Output& o, std::ostream& out, std::ostream& err) {
  if (o.print_config) err << report["config"].dump(2) << '\n';
  emit(report.dump(2) + "\n", o, out);
  return report.value("pass", true) ? 0 : 1;
}

std::array<double, 4> four_probs(const std::string& s) {
  const auto v = parse_list(s, "--p");
  if (v.size() != 4) throw UsageError("--p needs four comma-separated probabilities");
  return {v[0], v[1], v[2], v[3]};
}

ordered_json spectrum_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

struct QuditFlags {
  int d = 2;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::string mode = "uu";
  std::string method = "design";
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string probs;
  std::string clifford;
  std::string state_path;
  bool emit_state = false;
  int da = 2, db = 2;
  double tolerance = 5e-3;
};

qudit::DensityMatrix family_state(const std::string& family, const QuditFlags& f, ordered_json& config) {
  config["state"] = family;
  config["d"] = f.d;
  if (family == "werner") {
    if (f.gamma && f.mu) throw UsageError("give --gamma or --mu, not both");
    if (f.gamma) {
      if (f.d != 2) throw UsageError("--gamma parametrizes the two-qubit Werner state; use --mu for d > 2");
      config["gamma"] = *f.gamma;
      return qudit::qubit_werner(*f.gamma);
    }
    if (!f.mu) throw UsageError("werner needs --gamma (d = 2) or --mu");
    config["mu"] = *f.mu;
    return qudit::werner_state(f.d, *f.mu);
  }
  if (!f.gamma) throw UsageError("isotropic needs --gamma");
  config["gamma"] = *f.gamma;
  return qudit::isotropic_state(f.d, *f.gamma);
}

ordered_json state_report(const std::string& family, const QuditFlags& f) {
  ordered_json report;
  ordered_json config;
  const qudit::DensityMatrix rho = family_state(family, f, config);
  const double min_pt = qudit::min_pt_eigenvalue(rho);
  bool npt_expected = false;
  if (family == "werner") {
    const double mu = f.gamma ? -2.0 * *f.gamma / (1.0 + *f.gamma) : *f.mu;
    npt_expected = mu < -1.0 / f.d;
  } else {
    npt_expected = *f.gamma > 1.0 / (1.0 + f.d);
  }
  const double tol = 1e-10;
  report["config"] = config;
  report["operation"] = "state";
  report["min_pt_eigenvalue"] = min_pt;
  report["ppt"] = min_pt >= -tol;
  report["npt_expected"] = npt_expected;
  bool pass = (min_pt < -tol) == npt_expected || std::abs(min_pt) <= tol;
  if (family == "werner" && f.gamma) {
    const double expected = (1.0 - 3.0 * *f.gamma) / 4.0;
    report["expected_min_pt_eigenvalue"] = expected;
    pass = pass && std::abs(min_pt - expected) <= 1e-12;
  }
  report["pass"] = pass;
  if (f.emit_state) report["state"] = qudit::state_to_json(rho);
  return report;
}

ordered_json twirl_report(const std::string& family, const QuditFlags& f) {
  ordered_json config;
  const qudit::DensityMatrix rho = family_state(family, f, config);
  if (f.mode != "uu" && f.mode != "uustar") throw UsageError("--mode must be uu or uustar");
  if (f.method != "design" && f.method != "haar") throw UsageError("--method must be design or haar");
  const auto mode = f.mode == "uu" ? qudit::TwirlMode::UU : qudit::TwirlMode::UUstar;
  const auto method = f.method == "design" ? qudit::TwirlMethod::design() : qudit::TwirlMethod::haar_mc(f.samples, f.seed);
  config["mode"] = f.mode;
  config["method"] = f.method;
  if (f.method == "haar") {
    config["samples"] = f.samples;
    config["seed"] = f.seed;
  }
  const qudit::DensityMatrix out = qudit::twirl(rho, mode, method);
  const double deviation = (out.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
  const double distance = qudit::trace_distance(out.matrix(), rho.matrix());
  const bool exact = f.method == "design";
  const bool fixed = exact ? deviation < 1e-12 : distance < f.tolerance;
  // Werner states are U x U fixed points, isotropic states U x U* fixed points.
  const bool asserted = (family == "werner") == (mode == qudit::TwirlMode::UU);

  ordered_json report;
  report["config"] = config;
  report["operation"] = "twirl";
  report["max_deviation"] = deviation;
  report["trace_distance"] = distance;
  report["fixed_point"] = fixed;
  report["invariance_asserted"] = asserted;
  if (f.d == 2 && exact) {
    const auto via_pt = qudit::twirl_uustar_via_pt(rho.matrix(), rho.dims(), method);
    const auto direct = qudit::twirl(rho.matrix(), rho.dims(), qudit::TwirlMode::UUstar, method);
    report["uustar_pt_path_deviation"] = (via_pt - direct).cwiseAbs().maxCoeff();
  }
  report["pass"] = !asserted || fixed;
  if (f.emit_state) report["state"] = qudit::state_to_json(out);
  return report;
}

ordered_json depolarize_report(const QuditFlags& f) {
  const auto probs = four_probs(f.probs);
  const qudit::DensityMatrix out = qudit::one_side_depolarize(qudit::triplet_state(), probs);
  Eigen::VectorXd spectrum = qudit::hermitian_eigenvalues(qudit::partial_transpose(out, qudit::Subsystem::B));
  Eigen::VectorXd expected(4);
  for (int k = 0; k < 4; ++k) expected(k) = 0.5 - probs[k];
  std::sort(expected.data(), expected.data() + 4);
  const double deviation = (spectrum - expected).cwiseAbs().maxCoeff();
  const bool eb = qudit::depolarizing_is_entanglement_breaking(probs);
  const double min_pt = spectrum(0);

  ordered_json report;
  report["config"] = {{"input", "triplet"}, {"p", probs}};
  report["operation"] = "depolarize";
  report["EB"] = eb;
  report["minPT"] = min_pt;
  report["ppt"] = min_pt >= -1e-10;
  report["pt_spectrum"] = spectrum_json(spectrum);
  report["expected_pt_spectrum"] = spectrum_json(expected);
  report["max_deviation"] = deviation;
  report["pass"] = deviation <= 1e-12 && eb == (min_pt >= -1e-12);
  if (f.emit_state) report["state"] = qudit::state_to_json(out);
  return report;
}

ordered_json dephase_report(const QuditFlags& f) {
  ordered_json config;
  std::optional<qudit::DensityMatrix> rho;
  if (!f.state_path.empty()) {
    std::ifstream in(f.state_path);
    if (!in) throw UsageError("cannot open " + f.state_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad JSON in --state: ") + e.what());
    }
    rho = qudit::density_matrix_from_json(doc);
    config["state"] = f.state_path;
  } else {
    std::mt19937_64 rng(f.seed);
    rho = qudit::random_density_matrix({f.d, f.d}, rng);
    config["d"] = f.d;
    config["seed"] = f.seed;
  }
  const qudit::DensityMatrix out = qudit::fock_dephase(*rho);
  const double min_pt = qudit::min_pt_eigenvalue(out);
  const bool idempotent = (qudit::fock_dephase(out).matrix() - out.matrix()).cwiseAbs().maxCoeff() == 0.0;

  ordered_json report;
  report["config"] = config;
  report["operation"] = "dephase";
  report["min_pt_eigenvalue"] = min_pt;
  report["PPT"] = min_pt >= -1e-10;
  report["idempotent"] = idempotent;
  report["pass"] = min_pt >= -1e-10 && idempotent;
  if (f.emit_state) report["state"] = qudit::state_to_json(out);
  return report;
}

ordered_json dilate_report(const QuditFlags& f) {
  ordered_json config;
  std::optional<qudit::KrausChannel> channel;
  if (!f.clifford.empty()) {
    if (!f.probs.empty()) throw UsageError("give --p or --clifford, not both");
    if (f.clifford != "uu" && f.clifford != "uustar") throw UsageError("--clifford must be uu or uustar");
    channel = qudit::KrausChannel::clifford_twirl(f.clifford == "uu" ? qudit::TwirlMode::UU : qudit::TwirlMode::UUstar);
    config["channel"] = "clifford-" + f.clifford;
  } else {
    const auto probs = four_probs(f.probs.empty() ? "0.25,0.25,0.25,0.25" : f.probs);
    channel = qudit::KrausChannel::correlated_pauli(probs);
    config["channel"] = "correlated-pauli";
    config["p"] = probs;
  }
  const qudit::DilationCheck check = qudit::dilate_and_check(*channel);
  ordered_json report;
  report["config"] = config;
  report["operation"] = "dilate-check";
  report["controls"] = check.dilation.controls;
  report["basis_operators"] = channel->dims().total() * channel->dims().total();
  report["max_deviation"] = check.max_deviation;
  report["matches"] = check.matches;
  report["env_zero_discord"] = check.env_zero_discord;
  report["pass"] = check.matches && check.env_zero_discord;
  return report;
}

ordered_json haar_average_report(const QuditFlags& f) {
  const qudit::Dims dims{f.da, f.db};
  qudit::check_dims(dims);
  std::mt19937_64 rng(f.seed);
  const qudit::DensityMatrix rho = qudit::random_density_matrix(dims, rng);
  const auto exact = qudit::partial_haar_average(rho.matrix(), dims);
  const auto sampled = qudit::partial_haar_average_mc(rho.matrix(), dims, f.samples, f.seed);
  const double distance = qudit::trace_distance(exact, sampled);
  ordered_json report;
  report["config"] = {{"dims", {f.da, f.db}}, {"samples", f.samples}, {"seed", f.seed}, {"tolerance", f.tolerance}};
  report["operation"] = "haar-average";
  report["trace_distance"] = distance;
  report["pass"] = distance < f.tolerance;
  return report;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlated-environment entanglement toolkit", "ebreak"};
  app.require_subcommand(1);

  Output output;
  ScanFlags scan;
  std::string family = "sc";
  std::string tau_grid = "0.05:0.95:0.05";
  std::optional<double> g, gp;
  std::string cm_path;
  std::string mu_text = "inf";
  QuditFlags qf;

  auto* env_cmd = app.add_subcommand("env-map", "classify environments over a (g, g') grid");
  auto* react_cmd = app.add_subcommand("reactivation-map", "asymptotic eps over a (g, g') grid");
  for (auto* cmd : {env_cmd, react_cmd}) {
    cmd->add_option("--tau", scan.tau, "beam-splitter transmissivity");
    cmd->add_option("--omega", scan.omega, "thermal variance, or 'eb' for (1+tau)/(1-tau)");
    cmd->add_option("--nbar", scan.nbar, "mean thermal photons (omega = 2 nbar + 1)");
    cmd->add_option("--grid", scan.grid, "points per axis");
    cmd->add_option("--range", scan.range, "g_min,g_max,gp_min,gp_max or auto");
    cmd->add_option("--seed", scan.seed);
    add_output_flags(cmd, output);
  }
  react_cmd->get_option("--tau")->required();

  auto* thr_cmd = app.add_subcommand("thresholds", "closed-form thresholds over a tau grid");
  thr_cmd->add_option("--family", family, "sc or ac")->required();
  thr_cmd->add_option("--tau-grid", tau_grid, "comma list or start:stop:step");
  add_output_flags(thr_cmd, output);

  int curve_grid = 201;
  auto* curves_cmd = app.add_subcommand("curves", "eps and correlation budget along a family at omega_EB");
  curves_cmd->add_option("--family", family, "sc or ac")->required();
  curves_cmd->add_option("--tau", scan.tau)->required();
  curves_cmd->add_option("--grid", curve_grid, "points in [0, g_max_phys]");
  add_output_flags(curves_cmd, output);

  auto* discord_cmd = app.add_subcommand("discord", "Gaussian discord of a CM file or an environment");
  discord_cmd->add_option("--cm", cm_path, "CM text file");
  discord_cmd->add_option("--omega", scan.omega);
  discord_cmd->add_option("--nbar", scan.nbar);
  discord_cmd->add_option("--g", g);
  discord_cmd->add_option("--gp", gp);
  add_output_flags(discord_cmd, output);

  auto* epr_cmd = app.add_subcommand("epr-variances", "EPR-quadrature variances of the two-mode output");
  epr_cmd->add_option("--tau", scan.tau)->required();
  epr_cmd->add_option("--omega", scan.omega, "number or eb (default)");
  epr_cmd->add_option("--mu", mu_text, "input EPR variance or inf");
  epr_cmd->add_option("--g", g);
  epr_cmd->add_option("--gp", gp);
  epr_cmd->add_option("--family", family, "sweep g along sc or ac instead of a single point");
  epr_cmd->add_option("--grid", scan.grid, "sweep points");
  add_output_flags(epr_cmd, output);

  auto* qudit_cmd = app.add_subcommand("qudit", "finite-dimensional checks (JSON reports)");
  qudit_cmd->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> state_cmds;
  for (const char* name : {"werner", "isotropic"}) {
    auto* c = qudit_cmd->add_subcommand(name, std::string(name) + " state; add 'twirl' to twirl it");
    c->add_option("--d", qf.d, "local dimension");
    c->add_option("--gamma", qf.gamma);
    if (std::string(name) == "werner") c->add_option("--mu", qf.mu);
    c->add_flag("--emit-state", qf.emit_state);
    add_output_flags(c, output);
    auto* t = c->add_subcommand("twirl", "apply a twirl and test invariance");
    t->add_option("--mode", qf.mode, "uu or uustar");
    t->add_option("--method", qf.method, "design or haar");
    t->add_option("--samples", qf.samples);
    t->add_option("--seed", qf.seed);
    t->add_option("--tolerance", qf.tolerance, "trace-distance tolerance for haar");
    state_cmds.emplace_back(name, c);
  }
  auto* depol_cmd = qudit_cmd->add_subcommand("depolarize", "one-side Pauli channel on the triplet");
  depol_cmd->add_option("--p", qf.probs, "p_I,p_X,p_Y,p_Z")->required();
  depol_cmd->add_flag("--emit-state", qf.emit_state);
  add_output_flags(depol_cmd, output);
  auto* dephase_cmd = qudit_cmd->add_subcommand("dephase", "number-basis dephasing of subsystem A");
  dephase_cmd->add_option("--d", qf.d);
  dephase_cmd->add_option("--seed", qf.seed);
  dephase_cmd->add_option("--state", qf.state_path, "density-matrix JSON instead of a random state");
  dephase_cmd->add_flag("--emit-state", qf.emit_state);
  add_output_flags(dephase_cmd, output);
  auto* dilate_cmd = qudit_cmd->add_subcommand("dilate-check", "control-unitary dilation vs Kraus sum");
  dilate_cmd->add_option("--p", qf.probs, "correlated Pauli probabilities");
  dilate_cmd->add_option("--clifford", qf.clifford, "uu or uustar: 24-element Clifford twirl");
  add_output_flags(dilate_cmd, output);
  auto* haar_cmd = qudit_cmd->add_subcommand("haar-average", "partial Haar average, exact vs sampled");
  haar_cmd->add_option("--da", qf.da);
  haar_cmd->add_option("--db", qf.db);
  haar_cmd->add_option("--samples", qf.samples);
  haar_cmd->add_option("--seed", qf.seed);
  haar_cmd->add_option("--tolerance", qf.tolerance);
  add_output_flags(haar_cmd, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (env_cmd->parsed() || react_cmd->parsed()) {
      const bool react = react_cmd->parsed();
      const ScanConfig config = resolve(scan, react ? "eb" : "2", output);
      ordered_json echo{{"command", react ? "reactivation-map" : "env-map"}};
      echo.update(config.config_json());
      emit_table(react ? reactivation_map(config) : env_map(config), echo, output, out, err);
      return 0;
    }
    if (thr_cmd->parsed()) {
      const auto taus = parse_grid(tau_grid, "--tau-grid");
      const Family fam = parse_family(family);
      emit_table(thresholds_table(fam, taus),
                 {{"command", "thresholds"}, {"family", family_name(fam)}, {"tau_grid", taus}}, output, out, err);
      return 0;
    }
    if (curves_cmd->parsed()) {
      const Family fam = parse_family(family);
      const double tau = *scan.tau;
      emit_table(correlation_curves(fam, tau, curve_grid),
                 {{"command", "curves"}, {"family", family_name(fam)}, {"tau", tau}, {"grid_n", curve_grid}}, output,
                 out, err);
      return 0;
    }
    if (discord_cmd->parsed()) {
      ordered_json echo{{"command", "discord"}};
      TwoModeCM cm;
      if (!cm_path.empty()) {
        if (g || gp || !scan.omega.empty() || scan.nbar) throw UsageError("--cm excludes environment flags");
        cm = read_cm_file(cm_path);
        echo["cm"] = cm_path;
      } else {
        const ScanConfig c = resolve(scan, "2", output);
        const EnvSpec spec{0.0, c.omega(), g.value_or(0.0), gp.value_or(0.0)};
        if (!environment::is_physical(spec)) throw UsageError("environment is not physical");
        cm = environment::env_cm(spec);
        echo["omega"] = spec.omega;
        echo["g"] = spec.g;
        echo["g_prime"] = spec.g_prime;
      }
      if (!validate_cm(cm).physical()) throw UsageError("CM is not physical");
      const auto r = discord::gaussian_discord(cm);
      Table t;
      t.columns = {"entropy_s", "classical_c", "discord_d", "mutual_i", "lambda", "phi"};
      t.rows.push_back({r.budget.entropy_s, r.budget.classical_c, r.budget.discord_d, r.budget.mutual_i,
                        r.optimum.seed_variance, r.optimum.angle});
      emit_table(t, echo, output, out, err);
      return 0;
    }
    if (epr_cmd->parsed()) {
      const ScanConfig c = resolve(scan, "eb", output);
      const bool asymptotic = mu_text == "inf";
      const double mu = asymptotic ? 0.0 : parse_number(mu_text, "--mu");
      if (!asymptotic && !(mu >= 1.0)) throw UsageError("--mu must be >= 1 or inf");
      std::vector<std::pair<double, double>> points;
      ordered_json echo{{"command", "epr-variances"}, {"tau", c.tau}, {"omega", c.omega()}, {"mu", mu_text}};
      if (epr_cmd->count("--family")) {
        if (g || gp) throw UsageError("--family excludes --g/--gp");
        const Family fam = parse_family(family);
        const double gmax = fam == Family::SC ? c.omega() - 1.0 : std::sqrt(c.omega() * c.omega() - 1.0);
        for (int i = 0; i < c.grid_n; ++i) {
          const double gi = axis(0.0, gmax, c.grid_n, i);
          points.emplace_back(gi, fam == Family::SC ? gi : -gi);
        }
        echo["family"] = family_name(fam);
        echo["grid_n"] = c.grid_n;
      } else {
        points.emplace_back(g.value_or(0.0), gp.value_or(0.0));
      }
      Table t;
      t.columns = {"g", "g_prime", "vq_minus", "vp_plus", "epr_condition"};
      for (const auto& [gi, gpi] : points) {
        const EnvSpec spec{c.tau, c.omega(), gi, gpi};
        if (!environment::is_physical(spec)) throw UsageError("environment is not physical");
        const auto v = asymptotic ? propagation::epr_variances_asymptotic(spec)
                                  : propagation::epr_variances(propagation::EprInput(mu), spec);
        t.rows.push_back({gi, gpi, v.vq_minus, v.vp_plus, v.epr_condition()});
      }
      emit_table(t, echo, output, out, err);
      return 0;
    }
    if (qudit_cmd->parsed()) {
      for (const auto& [name, cmd] : state_cmds) {
        if (!cmd->parsed()) continue;
        const bool twirled = cmd->get_subcommand("twirl")->parsed();
        return emit_report(twirled ? twirl_report(name, qf) : state_report(name, qf), output, out, err);
      }
      if (depol_cmd->parsed()) return emit_report(depolarize_report(qf), output, out, err);
      if (dephase_cmd->parsed()) return emit_report(dephase_report(qf), output, out, err);
      if (dilate_cmd->parsed()) return emit_report(dilate_report(qf), output, out, err);
      if (haar_cmd->parsed()) return emit_report(haar_average_report(qf), output, out, err);
    }
  } catch (const UsageError& e) {
    err << "ebreak: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    // Library precondition failures triggered by flag values.
    err << "ebreak: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "ebreak: internal error: " << e.what() << '\n';
    return 1;
  }
  err << "ebreak: no command\n";
  return 2;
}

}  // namespace ebreak::cli
