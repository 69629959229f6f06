#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ebreak/environment.hpp"

namespace ebreak::cli {

enum class Format { Csv, Json };

struct Range {
  double g_min = 0.0, g_max = 0.0, gp_min = 0.0, gp_max = 0.0;
};

struct ScanConfig {
  double tau = 0.0;
  bool omega_eb = false;  // omega = omega_eb(tau)
  double omega_value = 2.0;
  int grid_n = 401;
  std::optional<Range> range;  // nullopt = auto, i.e. [-omega, omega]^2
  Format format = Format::Csv;
  std::uint64_t seed = 0;

  double omega() const;
  Range resolved_range() const;
  nlohmann::ordered_json config_json() const;
};

// Throws UsageError (exit code 2) on invalid values.
void validate(const ScanConfig& config);

using Cell = std::variant<double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// g, g_prime, class
Table env_map(const ScanConfig& config);
// g, g_prime, class, eps, reactivated, distillable (forbidden cells: eps = nan)
Table reactivation_map(const ScanConfig& config);
// tau, omega_eb, g_er, g_ed, g_max_sep, g_max_phys ("none" beyond g_max_phys)
Table thresholds_table(environment::Family family, const std::vector<double>& taus);
// kind, g, eps, N_ebits, C_cbits, D_dbits, I_bits over g in [0, g_max_phys],
// followed by one kind=critical row at g_ER when that threshold exists.
Table correlation_curves(environment::Family family, double tau, int grid_n);

// Header row, then one line per row; numbers with 12 significant digits.
std::string to_csv(const Table& table);
// {"config": ..., "columns": {name: [values...]}}
nlohmann::ordered_json table_to_json(const Table& table, const nlohmann::ordered_json& config);

// Exit codes: 0 success, 1 internal assertion failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ebreak::cli
