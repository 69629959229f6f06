#pragma once

namespace ebreak {

// Entropic correlation content of a two-mode state. mutual_i = C + D.
struct CorrelationBudget {
  double entropy_s = 0.0;    // bits
  double classical_c = 0.0;  // cbits
  double discord_d = 0.0;    // dbits
  double mutual_i = 0.0;     // bits
};

}  // namespace ebreak
