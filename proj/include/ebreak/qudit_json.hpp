#pragma once

#include <json.hpp>

#include "ebreak/qudit.hpp"

namespace ebreak::qudit {

// {"dims": [d_A, d_B], "data": [[re, im], ...]} with data in row-major order.
nlohmann::json state_to_json(const DensityMatrix& rho);
nlohmann::json matrix_to_json(const CMatrix& m, Dims dims);
// DomainError on malformed documents; state validation as in DensityMatrix.
DensityMatrix density_matrix_from_json(const nlohmann::json& doc);

}  // namespace ebreak::qudit
