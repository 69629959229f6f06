#include "ebreak/qudit_json.hpp"

#include "ebreak/errors.hpp"

namespace ebreak::qudit {

nlohmann::json matrix_to_json(const CMatrix& m, Dims dims) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"dims", {dims.a, dims.b}}, {"data", std::move(data)}};
}

nlohmann::json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix(), rho.dims()); }

DensityMatrix density_matrix_from_json(const nlohmann::json& doc) {
  try {
    const auto& d = doc.at("dims");
    if (!d.is_array() || d.size() != 2) throw DomainError("dims must be [d_A, d_B]");
    const Dims dims{d[0].get<int>(), d[1].get<int>()};
    check_dims(dims);
    const auto& data = doc.at("data");
    const int n = dims.total();
    if (!data.is_array() || data.size() != static_cast<std::size_t>(n) * n) {
      throw DimensionMismatchError("data must hold (d_A d_B)^2 entries");
    }
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const auto& z = data[static_cast<std::size_t>(r) * n + c];
        if (!z.is_array() || z.size() != 2) throw DomainError("entries must be [re, im]");
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    return DensityMatrix(dims, m);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed density matrix JSON: ") + e.what());
  }
}

}  // namespace ebreak::qudit
