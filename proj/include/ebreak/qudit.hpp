#pragma once

// Finite-dimensional bipartite states, correlated random-unitary channels,
// twirling and separability checks. Basis index of |i>_A |j>_B is i * d_B + j.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace ebreak::qudit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxLocalDim = 8;

struct Dims {
  int a = 2;
  int b = 2;

  int total() const { return a * b; }
  bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

// Hermitian and unit trace to 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  // InvalidStateError if the matrix is not a state, DimensionMismatchError if
  // its size is not d_A d_B or a local dimension lies outside [1, 8].
  DensityMatrix(Dims dims, CMatrix matrix);

  static DensityMatrix from_pure(Dims dims, const CVector& psi);
  static DensityMatrix maximally_mixed(Dims dims);

  Dims dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  Dims dims_;
  CMatrix matrix_;
};

void check_dims(Dims dims);

CMatrix kron(const CMatrix& x, const CMatrix& y);
CMatrix partial_transpose(const CMatrix& op, Dims dims, Subsystem which);
// 0 = A, 1 = B; BadSubsystemError otherwise.
CMatrix partial_transpose(const CMatrix& op, Dims dims, int which);
CMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);
CMatrix partial_trace(const CMatrix& op, Dims dims, Subsystem traced);

// Ascending eigenvalues of the Hermitian part.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& op);
double min_pt_eigenvalue(const DensityMatrix& rho);
bool is_ppt(const DensityMatrix& rho, double tol = 1e-10);
// (1/2) ||x - y||_1 for Hermitian x - y.
double trace_distance(const CMatrix& x, const CMatrix& y);

// I, X, Y, Z.
const std::array<CMatrix, 4>& paulis();

// Sum p_k (P_k x P_k) rho (P_k x P_k)^dag on two qubits.
DensityMatrix pauli_channel(const DensityMatrix& rho, const std::array<double, 4>& probs);
// Sum p_k (P_k x I) rho (P_k x I)^dag.
DensityMatrix one_side_depolarize(const DensityMatrix& rho, const std::array<double, 4>& probs);
// max p_k <= 1/2.
bool depolarizing_is_entanglement_breaking(const std::array<double, 4>& probs);

// (|00> + |11>)/sqrt2 and (|01> - |10>)/sqrt2.
DensityMatrix triplet_state();
DensityMatrix singlet_state();
// (1 - gamma) I/4 + gamma |singlet><singlet|, gamma in [-1/3, 1].
DensityMatrix qubit_werner(double gamma);
// (I + mu F) / (d^2 + d mu), mu in [-1, 1].
DensityMatrix werner_state(int d, double mu);
// (1 - gamma) I/d^2 + gamma |Phi><Phi|, gamma in [-1/(d^2 - 1), 1].
DensityMatrix isotropic_state(int d, double gamma);
CMatrix swap_operator(int d);
CVector max_entangled_vector(int d);

enum class TwirlMode { UU, UUstar };

struct TwirlMethod {
  enum class Kind { HaarMC, Design };
  Kind kind = Kind::Design;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static TwirlMethod design() { return {}; }
  static TwirlMethod haar_mc(std::size_t samples, std::uint64_t seed) { return {Kind::HaarMC, samples, seed}; }
};

// Average of (U x U) op (U x U)^dag, or with U* on B. Design needs d = 2
// (DesignUnavailableError otherwise); both need d_A = d_B
// (DimensionMismatchError). Monte Carlo sample i uses its own RNG stream
// derived from (seed, i) and partial sums are added in index order, so the
// result does not depend on the number of workers.
CMatrix twirl(const CMatrix& op, Dims dims, TwirlMode mode, const TwirlMethod& method);
DensityMatrix twirl(const DensityMatrix& rho, TwirlMode mode, const TwirlMethod& method);
// Several operators against the same sampled unitaries.
std::vector<CMatrix> twirl_batch(const std::vector<CMatrix>& ops, Dims dims, TwirlMode mode,
                                 const TwirlMethod& method);
// PT_B o twirl_UU o PT_B.
CMatrix twirl_uustar_via_pt(const CMatrix& op, Dims dims, const TwirlMethod& method);

// Single-qubit Clifford group modulo phase (24 elements).
const std::vector<CMatrix>& clifford_group();

// QR of a complex Ginibre matrix with the R-diagonal phases removed.
CMatrix haar_unitary(int d, std::mt19937_64& rng);
// G G^dag / tr for complex Gaussian G.
DensityMatrix random_density_matrix(Dims dims, std::mt19937_64& rng);
CVector random_pure_vector(int dim, std::mt19937_64& rng);
// Deterministic per-index stream for parallel sampling.
std::mt19937_64 indexed_stream(std::uint64_t seed, std::uint64_t index);

// (I/d_A) x Tr_A(op).
CMatrix partial_haar_average(const CMatrix& op, Dims dims);
CMatrix partial_haar_average_mc(const CMatrix& op, Dims dims, std::size_t samples, std::uint64_t seed);

// Either a correlated random-unitary channel sum_k p_k (U_k x V_k) . (U_k x V_k)^dag
// or, via general(), an arbitrary Kraus set.
class KrausChannel {
 public:
  // BadProbabilitiesError for bad weights, NotRandomUnitaryError if some
  // U_k or V_k is not unitary to 1e-10, DimensionMismatchError on sizes.
  KrausChannel(Dims dims, std::vector<double> weights, std::vector<CMatrix> local_a, std::vector<CMatrix> local_b);
  // DomainError unless sum K^dag K = I to 1e-10.
  static KrausChannel general(Dims dims, std::vector<CMatrix> kraus_ops);

  static KrausChannel correlated_pauli(const std::array<double, 4>& probs);
  static KrausChannel clifford_twirl(TwirlMode mode);

  Dims dims() const { return dims_; }
  bool random_unitary() const { return !weights_.empty(); }
  std::size_t size() const;
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<CMatrix>& local_a() const { return local_a_; }
  const std::vector<CMatrix>& local_b() const { return local_b_; }
  // Kraus operators sqrt(p_k) U_k x V_k (or the general set).
  std::vector<CMatrix> kraus_ops() const;

  CMatrix apply(const CMatrix& op) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  KrausChannel() = default;
  Dims dims_;
  std::vector<double> weights_;
  std::vector<CMatrix> local_a_;
  std::vector<CMatrix> local_b_;
  std::vector<CMatrix> general_;
};

// Environment E1 E2 prepared in sum_k p_k |k><k| x |k><k|, coupled to A and B
// by the control unitaries sum_k |k><k| x U_k and sum_k |k><k| x V_k.
struct ControlDilation {
  DensityMatrix env_state;
  CMatrix control_a;  // (K d_A) square
  CMatrix control_b;  // (K d_B) square
  int controls = 0;
};

struct DilationCheck {
  ControlDilation dilation;
  double max_deviation = 0.0;  // over all matrix units |i><j|
  bool matches = false;        // max_deviation <= 1e-12
  bool env_zero_discord = false;
};

// Tr_E[W (rho_E x op) W^dag] evaluated block by block, for any env state and
// any (block-structured) coupling unitaries.
CMatrix dilated_action(const ControlDilation& dilation, const CMatrix& op, Dims dims);

// NotRandomUnitaryError for channels built with general().
DilationCheck dilate_and_check(const KrausChannel& channel);

// Removes coherences between different number states of A.
DensityMatrix fock_dephase(const DensityMatrix& rho);

}  // namespace ebreak::qudit
