#include "ebreak/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ebreak/errors.hpp"
#include "ebreak/parallel.hpp"

namespace ebreak::qudit {

namespace {

constexpr double kStateTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr std::size_t kChunk = 1024;
constexpr int kMaxTotalDim = 1024;

const Complex kI{0.0, 1.0};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

bool is_unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= kUnitaryTol;
}

void check_probs(const std::vector<double>& p) {
  if (p.empty()) throw BadProbabilitiesError("no weights");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw BadProbabilitiesError("negative or NaN weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw BadProbabilitiesError("weights must sum to 1");
}

void require_two_qubits(const DensityMatrix& rho) {
  if (!(rho.dims() == Dims{2, 2})) throw DimensionMismatchError("expected a two-qubit state");
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix twirl_unitary(const CMatrix& u, TwirlMode mode) {
  return mode == TwirlMode::UU ? kron(u, u) : kron(u, u.conjugate());
}

CMatrix phase_normalized(const CMatrix& u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Complex z = u.data()[i];
    if (std::abs(z) > 1e-9) return u * (std::conj(z) / std::abs(z));
  }
  return u;
}

std::vector<long long> matrix_key(const CMatrix& u) {
  std::vector<long long> key;
  key.reserve(2 * u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    key.push_back(std::llround(u.data()[i].real() * 1e8));
    key.push_back(std::llround(u.data()[i].imag() * 1e8));
  }
  return key;
}

}  // namespace

void check_dims(Dims dims) {
  if (dims.a < 1 || dims.b < 1 || dims.a > kMaxLocalDim || dims.b > kMaxLocalDim) {
    throw DimensionMismatchError("local dimensions must lie in [1, 8]");
  }
}

DensityMatrix::DensityMatrix(Dims dims, CMatrix matrix) : dims_(dims), matrix_(std::move(matrix)) {
  if (dims.a < 1 || dims.b < 1 || dims.total() > kMaxTotalDim) throw DimensionMismatchError("bad dimensions");
  if (matrix_.rows() != dims.total() || matrix_.cols() != dims.total()) {
    throw DimensionMismatchError("matrix size does not match d_A d_B");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTol) throw InvalidStateError("not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kStateTol) throw InvalidStateError("trace is not 1");
  matrix_ = hermitian_part(matrix_);
  const double lowest = is_diagonal(matrix_) ? matrix_.diagonal().real().minCoeff() : hermitian_eigenvalues(matrix_)(0);
  if (lowest < -kPsdTol) throw InvalidStateError("negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(Dims dims, const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidStateError("zero vector");
  const CVector v = psi / norm;
  return DensityMatrix(dims, v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  return DensityMatrix(dims, CMatrix::Identity(dims.total(), dims.total()) / static_cast<double>(dims.total()));
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& op, Dims dims, Subsystem which) {
  if (op.rows() != dims.total() || op.cols() != dims.total()) throw DimensionMismatchError("operator size");
  CMatrix out(op.rows(), op.cols());
  for (int i = 0; i < dims.a; ++i) {
    for (int j = 0; j < dims.b; ++j) {
      for (int k = 0; k < dims.a; ++k) {
        for (int l = 0; l < dims.b; ++l) {
          const Complex v = op(i * dims.b + j, k * dims.b + l);
          if (which == Subsystem::B) {
            out(i * dims.b + l, k * dims.b + j) = v;
          } else {
            out(k * dims.b + j, i * dims.b + l) = v;
          }
        }
      }
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& op, Dims dims, int which) {
  if (which != 0 && which != 1) throw BadSubsystemError("subsystem index must be 0 (A) or 1 (B)");
  return partial_transpose(op, dims, which == 0 ? Subsystem::A : Subsystem::B);
}

CMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
  return partial_transpose(rho.matrix(), rho.dims(), which);
}

CMatrix partial_trace(const CMatrix& op, Dims dims, Subsystem traced) {
  if (op.rows() != dims.total() || op.cols() != dims.total()) throw DimensionMismatchError("operator size");
  if (traced == Subsystem::A) {
    CMatrix out = CMatrix::Zero(dims.b, dims.b);
    for (int i = 0; i < dims.a; ++i) out += op.block(i * dims.b, i * dims.b, dims.b, dims.b);
    return out;
  }
  CMatrix out(dims.a, dims.a);
  for (int i = 0; i < dims.a; ++i) {
    for (int k = 0; k < dims.a; ++k) out(i, k) = op.block(i * dims.b, k * dims.b, dims.b, dims.b).trace();
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& op) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(op), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_pt_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose(rho, Subsystem::B))(0);
}

bool is_ppt(const DensityMatrix& rho, double tol) { return min_pt_eigenvalue(rho) >= -tol; }

double trace_distance(const CMatrix& x, const CMatrix& y) {
  return 0.5 * hermitian_eigenvalues(x - y).cwiseAbs().sum();
}

const std::array<CMatrix, 4>& paulis() {
  static const std::array<CMatrix, 4> p = [] {
    std::array<CMatrix, 4> out;
    out[0] = CMatrix::Identity(2, 2);
    out[1] = CMatrix::Zero(2, 2);
    out[1](0, 1) = out[1](1, 0) = 1.0;
    out[2] = CMatrix::Zero(2, 2);
    out[2](0, 1) = -kI;
    out[2](1, 0) = kI;
    out[3] = CMatrix::Zero(2, 2);
    out[3](0, 0) = 1.0;
    out[3](1, 1) = -1.0;
    return out;
  }();
  return p;
}

DensityMatrix pauli_channel(const DensityMatrix& rho, const std::array<double, 4>& probs) {
  require_two_qubits(rho);
  return KrausChannel::correlated_pauli(probs).apply(rho);
}

DensityMatrix one_side_depolarize(const DensityMatrix& rho, const std::array<double, 4>& probs) {
  require_two_qubits(rho);
  const std::vector<double> w(probs.begin(), probs.end());
  std::vector<CMatrix> id(4, CMatrix::Identity(2, 2));
  const std::vector<CMatrix> a(paulis().begin(), paulis().end());
  return KrausChannel({2, 2}, w, a, id).apply(rho);
}

bool depolarizing_is_entanglement_breaking(const std::array<double, 4>& probs) {
  check_probs(std::vector<double>(probs.begin(), probs.end()));
  return *std::max_element(probs.begin(), probs.end()) <= 0.5 + 1e-12;
}

CVector max_entangled_vector(int d) {
  check_dims({d, d});
  CVector v = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

DensityMatrix triplet_state() { return DensityMatrix::from_pure({2, 2}, max_entangled_vector(2)); }

DensityMatrix singlet_state() {
  CVector v = CVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure({2, 2}, v);
}

DensityMatrix qubit_werner(double gamma) {
  if (!(gamma >= -1.0 / 3.0 - 1e-15 && gamma <= 1.0)) throw ParamOutOfRangeError("gamma must lie in [-1/3, 1]");
  return DensityMatrix({2, 2}, (1.0 - gamma) * CMatrix::Identity(4, 4) / 4.0 + gamma * singlet_state().matrix());
}

CMatrix swap_operator(int d) {
  check_dims({d, d});
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

DensityMatrix werner_state(int d, double mu) {
  check_dims({d, d});
  if (!(mu >= -1.0 && mu <= 1.0)) throw ParamOutOfRangeError("mu must lie in [-1, 1]");
  if (d == 1 && mu == -1.0) throw ParamOutOfRangeError("mu = -1 is not a state for d = 1");
  const double norm = d * d + d * mu;
  return DensityMatrix({d, d}, (CMatrix::Identity(d * d, d * d) + mu * swap_operator(d)) / norm);
}

DensityMatrix isotropic_state(int d, double gamma) {
  check_dims({d, d});
  const double lo = d > 1 ? -1.0 / (d * d - 1.0) : 0.0;
  if (!(gamma >= lo - 1e-15 && gamma <= 1.0)) throw ParamOutOfRangeError("gamma outside [-1/(d^2-1), 1]");
  const CVector phi = max_entangled_vector(d);
  const double n = d * d;
  return DensityMatrix({d, d}, (1.0 - gamma) * CMatrix::Identity(d * d, d * d) / n + gamma * phi * phi.adjoint());
}

const std::vector<CMatrix>& clifford_group() {
  static const std::vector<CMatrix> group = [] {
    CMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    CMatrix s = CMatrix::Zero(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = kI;
    std::vector<CMatrix> out{CMatrix::Identity(2, 2)};
    std::map<std::vector<long long>, bool> seen{{matrix_key(out[0]), true}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const CMatrix* gen : {&h, &s}) {
        CMatrix next = phase_normalized(*gen * out[i]);
        if (seen.emplace(matrix_key(next), true).second) out.push_back(std::move(next));
      }
    }
    return out;
  }();
  return group;
}

std::mt19937_64 indexed_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

CVector random_pure_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

DensityMatrix random_density_matrix(Dims dims, std::mt19937_64& rng) {
  check_dims(dims);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = dims.total();
  CMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dims, hermitian_part(rho));
}

std::vector<CMatrix> twirl_batch(const std::vector<CMatrix>& ops, Dims dims, TwirlMode mode,
                                 const TwirlMethod& method) {
  check_dims(dims);
  if (dims.a != dims.b) throw DimensionMismatchError("twirling needs d_A = d_B");
  for (const CMatrix& op : ops) {
    if (op.rows() != dims.total() || op.cols() != dims.total()) throw DimensionMismatchError("operator size");
  }
  const int d = dims.a;
  std::vector<CMatrix> out(ops.size(), CMatrix::Zero(dims.total(), dims.total()));

  if (method.kind == TwirlMethod::Kind::Design) {
    if (d != 2) throw DesignUnavailableError("built-in 2-design exists only for d = 2");
    const auto& group = clifford_group();
    for (const CMatrix& c : group) {
      const CMatrix w = twirl_unitary(c, mode);
      for (std::size_t k = 0; k < ops.size(); ++k) out[k] += w * ops[k] * w.adjoint();
    }
    for (CMatrix& m : out) m /= static_cast<double>(group.size());
    return out;
  }

  if (method.samples == 0) throw DomainError("Monte Carlo twirl needs at least one sample");
  const std::size_t chunks = (method.samples + kChunk - 1) / kChunk;
  std::vector<std::vector<CMatrix>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<CMatrix> acc(ops.size(), CMatrix::Zero(dims.total(), dims.total()));
    const std::size_t end = std::min(method.samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      std::mt19937_64 rng = indexed_stream(method.seed, i);
      const CMatrix w = twirl_unitary(haar_unitary(d, rng), mode);
      for (std::size_t k = 0; k < ops.size(); ++k) acc[k] += w * ops[k] * w.adjoint();
    }
    partial[c] = std::move(acc);
  });
  for (const auto& acc : partial) {
    for (std::size_t k = 0; k < ops.size(); ++k) out[k] += acc[k];
  }
  for (CMatrix& m : out) m /= static_cast<double>(method.samples);
  return out;
}

CMatrix twirl(const CMatrix& op, Dims dims, TwirlMode mode, const TwirlMethod& method) {
  return twirl_batch({op}, dims, mode, method).front();
}

DensityMatrix twirl(const DensityMatrix& rho, TwirlMode mode, const TwirlMethod& method) {
  return DensityMatrix(rho.dims(), hermitian_part(twirl(rho.matrix(), rho.dims(), mode, method)));
}

CMatrix twirl_uustar_via_pt(const CMatrix& op, Dims dims, const TwirlMethod& method) {
  const CMatrix inner = twirl(partial_transpose(op, dims, Subsystem::B), dims, TwirlMode::UU, method);
  return partial_transpose(inner, dims, Subsystem::B);
}

CMatrix partial_haar_average(const CMatrix& op, Dims dims) {
  return kron(CMatrix::Identity(dims.a, dims.a) / static_cast<double>(dims.a), partial_trace(op, dims, Subsystem::A));
}

CMatrix partial_haar_average_mc(const CMatrix& op, Dims dims, std::size_t samples, std::uint64_t seed) {
  check_dims(dims);
  if (samples == 0) throw DomainError("need at least one sample");
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<CMatrix> partial(chunks);
  const CMatrix id_b = CMatrix::Identity(dims.b, dims.b);
  parallel_for(chunks, [&](std::size_t c) {
    CMatrix acc = CMatrix::Zero(op.rows(), op.cols());
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      std::mt19937_64 rng = indexed_stream(seed, i);
      const CMatrix w = kron(haar_unitary(dims.a, rng), id_b);
      acc += w * op * w.adjoint();
    }
    partial[c] = std::move(acc);
  });
  CMatrix out = CMatrix::Zero(op.rows(), op.cols());
  for (const CMatrix& acc : partial) out += acc;
  return out / static_cast<double>(samples);
}

KrausChannel::KrausChannel(Dims dims, std::vector<double> weights, std::vector<CMatrix> local_a,
                           std::vector<CMatrix> local_b)
    : dims_(dims), weights_(std::move(weights)), local_a_(std::move(local_a)), local_b_(std::move(local_b)) {
  check_dims(dims);
  check_probs(weights_);
  if (local_a_.size() != weights_.size() || local_b_.size() != weights_.size()) {
    throw DimensionMismatchError("one unitary pair per weight");
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (local_a_[k].rows() != dims.a || local_b_[k].rows() != dims.b) throw DimensionMismatchError("local size");
    if (!is_unitary(local_a_[k]) || !is_unitary(local_b_[k])) throw NotRandomUnitaryError("local map is not unitary");
  }
}

KrausChannel KrausChannel::general(Dims dims, std::vector<CMatrix> kraus_ops) {
  check_dims(dims);
  if (kraus_ops.empty()) throw DomainError("empty Kraus set");
  CMatrix sum = CMatrix::Zero(dims.total(), dims.total());
  for (const CMatrix& k : kraus_ops) {
    if (k.rows() != dims.total() || k.cols() != dims.total()) throw DimensionMismatchError("Kraus operator size");
    sum += k.adjoint() * k;
  }
  if ((sum - CMatrix::Identity(dims.total(), dims.total())).cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw DomainError("Kraus operators are not trace preserving");
  }
  KrausChannel ch;
  ch.dims_ = dims;
  ch.general_ = std::move(kraus_ops);
  return ch;
}

KrausChannel KrausChannel::correlated_pauli(const std::array<double, 4>& probs) {
  const std::vector<CMatrix> p(paulis().begin(), paulis().end());
  return KrausChannel({2, 2}, std::vector<double>(probs.begin(), probs.end()), p, p);
}

KrausChannel KrausChannel::clifford_twirl(TwirlMode mode) {
  const auto& group = clifford_group();
  std::vector<CMatrix> conj;
  conj.reserve(group.size());
  for (const CMatrix& c : group) conj.push_back(mode == TwirlMode::UU ? c : CMatrix(c.conjugate()));
  return KrausChannel({2, 2}, std::vector<double>(group.size(), 1.0 / group.size()), group, conj);
}

std::size_t KrausChannel::size() const { return random_unitary() ? weights_.size() : general_.size(); }

std::vector<CMatrix> KrausChannel::kraus_ops() const {
  if (!random_unitary()) return general_;
  std::vector<CMatrix> out;
  out.reserve(weights_.size());
  for (std::size_t k = 0; k < weights_.size(); ++k) out.push_back(std::sqrt(weights_[k]) * kron(local_a_[k], local_b_[k]));
  return out;
}

CMatrix KrausChannel::apply(const CMatrix& op) const {
  if (op.rows() != dims_.total() || op.cols() != dims_.total()) throw DimensionMismatchError("operator size");
  CMatrix out = CMatrix::Zero(op.rows(), op.cols());
  if (!random_unitary()) {
    for (const CMatrix& k : general_) out += k * op * k.adjoint();
    return out;
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] == 0.0) continue;
    const CMatrix w = kron(local_a_[k], local_b_[k]);
    out += weights_[k] * (w * op * w.adjoint());
  }
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (!(rho.dims() == dims_)) throw DimensionMismatchError("state dimensions differ from channel");
  return DensityMatrix(dims_, hermitian_part(apply(rho.matrix())));
}

CMatrix dilated_action(const ControlDilation& dil, const CMatrix& op, Dims dims) {
  const int k = dil.controls;
  const CMatrix& env = dil.env_state.matrix();
  auto block_a = [&](int m, int n) { return dil.control_a.block(m * dims.a, n * dims.a, dims.a, dims.a); };
  auto block_b = [&](int m, int n) { return dil.control_b.block(m * dims.b, n * dims.b, dims.b, dims.b); };

  // Nonzero coupling blocks per output row; a controlled unitary has one each.
  std::vector<std::vector<int>> nz_a(k), nz_b(k);
  for (int m = 0; m < k; ++m) {
    for (int n = 0; n < k; ++n) {
      if (block_a(m, n).cwiseAbs().maxCoeff() > 0.0) nz_a[m].push_back(n);
      if (block_b(m, n).cwiseAbs().maxCoeff() > 0.0) nz_b[m].push_back(n);
    }
  }

  CMatrix out = CMatrix::Zero(dims.total(), dims.total());
  for (int m1 = 0; m1 < k; ++m1) {
    for (int m2 = 0; m2 < k; ++m2) {
      std::vector<std::pair<int, CMatrix>> terms;
      for (int n1 : nz_a[m1]) {
        for (int n2 : nz_b[m2]) terms.emplace_back(n1 * k + n2, kron(block_a(m1, n1), block_b(m2, n2)));
      }
      for (const auto& [n, w] : terms) {
        for (const auto& [np, wp] : terms) {
          const Complex c = env(n, np);
          if (c == Complex(0.0, 0.0)) continue;
          out += c * (w * op * wp.adjoint());
        }
      }
    }
  }
  return out;
}

DilationCheck dilate_and_check(const KrausChannel& channel) {
  if (!channel.random_unitary()) throw NotRandomUnitaryError("dilation needs weights and unitary pairs");
  const Dims dims = channel.dims();
  const int k = static_cast<int>(channel.size());

  CMatrix env = CMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) env(i * k + i, i * k + i) = channel.weights()[i];
  CMatrix ca = CMatrix::Zero(k * dims.a, k * dims.a);
  CMatrix cb = CMatrix::Zero(k * dims.b, k * dims.b);
  for (int i = 0; i < k; ++i) {
    ca.block(i * dims.a, i * dims.a, dims.a, dims.a) = channel.local_a()[i];
    cb.block(i * dims.b, i * dims.b, dims.b, dims.b) = channel.local_b()[i];
  }
  DilationCheck out{ControlDilation{DensityMatrix({k, k}, env), ca, cb, k}};

  const int n = dims.total();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMatrix unit = CMatrix::Zero(n, n);
      unit(i, j) = 1.0;
      const double dev = (dilated_action(out.dilation, unit, dims) - channel.apply(unit)).cwiseAbs().maxCoeff();
      out.max_deviation = std::max(out.max_deviation, dev);
    }
  }
  out.matches = out.max_deviation <= 1e-12;
  out.env_zero_discord = is_diagonal(out.dilation.env_state.matrix());
  return out;
}

DensityMatrix fock_dephase(const DensityMatrix& rho) {
  const Dims dims = rho.dims();
  CMatrix out = rho.matrix();
  for (int r = 0; r < dims.total(); ++r) {
    for (int c = 0; c < dims.total(); ++c) {
      if (r / dims.b != c / dims.b) out(r, c) = 0.0;
    }
  }
  return DensityMatrix(dims, out);
}

}  // namespace ebreak::qudit
