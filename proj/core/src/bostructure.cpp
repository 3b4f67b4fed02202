#include "optokerr/bostructure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

using cd = std::complex<double>;
using Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

void require_mirror(const MirrorModel& mirror) {
  if (!(mirror.mass > 0.0) || !(mirror.omega > 0.0) || !std::isfinite(mirror.coupling)) {
    throw InvalidParameter("mirror needs positive mass and frequency and finite coupling");
  }
}

}  // namespace

OperatorMatrix::OperatorMatrix(Basis basis, Eigen::MatrixXcd entries, bool hermitian)
    : basis_(basis), entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != entries_.cols()) throw InvalidParameter("operator matrix must be square");
  if (entries_.rows() < 2) throw InvalidParameter("operator matrix needs dim >= 2");
  if (hermitian_ && hermiticity_defect(entries_) > 1e-12) {
    throw InvalidParameter("matrix flagged hermitian is not");
  }
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigen::MatrixXcd annihilation(std::size_t dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(idx(dim), idx(dim));
  for (std::size_t n = 1; n < dim; ++n) a(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd number_operator(std::size_t dim) {
  Eigen::VectorXcd diag(idx(dim));
  for (std::size_t n = 0; n < dim; ++n) diag(idx(n)) = static_cast<double>(n);
  return diag.asDiagonal();
}

MirrorModel MirrorModel::from(const ReducedParams& rp) { return {1.0, rp.Omega, rp.g_red}; }

Eigen::MatrixXcd position_operator(const MirrorModel& mirror, std::size_t dim) {
  require_mirror(mirror);
  const Eigen::MatrixXcd a = annihilation(dim);
  return (a + a.adjoint()) / std::sqrt(2.0 * mirror.mass * mirror.omega);
}

Eigen::MatrixXcd momentum_operator(const MirrorModel& mirror, std::size_t dim) {
  require_mirror(mirror);
  const Eigen::MatrixXcd a = annihilation(dim);
  return cd(0.0, std::sqrt(mirror.mass * mirror.omega / 2.0)) * (a.adjoint() - a);
}

OperatorMatrix build_mirror_hamiltonian(const MirrorModel& mirror, int N, std::size_t dim) {
  require_mirror(mirror);
  if (N < 0) throw InvalidParameter("photon number must be nonnegative");
  if (dim < 8) {
    throw InvalidParameter("mirror truncation dim " + std::to_string(dim) + " is below 8");
  }
  Eigen::MatrixXcd h = -mirror.coupling * static_cast<double>(N) * position_operator(mirror, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    h(idx(n), idx(n)) += mirror.omega * (static_cast<double>(n) + 0.5);
  }
  return {Basis::MirrorNumber, std::move(h), true};
}

BOLevels bo_levels(const MirrorModel& mirror, int N, int n_max) {
  require_mirror(mirror);
  if (N < 0 || n_max < 0) throw InvalidParameter("N and n_max must be nonnegative");
  BOLevels out;
  out.N = N;
  const double shift = mirror.chi() * static_cast<double>(N) * static_cast<double>(N);
  for (int n = 0; n <= n_max; ++n) out.levels.push_back(mirror.omega * (n + 0.5) - shift);
  out.alpha = -mirror.coupling * N / std::sqrt(2.0 * mirror.mass * std::pow(mirror.omega, 3));
  return out;
}

double printed_alpha(const MirrorModel& mirror, int N) {
  require_mirror(mirror);
  const double g2 = mirror.coupling * mirror.coupling;
  return -std::sqrt(2.0 * g2 * N * N / (mirror.mass * std::pow(mirror.omega, 3)));
}

NumericLevels numeric_levels(const MirrorModel& mirror, int N, std::size_t count,
                             std::size_t min_dim, double tol) {
  constexpr std::size_t kStep = 40;
  constexpr std::size_t kMaxDim = 2000;
  std::size_t dim = std::max<std::size_t>({min_dim, 8, count + 1});

  const auto lowest = [&](std::size_t d) {
    const auto h = build_mirror_hamiltonian(mirror, N, d);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(),
                                                                 Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + count);
  };

  auto previous = lowest(dim);
  while (dim + kStep <= kMaxDim) {
    auto next = lowest(dim + kStep);
    double shift = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      shift = std::max(shift, std::abs(next[i] - previous[i]) /
                                  std::max(1.0, std::abs(next[i])));
    }
    dim += kStep;
    previous = std::move(next);
    if (shift < tol) break;
  }
  return {std::move(previous), dim};
}

OperatorMatrix effective_photon_hamiltonian(const ReducedParams& rp, std::size_t photon_dim) {
  rp.validate();
  if (photon_dim < 2) throw InvalidParameter("photon truncation needs dim >= 2");
  const Eigen::MatrixXcd a = annihilation(photon_dim);
  Eigen::MatrixXcd h = cd(0.0, rp.lam) * (a.adjoint() - a);
  for (std::size_t n = 0; n < photon_dim; ++n) {
    const double nd = static_cast<double>(n);
    h(idx(n), idx(n)) += rp.Delta * nd - rp.chi * nd * nd;
  }
  return {Basis::PhotonNumber, std::move(h), true};
}

Eigen::MatrixXcd displacement_operator(cd beta, std::size_t dim,
                                       DisplacementConvention convention) {
  if (dim < 2) throw InvalidParameter("displacement needs dim >= 2");
  if (convention == DisplacementConvention::AsWritten) beta *= cd(0.0, 1.0);
  const Eigen::MatrixXcd a = annihilation(dim);
  // Generator G = beta a^dagger - conj(beta) a is anti-Hermitian; K = i G is Hermitian.
  const Eigen::MatrixXcd k = cd(0.0, 1.0) * (beta * a.adjoint() - std::conj(beta) * a);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k);
  const Eigen::VectorXcd phases =
      (cd(0.0, -1.0) * solver.eigenvalues().cast<cd>()).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

double coherent_norm_in_truncation(cd beta, std::size_t dim) {
  const double b2 = std::norm(beta);
  if (b2 == 0.0) return 1.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    const double nd = static_cast<double>(n);
    sum += std::exp(-b2 + nd * std::log(b2) - std::lgamma(nd + 1.0));
  }
  return sum;
}

GroundStateCheck displaced_ground_state_check(const MirrorModel& mirror, int N, std::size_t dim,
                                              DisplacementConvention convention) {
  const auto h = build_mirror_hamiltonian(mirror, N, dim);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries());
  const Eigen::VectorXcd ground = solver.eigenvectors().col(0);

  const double alpha = bo_levels(mirror, N, 0).alpha;
  const cd beta = convention == DisplacementConvention::Standard ? cd(-alpha) : cd(alpha);
  const Eigen::VectorXcd coherent = displacement_operator(beta, dim, convention).col(0);

  GroundStateCheck out;
  out.fidelity = std::min(1.0, std::norm(ground.dot(coherent)));
  out.coherent_norm = coherent_norm_in_truncation(
      convention == DisplacementConvention::Standard ? beta : cd(0.0, 1.0) * beta, dim);
  out.truncation_sufficient = out.coherent_norm >= 1.0 - 1e-8;
  return out;
}

}  // namespace optokerr
