#include "optokerr/qnd.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

using cd = std::complex<double>;
using Eigen::Index;

constexpr double kTwoPi = 2.0 * constants::kPi;

double wrap_positive(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

template <class F>
OperatorMatrix diagonal_tensor(const QndParams& q, F&& entry) {
  q.validate();
  const auto n = static_cast<Index>(q.dimL * q.dimR);
  Eigen::VectorXcd diag(n);
  for (std::size_t l = 0; l < q.dimL; ++l) {
    for (std::size_t r = 0; r < q.dimR; ++r) {
      diag(static_cast<Index>(l * q.dimR + r)) =
          entry(static_cast<double>(l), static_cast<double>(r));
    }
  }
  return {Basis::Tensor, diag.asDiagonal(), true};
}

}  // namespace

double QndParams::cross() const { return chiCross.value_or(2.0 * std::sqrt(chiL * chiR)); }
double QndParams::coupling() const { return chi.value_or(std::sqrt(chiL * chiR)); }

void QndParams::validate() const {
  if (!(chiL >= 0.0) || !(chiR >= 0.0)) throw InvalidParameter("chiL and chiR must be >= 0");
  if (!std::isfinite(deltaL) || !std::isfinite(deltaR)) {
    throw InvalidParameter("detunings must be finite");
  }
  if (dimL < 2 || dimR < 2) throw InvalidParameter("tensor truncations need dims >= 2");
  if (crossSign != 1 && crossSign != -1) throw InvalidParameter("cross sign must be +1 or -1");
  if (chiCross && !std::isfinite(*chiCross)) throw InvalidParameter("chiCross must be finite");
  if (chi && !std::isfinite(*chi)) throw InvalidParameter("chi must be finite");
}

OperatorMatrix build_h_eff(const QndParams& q) {
  const double cross = q.crossSign * q.cross();
  return diagonal_tensor(q, [&](double nl, double nr) {
    return cd(-(q.chiL * nl * nl + q.chiR * nr * nr + cross * nl * nr));
  });
}

OperatorMatrix build_h_qnd(const QndParams& q) {
  const double chi = q.coupling();
  return diagonal_tensor(q, [&](double nl, double nr) {
    return cd(q.deltaL * nl + q.deltaR * nr + 2.0 * chi * nl * nr);
  });
}

Eigen::MatrixXcd signal_number(const QndParams& q) {
  return Eigen::kroneckerProduct(number_operator(q.dimL),
                                 Eigen::MatrixXcd::Identity(static_cast<Index>(q.dimR),
                                                            static_cast<Index>(q.dimR)));
}

Eigen::MatrixXcd probe_number(const QndParams& q) {
  return Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(static_cast<Index>(q.dimL),
                                                            static_cast<Index>(q.dimL)),
                                 number_operator(q.dimR));
}

Eigen::MatrixXcd signal_drive(const QndParams& q, double lam) {
  const Eigen::MatrixXcd a = annihilation(q.dimL);
  const Eigen::MatrixXcd drive = cd(0.0, lam) * (a.adjoint() - a);
  return Eigen::kroneckerProduct(drive, Eigen::MatrixXcd::Identity(static_cast<Index>(q.dimR),
                                                                   static_cast<Index>(q.dimR)));
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

CommutatorNorms commutator_norms(const QndParams& q, const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd nl = signal_number(q);
  const Eigen::MatrixXcd nr = probe_number(q);
  return {spectral_norm(h * nl - nl * h), spectral_norm(h * nr - nr * h)};
}

CommutatorNorms qnd_commutator_norms(const QndParams& q) {
  return commutator_norms(q, build_h_qnd(q).entries());
}

double probe_phase_shift(const QndParams& q, int nL, double t) {
  q.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("time must be finite and >= 0");
  if (nL < 0) throw InvalidParameter("photon number must be nonnegative");
  return wrap_positive((q.deltaR + 2.0 * q.coupling() * nL) * t);
}

Eigen::VectorXcd evolve_diagonal(const OperatorMatrix& h, const Eigen::VectorXcd& psi, double t) {
  const Eigen::VectorXcd diag = h.entries().diagonal();
  if (!h.entries().isDiagonal(0.0)) throw InvalidParameter("exact phase propagation needs a diagonal H");
  Eigen::VectorXcd out(psi.size());
  for (Index i = 0; i < psi.size(); ++i) out(i) = std::exp(cd(0.0, -t) * diag(i)) * psi(i);
  return out;
}

Eigen::VectorXcd signal_fock_probe_coherent(const QndParams& q, int nL, cd beta) {
  q.validate();
  if (nL < 0 || static_cast<std::size_t>(nL) >= q.dimL) {
    throw InvalidParameter("signal photon number outside the truncation");
  }
  Eigen::VectorXcd probe(static_cast<Index>(q.dimR));
  const double b2 = std::norm(beta);
  cd term = std::exp(-0.5 * b2);
  for (std::size_t n = 0; n < q.dimR; ++n) {
    if (n > 0) term *= beta / std::sqrt(static_cast<double>(n));
    probe(static_cast<Index>(n)) = term;
  }
  probe.normalize();
  Eigen::VectorXcd signal = Eigen::VectorXcd::Zero(static_cast<Index>(q.dimL));
  signal(nL) = 1.0;
  return Eigen::kroneckerProduct(signal, probe);
}

PropagatedPhase propagated_probe_phase(const QndParams& q, int nL, cd beta, double t) {
  if (std::abs(beta) == 0.0) throw InvalidParameter("probe amplitude must be nonzero");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("time must be finite and >= 0");
  const auto h = build_h_qnd(q);
  const Eigen::VectorXcd psi = evolve_diagonal(h, signal_fock_probe_coherent(q, nL, beta), t);
  const Eigen::MatrixXcd ar = Eigen::kroneckerProduct(
      Eigen::MatrixXcd::Identity(static_cast<Index>(q.dimL), static_cast<Index>(q.dimL)),
      annihilation(q.dimR));
  const cd expectation = psi.dot(ar * psi);

  PropagatedPhase out;
  out.phase = wrap_positive(-std::arg(expectation / beta));
  out.truncation_sufficient = coherent_norm_in_truncation(beta, q.dimR) >= 1.0 - 1e-8;
  return out;
}

double wrap_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -constants::kPi) d += kTwoPi;
  return d;
}

}  // namespace optokerr
