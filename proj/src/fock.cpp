#include "su11/fock.hpp"

#include "su11/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace su11 {
namespace {

void check_leakage(const FockState& state, const char* what) {
  if (state.leakage() > kLeakTolerance) {
    throw CutoffTooSmallError(std::string(what) + ": cutoff " + std::to_string(state.cutoff()) +
                                  " loses probability " + std::to_string(state.leakage()),
                              state.cutoff(), state.leakage());
  }
}

std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff) {
  std::vector<cplx> c(cutoff + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
  return c;
}

// Even-photon series sqrt(sech r) sum (e^{i theta} tanh r)^n sqrt((2n)!)/(2^n n!).
std::vector<cplx> squeezed_amplitudes(double r, double theta_s, int cutoff) {
  std::vector<cplx> c(cutoff + 1, cplx{0.0, 0.0});
  const cplx ratio = std::polar(std::tanh(r), theta_s);
  c[0] = std::sqrt(1.0 / std::cosh(r));
  for (int n = 2; n <= cutoff; n += 2) {
    // c_{n} / c_{n-2} = ratio * sqrt(n (n-1)) / n
    c[n] = c[n - 2] * ratio * std::sqrt(double(n) * (n - 1)) / double(n);
  }
  return c;
}

// exp(beta b^dagger - conj(beta) b) on a single truncated mode, by a scaled
// Taylor series.
std::vector<cplx> displace(const std::vector<cplx>& in, cplx beta) {
  const int cutoff = static_cast<int>(in.size()) - 1;
  const int steps = std::max(1, static_cast<int>(std::ceil(4.0 * std::abs(beta) *
                                                           std::sqrt(cutoff + 1.0))));
  const cplx b = beta / double(steps);
  const auto generator = [&](const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size(), cplx{0.0, 0.0});
    for (int n = 0; n <= cutoff; ++n) {
      if (n > 0) out[n] += b * std::sqrt(double(n)) * v[n - 1];
      if (n < cutoff) out[n] -= std::conj(b) * std::sqrt(double(n + 1)) * v[n + 1];
    }
    return out;
  };
  std::vector<cplx> state = in;
  for (int s = 0; s < steps; ++s) {
    std::vector<cplx> term = state;
    std::vector<cplx> sum = state;
    for (int k = 1; k < 200; ++k) {
      term = generator(term);
      double size = 0.0;
      for (int n = 0; n <= cutoff; ++n) {
        term[n] /= double(k);
        sum[n] += term[n];
        size = std::max(size, std::abs(term[n]));
      }
      if (size < 1e-18) break;
    }
    state = std::move(sum);
  }
  return state;
}

double tail_mass(const std::vector<cplx>& c) {
  double kept = 0.0;
  for (const cplx& x : c) kept += std::norm(x);
  return std::max(0.0, 1.0 - kept);
}

double boundary_population(const FockState& s) {
  double mass = 0.0;
  const int n = s.cutoff();
  for (int k = 0; k <= n; ++k) {
    mass += std::norm(s(n, k));
    if (k < n) mass += std::norm(s(k, n));
  }
  return mass;
}

}  // namespace

FockState::FockState(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 1) throw DomainError("FockState: cutoff must be at least 1");
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()) * dim());
  amps_(0) = 1.0;
}

FockState prepare_fock(cplx alpha, double r, double theta_s, int cutoff, cplx b_displacement) {
  FockState state(cutoff);
  const auto a = coherent_amplitudes(alpha, cutoff);
  auto b = squeezed_amplitudes(r, theta_s, cutoff);
  double b_loss = tail_mass(b);
  if (b_displacement != cplx{0.0, 0.0}) {
    if (r == 0.0) {
      b = coherent_amplitudes(b_displacement, cutoff);
      b_loss = tail_mass(b);
    } else {
      // Displacing the truncated squeezed series also pushes weight out of
      // the box; count both losses.
      b = displace(b, b_displacement);
      b_loss += tail_mass(b);
    }
  }
  for (int na = 0; na <= cutoff; ++na) {
    for (int nb = 0; nb <= cutoff; ++nb) state(na, nb) = a[na] * b[nb];
  }
  state.note_leakage(1.0 - (1.0 - tail_mass(a)) * (1.0 - b_loss));
  check_leakage(state, "prepare_fock");
  return state;
}

FockState prepare_fock(const InputState& input, int cutoff) {
  return prepare_fock(input.alpha(), input.r, input.theta_s, cutoff, input.b_displacement);
}

FockState two_mode_squeezer(const FockState& state, double g, double theta) {
  const int n = state.cutoff();
  const Eigen::Index size = state.amplitudes().size();
  // (n_a, n_b) -> (n_a + 1, n_b + 1) is a fixed index offset.
  const Eigen::Index shift = n + 2;
  const Eigen::Index span = size - shift;
  Eigen::VectorXd raise_coef = Eigen::VectorXd::Zero(size);  // sqrt(n_a n_b) at the target
  Eigen::VectorXd lower_coef = Eigen::VectorXd::Zero(size);  // sqrt((n_a+1)(n_b+1))
  for (int na = 0; na <= n; ++na) {
    for (int nb = 0; nb <= n; ++nb) {
      raise_coef(state.index(na, nb)) = std::sqrt(double(na) * nb);
      if (na < n && nb < n) lower_coef(state.index(na, nb)) = std::sqrt((na + 1.0) * (nb + 1.0));
    }
  }
  // The truncated generator norm is at most 2 g n; keep each sub-step's series
  // argument at or below 2.
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(g) * n)));
  const cplx up = std::polar(g / steps, theta);  // coefficient of a^dagger b^dagger
  const cplx down = std::conj(up);                // coefficient of -a b

  Eigen::VectorXcd out_vec(size);
  const auto generator = [&](const Eigen::VectorXcd& v) {
    out_vec.setZero();
    out_vec.tail(span) = up * raise_coef.tail(span).cwiseProduct(v.head(span));
    out_vec.head(span) -= down * lower_coef.head(span).cwiseProduct(v.tail(span));
  };

  FockState out = state;
  Eigen::VectorXcd term(size);
  for (int s = 0; s < steps; ++s) {
    term = out.amplitudes();
    Eigen::VectorXcd& sum = out.amplitudes();
    for (int k = 1; k < 200; ++k) {
      generator(term);
      term = out_vec / double(k);
      sum += term;
      if (term.cwiseAbs2().maxCoeff() < 1e-36) break;
    }
    out.note_leakage(boundary_population(out));
  }
  check_leakage(out, "two_mode_squeezer");
  return out;
}

FockState fock_phase(const FockState& state, double phi, Mode mode) {
  FockState out = state;
  for (int na = 0; na <= state.cutoff(); ++na) {
    for (int nb = 0; nb <= state.cutoff(); ++nb) {
      const int photons = mode == Mode::a ? na : nb;
      out(na, nb) *= std::polar(1.0, photons * phi);
    }
  }
  return out;
}

double fock_expectation(const FockState& state, FockObservable observable) {
  const int n = state.cutoff();
  if (observable == FockObservable::x_b || observable == FockObservable::x_b_squared) {
    const GaussianState m = fock_moments(state);
    if (observable == FockObservable::x_b) return m.mean()(2);
    return m.cov()(2, 2) + m.mean()(2) * m.mean()(2);
  }
  double sum = 0.0;
  for (int na = 0; na <= n; ++na) {
    for (int nb = 0; nb <= n; ++nb) {
      const double p = std::norm(state(na, nb));
      switch (observable) {
        case FockObservable::parity_a:
          sum += (na % 2 == 0 ? p : -p);
          break;
        case FockObservable::parity_b:
          sum += (nb % 2 == 0 ? p : -p);
          break;
        case FockObservable::n_a:
          sum += na * p;
          break;
        case FockObservable::n_b:
          sum += nb * p;
          break;
        case FockObservable::n_b_squared:
          sum += double(nb) * nb * p;
          break;
        default:
          break;
      }
    }
  }
  return sum;
}

GaussianState fock_moments(const FockState& state) {
  const int n = state.cutoff();
  const auto size = state.amplitudes().size();
  const cplx i{0.0, 1.0};
  // Ladder operators on the box; the raising operator drops the boundary.
  const auto lower = [&](const Eigen::VectorXcd& v, Mode mode) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
    for (int na = 0; na <= n; ++na) {
      for (int nb = 0; nb <= n; ++nb) {
        if (mode == Mode::a && na < n) {
          out(state.index(na, nb)) = std::sqrt(na + 1.0) * v(state.index(na + 1, nb));
        }
        if (mode == Mode::b && nb < n) {
          out(state.index(na, nb)) = std::sqrt(nb + 1.0) * v(state.index(na, nb + 1));
        }
      }
    }
    return out;
  };
  const auto raise = [&](const Eigen::VectorXcd& v, Mode mode) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
    for (int na = 0; na <= n; ++na) {
      for (int nb = 0; nb <= n; ++nb) {
        if (mode == Mode::a && na > 0) {
          out(state.index(na, nb)) = std::sqrt(double(na)) * v(state.index(na - 1, nb));
        }
        if (mode == Mode::b && nb > 0) {
          out(state.index(na, nb)) = std::sqrt(double(nb)) * v(state.index(na, nb - 1));
        }
      }
    }
    return out;
  };

  const Eigen::VectorXcd& psi = state.amplitudes();
  std::vector<Eigen::VectorXcd> applied;
  for (Mode mode : {Mode::a, Mode::b}) {
    const Eigen::VectorXcd down = lower(psi, mode);
    const Eigen::VectorXcd up = raise(psi, mode);
    applied.push_back(down + up);            // x
    applied.push_back(-i * (down - up));     // p
  }
  Vec4 mean;
  Mat4 second;
  for (int k = 0; k < 4; ++k) {
    mean(k) = psi.dot(applied[k]).real();
    for (int l = 0; l < 4; ++l) second(k, l) = applied[k].dot(applied[l]).real();
  }
  return {mean, second - mean * mean.transpose()};
}

double fidelity(const FockState& a, const FockState& b) {
  if (a.cutoff() != b.cutoff()) throw DomainError("fidelity: cutoffs differ");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

FockState simulate_su11(const SU11Spec& spec, int cutoff, bool adaptive) {
  const int limit = adaptive ? 8 * cutoff : cutoff;
  for (int c = cutoff;; c *= 2) {
    try {
      FockState s = prepare_fock(spec.input, c);
      s = two_mode_squeezer(s, spec.g1, spec.theta1);
      s = fock_phase(s, spec.phi, Mode::a);
      return two_mode_squeezer(s, spec.g2, spec.theta2);
    } catch (const CutoffTooSmallError&) {
      if (2 * c > limit) throw;
    }
  }
}

}  // namespace su11
