#pragma once

#include "gwp/potentials.hpp"
#include "gwp/wavepacket.hpp"

namespace gwp {

struct TangentReduced {
  Vec dq, dp;
  Mat dA, dB;
};

struct TangentFull {
  TangentReduced w;
  double dphi = 0.0;
  double ddelta = 0.0;
};

struct TangentHagedorn {
  Vec dq, dp;
  CMat dQ, dP;
  double dS = 0.0;
};

/// Classical phase point together with one tangent vector.
struct FirstVariationState {
  Vec q, p, dq, dp;

  int dim() const { return static_cast<int>(q.size()); }
};

struct TangentFirstVariation {
  Vec q_dot, p_dot, dq_dot, dp_dot;
};

TangentReduced operator+(const TangentReduced& a, const TangentReduced& b);
TangentReduced operator*(double s, const TangentReduced& t);
TangentFull operator+(const TangentFull& a, const TangentFull& b);
TangentFull operator*(double s, const TangentFull& t);
TangentHagedorn operator+(const TangentHagedorn& a, const TangentHagedorn& b);
TangentHagedorn operator*(double s, const TangentHagedorn& t);
TangentFirstVariation operator+(const TangentFirstVariation& a, const TangentFirstVariation& b);
TangentFirstVariation operator*(double s, const TangentFirstVariation& t);

/// Full six-equation system with exact Gaussian averages, including the phase
/// and log-norm rates.
TangentFull heller_full_rhs(const FullState& y, const PotentialModel& model,
                            const SimulationConfig& cfg);

/// Reduced four-equation system with exact Gaussian averages.
TangentReduced heller_reduced_rhs(const ReducedState& w, const PotentialModel& model,
                                  const SimulationConfig& cfg);

/// Asymptotic variant: pointwise Hessian in the width equations and the
/// hbar-correction -(hbar/4) d/dq tr(B^{-1} hess V(q)) in the momentum
/// equation.
TangentReduced heller_asymptotic_rhs(const ReducedState& w, const PotentialModel& model,
                                     const SimulationConfig& cfg);

/// dC/dt = -C^2/m - hess V(q); equals dA + i dB of the asymptotic system.
CMat riccati_rhs(const SiegelPoint& c, const Vec& q, const PotentialModel& model,
                 const SimulationConfig& cfg);

/// dq = p/m, dp = -grad V(q), dQ = P/m, dP = -hess V(q) Q, dS = p^2/2m - V(q).
TangentHagedorn hagedorn_rhs(const HagedornState& h, const PotentialModel& model,
                             const SimulationConfig& cfg);

/// Classical flow coupled with its linearization along the solution, for the
/// Hamiltonian p^2/2m + V(q).
TangentFirstVariation first_variation_rhs(const FirstVariationState& s,
                                          const PotentialModel& model,
                                          const SimulationConfig& cfg);

double classical_hamiltonian(const Vec& q, const Vec& p, const PotentialModel& model,
                             const SimulationConfig& cfg);

/// exact:      p^2/2m + (hbar/4m) tr(B^{-1}(A^2+B^2)) + <V>
/// asymptotic: p^2/2m + V(q) + (hbar/4) tr(B^{-1}((A^2+B^2)/m + hess V(q)))
double reduced_hamiltonian(const ReducedState& w, const PotentialModel& model,
                           const SimulationConfig& cfg, DynamicsVariant variant);

}  // namespace gwp
