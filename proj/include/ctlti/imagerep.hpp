#pragma once

#include <string>
#include <vector>

#include "ctlti/gramian.hpp"
#include "ctlti/lti.hpp"
#include "ctlti/pencil.hpp"
#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Data-driven image representation w = M(d/dt) l with latent dimension m+p.
struct ImageRepresentation {
  PolynomialMatrix M;  // (m+p) x (m+p), degrees 0..eta-1
  int latent_dim = 0;
  struct Provenance {
    int L = 0, m = 0, p = 0;
    double lambda_reg = 0.0;
    double stair_tol = -1.0;
    int eta = 0;
    int n_estimate = 0;  // rank(Gamma) - L*m
    bool degree_flag = false;  // eta - 1 > n_estimate
    std::string data;
  } provenance;
};

/// Assembles M_j = -[Gamma_u; Gamma_y] Z A3reg N^j P [0; I], j = 0..eta-1,
/// where A3reg is the Tikhonov-regularized inverse of A3 (exact triangular
/// back-substitution when lambda_reg == 0) and N = E3 A3reg. Requires p == 1.
ImageRepresentation build_image_representation(const DataGramian& g,
                                               const UnimodularEmbedding& emb,
                                               double lambda_reg);

/// Latent-driven trajectory prediction: w^(k)(t) = sum_j M_j l^{(j+k)}(t) on a
/// uniform grid, split into input and output rows, together with analytic
/// derivative stacks of orders 0..deriv_orders for both.
struct Prediction {
  SampledSignal u_hat, y_hat;
  std::vector<SampledSignal> u_derivs, y_derivs;  // orders 0..deriv_orders
};

Prediction predict_trajectory(const ImageRepresentation& rep, const AnalyticSignal& ell,
                              double t0, double dt, long samples, int deriv_orders);

/// Validation oracle (never used in identification): reconstructs the state
/// from the predicted jets and returns max_t |dx/dt - A x - B u| / (1 + |x|),
/// with dx/dt taken from the shifted analytic derivative stacks.
double behavior_membership_residual(const StateSpaceModel& model, const Prediction& pred);

}  // namespace ctlti
