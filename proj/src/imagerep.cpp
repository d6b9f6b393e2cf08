#include "ctlti/imagerep.hpp"

#include <stdexcept>

#include "ctlti/numeric.hpp"

namespace ctlti {

ImageRepresentation build_image_representation(const DataGramian& g,
                                               const UnimodularEmbedding& emb,
                                               double lambda_reg) {
  if (g.p != 1)
    throw std::invalid_argument("build_image_representation: single-output data only");
  const long c = emb.A3.rows();
  if (c != static_cast<long>(g.L) * (g.m + g.p))
    throw std::invalid_argument("build_image_representation: embedding does not match Gamma");
  const int latent = g.m + g.p;
  if (emb.K_tilde.rows() != latent)
    throw std::invalid_argument("build_image_representation: completion count != m+p");

  Matrix top(latent, c);
  top.topRows(g.m) = g.Gamma.topRows(g.m);
  top.bottomRows(g.p) = g.Gamma.middleRows(static_cast<long>(g.L) * g.m, g.p);

  Matrix A3inv;
  if (lambda_reg > 0.0) {
    A3inv = regularized_pinv(emb.A3, lambda_reg);
  } else {
    const double diag_min = emb.A3.diagonal().cwiseAbs().minCoeff();
    const double diag_max = emb.A3.diagonal().cwiseAbs().maxCoeff();
    if (!(diag_min > std::numeric_limits<double>::epsilon() * diag_max))
      throw std::runtime_error(
          "build_image_representation: A3 numerically singular; use regularization");
    A3inv = emb.A3.triangularView<Eigen::Upper>().solve(Matrix::Identity(c, c));
  }
  const Matrix N = emb.E3 * A3inv;
  const Matrix sel = emb.completion_selector();
  const Matrix lead = -top * emb.Z * A3inv;

  ImageRepresentation rep;
  rep.latent_dim = latent;
  const int eta = emb.nilpotency_index;
  rep.M.coeffs.reserve(static_cast<std::size_t>(eta));
  Matrix Npow = Matrix::Identity(c, c);
  for (int j = 0; j < eta; ++j) {
    rep.M.coeffs.push_back(lead * Npow * sel);
    Npow = N * Npow;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(g.Gamma);
  Vector ev = es.eigenvalues().reverse().cwiseMax(0.0);
  const RankDecision rd = numerical_rank(ev, 1e-8);
  rep.provenance.L = g.L;
  rep.provenance.m = g.m;
  rep.provenance.p = g.p;
  rep.provenance.lambda_reg = lambda_reg;
  rep.provenance.eta = eta;
  rep.provenance.n_estimate = rd.rank - g.L * g.m;
  rep.provenance.degree_flag = (eta - 1 > rep.provenance.n_estimate);
  return rep;
}

Prediction predict_trajectory(const ImageRepresentation& rep, const AnalyticSignal& ell,
                              double t0, double dt, long samples, int deriv_orders) {
  if (ell.channel_count() != rep.latent_dim)
    throw std::invalid_argument("predict_trajectory: latent channel count mismatch");
  const int deg = rep.M.degree();
  if (ell.smoothness() < deg + deriv_orders)
    throw std::invalid_argument("predict_trajectory: latent signal not smooth enough");
  const int m = static_cast<int>(rep.M.rows()) - rep.provenance.p;
  const int p = rep.provenance.p;

  // l^{(k)} samples for k = 0..deg+deriv_orders, reused across output orders.
  std::vector<Matrix> lk;
  lk.reserve(static_cast<std::size_t>(deg + deriv_orders) + 1);
  for (int k = 0; k <= deg + deriv_orders; ++k)
    lk.push_back(ell.sample(t0, dt, samples, k).values);

  Prediction out;
  for (int k = 0; k <= deriv_orders; ++k) {
    Matrix w = Matrix::Zero(rep.M.rows(), samples);
    for (int j = 0; j <= deg; ++j)
      w += rep.M.coeffs[static_cast<std::size_t>(j)] * lk[static_cast<std::size_t>(j + k)];
    SampledSignal us(t0, dt, w.topRows(m));
    SampledSignal ys(t0, dt, w.bottomRows(p));
    if (k == 0) {
      out.u_hat = us;
      out.y_hat = ys;
    }
    out.u_derivs.push_back(std::move(us));
    out.y_derivs.push_back(std::move(ys));
  }
  return out;
}

double behavior_membership_residual(const StateSpaceModel& model, const Prediction& pred) {
  if (model.p != 1)
    throw std::invalid_argument("behavior_membership_residual: single-output models only");
  const int n = model.n;
  if (static_cast<int>(pred.y_derivs.size()) < n + 1 ||
      static_cast<int>(pred.u_derivs.size()) < n)
    throw std::invalid_argument(
        "behavior_membership_residual: prediction needs derivative orders up to n");

  std::vector<SampledSignal> u0(pred.u_derivs.begin(), pred.u_derivs.begin() + (n - 1));
  std::vector<SampledSignal> y0(pred.y_derivs.begin(), pred.y_derivs.begin() + n);
  std::vector<SampledSignal> u1(pred.u_derivs.begin() + 1, pred.u_derivs.begin() + n);
  std::vector<SampledSignal> y1(pred.y_derivs.begin() + 1, pred.y_derivs.begin() + (n + 1));
  const SampledSignal x = reconstruct_state(model, u0, y0);
  const SampledSignal xdot = reconstruct_state(model, u1, y1);

  double worst = 0.0;
  for (long i = 0; i < x.samples(); ++i) {
    const Vector xi = x.values.col(i);
    const Vector r = xdot.values.col(i) - model.A * xi - model.B * pred.u_hat.values.col(i);
    worst = std::max(worst, r.norm() / (1.0 + xi.norm()));
  }
  return worst;
}

}  // namespace ctlti
