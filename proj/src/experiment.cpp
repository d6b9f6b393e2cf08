#include "ctlti/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ctlti/algdiff.hpp"
#include "ctlti/excitation.hpp"
#include "ctlti/metrics.hpp"
#include "ctlti/numeric.hpp"
#include "ctlti/rng.hpp"

namespace ctlti {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

[[noreturn]] void fail_stage(const std::string& stage, const std::exception& e) {
  throw std::runtime_error(stage + ": " + e.what());
}

}  // namespace

StateSpaceModel demo_system() {
  Matrix A(3, 3), B(3, 1), C(1, 3), D(1, 1);
  A << 0, 1, 0, -1, 0, 1, 0, 0, -2;
  B << 0, 0, 1;
  C << 1, 0, 1;
  D << 0;
  return StateSpaceModel(A, B, C, D);
}

StateSpaceModel RunConfig::system() const {
  if (use_builtin_system) return demo_system();
  return StateSpaceModel(A, B, C, D);
}

std::vector<std::uint64_t> RunConfig::seed_list() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(seed_count));
  for (int i = 0; i < seed_count; ++i)
    out.push_back(derive_seed(master_seed, static_cast<std::uint64_t>(i), "run"));
  return out;
}

void RunConfig::validate() const {
  if (spline_degree >= knots)
    throw std::invalid_argument("config: spline degree must be smaller than the knot count");
  if (!(t_s > 0.0)) throw std::invalid_argument("config: t_s must be positive");
  if (!(t_min < t_max)) throw std::invalid_argument("config: empty data interval");
  if (!(amplitude > 0.0)) throw std::invalid_argument("config: amplitude must be positive");
  if (gramian_order < 2) throw std::invalid_argument("config: gramian_order must be >= 2");
  if (!(t_diff_factor > 1.0)) throw std::invalid_argument("config: t_diff_factor must exceed 1");
  if (lambda_reg < 0.0) throw std::invalid_argument("config: lambda_reg must be >= 0");
  if (seed_count < 1 && seeds.empty())
    throw std::invalid_argument("config: need at least one seed");
  if (noise_stds.empty()) throw std::invalid_argument("config: need at least one noise level");
  if (derivative_source != "algdiff" && derivative_source != "exact")
    throw std::invalid_argument("config: derivative_source must be 'algdiff' or 'exact'");
  if (ic_mode != "reconstructed" && ic_mode != "zero")
    throw std::invalid_argument("config: ic_mode must be 'reconstructed' or 'zero'");
  if (!(predict_t_min < predict_t_max))
    throw std::invalid_argument("config: empty prediction interval");
  (void)system();
}

AnalyticSignal default_latent(int channels, std::uint64_t seed) {
  const double omegas[3] = {1.0, 2.0, 0.5};
  AnalyticSignal ell;
  RandomStream rng(seed);
  for (int c = 0; c < channels; ++c) {
    AnalyticChannel ch;
    for (double w : omegas) {
      ch.add_sine(rng.uniform_sym(1.0), w);
      ch.add_cosine(rng.uniform_sym(1.0), w);
    }
    ell.channels.push_back(std::move(ch));
  }
  return ell;
}

IdentificationArtifacts identify(const RunConfig& config, std::uint64_t seed, double noise_std) {
  config.validate();
  const StateSpaceModel model = config.system();
  if (model.p != 1)
    throw std::invalid_argument("identify: the identification pipeline requires p = 1");
  const int L = config.gramian_order;

  IdentificationArtifacts art;

  // Input generation.
  AnalyticSignal u_analytic;
  try {
    SplineInputSpec spec;
    spec.m = model.m;
    spec.degree = config.spline_degree;
    spec.knots = config.knots;
    spec.t_min = config.t_min;
    spec.t_max = config.t_max;
    spec.amplitude = config.amplitude;
    spec.seed = derive_seed(seed, 0, "input");
    u_analytic = generate_pe_spline(spec);
  } catch (const std::exception& e) {
    fail_stage("input", e);
  }

  // Simulation.
  SampledSignal x_data;
  try {
    const long S = static_cast<long>(std::floor((config.t_max - config.t_min) / config.t_s)) + 1;
    art.u = u_analytic.sample(config.t_min, config.t_s, S);
    auto [xs, ys] = simulate(model, art.u, Vector::Zero(model.n), config.substeps);
    x_data = std::move(xs);
    art.y_clean = std::move(ys);
  } catch (const std::exception& e) {
    fail_stage("simulate", e);
  }

  // Measurement noise.
  try {
    art.y_noisy = add_noise(art.y_clean, {noise_std, derive_seed(seed, 0, "noise")});
  } catch (const std::exception& e) {
    fail_stage("noise", e);
  }

  // Derivative estimation.
  std::vector<SampledSignal> u_derivs, y_derivs;
  try {
    if (config.derivative_source == "exact") {
      u_derivs = u_analytic.sample_derivatives(config.t_min, config.t_s, art.u.samples(), L - 1);
      y_derivs = output_derivative_stack(model, x_data, u_derivs, L - 1);
      if (noise_std > 0.0)
        throw std::invalid_argument("exact derivative source is limited to noiseless runs");
    } else {
      DifferentiatorSpec dspec;
      dspec.alpha = config.alpha;
      dspec.beta = config.beta;
      dspec.expansion_order = config.n_diff;
      dspec.window = config.t_diff_factor * config.t_s;
      dspec.theta = config.theta;
      u_derivs = estimate_derivatives(art.u, dspec, L - 1);
      y_derivs = estimate_derivatives(art.y_noisy, dspec, L - 1);
    }
  } catch (const std::exception& e) {
    fail_stage("filter", e);
  }

  // Gramian and rank diagnostics.
  DataGramian gram;
  try {
    gram = build_gramian(build_stack(u_derivs, y_derivs));
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram.Gamma);
    Vector ev = es.eigenvalues().reverse().cwiseMax(0.0);
    const RankDecision plain = numerical_rank(ev, 1e-8, config.gap_min);
    art.rank_gamma = plain.rank;
    art.gamma_gap = plain.gap_ratio;
    if (config.truncate_gramian) {
      // Project onto the detected image (the representation is invariant under
      // this replacement); the plausible rank lies strictly between L*m and
      // the full size whenever L exceeds the system order.
      const RankDecision win =
          numerical_rank_windowed(ev, L * gram.m + 1, L * (gram.m + gram.p) - 1);
      if (win.rank > 0) gram.Gamma = psd_truncate(gram.Gamma, win.rank);
    }
  } catch (const std::exception& e) {
    fail_stage("gramian", e);
  }

  // Pencil, staircase, embedding.
  UnimodularEmbedding emb;
  try {
    const DataPencil pencil = build_pencil(gram);
    StaircaseOptions opt;
    opt.tol_rel = noise_std > 0.0 ? config.stair_tol_noisy : config.stair_tol;
    opt.gap_min = config.gap_min;
    const StaircaseDecomposition sc = staircase_reduce(pencil.E0, pencil.A0, opt);
    emb = embed_unimodular(sc);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -dmin, damax = 0.0;
    for (double s : {0.0, 0.7, -1.3, 2.1, 3.4}) {
      const double d = (s * emb.E3 - emb.A3).determinant();
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
      damax = std::max(damax, std::abs(d));
    }
    art.det_spread = damax > 0.0 ? (dmax - dmin) / damax : 0.0;
  } catch (const std::exception& e) {
    fail_stage("staircase", e);
  }

  // Image representation.
  try {
    art.rep = build_image_representation(gram, emb, config.lambda_reg);
    std::ostringstream desc;
    desc << "demo pipeline seed=" << seed << " noise_std=" << noise_std
         << " source=" << config.derivative_source;
    art.rep.provenance.data = desc.str();
    art.rep.provenance.stair_tol =
        noise_std > 0.0 ? config.stair_tol_noisy : config.stair_tol;
  } catch (const std::exception& e) {
    fail_stage("imagerep", e);
  }
  return art;
}

RunResult run_single(const RunConfig& config, std::uint64_t seed, double noise_std,
                     const std::string& artifact_dir) {
  RunResult res;
  res.seed = seed;
  res.noise_std = noise_std;
  const StateSpaceModel model = config.system();
  try {
    IdentificationArtifacts art = identify(config, seed, noise_std);
    res.rank_gamma = art.rank_gamma;
    res.gamma_gap = art.gamma_gap;
    res.eta = art.rep.provenance.eta;
    res.det_spread = art.det_spread;
    {
      SampledSignal noise = art.y_noisy;
      noise.values -= art.y_clean.values;
      res.snr_db = snr_db(art.y_clean, noise);
    }

    // Prediction from the latent signal.
    SampledSignal x_hat;
    Prediction pred;
    try {
      const std::uint64_t lseed = config.latent_seed != 0
                                      ? derive_seed(config.latent_seed, seed, "latent")
                                      : derive_seed(seed, 0, "latent");
      const AnalyticSignal ell = default_latent(art.rep.latent_dim, lseed);
      const long S =
          static_cast<long>(std::floor((config.predict_t_max - config.predict_t_min) / config.t_s)) + 1;
      pred = predict_trajectory(art.rep, ell, config.predict_t_min, config.t_s, S, model.n - 1);
    } catch (const std::exception& e) {
      fail_stage("predict", e);
    }

    // State reconstruction via the observability map.
    try {
      std::vector<SampledSignal> u0(pred.u_derivs.begin(),
                                    pred.u_derivs.begin() + (model.n - 1));
      std::vector<SampledSignal> y0(pred.y_derivs.begin(), pred.y_derivs.begin() + model.n);
      x_hat = reconstruct_state(model, u0, y0);
    } catch (const std::exception& e) {
      fail_stage("reconstruct", e);
    }

    // Reference trajectory and error metric.
    try {
      Vector x0 = x_hat.values.col(0);
      if (config.ic_mode == "zero") {
        // Reference from rest; the predicted states drop their free response.
        auto [xfree, yfree] =
            simulate(model, SampledSignal(x_hat.t0, x_hat.dt,
                                          Matrix::Zero(model.m, x_hat.samples())),
                     x0, config.substeps);
        x_hat.values -= xfree.values;
        x0 = Vector::Zero(model.n);
      }
      auto [x_ref, y_ref] = simulate(model, pred.u_hat, x0, config.substeps);
      res.rel_error = relative_error(x_ref, x_hat);

      if (!artifact_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(artifact_dir);
        const long S = art.u.samples();
        Vector t(S);
        for (long i = 0; i < S; ++i) t(i) = art.u.time(i);
        std::vector<Vector> ucols{t};
        std::vector<std::string> unames{"t"};
        for (int c = 0; c < art.u.channels(); ++c) {
          ucols.push_back(art.u.values.row(c).transpose());
          unames.push_back("u" + std::to_string(c + 1));
        }
        write_dat((fs::path(artifact_dir) / "pe_input.dat").string(), unames, ucols);
        write_dat((fs::path(artifact_dir) / "pe_output.dat").string(),
                  {"t", "y_noisy", "y_clean"},
                  {t, art.y_noisy.values.row(0).transpose(),
                   art.y_clean.values.row(0).transpose()});
        const long Sp = x_hat.samples();
        Vector tp(Sp);
        for (long i = 0; i < Sp; ++i) tp(i) = x_hat.time(i);
        std::vector<Vector> scols{tp};
        std::vector<std::string> snames{"t"};
        for (int i = 0; i < model.n; ++i) {
          scols.push_back(x_hat.values.row(i).transpose());
          snames.push_back("xhat" + std::to_string(i + 1));
        }
        for (int i = 0; i < model.n; ++i) {
          scols.push_back(x_ref.values.row(i).transpose());
          snames.push_back("x" + std::to_string(i + 1));
        }
        write_dat((fs::path(artifact_dir) / "traj_state.dat").string(), snames, scols);
        write_image_representation((fs::path(artifact_dir) / "M_coeffs.json").string(), art.rep,
                                   seed, noise_std);
      }
    } catch (const std::exception& e) {
      fail_stage("metrics", e);
    }
  } catch (const std::exception& e) {
    res.status = e.what();
  }
  return res;
}

std::vector<RunResult> run_sweep(const RunConfig& config) {
  config.validate();
  const auto seeds = config.seed_list();
  struct Job {
    std::uint64_t seed;
    double std;
  };
  std::vector<Job> jobs;
  for (double std_ : config.noise_stds)
    for (std::uint64_t s : seeds) jobs.push_back({s, std_});

  std::vector<RunResult> results(jobs.size());
  const int threads = config.threads > 0
                          ? config.threads
                          : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      results[i] = run_single(config, jobs[i].seed, jobs[i].std);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  write_summary_csv((fs::path(config.output_dir) / "summary.csv").string(), results);
  write_aggregate_csv((fs::path(config.output_dir) / "aggregate.csv").string(), results);
  return results;
}

void write_dat(const std::string& path, const std::vector<std::string>& names,
               const std::vector<Vector>& columns) {
  if (names.size() != columns.size())
    throw std::invalid_argument("write_dat: name/column count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_dat: cannot open " + path);
  out << "# column:";
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
  const long rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("write_dat: column lengths differ");
  for (long i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out << ' ';
      out << fmt17(columns[j](i));
    }
    out << '\n';
  }
}

void write_summary_csv(const std::string& path, const std::vector<RunResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_summary_csv: cannot open " + path);
  out << "seed,noise_std,snr_db,rel_error,status\n";
  for (const auto& r : results) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << r.seed << ',' << fmt17(r.noise_std) << ',' << fmt17(r.snr_db) << ','
        << fmt17(r.rel_error) << ',' << status << '\n';
  }
}

void write_aggregate_csv(const std::string& path, const std::vector<RunResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_aggregate_csv: cannot open " + path);
  out << "noise_std,count,ok,snr_q1,snr_median,snr_q3,rel_error_q1,rel_error_median,"
         "rel_error_q3\n";
  std::vector<double> stds;
  for (const auto& r : results)
    if (std::find(stds.begin(), stds.end(), r.noise_std) == stds.end())
      stds.push_back(r.noise_std);
  for (double s : stds) {
    std::vector<double> snrs, errs;
    long count = 0, okc = 0;
    for (const auto& r : results) {
      if (r.noise_std != s) continue;
      ++count;
      if (r.ok()) {
        ++okc;
        snrs.push_back(r.snr_db);
        errs.push_back(r.rel_error);
      }
    }
    out << fmt17(s) << ',' << count << ',' << okc << ',' << fmt17(quantile(snrs, 0.25)) << ','
        << fmt17(quantile(snrs, 0.5)) << ',' << fmt17(quantile(snrs, 0.75)) << ','
        << fmt17(quantile(errs, 0.25)) << ',' << fmt17(quantile(errs, 0.5)) << ','
        << fmt17(quantile(errs, 0.75)) << '\n';
  }
}

void write_image_representation(const std::string& path, const ImageRepresentation& rep,
                                std::uint64_t seed, double noise_std) {
  nlohmann::json j;
  j["shape"] = {rep.M.rows(), rep.M.cols()};
  j["degree"] = rep.M.degree();
  j["latent_dim"] = rep.latent_dim;
  auto& coeffs = j["coefficients"] = nlohmann::json::array();
  for (const auto& c : rep.M.coeffs) {
    nlohmann::json cm = nlohmann::json::array();
    for (long i = 0; i < c.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (long k = 0; k < c.cols(); ++k) row.push_back(c(i, k));
      cm.push_back(row);
    }
    coeffs.push_back(cm);
  }
  j["provenance"] = {{"L", rep.provenance.L},
                     {"m", rep.provenance.m},
                     {"p", rep.provenance.p},
                     {"lambda_reg", rep.provenance.lambda_reg},
                     {"stair_tol", rep.provenance.stair_tol},
                     {"eta", rep.provenance.eta},
                     {"n_estimate", rep.provenance.n_estimate},
                     {"degree_flag", rep.provenance.degree_flag},
                     {"data", rep.provenance.data},
                     {"seed", seed},
                     {"noise_std", noise_std}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_image_representation: cannot open " + path);
  out << j.dump(2) << '\n';
}

ImageRepresentation read_image_representation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_image_representation: cannot open " + path);
  nlohmann::json j;
  in >> j;
  ImageRepresentation rep;
  rep.latent_dim = j.at("latent_dim").get<int>();
  for (const auto& cm : j.at("coefficients")) {
    const long rows = static_cast<long>(cm.size());
    const long cols = rows > 0 ? static_cast<long>(cm.at(0).size()) : 0;
    Matrix c(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long k = 0; k < cols; ++k) c(i, k) = cm.at(i).at(k).get<double>();
    rep.M.coeffs.push_back(std::move(c));
  }
  const auto& prov = j.at("provenance");
  rep.provenance.L = prov.at("L").get<int>();
  rep.provenance.m = prov.at("m").get<int>();
  rep.provenance.p = prov.at("p").get<int>();
  rep.provenance.lambda_reg = prov.at("lambda_reg").get<double>();
  rep.provenance.stair_tol = prov.at("stair_tol").get<double>();
  rep.provenance.eta = prov.at("eta").get<int>();
  rep.provenance.n_estimate = prov.at("n_estimate").get<int>();
  rep.provenance.degree_flag = prov.at("degree_flag").get<bool>();
  rep.provenance.data = prov.at("data").get<std::string>();
  return rep;
}

}  // namespace ctlti
