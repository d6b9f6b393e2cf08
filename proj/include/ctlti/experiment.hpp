#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlti/imagerep.hpp"
#include "ctlti/lti.hpp"
#include "ctlti/signal.hpp"
#include "ctlti/types.hpp"

namespace ctlti {

/// Third-order single-input single-output demo plant: an undamped oscillator
/// pair driven through a first-order lag, y = x1 + x3.
StateSpaceModel demo_system();

struct RunConfig {
  // plant (demo_system unless explicit matrices are set)
  bool use_builtin_system = true;
  Matrix A, B, C, D;

  // data generation
  double t_s = 1e-3;
  double t_min = 0.0;
  double t_max = 3.0 * 3.14159265358979323846;
  int spline_degree = 7;
  int knots = 14;
  double amplitude = 0.5;
  int substeps = 10;

  // differentiator
  double alpha = 8.0;
  double beta = 8.0;
  int n_diff = 0;
  double t_diff_factor = 1260.0;  // window = t_diff_factor * t_s
  double theta = 0.0;

  // identification
  int gramian_order = 4;  // L
  double lambda_reg = 1e-8;
  double stair_tol = -1.0;        // noiseless stair threshold (<0: eps-based)
  double stair_tol_noisy = 1e-6;  // stair threshold for noisy runs
  double gap_min = 1e6;
  bool truncate_gramian = true;  // project Gamma onto its detected image
  std::string derivative_source = "algdiff";  // "algdiff" | "exact"

  // evaluation
  double predict_t_min = 0.0;
  double predict_t_max = 16.0;
  std::string ic_mode = "reconstructed";  // "reconstructed" | "zero"

  // batch control
  std::vector<double> noise_stds = {2e-2};
  int seed_count = 1;
  std::vector<std::uint64_t> seeds;  // explicit list overrides seed_count
  std::uint64_t master_seed = 12345;
  std::uint64_t latent_seed = 0;  // 0: per-run latent draw
  int threads = 0;                // 0: hardware concurrency
  std::string output_dir = "out";

  StateSpaceModel system() const;
  std::vector<std::uint64_t> seed_list() const;
  void validate() const;
};

struct RunResult {
  std::uint64_t seed = 0;
  double noise_std = 0.0;
  double snr_db = 0.0;
  double rel_error = 0.0;
  int rank_gamma = 0;
  double gamma_gap = 0.0;
  int eta = 0;
  double det_spread = 0.0;
  std::string status = "ok";  // "ok" or "<stage>: <message>"

  bool ok() const { return status == "ok"; }
};

/// Artifacts of one identification (kept for the CLI and for tests).
struct IdentificationArtifacts {
  ImageRepresentation rep;
  SampledSignal u, y_clean, y_noisy;
  int rank_gamma = 0;
  double gamma_gap = 0.0;
  double det_spread = 0.0;
};

/// Runs generate -> simulate -> noise -> derivatives -> Gramian -> pencil ->
/// staircase -> embedding -> M(s). Throws with a "<stage>: ..." message.
IdentificationArtifacts identify(const RunConfig& config, std::uint64_t seed, double noise_std);

/// Default experiment latent: per channel a 3-term sine/cosine combination at
/// frequencies (1, 2, 0.5) with coefficients drawn from Unif([-1, 1]).
AnalyticSignal default_latent(int channels, std::uint64_t seed);

/// Full pipeline for one (seed, noise level); failures are captured in the
/// result status. When artifact_dir is nonempty the run writes pe_input.dat,
/// pe_output.dat, traj_state.dat and M_coeffs.json there.
RunResult run_single(const RunConfig& config, std::uint64_t seed, double noise_std,
                     const std::string& artifact_dir = "");

/// All (seed, noise) pairs, optionally in parallel, with deterministic
/// ordering; writes summary.csv and aggregate.csv under config.output_dir.
std::vector<RunResult> run_sweep(const RunConfig& config);

/// Whitespace-separated table with a "# column: ..." header, 17 significant
/// digits.
void write_dat(const std::string& path, const std::vector<std::string>& names,
               const std::vector<Vector>& columns);

void write_summary_csv(const std::string& path, const std::vector<RunResult>& results);
void write_aggregate_csv(const std::string& path, const std::vector<RunResult>& results);

/// JSON round trip of an image representation (coefficients + provenance +
/// latent metadata for reproducible prediction).
void write_image_representation(const std::string& path, const ImageRepresentation& rep,
                                std::uint64_t seed, double noise_std);
ImageRepresentation read_image_representation(const std::string& path);

}  // namespace ctlti
