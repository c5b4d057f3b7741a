// Experiment harness: flat config files, named condition presets, run
// directories with reproducible artifacts, seed sweeps with a worker pool,
// and aggregation into a Table-style summary with ranking flags.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "coemo/mhng.hpp"

namespace coemo::harness {

// The five experimental conditions: an exteroception-only ablation plus the
// four interoceptive profile pairings.
struct ConditionSpec {
  core_affect::ProfileKind profile_a;
  core_affect::ProfileKind profile_b;
  bool use_interoception;
};

// Valid names: vision_audio, original_original, original_happy_inverse,
// original_low_valence, original_low_arousal. Throws on anything else.
ConditionSpec condition_spec(const std::string& name);
const std::vector<std::string>& condition_names();

// One flat key/value config covering a single run and the sweep driver.
// Field names match the config-file keys one to one.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string scenario = "mhng";
  std::string condition = "original_original";
  std::string out_dir = "runs";

  int stimuli_per_emotion = 8;
  double separation = 0.6;
  double expressiveness_sigma = 0.0;
  int extero_factor_dim = 0;
  int vision_dim = 40;
  int audio_dim = 60;
  double vision_noise = 1.0;
  double audio_noise = 1.0;
  int ou_steps = 345;
  double ou_dt = 0.02;
  double ou_clip = 1.5;
  int ou_obs_steps = 32;

  int k = 9;
  int latent_dim = 9;
  int hidden_dim = 64;
  double init_scale = 0.1;
  int rounds = 50;
  int pretrain_epochs = 150;
  int train_epochs = 3;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double gmm_kappa0 = 0.1;
  double gmm_w0_scale = 1.0;

  // Sweep-only controls; ignored by single runs.
  std::string sweep_seeds = "0-9";
  std::string sweep_scenarios = "mhng,always_reject,always_accept";
  std::string sweep_conditions;  // empty: sweep the condition above
  int workers = 0;               // 0: hardware concurrency

  void validate() const;
  mhng::ExperimentConfig to_experiment() const;
};

// Flat TOML-subset parser: `key = value` lines, # comments, quoted strings,
// booleans, numbers. Unknown or duplicate keys are errors.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Deterministic round-trippable rendering of every key.
std::string serialize_config(const RunConfig& cfg);

// Seed list syntax: comma-separated entries, each a number or lo-hi range.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

// Artifact names inside a run directory.
inline constexpr const char* kConfigFile = "config.toml";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kEventsFile = "events.jsonl";
inline constexpr const char* kCheckpointFile = "checkpoint.bin";

// metrics.csv header.
inline constexpr const char* kMetricsHeader =
    "seed,condition,scenario,round,ari_a,ari_b,kappa,dbs_a,dbs_b,topsim";

// Final-round metric values of one finished run.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string condition;
  std::string scenario;
  std::map<std::string, double> metrics;  // ari_a, ari_b, kappa, dbs_a, dbs_b, topsim
};

// Runs one experiment and writes config.toml, metrics.csv, events.jsonl and
// checkpoint.bin into dir (created if needed). Returns the final-round record.
RunRecord execute_run(const RunConfig& cfg, const std::string& dir);

// Reads the artifacts of an existing run directory; throws with the offending
// path when any of the four artifacts is missing or malformed.
RunRecord load_run_dir(const std::string& dir);

struct MetricStats {
  double mean = 0.0;
  double std_dev = 0.0;  // sample std (n - 1); 0 when n == 1
  int n = 0;
  bool best = false;    // ranked across scenarios within the condition
  bool second = false;
};

struct GroupSummary {
  std::string condition;
  std::string scenario;
  int n = 0;
  std::map<std::string, MetricStats> metrics;
};

struct SweepSummary {
  std::vector<GroupSummary> groups;  // sorted by (condition, scenario)
};

// Groups records by (condition, scenario); permutation-invariant. Ranking
// flags mark the best and second-best scenario per condition and metric
// (higher is better except dbs_a/dbs_b).
SweepSummary aggregate(const std::vector<RunRecord>& records);

std::string summary_to_json(const SweepSummary& summary);

// Runs scenarios x conditions x seeds concurrently (cfg.workers threads),
// each into <out_root>/<condition>-<scenario>-seed<seed>/, then aggregates.
SweepSummary sweep(const RunConfig& cfg, const std::string& out_root);

// Binary tensor checkpoint: magic, version, then named f64/i32 tensors.
struct NamedTensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<double> f64;   // exactly one payload in use,
  std::vector<std::int32_t> i32;  // selected by is_f64
  bool is_f64 = true;
};

void write_checkpoint(std::ostream& os, const std::vector<NamedTensor>& tensors);
std::vector<NamedTensor> read_checkpoint(std::istream& is);
std::vector<NamedTensor> read_checkpoint_file(const std::string& path);

// Game state -> named tensors (agents' signs, latents, mixtures, MVAE
// weights, dataset labels and stimulus ids).
std::vector<NamedTensor> checkpoint_tensors(const mhng::GameState& gs);

// SVG emitters for the report plots; both agents side by side.
std::string render_recall_svg(const Mat& recall_a, const Mat& recall_b);
std::string render_pca_svg(const Mat& latents_a, const Mat& latents_b,
                           const std::vector<int>& labels);

// Writes recall_heatmaps.svg and latent_pca.svg next to the checkpoint.
void plot_run_dir(const std::string& dir);

// Dataset export: per-agent feature CSVs plus full-resolution affect
// trajectories, written into dir.
void write_dataset(const RunConfig& cfg, const std::string& dir);

}  // namespace coemo::harness
