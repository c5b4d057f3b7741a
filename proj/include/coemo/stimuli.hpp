// Synthetic multimodal dataset: class-structured exteroception (one prototype
// per emotion per agent, modeling different bodies seeing the same stimuli)
// plus simulated interoception. Replicas of a stimulus share its
// exteroceptive noise and differ only in the interoceptive trajectory.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coemo/core_affect.hpp"
#include "coemo/mat.hpp"

namespace coemo::stimuli {

struct ModalitySpec {
  std::string name;
  int dim = 1;
  double noise_scale = 1.0;
};

// One row per emotion, drawn from a stream derived from (seed, modality,
// agent) and scaled by `separation`. A positive expressiveness_sigma draws a
// mean-one lognormal radius per (agent, emotion), shared by the agent's
// modalities: each body renders some emotions distinctly and others faintly,
// so the two agents confuse different class pairs.
Mat make_prototypes(const ModalitySpec& spec, int n_emotions, int agent_id,
                    double separation, std::uint64_t master_seed,
                    double expressiveness_sigma = 0.0);

struct AgentData {
  std::vector<Mat> modality;  // aligned with StimulusDataset::modality_names
};

struct StimulusDataset {
  std::vector<std::string> modality_names;
  std::vector<int> labels;        // emotion ordinals, for evaluation only
  std::vector<int> stimulus_ids;  // one id per stimulus, repeated per replica
  std::vector<int> replicas;      // replica index within the stimulus
  AgentData agent_a, agent_b;

  int size() const { return static_cast<int>(labels.size()); }
  std::vector<int> modality_dims() const;
};

struct DatasetConfig {
  int stimuli_per_emotion = 8;
  double separation = 2.0;
  double expressiveness_sigma = 0.0;
  // > 0: stimulus variation lives on this many shared performer factors,
  // rendered per agent; 0 keeps independent per-dimension noise.
  int extero_factor_dim = 0;
  ModalitySpec vision{"vision", 40, 1.0};
  ModalitySpec audio{"audio", 60, 1.0};
  bool use_interoception = true;
  int ou_obs_steps = 32;  // interoception dim = 2 * ou_obs_steps
  core_affect::OUConfig ou;
  bool standardize = true;  // z-score per agent, modality, dimension
};

struct BuildResult {
  StimulusDataset data;
  // Full-resolution trajectories per replica row, kept for export.
  std::vector<core_affect::AffectTrajectory> trajectories_a, trajectories_b;
};

BuildResult build_dataset(const DatasetConfig& cfg, core_affect::ProfileKind profile_a,
                          core_affect::ProfileKind profile_b, std::uint64_t master_seed);

// In-place z-scoring of each column; near-constant columns are only centered.
void standardize_columns(Mat& features);

struct FeatureTable {
  Mat features;
  std::vector<int> labels;
  std::vector<int> stimulus_ids;
};

// Header: stimulus_id,label,f_0..f_{dim-1}. Labels may be emotion names or
// ordinals. Malformed input reports the offending line number.
FeatureTable load_feature_csv(std::istream& is, int dim);
FeatureTable load_feature_csv_file(const std::string& path, int dim);

void write_feature_csv(std::ostream& os, const Mat& features,
                       const std::vector<int>& labels,
                       const std::vector<int>& stimulus_ids);

}  // namespace coemo::stimuli
