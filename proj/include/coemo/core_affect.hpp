// Valence-arousal core-affect trajectories: mean-reverting OU dynamics per
// emotion, four interoceptive profiles, and the seven-replica initialization
// scheme used to stand in for repeated exposures to one stimulus.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "coemo/rng.hpp"

namespace coemo::core_affect {

enum class EmotionId : int {
  Neutral = 0,
  Calm,
  Happy,
  Sad,
  Angry,
  Fearful,
  Disgust,
  Surprised,
};

inline constexpr int kNumEmotions = 8;
inline constexpr int kReplicas = 7;

const char* emotion_name(EmotionId e);

struct OUParams {
  double mu_v = 0.0;
  double mu_a = 0.0;
  double theta_v = 1.0;
  double theta_a = 1.0;
  double sigma_v = 0.0;
  double sigma_a = 0.0;
};

enum class ProfileKind {
  Original,
  HappyInverse,
  LowValenceFocus,
  LowArousalFocus,
};

const char* profile_name(ProfileKind p);
ProfileKind profile_from_name(std::string_view name);

struct InteroceptiveProfile {
  ProfileKind kind = ProfileKind::Original;
  std::array<OUParams, kNumEmotions> params;

  const OUParams& operator[](EmotionId e) const {
    return params[static_cast<int>(e)];
  }
};

// Original comes verbatim from the per-emotion parameter table; HappyInverse
// flips only Happy's mean; the LowFocus kinds shrink one axis's mu, theta,
// sigma to a quarter across all emotions.
InteroceptiveProfile build_profile(ProfileKind kind);

struct AffectTrajectory {
  double dt = 0.0;
  std::vector<double> samples;  // steps x 2, (valence, arousal) pairs

  int steps() const { return static_cast<int>(samples.size() / 2); }
  double valence(int t) const { return samples[2 * static_cast<std::size_t>(t)]; }
  double arousal(int t) const { return samples[2 * static_cast<std::size_t>(t) + 1]; }
};

struct OUConfig {
  int steps = 345;
  double dt = 0.02;
  double clip = 1.5;  // per-axis bound applied to generated samples
};

// x' = x + theta (mu - x) dt + sigma sqrt(dt) noise, per axis.
std::array<double, 2> euler_maruyama_step(std::array<double, 2> x, const OUParams& p,
                                          double dt, std::array<double, 2> noise);

// Trajectory of cfg.steps samples starting at x0 (included as sample 0).
AffectTrajectory simulate_trajectory(std::array<double, 2> x0, const OUParams& p,
                                     const OUConfig& cfg, Rng& rng);

// Seven trajectories per label. Replica j starts at the Original-profile mean
// of the j-th emotion other than the label (ordinal order) and follows the
// label's dynamics under `profile`. Output is label-major, replica-minor.
std::vector<AffectTrajectory> generate_interoception(const std::vector<EmotionId>& labels,
                                                     const InteroceptiveProfile& profile,
                                                     const OUConfig& cfg, Rng& rng);

// Evenly spaced obs_steps samples (endpoints included), flattened to
// 2*obs_steps values. obs_steps must be in [1, steps()].
std::vector<double> flatten_downsampled(const AffectTrajectory& tr, int obs_steps);

// One row per sample: stimulus_id,replica,t,valence,arousal. Trajectories are
// grouped per stimulus in replica order.
void write_trajectory_csv(std::ostream& os, const std::vector<AffectTrajectory>& trajectories,
                          const std::vector<int>& stimulus_ids);

}  // namespace coemo::core_affect
