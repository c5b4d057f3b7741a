#include "coemo/core_affect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace coemo::core_affect {

const char* emotion_name(EmotionId e) {
  static const char* names[kNumEmotions] = {"Neutral", "Calm",    "Happy",   "Sad",
                                            "Angry",   "Fearful", "Disgust", "Surprised"};
  return names[static_cast<int>(e)];
}

const char* profile_name(ProfileKind p) {
  switch (p) {
    case ProfileKind::Original: return "original";
    case ProfileKind::HappyInverse: return "happy_inverse";
    case ProfileKind::LowValenceFocus: return "low_valence_focus";
    case ProfileKind::LowArousalFocus: return "low_arousal_focus";
  }
  return "?";
}

ProfileKind profile_from_name(std::string_view name) {
  if (name == "original") return ProfileKind::Original;
  if (name == "happy_inverse") return ProfileKind::HappyInverse;
  if (name == "low_valence_focus") return ProfileKind::LowValenceFocus;
  if (name == "low_arousal_focus") return ProfileKind::LowArousalFocus;
  throw std::invalid_argument("unknown profile kind: " + std::string(name));
}

InteroceptiveProfile build_profile(ProfileKind kind) {
  InteroceptiveProfile p;
  p.kind = kind;
  // {mu_v, mu_a, theta_v, theta_a, sigma_v, sigma_a} per emotion.
  p.params = {{
      {0.00, 0.00, 1.5, 1.5, 0.090, 0.090},   // Neutral
      {0.80, -0.50, 2.1, 1.8, 0.135, 0.180},  // Calm
      {0.90, 0.50, 2.7, 2.4, 0.090, 0.225},   // Happy
      {-0.70, -0.50, 2.4, 2.1, 0.180, 0.135}, // Sad
      {-0.60, 0.60, 1.8, 2.7, 0.225, 0.270},  // Angry
      {-0.80, 0.70, 1.5, 3.0, 0.270, 0.315},  // Fearful
      {-0.90, 0.20, 2.1, 2.4, 0.225, 0.225},  // Disgust
      {0.00, 0.80, 1.2, 1.8, 0.180, 0.360},   // Surprised
  }};
  switch (kind) {
    case ProfileKind::Original:
      break;
    case ProfileKind::HappyInverse: {
      auto& happy = p.params[static_cast<int>(EmotionId::Happy)];
      happy.mu_v = -0.9;
      happy.mu_a = -0.5;
      break;
    }
    case ProfileKind::LowValenceFocus:
      for (auto& e : p.params) {
        e.mu_v *= 0.25;
        e.theta_v *= 0.25;
        e.sigma_v *= 0.25;
      }
      break;
    case ProfileKind::LowArousalFocus:
      for (auto& e : p.params) {
        e.mu_a *= 0.25;
        e.theta_a *= 0.25;
        e.sigma_a *= 0.25;
      }
      break;
  }
  return p;
}

std::array<double, 2> euler_maruyama_step(std::array<double, 2> x, const OUParams& p,
                                          double dt, std::array<double, 2> noise) {
  if (!(dt > 0.0)) throw std::invalid_argument("euler_maruyama_step: dt must be > 0");
  if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(noise[0]) ||
      !std::isfinite(noise[1]))
    throw std::invalid_argument("euler_maruyama_step: non-finite input");
  const double sdt = std::sqrt(dt);
  return {x[0] + p.theta_v * (p.mu_v - x[0]) * dt + p.sigma_v * sdt * noise[0],
          x[1] + p.theta_a * (p.mu_a - x[1]) * dt + p.sigma_a * sdt * noise[1]};
}

AffectTrajectory simulate_trajectory(std::array<double, 2> x0, const OUParams& p,
                                     const OUConfig& cfg, Rng& rng) {
  if (cfg.steps < 1) throw std::invalid_argument("simulate_trajectory: steps must be >= 1");
  AffectTrajectory tr;
  tr.dt = cfg.dt;
  tr.samples.reserve(2 * static_cast<std::size_t>(cfg.steps));
  auto clipped = [&](double v) { return std::clamp(v, -cfg.clip, cfg.clip); };
  std::array<double, 2> x = {clipped(x0[0]), clipped(x0[1])};
  tr.samples.push_back(x[0]);
  tr.samples.push_back(x[1]);
  for (int t = 1; t < cfg.steps; ++t) {
    x = euler_maruyama_step(x, p, cfg.dt, {rng.normal(), rng.normal()});
    x = {clipped(x[0]), clipped(x[1])};
    tr.samples.push_back(x[0]);
    tr.samples.push_back(x[1]);
  }
  return tr;
}

std::vector<AffectTrajectory> generate_interoception(const std::vector<EmotionId>& labels,
                                                     const InteroceptiveProfile& profile,
                                                     const OUConfig& cfg, Rng& rng) {
  const InteroceptiveProfile original = build_profile(ProfileKind::Original);
  std::vector<AffectTrajectory> out;
  out.reserve(labels.size() * kReplicas);
  for (EmotionId label : labels) {
    const OUParams& dyn = profile[label];
    for (int e = 0; e < kNumEmotions; ++e) {
      if (e == static_cast<int>(label)) continue;
      const OUParams& start = original.params[e];
      out.push_back(simulate_trajectory({start.mu_v, start.mu_a}, dyn, cfg, rng));
    }
  }
  return out;
}

std::vector<double> flatten_downsampled(const AffectTrajectory& tr, int obs_steps) {
  const int n = tr.steps();
  if (obs_steps < 1 || obs_steps > n)
    throw std::invalid_argument("flatten_downsampled: obs_steps out of range");
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(obs_steps));
  for (int j = 0; j < obs_steps; ++j) {
    const int t = obs_steps == 1
                      ? n - 1
                      : static_cast<int>(std::llround(static_cast<double>(j) * (n - 1) /
                                                      (obs_steps - 1)));
    out.push_back(tr.valence(t));
    out.push_back(tr.arousal(t));
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<AffectTrajectory>& trajectories,
                          const std::vector<int>& stimulus_ids) {
  if (trajectories.size() != stimulus_ids.size() * static_cast<std::size_t>(kReplicas))
    throw std::invalid_argument("write_trajectory_csv: expected 7 trajectories per stimulus");
  os << "stimulus_id,replica,t,valence,arousal\n";
  char buf[96];
  for (std::size_t s = 0; s < stimulus_ids.size(); ++s) {
    for (int r = 0; r < kReplicas; ++r) {
      const AffectTrajectory& tr = trajectories[s * kReplicas + r];
      for (int t = 0; t < tr.steps(); ++t) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g\n", stimulus_ids[s], r, t,
                      tr.valence(t), tr.arousal(t));
        os << buf;
      }
    }
  }
}

}  // namespace coemo::core_affect
