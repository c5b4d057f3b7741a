#include "coemo/stimuli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coemo::stimuli {

namespace ca = core_affect;

std::vector<int> StimulusDataset::modality_dims() const {
  std::vector<int> dims;
  for (const auto& m : agent_a.modality) dims.push_back(m.cols);
  return dims;
}

Mat make_prototypes(const ModalitySpec& spec, int n_emotions, int agent_id,
                    double separation, std::uint64_t master_seed,
                    double expressiveness_sigma) {
  if (spec.dim < 1) throw std::invalid_argument("make_prototypes: dim must be >= 1");
  if (n_emotions < 1) throw std::invalid_argument("make_prototypes: need emotions");
  if (expressiveness_sigma < 0.0)
    throw std::invalid_argument("make_prototypes: expressiveness_sigma must be >= 0");
  Rng rng(derive_seed(master_seed,
                      "proto/" + spec.name + "/agent" + std::to_string(agent_id)));
  // How distinctly this agent's body renders each emotion. The stream depends
  // only on the agent, so one body is equally expressive in every modality.
  std::vector<double> radius(n_emotions, 1.0);
  if (expressiveness_sigma > 0.0) {
    Rng body(derive_seed(master_seed, "expressive/agent" + std::to_string(agent_id)));
    for (auto& r : radius)
      r = std::exp(expressiveness_sigma * body.normal() -
                   0.5 * expressiveness_sigma * expressiveness_sigma);
  }
  Mat protos(n_emotions, spec.dim);
  for (int e = 0; e < n_emotions; ++e) {
    double* row = protos.row(e);
    for (int j = 0; j < spec.dim; ++j) row[j] = separation * radius[e] * rng.normal();
  }
  return protos;
}

void standardize_columns(Mat& features) {
  const int n = features.rows, d = features.cols;
  if (n < 1) return;
  for (int j = 0; j < d; ++j) {
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = features(i, j);
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / n;
    const double var = std::max(0.0, s2 / n - mean * mean);
    const double sd = std::sqrt(var);
    const double inv = sd > 1e-12 ? 1.0 / sd : 1.0;
    for (int i = 0; i < n; ++i) features(i, j) = (features(i, j) - mean) * inv;
  }
}

namespace {

Mat exteroception(const ModalitySpec& spec, const Mat& protos,
                  const std::vector<int>& stim_labels, int agent_id,
                  int factor_dim, std::uint64_t master_seed) {
  Rng rng(derive_seed(master_seed,
                      "extero/" + spec.name + "/agent" + std::to_string(agent_id)));
  const int n_stimuli = static_cast<int>(stim_labels.size());

  // Stimulus-to-stimulus variation within a class. With factor_dim = 0 each
  // stimulus gets an independent draw per dimension. Otherwise stimuli carry
  // low-dimensional performer coordinates shared by both agents, rendered
  // through an agent-specific loading matrix: the same two performances that
  // nearly coincide for one observer can stay apart for the other only through
  // the class prototypes.
  Mat noise(n_stimuli, spec.dim);
  if (factor_dim <= 0) {
    for (auto& v : noise.a) v = spec.noise_scale * rng.normal();
  } else {
    Rng shared(derive_seed(master_seed, "extero-factors"));
    Mat factors(n_stimuli, factor_dim);
    for (auto& v : factors.a) v = shared.normal();
    Mat loading(factor_dim, spec.dim);
    const double scale = spec.noise_scale / std::sqrt(static_cast<double>(factor_dim));
    for (auto& v : loading.a) v = scale * rng.normal();
    const double residual = 0.05 * spec.noise_scale;
    for (int s = 0; s < n_stimuli; ++s)
      for (int j = 0; j < spec.dim; ++j) {
        double v = 0.0;
        for (int q = 0; q < factor_dim; ++q) v += factors(s, q) * loading(q, j);
        noise(s, j) = v + residual * rng.normal();
      }
  }

  Mat rows(n_stimuli * ca::kReplicas, spec.dim);
  for (int s = 0; s < n_stimuli; ++s) {
    // One draw per stimulus: its replicas show the same exteroception.
    const double* proto = protos.row(stim_labels[s]);
    for (int r = 0; r < ca::kReplicas; ++r) {
      double* out = rows.row(s * ca::kReplicas + r);
      for (int j = 0; j < spec.dim; ++j) out[j] = proto[j] + noise(s, j);
    }
  }
  return rows;
}

Mat interoception_features(const std::vector<ca::AffectTrajectory>& trajectories,
                           int obs_steps) {
  Mat rows(static_cast<int>(trajectories.size()), 2 * obs_steps);
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto flat = ca::flatten_downsampled(trajectories[i], obs_steps);
    std::copy(flat.begin(), flat.end(), rows.row(static_cast<int>(i)));
  }
  return rows;
}

}  // namespace

BuildResult build_dataset(const DatasetConfig& cfg, ca::ProfileKind profile_a,
                          ca::ProfileKind profile_b, std::uint64_t master_seed) {
  if (cfg.stimuli_per_emotion < 1)
    throw std::invalid_argument("build_dataset: stimuli_per_emotion must be >= 1");
  if (cfg.ou_obs_steps < 1 || cfg.ou_obs_steps > cfg.ou.steps)
    throw std::invalid_argument("build_dataset: ou_obs_steps out of range");

  // Stimulus list: every emotion, stimuli_per_emotion times.
  std::vector<int> stim_labels;
  std::vector<ca::EmotionId> stim_emotions;
  for (int e = 0; e < ca::kNumEmotions; ++e)
    for (int s = 0; s < cfg.stimuli_per_emotion; ++s) {
      stim_labels.push_back(e);
      stim_emotions.push_back(static_cast<ca::EmotionId>(e));
    }
  const int n_stimuli = static_cast<int>(stim_labels.size());

  BuildResult out;
  StimulusDataset& data = out.data;
  for (int s = 0; s < n_stimuli; ++s)
    for (int r = 0; r < ca::kReplicas; ++r) {
      data.labels.push_back(stim_labels[s]);
      data.stimulus_ids.push_back(s);
      data.replicas.push_back(r);
    }

  data.modality_names = {cfg.vision.name, cfg.audio.name};
  for (int agent = 0; agent < 2; ++agent) {
    AgentData& ad = agent == 0 ? data.agent_a : data.agent_b;
    const Mat vp = make_prototypes(cfg.vision, ca::kNumEmotions, agent, cfg.separation,
                                   master_seed, cfg.expressiveness_sigma);
    const Mat ap = make_prototypes(cfg.audio, ca::kNumEmotions, agent, cfg.separation,
                                   master_seed, cfg.expressiveness_sigma);
    ad.modality.push_back(exteroception(cfg.vision, vp, stim_labels, agent,
                                        cfg.extero_factor_dim, master_seed));
    ad.modality.push_back(exteroception(cfg.audio, ap, stim_labels, agent,
                                        cfg.extero_factor_dim, master_seed));
  }

  if (cfg.use_interoception) {
    data.modality_names.push_back("interoception");
    Rng rng_a(derive_seed(master_seed, "ou/agent0"));
    Rng rng_b(derive_seed(master_seed, "ou/agent1"));
    out.trajectories_a =
        ca::generate_interoception(stim_emotions, ca::build_profile(profile_a), cfg.ou, rng_a);
    out.trajectories_b =
        ca::generate_interoception(stim_emotions, ca::build_profile(profile_b), cfg.ou, rng_b);
    data.agent_a.modality.push_back(
        interoception_features(out.trajectories_a, cfg.ou_obs_steps));
    data.agent_b.modality.push_back(
        interoception_features(out.trajectories_b, cfg.ou_obs_steps));
  }

  if (cfg.standardize) {
    for (auto& m : data.agent_a.modality) standardize_columns(m);
    for (auto& m : data.agent_b.modality) standardize_columns(m);
  }
  return out;
}

namespace {

int parse_label(const std::string& tok, int line_no) {
  for (int e = 0; e < ca::kNumEmotions; ++e)
    if (tok == ca::emotion_name(static_cast<ca::EmotionId>(e))) return e;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos == tok.size() && v >= 0 && v < ca::kNumEmotions) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("feature csv line " + std::to_string(line_no) +
                           ": unknown label '" + tok + "'");
}

}  // namespace

FeatureTable load_feature_csv(std::istream& is, int dim) {
  if (dim < 1) throw std::invalid_argument("load_feature_csv: dim must be >= 1");
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("feature csv line 1: missing header");
  {
    std::string want = "stimulus_id,label";
    for (int j = 0; j < dim; ++j) want += ",f_" + std::to_string(j);
    if (line != want)
      throw std::runtime_error("feature csv line 1: header mismatch, expected '" + want +
                               "'");
  }

  FeatureTable table;
  std::vector<double> values;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (static_cast<int>(toks.size()) != dim + 2)
      throw std::runtime_error("feature csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(dim + 2) + " fields, got " +
                               std::to_string(toks.size()));
    try {
      std::size_t pos = 0;
      const int sid = std::stoi(toks[0], &pos);
      if (pos != toks[0].size()) throw std::invalid_argument("trailing");
      table.stimulus_ids.push_back(sid);
    } catch (const std::exception&) {
      throw std::runtime_error("feature csv line " + std::to_string(line_no) +
                               ": bad stimulus_id '" + toks[0] + "'");
    }
    table.labels.push_back(parse_label(toks[1], line_no));
    for (int j = 0; j < dim; ++j) {
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(toks[2 + j], &pos));
        if (pos != toks[2 + j].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::runtime_error("feature csv line " + std::to_string(line_no) +
                                 ": bad value '" + toks[2 + j] + "'");
      }
    }
  }
  table.features.resize(static_cast<int>(table.labels.size()), dim);
  std::copy(values.begin(), values.end(), table.features.data());
  return table;
}

FeatureTable load_feature_csv_file(const std::string& path, int dim) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_feature_csv: cannot open " + path);
  return load_feature_csv(is, dim);
}

void write_feature_csv(std::ostream& os, const Mat& features,
                       const std::vector<int>& labels,
                       const std::vector<int>& stimulus_ids) {
  if (features.rows != static_cast<int>(labels.size()) ||
      features.rows != static_cast<int>(stimulus_ids.size()))
    throw std::invalid_argument("write_feature_csv: row count mismatch");
  os << "stimulus_id,label";
  for (int j = 0; j < features.cols; ++j) os << ",f_" << j;
  os << "\n";
  char buf[32];
  for (int i = 0; i < features.rows; ++i) {
    os << stimulus_ids[i] << ','
       << ca::emotion_name(static_cast<ca::EmotionId>(labels[i]));
    for (int j = 0; j < features.cols; ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", features(i, j));
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace coemo::stimuli
