#include "coemo/mhng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace coemo::mhng {
namespace {

gmm::Vec row_vec(const Mat& m, int i) {
  gmm::Vec v(m.cols);
  for (int j = 0; j < m.cols; ++j) v(j) = m(i, j);
  return v;
}

std::vector<double> row_copy(const Mat& m, int i) {
  std::vector<double> v(m.cols);
  for (int j = 0; j < m.cols; ++j) v[j] = m(i, j);
  return v;
}

gmm::Mtx to_eigen(const Mat& m) {
  gmm::Mtx e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

std::vector<mvae::PriorView> make_views(const gmm::GmmParams& g) {
  std::vector<mvae::PriorView> views;
  views.reserve(g.comps.size());
  for (const auto& c : g.comps) views.push_back(mvae::make_prior_view(c));
  return views;
}

// Refresh the listener's mixture from its latents and signs, then run the
// configured number of full-batch ascent epochs against the new mixture.
double learn_phase(AgentState& ag, const stimuli::AgentData& obs, const Protocol& proto,
                   Rng& rng_gmm, Rng& rng_train) {
  const gmm::NwHyper hyper = protocol_hyper(proto);
  ag.gmm = gmm::update_agent_gmm(to_eigen(ag.latents), ag.signs, proto.k, hyper, rng_gmm);
  const std::vector<mvae::PriorView> views = make_views(ag.gmm);
  double elbo = 0.0;
  for (int e = 0; e < proto.train_epochs; ++e) {
    elbo = mvae::train_step(ag.mvae, ag.train, obs.modality, ag.signs, views,
                            proto.learning_rate, proto.momentum, rng_train);
  }
  return elbo;
}

// One direction of the exchange phase. AlwaysReject never reads the speaker:
// the listener redraws each sign from its own posterior instead.
ChannelStats exchange_phase(const AgentState* speaker, AgentState& listener,
                            Scenario scenario, Rng& rng, int round, char direction,
                            const EventHook& hook) {
  ChannelStats stats;
  const int d_count = static_cast<int>(listener.signs.size());
  double r_sum = 0.0;
  for (int d = 0; d < d_count; ++d) {
    const int previous = listener.signs[d];
    ExchangeEvent ev;
    ev.round = round;
    ev.direction = direction;
    ev.d = d;
    ev.previous = previous;
    if (scenario == Scenario::kAlwaysReject) {
      const int drawn = propose_sign(listener, d, rng);
      listener.signs[d] = drawn;
      ev.proposed = drawn;
      ev.accepted = true;
      ev.r = 0.0;
    } else {
      const ExchangeResult res = mh_exchange(*speaker, listener, d, scenario, rng);
      ev.proposed = res.proposed;
      ev.accepted = res.accepted;
      ev.r = res.r;
      if (res.accepted) ++stats.accepted;
      r_sum += res.r;
    }
    ++stats.total;
    if (hook) hook(ev);
  }
  stats.mean_r = stats.total > 0 ? r_sum / stats.total : 0.0;
  return stats;
}

}  // namespace

gmm::NwHyper protocol_hyper(const Protocol& proto) {
  gmm::NwHyper hyper = gmm::NwHyper::standard(proto.latent_dim);
  hyper.kappa0 = proto.gmm_kappa0;
  hyper.w0 /= proto.gmm_w0_scale * proto.gmm_w0_scale;
  hyper.validate();
  return hyper;
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kMetropolisHastings: return "mhng";
    case Scenario::kAlwaysReject: return "always_reject";
    case Scenario::kAlwaysAccept: return "always_accept";
  }
  return "unknown";
}

Scenario scenario_from_name(std::string_view name) {
  if (name == "mhng") return Scenario::kMetropolisHastings;
  if (name == "always_reject" || name == "no_communication")
    return Scenario::kAlwaysReject;
  if (name == "always_accept" || name == "all_acceptance")
    return Scenario::kAlwaysAccept;
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

GameState init_game(stimuli::StimulusDataset data, const Protocol& proto,
                    std::uint64_t master_seed) {
  if (proto.k < 1 || proto.latent_dim < 1 || proto.hidden_dim < 1)
    throw std::invalid_argument("init_game: non-positive protocol dimension");
  if (data.size() < 1) throw std::invalid_argument("init_game: empty dataset");

  GameState gs;
  gs.data = std::move(data);
  gs.k = proto.k;
  gs.rng_latent_a = Rng(derive_seed(master_seed, "mhng/latent/agent0"));
  gs.rng_latent_b = Rng(derive_seed(master_seed, "mhng/latent/agent1"));
  gs.rng_gmm_a = Rng(derive_seed(master_seed, "mhng/gmm/agent0"));
  gs.rng_gmm_b = Rng(derive_seed(master_seed, "mhng/gmm/agent1"));
  gs.rng_train_a = Rng(derive_seed(master_seed, "mhng/train/agent0"));
  gs.rng_train_b = Rng(derive_seed(master_seed, "mhng/train/agent1"));
  gs.rng_chan_ab = Rng(derive_seed(master_seed, "mhng/chan/ab"));
  gs.rng_chan_ba = Rng(derive_seed(master_seed, "mhng/chan/ba"));

  const std::vector<int> dims = gs.data.modality_dims();
  const gmm::NwHyper hyper = protocol_hyper(proto);
  const int d_count = gs.data.size();

  AgentState* agents[2] = {&gs.agent_a, &gs.agent_b};
  Rng* latent_rngs[2] = {&gs.rng_latent_a, &gs.rng_latent_b};
  const stimuli::AgentData* obs[2] = {&gs.data.agent_a, &gs.data.agent_b};
  for (int a = 0; a < 2; ++a) {
    Rng init(derive_seed(master_seed, a == 0 ? "mhng/init/agent0" : "mhng/init/agent1"));
    AgentState& ag = *agents[a];
    ag.signs.resize(d_count);
    for (int d = 0; d < d_count; ++d)
      ag.signs[d] = static_cast<int>(init.uniform() * proto.k);
    ag.mvae = mvae::init_mvae(dims, proto.latent_dim, proto.hidden_dim,
                              proto.init_scale, init);
    ag.train = mvae::make_train_state(ag.mvae);
    ag.gmm = gmm::prior_gmm(proto.k, hyper, init);
    ag.latents = Mat(d_count, proto.latent_dim);
  }

  // Warm-up: each agent learns its own observations against the unit prior
  // before the first exchange, anchoring latent geometry in data so the game
  // aligns signs on top of it instead of reorganizing it around early labels.
  if (proto.pretrain_epochs > 0) {
    gmm::GmmComponent unit;
    unit.mu = gmm::Vec::Zero(proto.latent_dim);
    unit.lambda = gmm::Mtx::Identity(proto.latent_dim, proto.latent_dim);
    const std::vector<mvae::PriorView> unit_view = {mvae::make_prior_view(unit)};
    const std::vector<int> zeros(d_count, 0);
    Rng* train_rngs[2] = {&gs.rng_train_a, &gs.rng_train_b};
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < proto.pretrain_epochs; ++e)
        mvae::train_step(agents[a]->mvae, agents[a]->train, obs[a]->modality, zeros,
                         unit_view, proto.learning_rate, proto.momentum,
                         *train_rngs[a]);
  }

  for (int a = 0; a < 2; ++a) resample_latents(*agents[a], *obs[a], *latent_rngs[a]);
  return gs;
}

int propose_sign(const AgentState& speaker, int d, Rng& rng) {
  if (d < 0 || d >= speaker.latents.rows)
    throw std::invalid_argument("propose_sign: stimulus index out of range");
  const gmm::Vec post = gmm::sign_posterior(row_vec(speaker.latents, d), speaker.gmm);
  return rng.categorical(post.data(), static_cast<int>(post.size()));
}

double acceptance_ratio(const gmm::Vec& listener_z, const gmm::GmmParams& listener_gmm,
                        int w_sp, int w_li) {
  const int k = listener_gmm.k();
  if (w_sp < 0 || w_sp >= k || w_li < 0 || w_li >= k)
    throw std::invalid_argument("acceptance_ratio: sign out of range");
  if (w_sp == w_li) return 1.0;
  const double log_r = gmm::component_loglik(listener_z, listener_gmm.comps[w_sp]) -
                       gmm::component_loglik(listener_z, listener_gmm.comps[w_li]);
  return std::exp(std::min(0.0, log_r));
}

ExchangeResult mh_exchange(const AgentState& speaker, AgentState& listener, int d,
                           Scenario scenario, Rng& rng) {
  if (d < 0 || d >= listener.latents.rows)
    throw std::invalid_argument("mh_exchange: stimulus index out of range");
  ExchangeResult res;
  res.proposed = propose_sign(speaker, d, rng);
  const int current = listener.signs[d];
  switch (scenario) {
    case Scenario::kAlwaysReject:
      res.r = 0.0;
      res.accepted = false;
      res.sign = current;
      break;
    case Scenario::kAlwaysAccept:
      res.r = 1.0;
      res.accepted = true;
      res.sign = res.proposed;
      break;
    case Scenario::kMetropolisHastings: {
      res.r = acceptance_ratio(row_vec(listener.latents, d), listener.gmm,
                               res.proposed, current);
      res.accepted = rng.uniform() < res.r;
      res.sign = res.accepted ? res.proposed : current;
      break;
    }
  }
  listener.signs[d] = res.sign;
  return res;
}

void resample_latents(AgentState& agent, const stimuli::AgentData& obs, Rng& rng) {
  const int d_count = agent.latents.rows;
  const int n_mod = static_cast<int>(obs.modality.size());
  if (n_mod != agent.mvae.modalities())
    throw std::invalid_argument("resample_latents: modality count mismatch");
  const std::vector<mvae::PriorView> views = make_views(agent.gmm);

  std::vector<mvae::DiagGaussian> experts;
  for (int d = 0; d < d_count; ++d) {
    experts.clear();
    for (int m = 0; m < n_mod; ++m)
      experts.push_back(mvae::encode_modality(agent.mvae.enc[m],
                                              row_copy(obs.modality[m], d)));
    experts.push_back(mvae::prior_expert(views[agent.signs[d]]));
    const mvae::DiagGaussian q = mvae::poe_fuse(experts);
    const std::vector<double> z = mvae::sample_latent(q, rng);
    for (int j = 0; j < agent.latents.cols; ++j) agent.latents(d, j) = z[j];
  }
}

RoundStats run_round(GameState& gs, Scenario scenario, const Protocol& proto,
                     const EventHook& hook) {
  RoundStats stats;
  stats.round = gs.round + 1;

  resample_latents(gs.agent_a, gs.data.agent_a, gs.rng_latent_a);
  resample_latents(gs.agent_b, gs.data.agent_b, gs.rng_latent_b);

  const bool isolated = scenario == Scenario::kAlwaysReject;
  stats.ab = exchange_phase(isolated ? nullptr : &gs.agent_a, gs.agent_b, scenario,
                            gs.rng_chan_ab, stats.round, 'A', hook);
  stats.elbo_b = learn_phase(gs.agent_b, gs.data.agent_b, proto, gs.rng_gmm_b,
                             gs.rng_train_b);
  stats.ba = exchange_phase(isolated ? nullptr : &gs.agent_b, gs.agent_a, scenario,
                            gs.rng_chan_ba, stats.round, 'B', hook);
  stats.elbo_a = learn_phase(gs.agent_a, gs.data.agent_a, proto, gs.rng_gmm_a,
                             gs.rng_train_a);

  gs.round += 1;
  return stats;
}

metrics::MetricsReport compute_round_metrics(const GameState& gs) {
  metrics::MetricsReport rep;
  rep.round = gs.round;
  rep.ari_a = metrics::adjusted_rand_index(gs.agent_a.signs, gs.data.labels);
  rep.ari_b = metrics::adjusted_rand_index(gs.agent_b.signs, gs.data.labels);
  rep.kappa = metrics::cohens_kappa(gs.agent_a.signs, gs.agent_b.signs);
  // A fully collapsed sign table has no defined separation; report it as the
  // worst possible score rather than aborting the run.
  const auto dbs_or_inf = [](const Mat& latents, const std::vector<int>& signs) {
    try {
      return metrics::davies_bouldin(latents, signs);
    } catch (const std::runtime_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  rep.dbs_a = dbs_or_inf(gs.agent_a.latents, gs.agent_a.signs);
  rep.dbs_b = dbs_or_inf(gs.agent_b.latents, gs.agent_b.signs);
  rep.topsim = metrics::topsim(gs.agent_a.latents, gs.agent_b.latents);
  rep.recall_a = metrics::recall_heatmap(gs.agent_a.signs, gs.data.labels,
                                         core_affect::kNumEmotions, gs.k);
  rep.recall_b = metrics::recall_heatmap(gs.agent_b.signs, gs.data.labels,
                                         core_affect::kNumEmotions, gs.k);
  return rep;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const EventHook& hook) {
  if (cfg.rounds < 0) throw std::invalid_argument("run_experiment: negative rounds");
  stimuli::BuildResult built =
      stimuli::build_dataset(cfg.dataset, cfg.profile_a, cfg.profile_b, cfg.seed);
  ExperimentResult res{init_game(std::move(built.data), cfg.protocol, cfg.seed), {}, {}};
  res.trace.reserve(cfg.rounds + 1);
  res.trace.push_back(compute_round_metrics(res.state));
  for (int t = 0; t < cfg.rounds; ++t) {
    res.rounds.push_back(run_round(res.state, cfg.scenario, cfg.protocol, hook));
    res.trace.push_back(compute_round_metrics(res.state));
  }
  return res;
}

}  // namespace coemo::mhng
