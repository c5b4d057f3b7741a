// Metropolis-Hastings naming game between two agents: each round both agents
// resample latents given their current signs, exchange signs over every
// stimulus in both directions, and refresh their mixture and autoencoder
// parameters after listening. Scenario variants replace the acceptance rule.
#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "coemo/core_affect.hpp"
#include "coemo/gmm.hpp"
#include "coemo/mat.hpp"
#include "coemo/metrics.hpp"
#include "coemo/mvae.hpp"
#include "coemo/rng.hpp"
#include "coemo/stimuli.hpp"

namespace coemo::mhng {

enum class Scenario { kMetropolisHastings, kAlwaysReject, kAlwaysAccept };

// "mhng", "always_reject", "always_accept".
const char* scenario_name(Scenario s);
Scenario scenario_from_name(std::string_view name);

struct AgentState {
  mvae::MvaeParams mvae;
  mvae::TrainState train;  // momentum carries across rounds
  gmm::GmmParams gmm;
  Mat latents;             // D x latent_dim
  std::vector<int> signs;  // D entries in [0, k)
};

// One sign-channel action. `accepted` means `proposed` took effect; the
// final sign table is reproducible from the initial one plus these events.
struct ExchangeEvent {
  int round = 0;
  char direction = 'A';  // 'A': A speaks to B; 'B': B speaks to A
  int d = 0;
  int previous = 0;
  int proposed = 0;
  bool accepted = false;
  double r = 0.0;  // MH acceptance ratio; 0 under self-sampling
};
using EventHook = std::function<void(const ExchangeEvent&)>;

struct ChannelStats {
  int accepted = 0;
  int total = 0;
  double mean_r = 0.0;
};

struct RoundStats {
  int round = 0;
  ChannelStats ab, ba;
  double elbo_a = 0.0, elbo_b = 0.0;  // last training epoch, pre-update
};

// Game-loop knobs. The mixture prior starts from the standard weak
// Normal-Wishart; gmm_w0_scale > 1 lowers the scale matrix, which raises the
// floor on component spread and keeps sign posteriors from degenerating.
struct Protocol {
  int k = 9;
  int latent_dim = 9;
  int hidden_dim = 64;
  double init_scale = 0.1;
  // Sign-free warm-up: epochs of autoencoder training against the unit
  // Gaussian prior before any exchange, so agents enter the game with
  // latents grounded in their own data rather than in early consensus.
  int pretrain_epochs = 0;
  int train_epochs = 20;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double gmm_kappa0 = 0.1;
  double gmm_w0_scale = 1.0;  // w0 = I / (nu0 * scale^2)
};

// The Normal-Wishart prior the game uses for every mixture update.
gmm::NwHyper protocol_hyper(const Protocol& proto);

struct GameState {
  stimuli::StimulusDataset data;
  AgentState agent_a, agent_b;
  int round = 0;
  int k = 0;
  // Named deterministic streams, one per concern; reseeded by init_game.
  Rng rng_latent_a{0}, rng_latent_b{0};
  Rng rng_gmm_a{0}, rng_gmm_b{0};
  Rng rng_train_a{0}, rng_train_b{0};
  Rng rng_chan_ab{0}, rng_chan_ba{0};
};

// Uniform random signs, scaled-Gaussian autoencoder weights, prior-drawn
// mixtures, then the sign-free warm-up (pretrain_epochs) and an initial
// latent resample conditioned on the random signs.
GameState init_game(stimuli::StimulusDataset data, const Protocol& proto,
                    std::uint64_t master_seed);

// Draw a sign from the speaker's posterior over its latent for stimulus d.
int propose_sign(const AgentState& speaker, int d, Rng& rng);

// min(1, N(z | mu_{w_sp}, Lambda_{w_sp}^{-1}) / N(z | mu_{w_li}, ...)) under
// the listener's mixture, evaluated in log space.
double acceptance_ratio(const gmm::Vec& listener_z, const gmm::GmmParams& listener_gmm,
                        int w_sp, int w_li);

struct ExchangeResult {
  int sign = 0;  // listener's sign after the exchange
  int proposed = 0;
  bool accepted = false;
  double r = 0.0;
};

// Speaker proposes for stimulus d; the listener's sign table is updated in
// place per the scenario rule (MH coin flip, keep, or take).
ExchangeResult mh_exchange(const AgentState& speaker, AgentState& listener, int d,
                           Scenario scenario, Rng& rng);

// z_d ~ PoE(modality encoders, mixture component of signs[d]) for every d.
void resample_latents(AgentState& agent, const stimuli::AgentData& obs, Rng& rng);

// One full iteration: latent resample for both agents, A-to-B exchange,
// B refreshes mixture and trains, B-to-A exchange, A refreshes and trains.
// AlwaysReject replaces each exchange with the listener sampling from its
// own posterior, so the speaker's state is never read.
RoundStats run_round(GameState& gs, Scenario scenario, const Protocol& proto,
                     const EventHook& hook = {});

struct ExperimentConfig {
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::kMetropolisHastings;
  core_affect::ProfileKind profile_a = core_affect::ProfileKind::Original;
  core_affect::ProfileKind profile_b = core_affect::ProfileKind::Original;
  stimuli::DatasetConfig dataset;
  Protocol protocol;
  int rounds = 50;
};

struct ExperimentResult {
  GameState state;
  std::vector<metrics::MetricsReport> trace;  // rounds + 1 entries, round 0 first
  std::vector<RoundStats> rounds;
};

// Sign agreement, per-agent clustering quality, latent-structure similarity,
// and matched recall for the current state.
metrics::MetricsReport compute_round_metrics(const GameState& gs);

// Builds the dataset, initializes both agents, runs the configured number of
// rounds, and records metrics for the initial state and after every round.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const EventHook& hook = {});

}  // namespace coemo::mhng
