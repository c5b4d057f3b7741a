#include "coemo/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "coemo/metrics.hpp"

namespace coemo::harness {

namespace fs = std::filesystem;
namespace ca = core_affect;
using nlohmann::json;

namespace {

const std::vector<std::string> kConditionNames = {
    "vision_audio", "original_original", "original_happy_inverse",
    "original_low_valence", "original_low_arousal"};

const std::vector<std::string> kMetricKeys = {"ari_a", "ari_b",  "kappa",
                                              "dbs_a", "dbs_b", "topsim"};

// %.17g keeps doubles round-trippable and the files byte-stable.
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

ConditionSpec condition_spec(const std::string& name) {
  if (name == "vision_audio")
    return {ca::ProfileKind::Original, ca::ProfileKind::Original, false};
  if (name == "original_original")
    return {ca::ProfileKind::Original, ca::ProfileKind::Original, true};
  if (name == "original_happy_inverse")
    return {ca::ProfileKind::Original, ca::ProfileKind::HappyInverse, true};
  if (name == "original_low_valence")
    return {ca::ProfileKind::Original, ca::ProfileKind::LowValenceFocus, true};
  if (name == "original_low_arousal")
    return {ca::ProfileKind::Original, ca::ProfileKind::LowArousalFocus, true};
  throw std::invalid_argument("unknown condition: " + name);
}

const std::vector<std::string>& condition_names() { return kConditionNames; }

void RunConfig::validate() const {
  condition_spec(condition);
  mhng::scenario_from_name(scenario);
  if (stimuli_per_emotion < 1) throw std::invalid_argument("stimuli_per_emotion must be >= 1");
  if (separation < 0.0) throw std::invalid_argument("separation must be >= 0");
  if (expressiveness_sigma < 0.0) throw std::invalid_argument("expressiveness_sigma must be >= 0");
  if (extero_factor_dim < 0) throw std::invalid_argument("extero_factor_dim must be >= 0");
  if (vision_dim < 1 || audio_dim < 1) throw std::invalid_argument("modality dims must be >= 1");
  if (vision_noise < 0.0 || audio_noise < 0.0) throw std::invalid_argument("noise must be >= 0");
  if (ou_steps < 1) throw std::invalid_argument("ou_steps must be >= 1");
  if (ou_dt <= 0.0) throw std::invalid_argument("ou_dt must be > 0");
  if (ou_clip <= 0.0) throw std::invalid_argument("ou_clip must be > 0");
  if (ou_obs_steps < 1 || ou_obs_steps > ou_steps)
    throw std::invalid_argument("ou_obs_steps must be in [1, ou_steps]");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (latent_dim < 1) throw std::invalid_argument("latent_dim must be >= 1");
  if (hidden_dim < 1) throw std::invalid_argument("hidden_dim must be >= 1");
  if (init_scale <= 0.0) throw std::invalid_argument("init_scale must be > 0");
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (pretrain_epochs < 0) throw std::invalid_argument("pretrain_epochs must be >= 0");
  if (train_epochs < 0) throw std::invalid_argument("train_epochs must be >= 0");
  if (learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be > 0");
  if (momentum < 0.0 || momentum >= 1.0) throw std::invalid_argument("momentum must be in [0, 1)");
  if (gmm_kappa0 <= 0.0) throw std::invalid_argument("gmm_kappa0 must be > 0");
  if (gmm_w0_scale <= 0.0) throw std::invalid_argument("gmm_w0_scale must be > 0");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  parse_seed_list(sweep_seeds);
  for (const auto& s : split(sweep_scenarios, ','))
    if (!s.empty()) mhng::scenario_from_name(s);
  if (!sweep_conditions.empty())
    for (const auto& c : split(sweep_conditions, ','))
      if (!c.empty()) condition_spec(c);
}

mhng::ExperimentConfig RunConfig::to_experiment() const {
  validate();
  const ConditionSpec cond = condition_spec(condition);
  mhng::ExperimentConfig e;
  e.seed = seed;
  e.scenario = mhng::scenario_from_name(scenario);
  e.profile_a = cond.profile_a;
  e.profile_b = cond.profile_b;
  e.rounds = rounds;
  e.dataset.stimuli_per_emotion = stimuli_per_emotion;
  e.dataset.separation = separation;
  e.dataset.expressiveness_sigma = expressiveness_sigma;
  e.dataset.extero_factor_dim = extero_factor_dim;
  e.dataset.vision.dim = vision_dim;
  e.dataset.audio.dim = audio_dim;
  e.dataset.vision.noise_scale = vision_noise;
  e.dataset.audio.noise_scale = audio_noise;
  e.dataset.use_interoception = cond.use_interoception;
  e.dataset.ou.steps = ou_steps;
  e.dataset.ou.dt = ou_dt;
  e.dataset.ou.clip = ou_clip;
  e.dataset.ou_obs_steps = ou_obs_steps;
  e.protocol.k = k;
  e.protocol.latent_dim = latent_dim;
  e.protocol.hidden_dim = hidden_dim;
  e.protocol.init_scale = init_scale;
  e.protocol.pretrain_epochs = pretrain_epochs;
  e.protocol.train_epochs = train_epochs;
  e.protocol.learning_rate = learning_rate;
  e.protocol.momentum = momentum;
  e.protocol.gmm_kappa0 = gmm_kappa0;
  e.protocol.gmm_w0_scale = gmm_w0_scale;
  return e;
}

namespace {

// One row per key: pointerless dispatch for parse/serialize symmetry.
struct KeyDef {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::uint64_t parse_u64(const std::string& v) {
  std::size_t pos = 0;
  const unsigned long long x = std::stoull(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not an integer: " + v);
  return static_cast<std::uint64_t>(x);
}

int parse_int(const std::string& v) {
  std::size_t pos = 0;
  const long x = std::stol(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not an integer: " + v);
  return static_cast<int>(x);
}

double parse_num(const std::string& v) {
  std::size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not a number: " + v);
  return x;
}

std::string parse_str(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return v.substr(1, v.size() - 2);
  return v;
}

std::string quote(const std::string& s) { return '"' + s + '"'; }

const std::vector<KeyDef>& key_defs() {
  static const std::vector<KeyDef> defs = {
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"scenario", [](RunConfig& c, const std::string& v) { c.scenario = parse_str(v); },
       [](const RunConfig& c) { return quote(c.scenario); }},
      {"condition", [](RunConfig& c, const std::string& v) { c.condition = parse_str(v); },
       [](const RunConfig& c) { return quote(c.condition); }},
      {"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = parse_str(v); },
       [](const RunConfig& c) { return quote(c.out_dir); }},
      {"stimuli_per_emotion",
       [](RunConfig& c, const std::string& v) { c.stimuli_per_emotion = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.stimuli_per_emotion); }},
      {"separation", [](RunConfig& c, const std::string& v) { c.separation = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.separation); }},
      {"expressiveness_sigma",
       [](RunConfig& c, const std::string& v) { c.expressiveness_sigma = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.expressiveness_sigma); }},
      {"extero_factor_dim",
       [](RunConfig& c, const std::string& v) { c.extero_factor_dim = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.extero_factor_dim); }},
      {"vision_dim", [](RunConfig& c, const std::string& v) { c.vision_dim = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.vision_dim); }},
      {"audio_dim", [](RunConfig& c, const std::string& v) { c.audio_dim = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.audio_dim); }},
      {"vision_noise", [](RunConfig& c, const std::string& v) { c.vision_noise = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.vision_noise); }},
      {"audio_noise", [](RunConfig& c, const std::string& v) { c.audio_noise = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.audio_noise); }},
      {"ou_steps", [](RunConfig& c, const std::string& v) { c.ou_steps = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.ou_steps); }},
      {"ou_dt", [](RunConfig& c, const std::string& v) { c.ou_dt = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.ou_dt); }},
      {"ou_clip", [](RunConfig& c, const std::string& v) { c.ou_clip = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.ou_clip); }},
      {"ou_obs_steps", [](RunConfig& c, const std::string& v) { c.ou_obs_steps = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.ou_obs_steps); }},
      {"k", [](RunConfig& c, const std::string& v) { c.k = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.k); }},
      {"latent_dim", [](RunConfig& c, const std::string& v) { c.latent_dim = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.latent_dim); }},
      {"hidden_dim", [](RunConfig& c, const std::string& v) { c.hidden_dim = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.hidden_dim); }},
      {"init_scale", [](RunConfig& c, const std::string& v) { c.init_scale = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.init_scale); }},
      {"rounds", [](RunConfig& c, const std::string& v) { c.rounds = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.rounds); }},
      {"pretrain_epochs", [](RunConfig& c, const std::string& v) { c.pretrain_epochs = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.pretrain_epochs); }},
      {"train_epochs", [](RunConfig& c, const std::string& v) { c.train_epochs = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.train_epochs); }},
      {"learning_rate", [](RunConfig& c, const std::string& v) { c.learning_rate = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.learning_rate); }},
      {"momentum", [](RunConfig& c, const std::string& v) { c.momentum = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.momentum); }},
      {"gmm_kappa0", [](RunConfig& c, const std::string& v) { c.gmm_kappa0 = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.gmm_kappa0); }},
      {"gmm_w0_scale", [](RunConfig& c, const std::string& v) { c.gmm_w0_scale = parse_num(v); },
       [](const RunConfig& c) { return fmt_double(c.gmm_w0_scale); }},
      {"sweep_seeds", [](RunConfig& c, const std::string& v) { c.sweep_seeds = parse_str(v); },
       [](const RunConfig& c) { return quote(c.sweep_seeds); }},
      {"sweep_scenarios",
       [](RunConfig& c, const std::string& v) { c.sweep_scenarios = parse_str(v); },
       [](const RunConfig& c) { return quote(c.sweep_scenarios); }},
      {"sweep_conditions",
       [](RunConfig& c, const std::string& v) { c.sweep_conditions = parse_str(v); },
       [](const RunConfig& c) { return quote(c.sweep_conditions); }},
      {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.workers); }},
  };
  return defs;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    // Strip comments, respecting quoted strings.
    bool in_quote = false;
    std::string body;
    for (char ch : line) {
      if (ch == '"') in_quote = !in_quote;
      if (ch == '#' && !in_quote) break;
      body += ch;
    }
    body = trim(body);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!seen.insert(key).second)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key " + key);
    bool matched = false;
    for (const auto& def : key_defs()) {
      if (key == def.name) {
        try {
          def.set(cfg, value);
        } catch (const std::exception& e) {
          throw std::invalid_argument("config line " + std::to_string(lineno) + ", key " +
                                      key + ": " + e.what());
        }
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& def : key_defs()) {
    out += def.name;
    out += " = ";
    out += def.get(cfg);
    out += '\n';
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw std::invalid_argument("empty entry in seed list: " + text);
    const std::size_t dash = part.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_u64(part));
    } else {
      const std::uint64_t lo = parse_u64(trim(part.substr(0, dash)));
      const std::uint64_t hi = parse_u64(trim(part.substr(dash + 1)));
      if (hi < lo) throw std::invalid_argument("descending seed range: " + part);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

namespace {

std::string metrics_csv_row(const RunConfig& cfg, const metrics::MetricsReport& r) {
  std::string row = std::to_string(cfg.seed) + "," + cfg.condition + "," + cfg.scenario +
                    "," + std::to_string(r.round);
  for (double v : {r.ari_a, r.ari_b, r.kappa, r.dbs_a, r.dbs_b, r.topsim})
    row += "," + fmt_double(v);
  return row;
}

void tensor_f64(std::vector<NamedTensor>& out, const std::string& name,
                std::vector<std::uint32_t> dims, const double* data, std::size_t n) {
  NamedTensor t;
  t.name = name;
  t.dims = std::move(dims);
  t.f64.assign(data, data + n);
  t.is_f64 = true;
  out.push_back(std::move(t));
}

void tensor_i32(std::vector<NamedTensor>& out, const std::string& name,
                std::vector<std::uint32_t> dims, const std::vector<int>& data) {
  NamedTensor t;
  t.name = name;
  t.dims = std::move(dims);
  t.i32.assign(data.begin(), data.end());
  t.is_f64 = false;
  out.push_back(std::move(t));
}

void mlp_tensors(std::vector<NamedTensor>& out, const std::string& prefix,
                 const mvae::MlpParams& p) {
  tensor_f64(out, prefix + "/w1",
             {static_cast<std::uint32_t>(p.w1.rows), static_cast<std::uint32_t>(p.w1.cols)},
             p.w1.a.data(), p.w1.a.size());
  tensor_f64(out, prefix + "/b1", {static_cast<std::uint32_t>(p.b1.size())}, p.b1.data(),
             p.b1.size());
  tensor_f64(out, prefix + "/w2",
             {static_cast<std::uint32_t>(p.w2.rows), static_cast<std::uint32_t>(p.w2.cols)},
             p.w2.a.data(), p.w2.a.size());
  tensor_f64(out, prefix + "/b2", {static_cast<std::uint32_t>(p.b2.size())}, p.b2.data(),
             p.b2.size());
}

void agent_tensors(std::vector<NamedTensor>& out, const std::string& prefix,
                   const mhng::AgentState& ag) {
  tensor_i32(out, prefix + "/signs", {static_cast<std::uint32_t>(ag.signs.size())}, ag.signs);
  tensor_f64(out, prefix + "/latents",
             {static_cast<std::uint32_t>(ag.latents.rows),
              static_cast<std::uint32_t>(ag.latents.cols)},
             ag.latents.a.data(), ag.latents.a.size());
  const int k = ag.gmm.k(), dim = ag.gmm.dim();
  std::vector<double> mus, lambdas;
  for (const auto& comp : ag.gmm.comps) {
    mus.insert(mus.end(), comp.mu.data(), comp.mu.data() + dim);
    lambdas.insert(lambdas.end(), comp.lambda.data(), comp.lambda.data() + dim * dim);
  }
  tensor_f64(out, prefix + "/gmm/mu",
             {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(dim)}, mus.data(),
             mus.size());
  tensor_f64(out, prefix + "/gmm/lambda",
             {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(dim),
              static_cast<std::uint32_t>(dim)},
             lambdas.data(), lambdas.size());
  tensor_f64(out, prefix + "/gmm/pi", {static_cast<std::uint32_t>(ag.gmm.pi.size())},
             ag.gmm.pi.data(), ag.gmm.pi.size());
  for (int m = 0; m < ag.mvae.modalities(); ++m) {
    mlp_tensors(out, prefix + "/mvae/enc" + std::to_string(m), ag.mvae.enc[m]);
    mlp_tensors(out, prefix + "/mvae/dec" + std::to_string(m), ag.mvae.dec[m]);
  }
}

template <typename T>
void put_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get_raw(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error("checkpoint truncated");
  return v;
}

constexpr char kCheckpointMagic[8] = {'C', 'O', 'E', 'M', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace

std::vector<NamedTensor> checkpoint_tensors(const mhng::GameState& gs) {
  std::vector<NamedTensor> out;
  tensor_i32(out, "dataset/labels", {static_cast<std::uint32_t>(gs.data.labels.size())},
             gs.data.labels);
  tensor_i32(out, "dataset/stimulus_ids",
             {static_cast<std::uint32_t>(gs.data.stimulus_ids.size())}, gs.data.stimulus_ids);
  agent_tensors(out, "agent_a", gs.agent_a);
  agent_tensors(out, "agent_b", gs.agent_b);
  return out;
}

void write_checkpoint(std::ostream& os, const std::vector<NamedTensor>& tensors) {
  os.write(kCheckpointMagic, sizeof kCheckpointMagic);
  put_raw(os, kCheckpointVersion);
  put_raw(os, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    if (t.name.size() > 0xffff) throw std::invalid_argument("tensor name too long");
    put_raw(os, static_cast<std::uint16_t>(t.name.size()));
    os.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    put_raw(os, static_cast<std::uint8_t>(t.is_f64 ? 0 : 1));
    put_raw(os, static_cast<std::uint8_t>(t.dims.size()));
    std::uint64_t count = 1;
    for (std::uint32_t d : t.dims) {
      put_raw(os, d);
      count *= d;
    }
    const std::uint64_t have = t.is_f64 ? t.f64.size() : t.i32.size();
    if (count != have) throw std::invalid_argument("tensor " + t.name + ": dims/payload mismatch");
    if (t.is_f64)
      os.write(reinterpret_cast<const char*>(t.f64.data()),
               static_cast<std::streamsize>(count * sizeof(double)));
    else
      os.write(reinterpret_cast<const char*>(t.i32.data()),
               static_cast<std::streamsize>(count * sizeof(std::int32_t)));
  }
  if (!os) throw std::runtime_error("checkpoint write failed");
}

std::vector<NamedTensor> read_checkpoint(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw std::runtime_error("not a checkpoint file");
  const auto version = get_raw<std::uint32_t>(is);
  if (version != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  const auto count = get_raw<std::uint32_t>(is);
  std::vector<NamedTensor> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    const auto name_len = get_raw<std::uint16_t>(is);
    t.name.resize(name_len);
    if (!is.read(t.name.data(), name_len)) throw std::runtime_error("checkpoint truncated");
    const auto dtype = get_raw<std::uint8_t>(is);
    if (dtype > 1) throw std::runtime_error("tensor " + t.name + ": unknown dtype");
    t.is_f64 = dtype == 0;
    const auto rank = get_raw<std::uint8_t>(is);
    std::uint64_t n = 1;
    for (int d = 0; d < rank; ++d) {
      t.dims.push_back(get_raw<std::uint32_t>(is));
      n *= t.dims.back();
    }
    if (t.is_f64) {
      t.f64.resize(n);
      if (!is.read(reinterpret_cast<char*>(t.f64.data()),
                   static_cast<std::streamsize>(n * sizeof(double))))
        throw std::runtime_error("checkpoint truncated in " + t.name);
    } else {
      t.i32.resize(n);
      if (!is.read(reinterpret_cast<char*>(t.i32.data()),
                   static_cast<std::streamsize>(n * sizeof(std::int32_t))))
        throw std::runtime_error("checkpoint truncated in " + t.name);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<NamedTensor> read_checkpoint_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
  return read_checkpoint(f);
}

RunRecord execute_run(const RunConfig& cfg, const std::string& dir) {
  const mhng::ExperimentConfig ecfg = cfg.to_experiment();
  fs::create_directories(dir);

  // Per-round channel summaries for the event log.
  auto result = mhng::run_experiment(ecfg);

  {
    std::ofstream f(fs::path(dir) / kConfigFile);
    f << serialize_config(cfg);
    if (!f) throw std::runtime_error("cannot write config in " + dir);
  }
  {
    std::ofstream f(fs::path(dir) / kMetricsFile);
    f << kMetricsHeader << '\n';
    for (const auto& r : result.trace) f << metrics_csv_row(cfg, r) << '\n';
    if (!f) throw std::runtime_error("cannot write metrics in " + dir);
  }
  {
    std::ofstream f(fs::path(dir) / kEventsFile);
    for (const auto& rs : result.rounds) {
      json line = {
          {"round", rs.round},
          {"ab", {{"accepted", rs.ab.accepted}, {"total", rs.ab.total}, {"mean_r", rs.ab.mean_r}}},
          {"ba", {{"accepted", rs.ba.accepted}, {"total", rs.ba.total}, {"mean_r", rs.ba.mean_r}}},
          {"elbo_a", rs.elbo_a},
          {"elbo_b", rs.elbo_b},
      };
      f << line.dump() << '\n';
    }
    if (!f) throw std::runtime_error("cannot write events in " + dir);
  }
  {
    std::ofstream f(fs::path(dir) / kCheckpointFile, std::ios::binary);
    write_checkpoint(f, checkpoint_tensors(result.state));
    if (!f) throw std::runtime_error("cannot write checkpoint in " + dir);
  }

  RunRecord rec;
  rec.seed = cfg.seed;
  rec.condition = cfg.condition;
  rec.scenario = cfg.scenario;
  const auto& last = result.trace.back();
  rec.metrics = {{"ari_a", last.ari_a}, {"ari_b", last.ari_b}, {"kappa", last.kappa},
                 {"dbs_a", last.dbs_a}, {"dbs_b", last.dbs_b}, {"topsim", last.topsim}};
  return rec;
}

RunRecord load_run_dir(const std::string& dir) {
  for (const char* name : {kConfigFile, kMetricsFile, kEventsFile, kCheckpointFile}) {
    const fs::path p = fs::path(dir) / name;
    if (!fs::exists(p)) throw std::runtime_error("run artifact missing: " + p.string());
  }
  const RunConfig cfg = load_config_file((fs::path(dir) / kConfigFile).string());

  std::ifstream f(fs::path(dir) / kMetricsFile);
  std::string line, last;
  std::getline(f, line);
  if (line != kMetricsHeader)
    throw std::runtime_error("bad metrics header in " + dir + ": " + line);
  while (std::getline(f, line))
    if (!trim(line).empty()) last = line;
  if (last.empty()) throw std::runtime_error("metrics.csv has no rows in " + dir);

  const auto cells = split(last, ',');
  if (cells.size() != 10)
    throw std::runtime_error("bad metrics row in " + dir + ": " + last);
  RunRecord rec;
  rec.seed = parse_u64(cells[0]);
  rec.condition = cells[1];
  rec.scenario = cells[2];
  for (std::size_t i = 0; i < kMetricKeys.size(); ++i)
    rec.metrics[kMetricKeys[i]] = std::strtod(cells[4 + i].c_str(), nullptr);
  if (rec.seed != cfg.seed || rec.condition != cfg.condition || rec.scenario != cfg.scenario)
    throw std::runtime_error("metrics.csv disagrees with config.toml in " + dir);
  return rec;
}

SweepSummary aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) {
    for (const auto& key : kMetricKeys)
      if (!r.metrics.count(key))
        throw std::invalid_argument("record missing metric column " + key);
    groups[{r.condition, r.scenario}].push_back(&r);
  }

  SweepSummary out;
  for (const auto& [key, rows] : groups) {
    GroupSummary g;
    g.condition = key.first;
    g.scenario = key.second;
    g.n = static_cast<int>(rows.size());
    for (const auto& mkey : kMetricKeys) {
      MetricStats st;
      st.n = g.n;
      double sum = 0.0;
      for (const auto* r : rows) sum += r->metrics.at(mkey);
      st.mean = sum / g.n;
      if (g.n > 1) {
        double ss = 0.0;
        for (const auto* r : rows) {
          const double d = r->metrics.at(mkey) - st.mean;
          ss += d * d;
        }
        st.std_dev = std::sqrt(ss / (g.n - 1));
      }
      g.metrics[mkey] = st;
    }
    out.groups.push_back(std::move(g));
  }

  // Rank scenarios within each condition: best and second-best per metric.
  std::map<std::string, std::vector<GroupSummary*>> by_condition;
  for (auto& g : out.groups) by_condition[g.condition].push_back(&g);
  for (auto& [cond, gs] : by_condition) {
    for (const auto& mkey : kMetricKeys) {
      const bool lower_better = mkey == "dbs_a" || mkey == "dbs_b";
      std::vector<GroupSummary*> order = gs;
      std::stable_sort(order.begin(), order.end(),
                       [&](const GroupSummary* x, const GroupSummary* y) {
                         const double a = x->metrics.at(mkey).mean;
                         const double b = y->metrics.at(mkey).mean;
                         return lower_better ? a < b : a > b;
                       });
      if (!order.empty()) order[0]->metrics[mkey].best = true;
      if (order.size() > 1) order[1]->metrics[mkey].second = true;
    }
  }
  return out;
}

std::string summary_to_json(const SweepSummary& summary) {
  json groups = json::array();
  for (const auto& g : summary.groups) {
    json metrics = json::object();
    for (const auto& [key, st] : g.metrics) {
      metrics[key] = {{"mean", st.mean},   {"std", st.std_dev}, {"n", st.n},
                      {"single_run", st.n == 1}, {"best", st.best},  {"second", st.second}};
    }
    groups.push_back({{"condition", g.condition},
                      {"scenario", g.scenario},
                      {"n", g.n},
                      {"metrics", metrics}});
  }
  return json{{"groups", groups}}.dump(2);
}

SweepSummary sweep(const RunConfig& cfg, const std::string& out_root) {
  cfg.validate();
  const std::vector<std::uint64_t> seeds = parse_seed_list(cfg.sweep_seeds);
  std::vector<std::string> scenarios;
  for (const auto& s : split(cfg.sweep_scenarios, ','))
    if (!s.empty()) scenarios.push_back(s);
  if (scenarios.empty()) throw std::invalid_argument("sweep: no scenarios");
  std::vector<std::string> conditions;
  if (cfg.sweep_conditions.empty()) {
    conditions.push_back(cfg.condition);
  } else {
    for (const auto& c : split(cfg.sweep_conditions, ','))
      if (!c.empty()) conditions.push_back(c);
  }
  if (conditions.empty()) throw std::invalid_argument("sweep: no conditions");

  struct Job {
    RunConfig cfg;
    std::string dir;
  };
  std::vector<Job> jobs;
  for (const auto& cond : conditions)
    for (const auto& scen : scenarios)
      for (std::uint64_t seed : seeds) {
        RunConfig rc = cfg;
        rc.condition = cond;
        rc.scenario = mhng::scenario_name(mhng::scenario_from_name(scen));
        rc.seed = seed;
        const std::string dir =
            (fs::path(out_root) / (cond + "-" + rc.scenario + "-seed" + std::to_string(seed)))
                .string();
        jobs.push_back({std::move(rc), dir});
      }

  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(jobs.size()));

  std::vector<RunRecord> records(jobs.size());
  std::vector<std::string> errors;
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= jobs.size() || !errors.empty()) return;
        i = next++;
      }
      try {
        RunRecord rec = execute_run(jobs[i].cfg, jobs[i].dir);
        std::lock_guard<std::mutex> lock(mu);
        records[i] = std::move(rec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        errors.push_back(jobs[i].dir + ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!errors.empty()) throw std::runtime_error("sweep failed: " + errors.front());

  return aggregate(records);
}

namespace {

// Shared SVG helpers: minimal hand-rolled plots, no external assets.
std::string svg_open(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string svg_text(double x, double y, const std::string& s, int size,
                     const std::string& anchor = "middle") {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"%d\" "
                "text-anchor=\"%s\">",
                x, y, size, anchor.c_str());
  return std::string(buf) + s + "</text>\n";
}

// White -> blue ramp for recall values in [0, 1].
std::string heat_color(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const int r = static_cast<int>(255 - 205 * v);
  const int g = static_cast<int>(255 - 155 * v);
  const int b = 255;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

const char* kPalette[8] = {"#4c78a8", "#f58518", "#54a24b", "#e45756",
                           "#72b7b2", "#b279a2", "#eeca3b", "#9d755d"};

std::string heatmap_panel(const Mat& recall, double ox, double oy, double cell,
                          const std::string& title) {
  std::string out;
  const int rows = recall.rows, cols = recall.cols;
  out += svg_text(ox + cols * cell / 2.0, oy - 26, title, 14);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double v = recall(i, j);
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\" "
                    "stroke=\"#ccc\"/>\n",
                    ox + j * cell, oy + i * cell, cell, cell, heat_color(v).c_str());
      out += buf;
      std::snprintf(buf, sizeof buf, "%.2f", v);
      out += svg_text(ox + j * cell + cell / 2, oy + i * cell + cell / 2 + 3, buf, 9);
    }
  for (int i = 0; i < rows; ++i)
    out += svg_text(ox - 6, oy + i * cell + cell / 2 + 3,
                    ca::emotion_name(static_cast<ca::EmotionId>(i)), 10, "end");
  for (int j = 0; j < cols; ++j) {
    const std::string label = j + 1 < cols ? ("w" + std::to_string(j)) : "other";
    out += svg_text(ox + j * cell + cell / 2, oy - 8, label, 10);
  }
  return out;
}

}  // namespace

std::string render_recall_svg(const Mat& recall_a, const Mat& recall_b) {
  const double cell = 34.0;
  const double panel_w = recall_a.cols * cell + 110.0;
  const int width = static_cast<int>(2 * panel_w + 40);
  const int height = static_cast<int>(recall_a.rows * cell + 90);
  std::string out = svg_open(width, height);
  out += heatmap_panel(recall_a, 90, 56, cell, "agent A recall per emotion");
  out += heatmap_panel(recall_b, 90 + panel_w + 20, 56, cell, "agent B recall per emotion");
  out += "</svg>\n";
  return out;
}

namespace {

std::string pca_panel(const Mat& latents, const std::vector<int>& labels, double ox,
                      double oy, double size, const std::string& title) {
  const metrics::PcaResult pca = metrics::pca_project(latents, 2);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (int i = 0; i < pca.coords.rows; ++i) {
    xmin = std::min(xmin, pca.coords(i, 0));
    xmax = std::max(xmax, pca.coords(i, 0));
    ymin = std::min(ymin, pca.coords(i, 1));
    ymax = std::max(ymax, pca.coords(i, 1));
  }
  const double xspan = std::max(1e-9, xmax - xmin), yspan = std::max(1e-9, ymax - ymin);
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"#888\"/>\n",
                ox, oy, size, size);
  out += buf;
  std::snprintf(buf, sizeof buf, "%s (var %.0f%% / %.0f%%)%s", title.c_str(),
                100 * pca.explained[0], 100 * pca.explained[1],
                pca.degenerate ? " [degenerate]" : "");
  out += svg_text(ox + size / 2, oy - 10, buf, 13);
  for (int i = 0; i < pca.coords.rows; ++i) {
    const double px = ox + (pca.coords(i, 0) - xmin) / xspan * (size - 16) + 8;
    const double py = oy + size - ((pca.coords(i, 1) - ymin) / yspan * (size - 16) + 8);
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"%s\" fill-opacity=\"0.75\"/>\n",
                  px, py, kPalette[labels[i] % 8]);
    out += buf;
  }
  return out;
}

}  // namespace

std::string render_pca_svg(const Mat& latents_a, const Mat& latents_b,
                           const std::vector<int>& labels) {
  if (latents_a.rows != static_cast<int>(labels.size()) || latents_b.rows != latents_a.rows)
    throw std::invalid_argument("render_pca_svg: row/label mismatch");
  const double size = 320.0;
  const int width = static_cast<int>(2 * size + 230);
  const int height = static_cast<int>(size + 70);
  std::string out = svg_open(width, height);
  out += pca_panel(latents_a, labels, 40, 40, size, "agent A latent PCA");
  out += pca_panel(latents_b, labels, 40 + size + 40, 40, size, "agent B latent PCA");
  const double lx = 2 * size + 100, ly = 60;
  out += svg_text(lx + 8, ly - 16, "emotion", 12, "start");
  for (int e = 0; e < ca::kNumEmotions; ++e) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"5\" fill=\"%s\"/>\n", lx, ly + 20.0 * e,
                  kPalette[e % 8]);
    out += buf;
    out += svg_text(lx + 12, ly + 20.0 * e + 4, ca::emotion_name(static_cast<ca::EmotionId>(e)),
                    11, "start");
  }
  out += "</svg>\n";
  return out;
}

namespace {

const NamedTensor& find_tensor(const std::vector<NamedTensor>& ts, const std::string& name) {
  for (const auto& t : ts)
    if (t.name == name) return t;
  throw std::runtime_error("checkpoint tensor missing: " + name);
}

Mat tensor_to_mat(const NamedTensor& t) {
  if (!t.is_f64 || t.dims.size() != 2)
    throw std::runtime_error("tensor " + t.name + ": expected rank-2 f64");
  Mat m(static_cast<int>(t.dims[0]), static_cast<int>(t.dims[1]));
  std::copy(t.f64.begin(), t.f64.end(), m.a.begin());
  return m;
}

}  // namespace

void plot_run_dir(const std::string& dir) {
  const auto tensors = read_checkpoint_file((fs::path(dir) / kCheckpointFile).string());
  const auto& labels_t = find_tensor(tensors, "dataset/labels");
  std::vector<int> labels(labels_t.i32.begin(), labels_t.i32.end());
  const Mat lat_a = tensor_to_mat(find_tensor(tensors, "agent_a/latents"));
  const Mat lat_b = tensor_to_mat(find_tensor(tensors, "agent_b/latents"));
  const auto& signs_a_t = find_tensor(tensors, "agent_a/signs");
  const auto& signs_b_t = find_tensor(tensors, "agent_b/signs");
  std::vector<int> signs_a(signs_a_t.i32.begin(), signs_a_t.i32.end());
  std::vector<int> signs_b(signs_b_t.i32.begin(), signs_b_t.i32.end());
  const auto& mu_a = find_tensor(tensors, "agent_a/gmm/mu");
  const int k = static_cast<int>(mu_a.dims[0]);

  const Mat recall_a = metrics::recall_heatmap(signs_a, labels, ca::kNumEmotions, k);
  const Mat recall_b = metrics::recall_heatmap(signs_b, labels, ca::kNumEmotions, k);
  {
    std::ofstream f(fs::path(dir) / "recall_heatmaps.svg");
    f << render_recall_svg(recall_a, recall_b);
    if (!f) throw std::runtime_error("cannot write recall_heatmaps.svg in " + dir);
  }
  {
    std::ofstream f(fs::path(dir) / "latent_pca.svg");
    f << render_pca_svg(lat_a, lat_b, labels);
    if (!f) throw std::runtime_error("cannot write latent_pca.svg in " + dir);
  }
}

void write_dataset(const RunConfig& cfg, const std::string& dir) {
  const mhng::ExperimentConfig ecfg = cfg.to_experiment();
  const stimuli::BuildResult built =
      stimuli::build_dataset(ecfg.dataset, ecfg.profile_a, ecfg.profile_b, ecfg.seed);
  fs::create_directories(dir);
  {
    std::ofstream f(fs::path(dir) / kConfigFile);
    f << serialize_config(cfg);
    if (!f) throw std::runtime_error("cannot write config in " + dir);
  }
  const auto& data = built.data;
  for (int agent = 0; agent < 2; ++agent) {
    const auto& ad = agent == 0 ? data.agent_a : data.agent_b;
    const std::string tag = agent == 0 ? "agent_a" : "agent_b";
    for (std::size_t m = 0; m < ad.modality.size(); ++m) {
      std::ofstream f(fs::path(dir) / (tag + "_" + data.modality_names[m] + ".csv"));
      stimuli::write_feature_csv(f, ad.modality[m], data.labels, data.stimulus_ids);
      if (!f) throw std::runtime_error("cannot write features in " + dir);
    }
    const auto& trajectories = agent == 0 ? built.trajectories_a : built.trajectories_b;
    if (!trajectories.empty()) {
      std::vector<int> per_stimulus;
      for (std::size_t i = 0; i < data.stimulus_ids.size(); i += ca::kReplicas)
        per_stimulus.push_back(data.stimulus_ids[i]);
      std::ofstream f(fs::path(dir) / (tag + "_trajectories.csv"));
      ca::write_trajectory_csv(f, trajectories, per_stimulus);
      if (!f) throw std::runtime_error("cannot write trajectories in " + dir);
    }
  }
}

}  // namespace coemo::harness
