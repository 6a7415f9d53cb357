#include "normdyn/abm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "normdyn/dynamics.hpp"
#include "normdyn/errors.hpp"
#include "normdyn/game.hpp"
#include "normdyn/mean_field.hpp"

namespace normdyn {

std::string_view to_string(SimMode m) { return m == SimMode::sampled_groups ? "sampled_groups" : "mean_field"; }

SimMode sim_mode_from_string(std::string_view s) {
  if (s == "mean_field" || s == "MEAN_FIELD") return SimMode::mean_field;
  if (s == "sampled_groups" || s == "SAMPLED_GROUPS") return SimMode::sampled_groups;
  throw ValidationError("simulate.mode", "expected 'mean_field' or 'sampled_groups', got '" + std::string(s) + "'");
}

std::string_view to_string(MutationScheme m) {
  return m == MutationScheme::focal_random ? "focal_random" : "chain_matched";
}

MutationScheme mutation_scheme_from_string(std::string_view s) {
  if (s == "chain_matched") return MutationScheme::chain_matched;
  if (s == "focal_random") return MutationScheme::focal_random;
  throw ValidationError("simulate.mutation",
                        "expected 'chain_matched' or 'focal_random', got '" + std::string(s) + "'");
}

void validate(const SimConfig& cfg) {
  validate(cfg.params);
  if (cfg.steps <= 0) throw ValidationError("simulate.steps", "must be > 0");
  if (cfg.burn_in < 0) throw ValidationError("simulate.burn_in", "must be >= 0");
  if (cfg.steps <= cfg.burn_in) throw ValidationError("simulate.burn_in", "must be smaller than steps");
  if (cfg.initial_cooperators < -1 || cfg.initial_cooperators > cfg.params.Z)
    throw ValidationError("simulate.initial_cooperators", "must lie in [0, Z]");
  if (cfg.group_draws < 1) throw ValidationError("simulate.group_draws", "must be >= 1");
  for (int t : cfg.thresholds)
    if (t < 0 || t > cfg.params.Z) throw ValidationError("simulate.thresholds", "threshold outside [0, Z]");
}

namespace {

// Draws are derived from raw mt19937_64 output so trajectories do not depend
// on the standard library's distribution implementations.
class Stream {
 public:
  __extension__ using u128 = unsigned __int128;

  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = engine_();
    u128 m = static_cast<u128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<u128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

class Population {
 public:
  Population(const SimConfig& cfg, Stream& rng)
      : cfg_(cfg), rng_(rng), Z_(cfg.params.Z), strategy_(Z_, 0), table_(build_group_payoff_table(cfg.params)) {
    const int k0 = cfg.initial_cooperators < 0 ? Z_ / 2 : cfg.initial_cooperators;
    std::fill(strategy_.begin(), strategy_.begin() + k0, 1);
    for (int i = Z_ - 1; i > 0; --i) std::swap(strategy_[i], strategy_[rng_.below(i + 1)]);
    k_ = k0;
    if (cfg.mode == SimMode::mean_field) curve_ = build_mean_payoff_curve(cfg.params);
    others_.reserve(cfg.params.N);
  }

  int cooperators() const { return k_; }

  void step() {
    const Params& p = cfg_.params;
    if (rng_.uniform() < p.mu) {
      mutate();
      return;
    }
    const int focal = static_cast<int>(rng_.below(Z_));
    int role = static_cast<int>(rng_.below(Z_ - 1));
    if (role >= focal) ++role;
    if (strategy_[focal] == strategy_[role]) return;
    double pi_focal, pi_role;
    if (cfg_.mode == SimMode::mean_field) {
      pi_focal = strategy_[focal] ? curve_.pi_c[k_] : curve_.pi_d[k_];
      pi_role = strategy_[role] ? curve_.pi_c[k_] : curve_.pi_d[k_];
    } else {
      pi_focal = sampled_payoff(focal);
      pi_role = sampled_payoff(role);
    }
    if (rng_.uniform() < fermi_probability(pi_focal, pi_role, p.lambda)) set(focal, strategy_[role]);
  }

 private:
  void set(int i, std::uint8_t s) {
    if (strategy_[i] == s) return;
    k_ += s ? 1 : -1;
    strategy_[i] = s;
  }

  void mutate() {
    if (cfg_.mutation == MutationScheme::focal_random) {
      const int focal = static_cast<int>(rng_.below(Z_));
      set(focal, rng_.coin() ? 1 : 0);
      return;
    }
    const std::uint8_t target = rng_.coin() ? 1 : 0;
    const int holders_of_other = target ? Z_ - k_ : k_;
    if (holders_of_other == 0) return;
    int i;
    do i = static_cast<int>(rng_.below(Z_));
    while (strategy_[i] == target);
    set(i, target);
  }

  // Mean payoff of individual `self` over cfg.group_draws groups, each made of
  // `self` and N-1 distinct others drawn uniformly (Floyd's sampling).
  double sampled_payoff(int self) {
    const int N = cfg_.params.N;
    const int pool = Z_ - 1;
    double total = 0.0;
    for (int d = 0; d < cfg_.group_draws; ++d) {
      others_.clear();
      for (int j = pool - (N - 1); j < pool; ++j) {
        const int t = static_cast<int>(rng_.below(j + 1));
        others_.push_back(std::find(others_.begin(), others_.end(), t) == others_.end() ? t : j);
      }
      int n_c = strategy_[self];
      for (int o : others_) n_c += strategy_[o >= self ? o + 1 : o];
      total += strategy_[self] ? table_.pi_c[n_c] : table_.pi_d[n_c];
    }
    return total / cfg_.group_draws;
  }

  const SimConfig& cfg_;
  Stream& rng_;
  int Z_;
  std::vector<std::uint8_t> strategy_;
  GroupPayoffTable table_;
  MeanPayoffCurve curve_;
  std::vector<int> others_;
  int k_ = 0;
};

std::uint64_t replicate_seed(std::uint64_t seed, int replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

SimResult run_simulation(const SimConfig& cfg) {
  validate(cfg);
  Stream rng(cfg.seed);
  Population pop(cfg, rng);
  const int Z = cfg.params.Z;

  SimResult out;
  std::vector<long> counts(Z + 1, 0);
  out.crossings.assign(cfg.thresholds.size(), 0);
  double k_sum = 0.0;
  for (long e = 0; e < cfg.steps; ++e) {
    const int before = pop.cooperators();
    pop.step();
    const int after = pop.cooperators();
    if (e < cfg.burn_in) continue;
    ++counts[after];
    k_sum += after;
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i)
      if ((before < cfg.thresholds[i]) != (after < cfg.thresholds[i])) ++out.crossings[i];
  }
  const double n = static_cast<double>(cfg.steps - cfg.burn_in);
  out.occupancy.resize(Z + 1);
  for (int k = 0; k <= Z; ++k) out.occupancy[k] = counts[k] / n;
  out.final_state = pop.cooperators();
  out.mean_k = k_sum / n;
  return out;
}

SimResult run_replicates(const SimConfig& cfg, int replicates, unsigned threads) {
  validate(cfg);
  if (replicates < 1) throw ValidationError("simulate.replicates", "must be >= 1");
  std::vector<SimResult> runs(replicates);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(replicates));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int i = next++; i < replicates && !failed; i = next++) {
      try {
        SimConfig c = cfg;
        c.seed = replicate_seed(cfg.seed, i);
        runs[i] = run_simulation(c);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SimResult merged = runs.front();
  for (int i = 1; i < replicates; ++i) {
    for (std::size_t k = 0; k < merged.occupancy.size(); ++k) merged.occupancy[k] += runs[i].occupancy[k];
    merged.mean_k += runs[i].mean_k;
    for (std::size_t t = 0; t < merged.crossings.size(); ++t) merged.crossings[t] += runs[i].crossings[t];
  }
  for (double& o : merged.occupancy) o /= replicates;
  merged.mean_k /= replicates;
  return merged;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace normdyn
