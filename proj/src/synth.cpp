#include "devrec/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace devrec {

namespace {

// uniform double in [0,1) from the raw 64-bit stream (top 53 bits)
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;  // modulo bias is irrelevant at these bounds
}

}  // namespace

void SynthConfig::validate() const {
  if (developers < 1 || projects < 1)
    throw std::invalid_argument("developers and projects must be >= 1");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("density must be in (0, 1]");
  if (!(watch_rate >= 0.0 && watch_rate <= 1.0))
    throw std::invalid_argument("watch rate must be in [0, 1]");
  if (count_max < 1) throw std::invalid_argument("count max must be >= 1");
  double total = 0.0;
  for (const auto& [k, w] : kind_weights) {
    if (w < 0.0) throw std::invalid_argument("kind weights must be non-negative");
    if (static_cast<int>(k) >= kNumActivityKinds && w > 0.0 && k != EventKind::star &&
        k != EventKind::create)
      throw std::invalid_argument("weight on non-activity kind");
    total += w;
  }
  if (!kind_weights.empty() && total == 0.0)
    throw std::invalid_argument("kind weights must not all be zero");
}

EventStore generate(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);

  std::vector<EventKind> kinds;
  std::vector<double> cum;
  double total = 0.0;
  if (cfg.kind_weights.empty()) {
    for (int i = 0; i < kNumActivityKinds; ++i) {
      kinds.push_back(static_cast<EventKind>(i));
      total += 1.0;
      cum.push_back(total);
    }
  } else {
    for (const auto& [k, w] : cfg.kind_weights) {
      if (w <= 0.0) continue;
      kinds.push_back(k);
      total += w;
      cum.push_back(total);
    }
  }

  // zipf CDF over 1..count_max
  std::vector<double> zipf_cum;
  if (cfg.count_dist == CountDistribution::zipf) {
    double z = 0.0;
    for (int c = 1; c <= cfg.count_max; ++c) z += 1.0 / std::pow(c, cfg.zipf_s);
    double acc = 0.0;
    for (int c = 1; c <= cfg.count_max; ++c) {
      acc += 1.0 / std::pow(c, cfg.zipf_s) / z;
      zipf_cum.push_back(acc);
    }
  }

  auto draw_count = [&]() -> std::int64_t {
    if (cfg.count_dist == CountDistribution::uniform)
      return 1 + static_cast<std::int64_t>(next_below(rng, cfg.count_max));
    double u = next_unit(rng);
    for (int c = 1; c <= cfg.count_max; ++c)
      if (u < zipf_cum[c - 1]) return c;
    return cfg.count_max;
  };

  EventStore store;
  for (int di = 0; di < cfg.developers; ++di)
    store.intern_developer("dev" + std::to_string(di));
  for (int pi = 0; pi < cfg.projects; ++pi)
    store.intern_project("org" + std::to_string(pi % 97), "proj" + std::to_string(pi));

  for (int di = 0; di < cfg.developers; ++di) {
    for (int pi = 0; pi < cfg.projects; ++pi) {
      if (next_unit(rng) < cfg.density) {
        double u = next_unit(rng) * total;
        std::size_t ki = 0;
        while (ki + 1 < cum.size() && u >= cum[ki]) ++ki;
        store.add(di, pi, kinds[ki], draw_count());
      }
      if (cfg.watch_rate > 0.0 && next_unit(rng) < cfg.watch_rate)
        store.add(di, pi, EventKind::watch, 1);
    }
  }
  return store;
}

std::string synth_sidecar_json(const SynthConfig& cfg) {
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [k, w] : cfg.kind_weights) weights[std::string(to_string(k))] = w;
  nlohmann::json j{
      {"algorithm", std::string(kSynthRngAlgorithm)},
      {"seed", cfg.seed},
      {"developers", cfg.developers},
      {"projects", cfg.projects},
      {"density", cfg.density},
      {"kind_weights", weights},
      {"watch_rate", cfg.watch_rate},
      {"count_dist",
       cfg.count_dist == CountDistribution::uniform ? "uniform" : "zipf"},
      {"count_max", cfg.count_max},
      {"zipf_s", cfg.zipf_s},
  };
  return j.dump(2) + "\n";
}

}  // namespace devrec
