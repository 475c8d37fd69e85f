// Shared helpers for tests: random store generation and a dense brute-force
// pipeline kept independent of the library implementation.
#pragma once

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "devrec/event_store.hpp"
#include "devrec/metrics.hpp"

namespace devrec::testing {

// random store over given universe; records also returned raw for oracles
struct RawRecord {
  std::string dev, owner, repo;
  EventKind kind;
  std::int64_t count;
};

struct RandomStore {
  EventStore store;
  std::vector<RawRecord> records;
};

inline RandomStore make_random_store(std::mt19937& rng, int devs, int projs,
                                     int records, bool with_watch = true) {
  RandomStore out;
  for (int d = 0; d < devs; ++d) out.store.intern_developer("d" + std::to_string(d));
  for (int p = 0; p < projs; ++p)
    out.store.intern_project("o" + std::to_string(p % 5), "r" + std::to_string(p));
  int max_kind = with_watch ? kNumEventKinds : kNumActivityKinds;
  for (int i = 0; i < records; ++i) {
    int d = static_cast<int>(rng() % devs);
    int p = static_cast<int>(rng() % projs);
    auto k = static_cast<EventKind>(rng() % max_kind);
    std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
    out.store.add(d, p, k, c);
    out.records.push_back({"d" + std::to_string(d), "o" + std::to_string(p % 5),
                           "r" + std::to_string(p), k, c});
  }
  return out;
}

// Dense matrix helpers, written from the definitions rather than the library.
using Dense = std::vector<std::vector<double>>;

inline Dense dense_from(const MetricMatrix& m, int projs) {
  Dense d(m.rows.size(), std::vector<double>(projs, 0.0));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [pi, v] : m.rows[i]) d[i][pi] = v;
  return d;
}

inline Dense dense_from(const RatingMatrix& m, int projs) {
  Dense d(m.rows.size(), std::vector<double>(projs, 0.0));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [pi, v] : m.rows[i]) d[i][pi] = v;
  return d;
}

inline double brute_cosine(const Dense& r, int a, int b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    dot += r[i][a] * r[i][b];
    na += r[i][a] * r[i][a];
    nb += r[i][b] * r[i][b];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// plain Eq.-style prediction: sum of rating * column cosine over rated projects
inline double brute_predict(const Dense& r, int dev, int unknown) {
  double s = 0;
  for (std::size_t p = 0; p < r[dev].size(); ++p)
    if (r[dev][p] > 0) s += r[dev][p] * brute_cosine(r, static_cast<int>(p), unknown);
  return s;
}

// full ranking of positive-score unknowns, ties by folded full name
inline std::vector<std::pair<int, double>> brute_rank(
    const Dense& r, int dev, const std::vector<std::string>& folded_names) {
  std::vector<std::pair<int, double>> cand;
  for (std::size_t p = 0; p < r[dev].size(); ++p) {
    if (r[dev][p] > 0) continue;
    double s = brute_predict(r, dev, static_cast<int>(p));
    if (s > 0) cand.emplace_back(static_cast<int>(p), s);
  }
  std::sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return folded_names[a.first] < folded_names[b.first];
  });
  return cand;
}

inline std::vector<std::string> folded_names(const EventStore& store) {
  std::vector<std::string> out;
  for (int p = 0; p < store.project_count(); ++p)
    out.push_back(fold(store.project_full_name(p)));
  return out;
}

}  // namespace devrec::testing
