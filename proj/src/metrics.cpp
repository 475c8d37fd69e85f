#include "devrec/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace devrec {

bool MetricMatrix::empty() const {
  for (const auto& row : rows)
    if (!row.empty()) return false;
  return true;
}

double MetricMatrix::max_value() const {
  double mx = 0.0;
  for (const auto& row : rows)
    for (const auto& [pi, v] : row) mx = std::max(mx, v);
  return mx;
}

namespace {

using K = EventKind;

std::vector<MetricSpec> build_registry() {
  std::vector<MetricSpec> specs;
  for (int i = 0; i < kNumSingleKinds; ++i) {
    auto k = static_cast<K>(i);
    specs.push_back({std::string(to_string(k)), MetricFamily::single, {k}, {}, true});
  }
  auto sum = [&](const std::string& name, std::vector<K> members) {
    specs.push_back({name, MetricFamily::fusion_sum, std::move(members), {}, true});
  };
  sum("count", {K::issue_opened, K::issue_commented, K::issue_closed,
                K::issue_closed_with_pr, K::issue_assigned, K::commit_commented,
                K::commit_authored, K::commit_committed, K::pr_opened, K::pr_merged,
                K::pr_assigned, K::pr_commented});
  sum("contribution", {K::pr_opened, K::issue_opened, K::issue_closed_with_pr,
                       K::pr_merged, K::commit_committed});
  sum("comment", {K::issue_commented, K::commit_commented, K::pr_commented});
  sum("issue_related",
      {K::issue_opened, K::issue_closed_with_pr, K::issue_commented, K::issue_assigned});
  sum("pr_related", {K::pr_opened, K::pr_merged, K::pr_closed, K::pr_assigned});
  sum("commit_related", {K::commit_commented, K::commit_authored, K::commit_committed});
  auto ratio = [&](const std::string& name, const std::string& num,
                   const std::string& den) {
    specs.push_back({name, MetricFamily::fusion_ratio, {}, {num, den}, true});
  };
  ratio("commit2comment", "commit_committed", "commit_commented");
  ratio("issue2comment", "issue_opened", "issue_commented");
  ratio("pr2comment", "pr_opened", "pr_commented");
  ratio("code2comment", "contribution", "comment");
  for (const auto& base : {"count", "contribution", "comment", "issue_related",
                           "pr_related", "commit_related"}) {
    const MetricSpec* src = nullptr;
    for (const auto& s : specs)
      if (s.name == base) src = &s;
    specs.push_back({"binary_" + std::string(base), MetricFamily::binary_fusion,
                     src->members, {}, true});
  }
  // ratio-based binary fusions carry no information; kept only so the
  // leaderboard can render them as "x"
  for (const auto& base : {"commit2comment", "issue2comment", "pr2comment",
                           "code2comment"}) {
    specs.push_back(
        {"binary_" + std::string(base), MetricFamily::binary_fusion, {}, {}, false});
  }
  specs.push_back({"sun_baseline", MetricFamily::baseline, {}, {}, true});
  return specs;
}

}  // namespace

const std::vector<MetricSpec>& metric_registry() {
  static const std::vector<MetricSpec> reg = build_registry();
  return reg;
}

const MetricSpec* find_metric(const std::string& name) {
  for (const auto& s : metric_registry())
    if (s.name == name) return &s;
  return nullptr;
}

const std::vector<EventKind>& sum_fusion_members(const std::string& name) {
  const auto* spec = find_metric(name);
  if (!spec || spec->family != MetricFamily::fusion_sum)
    throw std::invalid_argument("not a sum fusion: " + name);
  return spec->members;
}

MetricMatrix compute_single(const EventStore& store, EventKind kind) {
  if (static_cast<int>(kind) >= kNumActivityKinds)
    throw std::invalid_argument(std::string(to_string(kind)) +
                                " is not a single metric kind");
  MetricMatrix m;
  m.metric = to_string(kind);
  m.rows.resize(store.developer_count());
  for (const auto& [key, c] : store.counts()) {
    auto [di, pi, k] = key;
    if (k == static_cast<int>(kind) && c > 0) m.rows[di][pi] = static_cast<double>(c);
  }
  return m;
}

MetricMatrix compute_fusion_sum(const std::string& name,
                                const std::vector<MetricMatrix>& members) {
  if (members.empty()) throw std::invalid_argument("sum fusion needs members");
  MetricMatrix out;
  out.metric = name;
  out.rows.resize(members.front().rows.size());
  for (const auto& m : members) {
    if (m.rows.size() != out.rows.size())
      throw std::invalid_argument("member matrices disagree on developer universe");
    for (std::size_t di = 0; di < m.rows.size(); ++di)
      for (const auto& [pi, v] : m.rows[di]) out.rows[di][pi] += v;
  }
  return out;
}

MetricMatrix compute_fusion_ratio(const std::string& name, const MetricMatrix& numerator,
                                  const MetricMatrix& denominator) {
  if (numerator.rows.size() != denominator.rows.size())
    throw std::invalid_argument("operand matrices disagree on developer universe");
  MetricMatrix out;
  out.metric = name;
  out.rows.resize(numerator.rows.size());
  // zero denominator yields 0, keeping entries finite and sparse
  for (std::size_t di = 0; di < numerator.rows.size(); ++di)
    for (const auto& [pi, num] : numerator.rows[di]) {
      double den = denominator.at(static_cast<int>(di), pi);
      if (den != 0.0) out.set(static_cast<int>(di), pi, num / den);
    }
  return out;
}

MetricMatrix binarize(const MetricMatrix& m) {
  MetricMatrix out;
  out.metric = "binary(" + m.metric + ")";
  out.rows.resize(m.rows.size());
  for (std::size_t di = 0; di < m.rows.size(); ++di)
    for (const auto& [pi, v] : m.rows[di])
      if (v > 0.0) out.rows[di][pi] = 1.0;
  return out;
}

MetricMatrix compute_binary_fusion(const std::string& name,
                                   const std::vector<MetricMatrix>& members) {
  std::vector<MetricMatrix> bins;
  bins.reserve(members.size());
  for (const auto& m : members) bins.push_back(binarize(m));
  auto out = compute_fusion_sum(name, bins);
  out.metric = name;
  return out;
}

MetricMatrix compute_baseline_sun(const EventStore& store) {
  MetricMatrix m;
  m.metric = "sun_baseline";
  m.rows.resize(store.developer_count());
  for (const auto& [key, c] : store.counts()) {
    auto [di, pi, k] = key;
    if (k == static_cast<int>(EventKind::star) ||
        k == static_cast<int>(EventKind::watch) ||
        k == static_cast<int>(EventKind::create))
      m.rows[di][pi] += static_cast<double>(c);
  }
  return m;
}

MetricMatrix compute_metric(const EventStore& store, const MetricSpec& spec) {
  if (!spec.supported)
    throw std::invalid_argument(spec.name + " is not a computable metric");
  switch (spec.family) {
    case MetricFamily::single:
      return compute_single(store, spec.members.front());
    case MetricFamily::fusion_sum: {
      std::vector<MetricMatrix> members;
      for (auto k : spec.members) members.push_back(compute_single(store, k));
      return compute_fusion_sum(spec.name, members);
    }
    case MetricFamily::fusion_ratio: {
      auto num = compute_metric(store, *find_metric(spec.ratio_operands[0]));
      auto den = compute_metric(store, *find_metric(spec.ratio_operands[1]));
      return compute_fusion_ratio(spec.name, num, den);
    }
    case MetricFamily::binary_fusion: {
      std::vector<MetricMatrix> members;
      for (auto k : spec.members) members.push_back(compute_single(store, k));
      return compute_binary_fusion(spec.name, members);
    }
    case MetricFamily::baseline:
      return compute_baseline_sun(store);
  }
  throw std::logic_error("unreachable");
}

RatingMatrix minmax_scale(const MetricMatrix& m, double lo, double hi) {
  if (hi <= lo) throw std::invalid_argument("scale hi must exceed lo");
  if (m.empty()) throw std::invalid_argument("nothing to scale: empty metric matrix");
  double mx = m.max_value();
  RatingMatrix r;
  r.source = m.metric;
  r.scale_max = mx;
  r.rows.resize(m.rows.size());
  for (std::size_t di = 0; di < m.rows.size(); ++di)
    for (const auto& [pi, v] : m.rows[di]) r.rows[di][pi] = lo + (hi - lo) * v / mx;
  return r;
}

}  // namespace devrec
