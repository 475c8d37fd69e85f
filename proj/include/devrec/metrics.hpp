#pragma once

#include <map>
#include <string>
#include <vector>

#include "devrec/event_store.hpp"

namespace devrec {

enum class MetricFamily { single, fusion_sum, fusion_ratio, binary_fusion, baseline };

// A named metric definition. Single specs wrap one event kind; sum fusions
// list their member kinds; ratio fusions are numerator/denominator over the
// raw matrices of two other specs; binary fusions binarize-then-sum the
// member singles of the matching sum fusion.
struct MetricSpec {
  std::string name;
  MetricFamily family;
  std::vector<EventKind> members;           // single / fusion_sum / binary_fusion
  std::vector<std::string> ratio_operands;  // fusion_ratio: {numerator, denominator}
  bool supported = true;  // ratio-based binary fusions exist only to render "x"
};

// Sparse developer x project matrix of raw metric values. Absent entry is 0;
// stored values are always > 0.
struct MetricMatrix {
  std::string metric;
  std::vector<std::map<int, double>> rows;  // per developer: project -> value

  double at(int di, int pi) const {
    const auto& row = rows[di];
    auto it = row.find(pi);
    return it == row.end() ? 0.0 : it->second;
  }
  void set(int di, int pi, double v) {
    if (v > 0.0) rows[di][pi] = v;
  }
  bool empty() const;
  double max_value() const;
};

// Min-max scaled form, every entry in [lo, hi] with the minimum pinned at 0.
struct RatingMatrix {
  std::string source;
  std::vector<std::map<int, double>> rows;
  double scale_max = 0.0;  // raw maximum that maps to hi

  double at(int di, int pi) const {
    const auto& row = rows[di];
    auto it = row.find(pi);
    return it == row.end() ? 0.0 : it->second;
  }
};

// The full metric registry: 12 singles, 10 fusions, 6 binary fusions, the
// like-star-create baseline, plus the 4 unsupported ratio binary fusions.
const std::vector<MetricSpec>& metric_registry();
const MetricSpec* find_metric(const std::string& name);
const std::vector<EventKind>& sum_fusion_members(const std::string& name);

MetricMatrix compute_single(const EventStore& store, EventKind kind);
MetricMatrix compute_fusion_sum(const std::string& name,
                                const std::vector<MetricMatrix>& members);
MetricMatrix compute_fusion_ratio(const std::string& name, const MetricMatrix& numerator,
                                  const MetricMatrix& denominator);
MetricMatrix binarize(const MetricMatrix& m);
MetricMatrix compute_binary_fusion(const std::string& name,
                                   const std::vector<MetricMatrix>& members);
MetricMatrix compute_baseline_sun(const EventStore& store);

// Dispatch by spec; throws std::invalid_argument for unsupported specs.
MetricMatrix compute_metric(const EventStore& store, const MetricSpec& spec);

RatingMatrix minmax_scale(const MetricMatrix& m, double lo = 0.0, double hi = 10.0);

}  // namespace devrec
