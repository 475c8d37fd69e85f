#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "devrec/evaluation.hpp"
#include "devrec/reports.hpp"
#include "devrec/synth.hpp"

namespace py = pybind11;
using namespace devrec;

namespace {

EventStore parse_str(const std::string& text, const std::string& format, bool fail_fast) {
  std::istringstream in(text);
  ParseOptions opts{format == "csv" ? EventFormat::csv : EventFormat::jsonl, fail_fast};
  return parse_events(in, opts);
}

std::vector<MetricSpec> resolve_metrics(const std::vector<std::string>& names) {
  std::vector<MetricSpec> specs;
  if (names.empty()) {
    for (const auto& s : metric_registry())
      if (s.supported) specs.push_back(s);
    return specs;
  }
  for (const auto& n : names) {
    const auto* s = find_metric(n);
    if (!s) throw std::invalid_argument("unknown metric '" + n + "'");
    specs.push_back(*s);
  }
  return specs;
}

py::list leaderboard(const EventStore& store, const std::vector<std::string>& metrics,
                     int k, double scale_hi, bool normalize) {
  auto evals = run_leaderboard(store, resolve_metrics(metrics), k, scale_hi, normalize);
  py::list rows;
  for (const auto& ev : evals) {
    py::dict row;
    row["metric"] = ev.row.metric;
    if (ev.row.unsupported)
      row["hit_score"] = py::str("x");
    else if (ev.row.mean_score)
      row["hit_score"] = *ev.row.mean_score;
    else
      row["hit_score"] = py::none();
    row["developers"] = ev.row.developers_evaluated;
    rows.append(row);
  }
  return rows;
}

py::list recommend(const EventStore& store, const std::string& developer,
                   const std::string& metric, int k, double scale_hi, bool normalize) {
  auto di = store.developer_index(developer);
  if (!di) throw std::invalid_argument("unknown developer '" + developer + "'");
  const auto* spec = find_metric(metric);
  if (!spec) throw std::invalid_argument("unknown metric '" + metric + "'");
  auto ratings = minmax_scale(compute_metric(store, *spec), 0.0, scale_hi);
  auto sims = SimilarityMatrix::build(ratings, store.project_count());
  auto recs = recommend_top_k(*di, ratings, sims, store, k, normalize);
  py::list out;
  for (const auto& [pi, score] : recs.items)
    out.append(py::make_tuple(store.project_full_name(pi), score));
  return out;
}

py::dict score_hits(const EventStore& store, const std::string& developer,
                    const std::vector<std::string>& recommended, int n) {
  auto di = store.developer_index(developer);
  if (!di) throw std::invalid_argument("unknown developer '" + developer + "'");
  RecommendationList recs{*di, {}};
  for (const auto& full : recommended) {
    auto pi = store.project_index(full);
    if (!pi) throw std::invalid_argument("unknown project '" + full + "'");
    recs.items.emplace_back(*pi, 0.0);
  }
  auto hb = hit_score(recs, store.watched(*di), n, store);
  py::dict out;
  out["hit_fullname"] = hb.hit_fullname;
  out["hit_owner"] = hb.hit_owner;
  out["num_watched"] = hb.num_watched;
  out["n"] = hb.n;
  out["score"] = hb.score;
  out["skipped"] = hb.skipped;
  return out;
}

py::list matrix_triples(const EventStore& store, const std::string& metric) {
  const auto* spec = find_metric(metric);
  if (!spec) throw std::invalid_argument("unknown metric '" + metric + "'");
  auto m = compute_metric(store, *spec);
  py::list out;
  for (std::size_t di = 0; di < m.rows.size(); ++di)
    for (const auto& [pi, v] : m.rows[di])
      out.append(py::make_tuple(store.developer_login(static_cast<int>(di)),
                                store.project_full_name(pi), v));
  return out;
}

EventStore synth(std::uint64_t seed, int developers, int projects, double density,
                 double watch_rate) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.developers = developers;
  cfg.projects = projects;
  cfg.density = density;
  cfg.watch_rate = watch_rate;
  return generate(cfg);
}

}  // namespace

PYBIND11_MODULE(_devrec, m) {
  m.doc() = "developer activity metrics and item-similarity project recommendation";

  py::class_<EventStore>(m, "EventStore")
      .def_property_readonly("developer_count", &EventStore::developer_count)
      .def_property_readonly("project_count", &EventStore::project_count)
      .def_property_readonly("total_events", &EventStore::total_events)
      .def("developers",
           [](const EventStore& s) {
             std::vector<std::string> out;
             for (int i = 0; i < s.developer_count(); ++i)
               out.push_back(s.developer_login(i));
             return out;
           })
      .def("projects",
           [](const EventStore& s) {
             std::vector<std::string> out;
             for (int i = 0; i < s.project_count(); ++i)
               out.push_back(s.project_full_name(i));
             return out;
           })
      .def("watched",
           [](const EventStore& s, const std::string& dev) {
             auto di = s.developer_index(dev);
             std::vector<std::string> out;
             if (di)
               for (int pi : s.watched(*di)) out.push_back(s.project_full_name(pi));
             return out;
           })
      .def("raw_count",
           [](const EventStore& s, const std::string& dev, const std::string& owner,
              const std::string& repo, const std::string& kind) {
             auto k = parse_event_kind(kind);
             if (!k) throw std::invalid_argument("unknown event kind '" + kind + "'");
             return s.raw_count({dev}, {owner, repo}, *k);
           })
      .def("digest", &EventStore::digest)
      .def("to_jsonl", &EventStore::normalized_jsonl);

  m.def("parse_events_file",
        [](const std::string& path, const std::string& format, bool fail_fast) {
          ParseOptions opts{format == "csv" ? EventFormat::csv : EventFormat::jsonl,
                            fail_fast};
          return parse_events_file(path, opts);
        },
        py::arg("path"), py::arg("format") = "jsonl", py::arg("fail_fast") = false);
  m.def("parse_events", &parse_str, py::arg("text"), py::arg("format") = "jsonl",
        py::arg("fail_fast") = false);
  m.def("metric_names", [] {
    std::vector<std::string> out;
    for (const auto& s : metric_registry())
      if (s.supported) out.push_back(s.name);
    return out;
  });
  m.def("metric_matrix", &matrix_triples, py::arg("store"), py::arg("metric"));
  m.def("leaderboard", &leaderboard, py::arg("store"),
        py::arg("metrics") = std::vector<std::string>{}, py::arg("k") = 5,
        py::arg("scale_hi") = 10.0, py::arg("normalize") = false);
  m.def("recommend", &recommend, py::arg("store"), py::arg("developer"),
        py::arg("metric") = "count", py::arg("k") = 5, py::arg("scale_hi") = 10.0,
        py::arg("normalize") = false);
  m.def("hit_score", &score_hits, py::arg("store"), py::arg("developer"),
        py::arg("recommended"), py::arg("n") = 5);
  m.def("synth", &synth, py::arg("seed"), py::arg("developers"), py::arg("projects"),
        py::arg("density") = 0.1, py::arg("watch_rate") = 0.1);
}
