#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "devrec/event_store.hpp"
#include "test_support.hpp"

using namespace devrec;

namespace {

EventStore from_jsonl(const std::string& text, ParseReport* rep = nullptr,
                      bool fail_fast = false) {
  std::istringstream in(text);
  return parse_events(in, {EventFormat::jsonl, fail_fast}, rep);
}

}  // namespace

TEST_CASE("watch record populates the watch set") {
  auto store = from_jsonl(
      R"({"developer":"alice","owner":"fengmk2","repo":"emoji","kind":"watch"})"
      "\n");
  REQUIRE(store.developer_count() == 1);
  REQUIRE(store.project_count() == 1);
  auto di = store.developer_index("alice");
  auto pi = store.project_index("fengmk2/emoji");
  REQUIRE(di);
  REQUIRE(pi);
  CHECK(store.watched(*di).count(*pi) == 1);
}

TEST_CASE("empty stream yields an empty store") {
  auto store = from_jsonl("");
  CHECK(store.developer_count() == 0);
  CHECK(store.project_count() == 0);
  CHECK(store.total_events() == 0);
}

TEST_CASE("duplicate (developer, project, kind) records sum their counts") {
  auto store = from_jsonl(
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened","count":2})"
      "\n"
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened","count":3})"
      "\n");
  CHECK(store.raw_count({"alice"}, {"x", "p1"}, EventKind::issue_opened) == 5);
}

TEST_CASE("raw_count of an absent triple is 0") {
  auto store = from_jsonl(
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened"})"
      "\n");
  CHECK(store.raw_count({"alice"}, {"x", "p1"}, EventKind::pr_opened) == 0);
  CHECK(store.raw_count({"bob"}, {"x", "p1"}, EventKind::issue_opened) == 0);
}

TEST_CASE("identifier comparison is case-insensitive, casing preserved") {
  auto store = from_jsonl(
      R"({"developer":"Alice","owner":"X","repo":"P1","kind":"issue_opened","count":2})"
      "\n"
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened","count":1})"
      "\n");
  CHECK(store.developer_count() == 1);
  CHECK(store.project_count() == 1);
  CHECK(store.raw_count({"ALICE"}, {"x", "P1"}, EventKind::issue_opened) == 3);
  CHECK(store.developer_login(0) == "Alice");  // first-seen casing
}

TEST_CASE("invalid lines are skipped with line numbers, or abort under fail-fast") {
  std::string text =
      R"({"developer":"alice","owner":"x","repo":"p","kind":"issue_opened"})"
      "\n"
      "not json\n"
      R"({"developer":"alice","owner":"x","repo":"p","kind":"no_such_kind"})"
      "\n"
      R"({"developer":"","owner":"x","repo":"p","kind":"star"})"
      "\n"
      R"({"developer":"bob","owner":"x","repo":"p","kind":"star","count":0})"
      "\n";
  ParseReport rep;
  auto store = from_jsonl(text, &rep);
  CHECK(rep.records_accepted == 1);
  REQUIRE(rep.errors.size() == 4);
  CHECK(rep.errors[0].line == 2);
  CHECK(rep.errors[1].line == 3);
  CHECK(rep.errors[2].line == 4);
  CHECK(rep.errors[3].line == 5);
  CHECK(store.total_events() == 1);

  CHECK_THROWS_AS(from_jsonl(text, nullptr, true), ParseFailure);
}

TEST_CASE("csv and jsonl of the same data produce identical stores") {
  auto a = from_jsonl(
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened","count":2})"
      "\n"
      R"({"developer":"bob","owner":"y","repo":"p2","kind":"watch"})"
      "\n");
  std::istringstream csv(
      "developer,owner,repo,kind,count\n"
      "alice,x,p1,issue_opened,2\n"
      "bob,y,p2,watch,1\n");
  auto b = parse_events(csv, {EventFormat::csv, true});
  CHECK(a.digest() == b.digest());
  CHECK(a.normalized_jsonl() == b.normalized_jsonl());
}

TEST_CASE("parsing is order-independent") {
  std::vector<std::string> lines = {
      R"({"developer":"alice","owner":"x","repo":"p1","kind":"issue_opened","count":2})",
      R"({"developer":"bob","owner":"y","repo":"p2","kind":"pr_merged"})",
      R"({"developer":"alice","owner":"y","repo":"p2","kind":"watch"})",
      R"({"developer":"carol","owner":"x","repo":"p1","kind":"star","count":3})",
  };
  auto join = [](const std::vector<std::string>& ls) {
    std::string out;
    for (const auto& l : ls) out += l + "\n";
    return out;
  };
  auto base = from_jsonl(join(lines)).normalized_jsonl();
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(lines.begin(), lines.end(), rng);
    CHECK(from_jsonl(join(lines)).normalized_jsonl() == base);
  }
}

TEST_CASE("raw_count matches a linear scan of the unaggregated input") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 20; ++iter) {
    auto rs = testing::make_random_store(rng, 4, 6, 40);
    for (int d = 0; d < 4; ++d)
      for (int p = 0; p < 6; ++p)
        for (int k = 0; k < kNumEventKinds; ++k) {
          std::int64_t expect = 0;
          for (const auto& r : rs.records)
            if (r.dev == "d" + std::to_string(d) &&
                r.repo == "r" + std::to_string(p) &&
                r.kind == static_cast<EventKind>(k))
              expect += r.count;
          CHECK(rs.store.raw_count(d, p, static_cast<EventKind>(k)) == expect);
        }
  }
}

TEST_CASE("timestamps and unknown keys in JSONL are ignored") {
  auto store = from_jsonl(
      R"({"developer":"alice","owner":"x","repo":"p","kind":"star","ts":"2020-01-01T00:00:00Z"})"
      "\n");
  CHECK(store.total_events() == 1);
}

TEST_CASE("like is accepted as an alias for star") {
  auto store = from_jsonl(
      R"({"developer":"alice","owner":"x","repo":"p","kind":"like"})"
      "\n");
  CHECK(store.raw_count({"alice"}, {"x", "p"}, EventKind::star) == 1);
}

TEST_CASE("fixture dataset has the expected universe") {
  auto store = parse_events_file(std::string(DEVREC_FIXTURE_DIR) + "/events.jsonl",
                                 {EventFormat::jsonl, true});
  CHECK(store.developer_count() == 8);
  CHECK(store.project_count() == 12);
}
