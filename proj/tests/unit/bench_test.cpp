#include <gtest/gtest.h>

#include "bench.hpp"
#include "support/graphs.hpp"

using namespace chordsum;
using namespace chordsum::bench;

namespace {

InstanceSpec tiny(std::uint64_t seed) {
  InstanceSpec s;
  s.gen.family = gen::Family::ktree;
  s.gen.n = 6;
  s.gen.param = 2;
  s.gen.weights = gen::WeightKind::uniform_int;
  s.gen.seed = seed;
  return s;
}

}  // namespace

TEST(Bench, Round9) {
  EXPECT_EQ(round9(1.0 / 3.0), 0.333333333);
  EXPECT_EQ(fmt9(2.0), "2");
  EXPECT_EQ(round9(round9(3.14159265358979)), round9(3.14159265358979));
}

TEST(Bench, RecordsRoundTripThroughJson) {
  auto records = run_instance(tiny(3), {});
  ASSERT_GE(records.size(), 3u);
  for (const auto& r : records) {
    auto text = to_json(r).dump();
    EXPECT_EQ(record_from_json(nlohmann::json::parse(text)), r) << text;
  }
}

TEST(Bench, TinyInstanceHasConsistentRatios) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto records = run_instance(tiny(seed), {});
    ASSERT_EQ(records.size(), known_algorithms().size());
    for (const auto& r : records) {
      EXPECT_EQ(r.status, "ok") << r.error;
      ASSERT_TRUE(r.objective && r.lp_value && r.oracle_value);
      EXPECT_GE(*r.ratio_vs_oracle, 1.0 - 1e-9);
      EXPECT_GE(*r.ratio_vs_lp, 1.0 - 1e-9);
      if (r.algorithm == "lp") { EXPECT_LE(*r.ratio_vs_oracle, 1.80); }
      if (r.algorithm == "greedy4") { EXPECT_LE(*r.ratio_vs_oracle, 4.0); }
    }
  }
}

TEST(Bench, NonChordalInstanceIsReportedNotThrown) {
  InstanceSpec s;
  s.file = CHORDSUM_TEST_DATA "/c4.graph";
  auto records = run_instance(s, {});
  ASSERT_FALSE(records.empty());
  for (const auto& r : records) EXPECT_EQ(r.status, "error");
}

TEST(Bench, AggregateAndReport) {
  EXPECT_TRUE(aggregate({}).empty());
  auto records = run_instance(tiny(1), {});
  auto agg = aggregate(records);
  EXPECT_EQ(agg.size(), 3u);
  auto report = report_json(records);
  EXPECT_EQ(report.at("rng"), kRngName);
  EXPECT_EQ(report.at("records").size(), records.size());
  std::ostringstream table;
  write_table(table, records);
  EXPECT_NE(table.str().find("greedy4"), std::string::npos);
}

TEST(Bench, SpecSetParsing) {
  auto specs = parse_spec_set(nlohmann::json::parse(
      R"({"instances": [{"family": "interval", "n": 5, "param": 0.5, "seed": 10, "seeds": 3}, {"file": "x.graph"}]})"));
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_EQ(specs[2].gen.seed, 12u);
  EXPECT_EQ(specs[3].file, "x.graph");
  EXPECT_TRUE(parse_spec_set(nlohmann::json::array()).empty());
  EXPECT_THROW(parse_spec_set(nlohmann::json::parse(R"({"a": 1})")), std::invalid_argument);
  EXPECT_THROW(parse_spec_set(nlohmann::json::parse(R"([{"family": "ktree", "n": 5, "param": 0.5}])")),
               std::invalid_argument);
  auto round = gen_spec_from_json(gen_spec_to_json(specs[0].gen));
  EXPECT_EQ(round.n, 5u);
  EXPECT_EQ(round.family, gen::Family::interval);
}
