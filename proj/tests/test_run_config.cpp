#include <gtest/gtest.h>

#include <cstdlib>

#include "srdsm/error.hpp"
#include "srdsm/run_config.hpp"

using namespace srdsm;

namespace {

ErrorCode merge_error(const std::string& text) {
  RunConfig c;
  try {
    c.merge_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(RunConfig, DefaultsFollowThePublishedRecipe) {
  const RunConfig c;
  EXPECT_EQ(c.samples, 1555u);
  EXPECT_EQ(c.network(Output::TS).hidden_layers, (std::vector<std::size_t>{60, 80}));
  EXPECT_DOUBLE_EQ(c.network(Output::TS).learning_rate, 0.001);
  EXPECT_DOUBLE_EQ(c.network(Output::TS).test_fraction, 0.1);
  EXPECT_EQ(c.network(Output::DI).hidden_layers, (std::vector<std::size_t>{16, 16}));
  EXPECT_DOUBLE_EQ(c.network(Output::DI).learning_rate, 0.0015);
  EXPECT_DOUBLE_EQ(c.network(Output::DI).test_fraction, 0.2);
  EXPECT_EQ(c.holdout, 25u);
  EXPECT_EQ(c.fresh_validation, 200u);
  EXPECT_EQ(c.uq_samples, 5000u);
  EXPECT_EQ(c.subspace_samples, 3277u);
  EXPECT_EQ(c.threads, 1u);
}

TEST(RunConfig, JsonRoundTripAndPartialOverride) {
  RunConfig c;
  c.output_dir = "out";
  c.merge_json(R"({"seed": 99, "networks": {"PL": {"epochs": 12}}, "retention": {"total": {"max_k": 5}}})");
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.network(Output::PL).epochs, 12u);
  EXPECT_EQ(c.network(Output::PL).hidden_layers, (std::vector<std::size_t>{65, 70}));
  EXPECT_EQ(c.retention_total.max_k, 5u);
  RunConfig d;
  d.merge_json(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
}

TEST(RunConfig, RejectsUnknownFieldsAndBadValues) {
  EXPECT_EQ(merge_error(R"({"sead": 1})"), ErrorCode::schema_mismatch);
  EXPECT_EQ(merge_error(R"({"sampler": {"schema": "mc"}})"), ErrorCode::schema_mismatch);
  EXPECT_EQ(merge_error(R"({"networks": {"XX": {}}})"), ErrorCode::schema_mismatch);
  EXPECT_EQ(merge_error(R"({"seed": "seven"})"), ErrorCode::schema_mismatch);
  EXPECT_EQ(merge_error(R"({"seed": 1)"), ErrorCode::parse_error);
  EXPECT_EQ(merge_error(R"({"query_mode": "sideways"})"), ErrorCode::invalid_argument);
}

TEST(RunConfig, OutputDirectoryPrecedence) {
  RunConfig c;
  ::setenv("SRDSM_OUTPUT_DIR", "from_env", 1);
  EXPECT_EQ(c.resolved_output_dir(), "from_env");
  c.output_dir = "explicit";
  EXPECT_EQ(c.resolved_output_dir(), "explicit");
  ::unsetenv("SRDSM_OUTPUT_DIR");
  c.output_dir.clear();
  EXPECT_EQ(c.resolved_output_dir(), "srdsm_out");
}

TEST(RunConfig, NetworkSeedsDifferPerOutput) {
  EXPECT_NE(network_seed(7, Output::TS), network_seed(7, Output::PM));
  EXPECT_EQ(network_seed(7, Output::DI), network_seed(7, Output::DI));
}
