#include <gtest/gtest.h>

#include <sstream>

#include "flagmine/error.hpp"
#include "flagmine/io.hpp"
#include "flagmine/miner.hpp"
#include "flagmine/rng.hpp"

using namespace flagmine;

namespace {

FuzzyLaggedCluster sample_cluster() {
  FuzzyLaggedCluster c;
  c.rows = {0, 4, 7};
  c.lags = {0, -2, 3};
  c.cols = {1, 2, 9};
  c.fuzz[{4, 2}] = 1;
  c.fuzz[{7, 9}] = -2;
  c.max_fuzz = 2;
  c.achieved_error = 0.1 + 0.2;
  c.objective = 9;
  c.anchor = 0;
  c.anti_rows = {7};
  return c;
}

void expect_same(const FuzzyLaggedCluster& x, const FuzzyLaggedCluster& y) {
  EXPECT_EQ(x.rows, y.rows);
  EXPECT_EQ(x.lags, y.lags);
  EXPECT_EQ(x.cols, y.cols);
  EXPECT_EQ(x.fuzz, y.fuzz);
  EXPECT_EQ(x.max_fuzz, y.max_fuzz);
  EXPECT_EQ(x.achieved_error, y.achieved_error);
  EXPECT_EQ(x.objective, y.objective);
  EXPECT_EQ(x.anchor, y.anchor);
  EXPECT_EQ(x.anti_rows, y.anti_rows);
}

}  // namespace

TEST(ClusterJson, OneBasedIndices) {
  Json j = cluster_to_json(sample_cluster());
  EXPECT_EQ(j["rows"], Json({1, 5, 8}));
  EXPECT_EQ(j["cols"], Json({2, 3, 10}));
  EXPECT_EQ(j["lags"], Json({0, -2, 3}));
  EXPECT_EQ(j["fuzz"], Json::parse("[[5,3,1],[8,10,-2]]"));
  EXPECT_EQ(j["anti"], true);
}

TEST(ClusterJson, RoundTrip) {
  const FuzzyLaggedCluster c = sample_cluster();
  auto back = clusters_from_string(clusters_to_string({c, FuzzyLaggedCluster{{1, 2}, {0, 1}, {0, 5}, {}, 0, 0, 4, 1, {}}}));
  ASSERT_EQ(back.size(), 2u);
  expect_same(back[0], c);
  EXPECT_EQ(back[1].rows, (std::vector<int>{1, 2}));
  EXPECT_FALSE(back[1].anti());
}

TEST(ClusterJson, MinedOutputRoundTrips) {
  DataMatrix a = gen_random_matrix(12, 12, 0, 1, 8);
  MinerConfig cfg;
  cfg.w = 0.2;
  cfg.max_fuzz = 1;
  cfg.iterations = 50;
  auto out = mine(a, cfg);
  const std::string text = clusters_to_string(out);
  auto back = clusters_from_string(text);
  ASSERT_EQ(back.size(), out.size());
  for (std::size_t k = 0; k < out.size(); ++k) expect_same(back[k], out[k]);
  EXPECT_EQ(clusters_to_string(back), text);
}

TEST(ClusterJson, ParseErrors) {
  EXPECT_THROW(clusters_from_string("not json"), ParseError);
  EXPECT_THROW(clusters_from_string("[]"), ParseError);
  EXPECT_THROW(clusters_from_string(R"({"clusters": [{"rows": [1]}]})"), ParseError);
  EXPECT_THROW(clusters_from_string(
                   R"({"clusters": [{"rows": [1, 2], "lags": [0], "cols": [1], "fuzz": [], "max_fuzz": 0,
                       "error": 0, "anti": false, "objective": 1}]})"),
               ParseError);
  EXPECT_THROW(clusters_from_string(
                   R"({"clusters": [{"rows": [1, 2], "lags": [0, 0], "cols": [1], "fuzz": [[1, 2]],
                       "max_fuzz": 0, "error": 0, "anti": false, "objective": 1}]})"),
               ParseError);
  EXPECT_THROW(clusters_from_string(
                   R"({"clusters": [{"rows": [1, 2], "lags": [0, 0], "cols": [1], "fuzz": [],
                       "max_fuzz": 0, "error": 0, "anti": true, "objective": 1}]})"),
               ParseError);
  EXPECT_THROW(read_clusters_file("/nonexistent/clusters.json"), IoError);
}

TEST(TruthJson, RoundTrip) {
  PlantSpec spec;
  spec.F = 2;
  spec.w = 3;
  spec.seed = 12345678901234ULL;
  PlantResult p = plant_cluster(gen_random_matrix(20, 20, 100, 1100, 1), spec);
  GroundTruth back = truth_from_json(Json::parse(truth_to_json(p.truth).dump()));
  expect_same(back.cluster, p.truth.cluster);
  EXPECT_EQ(back.R, p.truth.R);
  EXPECT_EQ(back.C, p.truth.C);
  EXPECT_EQ(back.w, 3.0);
  EXPECT_EQ(back.F, 2);
  EXPECT_EQ(back.seed, spec.seed);
  EXPECT_THROW(truth_from_json(Json::parse("{}")), ParseError);
}

TEST(TrajectoryCsv, RoundTrip) {
  TrajectoryParams tp;
  tp.groups = 2;
  tp.members = 3;
  tp.timesteps = 7;
  TrajectorySet t = gen_trajectory_groups(tp);
  std::stringstream ss;
  write_trajectories_csv(ss, t);
  TrajectorySet back = read_trajectories_csv(ss);
  EXPECT_EQ(back.x, t.x);
  EXPECT_EQ(back.y, t.y);
  std::stringstream gap("object_id,t,x,y\n1,0,1,2\n1,2,3,4\n");
  EXPECT_THROW(read_trajectories_csv(gap), ParseError);
  std::stringstream ragged("1,0,1,2\n1,1,1,2\n2,0,3,4\n");
  EXPECT_THROW(read_trajectories_csv(ragged), ParseError);
  std::stringstream bad("1,0,x,2\n");
  EXPECT_THROW(read_trajectories_csv(bad), ParseError);
}

TEST(LabelsCsv, RoundTrip) {
  const std::vector<int> labels{0, 0, 1, -1, 2};
  std::stringstream ss;
  write_labels_csv(ss, labels);
  EXPECT_EQ(ss.str().substr(0, 16), "object_id,label\n");
  EXPECT_EQ(read_labels_csv(ss), labels);
  std::stringstream holes("1,0\n3,1\n");
  EXPECT_THROW(read_labels_csv(holes), ParseError);
  std::stringstream fields("1,0,4\n");
  EXPECT_THROW(read_labels_csv(fields), ParseError);
}
