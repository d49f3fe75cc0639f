#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "flagmine/cluster.hpp"
#include "flagmine/synth.hpp"

namespace flagmine {

using Json = nlohmann::json;

// File schema uses 1-based row and column indices; lags and fuzz are offsets.
Json cluster_to_json(const FuzzyLaggedCluster& c);
FuzzyLaggedCluster cluster_from_json(const Json& j);

std::string clusters_to_string(const std::vector<FuzzyLaggedCluster>& clusters);
std::vector<FuzzyLaggedCluster> clusters_from_string(const std::string& text);
void write_clusters_file(const std::string& path, const std::vector<FuzzyLaggedCluster>& clusters);
std::vector<FuzzyLaggedCluster> read_clusters_file(const std::string& path);

Json truth_to_json(const GroundTruth& t);
GroundTruth truth_from_json(const Json& j);
GroundTruth read_truth_file(const std::string& path);

// `object_id,t,x,y` with 1-based object ids and 0-based timesteps.
void write_trajectories_csv(std::ostream& out, const TrajectorySet& t);
TrajectorySet read_trajectories_csv(std::istream& in);

// `object_id,label`, 1-based object ids.
void write_labels_csv(std::ostream& out, const std::vector<int>& labels);
std::vector<int> read_labels_csv(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace flagmine
