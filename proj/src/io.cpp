#include "flagmine/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "flagmine/error.hpp"

namespace flagmine {

namespace {

std::vector<int> shifted(const std::vector<int>& v, int by) {
  std::vector<int> out(v);
  for (int& x : out) x += by;
  return out;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  return s;
}

}  // namespace

Json cluster_to_json(const FuzzyLaggedCluster& c) {
  Json fuzz = Json::array();
  for (const auto& [key, f] : c.fuzz) fuzz.push_back({key.first + 1, key.second + 1, f});
  return Json{{"rows", shifted(c.rows, 1)},
              {"lags", c.lags},
              {"cols", shifted(c.cols, 1)},
              {"fuzz", fuzz},
              {"max_fuzz", c.max_fuzz},
              {"error", c.achieved_error},
              {"anti", c.anti()},
              {"objective", c.objective},
              {"anchor", c.anchor + 1},
              {"anti_rows", shifted(c.anti_rows, 1)}};
}

FuzzyLaggedCluster cluster_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("cluster entry is not an object");
  FuzzyLaggedCluster c;
  c.rows = shifted(field<std::vector<int>>(j, "rows"), -1);
  c.lags = field<std::vector<int>>(j, "lags");
  c.cols = shifted(field<std::vector<int>>(j, "cols"), -1);
  if (c.rows.size() != c.lags.size()) throw ParseError("rows and lags differ in length");
  for (const auto& e : field<std::vector<std::vector<int>>>(j, "fuzz")) {
    if (e.size() != 3) throw ParseError("fuzz entries are [row, col, f]");
    if (e[2] != 0) c.fuzz[{e[0] - 1, e[1] - 1}] = e[2];
  }
  c.max_fuzz = field<int>(j, "max_fuzz");
  c.achieved_error = field<double>(j, "error");
  c.objective = field<double>(j, "objective");
  c.anchor = j.contains("anchor") ? field<int>(j, "anchor") - 1 : (c.rows.empty() ? -1 : c.rows[0]);
  if (j.contains("anti_rows")) c.anti_rows = shifted(field<std::vector<int>>(j, "anti_rows"), -1);
  if (field<bool>(j, "anti") != c.anti()) throw ParseError("'anti' disagrees with 'anti_rows'");
  return c;
}

std::string clusters_to_string(const std::vector<FuzzyLaggedCluster>& clusters) {
  Json arr = Json::array();
  for (const auto& c : clusters) arr.push_back(cluster_to_json(c));
  return Json{{"clusters", arr}}.dump(2) + "\n";
}

std::vector<FuzzyLaggedCluster> clusters_from_string(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("clusters") || !doc["clusters"].is_array()) {
    throw ParseError("expected an object with a 'clusters' array");
  }
  std::vector<FuzzyLaggedCluster> out;
  for (const auto& c : doc["clusters"]) out.push_back(cluster_from_json(c));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void write_clusters_file(const std::string& path, const std::vector<FuzzyLaggedCluster>& clusters) {
  write_text_file(path, clusters_to_string(clusters));
}

std::vector<FuzzyLaggedCluster> read_clusters_file(const std::string& path) {
  return clusters_from_string(read_text_file(path));
}

Json truth_to_json(const GroundTruth& t) {
  return Json{{"cluster", cluster_to_json(t.cluster)},
              {"R", t.R},
              {"C", t.C},
              {"w", t.w},
              {"F", t.F},
              {"seed", t.seed}};
}

GroundTruth truth_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cluster")) throw ParseError("truth JSON needs a 'cluster' object");
  GroundTruth t;
  t.cluster = cluster_from_json(j["cluster"]);
  if (j.contains("R")) t.R = field<std::vector<double>>(j, "R");
  if (j.contains("C")) t.C = field<std::vector<double>>(j, "C");
  t.w = field<double>(j, "w");
  t.F = field<int>(j, "F");
  if (j.contains("seed")) t.seed = field<std::uint64_t>(j, "seed");
  return t;
}

GroundTruth read_truth_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return truth_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void write_trajectories_csv(std::ostream& out, const TrajectorySet& t) {
  out << "object_id,t,x,y\n";
  for (std::size_t r = 0; r < t.x.size(); ++r) {
    for (std::size_t k = 0; k < t.x[r].size(); ++k) {
      out << r + 1 << ',' << k << ',' << format_double(t.x[r][k]) << ',' << format_double(t.y[r][k])
          << '\n';
    }
  }
}

TrajectorySet read_trajectories_csv(std::istream& in) {
  std::map<int, std::map<int, std::pair<double, double>>> by;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != 4) throw ParseError("line " + std::to_string(lineno) + ": expected 4 fields");
    if (lineno == 1 && strip(cells[0]) == "object_id") continue;
    const int id = static_cast<int>(parse_number(strip(cells[0]), lineno));
    const int step = static_cast<int>(parse_number(strip(cells[1]), lineno));
    by[id][step] = {parse_number(strip(cells[2]), lineno), parse_number(strip(cells[3]), lineno)};
  }
  TrajectorySet t;
  std::size_t len = 0;
  for (const auto& [id, steps] : by) {
    std::vector<double> x, y;
    int expect = 0;
    for (const auto& [step, xy] : steps) {
      if (step != expect++) throw ParseError("object " + std::to_string(id) + " has a gap in t");
      x.push_back(xy.first);
      y.push_back(xy.second);
    }
    if (len == 0) len = x.size();
    if (x.size() != len) throw ParseError("objects have different trajectory lengths");
    t.x.push_back(std::move(x));
    t.y.push_back(std::move(y));
    t.labels.push_back(0);
  }
  return t;
}

void write_labels_csv(std::ostream& out, const std::vector<int>& labels) {
  out << "object_id,label\n";
  for (std::size_t r = 0; r < labels.size(); ++r) out << r + 1 << ',' << labels[r] << '\n';
}

std::vector<int> read_labels_csv(std::istream& in) {
  std::map<int, int> by;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != 2) throw ParseError("line " + std::to_string(lineno) + ": expected 2 fields");
    if (lineno == 1 && strip(cells[0]) == "object_id") continue;
    by[static_cast<int>(parse_number(strip(cells[0]), lineno))] =
        static_cast<int>(parse_number(strip(cells[1]), lineno));
  }
  std::vector<int> out;
  int expect = 1;
  for (const auto& [id, label] : by) {
    if (id != expect++) throw ParseError("object ids must run 1..N");
    out.push_back(label);
  }
  return out;
}

}  // namespace flagmine
