// Copyright 2026 The rrm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rrm/datagen.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rrm/random.h"

namespace rrm {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool LooksNormalized(std::size_t dims, const std::vector<double>& values) {
  for (std::size_t j = 0; j < dims; ++j) {
    bool top = false;
    for (std::size_t i = j; i < values.size(); i += dims) {
      if (values[i] < -kNormTolerance || values[i] > 1.0 + kNormTolerance) return false;
      if (values[i] >= 1.0 - kNormTolerance) top = true;
    }
    if (!top) return false;
  }
  return true;
}

}  // namespace

Family ParseFamily(const std::string& name) {
  if (name == "independent") return Family::kIndependent;
  if (name == "correlated") return Family::kCorrelated;
  if (name == "anti-correlated" || name == "anticorrelated") return Family::kAntiCorrelated;
  throw InvalidArgument("unknown family '" + name + "'");
}

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kIndependent: return "independent";
    case Family::kCorrelated: return "correlated";
    case Family::kAntiCorrelated: return "anti-correlated";
  }
  return "unknown";
}

Dataset Generate(const GenSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("n must be >= 1");
  if (spec.d < 2) throw InvalidArgument("d must be >= 2");
  if (spec.family != Family::kIndependent &&
      !(spec.correlation_strength > 0.0 && spec.correlation_strength <= 1.0)) {
    throw InvalidArgument("correlation strength must lie in (0, 1]");
  }
  const double sigma = 1.0 - spec.correlation_strength;
  const double dd = static_cast<double>(spec.d);
  std::vector<double> raw;
  raw.reserve(spec.n * spec.d);
  std::vector<double> v(spec.d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    SplitMix64 rng(DeriveSeed(spec.seed, kStreamGenerator, i));
    switch (spec.family) {
      case Family::kIndependent:
        for (double& x : v) x = rng.Uniform();
        break;
      case Family::kCorrelated: {
        const double center = rng.Uniform();
        for (double& x : v) x = std::clamp(center + sigma * rng.Normal(), 0.0, 1.0);
        break;
      }
      case Family::kAntiCorrelated: {
        // Uniform point pushed onto the plane sum(v) = c, c close to d/2.
        const double c = dd * std::clamp(0.5 + 0.25 * sigma * rng.Normal(), 0.0, 1.0);
        double sum = 0.0;
        for (double& x : v) {
          x = rng.Uniform();
          sum += x;
        }
        for (double& x : v) x = std::clamp(x + (c - sum) / dd, 0.0, 1.0);
        break;
      }
    }
    raw.insert(raw.end(), v.begin(), v.end());
  }
  return Dataset::Normalize(spec.d, std::move(raw));
}

Dataset ParseCsv(std::istream& in, const CsvOptions& options, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) {
      header = SplitRow(line);
      break;
    }
  }
  if (header.empty()) throw InvalidArgument(source + ": empty file (no header row)");
  const std::size_t dims = header.size();
  if (dims < 2) throw InvalidArgument(source + ": need at least 2 columns, header has " + std::to_string(dims));

  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitRow(line);
    if (cells.size() != dims) {
      throw InvalidArgument(source + ": row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " + std::to_string(dims));
    }
    for (std::size_t j = 0; j < dims; ++j) {
      double x = 0.0;
      const char* b = cells[j].data();
      const char* e = b + cells[j].size();
      const auto [ptr, ec] = std::from_chars(b, e, x);
      if (cells[j].empty() || ec != std::errc() || ptr != e) {
        throw InvalidArgument(source + ": row " + std::to_string(line_no) + ", column " +
                              std::to_string(j + 1) + " ('" + header[j] + "'): not a number: '" +
                              cells[j] + "'");
      }
      values.push_back(x);
    }
  }
  if (values.empty()) throw InvalidArgument(source + ": no data rows");

  for (const auto& name : options.negate_columns) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InvalidArgument(source + ": no column named '" + name + "'");
    const std::size_t j = static_cast<std::size_t>(it - header.begin());
    double hi = values[j];
    for (std::size_t i = j; i < values.size(); i += dims) hi = std::max(hi, values[i]);
    for (std::size_t i = j; i < values.size(); i += dims) values[i] = hi - values[i];
  }
  if (options.normalize) return Dataset::Normalize(dims, std::move(values), std::move(header));
  const bool normalized = LooksNormalized(dims, values);
  return Dataset(dims, std::move(values), std::move(header), normalized);
}

Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return ParseCsv(in, options, path.string());
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  for (std::size_t j = 0; j < data.dims(); ++j) {
    if (j) out << ',';
    if (j < data.attribute_names().size()) {
      out << data.attribute_names()[j];
    } else {
      out << 'A' << (j + 1);
    }
  }
  out << '\n';
  char buf[32];
  for (TupleIndex i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dims(); ++j) {
      if (j) out << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, data.at(i, j));
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

void WriteCsv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WriteCsv(data, out);
}

nlohmann::json ResultToJson(const RegretResult& result) {
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json indices = nlohmann::json::array();
  for (TupleIndex t : result.selected) indices.push_back(t + 1);
  j["indices"] = std::move(indices);
  j["size"] = result.selected.size();
  j["rank_regret"] = result.rank_regret;
  if (result.estimate) {
    j["estimated_rank_regret"] = result.estimate->rank_regret;
    j["samples"] = result.estimate->samples;
    j["seed"] = result.estimate->seed;
  }
  j["params"] = result.params;
  return j;
}

RegretResult ResultFromJson(const nlohmann::json& j) {
  RegretResult result;
  for (const auto& i : j.at("indices")) {
    const auto one_based = i.get<std::size_t>();
    if (one_based < 1) throw InvalidArgument("result indices are 1-based");
    result.selected.push_back(one_based - 1);
  }
  result.rank_regret = j.at("rank_regret").get<std::size_t>();
  if (j.contains("estimated_rank_regret")) {
    RegretResult::Estimate e;
    e.rank_regret = j.at("estimated_rank_regret").get<std::size_t>();
    e.samples = j.value("samples", std::size_t{0});
    e.seed = j.value("seed", std::uint64_t{0});
    result.estimate = e;
  }
  if (j.contains("params")) result.params = j.at("params");
  return result;
}

std::string CanonicalDump(const nlohmann::json& json) { return json.dump(2) + "\n"; }

void SaveResult(const RegretResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << CanonicalDump(ResultToJson(result));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RegretResult LoadResult(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return ResultFromJson(nlohmann::json::parse(in));
}

RestrictedSpace RestrictedSpaceFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("halfspaces") || !json.at("halfspaces").is_array()) {
    throw InvalidArgument("restricted space must be {\"halfspaces\": [[...], ...]}");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : json.at("halfspaces")) rows.push_back(row.get<std::vector<double>>());
  return RestrictedSpace(std::move(rows), json.value("description", std::string()));
}

RestrictedSpace LoadRestrictedSpace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return RestrictedSpaceFromJson(nlohmann::json::parse(in));
}

}  // namespace rrm
