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

#ifndef RRM_DATAGEN_H_
#define RRM_DATAGEN_H_

// Synthetic data, CSV input and result files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rrm/core.h"
#include "rrm/restricted_space.h"

namespace rrm {

enum class Family { kIndependent, kCorrelated, kAntiCorrelated };

// "independent", "correlated", "anti-correlated".
Family ParseFamily(const std::string& name);
const char* FamilyName(Family family);

struct GenSpec {
  Family family = Family::kIndependent;
  std::size_t n = 1000;
  std::size_t d = 3;
  std::uint64_t seed = 0;
  double correlation_strength = 0.8;  // correlated families only
};

// Always min-max normalized. Tuple i depends only on (seed, i).
Dataset Generate(const GenSpec& spec);

struct CsvOptions {
  bool normalize = true;
  // Smaller-is-better columns, by header name: v -> max - v before scaling.
  std::vector<std::string> negate_columns;
};

// Comma separated, header row first.
Dataset ParseCsv(std::istream& in, const CsvOptions& options = {},
                 const std::string& source = "<input>");
Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options = {});
// Writes with enough digits to read back the same doubles.
void WriteCsv(const Dataset& data, std::ostream& out);
void WriteCsv(const Dataset& data, const std::filesystem::path& path);

// Result file schema. Indices are 1-based in the file and 0-based in memory.
nlohmann::json ResultToJson(const RegretResult& result);
RegretResult ResultFromJson(const nlohmann::json& json);
// Sorted keys, two-space indent, trailing newline.
std::string CanonicalDump(const nlohmann::json& json);
void SaveResult(const RegretResult& result, const std::filesystem::path& path);
RegretResult LoadResult(const std::filesystem::path& path);

// {"halfspaces": [[h1, ..., hd], ...]} meaning h . u >= 0.
RestrictedSpace RestrictedSpaceFromJson(const nlohmann::json& json);
RestrictedSpace LoadRestrictedSpace(const std::filesystem::path& path);

}  // namespace rrm

#endif  // RRM_DATAGEN_H_
