// Copyright 2026 The mvg Authors.
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

#ifndef MVG_DATASET_HPP_
#define MVG_DATASET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mvg/geometry.hpp"

namespace mvg {

// Fixed order; report columns follow it.
enum class Category {
  Pneumonia,
  Pneumothorax,
  Consolidation,
  Atelectasis,
  Edema,
  Cardiomegaly,
  LungOpacity,
  PleuralEffusion,
};

inline constexpr std::size_t kNumCategories = 8;

inline constexpr std::array<Category, kNumCategories> kCategories = {
    Category::Pneumonia,   Category::Pneumothorax, Category::Consolidation,
    Category::Atelectasis, Category::Edema,        Category::Cardiomegaly,
    Category::LungOpacity, Category::PleuralEffusion,
};

constexpr std::size_t index_of(Category c) noexcept { return static_cast<std::size_t>(c); }

// Display name, e.g. "Lung Opacity".
std::string_view to_string(Category c) noexcept;

// Case- and whitespace-insensitive: "Lung Opacity", "lungopacity" and
// "LUNG  OPACITY" all parse.
std::optional<Category> parse_category(std::string_view name);

struct GroundingSample {
  std::string sample_id;
  std::string patient_id;
  std::string image_ref;
  int image_width = 0;
  int image_height = 0;
  Category category = Category::Pneumonia;
  std::string phrase;
  PixelBox gt_box;
};

// Streams a JSON-lines manifest one record at a time, validating each record
// and rejecting duplicate sample ids. Blank lines are skipped.
class ManifestReader {
 public:
  explicit ManifestReader(std::istream& in) : in_(in) {}

  // Returns std::nullopt at end of input. Throws SchemaError,
  // DuplicateIdError or BoxOutOfBoundsError carrying the 1-based line number.
  std::optional<GroundingSample> next();

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
};

std::vector<GroundingSample> read_manifest(std::istream& in);

// Throws IoError if the file cannot be opened.
std::vector<GroundingSample> load_manifest(const std::filesystem::path& path);

void write_manifest(std::ostream& out, const std::vector<GroundingSample>& samples);

enum class Split { Train, Val, Test };

std::string_view to_string(Split s) noexcept;

struct SplitRatios {
  int train = 7;
  int val = 1;
  int test = 2;
};

struct PatientCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  friend bool operator==(const PatientCounts&, const PatientCounts&) = default;
};

struct SplitAssignment {
  std::map<std::string, Split> by_sample;
  std::map<std::string, Split> by_patient;
  std::uint64_t seed = 0;
  PatientCounts patient_counts;
  std::vector<std::string> warnings;
};

// Sorts the distinct patient ids, shuffles them with `seed`, then hands out
// floor(P * train / sum) to Train, floor(P * val / sum) to Val and the rest to
// Test. Throws TooFewPatientsError below 3 patients and ValidationError for
// non-positive ratios.
SplitAssignment split_by_patient(const std::vector<GroundingSample>& samples,
                                 SplitRatios ratios, std::uint64_t seed);

// One {"sample_id", "split"} line per sample, in `samples` order.
void write_split(std::ostream& out, const std::vector<GroundingSample>& samples,
                 const SplitAssignment& assignment);

using CategoryCounts = std::array<std::size_t, kNumCategories>;

CategoryCounts category_counts(const std::vector<GroundingSample>& samples);

struct SyntheticManifestOptions {
  std::size_t samples_per_category = 8;
  std::size_t patients = 16;
  int image_width = 448;
  int image_height = 448;
  // When set, every box corner is an exact multiple of dimension / 100.
  bool grid_aligned = true;
  std::uint64_t seed = 42;
};

// Schema-identical stand-in for a real grounding manifest. Samples are emitted
// category by category in the fixed category order.
std::vector<GroundingSample> synthetic_manifest(const SyntheticManifestOptions& options);

}  // namespace mvg

#endif  // MVG_DATASET_HPP_
