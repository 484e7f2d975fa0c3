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

#include "mvg/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include "json.hpp"
#include "mvg/coord_codec.hpp"
#include "mvg/errors.hpp"
#include "mvg/rng.hpp"
#include "mvg/text.hpp"

namespace mvg {
namespace {

using nlohmann::json;

std::string squash(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (!std::isspace(c)) out += static_cast<char>(std::tolower(c));
  }
  return out;
}

const json& require(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(line, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line,
                           bool allow_empty = false) {
  const json& v = require(obj, key, line);
  if (!v.is_string()) throw SchemaError(line, std::string("\"") + key + "\" must be a string");
  std::string s = v.get<std::string>();
  if (!allow_empty && s.empty()) {
    throw SchemaError(line, std::string("\"") + key + "\" must not be empty");
  }
  return s;
}

int require_dimension(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_number_integer()) {
    throw SchemaError(line, std::string("\"") + key + "\" must be an integer");
  }
  const auto value = v.get<long long>();
  if (value <= 0 || value > 1'000'000) {
    throw SchemaError(line, std::string("\"") + key + "\" must be a positive pixel count");
  }
  return static_cast<int>(value);
}

PixelBox require_box(const json& obj, std::size_t line) {
  const json& v = require(obj, "gt_box", line);
  if (!v.is_array() || v.size() != 4) {
    throw SchemaError(line, "\"gt_box\" must be an array of 4 numbers");
  }
  std::array<double, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number()) throw SchemaError(line, "\"gt_box\" must be an array of 4 numbers");
    c[i] = v[i].get<double>();
    if (!std::isfinite(c[i])) throw SchemaError(line, "\"gt_box\" coordinates must be finite");
  }
  const PixelBox box{c[0], c[1], c[2], c[3]};
  if (box.x_left > box.x_right || box.y_top > box.y_bottom) {
    throw SchemaError(line, "\"gt_box\" corners out of order");
  }
  return box;
}

GroundingSample parse_record(std::string_view text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw SchemaError(line, "record must be a JSON object");

  GroundingSample s;
  s.sample_id = require_string(obj, "sample_id", line);
  s.patient_id = require_string(obj, "patient_id", line);
  s.image_ref = require_string(obj, "image_ref", line, /*allow_empty=*/true);
  s.image_width = require_dimension(obj, "image_width", line);
  s.image_height = require_dimension(obj, "image_height", line);
  const std::string category = require_string(obj, "category", line);
  const auto parsed = parse_category(category);
  if (!parsed) throw SchemaError(line, "unknown category \"" + category + "\"");
  s.category = *parsed;
  s.phrase = require_string(obj, "phrase", line);
  if (trim(s.phrase).empty()) throw SchemaError(line, "\"phrase\" must not be blank");
  s.gt_box = require_box(obj, line);
  if (s.gt_box.x_left < 0 || s.gt_box.y_top < 0 || s.gt_box.x_right > s.image_width ||
      s.gt_box.y_bottom > s.image_height) {
    throw BoxOutOfBoundsError(line, "gt_box of \"" + s.sample_id + "\" exceeds the " +
                                        std::to_string(s.image_width) + "x" +
                                        std::to_string(s.image_height) + " image");
  }
  return s;
}

constexpr std::array<std::array<std::string_view, 3>, kNumCategories> kPhrases = {{
    {"patchy right lower lobe pneumonia", "left basilar pneumonia", "multifocal pneumonia"},
    {"small right apical pneumothorax", "left apical pneumothorax", "tiny right pneumothorax"},
    {"right lower lobe consolidation", "left retrocardiac consolidation",
     "focal consolidation in the right upper lobe"},
    {"bibasilar atelectasis", "left basilar atelectasis", "linear atelectasis at the right base"},
    {"mild interstitial edema", "moderate pulmonary edema", "perihilar edema"},
    {"moderate cardiomegaly", "enlarged cardiac silhouette", "mild cardiomegaly"},
    {"right basilar opacity", "left mid lung opacity", "patchy opacity in the left lower lobe"},
    {"small left pleural effusion", "moderate right pleural effusion",
     "layering right pleural effusion"},
}};

}  // namespace

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::Pneumonia:
      return "Pneumonia";
    case Category::Pneumothorax:
      return "Pneumothorax";
    case Category::Consolidation:
      return "Consolidation";
    case Category::Atelectasis:
      return "Atelectasis";
    case Category::Edema:
      return "Edema";
    case Category::Cardiomegaly:
      return "Cardiomegaly";
    case Category::LungOpacity:
      return "Lung Opacity";
    case Category::PleuralEffusion:
      return "Pleural Effusion";
  }
  return "Unknown";
}

std::optional<Category> parse_category(std::string_view name) {
  const std::string key = squash(name);
  for (Category c : kCategories) {
    if (squash(to_string(c)) == key) return c;
  }
  return std::nullopt;
}

std::optional<GroundingSample> ManifestReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (trim(text).empty()) continue;
    GroundingSample s = parse_record(text, line_);
    if (!seen_ids_.insert(s.sample_id).second) {
      throw DuplicateIdError(line_, "duplicate sample_id \"" + s.sample_id + "\"");
    }
    return s;
  }
  if (in_.bad()) throw IoError("read failure after line " + std::to_string(line_));
  return std::nullopt;
}

std::vector<GroundingSample> read_manifest(std::istream& in) {
  ManifestReader reader(in);
  std::vector<GroundingSample> samples;
  while (auto s = reader.next()) samples.push_back(std::move(*s));
  return samples;
}

std::vector<GroundingSample> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  return read_manifest(in);
}

void write_manifest(std::ostream& out, const std::vector<GroundingSample>& samples) {
  for (const GroundingSample& s : samples) {
    nlohmann::ordered_json obj;
    obj["sample_id"] = s.sample_id;
    obj["patient_id"] = s.patient_id;
    obj["image_ref"] = s.image_ref;
    obj["image_width"] = s.image_width;
    obj["image_height"] = s.image_height;
    obj["category"] = to_string(s.category);
    obj["phrase"] = s.phrase;
    obj["gt_box"] = {s.gt_box.x_left, s.gt_box.y_top, s.gt_box.x_right, s.gt_box.y_bottom};
    out << obj.dump() << '\n';
  }
}

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::Train:
      return "train";
    case Split::Val:
      return "val";
    case Split::Test:
      return "test";
  }
  return "unknown";
}

SplitAssignment split_by_patient(const std::vector<GroundingSample>& samples,
                                 SplitRatios ratios, std::uint64_t seed) {
  if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0) {
    throw ValidationError("split ratios must be positive");
  }
  const std::set<std::string> distinct = [&] {
    std::set<std::string> ids;
    for (const GroundingSample& s : samples) ids.insert(s.patient_id);
    return ids;
  }();
  const std::size_t patients = distinct.size();
  if (patients < 3) {
    throw TooFewPatientsError("need at least 3 distinct patients, got " +
                              std::to_string(patients));
  }

  std::vector<std::string> order(distinct.begin(), distinct.end());
  Rng rng(derive_seed(seed, fnv1a("patient-split")));
  rng.shuffle(std::span<std::string>(order));

  const std::size_t total = static_cast<std::size_t>(ratios.train) + ratios.val + ratios.test;
  SplitAssignment out;
  out.seed = seed;
  out.patient_counts.train = patients * ratios.train / total;
  out.patient_counts.val = patients * ratios.val / total;
  out.patient_counts.test = patients - out.patient_counts.train - out.patient_counts.val;

  for (std::size_t i = 0; i < order.size(); ++i) {
    Split split = Split::Test;
    if (i < out.patient_counts.train) {
      split = Split::Train;
    } else if (i < out.patient_counts.train + out.patient_counts.val) {
      split = Split::Val;
    }
    out.by_patient.emplace(order[i], split);
  }
  for (const GroundingSample& s : samples) {
    out.by_sample.emplace(s.sample_id, out.by_patient.at(s.patient_id));
  }
  if (out.patient_counts.val == 0) {
    out.warnings.push_back("validation split is empty with " + std::to_string(patients) +
                           " patients");
  }
  if (out.patient_counts.train == 0) {
    out.warnings.push_back("training split is empty with " + std::to_string(patients) +
                           " patients");
  }
  return out;
}

void write_split(std::ostream& out, const std::vector<GroundingSample>& samples,
                 const SplitAssignment& assignment) {
  for (const GroundingSample& s : samples) {
    nlohmann::ordered_json obj;
    obj["sample_id"] = s.sample_id;
    obj["split"] = to_string(assignment.by_sample.at(s.sample_id));
    out << obj.dump() << '\n';
  }
}

CategoryCounts category_counts(const std::vector<GroundingSample>& samples) {
  CategoryCounts counts{};
  for (const GroundingSample& s : samples) ++counts[index_of(s.category)];
  return counts;
}

std::vector<GroundingSample> synthetic_manifest(const SyntheticManifestOptions& options) {
  if (options.patients == 0) throw ValidationError("synthetic manifest needs patients");
  if (options.image_width <= 0 || options.image_height <= 0) {
    throw DimensionError("synthetic image dimensions must be positive");
  }
  Rng rng(derive_seed(options.seed, fnv1a("synthetic-manifest")));
  const double w = options.image_width;
  const double h = options.image_height;

  auto grid_interval = [&](double dim) {
    const auto lo = rng.uniform_int(0, 90);
    const auto hi = rng.uniform_int(lo + 5, kGridMax);
    return std::pair{lo * dim / kGridMax, hi * dim / kGridMax};
  };
  auto free_interval = [&](double dim) {
    const double lo = rng.uniform(0.0, 0.9 * dim);
    const double hi = rng.uniform(lo + 0.05 * dim, dim);
    return std::pair{lo, std::min(hi, dim)};
  };

  std::vector<GroundingSample> samples;
  samples.reserve(options.samples_per_category * kNumCategories);
  std::size_t serial = 0;
  for (Category c : kCategories) {
    const auto& phrases = kPhrases[index_of(c)];
    for (std::size_t i = 0; i < options.samples_per_category; ++i, ++serial) {
      char id[32];
      std::snprintf(id, sizeof(id), "s%05zu", serial);
      char patient[32];
      std::snprintf(patient, sizeof(patient), "p%04llu",
                    static_cast<unsigned long long>(rng.uniform_index(options.patients)));
      const auto [x0, x1] = options.grid_aligned ? grid_interval(w) : free_interval(w);
      const auto [y0, y1] = options.grid_aligned ? grid_interval(h) : free_interval(h);

      GroundingSample s;
      s.sample_id = id;
      s.patient_id = patient;
      s.image_ref = std::string("images/") + id + ".png";
      s.image_width = options.image_width;
      s.image_height = options.image_height;
      s.category = c;
      s.phrase = std::string(phrases[rng.uniform_index(phrases.size())]);
      s.gt_box = {x0, y0, x1, y1};
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

}  // namespace mvg
