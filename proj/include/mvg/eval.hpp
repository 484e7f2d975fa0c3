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

#ifndef MVG_EVAL_HPP_
#define MVG_EVAL_HPP_

// Scoring of raw model responses and aggregation into per-category, macro and
// count-weighted IoU / Dice.
//
// Aggregation rules:
//  - an unparseable response scores 0 and stays in its category's denominator;
//  - a category with no valid response has a null mean, rendered "-";
//  - the macro mean averages all 8 categories, a null mean counting as 0;
//  - the weighted mean is sum(n_c * mean_c) / sum(n_c), i.e. the mean over all
//    samples.

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvg/coord_codec.hpp"
#include "mvg/dataset.hpp"

namespace mvg {

struct SampleScore {
  std::string sample_id;
  bool valid = false;
  double iou = 0.0;
  double dice = 0.0;
  std::optional<ParseFailure> failure_kind;
  // Dequantized prediction; present iff valid.
  std::optional<PixelBox> predicted;
};

SampleScore score_sample(const GroundingSample& sample, std::string_view raw_output);

struct CategoryMetrics {
  Category category = Category::Pneumonia;
  std::size_t n_samples = 0;
  std::size_t n_valid = 0;
  std::optional<double> mean_iou;
  std::optional<double> mean_dice;
};

struct EvalReport {
  std::array<CategoryMetrics, kNumCategories> per_category{};
  double macro_iou = 0.0;
  double macro_dice = 0.0;
  double w_iou = 0.0;
  double w_dice = 0.0;
  std::size_t total_samples = 0;
};

// Order-independent fold over scored samples. Within a category the values
// are summed in sorted order, so the report is bit-identical for any
// insertion order.
class Aggregator {
 public:
  void add(Category category, const SampleScore& score);
  EvalReport finish() const;

 private:
  struct Bucket {
    std::vector<double> iou;
    std::vector<double> dice;
    std::size_t n_valid = 0;
  };
  std::array<Bucket, kNumCategories> buckets_{};
};

// Pairs scores with samples by sample_id. Throws AlignmentError when the id
// sets differ or an id repeats.
EvalReport aggregate(std::span<const SampleScore> scores,
                     std::span<const GroundingSample> samples);

// Macro mean over the 8 category values, nulls counted as 0.
double macro_mean(std::span<const std::optional<double>, kNumCategories> values);

enum class ReportFormat { Csv, Markdown };

// Half-up to 3 decimals; null renders as "-".
std::string format_metric(std::optional<double> value);

// A row of previously published per-category numbers, kept for side-by-side
// comparison in reports.
struct PublishedRow {
  std::string_view group;  // "comparison" or "ablation"
  std::string_view method;
  std::string_view metric;  // "IoU" or "Dice"
  std::array<std::optional<double>, kNumCategories> per_category;
  std::optional<double> mean;
  std::optional<double> weighted;
};

std::span<const PublishedRow> published_rows();

// Columns: metric, the 8 categories in fixed order, mean, weighted. One IoU
// and one Dice row, followed by `comparison` rows when given.
std::string emit_report(const EvalReport& report, ReportFormat format,
                        std::span<const PublishedRow> comparison = {});

// Standalone SVG sized to the image, referencing (not embedding) the image.
// Ground truth is stroked white; the prediction, when present, gray.
std::string render_overlay(const GroundingSample& sample,
                           const std::optional<PixelBox>& predicted);

struct Prediction {
  std::string sample_id;
  std::string raw_text;
};

// JSON-lines {"sample_id", "raw_text"}. Throws SchemaError with line numbers.
std::vector<Prediction> read_predictions(std::istream& in);
void write_prediction(std::ostream& out, const Prediction& p);

}  // namespace mvg

#endif  // MVG_EVAL_HPP_
