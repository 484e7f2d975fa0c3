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

#include "mvg/eval.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "mvg/errors.hpp"
#include "mvg/text.hpp"

namespace mvg {
namespace {

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string svg_rect(std::string_view cls, const PixelBox& b, std::string_view stroke) {
  std::string out = "  <rect class=\"";
  out += cls;
  out += "\" x=\"" + format_exact(b.x_left) + "\" y=\"" + format_exact(b.y_top) +
         "\" width=\"" + format_exact(width(b)) + "\" height=\"" + format_exact(height(b)) +
         "\" fill=\"none\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"3\"/>\n";
  return out;
}

struct Row {
  std::string label;
  std::array<std::string, kNumCategories> cells;
  std::string mean;
  std::string weighted;
};

std::string render_rows(const std::vector<Row>& rows, ReportFormat format) {
  std::vector<std::string> header = {"metric"};
  for (Category c : kCategories) header.emplace_back(to_string(c));
  header.emplace_back("mean");
  header.emplace_back("weighted");

  auto fields = [](const Row& r) {
    std::vector<std::string> f = {r.label};
    f.insert(f.end(), r.cells.begin(), r.cells.end());
    f.push_back(r.mean);
    f.push_back(r.weighted);
    return f;
  };
  auto join = [&](const std::vector<std::string>& f) {
    std::string line;
    if (format == ReportFormat::Markdown) {
      line = "|";
      for (const auto& s : f) line += " " + s + " |";
    } else {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) line += ',';
        line += f[i];
      }
    }
    return line + "\n";
  };

  std::string out = join(header);
  if (format == ReportFormat::Markdown) {
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += "\n";
  }
  for (const Row& r : rows) out += join(fields(r));
  return out;
}

constexpr std::optional<double> kNull = std::nullopt;

// Published MS-CXR comparison and stage-ablation numbers. The GPT-4v row
// carries only its reported mean.
const std::array<PublishedRow, 19> kPublished = {{
    {"comparison", "MSLL", "IoU", {0.425, 0.106, 0.386, 0.388, 0.294, 0.33, 0.325, 0.368}, 0.328, 0.308},
    {"comparison", "MedKLIP", "IoU", {0.297, 0.091, 0.265, 0.323, 0.327, 0.395, 0.197, 0.216}, 0.264, 0.267},
    {"comparison", "Biovil", "IoU", {0.328, 0.137, 0.297, 0.275, 0.213, 0.406, 0.188, 0.224}, 0.259, 0.281},
    {"comparison", "Gloria", "IoU", {0.29, 0.116, 0.304, 0.303, 0.201, 0.408, 0.197, 0.33}, 0.269, 0.282},
    {"comparison", "GPT-4v", "IoU", {kNull, kNull, kNull, kNull, kNull, kNull, kNull, kNull}, 0.0833, kNull},
    {"comparison", "two-stage MLLM", "IoU", {0.446, 0.303, 0.343, 0.395, 0.286, 0.592, 0.28, 0.374}, 0.377, 0.407},
    {"comparison", "MSLL", "Dice", {0.576, 0.163, 0.538, 0.538, 0.433, 0.485, 0.468, 0.525}, 0.466, 0.44},
    {"comparison", "MedKLIP", "Dice", {0.443, 0.151, 0.401, 0.476, 0.476, 0.559, 0.307, 0.344}, 0.395, 0.396},
    {"comparison", "Biovil", "Dice", {0.472, 0.217, 0.433, 0.405, 0.326, 0.56, 0.294, 0.352}, 0.382, 0.408},
    {"comparison", "Gloria", "Dice", {0.417, 0.181, 0.443, 0.442, 0.315, 0.567, 0.298, 0.476}, 0.392, 0.407},
    {"comparison", "two-stage MLLM", "Dice", {0.584, 0.43, 0.489, 0.543, 0.401, 0.736, 0.405, 0.519}, 0.513, 0.544},
    {"ablation", "no fine-tuning", "IoU", {0.118, 0.041, 0.104, 0.098, 0.108, 0.136, 0.137, 0.069}, 0.101, 0.101},
    {"ablation", "stage 2 only", "IoU", {0.418, 0.159, 0.345, 0.419, 0.409, 0.607, 0.24, 0.256}, 0.357, 0.374},
    {"ablation", "stage 1 only", "IoU", {0.049, kNull, kNull, kNull, kNull, 0.0, kNull, 0.0}, 0.006, 0.016},
    {"ablation", "two-stage", "IoU", {0.446, 0.303, 0.343, 0.395, 0.286, 0.592, 0.28, 0.374}, 0.377, 0.407},
    {"ablation", "no fine-tuning", "Dice", {0.184, 0.071, 0.167, 0.157, 0.181, 0.221, 0.212, 0.116}, 0.164, 0.163},
    {"ablation", "stage 2 only", "Dice", {0.55, 0.231, 0.464, 0.546, 0.524, 0.746, 0.336, 0.354}, 0.469, 0.488},
    {"ablation", "stage 1 only", "Dice", {0.094, kNull, kNull, kNull, kNull, 0.0, kNull, 0.0}, 0.012, 0.031},
    {"ablation", "two-stage", "Dice", {0.584, 0.43, 0.489, 0.543, 0.401, 0.736, 0.405, 0.519}, 0.513, 0.544},
}};

}  // namespace

SampleScore score_sample(const GroundingSample& sample, std::string_view raw_output) {
  SampleScore score;
  score.sample_id = sample.sample_id;
  const ParseOutcome outcome = parse(raw_output);
  if (!outcome) {
    score.failure_kind = outcome.failure_kind();
    return score;
  }
  const PixelBox predicted = dequantize(outcome.box(), sample.image_width, sample.image_height);
  score.valid = true;
  score.iou = iou(predicted, sample.gt_box);
  score.dice = dice(predicted, sample.gt_box);
  score.predicted = predicted;
  return score;
}

void Aggregator::add(Category category, const SampleScore& score) {
  Bucket& b = buckets_[index_of(category)];
  b.iou.push_back(score.valid ? score.iou : 0.0);
  b.dice.push_back(score.valid ? score.dice : 0.0);
  if (score.valid) ++b.n_valid;
}

EvalReport Aggregator::finish() const {
  EvalReport r;
  double iou_total = 0.0;
  double dice_total = 0.0;
  std::array<std::optional<double>, kNumCategories> iou_means{};
  std::array<std::optional<double>, kNumCategories> dice_means{};
  for (Category c : kCategories) {
    const std::size_t k = index_of(c);
    const Bucket& b = buckets_[k];
    CategoryMetrics& m = r.per_category[k];
    m.category = c;
    m.n_samples = b.iou.size();
    m.n_valid = b.n_valid;
    const double iou_sum = sorted_sum(b.iou);
    const double dice_sum = sorted_sum(b.dice);
    if (m.n_valid > 0) {
      m.mean_iou = iou_sum / static_cast<double>(m.n_samples);
      m.mean_dice = dice_sum / static_cast<double>(m.n_samples);
    }
    iou_means[k] = m.mean_iou;
    dice_means[k] = m.mean_dice;
    iou_total += iou_sum;
    dice_total += dice_sum;
    r.total_samples += m.n_samples;
  }
  r.macro_iou = macro_mean(iou_means);
  r.macro_dice = macro_mean(dice_means);
  if (r.total_samples > 0) {
    r.w_iou = iou_total / static_cast<double>(r.total_samples);
    r.w_dice = dice_total / static_cast<double>(r.total_samples);
  }
  return r;
}

EvalReport aggregate(std::span<const SampleScore> scores,
                     std::span<const GroundingSample> samples) {
  if (scores.size() != samples.size()) {
    throw AlignmentError(std::to_string(scores.size()) + " scores for " +
                         std::to_string(samples.size()) + " samples");
  }
  std::unordered_map<std::string_view, const SampleScore*> by_id;
  by_id.reserve(scores.size());
  for (const SampleScore& s : scores) {
    if (!by_id.emplace(s.sample_id, &s).second) {
      throw AlignmentError("duplicate score for sample \"" + s.sample_id + "\"");
    }
  }
  Aggregator agg;
  for (const GroundingSample& sample : samples) {
    const auto it = by_id.find(sample.sample_id);
    if (it == by_id.end()) {
      throw AlignmentError("no score for sample \"" + sample.sample_id + "\"");
    }
    agg.add(sample.category, *it->second);
    by_id.erase(it);
  }
  return agg.finish();
}

double macro_mean(std::span<const std::optional<double>, kNumCategories> values) {
  double sum = 0.0;
  for (const auto& v : values) sum += v.value_or(0.0);
  return sum / static_cast<double>(kNumCategories);
}

std::string format_metric(std::optional<double> value) {
  if (!value) return "-";
  return format_fixed_half_up(*value, 3);
}

std::span<const PublishedRow> published_rows() { return kPublished; }

std::string emit_report(const EvalReport& report, ReportFormat format,
                        std::span<const PublishedRow> comparison) {
  std::vector<Row> rows(2);
  rows[0].label = "IoU";
  rows[1].label = "Dice";
  for (std::size_t k = 0; k < kNumCategories; ++k) {
    rows[0].cells[k] = format_metric(report.per_category[k].mean_iou);
    rows[1].cells[k] = format_metric(report.per_category[k].mean_dice);
  }
  rows[0].mean = format_metric(report.macro_iou);
  rows[0].weighted = format_metric(report.w_iou);
  rows[1].mean = format_metric(report.macro_dice);
  rows[1].weighted = format_metric(report.w_dice);

  for (const PublishedRow& p : comparison) {
    Row r;
    r.label = std::string(p.metric) + " (" + std::string(p.method) + ", " +
              std::string(p.group) + ")";
    for (std::size_t k = 0; k < kNumCategories; ++k) r.cells[k] = format_metric(p.per_category[k]);
    // Published values are printed as written, not re-rounded.
    r.mean = p.mean ? format_exact(*p.mean) : "-";
    r.weighted = p.weighted ? format_exact(*p.weighted) : "-";
    rows.push_back(std::move(r));
  }
  return render_rows(rows, format);
}

std::string render_overlay(const GroundingSample& sample,
                           const std::optional<PixelBox>& predicted) {
  const std::string w = std::to_string(sample.image_width);
  const std::string h = std::to_string(sample.image_height);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
         "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  out += "  <title>" + xml_escape(sample.sample_id) + ": " + xml_escape(sample.phrase) +
         "</title>\n";
  out += "  <image href=\"" + xml_escape(sample.image_ref) + "\" x=\"0\" y=\"0\" width=\"" + w +
         "\" height=\"" + h + "\"/>\n";
  out += svg_rect("ground-truth", sample.gt_box, "#ffffff");
  if (predicted) out += svg_rect("prediction", *predicted, "#808080");
  out += "</svg>\n";
  return out;
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw SchemaError(line, "prediction must be a JSON object");
    const auto id = obj.find("sample_id");
    const auto raw = obj.find("raw_text");
    if (id == obj.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw SchemaError(line, "\"sample_id\" must be a non-empty string");
    }
    if (raw == obj.end() || !raw->is_string()) {
      throw SchemaError(line, "\"raw_text\" must be a string");
    }
    out.push_back({id->get<std::string>(), raw->get<std::string>()});
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line));
  return out;
}

void write_prediction(std::ostream& out, const Prediction& p) {
  nlohmann::ordered_json obj;
  obj["sample_id"] = p.sample_id;
  obj["raw_text"] = p.raw_text;
  out << obj.dump() << '\n';
}

}  // namespace mvg
