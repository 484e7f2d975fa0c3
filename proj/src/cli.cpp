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

#include "mvg/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvg/adapter_demo.hpp"
#include "mvg/coord_codec.hpp"
#include "mvg/dataset.hpp"
#include "mvg/default_pools.hpp"
#include "mvg/errors.hpp"
#include "mvg/eval.hpp"
#include "mvg/mock_grounder.hpp"
#include "mvg/prompt_templates.hpp"
#include "mvg/rng.hpp"

namespace mvg::cli {
namespace {

namespace fs = std::filesystem;

// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot open output " + path);
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("write failure on output");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::ifstream open_input(const std::string& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + std::string(what) + " " + path);
  return in;
}

bool quiet() {
  const char* level = std::getenv("MVG_LOG_LEVEL");
  return level != nullptr && (std::string_view(level) == "error" || std::string_view(level) == "quiet");
}

std::unordered_map<std::string, std::string> load_prediction_map(const std::string& path) {
  std::ifstream in = open_input(path, "predictions");
  std::unordered_map<std::string, std::string> by_id;
  for (Prediction& p : read_predictions(in)) {
    const std::string id = p.sample_id;
    if (!by_id.emplace(id, std::move(p.raw_text)).second) {
      throw AlignmentError("duplicate prediction for sample \"" + id + "\"");
    }
  }
  return by_id;
}

void check_file_stem(const std::string& sample_id) {
  if (sample_id == "." || sample_id == ".." ||
      sample_id.find_first_of("/\\") != std::string::npos) {
    throw ValidationError("sample_id \"" + sample_id + "\" cannot be used as a file name");
  }
}

struct Options {
  std::uint64_t seed = 42;
  std::string manifest;
  std::string predictions;
  std::string output;
  std::string format = "csv";
  std::string caption_pool;
  std::string refer_pool;
  std::string profile = "perfect";
  std::vector<std::string> category_profiles;
  std::vector<int> ratios = {7, 1, 2};
  std::vector<std::string> texts;
  bool compare = false;
  std::size_t per_category = 8;
  std::size_t patients = 16;
  int width = 448;
  int height = 448;
  bool off_grid = false;
};

int cmd_split(const Options& o, std::ostream& out, std::ostream& err) {
  const auto samples = load_manifest(o.manifest);
  const SplitAssignment split =
      split_by_patient(samples, {o.ratios.at(0), o.ratios.at(1), o.ratios.at(2)}, o.seed);
  if (!quiet()) {
    for (const std::string& w : split.warnings) err << "warning: " << w << '\n';
  }
  Sink sink(o.output, out);
  write_split(sink.stream(), samples, split);
  sink.close();
  return kExitOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  const InstructionPool caption =
      o.caption_pool.empty() ? default_pool(Task::Caption) : load_pool(o.caption_pool, Task::Caption);
  const InstructionPool refer =
      o.refer_pool.empty() ? default_pool(Task::Refer) : load_pool(o.refer_pool, Task::Refer);
  std::ifstream in = open_input(o.manifest, "manifest");
  ManifestReader reader(in);
  Sink sink(o.output, out);
  while (auto s = reader.next()) {
    const std::uint64_t key = fnv1a(s->sample_id);
    nlohmann::ordered_json line;
    line["sample_id"] = s->sample_id;
    line["stage1"] = render_stage1(caption, derive_seed(o.seed, key)).text;
    line["stage2"] = render_stage2(refer, s->phrase, derive_seed(o.seed, key ^ 0x5EEDULL)).text;
    line["target"] =
        render_stage2_target(quantize(s->gt_box, s->image_width, s->image_height));
    sink.stream() << line.dump() << '\n';
  }
  sink.close();
  return kExitOk;
}

int cmd_mock_predict(const Options& o, std::ostream& out) {
  const GrounderProfile base = parse_profile(o.profile, o.seed);
  std::map<Category, GrounderProfile> overrides;
  for (const std::string& entry : o.category_profiles) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("--category-profile expects CATEGORY=PROFILE, got " + entry);
    }
    const auto category = parse_category(entry.substr(0, eq));
    if (!category) throw ValidationError("unknown category in " + entry);
    overrides.insert_or_assign(*category, parse_profile(entry.substr(eq + 1), o.seed));
  }
  std::ifstream in = open_input(o.manifest, "manifest");
  ManifestReader reader(in);
  Sink sink(o.output, out);
  while (auto s = reader.next()) {
    const auto it = overrides.find(s->category);
    const GrounderProfile& profile = it == overrides.end() ? base : it->second;
    write_prediction(sink.stream(), {s->sample_id, respond(*s, profile)});
  }
  sink.close();
  return kExitOk;
}

int cmd_parse(const Options& o, std::ostream& out) {
  auto emit = [&](const std::string& text) {
    const ParseOutcome r = parse(text);
    nlohmann::ordered_json line;
    line["ok"] = r.ok();
    if (r.ok()) {
      const NormBox& b = r.box();
      line["box"] = {b.qx_left, b.qy_top, b.qx_right, b.qy_bottom};
    } else {
      line["failure"] = to_string(r.failure_kind());
    }
    if (r.matched_span()) line["span"] = {r.matched_span()->begin, r.matched_span()->end};
    out << line.dump() << '\n';
  };
  if (!o.texts.empty()) {
    for (const std::string& t : o.texts) emit(t);
    return kExitOk;
  }
  std::string text;
  while (std::getline(std::cin, text)) emit(text);
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const ReportFormat format = o.format == "md" ? ReportFormat::Markdown : ReportFormat::Csv;
  auto predictions = load_prediction_map(o.predictions);
  std::ifstream in = open_input(o.manifest, "manifest");
  ManifestReader reader(in);
  Aggregator agg;
  while (auto s = reader.next()) {
    const auto it = predictions.find(s->sample_id);
    if (it == predictions.end()) {
      throw AlignmentError("no prediction for sample \"" + s->sample_id + "\"");
    }
    agg.add(s->category, score_sample(*s, it->second));
    predictions.erase(it);
  }
  if (!predictions.empty()) {
    throw AlignmentError("prediction for unknown sample \"" + predictions.begin()->first + "\"");
  }
  const EvalReport report = agg.finish();
  Sink sink(o.output, out);
  sink.stream() << emit_report(report, format,
                               o.compare ? published_rows() : std::span<const PublishedRow>{});
  sink.close();
  return kExitOk;
}

int cmd_overlay(const Options& o) {
  const auto predictions = load_prediction_map(o.predictions);
  std::ifstream in = open_input(o.manifest, "manifest");
  ManifestReader reader(in);
  std::error_code ec;
  fs::create_directories(o.output, ec);
  if (ec) throw IoError("cannot create output directory " + o.output + ": " + ec.message());
  while (auto s = reader.next()) {
    check_file_stem(s->sample_id);
    std::optional<PixelBox> predicted;
    if (const auto it = predictions.find(s->sample_id); it != predictions.end()) {
      predicted = score_sample(*s, it->second).predicted;
    }
    const fs::path path = fs::path(o.output) / (s->sample_id + ".svg");
    std::ofstream file(path);
    if (!file) throw IoError("cannot write " + path.string());
    file << render_overlay(*s, predicted);
    if (!file) throw IoError("write failure on " + path.string());
  }
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  SyntheticManifestOptions opts;
  opts.samples_per_category = o.per_category;
  opts.patients = o.patients;
  opts.image_width = o.width;
  opts.image_height = o.height;
  opts.grid_aligned = !o.off_grid;
  opts.seed = o.seed;
  Sink sink(o.output, out);
  write_manifest(sink.stream(), synthetic_manifest(opts));
  sink.close();
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grounding toolkit: box codec, prompts, splits, evaluation and adapter numerics",
               "mvg"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for every randomized step")->capture_default_str();

  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest, "JSON-lines manifest")->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output path (default: standard output)");
  };

  CLI::App* split = app.add_subcommand("split", "Patient-disjoint train/val/test split");
  add_manifest(split);
  add_output(split);
  split->add_option("--ratios", o.ratios, "Train, val and test weights")
      ->expected(3)
      ->capture_default_str();

  CLI::App* render = app.add_subcommand("render", "Render stage-1 and stage-2 prompts");
  add_manifest(render);
  add_output(render);
  render->add_option("--caption-pool", o.caption_pool, "Caption instruction pool file");
  render->add_option("--refer-pool", o.refer_pool, "Refer instruction pool file");

  CLI::App* mock = app.add_subcommand("mock-predict", "Emit predictions from a mock grounder");
  add_manifest(mock);
  add_output(mock);
  mock->add_option("--profile", o.profile,
                   "perfect | jitter:<units> | malformed:<no-box|out-of-range|"
                   "swapped-corners|truncated-braces|prose-wrapped>")
      ->capture_default_str();
  mock->add_option("--category-profile", o.category_profiles,
                   "Per-category override CATEGORY=PROFILE (repeatable)");

  CLI::App* parse_cmd = app.add_subcommand("parse", "Parse box strings (arguments or stdin lines)");
  parse_cmd->add_option("text", o.texts, "Text to parse");

  CLI::App* eval = app.add_subcommand("eval", "Score predictions and print the report");
  add_manifest(eval);
  add_output(eval);
  eval->add_option("--predictions", o.predictions, "JSON-lines predictions")->required();
  eval->add_option("--format", o.format, "csv or md")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  eval->add_flag("--compare", o.compare, "Append published comparison rows");

  CLI::App* overlay = app.add_subcommand("overlay", "Write one SVG overlay per sample");
  add_manifest(overlay);
  overlay->add_option("--predictions", o.predictions, "JSON-lines predictions")->required();
  overlay->add_option("-o,--output", o.output, "Output directory")->required();

  CLI::App* synth = app.add_subcommand("synth-manifest", "Write a synthetic manifest");
  add_output(synth);
  synth->add_option("--per-category", o.per_category)->capture_default_str();
  synth->add_option("--patients", o.patients)->capture_default_str();
  synth->add_option("--width", o.width)->capture_default_str();
  synth->add_option("--height", o.height)->capture_default_str();
  synth->add_flag("--off-grid", o.off_grid, "Boxes not aligned to the 0..100 grid");

  CLI::App* demo = app.add_subcommand("demo-adapter", "Run the adapter numerics self-checks");

  std::vector<std::string> argv_storage{"mvg"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (split->parsed()) return cmd_split(o, out, err);
    if (render->parsed()) return cmd_render(o, out);
    if (mock->parsed()) return cmd_mock_predict(o, out);
    if (parse_cmd->parsed()) return cmd_parse(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (overlay->parsed()) return cmd_overlay(o);
    if (synth->parsed()) return cmd_synth(o, out);
    if (demo->parsed()) return run_adapter_demo(out, o.seed) ? kExitOk : kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace mvg::cli
