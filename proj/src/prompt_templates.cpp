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

#include "mvg/prompt_templates.hpp"

#include <array>
#include <fstream>
#include <unordered_set>

#include "mvg/errors.hpp"
#include "mvg/rng.hpp"
#include "mvg/text.hpp"

namespace mvg {
namespace {

constexpr std::array<std::string_view, 4> kReservedMarkers = {"[INST]", "[/INST]", "<Img>",
                                                              "</Img>"};

std::string_view task_name(Task task) {
  return task == Task::Caption ? "caption" : "refer";
}

void require_task(const InstructionPool& pool, Task expected) {
  if (pool.task() != expected) {
    throw ValidationError("expected a " + std::string(task_name(expected)) +
                          " pool, got a " + std::string(task_name(pool.task())) + " pool");
  }
}

RenderedPrompt render(const InstructionPool& pool, std::uint64_t seed, std::string_view tail) {
  const std::string& instruction = pool[select_instruction(pool.size(), seed)];
  const std::string_view identifier = task_identifier(pool.task());
  std::string text;
  text.reserve(64 + instruction.size() + tail.size());
  text += "[INST]<Img>";
  text += kImageSentinel;
  text += "</Img>";
  text += identifier;
  text += instruction;
  text += tail;
  text += "[/INST]";
  return {std::move(text), std::string(identifier), instruction, std::string(kImageSentinel)};
}

}  // namespace

std::string_view task_identifier(Task task) noexcept {
  return task == Task::Caption ? "[caption]" : "[refer]";
}

InstructionPool::InstructionPool(Task task, std::vector<std::string> instructions)
    : task_(task), instructions_(std::move(instructions)) {
  if (instructions_.empty()) throw EmptyPoolError("instruction pool is empty");
  std::unordered_set<std::string_view> seen;
  for (const std::string& s : instructions_) {
    if (s.empty()) throw ValidationError("instruction pool contains an empty instruction");
    for (std::string_view marker : kReservedMarkers) {
      if (s.find(marker) != std::string::npos) {
        throw ValidationError("instruction contains reserved marker " + std::string(marker) +
                              ": " + s);
      }
    }
    if (!seen.insert(s).second) throw ValidationError("duplicate instruction: " + s);
  }
}

InstructionPool read_pool(std::istream& in, Task task) {
  std::vector<std::string> instructions;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    instructions.emplace_back(trimmed);
  }
  return InstructionPool(task, std::move(instructions));
}

InstructionPool load_pool(const std::filesystem::path& path, Task task) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instruction pool " + path.string());
  return read_pool(in, task);
}

std::size_t select_instruction(std::size_t pool_size, std::uint64_t seed) {
  Rng rng(derive_seed(seed, fnv1a("instruction")));
  return static_cast<std::size_t>(rng.uniform_index(pool_size));
}

RenderedPrompt render_stage1(const InstructionPool& pool, std::uint64_t seed) {
  require_task(pool, Task::Caption);
  return render(pool, seed, {});
}

RenderedPrompt render_stage2(const InstructionPool& pool, std::string_view label_text,
                             std::uint64_t seed) {
  require_task(pool, Task::Refer);
  if (trim(label_text).empty()) throw EmptyLabelError("label text is empty");
  std::string tail;
  tail.reserve(label_text.size() + 1);
  tail += ' ';
  tail += label_text;
  return render(pool, seed, tail);
}

std::string render_stage2_target(const NormBox& nb) { return encode(nb); }

}  // namespace mvg
