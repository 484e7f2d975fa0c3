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

#ifndef MVG_PROMPT_TEMPLATES_HPP_
#define MVG_PROMPT_TEMPLATES_HPP_

// Instruction strings for the two fine-tuning stages:
//   [INST]<Img><ImageFeature></Img>[caption]<instruction>[/INST]
//   [INST]<Img><ImageFeature></Img>[refer]<instruction> <label>[/INST]
// The supervised target for the refer stage is rendered separately.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "mvg/coord_codec.hpp"

namespace mvg {

enum class Task { Caption, Refer };

std::string_view task_identifier(Task task) noexcept;

inline constexpr std::string_view kImageSentinel = "<ImageFeature>";

class InstructionPool {
 public:
  // Throws EmptyPoolError when `instructions` is empty and ValidationError for
  // empty entries, duplicates, or entries containing a reserved marker.
  InstructionPool(Task task, std::vector<std::string> instructions);

  Task task() const noexcept { return task_; }
  std::size_t size() const noexcept { return instructions_.size(); }
  const std::string& operator[](std::size_t i) const { return instructions_[i]; }
  const std::vector<std::string>& instructions() const noexcept { return instructions_; }

 private:
  Task task_;
  std::vector<std::string> instructions_;
};

// One instruction per line; blank lines and lines starting with '#' are skipped
// and surrounding whitespace is trimmed.
InstructionPool read_pool(std::istream& in, Task task);
InstructionPool load_pool(const std::filesystem::path& path, Task task);

struct RenderedPrompt {
  std::string text;
  std::string task_identifier;
  std::string instruction_used;
  std::string image_sentinel;
};

// Index drawn from a seed-keyed generator, uniform over [0, pool_size).
std::size_t select_instruction(std::size_t pool_size, std::uint64_t seed);

RenderedPrompt render_stage1(const InstructionPool& pool, std::uint64_t seed);

// Throws EmptyLabelError for an empty (or all-whitespace) label.
RenderedPrompt render_stage2(const InstructionPool& pool, std::string_view label_text,
                             std::uint64_t seed);

std::string render_stage2_target(const NormBox& nb);

}  // namespace mvg

#endif  // MVG_PROMPT_TEMPLATES_HPP_
