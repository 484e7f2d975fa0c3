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

#ifndef MVG_ADAPTER_DEMO_HPP_
#define MVG_ADAPTER_DEMO_HPP_

#include <cstdint>
#include <iosfwd>

namespace mvg {

// Default shapes for the adapter showcase.
struct AdapterDemoShapes {
  long tokens = 16;
  long vision_dim = 32;
  long merge_group = 4;
  long llm_dim = 48;
  long lora_rank = 4;
  double lora_alpha = 8.0;
};

// Runs token merging, projection, LoRA merge equivalence, a gradient check
// and a short planted-teacher training run. Prints one PASS/FAIL line per
// check and returns true when all pass.
bool run_adapter_demo(std::ostream& out, std::uint64_t seed);

}  // namespace mvg

#endif  // MVG_ADAPTER_DEMO_HPP_
