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

#ifndef MVG_DEFAULT_POOLS_HPP_
#define MVG_DEFAULT_POOLS_HPP_

#include "mvg/prompt_templates.hpp"

namespace mvg {

// Built-in English instruction pools (8 per task). These are fixture content
// written for this project; the same text ships under data/pools/.
const InstructionPool& default_pool(Task task);

}  // namespace mvg

#endif  // MVG_DEFAULT_POOLS_HPP_
