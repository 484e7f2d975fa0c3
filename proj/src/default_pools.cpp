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

#include "mvg/default_pools.hpp"

namespace mvg {

const InstructionPool& default_pool(Task task) {
  static const InstructionPool caption(Task::Caption,
                                       {
                                           "Describe this medical image.",
                                           "Briefly describe the findings in this image.",
                                           "Write a short radiology caption for this image.",
                                           "What does this image show?",
                                           "Summarize the key observations in this scan.",
                                           "Give a concise description of this radiograph.",
                                           "Provide a caption for this medical image.",
                                           "Report the main findings visible in this image.",
                                       });
  static const InstructionPool refer(Task::Refer, {
                                                      "Locate:",
                                                      "Where is the",
                                                      "Give the bounding box of the",
                                                      "Find the region showing the",
                                                      "Mark the location of the",
                                                      "Identify the area corresponding to the",
                                                      "Point out the",
                                                      "Output the coordinates of the",
                                                  });
  return task == Task::Caption ? caption : refer;
}

}  // namespace mvg
