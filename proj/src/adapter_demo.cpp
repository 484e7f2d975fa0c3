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

#include "mvg/adapter_demo.hpp"

#include <ostream>
#include <string>

#include "mvg/adapter.hpp"

namespace mvg {

using adapter::CosineSchedule;
using adapter::LoraLinear;
using adapter::Matrix;
using adapter::TokenMatrix;
using adapter::Vector;

bool run_adapter_demo(std::ostream& out, std::uint64_t seed) {
  bool all = true;
  auto report = [&](bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    all = all && ok;
  };

  const AdapterDemoShapes shapes;
  Rng rng(derive_seed(seed, fnv1a("adapter-demo")));

  const TokenMatrix<double> tokens =
      adapter::random_matrix<double>(shapes.tokens, shapes.vision_dim, 1.0, rng);
  const TokenMatrix<double> merged = adapter::merge_tokens(tokens, shapes.merge_group);
  report(merged.rows() * shapes.merge_group == tokens.rows() &&
             merged.cols() == tokens.cols() * shapes.merge_group,
         "merge_tokens", std::to_string(tokens.rows()) + "x" + std::to_string(tokens.cols()) +
                             " -> " + std::to_string(merged.rows()) + "x" +
                             std::to_string(merged.cols()));

  const long merged_dim = shapes.vision_dim * shapes.merge_group;
  const Matrix<double> proj_w =
      adapter::random_matrix<double>(shapes.llm_dim, merged_dim, 0.05, rng);
  const Vector<double> proj_b = adapter::random_matrix<double>(shapes.llm_dim, 1, 0.1, rng);
  const TokenMatrix<double> visual = adapter::project(merged, proj_w, proj_b);
  report(visual.rows() == merged.rows() && visual.cols() == shapes.llm_dim, "project",
         "tokens now " + std::to_string(visual.rows()) + "x" + std::to_string(visual.cols()));

  // LoRA on an llm_dim x llm_dim sublayer with non-zero factors.
  const Matrix<double> w0 = adapter::random_matrix<double>(shapes.llm_dim, shapes.llm_dim, 0.1, rng);
  LoraLinear<double> layer =
      LoraLinear<double>::init(w0, shapes.lora_rank, shapes.lora_alpha, seed);
  layer.mutable_b() = adapter::random_matrix<double>(shapes.llm_dim, shapes.lora_rank, 0.1, rng);
  const TokenMatrix<double> unmerged = adapter::lora_forward(visual, layer);
  const Vector<double> zero = Vector<double>::Zero(shapes.llm_dim);
  const TokenMatrix<double> via_merge = adapter::project(visual, adapter::lora_merge(layer), zero);
  const double rel = (unmerged - via_merge).norm() / unmerged.norm();
  report(rel <= 1e-12, "lora_merge", "relative error " + std::to_string(rel));

  const long full = layer.d_in() * layer.d_out();
  report(layer.trainable_parameters() < full, "trainable_parameters",
         std::to_string(layer.trainable_parameters()) + " of " + std::to_string(full));

  Rng grad_rng(derive_seed(seed, fnv1a("adapter-demo-grad")));
  const Matrix<double> small_w0 = adapter::random_matrix<double>(4, 6, 0.5, grad_rng);
  LoraLinear<double> small(small_w0, adapter::random_matrix<double>(2, 6, 0.5, grad_rng),
                           adapter::random_matrix<double>(4, 2, 0.5, grad_rng), 2.0);
  adapter::RegressionBatch<double> batch;
  batch.x = adapter::random_matrix<double>(8, 6, 1.0, grad_rng);
  batch.y = adapter::random_matrix<double>(8, 4, 1.0, grad_rng);
  const double grad_err = adapter::grad_check(small, batch);
  report(grad_err <= 1e-4, "grad_check", "max relative error " + std::to_string(grad_err));

  const Matrix<double> base = adapter::random_matrix<double>(12, 16, 0.25, grad_rng);
  const auto teacher = adapter::planted_teacher_batch<double>(base, 2, 64, 1.0, seed);
  LoraLinear<double> student = LoraLinear<double>::init(base, 2, 4.0, seed);
  const CosineSchedule<double> schedule(0.1, 0.08, 200);
  const auto trace = adapter::toy_train(student, teacher, schedule, 200);
  const double ratio = trace.back() / trace.front();
  report(ratio < 0.01, "toy_train", "loss " + std::to_string(trace.front()) + " -> " +
                                        std::to_string(trace.back()));
  report(student.w0() == base, "frozen_base", "w0 unchanged after training");

  const CosineSchedule<double> reference_schedule(1e-4, 8e-5, 1000);
  const bool endpoints = adapter::cosine_lr(reference_schedule, 0) == 1e-4 &&
                         adapter::cosine_lr(reference_schedule, 500) == 9e-5 &&
                         adapter::cosine_lr(reference_schedule, 1000) == 8e-5;
  report(endpoints, "cosine_lr", "1e-4 -> 9e-5 -> 8e-5");
  return all;
}

}  // namespace mvg
