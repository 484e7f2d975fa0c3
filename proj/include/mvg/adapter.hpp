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

#ifndef MVG_ADAPTER_HPP_
#define MVG_ADAPTER_HPP_

// Small-scale numerics for the trainable pieces of a LoRA-adapted multimodal
// model: 4:1 visual token merging, the linear projection into the language
// model, LoRA layers with freeze/merge semantics, a cosine learning-rate
// schedule, and a full-batch trainer whose gradients can be checked against
// finite differences.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mvg/errors.hpp"
#include "mvg/rng.hpp"

namespace mvg::adapter {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Tokens are rows; storage is row-major so consecutive tokens are contiguous.
template <typename Scalar>
using TokenMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {

inline std::string shape(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace detail

// Concatenates every `group` consecutive tokens into one: (n, d) -> (n/group,
// d*group). With row-major storage this is a pure reshape.
template <typename Scalar>
TokenMatrix<Scalar> merge_tokens(const TokenMatrix<Scalar>& x, Eigen::Index group = 4) {
  if (group < 1) throw ShapeError("merge group must be at least 1");
  if (x.rows() % group != 0) throw IndivisibleError(x.rows(), group);
  return Eigen::Map<const TokenMatrix<Scalar>>(x.data(), x.rows() / group, x.cols() * group);
}

// y = x * w^T + bias, row by row. `w` is (d_out, d_in).
template <typename Scalar>
TokenMatrix<Scalar> project(const TokenMatrix<Scalar>& x, const Matrix<Scalar>& w,
                            const Vector<Scalar>& bias) {
  if (x.cols() != w.cols() || bias.size() != w.rows()) {
    throw ShapeError("project: input " + detail::shape(x.rows(), x.cols()) + ", weight " +
                     detail::shape(w.rows(), w.cols()) + ", bias " + std::to_string(bias.size()));
  }
  TokenMatrix<Scalar> y = x * w.transpose();
  y.rowwise() += bias.transpose();
  return y;
}

// Frozen base weight w0 (d_out, d_in) plus a trainable delta
// (alpha / r) * b * a with a (r, d_in) and b (d_out, r).
template <typename Scalar>
class LoraLinear {
 public:
  LoraLinear(Matrix<Scalar> w0, Matrix<Scalar> a, Matrix<Scalar> b, Scalar alpha)
      : w0_(std::move(w0)), a_(std::move(a)), b_(std::move(b)), alpha_(alpha) {
    const Eigen::Index r = a_.rows();
    if (r < 1 || r > std::min(w0_.rows(), w0_.cols())) {
      throw ShapeError("lora rank " + std::to_string(r) + " outside [1, min(d_out, d_in)]");
    }
    if (a_.cols() != w0_.cols() || b_.rows() != w0_.rows() || b_.cols() != r) {
      throw ShapeError("lora factors a " + detail::shape(a_.rows(), a_.cols()) + " and b " +
                       detail::shape(b_.rows(), b_.cols()) + " do not fit base " +
                       detail::shape(w0_.rows(), w0_.cols()));
    }
    if (!(alpha_ > Scalar(0))) throw ValidationError("lora alpha must be positive");
  }

  // Standard initialization: a ~ N(0, 0.02^2), b = 0, so the layer starts out
  // equal to its base.
  static LoraLinear init(Matrix<Scalar> w0, Eigen::Index rank, Scalar alpha, std::uint64_t seed) {
    Rng rng(derive_seed(seed, fnv1a("lora-init")));
    Matrix<Scalar> a(rank, w0.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Scalar(rng.normal(0.0, 0.02));
    }
    Matrix<Scalar> b = Matrix<Scalar>::Zero(w0.rows(), rank);
    return LoraLinear(std::move(w0), std::move(a), std::move(b), alpha);
  }

  const Matrix<Scalar>& w0() const noexcept { return w0_; }
  const Matrix<Scalar>& a() const noexcept { return a_; }
  const Matrix<Scalar>& b() const noexcept { return b_; }
  Scalar alpha() const noexcept { return alpha_; }
  Eigen::Index rank() const noexcept { return a_.rows(); }
  Eigen::Index d_in() const noexcept { return w0_.cols(); }
  Eigen::Index d_out() const noexcept { return w0_.rows(); }
  Scalar scaling() const noexcept { return alpha_ / Scalar(rank()); }

  Eigen::Index trainable_parameters() const noexcept { return rank() * (d_in() + d_out()); }

  // The only mutators touch the low-rank factors; w0 has no setter.
  void update(const Matrix<Scalar>& grad_a, const Matrix<Scalar>& grad_b, Scalar lr) {
    a_ -= lr * grad_a;
    b_ -= lr * grad_b;
  }
  Matrix<Scalar>& mutable_a() noexcept { return a_; }
  Matrix<Scalar>& mutable_b() noexcept { return b_; }

 private:
  Matrix<Scalar> w0_;
  Matrix<Scalar> a_;
  Matrix<Scalar> b_;
  Scalar alpha_;
};

// y = x * w0^T + (alpha / r) * (x * a^T) * b^T, without materializing b * a.
template <typename Scalar>
TokenMatrix<Scalar> lora_forward(const TokenMatrix<Scalar>& x, const LoraLinear<Scalar>& layer) {
  if (x.cols() != layer.d_in()) {
    throw ShapeError("lora_forward: input " + detail::shape(x.rows(), x.cols()) +
                     " does not match d_in " + std::to_string(layer.d_in()));
  }
  TokenMatrix<Scalar> y = x * layer.w0().transpose();
  y.noalias() += layer.scaling() * ((x * layer.a().transpose()) * layer.b().transpose());
  return y;
}

// w0 + (alpha / r) * b * a.
template <typename Scalar>
Matrix<Scalar> lora_merge(const LoraLinear<Scalar>& layer) {
  return layer.w0() + layer.scaling() * (layer.b() * layer.a());
}

template <typename Scalar>
struct CosineSchedule {
  Scalar lr_start;
  Scalar lr_end;
  long total_steps;

  CosineSchedule(Scalar start, Scalar end, long steps)
      : lr_start(start), lr_end(end), total_steps(steps) {
    if (steps < 1) throw ValidationError("cosine schedule needs at least one step");
    if (!(end > Scalar(0)) || start < end) {
      throw ValidationError("cosine schedule needs lr_start >= lr_end > 0");
    }
  }
};

// lr_end + (lr_start - lr_end) * (1 + cos(pi * step / total)) / 2.
template <typename Scalar>
Scalar cosine_lr(const CosineSchedule<Scalar>& s, long step) {
  if (step < 0 || step > s.total_steps) {
    throw StepOutOfRangeError("step " + std::to_string(step) + " outside [0, " +
                              std::to_string(s.total_steps) + "]");
  }
  const Scalar progress = Scalar(step) / Scalar(s.total_steps);
  return s.lr_end + Scalar(0.5) * (s.lr_start - s.lr_end) *
                        (Scalar(1) + std::cos(std::numbers::pi_v<Scalar> * progress));
}

template <typename Scalar>
struct RegressionBatch {
  TokenMatrix<Scalar> x;
  TokenMatrix<Scalar> y;
};

namespace detail {

template <typename Scalar>
void check_batch(const LoraLinear<Scalar>& layer, const RegressionBatch<Scalar>& batch) {
  if (batch.x.cols() != layer.d_in() || batch.y.rows() != batch.x.rows() ||
      batch.y.cols() != layer.d_out()) {
    throw ShapeError("batch x " + shape(batch.x.rows(), batch.x.cols()) + ", y " +
                     shape(batch.y.rows(), batch.y.cols()) + " does not fit a " +
                     shape(layer.d_out(), layer.d_in()) + " layer");
  }
}

}  // namespace detail

// Mean over every entry of (lora_forward(x) - y)^2.
template <typename Scalar>
Scalar mse_loss(const LoraLinear<Scalar>& layer, const RegressionBatch<Scalar>& batch) {
  detail::check_batch(layer, batch);
  const TokenMatrix<Scalar> residual = lora_forward(batch.x, layer) - batch.y;
  return residual.squaredNorm() / Scalar(residual.size());
}

template <typename Scalar>
struct LoraGradients {
  Matrix<Scalar> a;
  Matrix<Scalar> b;
};

// Analytic gradients of mse_loss with respect to a and b only. With
// g = 2 (y_hat - y) / numel and s = alpha / r:
//   dL/db = s * g^T (x a^T)
//   dL/da = s * b^T g^T x
template <typename Scalar>
LoraGradients<Scalar> mse_gradients(const LoraLinear<Scalar>& layer,
                                    const RegressionBatch<Scalar>& batch) {
  detail::check_batch(layer, batch);
  const TokenMatrix<Scalar> residual = lora_forward(batch.x, layer) - batch.y;
  const Matrix<Scalar> g = (Scalar(2) / Scalar(residual.size())) * residual;
  const Matrix<Scalar> xa = batch.x * layer.a().transpose();
  const Scalar s = layer.scaling();
  return {s * (layer.b().transpose() * g.transpose() * batch.x),
          s * (g.transpose() * xa)};
}

// Largest relative disagreement between the analytic gradients and central
// finite differences of step h over every entry of a and b. Entries whose
// analytic and numeric values are both below `floor` in magnitude compare on
// the absolute scale of `floor`.
template <typename Scalar>
Scalar grad_check(const LoraLinear<Scalar>& layer, const RegressionBatch<Scalar>& batch,
                  Scalar h = Scalar(1e-6), Scalar floor = Scalar(1e-8)) {
  const LoraGradients<Scalar> analytic = mse_gradients(layer, batch);
  LoraLinear<Scalar> probe = layer;
  Scalar worst = 0;

  auto sweep = [&](Matrix<Scalar>& param, const Matrix<Scalar>& grad) {
    for (Eigen::Index j = 0; j < param.cols(); ++j) {
      for (Eigen::Index i = 0; i < param.rows(); ++i) {
        const Scalar saved = param(i, j);
        param(i, j) = saved + h;
        const Scalar up = mse_loss(probe, batch);
        param(i, j) = saved - h;
        const Scalar down = mse_loss(probe, batch);
        param(i, j) = saved;
        const Scalar numeric = (up - down) / (Scalar(2) * h);
        const Scalar scale =
            std::max({std::abs(numeric), std::abs(grad(i, j)), floor});
        worst = std::max(worst, std::abs(numeric - grad(i, j)) / scale);
      }
    }
  };
  sweep(probe.mutable_a(), analytic.a);
  sweep(probe.mutable_b(), analytic.b);
  return worst;
}

// Full-batch gradient descent on a and b with the step size taken from the
// schedule. Returns the loss before training followed by the loss after each
// step, so the trace has steps + 1 entries.
template <typename Scalar>
std::vector<Scalar> toy_train(LoraLinear<Scalar>& layer, const RegressionBatch<Scalar>& batch,
                              const CosineSchedule<Scalar>& schedule, long steps) {
  if (steps < 0 || steps > schedule.total_steps) {
    throw StepOutOfRangeError("training for " + std::to_string(steps) +
                              " steps exceeds the schedule's " +
                              std::to_string(schedule.total_steps));
  }
  std::vector<Scalar> trace;
  trace.reserve(static_cast<std::size_t>(steps) + 1);
  trace.push_back(mse_loss(layer, batch));
  for (long step = 0; step < steps; ++step) {
    const LoraGradients<Scalar> grad = mse_gradients(layer, batch);
    layer.update(grad.a, grad.b, cosine_lr(schedule, step));
    trace.push_back(mse_loss(layer, batch));
  }
  return trace;
}

// Gaussian matrix with the given standard deviation.
template <typename Scalar>
Matrix<Scalar> random_matrix(Eigen::Index rows, Eigen::Index cols, Scalar stddev, Rng& rng) {
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Scalar(rng.normal(0.0, stddev));
  }
  return m;
}

// Regression data whose targets come from a teacher w0 + delta with a planted
// rank-`rank` delta, so a LoRA layer of that rank can fit it exactly.
template <typename Scalar>
RegressionBatch<Scalar> planted_teacher_batch(const Matrix<Scalar>& w0, Eigen::Index rank,
                                              Eigen::Index batch_size, Scalar delta_scale,
                                              std::uint64_t seed) {
  Rng rng(derive_seed(seed, fnv1a("planted-teacher")));
  const Matrix<Scalar> u = random_matrix<Scalar>(w0.rows(), rank, Scalar(1), rng);
  const Matrix<Scalar> v = random_matrix<Scalar>(rank, w0.cols(), Scalar(1), rng);
  const Matrix<Scalar> teacher = w0 + (delta_scale / Scalar(rank)) * u * v;
  RegressionBatch<Scalar> batch;
  batch.x = random_matrix<Scalar>(batch_size, w0.cols(), Scalar(1), rng);
  batch.y = batch.x * teacher.transpose();
  return batch;
}

}  // namespace mvg::adapter

#endif  // MVG_ADAPTER_HPP_
