#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "igx/matrix.hpp"

namespace igx::nn {

enum class Mode { Train, Eval };

double sigmoid(double x);
// x * sigmoid(x)
double swish(double x);
// d/dx [x * sigmoid(x)] = sigmoid(x) * (1 + x * (1 - sigmoid(x)))
double swish_grad(double x);

struct LinearLayer {
  Matrix weights;            // out_dim x in_dim
  std::vector<double> bias;  // out_dim

  std::size_t out_dim() const { return weights.rows(); }
  std::size_t in_dim() const { return weights.cols(); }
};

struct BatchNormState {
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> running_mean;
  std::vector<double> running_var;
  double momentum = 0.1;
  double epsilon = 1e-5;

  std::size_t dim() const { return gamma.size(); }
};

// Non-owning view of one parameter tensor; `decay` marks linear weights,
// the only tensors weight decay touches.
struct ParamTensor {
  double* data;
  std::size_t size;
  bool decay;
};

// input_dim -> [Linear(hidden) -> BatchNorm -> Swish -> Dropout] x n_hidden
// -> Linear(1). The scalar head is a logit; the attribution target is the
// sigmoid probability of that logit.
struct MLPClassifier {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::size_t n_hidden = 0;
  double dropout_p = 0.0;
  Mode mode = Mode::Eval;

  std::vector<LinearLayer> hidden;   // n_hidden blocks
  std::vector<BatchNormState> norms; // one per block
  LinearLayer head;                  // 1 x hidden_dim

  static MLPClassifier init(std::size_t input_dim, std::size_t hidden_dim,
                            std::size_t n_hidden, double dropout_p,
                            std::uint64_t seed);

  void set_mode(Mode m) { mode = m; }

  // Eval-mode logits, one per row. ModeError in Train mode: batch-statistic
  // forward passes belong to the trainer, which owns their RNG state.
  std::vector<double> forward(const Matrix& batch) const;
  std::vector<double> probabilities(const Matrix& batch) const;
  double logit_of(std::span<const double> x) const;
  double prob_of(std::span<const double> x) const;

  // d(sigmoid(logit))/dx_i for a single input. Eval mode only.
  std::vector<double> input_gradient(std::span<const double> x) const;
  // Batched variant: returns one gradient row per input row; optionally the
  // per-row probabilities from the same pass.
  Matrix input_gradient_batch(const Matrix& batch,
                              std::vector<double>* probs_out = nullptr) const;

  // Fixed declaration order: per block W, b, gamma, beta; then head W, b.
  std::vector<ParamTensor> parameters();

  void check_finite(const char* where) const;
};

}  // namespace igx::nn
