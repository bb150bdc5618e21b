#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "igx/matrix.hpp"
#include "igx/nn.hpp"

namespace igx::nn {

struct TrainConfig {
  double learning_rate = 1e-3;
  double weight_decay = 1e-4;
  double dropout_p = 0.2;
  std::size_t batch_size = 256;
  std::size_t max_epochs = 60;
  std::size_t patience = 10;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EpochStats {
  std::size_t epoch;
  double train_loss;
  double val_loss;
  double val_accuracy;
};

struct TrainingLog {
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;
  double best_val_loss = std::numeric_limits<double>::infinity();
  bool early_stopped = false;
};

// Mean binary cross-entropy on raw logits, numerically stable form.
double bce_with_logits(std::span<const double> logits,
                       std::span<const int> labels);

// Mini-batch training with batch-statistic BN, inverted dropout and an
// Adam optimizer with decoupled weight decay on linear weights only.
// Early-stops after `patience` epochs without validation-loss improvement
// and leaves `model` holding the best-validation parameters, in Eval mode.
// Fully deterministic given cfg.seed and the model's initial state.
TrainingLog train(MLPClassifier& model, const Matrix& x_train,
                  const std::vector<int>& y_train, const Matrix& x_val,
                  const std::vector<int>& y_val, const TrainConfig& cfg);

// Single optimizer: exposed so decay behaviour is testable in isolation.
class AdamW {
 public:
  AdamW(std::vector<ParamTensor> params, double lr, double weight_decay);

  // grads must be aligned with the parameter list handed to the ctor.
  void step(const std::vector<std::vector<double>>& grads);

 private:
  std::vector<ParamTensor> params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  double lr_;
  double weight_decay_;
  long t_ = 0;
};

}  // namespace igx::nn
