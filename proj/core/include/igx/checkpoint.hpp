#pragma once

#include <string>
#include <vector>

#include "igx/dataset.hpp"
#include "igx/nn.hpp"

namespace igx::nn {

struct Checkpoint {
  MLPClassifier model;  // loaded in Eval mode
  data::Standardizer standardizer;
  std::vector<std::string> feature_names;
};

// Little-endian binary container, magic "IGXM". Layout (in order):
//   magic[4], u32 schema_version,
//   u32 input_dim, u32 hidden_dim, u32 n_hidden,
//   f64 dropout_p, f64 bn_epsilon, f64 bn_momentum,
//   per hidden block: W (hidden x in, row-major), b, gamma, beta,
//                     running_mean, running_var,
//   head W (1 x hidden), head b (1),
//   u32 n_features, f64 means[n], f64 stds[n],
//   u32 n_names, then per name: u32 byte length + bytes.
// A save/load round trip reproduces Eval-mode logits bit-identically.
void save_checkpoint(const MLPClassifier& model,
                     const data::Standardizer& standardizer,
                     const std::vector<std::string>& feature_names,
                     const std::string& path);

Checkpoint load_checkpoint(const std::string& path);

}  // namespace igx::nn
