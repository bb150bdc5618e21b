#include "igx/nn.hpp"

#include <cmath>
#include <string>

#include "igx/errors.hpp"
#include "igx/rng.hpp"

namespace igx::nn {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double swish(double x) { return x * sigmoid(x); }

double swish_grad(double x) {
  const double s = sigmoid(x);
  return s * (1.0 + x * (1.0 - s));
}

MLPClassifier MLPClassifier::init(std::size_t input_dim,
                                  std::size_t hidden_dim,
                                  std::size_t n_hidden, double dropout_p,
                                  std::uint64_t seed) {
  if (input_dim == 0) throw ArgumentError("MLPClassifier: input_dim must be > 0");
  if (hidden_dim == 0) throw ArgumentError("MLPClassifier: hidden_dim must be > 0");
  if (dropout_p < 0.0 || dropout_p >= 1.0)
    throw ArgumentError("MLPClassifier: dropout_p must be in [0, 1)");

  MLPClassifier m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.n_hidden = n_hidden;
  m.dropout_p = dropout_p;
  m.mode = Mode::Eval;

  Rng rng(mix_seed(seed, "mlp-init"));
  auto make_linear = [&rng](std::size_t out, std::size_t in) {
    LinearLayer l;
    l.weights = Matrix(out, in);
    l.bias.assign(out, 0.0);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (std::size_t r = 0; r < out; ++r)
      for (std::size_t c = 0; c < in; ++c)
        l.weights(r, c) = rng.uniform(-bound, bound);
    for (std::size_t r = 0; r < out; ++r) l.bias[r] = rng.uniform(-bound, bound);
    return l;
  };

  std::size_t in = input_dim;
  for (std::size_t i = 0; i < n_hidden; ++i) {
    m.hidden.push_back(make_linear(hidden_dim, in));
    BatchNormState bn;
    bn.gamma.assign(hidden_dim, 1.0);
    bn.beta.assign(hidden_dim, 0.0);
    bn.running_mean.assign(hidden_dim, 0.0);
    bn.running_var.assign(hidden_dim, 1.0);
    m.norms.push_back(std::move(bn));
    in = hidden_dim;
  }
  m.head = make_linear(1, in);
  return m;
}

namespace {

void affine_forward(const LinearLayer& l, const Matrix& x, Matrix& out) {
  out = matmul_nt(x, l.weights);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double* row = out.data() + r * out.cols();
    for (std::size_t c = 0; c < out.cols(); ++c) row[c] += l.bias[c];
  }
}

}  // namespace

std::vector<double> MLPClassifier::forward(const Matrix& batch) const {
  if (mode != Mode::Eval)
    throw ModeError("forward: model must be in Eval mode");
  if (batch.cols() != input_dim)
    throw ShapeError("forward: batch has " + std::to_string(batch.cols()) +
                     " columns, expected " + std::to_string(input_dim));

  Matrix act = batch;
  Matrix z;
  for (std::size_t l = 0; l < n_hidden; ++l) {
    affine_forward(hidden[l], act, z);
    const BatchNormState& bn = norms[l];
    for (std::size_t r = 0; r < z.rows(); ++r) {
      double* row = z.data() + r * z.cols();
      for (std::size_t c = 0; c < z.cols(); ++c) {
        const double inv_std =
            1.0 / std::sqrt(bn.running_var[c] + bn.epsilon);
        const double y =
            bn.gamma[c] * (row[c] - bn.running_mean[c]) * inv_std + bn.beta[c];
        row[c] = swish(y);
      }
    }
    act = std::move(z);
  }

  std::vector<double> logits(batch.rows());
  for (std::size_t r = 0; r < act.rows(); ++r)
    logits[r] = dot(act.row(r), std::span<const double>(head.weights.data(),
                                                        head.weights.cols())) +
                head.bias[0];
  return logits;
}

std::vector<double> MLPClassifier::probabilities(const Matrix& batch) const {
  std::vector<double> out = forward(batch);
  for (double& v : out) v = sigmoid(v);
  return out;
}

double MLPClassifier::logit_of(std::span<const double> x) const {
  return forward(Matrix::from_row(x))[0];
}

double MLPClassifier::prob_of(std::span<const double> x) const {
  return sigmoid(logit_of(x));
}

std::vector<double> MLPClassifier::input_gradient(
    std::span<const double> x) const {
  const Matrix g = input_gradient_batch(Matrix::from_row(x));
  return std::vector<double>(g.data(), g.data() + g.cols());
}

Matrix MLPClassifier::input_gradient_batch(
    const Matrix& batch, std::vector<double>* probs_out) const {
  if (mode != Mode::Eval)
    throw ModeError("input_gradient: model must be in Eval mode");
  if (batch.cols() != input_dim)
    throw ShapeError("input_gradient: batch has " +
                     std::to_string(batch.cols()) + " columns, expected " +
                     std::to_string(input_dim));

  const std::size_t n = batch.rows();

  // Forward, keeping the BN outputs y (pre-activation) per block. Eval-mode
  // BN is the affine map z -> scale*z + shift with scale from running stats.
  std::vector<Matrix> ys(n_hidden);
  std::vector<std::vector<double>> scales(n_hidden);
  Matrix act = batch;
  Matrix z;
  for (std::size_t l = 0; l < n_hidden; ++l) {
    const BatchNormState& bn = norms[l];
    std::vector<double>& scale = scales[l];
    scale.resize(hidden_dim);
    for (std::size_t c = 0; c < hidden_dim; ++c)
      scale[c] = bn.gamma[c] / std::sqrt(bn.running_var[c] + bn.epsilon);

    affine_forward(hidden[l], act, z);
    for (std::size_t r = 0; r < n; ++r) {
      double* row = z.data() + r * z.cols();
      for (std::size_t c = 0; c < hidden_dim; ++c)
        row[c] = scale[c] * (row[c] - bn.running_mean[c]) + bn.beta[c];
    }
    ys[l] = z;
    for (std::size_t r = 0; r < n; ++r) {
      double* row = z.data() + r * z.cols();
      for (std::size_t c = 0; c < hidden_dim; ++c) row[c] = swish(row[c]);
    }
    act = std::move(z);
  }

  // dprob/dlogit seeds the backward pass.
  Matrix grad(n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    const double logit = dot(act.row(r),
                             std::span<const double>(head.weights.data(),
                                                     head.weights.cols())) +
                         head.bias[0];
    const double p = sigmoid(logit);
    if (probs_out) {
      if (probs_out->size() != n) probs_out->assign(n, 0.0);
      (*probs_out)[r] = p;
    }
    grad(r, 0) = p * (1.0 - p);
  }

  Matrix delta = matmul(grad, head.weights);  // n x hidden_dim
  for (std::size_t l = n_hidden; l-- > 0;) {
    const std::vector<double>& scale = scales[l];
    const Matrix& y = ys[l];
    for (std::size_t r = 0; r < n; ++r) {
      double* drow = delta.data() + r * delta.cols();
      const double* yrow = y.data() + r * y.cols();
      for (std::size_t c = 0; c < hidden_dim; ++c)
        drow[c] *= swish_grad(yrow[c]) * scale[c];
    }
    delta = matmul(delta, hidden[l].weights);
  }
  return delta;  // n x input_dim
}

std::vector<ParamTensor> MLPClassifier::parameters() {
  std::vector<ParamTensor> params;
  for (std::size_t l = 0; l < n_hidden; ++l) {
    params.push_back({hidden[l].weights.data(), hidden[l].weights.size(), true});
    params.push_back({hidden[l].bias.data(), hidden[l].bias.size(), false});
    params.push_back({norms[l].gamma.data(), norms[l].gamma.size(), false});
    params.push_back({norms[l].beta.data(), norms[l].beta.size(), false});
  }
  params.push_back({head.weights.data(), head.weights.size(), true});
  params.push_back({head.bias.data(), head.bias.size(), false});
  return params;
}

void MLPClassifier::check_finite(const char* where) const {
  auto bad = [&](const std::vector<double>& v) {
    for (const double x : v)
      if (!std::isfinite(x)) return true;
    return false;
  };
  for (const auto& l : hidden)
    if (!l.weights.all_finite() || bad(l.bias))
      throw NumericError(std::string(where) + ": non-finite parameters");
  for (const auto& bn : norms)
    if (bad(bn.gamma) || bad(bn.beta) || bad(bn.running_mean) ||
        bad(bn.running_var))
      throw NumericError(std::string(where) + ": non-finite BN state");
  if (!head.weights.all_finite() || bad(head.bias))
    throw NumericError(std::string(where) + ": non-finite parameters");
}

}  // namespace igx::nn
