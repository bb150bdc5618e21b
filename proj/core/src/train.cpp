#include "igx/train.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igx/errors.hpp"
#include "igx/rng.hpp"

namespace igx::nn {

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
  if (dropout_p < 0.0 || dropout_p >= 1.0)
    throw ConfigError("dropout_p must be in [0, 1)");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (max_epochs == 0) throw ConfigError("max_epochs must be >= 1");
  if (patience == 0) throw ConfigError("patience must be >= 1");
}

double bce_with_logits(std::span<const double> logits,
                       std::span<const int> labels) {
  if (logits.size() != labels.size())
    throw ShapeError("bce_with_logits: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    const double y = static_cast<double>(labels[i]);
    sum += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
  }
  return sum / static_cast<double>(logits.size());
}

AdamW::AdamW(std::vector<ParamTensor> params, double lr, double weight_decay)
    : params_(std::move(params)), lr_(lr), weight_decay_(weight_decay) {
  for (const auto& p : params_) {
    m_.emplace_back(p.size, 0.0);
    v_.emplace_back(p.size, 0.0);
  }
}

void AdamW::step(const std::vector<std::vector<double>>& grads) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  ++t_;
  const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  for (std::size_t p = 0; p < params_.size(); ++p) {
    double* w = params_[p].data;
    const std::vector<double>& g = grads[p];
    std::vector<double>& m = m_[p];
    std::vector<double>& v = v_[p];
    const double decay = params_[p].decay ? lr_ * weight_decay_ : 0.0;
    for (std::size_t i = 0; i < params_[p].size; ++i) {
      m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
      v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      w[i] -= lr_ * mhat / (std::sqrt(vhat) + kEps) + decay * w[i];
    }
  }
}

namespace {

struct BlockCache {
  Matrix x_in;    // input to the linear layer
  Matrix xhat;    // normalized pre-scale activations
  Matrix y;       // BN output (pre-Swish)
  Matrix mask;    // dropout mask (0 or 1/(1-p)); empty when p == 0
  std::vector<double> invstd;
  std::vector<double> centered_scale;  // 2*(z-mu)/n per entry folded later
  Matrix z_centered;                   // z - mu
};

// One train-mode forward + backward over a batch; returns mean loss and
// fills grads (aligned with model.parameters() order).
double train_batch(MLPClassifier& model, const Matrix& x,
                   std::span<const int> y, double dropout_p, Rng& rng,
                   std::vector<std::vector<double>>& grads) {
  const std::size_t n = x.rows();
  const std::size_t h = model.hidden_dim;
  std::vector<BlockCache> caches(model.n_hidden);

  // Forward.
  Matrix act = x;
  for (std::size_t l = 0; l < model.n_hidden; ++l) {
    BlockCache& cache = caches[l];
    cache.x_in = act;

    Matrix z = matmul_nt(act, model.hidden[l].weights);
    for (std::size_t r = 0; r < n; ++r) {
      double* row = z.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) row[c] += model.hidden[l].bias[c];
    }

    BatchNormState& bn = model.norms[l];
    std::vector<double> mu(h, 0.0), var(h, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double* row = z.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) mu[c] += row[c];
    }
    for (std::size_t c = 0; c < h; ++c) mu[c] /= static_cast<double>(n);
    cache.z_centered = z;
    for (std::size_t r = 0; r < n; ++r) {
      double* row = cache.z_centered.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) {
        row[c] -= mu[c];
        var[c] += row[c] * row[c];
      }
    }
    for (std::size_t c = 0; c < h; ++c) var[c] /= static_cast<double>(n);

    cache.invstd.resize(h);
    for (std::size_t c = 0; c < h; ++c)
      cache.invstd[c] = 1.0 / std::sqrt(var[c] + bn.epsilon);

    // Running stats: biased variance normalizes the batch, the unbiased
    // estimate feeds the running average.
    const double unbias =
        n > 1 ? static_cast<double>(n) / static_cast<double>(n - 1) : 1.0;
    for (std::size_t c = 0; c < h; ++c) {
      bn.running_mean[c] =
          (1.0 - bn.momentum) * bn.running_mean[c] + bn.momentum * mu[c];
      bn.running_var[c] = (1.0 - bn.momentum) * bn.running_var[c] +
                          bn.momentum * var[c] * unbias;
    }

    cache.xhat = Matrix(n, h);
    cache.y = Matrix(n, h);
    for (std::size_t r = 0; r < n; ++r) {
      const double* zc = cache.z_centered.data() + r * h;
      double* xh = cache.xhat.data() + r * h;
      double* yr = cache.y.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) {
        xh[c] = zc[c] * cache.invstd[c];
        yr[c] = bn.gamma[c] * xh[c] + bn.beta[c];
      }
    }

    Matrix a(n, h);
    for (std::size_t r = 0; r < n; ++r) {
      const double* yr = cache.y.data() + r * h;
      double* ar = a.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) ar[c] = swish(yr[c]);
    }

    if (dropout_p > 0.0) {
      cache.mask = Matrix(n, h);
      const double keep = 1.0 - dropout_p;
      const double scale = 1.0 / keep;
      for (std::size_t i = 0; i < n * h; ++i) {
        const double m = rng.uniform01() < keep ? scale : 0.0;
        cache.mask.data()[i] = m;
        a.data()[i] *= m;
      }
    }
    act = std::move(a);
  }

  std::vector<double> logits(n);
  for (std::size_t r = 0; r < n; ++r)
    logits[r] =
        dot(act.row(r), std::span<const double>(model.head.weights.data(),
                                                model.head.weights.cols())) +
        model.head.bias[0];
  const double loss = bce_with_logits(logits, y);

  // Backward. d(mean loss)/dlogit = (sigmoid(z) - y) / n.
  Matrix dz(n, 1);
  for (std::size_t r = 0; r < n; ++r)
    dz(r, 0) = (sigmoid(logits[r]) - static_cast<double>(y[r])) /
               static_cast<double>(n);

  // Head grads. grads layout: per block [W, b, gamma, beta], then head W, b.
  const std::size_t head_w_idx = model.n_hidden * 4;
  {
    const Matrix dw = matmul_tn(dz, act);  // 1 x h
    std::copy(dw.data(), dw.data() + dw.size(), grads[head_w_idx].begin());
    double db = 0.0;
    for (std::size_t r = 0; r < n; ++r) db += dz(r, 0);
    grads[head_w_idx + 1][0] = db;
  }

  Matrix delta = matmul(dz, model.head.weights);  // n x h
  for (std::size_t l = model.n_hidden; l-- > 0;) {
    BlockCache& cache = caches[l];
    BatchNormState& bn = model.norms[l];

    if (dropout_p > 0.0)
      for (std::size_t i = 0; i < n * h; ++i)
        delta.data()[i] *= cache.mask.data()[i];

    for (std::size_t r = 0; r < n; ++r) {
      double* drow = delta.data() + r * h;
      const double* yr = cache.y.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) drow[c] *= swish_grad(yr[c]);
    }

    // BN backward through batch statistics.
    std::vector<double>& dgamma = grads[l * 4 + 2];
    std::vector<double>& dbeta = grads[l * 4 + 3];
    std::fill(dgamma.begin(), dgamma.end(), 0.0);
    std::fill(dbeta.begin(), dbeta.end(), 0.0);
    std::vector<double> sum_dxhat(h, 0.0), dvar(h, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double* drow = delta.data() + r * h;
      const double* xh = cache.xhat.data() + r * h;
      const double* zc = cache.z_centered.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) {
        dgamma[c] += drow[c] * xh[c];
        dbeta[c] += drow[c];
        const double dxhat = drow[c] * bn.gamma[c];
        sum_dxhat[c] += dxhat;
        dvar[c] += dxhat * zc[c];
      }
    }
    for (std::size_t c = 0; c < h; ++c)
      dvar[c] *= -0.5 * cache.invstd[c] * cache.invstd[c] * cache.invstd[c];

    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
      double* drow = delta.data() + r * h;
      const double* zc = cache.z_centered.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) {
        const double dxhat = drow[c] * bn.gamma[c];
        drow[c] = dxhat * cache.invstd[c] +
                  dvar[c] * 2.0 * zc[c] * inv_n -
                  cache.invstd[c] * sum_dxhat[c] * inv_n;
      }
    }

    const Matrix dw = matmul_tn(delta, cache.x_in);  // h x in
    std::copy(dw.data(), dw.data() + dw.size(), grads[l * 4].begin());
    std::vector<double>& db = grads[l * 4 + 1];
    std::fill(db.begin(), db.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double* drow = delta.data() + r * h;
      for (std::size_t c = 0; c < h; ++c) db[c] += drow[c];
    }

    if (l > 0) delta = matmul(delta, model.hidden[l].weights);
  }
  // Input gradients are not needed for the parameter update; the l == 0
  // delta product is skipped above.
  return loss;
}

double eval_loss(const MLPClassifier& model, const Matrix& x,
                 std::span<const int> y, double* accuracy_out) {
  const std::vector<double> logits = model.forward(x);
  if (accuracy_out) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < logits.size(); ++i)
      if ((logits[i] >= 0.0) == (y[i] == 1)) ++correct;
    *accuracy_out =
        static_cast<double>(correct) / static_cast<double>(logits.size());
  }
  return bce_with_logits(logits, y);
}

}  // namespace

TrainingLog train(MLPClassifier& model, const Matrix& x_train,
                  const std::vector<int>& y_train, const Matrix& x_val,
                  const std::vector<int>& y_val, const TrainConfig& cfg) {
  cfg.validate();
  if (x_train.rows() == 0 || x_val.rows() == 0)
    throw DataError("train: empty dataset");
  if (x_train.rows() != y_train.size() || x_val.rows() != y_val.size())
    throw ShapeError("train: features/labels length mismatch");
  if (x_train.cols() != model.input_dim || x_val.cols() != model.input_dim)
    throw ShapeError("train: feature dimension does not match model");
  for (const int l : y_train)
    if (l != 0 && l != 1) throw DataError("train: labels must be 0 or 1");
  for (const int l : y_val)
    if (l != 0 && l != 1) throw DataError("train: labels must be 0 or 1");

  Rng rng(mix_seed(cfg.seed, "train"));
  AdamW opt(model.parameters(), cfg.learning_rate, cfg.weight_decay);

  std::vector<std::vector<double>> grads;
  for (const auto& p : model.parameters()) grads.emplace_back(p.size, 0.0);

  std::vector<std::size_t> order(x_train.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainingLog log;
  MLPClassifier best = model;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    model.set_mode(Mode::Train);
    rng.shuffle(order);

    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size();
         start += cfg.batch_size) {
      const std::size_t count =
          std::min(cfg.batch_size, order.size() - start);
      // A single row cannot feed batch statistics; skip a trailing singleton.
      if (count < 2 && order.size() > 1) continue;
      std::vector<std::size_t> idx(order.begin() + start,
                                   order.begin() + start + count);
      const Matrix xb = x_train.take_rows(idx);
      std::vector<int> yb(count);
      for (std::size_t i = 0; i < count; ++i) yb[i] = y_train[idx[i]];

      const double loss =
          train_batch(model, xb, yb, cfg.dropout_p, rng, grads);
      if (!std::isfinite(loss))
        throw NumericError("training diverged at epoch " +
                           std::to_string(epoch));
      opt.step(grads);
      loss_sum += loss * static_cast<double>(count);
      seen += count;
    }

    model.set_mode(Mode::Eval);
    double val_acc = 0.0;
    const double val_loss = eval_loss(model, x_val, y_val, &val_acc);
    if (!std::isfinite(val_loss))
      throw NumericError("training diverged at epoch " +
                         std::to_string(epoch));
    const double train_loss =
        seen > 0 ? loss_sum / static_cast<double>(seen) : 0.0;
    log.epochs.push_back({epoch, train_loss, val_loss, val_acc});

    if (val_loss < log.best_val_loss) {
      log.best_val_loss = val_loss;
      log.best_epoch = epoch;
      best = model;
      since_best = 0;
    } else {
      ++since_best;
      if (since_best >= cfg.patience) {
        log.early_stopped = true;
        break;
      }
    }
  }

  model = std::move(best);
  model.set_mode(Mode::Eval);
  return log;
}

}  // namespace igx::nn
