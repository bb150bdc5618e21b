#include "igx/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "igx/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace igx::nn {

namespace {

constexpr char kMagic[4] = {'I', 'G', 'X', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kMaxDim = 1u << 24;

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write " + path);
  }
  void bytes(const void* p, std::size_t n) {
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void f64(double v) { bytes(&v, sizeof v); }
  void f64s(const double* p, std::size_t n) { bytes(p, n * sizeof(double)); }
  void f64s(const std::vector<double>& v) { f64s(v.data(), v.size()); }
  bool good() const { return static_cast<bool>(out_); }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  Reader(const std::string& path)
      : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw MissingInputError("cannot open " + path);
  }
  void bytes(void* p, std::size_t n) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n))
      throw DataError(path_ + ": truncated checkpoint");
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, sizeof v);
    return v;
  }
  double f64() {
    double v;
    bytes(&v, sizeof v);
    return v;
  }
  void f64s(double* p, std::size_t n) { bytes(p, n * sizeof(double)); }
  void f64s(std::vector<double>& v) { f64s(v.data(), v.size()); }
  const std::string& path() const { return path_; }

 private:
  std::ifstream in_;
  std::string path_;
};

}  // namespace

void save_checkpoint(const MLPClassifier& model,
                     const data::Standardizer& standardizer,
                     const std::vector<std::string>& feature_names,
                     const std::string& path) {
  if (standardizer.dim() != model.input_dim)
    throw ShapeError("save_checkpoint: standardizer dim != model input dim");
  if (feature_names.size() != model.input_dim)
    throw ShapeError("save_checkpoint: feature name count != model input dim");

  Writer w(path);
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(model.input_dim));
  w.u32(static_cast<std::uint32_t>(model.hidden_dim));
  w.u32(static_cast<std::uint32_t>(model.n_hidden));
  w.f64(model.dropout_p);
  w.f64(model.n_hidden > 0 ? model.norms[0].epsilon : 1e-5);
  w.f64(model.n_hidden > 0 ? model.norms[0].momentum : 0.1);
  for (std::size_t l = 0; l < model.n_hidden; ++l) {
    w.f64s(model.hidden[l].weights.data(), model.hidden[l].weights.size());
    w.f64s(model.hidden[l].bias);
    w.f64s(model.norms[l].gamma);
    w.f64s(model.norms[l].beta);
    w.f64s(model.norms[l].running_mean);
    w.f64s(model.norms[l].running_var);
  }
  w.f64s(model.head.weights.data(), model.head.weights.size());
  w.f64s(model.head.bias);
  w.u32(static_cast<std::uint32_t>(standardizer.dim()));
  w.f64s(standardizer.means());
  w.f64s(standardizer.stds());
  w.u32(static_cast<std::uint32_t>(feature_names.size()));
  for (const std::string& name : feature_names) {
    w.u32(static_cast<std::uint32_t>(name.size()));
    w.bytes(name.data(), name.size());
  }
  if (!w.good()) throw IoError("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  Reader r(path);

  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw DataError(path + ": bad magic, not a checkpoint file");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw DataError(path + ": unsupported checkpoint version " +
                    std::to_string(version));

  const std::uint32_t input_dim = r.u32();
  const std::uint32_t hidden_dim = r.u32();
  const std::uint32_t n_hidden = r.u32();
  if (input_dim == 0 || input_dim > kMaxDim || hidden_dim == 0 ||
      hidden_dim > kMaxDim || n_hidden > 64)
    throw DataError(path + ": implausible architecture descriptor");
  const double dropout_p = r.f64();
  const double epsilon = r.f64();
  const double momentum = r.f64();
  if (!(dropout_p >= 0.0 && dropout_p < 1.0) || !(epsilon > 0.0))
    throw DataError(path + ": invalid hyperparameters");

  Checkpoint ck;
  MLPClassifier& m = ck.model;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.n_hidden = n_hidden;
  m.dropout_p = dropout_p;
  m.mode = Mode::Eval;
  std::size_t in = input_dim;
  for (std::size_t l = 0; l < n_hidden; ++l) {
    LinearLayer lin;
    lin.weights = Matrix(hidden_dim, in);
    lin.bias.assign(hidden_dim, 0.0);
    r.f64s(lin.weights.data(), lin.weights.size());
    r.f64s(lin.bias);
    BatchNormState bn;
    bn.epsilon = epsilon;
    bn.momentum = momentum;
    bn.gamma.assign(hidden_dim, 0.0);
    bn.beta.assign(hidden_dim, 0.0);
    bn.running_mean.assign(hidden_dim, 0.0);
    bn.running_var.assign(hidden_dim, 0.0);
    r.f64s(bn.gamma);
    r.f64s(bn.beta);
    r.f64s(bn.running_mean);
    r.f64s(bn.running_var);
    m.hidden.push_back(std::move(lin));
    m.norms.push_back(std::move(bn));
    in = hidden_dim;
  }
  m.head.weights = Matrix(1, in);
  m.head.bias.assign(1, 0.0);
  r.f64s(m.head.weights.data(), m.head.weights.size());
  r.f64s(m.head.bias);

  const std::uint32_t n_features = r.u32();
  if (n_features != input_dim)
    throw DataError(path + ": standardizer dim does not match input dim");
  std::vector<double> means(n_features), stds(n_features);
  r.f64s(means);
  r.f64s(stds);
  ck.standardizer = data::Standardizer(std::move(means), std::move(stds));

  const std::uint32_t n_names = r.u32();
  if (n_names != input_dim)
    throw DataError(path + ": feature name count does not match input dim");
  for (std::uint32_t i = 0; i < n_names; ++i) {
    const std::uint32_t len = r.u32();
    if (len > 4096) throw DataError(path + ": implausible feature name");
    std::string name(len, '\0');
    r.bytes(name.data(), len);
    ck.feature_names.push_back(std::move(name));
  }
  ck.model.check_finite("load_checkpoint");
  return ck;
}

}  // namespace igx::nn
