#include "igx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "igx/errors.hpp"
#include "igx/rng.hpp"

namespace igx::data {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// floor allocation + largest remainder, with at least one row per entry.
std::vector<std::size_t> allocate_proportional(
    const std::vector<double>& shares, std::size_t n) {
  const std::size_t k = shares.size();
  const double total = std::accumulate(shares.begin(), shares.end(), 0.0);
  std::vector<std::size_t> counts(k, 0);
  std::vector<double> frac(k, 0.0);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = static_cast<double>(n) * shares[i] / total;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    frac[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t i = 0; assigned < n; ++i) {
    ++counts[order[i % k]];
    ++assigned;
  }
  for (std::size_t i = 0; i < k; ++i) {
    while (counts[i] == 0) {
      const std::size_t richest = static_cast<std::size_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      if (counts[richest] <= 1)
        throw ConfigError("cannot allocate at least one row per process");
      --counts[richest];
      ++counts[i];
    }
  }
  return counts;
}

}  // namespace

void EventDataset::validate() const {
  const std::size_t n = labels.size();
  if (features.rows() != n || process_ids.size() != n || weights.size() != n)
    throw ShapeError("EventDataset: column lengths disagree");
  if (features.cols() != schema.size())
    throw ShapeError("EventDataset: feature count does not match schema");
  for (const double w : weights)
    if (!(w > 0.0)) throw DataError("EventDataset: weights must be > 0");
  if (!features.all_finite())
    throw DataError("EventDataset: non-finite feature value");
}

EventDataset EventDataset::take(const std::vector<std::size_t>& idx) const {
  EventDataset out;
  out.features = features.take_rows(idx);
  out.labels.reserve(idx.size());
  out.process_ids.reserve(idx.size());
  out.weights.reserve(idx.size());
  for (const std::size_t i : idx) {
    out.labels.push_back(labels[i]);
    out.process_ids.push_back(process_ids[i]);
    out.weights.push_back(weights[i]);
  }
  out.schema = schema;
  return out;
}

EventDataset EventDataset::project(
    const std::vector<std::size_t>& feature_idx) const {
  EventDataset out;
  out.features = features.take_cols(feature_idx);
  out.labels = labels;
  out.process_ids = process_ids;
  out.weights = weights;
  std::vector<FeatureDef> defs;
  defs.reserve(feature_idx.size());
  for (const std::size_t i : feature_idx) defs.push_back(schema.at(i));
  out.schema = FeatureSchema(std::move(defs));
  return out;
}

std::vector<std::size_t> EventDataset::rows_with_label(int label) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) idx.push_back(i);
  return idx;
}

EventDataset generate(const std::vector<ProcessSpec>& specs,
                      const FeatureSchema& schema, std::size_t n_total,
                      std::uint64_t seed) {
  if (specs.empty()) throw ConfigError("generate: no process specs");
  for (const auto& s : specs) s.validate(schema);
  if (n_total < 2 * specs.size())
    throw ConfigError("generate: n_total must be at least twice the process count");

  std::vector<std::size_t> sig_idx, bg_idx;
  for (std::size_t i = 0; i < specs.size(); ++i)
    (specs[i].label == ProcessLabel::Signal ? sig_idx : bg_idx).push_back(i);
  if (sig_idx.empty() || bg_idx.empty())
    throw ConfigError("generate: need at least one signal and one background process");

  const std::size_t n_bg = n_total / 2;
  const std::size_t n_sig = n_total - n_bg;

  auto shares_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> s;
    for (const std::size_t i : idx) s.push_back(specs[i].cross_section);
    return s;
  };
  const std::vector<std::size_t> sig_counts =
      allocate_proportional(shares_of(sig_idx), n_sig);
  const std::vector<std::size_t> bg_counts =
      allocate_proportional(shares_of(bg_idx), n_bg);

  std::vector<std::size_t> counts(specs.size(), 0);
  for (std::size_t i = 0; i < sig_idx.size(); ++i)
    counts[sig_idx[i]] = sig_counts[i];
  for (std::size_t i = 0; i < bg_idx.size(); ++i)
    counts[bg_idx[i]] = bg_counts[i];

  EventDataset ds;
  ds.schema = schema;
  ds.features = Matrix(n_total, schema.size());
  ds.labels.reserve(n_total);
  ds.process_ids.reserve(n_total);
  ds.weights.reserve(n_total);

  std::size_t row = 0;
  for (std::size_t p = 0; p < specs.size(); ++p) {
    const ProcessSpec& spec = specs[p];
    Rng rng(mix_seed(mix_seed(seed, "generate"),
                     mix_seed(spec.seed_block, spec.name)));
    const double w = spec.cross_section / static_cast<double>(counts[p]);
    for (std::size_t i = 0; i < counts[p]; ++i, ++row) {
      double* dst = ds.features.data() + row * schema.size();
      for (std::size_t c = 0; c < schema.size(); ++c)
        dst[c] = spec.dists[c].sample(rng);
      ds.labels.push_back(spec.label == ProcessLabel::Signal ? 1 : 0);
      ds.process_ids.push_back(static_cast<int>(p));
      ds.weights.push_back(w);
    }
  }
  ds.validate();
  return ds;
}

std::array<EventDataset, 3> split(const EventDataset& ds,
                                  const SplitFractions& fractions,
                                  std::uint64_t seed) {
  const double sum = fractions.train + fractions.val + fractions.test;
  if (fractions.train <= 0.0 || fractions.val <= 0.0 || fractions.test <= 0.0)
    throw ConfigError("split: fractions must be positive");
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("split: fractions must sum to 1");

  // Strata keyed by process id (label is a function of process).
  std::map<int, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < ds.size(); ++i)
    strata[ds.process_ids[i]].push_back(i);

  std::vector<std::size_t> train_idx, val_idx, test_idx;
  for (auto& [pid, rows] : strata) {
    Rng rng(mix_seed(mix_seed(seed, "split"),
                     static_cast<std::uint64_t>(pid)));
    rng.shuffle(rows);

    const double fr[3] = {fractions.train, fractions.val, fractions.test};
    const std::size_t n = rows.size();
    std::size_t counts[3];
    double frac[3];
    std::size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
      const double exact = static_cast<double>(n) * fr[s];
      counts[s] = static_cast<std::size_t>(std::floor(exact));
      frac[s] = exact - std::floor(exact);
      assigned += counts[s];
    }
    int order[3] = {0, 1, 2};
    std::stable_sort(order, order + 3,
                     [&](int a, int b) { return frac[a] > frac[b]; });
    for (int i = 0; assigned < n; ++i, ++assigned) ++counts[order[i % 3]];

    std::size_t pos = 0;
    for (std::size_t i = 0; i < counts[0]; ++i) train_idx.push_back(rows[pos++]);
    for (std::size_t i = 0; i < counts[1]; ++i) val_idx.push_back(rows[pos++]);
    for (std::size_t i = 0; i < counts[2]; ++i) test_idx.push_back(rows[pos++]);
  }

  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {ds.take(train_idx), ds.take(val_idx), ds.take(test_idx)};
}

Standardizer::Standardizer(std::vector<double> means, std::vector<double> stds)
    : means_(std::move(means)), stds_(std::move(stds)) {
  if (means_.size() != stds_.size())
    throw ShapeError("Standardizer: mean/std length mismatch");
  for (const double s : stds_)
    if (!(s > 0.0)) throw DataError("Standardizer: std must be > 0");
}

Matrix Standardizer::transform(const Matrix& m) const {
  if (m.cols() != dim()) throw ShapeError("Standardizer: dimension mismatch");
  Matrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double* row = out.data() + r * out.cols();
    for (std::size_t c = 0; c < out.cols(); ++c)
      row[c] = (row[c] - means_[c]) / stds_[c];
  }
  return out;
}

Matrix Standardizer::inverse(const Matrix& m) const {
  if (m.cols() != dim()) throw ShapeError("Standardizer: dimension mismatch");
  Matrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double* row = out.data() + r * out.cols();
    for (std::size_t c = 0; c < out.cols(); ++c)
      row[c] = row[c] * stds_[c] + means_[c];
  }
  return out;
}

EventDataset Standardizer::transform(const EventDataset& ds) const {
  EventDataset out = ds;
  out.features = transform(ds.features);
  return out;
}

Standardizer fit_standardizer(const EventDataset& train) {
  const std::size_t n = train.features.rows();
  const std::size_t d = train.features.cols();
  if (n == 0) throw DataError("fit_standardizer: empty dataset");
  std::vector<double> mean(d, 0.0), sd(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = train.features.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) mean[c] += row[c];
  }
  for (std::size_t c = 0; c < d; ++c) mean[c] /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = train.features.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) {
      const double v = row[c] - mean[c];
      sd[c] += v * v;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    sd[c] = std::sqrt(sd[c] / static_cast<double>(n));
    if (!(sd[c] > 0.0))
      throw DataError("zero variance: " + train.schema.at(c).name);
  }
  return Standardizer(std::move(mean), std::move(sd));
}

void save_standardizer(const Standardizer& s,
                       const std::vector<std::string>& names,
                       const std::string& path) {
  if (names.size() != s.dim())
    throw ShapeError("save_standardizer: name count mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "feature,mean,std\n";
  for (std::size_t i = 0; i < s.dim(); ++i)
    out << names[i] << ',' << fmt_double(s.means()[i]) << ','
        << fmt_double(s.stds()[i]) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Standardizer load_standardizer(const std::string& path,
                               const FeatureSchema& expected) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": no header");
  if (line == "feature,mean,std\r") line.pop_back();
  if (line != "feature,mean,std")
    throw DataError(path + ": unexpected header '" + line + "'");
  std::vector<double> means, stds;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string name, mean_s, std_s;
    if (!std::getline(ss, name, ',') || !std::getline(ss, mean_s, ',') ||
        !std::getline(ss, std_s))
      throw DataError(path + ": malformed row " + std::to_string(row));
    const std::size_t i = means.size();
    if (i >= expected.size())
      throw DataError(path + ": more rows than schema features");
    if (name != expected.at(i).name)
      throw DataError(path + ": row " + std::to_string(row) + " expected '" +
                      expected.at(i).name + "', got '" + name + "'");
    means.push_back(std::strtod(mean_s.c_str(), nullptr));
    stds.push_back(std::strtod(std_s.c_str(), nullptr));
  }
  if (means.size() != expected.size())
    throw DataError(path + ": expected " + std::to_string(expected.size()) +
                    " rows, got " + std::to_string(means.size()));
  return Standardizer(std::move(means), std::move(stds));
}

void save_csv(const EventDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t c = 0; c < ds.schema.size(); ++c)
    out << ds.schema.at(c).name << ',';
  out << "label,process_id,weight\n";
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const double* row = ds.features.data() + r * ds.features.cols();
    for (std::size_t c = 0; c < ds.features.cols(); ++c)
      out << fmt_double(row[c]) << ',';
    out << ds.labels[r] << ',' << ds.process_ids[r] << ','
        << fmt_double(ds.weights[r]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t row, std::size_t col) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size())
    throw DataError(path + ": non-numeric cell at row " + std::to_string(row) +
                    ", column " + std::to_string(col + 1));
  return v;
}

}  // namespace

EventDataset load_csv(const std::string& path, const FeatureSchema& expected) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw DataError(path + ": no header");

  const std::vector<std::string> header = split_line(line);
  const std::size_t d = expected.size();
  if (header.size() != d + 3)
    throw DataError(path + ": header has " + std::to_string(header.size()) +
                    " columns, expected " + std::to_string(d + 3));
  for (std::size_t c = 0; c < d; ++c)
    if (header[c] != expected.at(c).name)
      throw DataError(path + ": header column " + std::to_string(c + 1) +
                      " is '" + header[c] + "', expected '" +
                      expected.at(c).name + "'");
  const char* tail[3] = {"label", "process_id", "weight"};
  for (std::size_t c = 0; c < 3; ++c)
    if (header[d + c] != tail[c])
      throw DataError(path + ": header column " + std::to_string(d + c + 1) +
                      " is '" + header[d + c] + "', expected '" + tail[c] +
                      "'");

  std::vector<double> values;
  std::vector<int> labels, pids;
  std::vector<double> weights;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != d + 3)
      throw DataError(path + ": row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(d + 3));
    for (std::size_t c = 0; c < d; ++c)
      values.push_back(parse_double(cells[c], path, row, c));
    const double label = parse_double(cells[d], path, row, d);
    if (label != 0.0 && label != 1.0)
      throw DataError(path + ": label must be 0 or 1 at row " +
                      std::to_string(row));
    labels.push_back(static_cast<int>(label));
    pids.push_back(
        static_cast<int>(parse_double(cells[d + 1], path, row, d + 1)));
    weights.push_back(parse_double(cells[d + 2], path, row, d + 2));
  }

  EventDataset ds;
  ds.schema = expected;
  ds.features = Matrix(labels.size(), d);
  std::copy(values.begin(), values.end(), ds.features.data());
  ds.labels = std::move(labels);
  ds.process_ids = std::move(pids);
  ds.weights = std::move(weights);
  ds.validate();
  return ds;
}

}  // namespace igx::data
