#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "igx/matrix.hpp"
#include "igx/processes.hpp"
#include "igx/schema.hpp"

namespace igx::data {

struct EventDataset {
  Matrix features;                // n x d
  std::vector<int> labels;        // 1 signal, 0 background
  std::vector<int> process_ids;   // index into the generating spec list
  std::vector<double> weights;    // per-event cross-section weight
  FeatureSchema schema;

  std::size_t size() const { return labels.size(); }
  void validate() const;

  // Row subset, preserving order.
  EventDataset take(const std::vector<std::size_t>& idx) const;
  // Column projection onto the given feature indices.
  EventDataset project(const std::vector<std::size_t>& feature_idx) const;
  std::vector<std::size_t> rows_with_label(int label) const;
};

// Deterministic synthetic event sample: half signal, half background, the
// background half allocated across processes proportionally to
// cross-section (largest-remainder, floor of one row per process).
// Per-event weight = cross_section / rows drawn for that process.
EventDataset generate(const std::vector<ProcessSpec>& specs,
                      const FeatureSchema& schema, std::size_t n_total,
                      std::uint64_t seed);

struct SplitFractions {
  double train = 0.5;
  double val = 0.2;
  double test = 0.3;
};

// Disjoint, exhaustive, stratified by process (and hence label).
std::array<EventDataset, 3> split(const EventDataset& ds,
                                  const SplitFractions& fractions,
                                  std::uint64_t seed);

class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> means, std::vector<double> stds);

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& stds() const { return stds_; }
  std::size_t dim() const { return means_.size(); }

  Matrix transform(const Matrix& m) const;
  Matrix inverse(const Matrix& m) const;
  EventDataset transform(const EventDataset& ds) const;

  bool operator==(const Standardizer&) const = default;

 private:
  std::vector<double> means_;
  std::vector<double> stds_;
};

// Population mean/std per feature, training split only.
Standardizer fit_standardizer(const EventDataset& train);

void save_standardizer(const Standardizer& s,
                       const std::vector<std::string>& names,
                       const std::string& path);
Standardizer load_standardizer(const std::string& path,
                               const FeatureSchema& expected);

// CSV with header "<feature names...>,label,process_id,weight"; float64
// cells printed with round-trip precision.
void save_csv(const EventDataset& ds, const std::string& path);
EventDataset load_csv(const std::string& path, const FeatureSchema& expected);

}  // namespace igx::data
