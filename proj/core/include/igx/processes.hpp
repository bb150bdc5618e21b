#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igx/rng.hpp"
#include "igx/schema.hpp"

namespace igx::data {

enum class ProcessLabel { Signal, Background };

enum class DistFamily { LogNormal, Normal, TruncNormal, Uniform };

// One marginal sampling law. Parameter meaning per family:
//   LogNormal:   a = log(median), b = sigma of the log
//   Normal:      a = mean, b = stddev
//   TruncNormal: a = mean, b = stddev, strict interior of (lo, hi)
//   Uniform:     strict interior of (a, b)
struct FeatureDist {
  DistFamily family = DistFamily::Normal;
  double a = 0.0;
  double b = 1.0;
  double lo = 0.0;
  double hi = 0.0;

  double sample(Rng& rng) const;
  void validate(const FeatureDef& def) const;
};

struct ProcessSpec {
  std::string name;
  ProcessLabel label = ProcessLabel::Background;
  double cross_section = 1.0;  // pb, nominal
  std::vector<FeatureDist> dists;  // one per schema feature, same order
  std::uint64_t seed_block = 0;    // decorrelates per-process streams

  void validate(const FeatureSchema& schema) const;
};

// One signal process plus ten backgrounds with order-of-magnitude realistic
// cross-section ratios (largest/smallest = 200). The signal sits at a higher
// mass scale; ttbar_1l and w_2j carry the largest cross-sections.
std::vector<ProcessSpec> default_processes(const FeatureSchema& schema);

}  // namespace igx::data
