#pragma once

#include <string>
#include <vector>

namespace igx::data {

enum class FeatureCategory { Basic, Substructure, DeltaR, InvMass, Girth };

const char* category_name(FeatureCategory c);

struct FeatureDef {
  std::string name;
  FeatureCategory category;
  // Validity range; +/-infinity when unbounded on that side. Bounded
  // features are sampled strictly inside.
  double lo;
  double hi;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureDef> features);

  std::size_t size() const { return features_.size(); }
  const FeatureDef& at(std::size_t i) const { return features_[i]; }
  const std::vector<FeatureDef>& features() const { return features_; }
  std::vector<std::string> names() const;
  std::size_t index_of(const std::string& name) const;

  bool operator==(const FeatureSchema&) const = default;

 private:
  std::vector<FeatureDef> features_;
};

// The shipped 36-feature event schema: 8 basic kinematics, 4 n-subjettiness
// ratios, 10 pairwise angular distances, 8 invariant masses, 6 girth moments.
FeatureSchema default_schema();

}  // namespace igx::data
