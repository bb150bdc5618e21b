#include "igx/schema.hpp"

#include <limits>
#include <unordered_set>

#include "igx/errors.hpp"

namespace igx::data {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* category_name(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::Basic: return "Basic";
    case FeatureCategory::Substructure: return "Substructure";
    case FeatureCategory::DeltaR: return "DeltaR";
    case FeatureCategory::InvMass: return "InvMass";
    case FeatureCategory::Girth: return "Girth";
  }
  return "?";
}

FeatureSchema::FeatureSchema(std::vector<FeatureDef> features)
    : features_(std::move(features)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : features_) {
    if (!seen.insert(f.name).second)
      throw ConfigError("duplicate feature name: " + f.name);
    if (!(f.lo < f.hi))
      throw ConfigError("feature " + f.name + ": lo must be < hi");
  }
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const auto& f : features_) out.push_back(f.name);
  return out;
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i].name == name) return i;
  throw ArgumentError("unknown feature: " + name);
}

FeatureSchema default_schema() {
  using C = FeatureCategory;
  std::vector<FeatureDef> f;
  f.reserve(36);

  // Basic kinematics (8): event scale, missing energy, object pT.
  for (const char* name : {"H_T", "MET", "pT_l", "pT_j1", "pT_j2", "pT_j3",
                           "pT_b", "pT_J"})
    f.push_back({name, C::Basic, 0.0, kInf});

  // n-subjettiness ratios of the fat jet (4), both beta values.
  for (const char* name :
       {"tau21_b1", "tau21_b2", "tau32_b1", "tau32_b2"})
    f.push_back({name, C::Substructure, 0.0, 1.0});

  // Pairwise eta-phi separations (10): all pairs of {l, j1, j2, b, J}.
  for (const char* name :
       {"dR_l_j1", "dR_l_j2", "dR_l_b", "dR_l_J", "dR_j1_j2", "dR_j1_b",
        "dR_j1_J", "dR_j2_b", "dR_j2_J", "dR_b_J"})
    f.push_back({name, C::DeltaR, 0.0, 6.0});

  // Invariant masses (8): single hadronic objects plus 2/3-object combos.
  for (const char* name : {"m_j1", "m_j2", "m_J", "m_b", "m_j1_j2", "m_j1_b",
                           "m_b_J", "m_j1_j2_j3"})
    f.push_back({name, C::InvMass, 0.0, kInf});

  // Girth of the fat jet with higher moments, plus girth of j1 and b.
  f.push_back({"girth_J", C::Girth, 0.0, 1.0});
  f.push_back({"girth_var_J", C::Girth, 0.0, 1.0});
  f.push_back({"girth_skew_J", C::Girth, -5.0, 5.0});
  f.push_back({"girth_kurt_J", C::Girth, 0.0, 10.0});
  f.push_back({"girth_j1", C::Girth, 0.0, 1.0});
  f.push_back({"girth_b", C::Girth, 0.0, 1.0});

  return FeatureSchema(std::move(f));
}

}  // namespace igx::data
