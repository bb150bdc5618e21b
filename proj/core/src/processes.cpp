#include "igx/processes.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "igx/errors.hpp"

namespace igx::data {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

FeatureDist LN(double median, double sigma_log) {
  return {DistFamily::LogNormal, std::log(median), sigma_log, 0.0, kInf};
}

FeatureDist TN(double mean, double sd, double lo, double hi) {
  return {DistFamily::TruncNormal, mean, sd, lo, hi};
}

}  // namespace

double FeatureDist::sample(Rng& rng) const {
  switch (family) {
    case DistFamily::LogNormal:
      return rng.lognormal(a, b);
    case DistFamily::Normal:
      return rng.normal(a, b);
    case DistFamily::TruncNormal:
      return rng.trunc_normal(a, b, lo, hi);
    case DistFamily::Uniform: {
      double v = rng.uniform(a, b);
      while (v <= a || v >= b) v = rng.uniform(a, b);
      return v;
    }
  }
  throw ArgumentError("unknown distribution family");
}

void FeatureDist::validate(const FeatureDef& def) const {
  const char* fname = def.name.c_str();
  switch (family) {
    case DistFamily::LogNormal:
    case DistFamily::Normal:
    case DistFamily::TruncNormal:
      if (!(b > 0.0))
        throw ConfigError(std::string("feature ") + fname +
                          ": scale must be > 0");
      break;
    case DistFamily::Uniform:
      if (!(a < b))
        throw ConfigError(std::string("feature ") + fname +
                          ": uniform needs lo < hi");
      break;
  }
  if (family == DistFamily::TruncNormal) {
    if (!(lo < hi))
      throw ConfigError(std::string("feature ") + fname +
                        ": truncation needs lo < hi");
    if (lo < def.lo || hi > def.hi)
      throw ConfigError(std::string("feature ") + fname +
                        ": truncation outside schema bounds");
  }
  if (family == DistFamily::LogNormal && def.lo < 0.0)
    throw ConfigError(std::string("feature ") + fname +
                      ": lognormal on a negative-bounded feature");
}

void ProcessSpec::validate(const FeatureSchema& schema) const {
  if (!(cross_section > 0.0))
    throw ConfigError("process " + name + ": cross_section must be > 0");
  if (dists.size() != schema.size())
    throw ConfigError("process " + name + ": expected " +
                      std::to_string(schema.size()) + " feature dists, got " +
                      std::to_string(dists.size()));
  for (std::size_t i = 0; i < dists.size(); ++i)
    dists[i].validate(schema.at(i));
}

std::vector<ProcessSpec> default_processes(const FeatureSchema& schema) {
  const std::size_t d = schema.size();

  // Background template. kappa scales the kinematic medians per process,
  // giving each background its own energy scale.
  auto background_dists = [&](double kappa, double tau21_mean,
                              double mj_mean, double mj_sd) {
    std::map<std::string, FeatureDist> t;
    t["H_T"] = LN(780.0 * kappa, 0.30);
    t["MET"] = LN(120.0 * kappa, 0.45);
    t["pT_l"] = LN(95.0 * kappa, 0.40);
    t["pT_j1"] = LN(180.0 * kappa, 0.38);
    t["pT_j2"] = LN(110.0 * kappa, 0.38);
    t["pT_j3"] = LN(70.0 * kappa, 0.40);
    t["pT_b"] = LN(120.0 * kappa, 0.42);
    t["pT_J"] = LN(320.0 * kappa, 0.35);
    t["tau21_b1"] = TN(tau21_mean, 0.045, 0.0, 1.0);
    t["tau21_b2"] = TN(0.55, 0.12, 0.0, 1.0);
    t["tau32_b1"] = TN(0.62, 0.13, 0.0, 1.0);
    t["tau32_b2"] = TN(0.66, 0.13, 0.0, 1.0);
    t["dR_l_j1"] = TN(2.70, 0.52, 0.0, 6.0);
    t["dR_l_j2"] = TN(2.85, 0.55, 0.0, 6.0);
    t["dR_l_b"] = TN(2.75, 0.55, 0.0, 6.0);
    t["dR_l_J"] = TN(3.00, 0.55, 0.0, 6.0);
    t["dR_j1_j2"] = TN(2.60, 0.55, 0.0, 6.0);
    t["dR_j1_b"] = TN(2.65, 0.55, 0.0, 6.0);
    t["dR_j1_J"] = TN(2.90, 0.55, 0.0, 6.0);
    t["dR_j2_b"] = TN(2.75, 0.55, 0.0, 6.0);
    t["dR_j2_J"] = TN(2.95, 0.55, 0.0, 6.0);
    t["dR_b_J"] = TN(2.80, 0.55, 0.0, 6.0);
    t["m_j1"] = LN(30.0, 0.45);
    t["m_j2"] = LN(22.0, 0.45);
    t["m_J"] = TN(mj_mean, mj_sd, 0.0, 1000.0);
    t["m_b"] = LN(12.0, 0.42);
    t["m_j1_j2"] = LN(145.0, 0.42);
    t["m_j1_b"] = LN(185.0, 0.42);
    t["m_b_J"] = LN(560.0, 0.40);
    t["m_j1_j2_j3"] = LN(265.0, 0.42);
    t["girth_J"] = TN(0.345, 0.060, 0.0, 1.0);
    t["girth_var_J"] = TN(0.056, 0.013, 0.0, 1.0);
    t["girth_skew_J"] = TN(0.85, 0.50, -5.0, 5.0);
    t["girth_kurt_J"] = TN(3.55, 0.90, 0.0, 10.0);
    t["girth_j1"] = TN(0.125, 0.040, 0.0, 1.0);
    t["girth_b"] = TN(0.105, 0.035, 0.0, 1.0);

    std::vector<FeatureDist> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) out.push_back(t.at(schema.at(i).name));
    return out;
  };

  // Signal: a heavier mass scale, a two-prong fat jet (tau21 between the
  // background regimes), a fat-jet mass between the light and merged-heavy
  // background populations, and invariant masses of the small jets drawn
  // from the same laws as the backgrounds.
  auto signal_dists = [&]() {
    std::map<std::string, FeatureDist> t;
    t["H_T"] = LN(2200.0, 0.18);
    t["MET"] = LN(300.0, 0.38);
    t["pT_l"] = LN(190.0, 0.35);
    t["pT_j1"] = LN(240.0, 0.34);
    t["pT_j2"] = LN(135.0, 0.36);
    t["pT_j3"] = LN(82.0, 0.38);
    t["pT_b"] = LN(175.0, 0.36);
    t["pT_J"] = LN(480.0, 0.30);
    t["tau21_b1"] = TN(0.50, 0.05, 0.0, 1.0);
    t["tau21_b2"] = TN(0.44, 0.10, 0.0, 1.0);
    t["tau32_b1"] = TN(0.56, 0.12, 0.0, 1.0);
    t["tau32_b2"] = TN(0.61, 0.12, 0.0, 1.0);
    t["dR_l_j1"] = TN(2.45, 0.50, 0.0, 6.0);
    t["dR_l_j2"] = TN(2.80, 0.55, 0.0, 6.0);
    t["dR_l_b"] = TN(2.70, 0.55, 0.0, 6.0);
    t["dR_l_J"] = TN(3.05, 0.55, 0.0, 6.0);
    t["dR_j1_j2"] = TN(2.55, 0.55, 0.0, 6.0);
    t["dR_j1_b"] = TN(2.60, 0.55, 0.0, 6.0);
    t["dR_j1_J"] = TN(2.95, 0.55, 0.0, 6.0);
    t["dR_j2_b"] = TN(2.70, 0.55, 0.0, 6.0);
    t["dR_j2_J"] = TN(3.00, 0.55, 0.0, 6.0);
    t["dR_b_J"] = TN(3.15, 0.50, 0.0, 6.0);
    t["m_j1"] = LN(30.0, 0.45);
    t["m_j2"] = LN(22.0, 0.45);
    t["m_J"] = TN(172.0, 12.0, 0.0, 1000.0);
    t["m_b"] = LN(12.0, 0.42);
    t["m_j1_j2"] = LN(165.0, 0.40);
    t["m_j1_b"] = LN(185.0, 0.42);
    t["m_b_J"] = LN(780.0, 0.35);
    t["m_j1_j2_j3"] = LN(300.0, 0.40);
    t["girth_J"] = TN(0.310, 0.055, 0.0, 1.0);
    t["girth_var_J"] = TN(0.048, 0.012, 0.0, 1.0);
    t["girth_skew_J"] = TN(0.65, 0.45, -5.0, 5.0);
    t["girth_kurt_J"] = TN(3.25, 0.85, 0.0, 10.0);
    t["girth_j1"] = TN(0.125, 0.040, 0.0, 1.0);
    t["girth_b"] = TN(0.105, 0.035, 0.0, 1.0);

    std::vector<FeatureDist> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) out.push_back(t.at(schema.at(i).name));
    return out;
  };

  // name, cross_section(pb), kappa, tau21 regime, m_J regime.
  // tau21: W/Z-strahlung and radiation fat jets sit high, top-like and
  // b-enriched fat jets low. m_J: merged-top processes sit heavy.
  struct BgRow {
    const char* name;
    double xs;
    double kappa;
    double tau21;
    double mj_mean, mj_sd;
  };
  const BgRow rows[] = {
      {"ttbar_1l", 300.0, 1.00, 0.28, 260.0, 22.0},
      {"w_2j", 220.0, 0.78, 0.72, 85.0, 18.0},
      {"ttbar_2l", 70.0, 0.95, 0.72, 85.0, 18.0},
      {"singletop_tW", 48.0, 0.90, 0.72, 260.0, 22.0},
      {"w_bb", 30.0, 0.72, 0.28, 85.0, 18.0},
      {"z_2j", 20.0, 0.70, 0.28, 85.0, 18.0},
      {"diboson_WW", 10.0, 0.85, 0.72, 85.0, 18.0},
      {"diboson_WZ", 6.0, 0.88, 0.72, 260.0, 22.0},
      {"ttW", 3.0, 1.10, 0.28, 85.0, 18.0},
      {"ttZ", 1.5, 1.05, 0.28, 85.0, 18.0},
  };

  std::vector<ProcessSpec> specs;
  specs.push_back(
      {"BB_signal", ProcessLabel::Signal, 0.5, signal_dists(), 0});
  std::uint64_t block = 1;
  for (const BgRow& r : rows) {
    specs.push_back({r.name, ProcessLabel::Background, r.xs,
                     background_dists(r.kappa, r.tau21, r.mj_mean, r.mj_sd),
                     block++});
  }
  for (const auto& s : specs) s.validate(schema);
  return specs;
}

}  // namespace igx::data
