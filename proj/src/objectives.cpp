#include "emskin/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace emskin {

namespace {

CoverageReport build_report(const Layout& layout, std::span<const double> powers, double threshold_linear,
                            double blackout_linear) {
  CoverageReport r;
  r.phi1 = phi1_from_powers(powers, threshold_linear);
  r.phi2 = phi2(layout);
  r.power_db.reserve(powers.size());
  r.classes.reserve(powers.size());
  for (double p : powers) {
    r.power_db.push_back(to_db(p));
    const CoverageClass c = classify(p, threshold_linear, blackout_linear);
    r.classes.push_back(c);
    switch (c) {
    case CoverageClass::covered: ++r.covered; break;
    case CoverageClass::connected: ++r.connected; break;
    case CoverageClass::blackout: ++r.blackout; break;
    }
  }
  if (!powers.empty()) {
    const auto [lo, hi] = std::minmax_element(powers.begin(), powers.end());
    r.min_db = to_db(*lo);
    r.max_db = to_db(*hi);
    r.avg_db = to_db(pairwise_sum(powers) / static_cast<double>(powers.size()));
  }
  return r;
}

} // namespace

const char* to_string(CoverageClass c) {
  switch (c) {
  case CoverageClass::covered: return "covered";
  case CoverageClass::connected: return "connected";
  case CoverageClass::blackout: return "blackout";
  }
  return "?";
}

int heaviside(double x) { return x > 0.0 ? 1 : 0; }

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double phi1_from_powers(std::span<const double> powers, double threshold_linear) {
  if (powers.empty()) {
    throw InputError("phi1: at least one receiver is required");
  }
  std::vector<double> terms(powers.size());
  for (std::size_t u = 0; u < powers.size(); ++u) {
    const double gap = threshold_linear - powers[u];
    terms[u] = heaviside(gap) ? std::abs(powers[u] - threshold_linear) / threshold_linear : 0.0;
  }
  return pairwise_sum(terms) / static_cast<double>(powers.size());
}

CoverageClass classify(double power_linear, double threshold_linear, double blackout_linear) {
  if (power_linear >= threshold_linear) {
    return CoverageClass::covered;
  }
  if (power_linear < blackout_linear) {
    return CoverageClass::blackout;
  }
  return CoverageClass::connected;
}

double phi1(const Layout& layout, std::span<const Vec3> receivers, const Scenario& scenario, const FieldConfig& cfg) {
  validate_layout(layout, scenario.facade);
  std::vector<double> powers;
  powers.reserve(receivers.size());
  for (const Vec3& r : receivers) {
    powers.push_back(received_power(layout, r, scenario, cfg));
  }
  return phi1_from_powers(powers, from_db(scenario.power_threshold_db));
}

double phi2(const Layout& layout) {
  if (layout.size() == 0) {
    throw InputError("phi2: empty layout");
  }
  return static_cast<double>(layout.popcount()) / static_cast<double>(layout.size());
}

CoverageReport coverage_report(const Layout& layout, std::span<const Vec3> receivers, const Scenario& scenario,
                               const FieldConfig& cfg) {
  validate_layout(layout, scenario.facade);
  std::vector<double> powers;
  powers.reserve(receivers.size());
  for (const Vec3& r : receivers) {
    powers.push_back(received_power(layout, r, scenario, cfg));
  }
  CoverageReport rep = build_report(layout, powers, from_db(scenario.power_threshold_db),
                                    from_db(scenario.blackout_threshold_db));
  if (receivers.size() == scenario.receivers.size() && receivers.data() == scenario.receivers.data()) {
    rep.cols = scenario.receiver_cols;
    rep.rows = scenario.receiver_rows;
  } else {
    rep.cols = static_cast<int>(receivers.size());
    rep.rows = 1;
  }
  return rep;
}

PowerTable::PowerTable(const Scenario& scenario, std::span<const Vec3> receivers, const FieldConfig& cfg)
    : tiles_(scenario.tile_count()), receivers_(receivers.size()), data_(tiles_ * receivers_) {
  cfg.validate();
  for (std::size_t n = 0; n < tiles_; ++n) {
    const Tile& t = scenario.tiles[n];
    for (std::size_t u = 0; u < receivers_; ++u) {
      data_[n * receivers_ + u] = tile_power(t, receivers[u], cfg, scenario.base_station);
    }
  }
}

void PowerTable::accumulate(const Layout& layout, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t n = 0; n < tiles_; ++n) {
    if (!layout.bits[n]) {
      continue;
    }
    const double* row = data_.data() + n * receivers_;
    for (std::size_t u = 0; u < receivers_; ++u) {
      out[u] += row[u];
    }
  }
}

std::vector<double> PowerTable::received(const Layout& layout) const {
  if (layout.size() != tiles_) {
    throw InputError("layout: length does not match the tile count");
  }
  std::vector<double> out(receivers_);
  accumulate(layout, out);
  return out;
}

Evaluator::Evaluator(const Scenario& scenario, const FieldConfig& cfg)
    : scenario_(&scenario),
      cfg_(cfg),
      table_(scenario, scenario.receivers, cfg),
      threshold_linear_(from_db(scenario.power_threshold_db)),
      blackout_linear_(from_db(scenario.blackout_threshold_db)) {}

ObjectiveVector Evaluator::evaluate(const Layout& layout) const {
  const std::vector<double> p = table_.received(layout);
  return {phi1_from_powers(p, threshold_linear_), phi2(layout)};
}

CoverageReport Evaluator::report(const Layout& layout) const {
  validate_layout(layout, scenario_->facade);
  const std::vector<double> p = table_.received(layout);
  CoverageReport rep = build_report(layout, p, threshold_linear_, blackout_linear_);
  rep.cols = scenario_->receiver_cols;
  rep.rows = scenario_->receiver_rows;
  return rep;
}

} // namespace emskin
