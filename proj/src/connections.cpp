#include "ietlab/connections.hpp"

#include <algorithm>
#include <set>

namespace ietlab {

ConnectionScan find_primitive_connections(const CodedSystem& sys, int n_max) {
  if (n_max < 0) throw InputError("n_max must be >= 0");
  const Iet& t = sys.iet();
  const auto cuts = sys.cut_points();
  const auto drift = positive_drift(t);
  ConnectionScan scan;
  scan.n_max = n_max;

  for (const auto& source : t.inverse_discontinuities()) {
    long limit = n_max;
    bool provable = false;
    if (drift) {
      long bound = -1;
      for (const auto& c : cuts) bound = std::max(bound, drift->max_steps_for(c - source));
      if (bound <= n_max) {
        limit = bound;
        provable = true;
      }
    }
    bool hit = false;
    FieldElement x = source;
    for (long p = 0; p <= limit; ++p) {
      const int i = t.interval_of(x);
      if (i > 0 && t.left_endpoints()[i] == x) {
        scan.connections.push_back({source, x, static_cast<int>(p), true});
        scan.M = std::max(scan.M, static_cast<int>(p));
        hit = true;
        break;
      }
      x += t.translations()[i];
    }
    if (!hit) {
      scan.exhausted = true;
      if (!provable) {
        scan.certified = false;
        scan.unresolved_sources.push_back(source);
      }
    }
  }
  return scan;
}

int distinct_primitive_count(const std::vector<Connection>& connections) {
  std::vector<FieldElement> targets;
  for (const auto& c : connections) {
    if (std::none_of(targets.begin(), targets.end(), [&](const auto& x) { return x == c.target; }))
      targets.push_back(c.target);
  }
  return static_cast<int>(targets.size());
}

int R_value(const CodedSystem& sys, const ConnectionScan& scan) {
  const int r = sys.qbar() - distinct_primitive_count(scan.connections);
  if (r < 0) throw std::logic_error("negative R: more distinct primitive connections than cut points");
  return r;
}

DisjointnessReport orbits_disjoint(const Iet& t, const std::vector<FieldElement>& points, int n_max) {
  DisjointnessReport report;
  report.n_max = n_max;
  const int np = static_cast<int>(points.size());
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      if (points[i] == points[j]) report.witnesses.push_back({i, j, 0});
    }
  }
  const auto drift = positive_drift(t);
  bool all_certified = static_cast<bool>(drift);
  for (int i = 0; i < np; ++i) {
    long limit = n_max;
    if (drift) {
      // T^{-k} p_i = p_j moves the drift functional by -(p_i - p_j).
      long bound = -1;
      for (int j = 0; j < np; ++j) bound = std::max(bound, drift->max_steps_for(points[i] - points[j]));
      if (bound <= n_max) {
        limit = bound;
      } else {
        all_certified = false;
      }
    }
    FieldElement y = points[i];
    bool found = false;
    for (long k = 1; k <= limit && !found; ++k) {
      y = t.apply_inverse(y);
      for (int j = 0; j < np; ++j) {
        if (y == points[j]) {
          report.witnesses.push_back({i, j, static_cast<int>(k)});
          found = true;
          break;
        }
      }
    }
  }
  report.disjoint = report.witnesses.empty();
  report.certified = all_certified;
  return report;
}

}  // namespace ietlab
