#pragma once

// Primitive connections T^n(beta) = gamma' between inverse discontinuities
// and cut points of a coded system, and orbit disjointness checks.

#include <vector>

#include "ietlab/coding.hpp"

namespace ietlab {

struct Connection {
  FieldElement source;  // an inverse discontinuity of the coded IET
  FieldElement target;  // a cut point
  int length = 0;       // T^length(source) == target
  bool primitive = true;
};

struct ConnectionScan {
  std::vector<Connection> connections;  // one primitive connection per hitting source
  int M = 0;
  int n_max = 0;
  /// Some source never hit a cut within the scanned steps.
  bool exhausted = false;
  /// Every source without a hit is proven never to hit (drift bound), so
  /// the scan is complete despite `exhausted`.
  bool certified = true;
  std::vector<FieldElement> unresolved_sources;  // neither hit nor certified

  bool complete() const { return certified; }
};

ConnectionScan find_primitive_connections(const CodedSystem& sys, int n_max = 4096);

/// Connections are the same when they reach the same target; by injectivity
/// of T their source orbits then coincide.
int distinct_primitive_count(const std::vector<Connection>& connections);

/// qbar minus the number of distinct primitive connections. Throws
/// std::logic_error if negative.
int R_value(const CodedSystem& sys, const ConnectionScan& scan);

struct Coincidence {
  int from = 0;  // index into the point list
  int to = 0;
  int steps = 0;  // T^{-steps}(points[from]) == points[to]
};

struct DisjointnessReport {
  bool disjoint = true;
  /// All non-coincidences are proven for every number of steps, not only up
  /// to n_max.
  bool certified = false;
  int n_max = 0;
  std::vector<Coincidence> witnesses;
};

/// Checks that the negative orbits of the listed points are pairwise disjoint
/// and infinite (no T^{-k}p = p' for 0 < k <= n_max, no duplicates).
DisjointnessReport orbits_disjoint(const Iet& t, const std::vector<FieldElement>& points, int n_max = 4096);

}  // namespace ietlab
