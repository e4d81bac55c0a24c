#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "chainhom/metric.hpp"

namespace chainhom {

/// Invariants on one open interval between consecutive candidate scales.
struct SpectrumRow {
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  double probe = 0;  // scale at which the invariants were evaluated
  std::size_t components = 0;
  std::size_t betti1 = 0;  // of the basepoint's component
  std::vector<std::int64_t> torsion;
};

struct CriticalSpectrum {
  std::vector<SpectrumRow> rows;
  /// Candidates where any invariant changes.
  std::vector<double> critical_values;
  /// Candidates where betti1 or torsion change.
  std::vector<double> homotopy_critical_values;
};

/// Candidate scales are the distinct pairwise distances; invariants are
/// evaluated at interval midpoints and at twice the diameter. `jobs` > 1
/// evaluates intervals on that many threads.
CriticalSpectrum critical_spectrum(const FiniteMetricSpace& space, PointIndex basepoint = 0, unsigned jobs = 1);

}  // namespace chainhom
