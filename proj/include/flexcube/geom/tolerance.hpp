#pragma once

namespace flexcube::geom {

// Absolute geometric tolerance shared by all polytope operations.
// Callers are expected to pre-scale quantities to O(1); the default of
// 1e-9 is adequate for the well-conditioned, box-derived polytopes this
// library targets (dimension <= 6).
double tolerance();

// Override the global tolerance (testing/diagnostics only).
void set_tolerance(double eps);

}  // namespace flexcube::geom
