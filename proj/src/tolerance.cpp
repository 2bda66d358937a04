#include "flexcube/geom/tolerance.hpp"

#include <atomic>

namespace flexcube::geom {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double eps) { g_tolerance.store(eps, std::memory_order_relaxed); }

}  // namespace flexcube::geom
