#pragma once

#include <Eigen/Dense>

namespace flexcube::geom {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;  // maximizer, valid when status == Optimal
  double value = 0.0;
};

// Maximizes c.x over {x : A x <= b}, x free. Dense two-phase simplex with
// Bland's rule, sized for the small systems polytope algebra produces
// (a few hundred rows/columns at most).
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace flexcube::geom
