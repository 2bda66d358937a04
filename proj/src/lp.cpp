#include "flexcube/geom/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace flexcube::geom {

namespace {

constexpr double kCostTol = 1e-10;   // reduced-cost threshold
constexpr double kPivotTol = 1e-11;  // smallest acceptable pivot
constexpr double kFeasTol = 1e-9;    // phase-1 residual treated as feasible

// Tableau simplex over variables z >= 0 with equality rows  E z = rhs,
// rhs >= 0. Maximizes obj.z. Bland's rule, so no cycling.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd E, Eigen::VectorXd rhs, std::vector<int> basis)
      : t_(std::move(E)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  // Runs simplex for the given objective. Returns false on unboundedness.
  bool maximize(const Eigen::VectorXd& obj) {
    const int m = static_cast<int>(t_.rows());
    const int n = static_cast<int>(t_.cols());
    // Reduced cost row: obj - obj_B . B^-1 A, maintained incrementally.
    cost_ = obj;
    for (int i = 0; i < m; ++i) {
      const double cb = obj(basis_[i]);
      if (cb != 0.0) {
        cost_ -= cb * t_.row(i).transpose();
        // Basic columns must read exactly zero in the cost row.
        cost_(basis_[i]) = 0.0;
      }
    }
    obj_shift_ = 0.0;
    for (int i = 0; i < m; ++i) obj_shift_ += obj(basis_[i]) * rhs_(i);

    const long max_iter = 50L * (m + n) + 1000;
    for (long iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (cost_(j) > kCostTol) {  // Bland: first improving column
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) {
          const double ratio = rhs_(i) / a;
          if (ratio < best_ratio - 1e-14 ||
              (std::abs(ratio - best_ratio) <= 1e-14 && leave >= 0 &&
               basis_[i] < basis_[leave])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded in this direction

      pivot(leave, enter);
    }
    return true;  // iteration cap: treat as converged (should not happen)
  }

  void pivot(int row, int col) {
    const int m = static_cast<int>(t_.rows());
    const double p = t_(row, col);
    t_.row(row) /= p;
    rhs_(row) /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) {
        t_.row(i) -= f * t_.row(row);
        t_(i, col) = 0.0;
        rhs_(i) -= f * rhs_(row);
        if (rhs_(i) < 0.0 && rhs_(i) > -1e-12) rhs_(i) = 0.0;
      }
    }
    const double fc = cost_(col);
    if (fc != 0.0) {
      cost_ -= fc * t_.row(row).transpose();
      cost_(col) = 0.0;
      obj_shift_ += fc * rhs_(row);
    }
    basis_[row] = col;
  }

  double objective() const { return obj_shift_; }

  Eigen::VectorXd solution(int n_total) const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_total);
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      if (basis_[i] < n_total) z(basis_[i]) = rhs_(i);
    }
    return z;
  }

  const std::vector<int>& basis() const { return basis_; }
  Eigen::MatrixXd& table() { return t_; }
  Eigen::VectorXd& rhs() { return rhs_; }
  std::vector<int>& basis_mut() { return basis_; }

 private:
  Eigen::MatrixXd t_;
  Eigen::VectorXd rhs_;
  std::vector<int> basis_;
  Eigen::VectorXd cost_;
  double obj_shift_ = 0.0;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                  const Eigen::VectorXd& c) {
  const int n = static_cast<int>(A_in.cols());
  const int m = static_cast<int>(A_in.rows());

  // Row scaling for the ratio tests; drops all-zero rows.
  std::vector<int> keep;
  keep.reserve(m);
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const double norm = A_in.row(i).norm();
    if (norm <= 1e-14) {
      if (b_in(i) < -kFeasTol) return {LpStatus::Infeasible, {}, 0.0};
      continue;  // 0.x <= nonneg: vacuous
    }
    const int r = static_cast<int>(keep.size());
    A.row(r) = A_in.row(i) / norm;
    b(r) = b_in(i) / norm;
    keep.push_back(i);
  }
  const int mr = static_cast<int>(keep.size());
  A.conservativeResize(mr, n);
  b.conservativeResize(mr);

  if (mr == 0) {
    // No constraints: optimal only if the objective vanishes.
    if (c.norm() <= 1e-14)
      return {LpStatus::Optimal, Eigen::VectorXd::Zero(n), 0.0};
    return {LpStatus::Unbounded, {}, 0.0};
  }

  // Standard form: x = xp - xm, slack s, all >= 0.
  //   [A  -A  I] [xp; xm; s] = b,   rows with b < 0 negated + artificial.
  int n_art = 0;
  for (int i = 0; i < mr; ++i)
    if (b(i) < 0) ++n_art;

  const int n_struct = 2 * n + mr;
  const int n_total = n_struct + n_art;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(mr, n_total);
  Eigen::VectorXd rhs(mr);
  std::vector<int> basis(mr);

  int art = 0;
  for (int i = 0; i < mr; ++i) {
    double sgn = 1.0;
    if (b(i) < 0) sgn = -1.0;
    E.block(i, 0, 1, n) = sgn * A.row(i);
    E.block(i, n, 1, n) = -sgn * A.row(i);
    E(i, 2 * n + i) = sgn;  // slack
    rhs(i) = sgn * b(i);
    if (sgn < 0) {
      E(i, n_struct + art) = 1.0;
      basis[i] = n_struct + art;
      ++art;
    } else {
      basis[i] = 2 * n + i;
    }
  }

  Tableau tab(std::move(E), std::move(rhs), std::move(basis));

  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_total);
    for (int j = n_struct; j < n_total; ++j) phase1(j) = -1.0;
    tab.maximize(phase1);  // bounded by construction (<= 0)
    if (tab.objective() < -kFeasTol) return {LpStatus::Infeasible, {}, 0.0};

    // Pivot leftover artificials out of the basis where possible.
    for (int i = 0; i < mr; ++i) {
      if (tab.basis()[i] >= n_struct) {
        int col = -1;
        for (int j = 0; j < n_struct; ++j) {
          if (std::abs(tab.table()(i, j)) > 1e-9) {
            col = j;
            break;
          }
        }
        if (col >= 0) tab.pivot(i, col);
        // else: redundant row; harmless to leave the artificial at zero.
      }
    }
    // Freeze artificials at zero for phase 2.
    for (int i = 0; i < mr; ++i)
      for (int j = n_struct; j < n_total; ++j) tab.table()(i, j) = 0.0;
  }

  Eigen::VectorXd obj = Eigen::VectorXd::Zero(n_total);
  obj.head(n) = c;
  obj.segment(n, n) = -c;
  if (!tab.maximize(obj)) return {LpStatus::Unbounded, {}, 0.0};

  const Eigen::VectorXd z = tab.solution(n_total);
  Eigen::VectorXd x = z.head(n) - z.segment(n, n);
  const double value = c.dot(x);
  return {LpStatus::Optimal, std::move(x), value};
}

}  // namespace flexcube::geom
