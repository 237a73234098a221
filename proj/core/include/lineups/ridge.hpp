#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lineups/combinatorics.hpp"

namespace lineups {

/// Binary indicator design over all player groups of orders 1..k: the
/// column for group g has a 1 in row L iff g is on the floor in lineup L.
/// Rows are the C(n, k) lineups in colexicographic order; columns are
/// ordered by group order, then colexicographic rank within order. The
/// intercept is implicit (handled by the fit, never penalized).
struct DesignMatrix {
  int n = 0;
  int k = 0;
  Eigen::SparseMatrix<double> X;  // C(n,k) x p, each row has 2^k - 1 ones
  std::vector<Group> col_groups;  // p = sum_{i=1..k} C(n, i)

  long long rows() const { return X.rows(); }
  long long cols() const { return X.cols(); }
};

/// Requires k <= n/2 and n <= 20 (column count grows as 2^n).
DesignMatrix build_design_matrix(int n, int k);

/// Dot product of two indicator columns; nonzero across order blocks is the
/// non-orthogonality this design exhibits by construction.
double column_inner_product(const DesignMatrix& dm, long long i, long long j);

struct RidgeFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;  // aligned to DesignMatrix columns
  double lambda = 0.0;
};

/// Penalized least squares with unpenalized intercept, solved in the dual
/// (N x N) form since p >> N. lambda = 0 returns the minimum-norm solution.
RidgeFit fit_ridge(const DesignMatrix& dm, std::span<const double> y,
                   double lambda);

/// Same solver on a dense matrix; used for small systems and comparisons.
RidgeFit ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     double lambda, bool fit_intercept);

struct CrossValidation {
  double best_lambda = 0.0;
  std::vector<double> cv_errors;  // mean held-out squared error per grid point
};

/// Seeded shuffle of row indices, contiguous folds, mean held-out squared
/// error per lambda; exact ties go to the larger lambda.
CrossValidation cross_validate_lambda(const DesignMatrix& dm,
                                      std::span<const double> y,
                                      std::span<const double> lambda_grid,
                                      int folds, std::uint64_t seed);

}  // namespace lineups
