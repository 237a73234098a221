#include "lineups/ridge.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lineups {

namespace {

// alpha = (G + lambda I)^-1 r, with the lambda = 0 case solved through a
// spectral pseudoinverse (minimum-norm solution on rank-deficient systems).
Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& gram,
                                  const Eigen::VectorXd& r, double lambda) {
  if (lambda > 0.0) {
    Eigen::MatrixXd g = gram;
    g.diagonal().array() += lambda;
    return g.ldlt().solve(r);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& evals = eig.eigenvalues();
  const double tol = std::max(1.0, evals.cwiseAbs().maxCoeff()) * 1e-12 *
                     static_cast<double>(gram.rows());
  Eigen::VectorXd inv = evals;
  for (Eigen::Index i = 0; i < inv.size(); ++i)
    inv[i] = evals[i] > tol ? 1.0 / evals[i] : 0.0;
  return eig.eigenvectors() *
         (inv.asDiagonal() * (eig.eigenvectors().transpose() * r));
}

// Dual ridge on sparse rows: center y and the columns, solve the N x N
// system, and map back through X^T. Row centering of the Gram matrix is the
// column centering of X (X_c X_c^T = H X X^T H with H = I - 11^T/N).
struct DualFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
};

DualFit dual_ridge(const Eigen::SparseMatrix<double>& x,
                   const Eigen::VectorXd& y, double lambda) {
  const Eigen::Index rows = x.rows();
  const double y_mean = y.mean();
  const Eigen::VectorXd y_centered = y.array() - y_mean;

  Eigen::MatrixXd gram = Eigen::MatrixXd(x * x.transpose());
  const Eigen::VectorXd row_means = gram.rowwise().mean();
  const double total_mean = row_means.mean();
  gram.colwise() -= row_means;
  gram.rowwise() -= row_means.transpose();
  gram.array() += total_mean;

  Eigen::VectorXd alpha = solve_regularized(gram, y_centered, lambda);
  alpha.array() -= alpha.mean();  // X_c^T a = X^T (H a)
  Eigen::VectorXd beta = x.transpose() * alpha;

  const Eigen::VectorXd col_means =
      Eigen::VectorXd(x.transpose() * Eigen::VectorXd::Ones(rows)) /
      static_cast<double>(rows);
  DualFit fit;
  fit.coefficients = std::move(beta);
  fit.intercept = y_mean - col_means.dot(fit.coefficients);
  return fit;
}

}  // namespace

DesignMatrix build_design_matrix(int n, int k) {
  if (k < 1 || k > n - k)
    throw std::invalid_argument("build_design_matrix: requires 1 <= k <= n - k");
  if (n > 20)
    throw std::invalid_argument(
        "build_design_matrix: n > 20 would overflow the column space");

  DesignMatrix dm;
  dm.n = n;
  dm.k = k;

  std::vector<long long> order_offset(static_cast<std::size_t>(k) + 1, 0);
  long long p = 0;
  for (int order = 1; order <= k; ++order) {
    order_offset[static_cast<std::size_t>(order)] = p;
    p += binomial(n, order);
  }
  dm.col_groups.reserve(static_cast<std::size_t>(p));
  for (int order = 1; order <= k; ++order) {
    const long long count = binomial(n, order);
    for (long long r = 0; r < count; ++r)
      dm.col_groups.push_back(unrank_subset(r, n, order));
  }

  const long long rows = binomial(n, k);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(rows * ((1LL << k) - 1)));
  std::vector<PlayerId> buffer;
  for (long long row = 0; row < rows; ++row) {
    const Group lineup = unrank_subset(row, n, k);
    const auto& m = lineup.members();
    // All nonempty subsets of the lineup, one column each.
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      buffer.clear();
      for (int b = 0; b < k; ++b)
        if (mask & (1u << b)) buffer.push_back(m[static_cast<std::size_t>(b)]);
      long long rank = 0;
      for (std::size_t i = 0; i < buffer.size(); ++i)
        rank += binomial(buffer[i], static_cast<int>(i) + 1);
      const long long col =
          order_offset[buffer.size()] + rank;
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), 1.0);
    }
  }
  dm.X.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p));
  dm.X.setFromTriplets(triplets.begin(), triplets.end());
  dm.X.makeCompressed();
  return dm;
}

double column_inner_product(const DesignMatrix& dm, long long i, long long j) {
  if (i < 0 || i >= dm.cols() || j < 0 || j >= dm.cols())
    throw std::out_of_range("column_inner_product: column out of range");
  const Eigen::SparseVector<double> a = dm.X.col(static_cast<Eigen::Index>(i));
  const Eigen::SparseVector<double> b = dm.X.col(static_cast<Eigen::Index>(j));
  return a.dot(b);
}

RidgeFit fit_ridge(const DesignMatrix& dm, std::span<const double> y,
                   double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("fit_ridge: lambda < 0");
  if (static_cast<long long>(y.size()) != dm.rows())
    throw std::invalid_argument("fit_ridge: y length mismatch");
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                             static_cast<Eigen::Index>(y.size()));
  DualFit fit = dual_ridge(dm.X, yv, lambda);
  return RidgeFit{fit.intercept, std::move(fit.coefficients), lambda};
}

RidgeFit ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     double lambda, bool fit_intercept) {
  if (lambda < 0.0) throw std::invalid_argument("ridge_solve: lambda < 0");
  if (X.rows() != y.size())
    throw std::invalid_argument("ridge_solve: dimension mismatch");
  if (fit_intercept) {
    DualFit fit = dual_ridge(X.sparseView(), y, lambda);
    return RidgeFit{fit.intercept, std::move(fit.coefficients), lambda};
  }
  const Eigen::MatrixXd gram = X * X.transpose();
  const Eigen::VectorXd alpha = solve_regularized(gram, y, lambda);
  return RidgeFit{0.0, X.transpose() * alpha, lambda};
}

CrossValidation cross_validate_lambda(const DesignMatrix& dm,
                                      std::span<const double> y,
                                      std::span<const double> lambda_grid,
                                      int folds, std::uint64_t seed) {
  if (lambda_grid.empty())
    throw std::invalid_argument("cross_validate_lambda: empty grid");
  if (folds < 2)
    throw std::invalid_argument("cross_validate_lambda: folds must be >= 2");
  if (static_cast<long long>(y.size()) != dm.rows())
    throw std::invalid_argument("cross_validate_lambda: y length mismatch");
  if (folds > dm.rows())
    throw std::invalid_argument("cross_validate_lambda: more folds than rows");
  for (double lambda : lambda_grid)
    if (lambda < 0.0)
      throw std::invalid_argument("cross_validate_lambda: negative lambda");

  const long long rows = dm.rows();
  std::vector<long long> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> total_error(lambda_grid.size(), 0.0);
  const Eigen::SparseMatrix<double, Eigen::RowMajor> x_rows(dm.X);

  for (int fold = 0; fold < folds; ++fold) {
    const long long begin = rows * fold / folds;
    const long long end = rows * (fold + 1) / folds;

    std::vector<long long> train;
    train.reserve(static_cast<std::size_t>(rows - (end - begin)));
    for (long long i = 0; i < rows; ++i)
      if (i < begin || i >= end) train.push_back(order[static_cast<std::size_t>(i)]);

    Eigen::SparseMatrix<double, Eigen::RowMajor> x_train(
        static_cast<Eigen::Index>(train.size()), dm.X.cols());
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd y_train(static_cast<Eigen::Index>(train.size()));
    for (std::size_t r = 0; r < train.size(); ++r) {
      y_train[static_cast<Eigen::Index>(r)] =
          y[static_cast<std::size_t>(train[r])];
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
               x_rows, static_cast<Eigen::Index>(train[r]));
           it; ++it)
        triplets.emplace_back(static_cast<int>(r), static_cast<int>(it.col()),
                              1.0);
    }
    x_train.setFromTriplets(triplets.begin(), triplets.end());
    const Eigen::SparseMatrix<double> x_train_col(x_train);

    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
      const DualFit fit = dual_ridge(x_train_col, y_train, lambda_grid[li]);
      double err = 0.0;
      for (long long i = begin; i < end; ++i) {
        const long long row = order[static_cast<std::size_t>(i)];
        double pred = fit.intercept;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 x_rows, static_cast<Eigen::Index>(row));
             it; ++it)
          pred += fit.coefficients[it.col()];
        const double diff = pred - y[static_cast<std::size_t>(row)];
        err += diff * diff;
      }
      total_error[li] += err;
    }
  }

  CrossValidation cv;
  cv.cv_errors.resize(lambda_grid.size());
  for (std::size_t li = 0; li < lambda_grid.size(); ++li)
    cv.cv_errors[li] = total_error[li] / static_cast<double>(rows);

  std::size_t best = 0;
  for (std::size_t li = 1; li < lambda_grid.size(); ++li) {
    const bool better = cv.cv_errors[li] < cv.cv_errors[best];
    const bool tie_larger = cv.cv_errors[li] == cv.cv_errors[best] &&
                            lambda_grid[li] > lambda_grid[best];
    if (better || tie_larger) best = li;
  }
  cv.best_lambda = lambda_grid[best];
  return cv;
}

}  // namespace lineups
