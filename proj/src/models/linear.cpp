#include <cmath>
#include <vector>

#include "pagelen/error.hpp"
#include "pagelen/models/model.hpp"

namespace pagelen::models {

namespace {

// In-place Cholesky solve of the SPD system A x = b (A row-major n x n).
// Throws Error(SingularSystem) when a pivot collapses.
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b,
                                   std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw Error(ErrorCode::SingularSystem, "Gram matrix is not positive definite");
    }
    const double ljj = std::sqrt(diag);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / ljj;
    }
  }
  // forward substitution L z = b
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  // back substitution L^T x = z
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
    b[i] = v / a[i * n + i];
  }
  return b;
}

constexpr std::size_t kPrimalWidthCap = 20000;

}  // namespace

FittedModel fit_linear_regression(const feat::FeatureMatrix& x, std::span<const double> y,
                                  const LinearConfig& cfg) {
  const std::size_t rows = x.rows();
  const std::size_t width = x.cols();
  if (rows == 0) throw Error(ErrorCode::EmptyCorpus, "cannot fit on zero rows");
  if (y.size() != rows) {
    throw Error(ErrorCode::LengthMismatch, "target length does not match row count");
  }

  // d: solved coordinate count (weights plus optional intercept column of
  // ones). The ridge applies to every coordinate, which keeps the primal
  // (X^T X + eps I) and dual X^T (X X^T + eps I)^{-1} y routes identical; we
  // pick whichever Gram matrix is smaller. eps = 0 requires the primal route
  // (the dual Gram is singular whenever rows exceed rank).
  const std::size_t d = width + (cfg.fit_intercept ? 1 : 0);
  const bool primal = cfg.ridge_eps == 0.0 || (d <= rows && d <= kPrimalWidthCap);

  LinearParams params;
  params.weights.assign(width, 0.0);

  if (primal) {
    if (d > kPrimalWidthCap) {
      throw Error(ErrorCode::InvalidConfig,
                  "normal equations need " + std::to_string(d) +
                      " columns; use ridge_eps > 0 so the dual route applies");
    }
    std::vector<double> gram(d * d, 0.0);
    std::vector<double> xty(d, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      // gather the row once (sparse + dense tail) then accumulate outer product
      std::vector<std::pair<std::uint32_t, double>> entries;
      x.for_each_value(i, [&](std::uint32_t c, double v) {
        if (v != 0.0) entries.push_back({c, v});
      });
      if (cfg.fit_intercept) entries.push_back({static_cast<std::uint32_t>(width), 1.0});
      for (const auto& [c1, v1] : entries) {
        xty[c1] += v1 * y[i];
        for (const auto& [c2, v2] : entries) {
          if (c2 >= c1) gram[c1 * d + c2] += v1 * v2;
        }
      }
    }
    for (std::size_t c1 = 0; c1 < d; ++c1) {
      gram[c1 * d + c1] += cfg.ridge_eps;
      for (std::size_t c2 = c1 + 1; c2 < d; ++c2) gram[c2 * d + c1] = gram[c1 * d + c2];
    }
    std::vector<double> solution = cholesky_solve(std::move(gram), std::move(xty), d);
    for (std::size_t c = 0; c < width; ++c) params.weights[c] = solution[c];
    params.intercept = cfg.fit_intercept ? solution[width] : 0.0;
  } else {
    std::vector<double> k(rows * rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = i; j < rows; ++j) {
        double v = x.dot_rows(i, j);
        if (cfg.fit_intercept) v += 1.0;
        k[i * rows + j] = v;
        k[j * rows + i] = v;
      }
      k[i * rows + i] += cfg.ridge_eps;
    }
    std::vector<double> alpha =
        cholesky_solve(std::move(k), std::vector<double>(y.begin(), y.end()), rows);
    for (std::size_t i = 0; i < rows; ++i) {
      x.for_each_value(i, [&](std::uint32_t c, double v) { params.weights[c] += alpha[i] * v; });
      if (cfg.fit_intercept) params.intercept += alpha[i];
    }
  }

  ModelConfig config;
  config.algorithm = Algorithm::lr;
  config.params = cfg;
  TrainingInfo info;
  info.iterations = 1;
  return FittedModel(std::move(config), width, std::move(params), std::move(info));
}

}  // namespace pagelen::models
