#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aspire/curves.hpp"
#include "aspire/numerics.hpp"

namespace aspire {

/// Dense row-major matrix; rows are lotteries, columns are utilities.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// EU/EDU/CE/AE over a lottery x utility grid.
struct EvalMatrix {
  std::vector<Curve> lotteries;
  std::vector<Curve> utilities;
  Matrix eu;
  Matrix edu;
  Matrix ce;
  Matrix ae;
};

/// Every cell from evaluate_pair. Errors are rethrown annotated with (i, j).
EvalMatrix evaluate_matrix(std::span<const Curve> lotteries, std::span<const Curve> utilities,
                           const numerics::QuadratureSpec& spec = {});

struct DualSelection {
  std::size_t index;  // argmin_j EU(F, U_j)
  std::size_t ae_index;  // argmax_j AE(F, U_j)
  std::vector<double> expected_utilities;
  std::vector<double> aspiration_equivalents;
};

/// The decision maker with the highest aspiration for a single lottery: the
/// utility minimizing expected utility, which is also the one maximizing the
/// aspiration equivalent. Throws std::logic_error if the two disagree beyond
/// tie tolerance.
DualSelection dual_select(const Curve& lottery, std::span<const Curve> utilities,
                          const numerics::QuadratureSpec& spec = {});

struct Cell {
  std::size_t row;
  std::size_t col;
  double value;
};

struct SaddleResult {
  std::optional<Cell> saddle;  // a column maximum that is also a row minimum
  double maximin;              // max_i min_j
  double minimax;              // min_j max_i
  std::size_t maximin_row;
  std::size_t minimax_col;
};

/// Cell comparisons use this absolute tolerance.
inline constexpr double kSaddleTolerance = 1e-9;

/// Pure-strategy saddle of a payoff matrix where the row player maximizes.
/// Among several saddles the lexicographically smallest (row, col) wins.
SaddleResult find_pure_saddle(const Matrix& payoff);

struct Pairing {
  std::size_t lottery;
  std::size_t utility;
  double eu;
};

struct StageDiagnostic {
  bool pure_saddle;
  double maximin;
  double minimax;
};

struct Allocation {
  std::vector<Pairing> pairs;
  std::vector<StageDiagnostic> stages;
};

/// Saddle-point allocation on a square EU matrix: pair the saddle cell, drop
/// its row and column, repeat. A stage without a pure saddle pairs the
/// maximin row with its minimizing column and is flagged.
Allocation saddle_allocate(const Matrix& eu);

Allocation saddle_allocate(std::span<const Curve> lotteries, std::span<const Curve> utilities,
                           const numerics::QuadratureSpec& spec = {});

struct AllocationSums {
  double sum_ce;
  double sum_ae;
  double sum_eu;
};

/// Throws std::out_of_range for indices outside the matrix.
AllocationSums allocation_sums(const Allocation& allocation, const EvalMatrix& matrix);

}  // namespace aspire
