#include "aspire/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "aspire/delegation.hpp"
#include "aspire/duality.hpp"
#include "aspire/errors.hpp"

namespace aspire {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.front().size();
  Matrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

EvalMatrix evaluate_matrix(std::span<const Curve> lotteries, std::span<const Curve> utilities,
                           const numerics::QuadratureSpec& spec) {
  const std::size_t n = lotteries.size();
  const std::size_t m = utilities.size();
  EvalMatrix out{{lotteries.begin(), lotteries.end()},
                 {utilities.begin(), utilities.end()},
                 Matrix(n, m),
                 Matrix(n, m),
                 Matrix(n, m),
                 Matrix(n, m)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto where = [&] {
        std::ostringstream os;
        os << "cell (" << i << ", " << j << "): ";
        return os.str();
      };
      DualityResult r{};
      try {
        r = evaluate_pair(lotteries[i], utilities[j], spec);
      } catch (const DomainError& e) {
        throw DomainError(where() + e.what());
      } catch (const NumericError& e) {
        throw NumericError(where() + e.what());
      } catch (const Error& e) {
        throw Error(where() + e.what());
      }
      out.eu(i, j) = r.expected_utility;
      out.edu(i, j) = r.expected_disutility;
      out.ce(i, j) = r.certain_equivalent;
      out.ae(i, j) = r.aspiration_equivalent;
    }
  }
  return out;
}

DualSelection dual_select(const Curve& lottery, std::span<const Curve> utilities,
                          const numerics::QuadratureSpec& spec) {
  if (utilities.empty()) throw std::invalid_argument("dual_select: empty utility list");
  if (lottery.is_step()) throw UnsupportedError("dual_select: step lottery");
  DualSelection out{};
  std::vector<double> negated_eu;
  for (const auto& u : utilities) {
    const double eu = expected_utility(lottery, u, spec);
    out.expected_utilities.push_back(eu);
    negated_eu.push_back(-eu);
    out.aspiration_equivalents.push_back(aspiration_equivalent(lottery, u, spec));
  }
  out.index = argmax_with_ties(negated_eu);
  out.ae_index = argmax_with_ties(out.aspiration_equivalents);
  const double best_ae = out.aspiration_equivalents[out.ae_index];
  if (out.aspiration_equivalents[out.index] < best_ae - kTieTolerance * lottery.domain().span()) {
    throw std::logic_error("dual_select: EU minimizer and AE maximizer disagree");
  }
  return out;
}

SaddleResult find_pure_saddle(const Matrix& payoff) {
  if (payoff.empty()) throw std::invalid_argument("find_pure_saddle: empty matrix");
  const std::size_t n = payoff.rows();
  const std::size_t m = payoff.cols();
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  std::vector<double> col_max(m, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row_min[i] = std::min(row_min[i], payoff(i, j));
      col_max[j] = std::max(col_max[j], payoff(i, j));
    }
  }
  SaddleResult out{std::nullopt, row_min[0], col_max[0], 0, 0};
  for (std::size_t i = 1; i < n; ++i) {
    if (row_min[i] > out.maximin) {
      out.maximin = row_min[i];
      out.maximin_row = i;
    }
  }
  for (std::size_t j = 1; j < m; ++j) {
    if (col_max[j] < out.minimax) {
      out.minimax = col_max[j];
      out.minimax_col = j;
    }
  }
  for (std::size_t i = 0; i < n && !out.saddle; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = payoff(i, j);
      if (v >= col_max[j] - kSaddleTolerance && v <= row_min[i] + kSaddleTolerance) {
        out.saddle = Cell{i, j, v};
        break;
      }
    }
  }
  return out;
}

Allocation saddle_allocate(const Matrix& eu) {
  if (eu.empty() || eu.rows() != eu.cols()) {
    throw std::invalid_argument("saddle_allocate: needs a nonempty square matrix");
  }
  std::vector<std::size_t> rows(eu.rows());
  std::vector<std::size_t> cols(eu.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);

  Allocation out;
  while (!rows.empty()) {
    Matrix sub(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = eu(rows[i], cols[j]);
    }
    const SaddleResult s = find_pure_saddle(sub);
    std::size_t pick_row;
    std::size_t pick_col;
    if (s.saddle) {
      pick_row = s.saddle->row;
      pick_col = s.saddle->col;
    } else {
      pick_row = s.maximin_row;
      pick_col = 0;
      for (std::size_t j = 1; j < cols.size(); ++j) {
        if (sub(pick_row, j) < sub(pick_row, pick_col)) pick_col = j;
      }
    }
    out.pairs.push_back({rows[pick_row], cols[pick_col], sub(pick_row, pick_col)});
    out.stages.push_back({s.saddle.has_value(), s.maximin, s.minimax});
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pick_row));
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pick_col));
  }
  return out;
}

Allocation saddle_allocate(std::span<const Curve> lotteries, std::span<const Curve> utilities,
                           const numerics::QuadratureSpec& spec) {
  if (lotteries.empty() || lotteries.size() != utilities.size()) {
    throw std::invalid_argument("saddle_allocate: needs equal-length nonempty lists");
  }
  Matrix eu(lotteries.size(), utilities.size());
  for (std::size_t i = 0; i < lotteries.size(); ++i) {
    for (std::size_t j = 0; j < utilities.size(); ++j) {
      eu(i, j) = expected_utility(lotteries[i], utilities[j], spec);
    }
  }
  return saddle_allocate(eu);
}

AllocationSums allocation_sums(const Allocation& allocation, const EvalMatrix& matrix) {
  AllocationSums out{0.0, 0.0, 0.0};
  for (const auto& p : allocation.pairs) {
    if (p.lottery >= matrix.eu.rows() || p.utility >= matrix.eu.cols()) {
      throw std::out_of_range("allocation_sums: pairing index outside the matrix");
    }
    out.sum_ce += matrix.ce(p.lottery, p.utility);
    out.sum_ae += matrix.ae(p.lottery, p.utility);
    out.sum_eu += matrix.eu(p.lottery, p.utility);
  }
  return out;
}

}  // namespace aspire
