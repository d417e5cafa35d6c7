#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pitcast {

/// Annual rating transition matrix. The last grade is the absorbing default
/// state; `probs` is row-major, `grades.size()` squared.
struct TransitionMatrix {
  std::vector<std::string> grades;
  std::vector<double> probs;

  [[nodiscard]] std::size_t size() const noexcept { return grades.size(); }
  [[nodiscard]] double at(std::size_t from, std::size_t to) const {
    return probs[from * grades.size() + to];
  }
  [[nodiscard]] std::size_t index_of(const std::string& grade) const;
};

/// Marginal annual TTC PDs, conditional on survival to the start of each
/// year. `marginal_pds[h - 1]` belongs to horizon h.
struct TtcCurve {
  std::vector<double> marginal_pds;

  [[nodiscard]] std::size_t horizons() const noexcept { return marginal_pds.size(); }
  void validate() const;
};

inline constexpr double kRowSumTolerance = 1e-10;

/// Returns the matrix unchanged if it is square with unique labels,
/// non-negative, row-stochastic within 1e-10 and has an absorbing default
/// row. Otherwise throws ValidationError quoting the offending row/column.
TransitionMatrix validate_matrix(TransitionMatrix m);

/// Row-major `power`-th power of the matrix (the identity for power 0).
[[nodiscard]] std::vector<double> matrix_power(const TransitionMatrix& m, std::size_t power);

/// Cumulative default probabilities c_1..c_H of `grade` (default column of
/// the successive matrix powers).
[[nodiscard]] std::vector<double> cumulative_default_probabilities(const TransitionMatrix& m,
                                                                   std::size_t grade,
                                                                   std::size_t horizon_max);

/// Survival-conditional marginal PDs (c_h - c_{h-1}) / (1 - c_{h-1}).
[[nodiscard]] TtcCurve project_ttc_curve(const TransitionMatrix& m, const std::string& grade,
                                         std::size_t horizon_max);

}  // namespace pitcast
