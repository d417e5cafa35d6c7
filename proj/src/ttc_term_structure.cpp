#include "pitcast/ttc_term_structure.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "pitcast/error.hpp"

namespace pitcast {

std::size_t TransitionMatrix::index_of(const std::string& grade) const {
  for (std::size_t i = 0; i < grades.size(); ++i)
    if (grades[i] == grade) return i;
  throw InvalidArgument("unknown grade '" + grade + "'");
}

void TtcCurve::validate() const {
  if (marginal_pds.empty()) throw InvalidArgument("TTC curve is empty");
  for (std::size_t h = 0; h < marginal_pds.size(); ++h) {
    if (!(marginal_pds[h] > 0.0 && marginal_pds[h] < 1.0)) {
      std::ostringstream msg;
      msg << "TTC curve PD at horizon " << h + 1 << " must lie in (0, 1), got "
          << marginal_pds[h];
      throw DomainError(msg.str());
    }
  }
}

TransitionMatrix validate_matrix(TransitionMatrix m) {
  const std::size_t k = m.grades.size();
  if (k < 2) throw ValidationError("transition matrix needs at least one live grade and a default state");
  if (m.probs.size() != k * k) {
    std::ostringstream msg;
    msg << "transition matrix is not square: " << k << " grades but " << m.probs.size()
        << " entries";
    throw ValidationError(msg.str());
  }
  std::set<std::string> seen;
  for (const auto& g : m.grades)
    if (!seen.insert(g).second) throw ValidationError("duplicate grade label '" + g + "'");

  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "transition matrix entry (" << i << ", " << j << ") = " << v
            << " is negative or not finite";
        throw ValidationError(msg.str());
      }
      row += v;
    }
    if (std::abs(row - 1.0) > kRowSumTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "transition matrix row " << i << " ('" << m.grades[i] << "') sums to " << row
          << ", not 1";
      throw ValidationError(msg.str());
    }
  }
  if (m.at(k - 1, k - 1) != 1.0)
    throw ValidationError("default state '" + m.grades[k - 1] + "' is not absorbing");
  return m;
}

std::vector<double> matrix_power(const TransitionMatrix& m, std::size_t power) {
  const std::size_t k = m.size();
  std::vector<double> result(k * k, 0.0), scratch(k * k);
  for (std::size_t i = 0; i < k; ++i) result[i * k + i] = 1.0;
  for (std::size_t p = 0; p < power; ++p) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < k; ++l) s += result[i * k + l] * m.at(l, j);
        scratch[i * k + j] = s;
      }
    result.swap(scratch);
  }
  return result;
}

std::vector<double> cumulative_default_probabilities(const TransitionMatrix& m,
                                                     std::size_t grade,
                                                     std::size_t horizon_max) {
  const std::size_t k = m.size();
  // Only the grade's row of M^h is needed: row_{h} = row_{h-1} * M.
  std::vector<double> row(k, 0.0), next(k);
  row[grade] = 1.0;
  std::vector<double> cumulative;
  cumulative.reserve(horizon_max);
  for (std::size_t h = 1; h <= horizon_max; ++h) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += row[i] * m.at(i, j);
      next[j] = s;
    }
    row.swap(next);
    cumulative.push_back(row[k - 1]);
  }
  return cumulative;
}

TtcCurve project_ttc_curve(const TransitionMatrix& m, const std::string& grade,
                           std::size_t horizon_max) {
  if (horizon_max < 1) throw InvalidArgument("horizon_max must be >= 1");
  const std::size_t g = m.index_of(grade);
  if (g == m.size() - 1) throw InvalidArgument("cannot project the default state itself");

  const auto cumulative = cumulative_default_probabilities(m, g, horizon_max);
  TtcCurve curve;
  curve.marginal_pds.reserve(horizon_max);
  double previous = 0.0;
  for (std::size_t h = 0; h < horizon_max; ++h) {
    const double survival = 1.0 - previous;
    if (!(survival > 0.0)) {
      std::ostringstream msg;
      msg << "grade '" << grade << "' has fully defaulted before horizon " << h + 1;
      throw DomainError(msg.str());
    }
    curve.marginal_pds.push_back((cumulative[h] - previous) / survival);
    previous = cumulative[h];
  }
  curve.validate();
  return curve;
}

}  // namespace pitcast
