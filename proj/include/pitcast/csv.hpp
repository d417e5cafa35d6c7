#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pitcast/factor_model.hpp"
#include "pitcast/ttc_term_structure.hpp"

namespace pitcast {

/// Plain comma-separated table: no quoting, no embedded commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const;
};

inline constexpr int kSignificantDigits = 12;

/// Shortest-form general notation at 12 significant digits, independent of
/// the C locale. NaN is written as an empty field.
[[nodiscard]] std::string format_number(double value);

/// Inverse of format_number. `where` prefixes error messages.
[[nodiscard]] double parse_number(std::string_view text, const std::string& where);

enum class RowWidth {
  kHeader,        // every row has exactly as many fields as the header
  kHeaderPlusOne  // transition-matrix layout: a row label before each row
};

/// Reads a table. Widths other than `width` are reported with their line.
[[nodiscard]] CsvTable read_csv(std::istream& in, const std::string& source,
                                RowWidth width = RowWidth::kHeader);
[[nodiscard]] CsvTable read_csv_file(const std::filesystem::path& path,
                                     RowWidth width = RowWidth::kHeader);
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);

/// `obligor_id,ttc_pd,defaulted` with defaulted in {0, 1}.
[[nodiscard]] PortfolioSnapshot snapshot_from_csv(const CsvTable& table,
                                                  const std::string& source);
[[nodiscard]] CsvTable snapshot_to_csv(const PortfolioSnapshot& snapshot,
                                       const std::vector<bool>& defaulted);

/// Header of grade labels (optionally preceded by a corner cell), then one
/// row per source grade: `from_grade,p_1,...,p_k`. The last label is the
/// default state. The result is validated.
[[nodiscard]] TransitionMatrix transition_matrix_from_csv(const CsvTable& table,
                                                          const std::string& source);

/// `obligor_id,horizon,ttc_pd` rows, reassembled in the snapshot's obligor order.
[[nodiscard]] std::vector<TtcCurve> ttc_curves_from_csv(const CsvTable& table,
                                                        const PortfolioSnapshot& snapshot,
                                                        const std::string& source);

}  // namespace pitcast
