#include "pitcast/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "pitcast/error.hpp"

namespace pitcast {

namespace {

std::string at(const std::string& source, std::size_t row, std::size_t col) {
  std::ostringstream s;
  s << source << ": row " << row << ", column " << col;
  return s.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view text, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw IoError(where + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw IoError("missing column '" + std::string(name) + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, kSignificantDigits);
  if (ec != std::errc{}) throw Error(ErrorCategory::kInternal, "number formatting failed");
  return std::string(buf, ptr);
}

double parse_number(std::string_view text, const std::string& where) {
  if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw IoError(where + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

CsvTable read_csv(std::istream& in, const std::string& source, RowWidth width) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    const std::size_t expected =
        table.header.size() + (width == RowWidth::kHeaderPlusOne ? 1 : 0);
    if (fields.size() != expected && !(width == RowWidth::kHeaderPlusOne &&
                                       fields.size() == table.header.size())) {
      std::ostringstream msg;
      msg << source << ": row " << line_no << " has " << fields.size() << " fields, expected "
          << expected;
      throw IoError(msg.str());
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw IoError(source + ": empty file");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path, RowWidth width) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_csv(in, path.string(), width);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, table);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

PortfolioSnapshot snapshot_from_csv(const CsvTable& table, const std::string& source) {
  const std::size_t id_col = table.column("obligor_id");
  const std::size_t pd_col = table.column("ttc_pd");
  const std::size_t def_col = table.column("defaulted");
  PortfolioSnapshot snapshot;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = r + 2;
    snapshot.obligor_ids.push_back(row[id_col]);
    const double pd = parse_number(row[pd_col], at(source, line, pd_col + 1));
    if (!(pd > 0.0 && pd < 1.0))
      throw IoError(at(source, line, pd_col + 1) + ": TTC PD must lie in (0, 1)");
    snapshot.ttc_pds.push_back(pd);
    const auto flag = parse_count(row[def_col], at(source, line, def_col + 1));
    if (flag > 1) throw IoError(at(source, line, def_col + 1) + ": defaulted must be 0 or 1");
    snapshot.defaults += flag;
  }
  snapshot.validate();
  return snapshot;
}

CsvTable snapshot_to_csv(const PortfolioSnapshot& snapshot, const std::vector<bool>& defaulted) {
  CsvTable table;
  table.header = {"obligor_id", "ttc_pd", "defaulted"};
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    table.rows.push_back({snapshot.obligor_ids.empty() ? std::to_string(i + 1)
                                                       : snapshot.obligor_ids[i],
                          format_number(snapshot.ttc_pds[i]), defaulted[i] ? "1" : "0"});
  }
  return table;
}

TransitionMatrix transition_matrix_from_csv(const CsvTable& table, const std::string& source) {
  if (table.rows.empty()) throw IoError(source + ": transition matrix has no rows");
  const std::size_t width = table.rows.front().size();
  std::vector<std::string> labels = table.header;
  if (labels.size() == width) labels.erase(labels.begin());  // corner cell
  const std::size_t k = labels.size();
  if (width != k + 1)
    throw IoError(source + ": rows must be from_grade followed by one probability per grade");
  if (table.rows.size() != k) {
    std::ostringstream msg;
    msg << source << ": " << k << " grade labels but " << table.rows.size() << " rows";
    throw IoError(msg.str());
  }

  TransitionMatrix m;
  m.grades = labels;
  m.probs.assign(k * k, 0.0);
  std::vector<bool> filled(k, false);
  for (std::size_t r = 0; r < k; ++r) {
    const auto& row = table.rows[r];
    std::size_t from = k;
    for (std::size_t g = 0; g < k; ++g)
      if (labels[g] == row[0]) from = g;
    if (from == k) throw IoError(at(source, r + 2, 1) + ": unknown grade '" + row[0] + "'");
    if (filled[from]) throw IoError(at(source, r + 2, 1) + ": duplicate row for '" + row[0] + "'");
    filled[from] = true;
    for (std::size_t c = 0; c < k; ++c) {
      const double v = parse_number(row[c + 1], at(source, r + 2, c + 2));
      if (std::isnan(v)) throw IoError(at(source, r + 2, c + 2) + ": missing probability");
      m.probs[from * k + c] = v;
    }
  }
  return validate_matrix(std::move(m));
}

std::vector<TtcCurve> ttc_curves_from_csv(const CsvTable& table,
                                          const PortfolioSnapshot& snapshot,
                                          const std::string& source) {
  const std::size_t id_col = table.column("obligor_id");
  const std::size_t h_col = table.column("horizon");
  const std::size_t pd_col = table.column("ttc_pd");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < snapshot.size(); ++i)
    index[snapshot.obligor_ids.empty() ? std::to_string(i + 1) : snapshot.obligor_ids[i]] = i;

  std::vector<std::map<std::uint64_t, double>> by_horizon(snapshot.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto it = index.find(row[id_col]);
    if (it == index.end())
      throw IoError(at(source, r + 2, id_col + 1) + ": obligor '" + row[id_col] +
                    "' is not in the snapshot");
    const auto h = parse_count(row[h_col], at(source, r + 2, h_col + 1));
    if (h < 1) throw IoError(at(source, r + 2, h_col + 1) + ": horizons start at 1");
    const double pd = parse_number(row[pd_col], at(source, r + 2, pd_col + 1));
    if (!by_horizon[it->second].emplace(h, pd).second)
      throw IoError(at(source, r + 2, h_col + 1) + ": duplicate horizon");
  }

  std::vector<TtcCurve> curves(snapshot.size());
  for (const auto& [id, i] : index) {
    const auto& points = by_horizon[i];
    std::uint64_t expected = 1;
    for (const auto& [h, pd] : points) {
      if (h != expected)
        throw IoError(source + ": obligor '" + id + "' has a gap in its horizons");
      curves[i].marginal_pds.push_back(pd);
      ++expected;
    }
    if (points.empty()) throw IoError(source + ": no TTC curve for obligor '" + id + "'");
    curves[i].validate();
  }
  return curves;
}

}  // namespace pitcast
