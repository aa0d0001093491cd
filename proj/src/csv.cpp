#include "optmed/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace optmed {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  CsvTable table;
  for (const auto& f : split_line(line)) table.header.push_back(trimmed(f));
  if (table.header.empty()) throw ParseError(path + ": empty header");
  const std::size_t ncol = table.header.size();

  std::vector<double> data;
  std::size_t nrow = 0;
  for (std::size_t row = 2; std::getline(in, line); ++row) {
    if (trimmed(line).empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != ncol)
      throw ParseError(path + ": row " + std::to_string(row) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(ncol));
    for (std::size_t col = 0; col < ncol; ++col) {
      const std::string cell = trimmed(fields[col]);
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError(path + ": non-numeric value '" + cell + "' at row " +
                         std::to_string(row) + ", column " +
                         table.header[col]);
      data.push_back(v);
    }
    ++nrow;
  }
  if (nrow == 0) throw ParseError(path + ": no data rows");

  table.values.resize(static_cast<Eigen::Index>(nrow),
                      static_cast<Eigen::Index>(ncol));
  for (std::size_t r = 0; r < nrow; ++r)
    for (std::size_t c = 0; c < ncol; ++c)
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          data[r * ncol + c];
  return table;
}

Dataset dataset_from_table(const CsvTable& table, const std::string& treatment,
                           const std::string& outcome) {
  auto col_of = [&](const std::string& name) {
    const auto it =
        std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
      throw SchemaMismatch("column not found: " + name);
    return static_cast<Eigen::Index>(it - table.header.begin());
  };
  const Eigen::Index ca = col_of(treatment);
  const Eigen::Index cy = col_of(outcome);
  if (ca == cy) throw SchemaMismatch("treatment and outcome are the same column");

  Dataset d;
  d.A = table.values.col(ca);
  d.Y = table.values.col(cy);
  const Eigen::Index p = table.values.cols() - 2;
  if (p < 1) throw SchemaMismatch("no mediator columns in input");
  d.X.resize(table.values.rows(), p);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
    if (j == ca || j == cy) continue;
    d.X.col(k) = table.values.col(j);
    d.names.push_back(table.header[static_cast<std::size_t>(j)]);
    ++k;
  }
  return d;
}

}  // namespace optmed
