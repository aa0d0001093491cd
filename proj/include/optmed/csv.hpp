#pragma once

#include <string>
#include <vector>

#include "optmed/core_stats.hpp"

namespace optmed {

// Comma-separated, header required, '.' decimal, no quoting of numerics.
struct CsvTable {
  std::vector<std::string> header;
  MatrixXd values;  // data rows x columns
};

CsvTable read_csv(const std::string& path);

// Split a table into treatment / mediators / outcome by column name.
// Every column other than the two named ones becomes a mediator.
Dataset dataset_from_table(const CsvTable& table, const std::string& treatment,
                           const std::string& outcome);

}  // namespace optmed
