#pragma once

#include <string>
#include <vector>

#include "depcov/types.hpp"

// CSV exchange format. Distributions are `x,y,p` with one atom per row,
// samples are `x,y` with one observation per row. The header row is
// mandatory and matched exactly; rows and columns in error messages are
// 1-based with the header as row 1.

namespace depcov {

// Shortest decimal string that round-trips the double.
std::string format_double(double v);

DiscreteBivariate read_distribution_csv(const std::string& path);
PairedSample read_sample_csv(const std::string& path);

void write_distribution_csv(const std::string& path, const DiscreteBivariate& dist);
void write_sample_csv(const std::string& path, const PairedSample& sample);

// Generic numeric table, for derived outputs like sweep curves.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace depcov
