#pragma once

#include <string>

#include "robustgauss/model.hpp"

namespace robustgauss {

/// Matrix text format: one row per line, comma-separated decimal values.
/// Blank lines and lines starting with '#' are skipped. Parse failures throw
/// IoError naming the file and line.
Mat read_matrix_file(const std::string& path);

/// A vector is a matrix file with a single row or a single column.
Vec read_vector_file(const std::string& path);

void write_matrix_file(const std::string& path, const Mat& m);
void write_vector_file(const std::string& path, const Vec& v);

/// Dataset CSV: header "y,x1,...,xd", then one sample per line with y first.
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Decimal with 12 significant digits (the CLI output convention).
std::string format_sig(double v);

}  // namespace robustgauss
