#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cqed::serialize {

/// Fixed text rendering with 12 significant digits, locale-independent.
std::string format_number(double value);

/// Dense matrix as "i,j,value" rows (row-major, header included).
std::string matrix_csv(const Eigen::MatrixXd& m);

/// Curve table: `columns` names one header per column of `data`.
std::string curve_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace cqed::serialize
