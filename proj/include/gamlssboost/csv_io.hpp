#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gamlssboost/boosting.hpp"
#include "gamlssboost/cross_validation.hpp"
#include "gamlssboost/dataset.hpp"
#include "gamlssboost/simulation.hpp"

namespace gamlssboost {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 style parser: comma separated, optional double quotes with ""
/// escapes, LF or CRLF line ends. Every row must have as many fields as the
/// header. Throws DataError on malformed input.
CsvTable parse_csv(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Locale-independent number parsing of a whole field. Throws DataError.
double parse_number(std::string_view field, std::string_view context);

/// 17 significant digits, so every double round-trips.
std::string format_double(double v);

/// The response column becomes y; all other columns become covariates.
/// Empty or NA fields and non-numeric entries are rejected.
Dataset dataset_from_csv(const CsvTable& table, const std::string& response);

std::string coefficients_csv(const BoostModel& model);
std::string trace_csv(const BoostModel& model);
std::string risk_path_csv(const std::vector<double>& path);
std::string cv_curve_csv(const CvResult& cv);
std::string study_csv(const std::vector<StudyRow>& rows);

/// Column names of study_csv, in order.
std::vector<std::string> study_columns();

/// Coefficient table as written by coefficients_csv.
struct CoefficientTable {
  std::vector<std::string> names;
  double intercept_mu = 0.0;
  double intercept_sigma = 0.0;
  std::vector<double> slope_mu;
  std::vector<double> slope_sigma;
};

CoefficientTable parse_coefficients_csv(std::string_view text);

/// Predictors eta_mu, eta_sigma for Xnew from a coefficient table.
PredictorPair table_predictors(const CoefficientTable& table, const Matrix& Xnew);

}  // namespace gamlssboost
