#include "gamlssboost/csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gamlssboost/error.hpp"

namespace gamlssboost {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool any = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(field_quoted ? field : trim(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
    any = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      if (!trim(field).empty()) {
        throw DataError("stray quote in CSV field on line " + std::to_string(line));
      }
      field.clear();
      in_quotes = true;
      field_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
      ++line;
    } else if (c == '\r') {
      // CRLF: the LF ends the record
    } else {
      field += c;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted CSV field");
  if (any || !field.empty() || !record.empty()) end_record();

  if (records.empty()) throw DataError("CSV input is empty");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw DataError("CSV record " + std::to_string(r) + " has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("failed writing '" + path + "'");
}

double parse_number(std::string_view field, std::string_view context) {
  std::string_view s = field;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("non-numeric value '" + std::string(field) + "' in " + std::string(context));
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Dataset dataset_from_csv(const CsvTable& table, const std::string& response) {
  const auto it = std::find(table.header.begin(), table.header.end(), response);
  if (it == table.header.end()) throw DataError("response column '" + response + "' not found");
  const auto response_col = static_cast<std::size_t>(it - table.header.begin());

  Dataset data;
  std::vector<std::size_t> covariate_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == response_col) continue;
    covariate_cols.push_back(c);
    data.names.push_back(table.header[c]);
  }
  const std::size_t n = table.rows.size();
  data.y.resize(n);
  data.X = Matrix(n, covariate_cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = table.rows[i];
    auto cell = [&](std::size_t c) {
      const std::string& f = row[c];
      const std::string context = "column '" + table.header[c] + "', row " + std::to_string(i + 1);
      if (f.empty() || f == "NA" || f == "NaN" || f == "nan") {
        throw DataError("missing value in " + context);
      }
      return parse_number(f, context);
    };
    data.y[i] = cell(response_col);
    for (std::size_t j = 0; j < covariate_cols.size(); ++j) data.X(i, j) = cell(covariate_cols[j]);
  }
  data.validate();
  return data;
}

std::string coefficients_csv(const BoostModel& model) {
  double mu0 = model.offset_mu;
  double sigma0 = model.offset_sigma;
  for (std::size_t j = 0; j < model.num_covariates(); ++j) {
    mu0 += model.coef_mu[j].intercept;
    sigma0 += model.coef_sigma[j].intercept;
  }
  std::string out = "term,eta_mu,eta_sigma\n";
  out += "(Intercept)," + format_double(mu0) + "," + format_double(sigma0) + "\n";
  for (std::size_t j = 0; j < model.num_covariates(); ++j) {
    out += quote_if_needed(model.names.at(j)) + "," + format_double(model.coef_mu[j].slope) + "," +
           format_double(model.coef_sigma[j].slope) + "\n";
  }
  return out;
}

std::string trace_csv(const BoostModel& model) {
  std::string out = "m,k_star,j_star,nu_star,nu,delta_rho_mu,delta_rho_sigma,risk_after,boundary_hit\n";
  for (const auto& r : model.trace) {
    out += std::to_string(r.m) + "," + std::string(to_string(r.k_star)) + "," +
           quote_if_needed(model.names.at(r.j_star)) + "," + format_double(r.nu_star) + "," +
           format_double(r.nu) + "," + format_double(r.delta_rho_mu) + "," +
           format_double(r.delta_rho_sigma) + "," + format_double(r.risk_after) + "," +
           (r.boundary_hit ? "1" : "0") + "\n";
  }
  return out;
}

std::string risk_path_csv(const std::vector<double>& path) {
  std::string out = "m,risk\n";
  for (std::size_t m = 0; m < path.size(); ++m) {
    out += std::to_string(m) + "," + format_double(path[m]) + "\n";
  }
  return out;
}

std::string cv_curve_csv(const CvResult& cv) {
  std::string out = "m,mean_out_of_fold_risk\n";
  for (std::size_t m = 0; m < cv.mean_risk.size(); ++m) {
    out += std::to_string(m) + "," + format_double(cv.mean_risk[m]) + "\n";
  }
  return out;
}

std::vector<std::string> study_columns() {
  std::vector<std::string> cols = {"run", "policy", "data_seed", "status"};
  const auto& metrics = sim_metric_names();
  cols.insert(cols.end(), metrics.begin(), metrics.end());
  return cols;
}

std::string study_csv(const std::vector<StudyRow>& rows) {
  const auto cols = study_columns();
  std::string out;
  for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + cols[c];
  out += "\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out += std::to_string(r.run) + "," + std::string(to_string(r.policy)) + "," +
           std::to_string(r.data_seed) + "," + (r.ok ? "ok" : "failed") + ",";
    if (r.ok) {
      out += format_double(m.mse_mu) + "," + format_double(m.mse_sigma) + "," +
             format_double(m.in_sample_mse) + "," + std::to_string(m.fp_mu) + "," +
             std::to_string(m.fp_sigma) + "," + std::to_string(m.fn_mu) + "," +
             std::to_string(m.fn_sigma) + "," + format_double(m.p_m_mu) + "," +
             std::to_string(m.m_stop_used);
    } else {
      out += ",,,,,,,,";
    }
    out += "\n";
  }
  return out;
}

CoefficientTable parse_coefficients_csv(std::string_view text) {
  const auto table = parse_csv(text);
  if (table.header != std::vector<std::string>{"term", "eta_mu", "eta_sigma"}) {
    throw DataError("coefficient table must have header term,eta_mu,eta_sigma");
  }
  if (table.rows.empty() || table.rows.front()[0] != "(Intercept)") {
    throw DataError("coefficient table must start with the (Intercept) row");
  }
  CoefficientTable out;
  out.intercept_mu = parse_number(table.rows[0][1], "intercept eta_mu");
  out.intercept_sigma = parse_number(table.rows[0][2], "intercept eta_sigma");
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    out.names.push_back(row[0]);
    out.slope_mu.push_back(parse_number(row[1], "eta_mu of " + row[0]));
    out.slope_sigma.push_back(parse_number(row[2], "eta_sigma of " + row[0]));
  }
  return out;
}

PredictorPair table_predictors(const CoefficientTable& table, const Matrix& Xnew) {
  if (Xnew.cols() != table.names.size()) {
    throw DimensionError("coefficient table has " + std::to_string(table.names.size()) +
                         " covariates but data has " + std::to_string(Xnew.cols()));
  }
  PredictorPair eta(Xnew.rows(), table.intercept_mu, table.intercept_sigma);
  for (std::size_t j = 0; j < Xnew.cols(); ++j) {
    const auto x = Xnew.col(j);
    for (std::size_t i = 0; i < Xnew.rows(); ++i) {
      eta.eta_mu[i] += table.slope_mu[j] * x[i];
      eta.eta_sigma[i] += table.slope_sigma[j] * x[i];
    }
  }
  return eta;
}

}  // namespace gamlssboost
