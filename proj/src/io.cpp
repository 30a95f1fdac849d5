#include "gqc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gqc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

json cm_to_json(const CovarianceMatrix& cm) {
  const int dim = 2 * cm.modes();
  json rows = json::array();
  for (int i = 0; i < dim; ++i) {
    json row = json::array();
    for (int j = 0; j < dim; ++j) row.push_back(cm.matrix()(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"n_modes", cm.modes()}, {"entries", std::move(rows)}};
}

CovarianceMatrix cm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_modes") || !j.contains("entries")) {
    throw std::invalid_argument("cm_from_json: expected {n_modes, entries}");
  }
  const int n = j.at("n_modes").get<int>();
  const int dim = 2 * n;
  const json& e = j.at("entries");
  Matrix m(dim, dim);
  if (e.is_array() && !e.empty() && e.front().is_array()) {
    if (static_cast<int>(e.size()) != dim) {
      throw std::invalid_argument("cm_from_json: row count does not match n_modes");
    }
    for (int i = 0; i < dim; ++i) {
      if (static_cast<int>(e[i].size()) != dim) {
        throw std::invalid_argument("cm_from_json: ragged entries");
      }
      for (int jj = 0; jj < dim; ++jj) m(i, jj) = e[i][jj].get<double>();
    }
  } else if (e.is_array() && static_cast<int>(e.size()) == dim * dim) {
    for (int i = 0; i < dim; ++i)
      for (int jj = 0; jj < dim; ++jj) m(i, jj) = e[i * dim + jj].get<double>();
  } else {
    throw std::invalid_argument("cm_from_json: entries must be a 2n x 2n array (nested or flat)");
  }
  return CovarianceMatrix(std::move(m), 1e-9);
}

void cm_to_csv(const CovarianceMatrix& cm, std::ostream& out) {
  const int dim = 2 * cm.modes();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (j) out << ',';
      out << format_double(cm.matrix()(i, j));
    }
    out << '\n';
  }
}

CovarianceMatrix cm_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == ',')) ++p;
      if (p >= end) break;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw std::invalid_argument("cm_from_csv: malformed number in line: " + line);
      }
      row.push_back(v);
      p = next;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int dim = static_cast<int>(rows.size());
  if (dim == 0 || dim % 2 != 0) {
    throw std::invalid_argument("cm_from_csv: expected an even number of rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(rows[i].size()) != dim) {
      throw std::invalid_argument("cm_from_csv: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " columns, expected " +
                                  std::to_string(dim));
    }
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  }
  return CovarianceMatrix(std::move(m), 1e-9);
}

CovarianceMatrix cm_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cm_from_file: cannot open " + path);
  // sniff: JSON objects start with '{'
  char first = 0;
  in >> std::ws;
  in.get(first);
  in.unget();
  if (first == '{') {
    json j;
    in >> j;
    return cm_from_json(j);
  }
  return cm_from_csv(in);
}

json measurement_to_json(const MeasurementSpec& meas) {
  json j{{"kind", to_string(meas.kind)}, {"theta", meas.theta}};
  if (meas.kind == MeasurementKind::heterodyne || meas.kind == MeasurementKind::general) {
    j["lambda"] = meas.lambda;
  }
  return j;
}

json report_to_json(const CorrelationReport& report) {
  auto case_name = [](EminCase c) {
    return c == EminCase::general_case ? "general_case" : "homodyne_case";
  };
  return json{{"mutual_information", report.mutual_information},
              {"j_left", report.j_left},
              {"j_right", report.j_right},
              {"d_left", report.d_left},
              {"d_right", report.d_right},
              {"emin_left", report.emin_left},
              {"emin_right", report.emin_right},
              {"meas_left", measurement_to_json(report.meas_left)},
              {"meas_right", measurement_to_json(report.meas_right)},
              {"case_left", case_name(report.case_left)},
              {"case_right", case_name(report.case_right)}};
}

json geof_to_json(const GeofResult& result) {
  json j{{"value", result.value}};
  switch (result.method) {
    case GeofMethod::pure_closed_form: j["method"] = "pure_closed_form"; break;
    case GeofMethod::numeric_minimizer: j["method"] = "numeric_minimizer"; break;
    case GeofMethod::duality: j["method"] = "duality"; break;
  }
  if (result.method == GeofMethod::numeric_minimizer) {
    j["witness"] = {{"r_star", result.r_star},
                    {"locals", result.locals},
                    {"bracket_consistent", result.bracket_consistent}};
  }
  if (result.method == GeofMethod::duality && result.sigma_ab) {
    json w;
    w["mode_order"] = "ancilla appended after the original modes; sigma_ab keeps (mode 0, ancilla)";
    const Matrix& ab = *result.sigma_ab;
    json rows = json::array();
    for (int i = 0; i < ab.rows(); ++i) {
      json row = json::array();
      for (int jj = 0; jj < ab.cols(); ++jj) row.push_back(ab(i, jj));
      rows.push_back(std::move(row));
    }
    w["sigma_ab"] = std::move(rows);
    if (result.emin) {
      w["emin"] = result.emin->value;
      w["measurement"] = measurement_to_json(result.emin->meas);
    }
    j["witness"] = std::move(w);
  }
  return j;
}

}  // namespace gqc
