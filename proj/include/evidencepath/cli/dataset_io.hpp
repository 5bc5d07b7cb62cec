#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evidencepath/core.hpp"
#include "evidencepath/models/biopathway.hpp"

namespace evidencepath {

enum class BenchmarkName { RADIATA, PIMA, RADIOCARBON, GALAXY, GGM, BIOPATHWAY };

BenchmarkName benchmark_from_name(const std::string& name);
std::string benchmark_name(BenchmarkName b);

/// Raw CSV: header row plus string cells. Parsing failures carry the
/// offending line number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Load and standardise a benchmark dataset:
///   radiata     columns y,x,z; covariates mean-centred, intercept added
///   pima        columns npreg,glu,bp,skin,bmi,ped,age,type; the model
///               covariates are z-scored (1/n variance), intercept added
///   radiocarbon columns cal_age,rc_age; both z-scored
///   galaxy      column velocity; divided by 1000
/// Row counts other than the documented n produce a warning on stderr.
Dataset load_dataset(const std::string& path, BenchmarkName benchmark);

/// GradientData round trip, columns gene,condition,timepoint,concentration,
/// gradient.
void save_gradient_data(const GradientData& data, const std::string& path);
GradientData load_gradient_data(const std::string& path);

/// RFC 4180 style writer: CRLF line endings, fields joined by commas.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& lines);

/// Shortest representation that round-trips a double.
std::string format_double(double v);

}  // namespace evidencepath
