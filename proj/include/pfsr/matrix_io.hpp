#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pfsr/solver.hpp"

namespace pfsr {

// Matrix CSV: comma-separated decimals, one matrix row per line, no header.
// Rows are feature dimensions, columns are samples. Writes carry 17
// significant digits so values round-trip exactly.
DenseMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const DenseMatrix& m);

// Labels: one positive 1-based integer per line.
std::vector<int> load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path,
                 const std::vector<int>& labels);

// Predictions: like labels but kUnclassified is written as '?'.
void save_predictions(const std::filesystem::path& path,
                      const std::vector<int>& labels);
std::vector<int> load_predictions(const std::filesystem::path& path);

// Solver trace with the fixed header iter,objective,r1,r2,dz,h_diff.
void save_trace(const std::filesystem::path& path,
                const std::vector<TraceRow>& trace);
std::vector<TraceRow> load_trace(const std::filesystem::path& path);

// Flat key=value manifest, one pair per line in the given order.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void save_manifest(const std::filesystem::path& path, const Manifest& entries);
Manifest load_manifest(const std::filesystem::path& path);

// %.17g-style shortest-faithful formatting used by every writer.
std::string format_value(double v);

}  // namespace pfsr
