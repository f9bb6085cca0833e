#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvgcca/dataset.hpp"
#include "mvgcca/linalg.hpp"

namespace mvgcca {

// Headerless numeric CSV; one sample per row. Values are written with 17
// significant digits so a save/load round trip is bitwise exact.
Matrix load_csv_matrix(const std::string& path);
void save_csv_matrix(const Matrix& values, const std::string& path);

/// Loads one CSV per view (N rows x D_m columns each) and transposes to
/// the internal D_m x N column-per-sample orientation. All files must
/// agree on N; parse errors name file, row, and column.
MultiviewDataset load_dataset(const std::vector<std::string>& paths);

/// Inverse of load_dataset (writes N rows x D_m columns per view).
void save_dataset(const MultiviewDataset& data, const std::vector<std::string>& paths);

/// Labels CSV of `id,label` lines; ids must cover 0..N-1 exactly once.
std::vector<int> load_labels(const std::string& path, Index expected_n);
void save_labels(const std::vector<int>& labels, const std::string& path);

/// FNV-1a over the matrix shape and raw entry bytes.
std::uint64_t matrix_hash(const Matrix& values);
std::string hash_string(std::uint64_t hash);

std::string format_double(double value);

}  // namespace mvgcca
