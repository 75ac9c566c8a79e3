#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/legendre.hpp"
#include "mfxpf/measure.hpp"
#include "mfxpf/partition.hpp"
#include "mfxpf/regression.hpp"

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace mfxpf {

std::chrono::year_month_day parse_date(const std::string& text);
std::string format_date(const std::chrono::year_month_day& date);

/// Two-column `date,close` CSV with a header row; rows that fail to parse
/// are rejected with their row number.
PriceSeries read_price_csv(const std::filesystem::path& path);

/// Single-column value CSV, optional `value` header.
std::vector<double> read_value_csv(const std::filesystem::path& path);
void write_value_csv(const std::filesystem::path& path, const std::vector<double>& values);

/// Long-form partition CSV: p,q,s,chi,zero_boxes.
void write_partition_csv(const std::filesystem::path& path, const PartitionTable& table);

/// Dense matrix CSV: first row lists q values, first column p values.
void write_matrix_csv(const std::filesystem::path& path, const MomentGrid& grid,
                      const std::vector<double>& values);

/// Long-form spectrum CSV: p,q,alpha_x,alpha_y,f.
void write_spectrum_csv(const std::filesystem::path& path, const JointSpectrum& spectrum);

/// JSON (de)serialization of the partition table; round-trips bit-exactly.
nlohmann::json partition_to_json(const PartitionTable& table);
PartitionTable partition_from_json(const nlohmann::json& j);
void write_partition_json(const std::filesystem::path& path, const PartitionTable& table);
PartitionTable read_partition_json(const std::filesystem::path& path);

/// Dense surface matrix written by write_matrix_csv, read back with its grid.
std::pair<MomentGrid, std::vector<double>> read_matrix_csv(const std::filesystem::path& path);

} // namespace mfxpf
