#pragma once

#include <filesystem>
#include <vector>

#include "stormtrack/grid.hpp"

namespace stormtrack {

// PGRD container, little-endian:
//   magic "PGRD" | version u32 = 1 | nx u32 | ny u32 | nt u32
//   | cell_km f64 | dt_hours f64 | origin_lon f64 | origin_lat f64
//   | t0_len u32 | t0 (UTF-8 ISO-8601, t0_len bytes)
//   | mask u8[nx*ny] (1 = valid), row-major, row 0 southernmost
//   | nt grids, each f32[nx*ny] row-major; masked cells hold -1.0

inline constexpr std::uint32_t kPgrdVersion = 1;

/// Reads a PGRD file. Throws DataError: "format error" on bad magic/version,
/// "corrupt file" on truncation or sentinel mismatch, "invalid data" on
/// negative or non-finite unmasked values.
FieldSeries read_series(const std::filesystem::path& path);

/// Writes the PGRD byte layout exactly. Validates the series first; nothing
/// is written if validation fails.
void write_series(const FieldSeries& series, const std::filesystem::path& path);

/// Assembles a series from one CSV grid per timestep (rows south to north,
/// comma-separated, ny rows of nx values). An optional mask CSV of 0/1 flags
/// marks invalid cells; without it every cell is valid.
FieldSeries series_from_csv(const std::vector<std::filesystem::path>& grid_csvs,
                            double cell_km, const std::string& t0, double dt_hours,
                            double origin_lon = 0.0, double origin_lat = 0.0,
                            const std::filesystem::path& mask_csv = {});

}  // namespace stormtrack
