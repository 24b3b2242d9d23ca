// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mmcs/capture.hpp"

namespace mmcs {

// Capture container, all integers and floats little endian:
//   bytes 0..7   magic "MMWCAP01"
//   bytes 8..11  u32 length of the JSON metadata document
//   ...          UTF-8 JSON: {"config": {...}, "grid": {...}, "meta": {...}}
//   ...          tensor payload, one (re, im) pair of 32-bit floats per entry,
//                tone index fastest, then RX beam, then TX beam.
// Calibration files use magic "MMWCAL01", metadata {"num_tones": N} and a
// payload of N float pairs.

inline constexpr std::string_view kCaptureMagic = "MMWCAP01";
inline constexpr std::string_view kCalibrationMagic = "MMWCAL01";

MeasurementCapture load_capture(const std::filesystem::path& path);

/// Validates fully (dimensions, finite entries, f32-representable values)
/// before any bytes are written; the write itself is temp file + rename.
void save_capture(const MeasurementCapture& capture, const std::filesystem::path& path);

CalibrationProfile load_calibration(const std::filesystem::path& path);
void save_calibration(const CalibrationProfile& cal, const std::filesystem::path& path);

/// Human-readable dump: two header lines (magic, metadata JSON) followed by
/// one "itx irx itone re im" line per tensor entry at f32 precision.
std::string capture_to_text(const MeasurementCapture& capture);
MeasurementCapture capture_from_text(const std::string& text);

/// True if the file starts with the binary capture magic.
bool file_has_capture_magic(const std::filesystem::path& path);

/// Write-to-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace mmcs
