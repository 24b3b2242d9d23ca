// SPDX-License-Identifier: Apache-2.0

#include "mmcs/capture_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmcs/errors.hpp"

namespace mmcs {
namespace {

using nlohmann::json;

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

class Reader {
 public:
  explicit Reader(const std::string& data) : data_(data) {}

  std::string_view take(std::size_t n, const char* what) {
    if (pos_ + n > data_.size()) {
      throw FormatError(std::string("truncated file while reading ") + what);
    }
    std::string_view v(data_.data() + pos_, n);
    pos_ += n;
    return v;
  }

  std::uint32_t take_u32(const char* what) {
    auto v = take(4, what);
    return static_cast<std::uint32_t>(static_cast<unsigned char>(v[0])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(v[1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(v[2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(v[3])) << 24;
  }

  float take_f32(const char* what) { return std::bit_cast<float>(take_u32(what)); }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
};

float to_f32_checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DataError(std::string(what) + ": non-finite value");
  float f = static_cast<float>(v);
  if (!std::isfinite(f)) throw DataError(std::string(what) + ": value exceeds 32-bit float range");
  return f;
}

// Snaps a parsed value to 32-bit float precision so text loads match binary
// loads bit for bit.  The volatile store keeps the narrowing from being
// optimized away (GCC 11 at -O3 drops a bare double->float->double cast chain
// after stream extraction).
double snap_to_f32(double v) {
  volatile float f = static_cast<float>(v);
  return static_cast<double>(f);
}

json metadata_json(const MeasurementCapture& c) {
  return json{
      {"config",
       {{"center_freq_hz", c.config.center_freq_hz},
        {"num_tones", c.config.num_tones},
        {"tone_spacing_hz", c.config.tone_spacing_hz},
        {"tx_eirp_dbm", c.config.tx_eirp_dbm},
        {"link_budget_offset_db", c.config.link_budget_offset_db}}},
      {"grid",
       {{"tx_azimuths_deg", c.grid.tx_azimuths_deg},
        {"rx_azimuths_deg", c.grid.rx_azimuths_deg},
        {"elevation_deg", c.grid.elevation_deg}}},
      {"meta",
       {{"location_id", c.meta.location_id},
        {"tx_rx_distance_m", c.meta.tx_rx_distance_m},
        {"scenario", to_string(c.meta.scenario)},
        {"rx_orientation_set", c.meta.rx_orientation_set}}}};
}

MeasurementCapture capture_from_metadata(const json& doc) {
  MeasurementCapture c;
  try {
    const json& cfg = doc.at("config");
    c.config.center_freq_hz = cfg.at("center_freq_hz").get<double>();
    c.config.num_tones = cfg.at("num_tones").get<int>();
    c.config.tone_spacing_hz = cfg.at("tone_spacing_hz").get<double>();
    c.config.tx_eirp_dbm = cfg.at("tx_eirp_dbm").get<double>();
    c.config.link_budget_offset_db = cfg.at("link_budget_offset_db").get<double>();
    const json& grid = doc.at("grid");
    c.grid.tx_azimuths_deg = grid.at("tx_azimuths_deg").get<std::vector<double>>();
    c.grid.rx_azimuths_deg = grid.at("rx_azimuths_deg").get<std::vector<double>>();
    c.grid.elevation_deg = grid.at("elevation_deg").get<double>();
    const json& meta = doc.at("meta");
    c.meta.location_id = meta.at("location_id").get<std::string>();
    c.meta.tx_rx_distance_m = meta.at("tx_rx_distance_m").get<double>();
    c.meta.scenario = scenario_from_string(meta.at("scenario").get<std::string>());
    c.meta.rx_orientation_set = meta.at("rx_orientation_set").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad capture metadata: ") + e.what());
  }
  return c;
}

json parse_metadata(std::string_view text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw FormatError(std::string(what) + ": unparseable metadata JSON");
  return doc;
}

std::string serialize_capture(const MeasurementCapture& c) {
  std::string meta = metadata_json(c).dump();
  std::string out;
  out.reserve(kCaptureMagic.size() + 4 + meta.size() + c.h.size() * 8);
  out.append(kCaptureMagic);
  put_u32(out, static_cast<std::uint32_t>(meta.size()));
  out.append(meta);
  for (const auto& v : c.h) {
    put_f32(out, to_f32_checked(v.real(), "capture tensor"));
    put_f32(out, to_f32_checked(v.imag(), "capture tensor"));
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failed: " + path.string());
  return std::move(ss).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.good()) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("rename failed: " + path.string() + ": " + ec.message());
  }
}

MeasurementCapture load_capture(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  Reader r(data);
  if (r.take(kCaptureMagic.size(), "magic") != kCaptureMagic) {
    throw FormatError("not a capture file (bad magic): " + path.string());
  }
  std::uint32_t meta_len = r.take_u32("metadata length");
  MeasurementCapture c = capture_from_metadata(
      parse_metadata(r.take(meta_len, "metadata"), "capture"));
  validate(c.config);
  validate(c.grid);
  validate(c.meta);

  const std::size_t n = c.grid.tx_count() * c.grid.rx_count() *
                        static_cast<std::size_t>(c.config.num_tones);
  if (r.remaining() != n * 8) {
    throw DimensionError("capture payload size does not match declared dimensions");
  }
  c.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double re = r.take_f32("tensor");
    double im = r.take_f32("tensor");
    c.h[i] = {re, im};
  }
  validate(c);  // rejects NaN payloads
  return c;
}

void save_capture(const MeasurementCapture& capture, const std::filesystem::path& path) {
  validate(capture);
  write_file_atomic(path, serialize_capture(capture));
}

CalibrationProfile load_calibration(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  Reader r(data);
  if (r.take(kCalibrationMagic.size(), "magic") != kCalibrationMagic) {
    throw FormatError("not a calibration file (bad magic): " + path.string());
  }
  std::uint32_t meta_len = r.take_u32("metadata length");
  json doc = parse_metadata(r.take(meta_len, "calibration"), "calibration");
  int num_tones = 0;
  try {
    num_tones = doc.at("num_tones").get<int>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad calibration metadata: ") + e.what());
  }
  if (num_tones < 1) throw FormatError("calibration: num_tones must be positive");
  if (r.remaining() != static_cast<std::size_t>(num_tones) * 8) {
    throw DimensionError("calibration payload size does not match declared tone count");
  }
  CalibrationProfile cal;
  cal.h_cal.resize(static_cast<std::size_t>(num_tones));
  for (auto& v : cal.h_cal) {
    double re = r.take_f32("calibration");
    double im = r.take_f32("calibration");
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw DataError("calibration: non-finite entry");
    }
    v = {re, im};
  }
  return cal;
}

void save_calibration(const CalibrationProfile& cal, const std::filesystem::path& path) {
  if (cal.h_cal.empty()) throw DimensionError("calibration: empty profile");
  std::string meta = json{{"num_tones", cal.h_cal.size()}}.dump();
  std::string out;
  out.append(kCalibrationMagic);
  put_u32(out, static_cast<std::uint32_t>(meta.size()));
  out.append(meta);
  for (const auto& v : cal.h_cal) {
    put_f32(out, to_f32_checked(v.real(), "calibration"));
    put_f32(out, to_f32_checked(v.imag(), "calibration"));
  }
  write_file_atomic(path, out);
}

std::string capture_to_text(const MeasurementCapture& capture) {
  validate(capture);
  std::string out = "MMWCAP-TEXT 1\n";
  out += metadata_json(capture).dump();
  out += '\n';
  char line[128];
  const std::size_t n_tx = capture.grid.tx_count();
  const std::size_t n_rx = capture.grid.rx_count();
  const std::size_t n_tones = static_cast<std::size_t>(capture.config.num_tones);
  for (std::size_t itx = 0; itx < n_tx; ++itx) {
    for (std::size_t irx = 0; irx < n_rx; ++irx) {
      for (std::size_t t = 0; t < n_tones; ++t) {
        const auto& v = capture.at(itx, irx, t);
        // %.9g reproduces a 32-bit float exactly.
        std::snprintf(line, sizeof line, "%zu %zu %zu %.9g %.9g\n", itx, irx, t,
                      static_cast<double>(to_f32_checked(v.real(), "capture tensor")),
                      static_cast<double>(to_f32_checked(v.imag(), "capture tensor")));
        out += line;
      }
    }
  }
  return out;
}

MeasurementCapture capture_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "MMWCAP-TEXT 1") {
    throw FormatError("not a capture text dump (bad first line)");
  }
  if (!std::getline(in, line)) throw FormatError("capture text: missing metadata line");
  MeasurementCapture c = capture_from_metadata(parse_metadata(line, "capture text"));
  validate(c.config);
  validate(c.grid);
  validate(c.meta);

  const std::size_t n = c.grid.tx_count() * c.grid.rx_count() *
                        static_cast<std::size_t>(c.config.num_tones);
  c.h.assign(n, {});
  std::size_t count = 0;
  std::size_t itx = 0;
  std::size_t irx = 0;
  std::size_t itone = 0;
  double re = 0.0;
  double im = 0.0;
  while (in >> itx >> irx >> itone >> re >> im) {
    if (itx >= c.grid.tx_count() || irx >= c.grid.rx_count() ||
        itone >= static_cast<std::size_t>(c.config.num_tones)) {
      throw DimensionError("capture text: entry index out of range");
    }
    c.h[c.flat_index(itx, irx, itone)] = {snap_to_f32(re), snap_to_f32(im)};
    ++count;
  }
  if (count != n) throw DimensionError("capture text: entry count does not match dimensions");
  validate(c);
  return c;
}

bool file_has_capture_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char buf[8] = {};
  in.read(buf, 8);
  return in.gcount() == 8 && std::string_view(buf, 8) == kCaptureMagic;
}

}  // namespace mmcs
