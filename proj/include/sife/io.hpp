#pragma once

// PGM (P2/P5) encode/decode, file helpers and locale-independent CSV output.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sife/flows.hpp"
#include "sife/grid.hpp"

namespace sife {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PgmMode { ascii, binary };  // P2, P5

struct PgmImage {
  PgmMode mode = PgmMode::binary;
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 255;
  std::vector<std::uint16_t> samples;

  friend bool operator==(const PgmImage&, const PgmImage&) = default;
};

/// Throws ParseError (bad magic, malformed header, truncated payload, sample
/// above maxval) with the offending byte offset.
PgmImage decode_pgm(std::string_view bytes);

/// Canonical encoding: magic, one comment line, "width height", maxval, then
/// the payload (big-endian words when maxval > 255 in binary mode; rows of at
/// most 70 characters in ascii mode).
std::string encode_pgm(const PgmImage& pgm);

/// Grey values are taken as-is (no rescaling); h = 1.
Image2D read_pgm(std::string_view bytes);

/// Clamps to [0, maxval] and rounds half-up. Deterministic.
std::string write_pgm(const Image2D& img, PgmMode mode = PgmMode::binary, unsigned maxval = 255);

/// The clamp/round rule applied by write_pgm to one value.
std::uint16_t quantize(double value, unsigned maxval) noexcept;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Shortest round-trip decimal representation, '.' as decimal point.
std::string format_number(double value);

/// Header row then one row per iteration:
/// iteration,max_update,min,max,violation[,elapsed_s]
std::string flow_report_csv(const FlowReport& report, bool include_timing = true);

}  // namespace sife
