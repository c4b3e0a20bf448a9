#include "sife/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

namespace sife {

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::bad_magic: return "bad magic";
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::truncated: return "truncated payload";
    case ParseErrorKind::malformed_payload: return "malformed payload";
    case ParseErrorKind::value_out_of_range: return "value out of range";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(std::string(sife::to_string(kind)) + " at byte " + std::to_string(offset) +
                         ": " + what),
      kind_(kind), offset_(offset) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Cursor {
 public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  // Whitespace and '#' comments between header tokens.
  void skip_header_space() {
    while (!at_end()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (!at_end() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Unsigned decimal; the caller names the failure kind.
  bool read_unsigned(std::uint64_t& out, std::uint64_t limit) {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && is_digit(bytes_[pos_])) {
      v = v * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (v > limit) return false;
      ++pos_;
    }
    if (pos_ == start) return false;
    out = v;
    return true;
  }

  void advance(std::size_t n) { pos_ += n; }
  char peek() const { return bytes_[pos_]; }
  std::size_t size() const { return bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t header_field(Cursor& cur, const char* name, std::uint64_t limit) {
  cur.skip_header_space();
  if (cur.at_end()) {
    throw ParseError(ParseErrorKind::truncated, cur.pos(), std::string("missing ") + name);
  }
  const std::size_t at = cur.pos();
  std::uint64_t v = 0;
  if (!cur.read_unsigned(v, limit)) {
    throw ParseError(ParseErrorKind::malformed_header, at, std::string("invalid ") + name);
  }
  if (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#') {
    throw ParseError(ParseErrorKind::malformed_header, cur.pos(),
                     std::string("unexpected character after ") + name);
  }
  return v;
}

constexpr std::uint64_t kMaxDimension = 1u << 20;

}  // namespace

PgmImage decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError(ParseErrorKind::bad_magic, 0, "expected P2 or P5");
  }
  PgmImage pgm;
  pgm.mode = bytes[1] == '2' ? PgmMode::ascii : PgmMode::binary;
  Cursor cur(bytes);
  cur.advance(2);
  if (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#') {
    throw ParseError(ParseErrorKind::bad_magic, 2, "magic number must be followed by whitespace");
  }

  const std::size_t width_at = cur.pos();
  pgm.width = header_field(cur, "width", kMaxDimension);
  const std::size_t height_at = cur.pos();
  pgm.height = header_field(cur, "height", kMaxDimension);
  const std::size_t maxval_at = cur.pos();
  pgm.maxval = static_cast<unsigned>(header_field(cur, "maxval", 65535));
  if (pgm.width == 0) throw ParseError(ParseErrorKind::malformed_header, width_at, "zero width");
  if (pgm.height == 0) throw ParseError(ParseErrorKind::malformed_header, height_at, "zero height");
  if (pgm.maxval == 0) throw ParseError(ParseErrorKind::malformed_header, maxval_at, "zero maxval");

  const std::size_t count = pgm.width * pgm.height;
  // Every sample takes at least one byte, so this bound holds in both modes.
  if (count > bytes.size() - cur.pos()) {
    throw ParseError(ParseErrorKind::truncated, bytes.size(),
                     "payload too short for " + std::to_string(count) + " samples");
  }
  pgm.samples.resize(count);

  if (pgm.mode == PgmMode::binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (cur.at_end()) throw ParseError(ParseErrorKind::truncated, cur.pos(), "missing raster");
    cur.advance(1);
    const std::size_t bytes_per_sample = pgm.maxval > 255 ? 2 : 1;
    const std::size_t raster = cur.pos();
    const std::size_t needed = count * bytes_per_sample;
    if (cur.size() - raster < needed) {
      throw ParseError(ParseErrorKind::truncated, cur.size(),
                       "raster needs " + std::to_string(needed) + " bytes, found " +
                           std::to_string(cur.size() - raster));
    }
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + raster);
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = bytes_per_sample == 2 ? (unsigned{data[2 * i]} << 8) | data[2 * i + 1] : data[i];
      if (v > pgm.maxval) {
        throw ParseError(ParseErrorKind::value_out_of_range, raster + i * bytes_per_sample,
                         "sample " + std::to_string(v) + " exceeds maxval " + std::to_string(pgm.maxval));
      }
      pgm.samples[i] = static_cast<std::uint16_t>(v);
    }
    return pgm;
  }

  for (std::size_t i = 0; i < count; ++i) {
    cur.skip_header_space();
    if (cur.at_end()) {
      throw ParseError(ParseErrorKind::truncated, cur.pos(),
                       "expected " + std::to_string(count) + " samples, found " + std::to_string(i));
    }
    const std::size_t at = cur.pos();
    std::uint64_t v = 0;
    if (!cur.read_unsigned(v, std::numeric_limits<std::uint32_t>::max())) {
      throw ParseError(ParseErrorKind::malformed_payload, at, "invalid ascii sample");
    }
    if (v > pgm.maxval) {
      throw ParseError(ParseErrorKind::value_out_of_range, at,
                       "sample " + std::to_string(v) + " exceeds maxval " + std::to_string(pgm.maxval));
    }
    pgm.samples[i] = static_cast<std::uint16_t>(v);
  }
  return pgm;
}

std::string encode_pgm(const PgmImage& pgm) {
  if (pgm.samples.size() != pgm.width * pgm.height) {
    throw InvalidArgument("PGM sample count does not match its dimensions");
  }
  if (pgm.maxval == 0 || pgm.maxval > 65535) throw InvalidArgument("PGM maxval must be in [1, 65535]");
  std::string out = pgm.mode == PgmMode::ascii ? "P2\n" : "P5\n";
  out += "# sife: values clamped to [0," + std::to_string(pgm.maxval) + "] and rounded half-up\n";
  out += std::to_string(pgm.width) + " " + std::to_string(pgm.height) + "\n";
  out += std::to_string(pgm.maxval) + "\n";
  if (pgm.mode == PgmMode::binary) {
    const bool wide = pgm.maxval > 255;
    out.reserve(out.size() + pgm.samples.size() * (wide ? 2 : 1));
    for (const std::uint16_t s : pgm.samples) {
      if (wide) out.push_back(static_cast<char>(s >> 8));
      out.push_back(static_cast<char>(s & 0xff));
    }
    return out;
  }
  constexpr std::size_t kLineLimit = 70;
  for (std::size_t y = 0; y < pgm.height; ++y) {
    std::size_t line = 0;
    for (std::size_t x = 0; x < pgm.width; ++x) {
      const std::string token = std::to_string(pgm.samples[y * pgm.width + x]);
      if (line > 0 && line + 1 + token.size() > kLineLimit) {
        out += '\n';
        line = 0;
      }
      if (line > 0) {
        out += ' ';
        ++line;
      }
      out += token;
      line += token.size();
    }
    out += '\n';
  }
  return out;
}

Image2D read_pgm(std::string_view bytes) {
  const PgmImage pgm = decode_pgm(bytes);
  std::vector<double> values(pgm.samples.begin(), pgm.samples.end());
  return Image2D(pgm.width, pgm.height, std::move(values), 1.0);
}

std::uint16_t quantize(double value, unsigned maxval) noexcept {
  const double top = static_cast<double>(maxval);
  const double clamped = value < 0.0 ? 0.0 : (value > top ? top : value);
  return static_cast<std::uint16_t>(std::floor(clamped + 0.5));
}

std::string write_pgm(const Image2D& img, PgmMode mode, unsigned maxval) {
  PgmImage pgm;
  pgm.mode = mode;
  pgm.width = img.width();
  pgm.height = img.height();
  pgm.maxval = maxval;
  pgm.samples.reserve(img.size());
  for (const double v : img.values()) pgm.samples.push_back(quantize(v, maxval));
  return encode_pgm(pgm);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string flow_report_csv(const FlowReport& report, bool include_timing) {
  std::string out = "iteration,max_update,min,max,violation";
  out += include_timing ? ",elapsed_s\n" : "\n";
  for (const auto& it : report.iterations) {
    out += std::to_string(it.iteration) + ',' + format_number(it.max_update) + ',' +
           format_number(it.min) + ',' + format_number(it.max) + ',' + format_number(it.violation);
    if (include_timing) out += ',' + format_number(it.elapsed_seconds);
    out += '\n';
  }
  return out;
}

}  // namespace sife
