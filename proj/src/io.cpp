#include "eqaff/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>
#include <png.h>

namespace eqaff::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const fs::path& path, const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

std::uint32_t quantize(double v, std::uint32_t maxval) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint32_t>(std::lround(c * maxval));
}

// Next whitespace/comment-delimited token of a PNM header.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int pnm_int(std::istream& in, const fs::path& path) {
  const std::string tok = pnm_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(path, "malformed PGM header");
  }
}

struct PngCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  bool writing = false;
  ~PngCloser() {
    if (writing)
      png_destroy_write_struct(&png, info ? &info : nullptr);
    else
      png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_png_rows(const fs::path& path, int width, int height, int bit_depth, int color_type,
                    const std::vector<std::uint8_t>& bytes, std::size_t row_bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) fail(path, "cannot open for writing");
  PngCloser guard;
  guard.writing = true;
  guard.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!guard.png) fail(path, "png_create_write_struct failed");
  guard.info = png_create_info_struct(guard.png);
  if (!guard.info) fail(path, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(guard.png))) fail(path, "PNG encoding failed");
  png_init_io(guard.png, fp.get());
  png_set_IHDR(guard.png, guard.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(guard.png, guard.info);
  for (int y = 0; y < height; ++y)
    png_write_row(guard.png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * row_bytes));
  png_write_end(guard.png, nullptr);
}

}  // namespace

Image2D read_image(const fs::path& path) {
  auto in = open_in(path);
  char sig[8] = {};
  in.read(sig, 8);
  if (in.gcount() >= 2 && sig[0] == 'P' && (sig[1] == '2' || sig[1] == '5')) return read_pgm(path);
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (in.gcount() == 8 && std::memcmp(sig, png_sig, 8) == 0) return read_png(path);
  fail(path, "unrecognized image format (expected PGM P2/P5 or PNG)");
}

Image2D read_pgm(const fs::path& path) {
  auto in = open_in(path);
  const std::string magic = pnm_token(in);
  if (magic != "P2" && magic != "P5") fail(path, "not a PGM file (P2/P5)");
  const int w = pnm_int(in, path);
  const int h = pnm_int(in, path);
  const int maxval = pnm_int(in, path);
  if (w < 3 || h < 3) fail(path, "image must be at least 3x3");
  if (maxval < 1 || maxval > 65535) fail(path, "unsupported PGM maxval");
  std::vector<double> data(static_cast<std::size_t>(w) * h);
  if (magic == "P2") {
    for (auto& v : data) {
      const int s = pnm_int(in, path);
      if (s > maxval) fail(path, "sample exceeds maxval");
      v = static_cast<double>(s) / maxval;
    }
  } else {
    const bool wide = maxval > 255;
    const std::size_t bytes = data.size() * (wide ? 2 : 1);
    std::vector<unsigned char> raw(bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes) fail(path, "truncated PGM data");
    for (std::size_t i = 0; i < data.size(); ++i) {
      const unsigned s = wide ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1] : raw[i];
      data[i] = static_cast<double>(std::min<unsigned>(s, static_cast<unsigned>(maxval))) / maxval;
    }
  }
  return Image2D(w, h, std::move(data));
}

Image2D read_png(const fs::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail(path, "cannot open for reading");
  PngCloser guard;
  guard.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!guard.png) fail(path, "png_create_read_struct failed");
  guard.info = png_create_info_struct(guard.png);
  if (!guard.info) fail(path, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(guard.png))) fail(path, "PNG decoding failed");
  png_init_io(guard.png, fp.get());
  png_read_info(guard.png, guard.info);

  const int color = png_get_color_type(guard.png, guard.info);
  const int depth = png_get_bit_depth(guard.png, guard.info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(guard.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(guard.png);
  if (png_get_valid(guard.png, guard.info, PNG_INFO_tRNS)) png_set_strip_alpha(guard.png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(guard.png);
  if (depth == 16) png_set_swap(guard.png);  // host little-endian 16-bit samples
  png_read_update_info(guard.png, guard.info);

  const int w = static_cast<int>(png_get_image_width(guard.png, guard.info));
  const int h = static_cast<int>(png_get_image_height(guard.png, guard.info));
  const int channels = png_get_channels(guard.png, guard.info);
  const int out_depth = png_get_bit_depth(guard.png, guard.info);
  if (w < 3 || h < 3) fail(path, "image must be at least 3x3");
  const std::size_t row_bytes = png_get_rowbytes(guard.png, guard.info);
  std::vector<std::uint8_t> buf(row_bytes * static_cast<std::size_t>(h));
  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) rows[static_cast<std::size_t>(y)] = buf.data() + row_bytes * static_cast<std::size_t>(y);
  png_read_image(guard.png, rows.data());

  const double maxval = out_depth == 16 ? 65535.0 : 255.0;
  auto sample = [&](int y, int x, int c) -> double {
    const std::uint8_t* row = rows[static_cast<std::size_t>(y)];
    const std::size_t idx = static_cast<std::size_t>(x) * channels + c;
    if (out_depth == 16) {
      std::uint16_t v;
      std::memcpy(&v, row + 2 * idx, 2);
      return v / maxval;
    }
    return row[idx] / maxval;
  };
  Image2D img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (channels >= 3)
        img(x, y) = 0.299 * sample(y, x, 0) + 0.587 * sample(y, x, 1) + 0.114 * sample(y, x, 2);
      else
        img(x, y) = sample(y, x, 0);
    }
  return img;
}

void write_pgm(const fs::path& path, const Grid2<double>& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ConfigError("write_pgm: bit depth must be 8 or 16");
  const std::uint32_t maxval = bit_depth == 16 ? 65535u : 255u;
  auto out = open_out(path);
  out << "P5\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
  std::vector<char> bytes;
  bytes.reserve(img.size() * (bit_depth / 8));
  for (double v : img.data()) {
    const std::uint32_t q = quantize(v, maxval);
    if (bit_depth == 16) bytes.push_back(static_cast<char>(q >> 8));
    bytes.push_back(static_cast<char>(q & 0xff));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(path, "write failed");
}

void write_png(const fs::path& path, const Grid2<double>& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ConfigError("write_png: bit depth must be 8 or 16");
  const std::uint32_t maxval = bit_depth == 16 ? 65535u : 255u;
  const std::size_t row_bytes = static_cast<std::size_t>(img.width()) * (bit_depth / 8);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(row_bytes * img.height());
  for (double v : img.data()) {
    const std::uint32_t q = quantize(v, maxval);
    if (bit_depth == 16) bytes.push_back(static_cast<std::uint8_t>(q >> 8));
    bytes.push_back(static_cast<std::uint8_t>(q & 0xff));
  }
  write_png_rows(path, img.width(), img.height(), bit_depth, PNG_COLOR_TYPE_GRAY, bytes, row_bytes);
}

void write_png_rgb(const fs::path& path, const Grid2<double>& r, const Grid2<double>& g, const Grid2<double>& b) {
  if (!r.same_shape(g) || !r.same_shape(b)) throw ConfigError("write_png_rgb: channel shapes differ");
  const std::size_t row_bytes = static_cast<std::size_t>(r.width()) * 3;
  std::vector<std::uint8_t> bytes;
  bytes.reserve(row_bytes * r.height());
  for (std::size_t i = 0; i < r.size(); ++i) {
    bytes.push_back(static_cast<std::uint8_t>(quantize(r.data()[i], 255)));
    bytes.push_back(static_cast<std::uint8_t>(quantize(g.data()[i], 255)));
    bytes.push_back(static_cast<std::uint8_t>(quantize(b.data()[i], 255)));
  }
  write_png_rows(path, r.width(), r.height(), 8, PNG_COLOR_TYPE_RGB, bytes, row_bytes);
}

void write_mask(const fs::path& path, const Mask2D& mask) {
  Grid2<double> g(mask.width(), mask.height(), 0.0);
  for (std::size_t i = 0; i < mask.size(); ++i) g.data()[i] = mask.data()[i] ? 1.0 : 0.0;
  write_pgm(path, g, 8);
}

Mask2D read_mask(const fs::path& path) {
  const Image2D img = read_image(path);
  Mask2D m(img.width(), img.height(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = img.data()[i] > 0.5 ? 1 : 0;
  return m;
}

void write_raw_f32(const fs::path& path, std::span<const double> values) {
  auto out = open_out(path);
  std::vector<std::uint32_t> words(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float f = static_cast<float>(values[i]);
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    words[i] = u;
  }
  out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
  if (!out) fail(path, "write failed");
}

std::vector<double> read_raw_f32(const fs::path& path, std::size_t count) {
  auto in = open_in(path);
  std::vector<std::uint32_t> words(count);
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(count * 4));
  if (static_cast<std::size_t>(in.gcount()) != count * 4) fail(path, "raw file shorter than declared dimensions");
  if (in.peek() != std::char_traits<char>::eof()) fail(path, "raw file longer than declared dimensions");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t u = words[i];
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    float f;
    std::memcpy(&f, &u, 4);
    out[i] = f;
  }
  return out;
}

fs::path sidecar_path(const fs::path& raw) {
  fs::path p = raw;
  p.replace_extension(".json");
  return p;
}

Image3D read_volume(const fs::path& raw) {
  const fs::path side = sidecar_path(raw);
  if (!fs::exists(side)) fail(raw, "missing volume sidecar, expected " + side.string());
  json j;
  try {
    j = json::parse(read_text(side));
  } catch (const json::exception& e) {
    fail(side, std::string("invalid JSON: ") + e.what());
  }
  int nx = 0, ny = 0, nz = 0;
  try {
    nx = j.at("nx").get<int>();
    ny = j.at("ny").get<int>();
    nz = j.at("nz").get<int>();
  } catch (const json::exception&) {
    fail(side, "sidecar must contain integer nx, ny, nz");
  }
  if (nx < 3 || ny < 3 || nz < 3) fail(side, "each volume dimension must be >= 3");
  auto data = read_raw_f32(raw, static_cast<std::size_t>(nx) * ny * nz);
  for (double v : data)
    if (!std::isfinite(v)) fail(raw, "volume contains non-finite values");
  return Image3D(nx, ny, nz, std::move(data));
}

void write_volume(const fs::path& raw, const Grid3<double>& vol) {
  write_raw_f32(raw, vol.data());
  const json j = {{"nx", vol.nx()}, {"ny", vol.ny()}, {"nz", vol.nz()}};
  write_text(sidecar_path(raw), j.dump(2) + "\n");
}

void write_field_pgm(const fs::path& path, const Field2D& field) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < field.value.size(); ++i) {
    if (!field.valid.data()[i]) continue;
    const double v = field.value.data()[i];
    if (!any) {
      lo = hi = v;
      any = true;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi > lo ? hi - lo : 1.0;
  Grid2<double> g(field.width(), field.height(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    g.data()[i] = field.valid.data()[i] ? (field.value.data()[i] - lo) / range : 0.0;
  write_pgm(path, g, 16);
  const json j = {{"min", lo}, {"max", hi}};
  write_text(sidecar_path(path), j.dump(2) + "\n");
}

Affine2 read_affine(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(path, std::string("invalid JSON: ") + e.what());
  }
  Affine2 a;
  try {
    const auto& m = j.at("m");
    const auto& t = j.at("t");
    if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2 || t.size() != 2) throw std::invalid_argument("shape");
    a.m << m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>();
    a.t << t[0].get<double>(), t[1].get<double>();
  } catch (const std::exception&) {
    fail(path, R"(transform JSON must be {"m":[[a,b],[c,d]],"t":[x,y]})");
  }
  if (!a.m.allFinite() || !a.t.allFinite()) fail(path, "transform contains non-finite values");
  return a;
}

EquiAffine2 read_equiaffine(const fs::path& path) {
  const Affine2 a = read_affine(path);
  return EquiAffine2(a.m, a.t);
}

void write_affine(const fs::path& path, const Affine2& map) {
  const json j = {{"m", {{map.m(0, 0), map.m(0, 1)}, {map.m(1, 0), map.m(1, 1)}}}, {"t", {map.t(0), map.t(1)}}};
  write_text(path, j.dump(2) + "\n");
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) fail(path, "write failed");
}

std::string read_text(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace eqaff::io
