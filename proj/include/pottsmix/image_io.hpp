#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pottsmix {

struct ImageRgb {
  int width = 0;
  int height = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  int size() const { return width * height; }
};

// Row-major byte per pixel. For annotation maps the value is a label in
// {1, ..., k} with 0 meaning unannotated; for output label maps every value
// is in {1, ..., k}.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;

  int size() const { return width * height; }
};

// Binary PPM (P6) and PGM (P5), maxval 255 only; comments and arbitrary
// header whitespace accepted on read. Writers emit a canonical header and are
// atomic (temp file + rename).
ImageRgb load_ppm(const std::string& path);
void save_ppm(const ImageRgb& image, const std::string& path);
LabelMap load_pgm(const std::string& path);
void save_pgm(const LabelMap& map, const std::string& path);

}  // namespace pottsmix
