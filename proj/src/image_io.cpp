#include "pottsmix/image_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pottsmix/instance_io.hpp"

namespace pottsmix {

namespace {

// Reads the next header token, skipping whitespace and # comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
      tok.push_back(static_cast<char>(in.get()));
    return tok;
  }
  throw std::runtime_error("image: truncated header");
}

int header_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("image: bad ") + what + " field");
  }
}

void read_header(std::istream& in, const char* magic, int& w, int& h) {
  if (next_token(in) != magic)
    throw std::runtime_error(std::string("image: expected ") + magic);
  w = header_int(in, "width");
  h = header_int(in, "height");
  const int maxval = header_int(in, "maxval");
  if (w < 1 || h < 1) throw std::runtime_error("image: bad dimensions");
  if (maxval != 255)
    throw std::runtime_error("image: only maxval 255 is supported");
  // Exactly one whitespace byte separates the header from the raster.
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    throw std::runtime_error("image: missing raster separator");
}

}  // namespace

ImageRgb load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image: " + path);
  ImageRgb img;
  read_header(in, "P6", img.width, img.height);
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size() * 3));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size() * 3))
    throw std::runtime_error("image: truncated pixel data in " + path);
  return img;
}

void save_ppm(const ImageRgb& image, const std::string& path) {
  std::ostringstream out;
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size() * 3));
  atomic_write_file(path, out.str());
}

LabelMap load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image: " + path);
  LabelMap map;
  read_header(in, "P5", map.width, map.height);
  map.labels.resize(static_cast<std::size_t>(map.width) * map.height);
  in.read(reinterpret_cast<char*>(map.labels.data()),
          static_cast<std::streamsize>(map.labels.size()));
  if (in.gcount() != static_cast<std::streamsize>(map.labels.size()))
    throw std::runtime_error("image: truncated pixel data in " + path);
  return map;
}

void save_pgm(const LabelMap& map, const std::string& path) {
  std::ostringstream out;
  out << "P5\n" << map.width << " " << map.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(map.labels.data()),
            static_cast<std::streamsize>(map.labels.size()));
  atomic_write_file(path, out.str());
}

}  // namespace pottsmix
