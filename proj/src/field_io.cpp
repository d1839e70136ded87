#include "divcurl/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace divcurl {
namespace {

constexpr std::array<char, 8> kMagic = {'D', 'C', 'F', 'I', 'E', 'L', 'D', '1'};

static_assert(std::endian::native == std::endian::little,
              "binary field dumps assume a little-endian host");

void write_csv_components(std::ostream& os, const std::vector<ScalarField>& comps) {
  const Grid& g = comps.front().grid();
  os << "# divcurl-field v1 dim=" << g.dim() << " n=" << g.n()
     << " components=" << comps.size() << "\n";
  for (int a = 0; a < g.dim(); ++a) os << (a ? "," : "") << "x" << (a + 1);
  for (std::size_t c = 0; c < comps.size(); ++c) os << ",c" << c;
  os << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p = g.point(i);
    for (int a = 0; a < g.dim(); ++a) os << (a ? "," : "") << format_double(p[a]);
    for (const auto& c : comps) os << "," << format_double(c[i]);
    os << "\n";
  }
}

void write_binary_components(std::ostream& os,
                             const std::vector<ScalarField>& comps) {
  const Grid& g = comps.front().grid();
  os.write(kMagic.data(), kMagic.size());
  const std::int32_t header[3] = {g.dim(), g.n(),
                                  static_cast<std::int32_t>(comps.size())};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  for (const auto& c : comps) {
    const auto v = c.values();
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const ScalarField& f) {
  write_csv_components(os, {f});
}

void write_csv(std::ostream& os, const VectorField& f) {
  write_csv_components(os, f.components());
}

void write_binary(std::ostream& os, const ScalarField& f) {
  write_binary_components(os, {f});
}

void write_binary(std::ostream& os, const VectorField& f) {
  write_binary_components(os, f.components());
}

std::vector<ScalarField> read_binary(std::istream& is) {
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("not a divcurl field dump");
  std::int32_t header[3];
  is.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!is) throw std::runtime_error("truncated field dump header");
  const Grid grid(header[0], header[1]);
  if (header[2] < 1) throw std::runtime_error("field dump has no components");
  std::vector<ScalarField> out;
  for (std::int32_t c = 0; c < header[2]; ++c) {
    std::vector<double> values(grid.size());
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated field dump payload");
    out.emplace_back(grid, std::move(values));
  }
  return out;
}

}  // namespace divcurl
