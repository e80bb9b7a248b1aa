#include "nlslab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace nlslab {

namespace {

constexpr const char* kOrder = "(i1*n2+i2)*n3+i3";

nlohmann::json header_for(const GridSpec& g, const char* dtype) {
  nlohmann::json j;
  j["n1"] = g.n(0);
  j["n2"] = g.n(1);
  j["n3"] = g.n(2);
  j["L1"] = g.half_width(0);
  j["L2"] = g.half_width(1);
  j["L3"] = g.half_width(2);
  j["dtype"] = dtype;
  j["order"] = kOrder;
  return j;
}

void write_doubles(const std::filesystem::path& path, const double* data, std::size_t count) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, &data[i], sizeof bits);
      bits = __builtin_bswap64(bits);
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> read_doubles(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> out(count);
  in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
    throw std::runtime_error("truncated field data: " + path.string());
  }
  if constexpr (std::endian::native != std::endian::little) {
    for (auto& v : out) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      bits = __builtin_bswap64(bits);
      std::memcpy(&v, &bits, sizeof bits);
    }
  }
  return out;
}

void write_header(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

struct Header {
  GridSpec grid;
  std::string dtype;
};

Header read_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed field header " + path.string() + ": " + e.what());
  }
  for (const char* key : {"n1", "n2", "n3", "L1", "L2", "L3", "dtype", "order"}) {
    if (!j.contains(key)) throw std::runtime_error(std::string("field header missing ") + key);
  }
  if (j["order"].get<std::string>() != kOrder) throw std::runtime_error("unsupported field order");
  const int n1 = j["n1"], n2 = j["n2"], n3 = j["n3"];
  const double L1 = j["L1"], L2 = j["L2"], L3 = j["L3"];
  GridSpec g = n3 == 1 ? GridSpec::plane({n1, n2}, {L1, L2}) : GridSpec({n1, n2, n3}, {L1, L2, L3});
  return {g, j["dtype"].get<std::string>()};
}

}  // namespace

FieldFiles field_files(const std::filesystem::path& base) {
  auto h = base;
  auto d = base;
  h += ".json";
  d += ".bin";
  return {h, d};
}

FieldFiles write_field(const RealField& u, const std::filesystem::path& base) {
  const auto files = field_files(base);
  write_header(files.header, header_for(u.grid(), "f64"));
  write_doubles(files.data, u.data(), u.size());
  return files;
}

FieldFiles write_field(const ComplexField& u, const std::filesystem::path& base) {
  const auto files = field_files(base);
  write_header(files.header, header_for(u.grid(), "c128"));
  write_doubles(files.data, reinterpret_cast<const double*>(u.data()), 2 * u.size());
  return files;
}

RealField read_real_field(const std::filesystem::path& base) {
  const auto files = field_files(base);
  const Header h = read_header(files.header);
  if (h.dtype != "f64") throw std::runtime_error("expected dtype f64, got " + h.dtype);
  return RealField(h.grid, read_doubles(files.data, h.grid.size()));
}

ComplexField read_complex_field(const std::filesystem::path& base) {
  const auto files = field_files(base);
  const Header h = read_header(files.header);
  if (h.dtype == "f64") {
    return to_complex(RealField(h.grid, read_doubles(files.data, h.grid.size())));
  }
  if (h.dtype != "c128") throw std::runtime_error("unknown dtype " + h.dtype);
  const auto raw = read_doubles(files.data, 2 * h.grid.size());
  std::vector<Complex> values(h.grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = Complex(raw[2 * i], raw[2 * i + 1]);
  return ComplexField(h.grid, std::move(values));
}

}  // namespace nlslab
