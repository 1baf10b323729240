#include "beltrami/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace beltrami {

static_assert(std::endian::native == std::endian::little, "CF1 I/O assumes a little-endian host");

namespace {

constexpr std::size_t kHeader = 16;

void put(std::string& out, const void* p, std::size_t len) {
  out.append(static_cast<const char*>(p), len);
}

std::string header(const char* magic, const Grid& g) {
  std::string out;
  put(out, magic, 4);
  auto n = static_cast<std::uint32_t>(g.n());
  double L = g.half_width();
  put(out, &n, 4);
  put(out, &L, 8);
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Grid parse_header(const std::string& bytes, const char* magic, std::size_t bytes_per_sample) {
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), magic, 4) != 0)
    throw FormatError(std::string("missing ") + magic + " header");
  std::uint32_t n;
  double L;
  std::memcpy(&n, bytes.data() + 4, 4);
  std::memcpy(&L, bytes.data() + 8, 8);
  Grid g(n, L);
  if (bytes.size() != kHeader + g.size() * bytes_per_sample)
    throw FormatError("payload length does not match header");
  return g;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_cf1(const std::filesystem::path& path, const ComplexField& f) {
  std::string out = header("CF1", f.grid());
  auto s = f.samples();
  put(out, s.data(), s.size() * sizeof(complex));
  write_file_atomic(path, out);
}

ComplexField read_cf1(const std::filesystem::path& path) {
  std::string bytes = slurp(path);
  Grid g = parse_header(bytes, "CF1", 16);
  std::vector<complex> s(g.size());
  std::memcpy(s.data(), bytes.data() + kHeader, s.size() * sizeof(complex));
  return ComplexField(g, std::move(s));
}

void write_rm1(const std::filesystem::path& path, const RegionMask& mask) {
  std::string out = header("RM1", mask.grid());
  put(out, mask.bits().data(), mask.bits().size());
  write_file_atomic(path, out);
}

RegionMask read_rm1(const std::filesystem::path& path) {
  std::string bytes = slurp(path);
  Grid g = parse_header(bytes, "RM1", 1);
  std::vector<std::uint8_t> bits(bytes.begin() + kHeader, bytes.end());
  for (auto b : bits)
    if (b > 1) throw FormatError("mask payload must be 0/1");
  return RegionMask(g, std::move(bits));
}

}  // namespace beltrami
