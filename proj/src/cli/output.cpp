#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <openssl/evp.h>

#include "adiabat/cli.hpp"

namespace adiabat::cli {

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(const Table &table) {
  auto join = [](const std::vector<std::string> &cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i)
      line += (i ? "," : "") + cells[i];
    return line + "\n";
  };
  std::string out = join(table.columns) + join(table.units);
  for (const auto &row : table.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row)
      cells.push_back(format_double(v));
    out += join(cells);
  }
  return out;
}

std::string sha256_hex(const std::string &bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

void write_file(const std::filesystem::path &path, const std::string &bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f)
    throw std::runtime_error("cannot write " + path.string());
}

std::filesystem::path default_output_root() {
  if (const char *env = std::getenv("ADIABAT_OUT"); env && *env)
    return env;
  return "adiabat-out";
}

} // namespace adiabat::cli
