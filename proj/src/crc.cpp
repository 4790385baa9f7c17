#include "polarsym/crc.hpp"

#include <stdexcept>

namespace polarsym {

CrcConfig CrcConfig::from_string(const std::string& bits) {
  CrcConfig crc;
  crc.poly.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("CrcConfig: polynomial must be a bit string, got '" + bits + "'");
    }
    crc.poly.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  crc.validate();
  return crc;
}

std::string CrcConfig::to_string() const {
  std::string out;
  out.reserve(poly.size());
  for (std::uint8_t bit : poly) out.push_back(bit ? '1' : '0');
  return out;
}

void CrcConfig::validate() const {
  if (poly.size() < 2 || poly.front() != 1) {
    throw std::invalid_argument("CrcConfig: polynomial needs degree >= 1 and leading coefficient 1");
  }
}

std::vector<std::uint8_t> crc_attach(const std::vector<std::uint8_t>& msg, const CrcConfig& crc) {
  crc.validate();
  const auto r = static_cast<std::size_t>(crc.degree());
  std::vector<std::uint8_t> out(msg.size() + r, 0);
  std::copy(msg.begin(), msg.end(), out.begin());
  std::vector<std::uint8_t> remainder = out;
  for (std::size_t k = 0; k < msg.size(); ++k) {
    if (!remainder[k]) continue;
    for (std::size_t j = 0; j < crc.poly.size(); ++j) {
      remainder[k + j] ^= crc.poly[j];
    }
  }
  std::copy(remainder.end() - static_cast<std::ptrdiff_t>(r), remainder.end(),
            out.end() - static_cast<std::ptrdiff_t>(r));
  return out;
}

bool crc_check(const std::vector<std::uint8_t>& bits, const CrcConfig& crc) {
  crc.validate();
  const auto r = static_cast<std::size_t>(crc.degree());
  if (bits.size() < r) return false;
  std::vector<std::uint8_t> remainder = bits;
  for (std::size_t k = 0; k + r < remainder.size(); ++k) {
    if (!remainder[k]) continue;
    for (std::size_t j = 0; j < crc.poly.size(); ++j) {
      remainder[k + j] ^= crc.poly[j];
    }
  }
  for (std::size_t k = remainder.size() - r; k < remainder.size(); ++k) {
    if (remainder[k]) return false;
  }
  return true;
}

}  // namespace polarsym
