#pragma once
// Generic CRC outer code: polynomial-division checksum over bit vectors.

#include <cstdint>
#include <string>
#include <vector>

namespace polarsym {

struct CrcConfig {
  // Polynomial coefficients MSB-first including the leading 1,
  // e.g. x^6 + x^5 + 1 -> {1,1,0,0,0,0,1}.
  std::vector<std::uint8_t> poly;

  int degree() const { return static_cast<int>(poly.size()) - 1; }

  // Parses a bit string such as "1100001".
  static CrcConfig from_string(const std::string& bits);
  std::string to_string() const;

  void validate() const;  // throws unless the leading coefficient is 1
};

// Appends the degree()-bit checksum to msg.
std::vector<std::uint8_t> crc_attach(const std::vector<std::uint8_t>& msg, const CrcConfig& crc);

// True iff bits = msg || checksum(msg).
bool crc_check(const std::vector<std::uint8_t>& bits, const CrcConfig& crc);

}  // namespace polarsym
