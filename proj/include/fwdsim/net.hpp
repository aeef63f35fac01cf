#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "fwdsim/errors.hpp"

namespace fwdsim {

// IPv4 address in host byte order. The simulated infrastructure is v4-only.
using IpAddr = std::uint32_t;

inline IpAddr parse_ip(std::string_view text) {
  IpAddr value = 0;
  int octets = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(ErrorCode::BadInput, "bad IPv4 literal: " + std::string(text));
    unsigned octet = 0;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      octet = octet * 10 + static_cast<unsigned>(text[i] - '0');
      ++i;
    }
    if (octet > 255 || i - start > 3)
      fail(ErrorCode::BadInput, "bad IPv4 octet in: " + std::string(text));
    value = (value << 8) | octet;
    ++octets;
    if (i < text.size()) {
      if (text[i] != '.' || octets == 4)
        fail(ErrorCode::BadInput, "bad IPv4 literal: " + std::string(text));
      ++i;
    }
  }
  if (octets != 4)
    fail(ErrorCode::BadInput, "bad IPv4 literal: " + std::string(text));
  return value;
}

inline std::string format_ip(IpAddr ip) {
  return std::to_string((ip >> 24) & 0xff) + "." + std::to_string((ip >> 16) & 0xff) +
         "." + std::to_string((ip >> 8) & 0xff) + "." + std::to_string(ip & 0xff);
}

// CIDR block, e.g. 40.92.0.0/15.
struct Cidr {
  IpAddr base = 0;
  int prefix = 32;

  bool contains(IpAddr ip) const {
    if (prefix == 0) return true;
    IpAddr mask = prefix >= 32 ? 0xffffffffu : ~((1u << (32 - prefix)) - 1u);
    return (ip & mask) == (base & mask);
  }
};

inline Cidr parse_cidr(std::string_view text) {
  auto slash = text.find('/');
  Cidr out;
  if (slash == std::string_view::npos) {
    out.base = parse_ip(text);
    out.prefix = 32;
    return out;
  }
  out.base = parse_ip(text.substr(0, slash));
  auto tail = text.substr(slash + 1);
  if (tail.empty() || tail.size() > 2)
    fail(ErrorCode::BadInput, "bad CIDR prefix in: " + std::string(text));
  int prefix = 0;
  for (char c : tail) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(ErrorCode::BadInput, "bad CIDR prefix in: " + std::string(text));
    prefix = prefix * 10 + (c - '0');
  }
  if (prefix > 32)
    fail(ErrorCode::BadInput, "CIDR prefix out of range: " + std::string(text));
  out.prefix = prefix;
  return out;
}

inline std::string format_cidr(const Cidr& cidr) {
  return format_ip(cidr.base) + "/" + std::to_string(cidr.prefix);
}

inline std::string ascii_lower(std::string_view in) {
  std::string out(in);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// DNS name check used for address domains: dot-separated labels of 1..63
// alphanumeric-or-hyphen characters, no leading/trailing hyphen.
inline bool is_valid_dns_name(std::string_view name) {
  if (name.empty() || name.size() > 253) return false;
  std::size_t label_start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i == name.size() || name[i] == '.') {
      std::size_t len = i - label_start;
      if (len == 0 || len > 63) return false;
      if (name[label_start] == '-' || name[i - 1] == '-') return false;
      label_start = i + 1;
      continue;
    }
    char c = name[i];
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace fwdsim
