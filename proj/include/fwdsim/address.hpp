#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fwdsim/errors.hpp"
#include "fwdsim/net.hpp"

namespace fwdsim {

// RFC 5321 addr-spec, reduced to what delivery decisions need. The local
// part is case-preserving; the domain is stored lowercase. The display name
// never participates in authentication or routing.
struct EmailAddress {
  std::string local;
  std::string domain;
  std::optional<std::string> display_name;

  std::string addr_spec() const { return local + "@" + domain; }

  friend bool operator==(const EmailAddress& a, const EmailAddress& b) {
    return a.local == b.local && a.domain == b.domain;
  }
  friend bool operator!=(const EmailAddress& a, const EmailAddress& b) {
    return !(a == b);
  }
};

namespace detail {

inline bool is_local_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  constexpr std::string_view extra = "!#$%&'*+-/=?^_`{|}~.";
  return extra.find(c) != std::string_view::npos;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Accepts "local@domain" and "Display Name <local@domain>".
inline EmailAddress parse_address(std::string_view text) {
  std::string_view s = detail::trim(text);
  EmailAddress out;
  if (!s.empty() && s.back() == '>') {
    auto open = s.rfind('<');
    if (open == std::string_view::npos)
      fail(ErrorCode::MalformedAddress, "unmatched '>' in: " + std::string(text));
    std::string_view name = detail::trim(s.substr(0, open));
    if (name.size() >= 2 && name.front() == '"' && name.back() == '"')
      name = name.substr(1, name.size() - 2);
    if (!name.empty()) out.display_name = std::string(name);
    s = s.substr(open + 1, s.size() - open - 2);
    s = detail::trim(s);
  }
  auto at = s.rfind('@');
  if (at == std::string_view::npos)
    fail(ErrorCode::MalformedAddress, "missing '@' in: " + std::string(text));
  std::string_view local = s.substr(0, at);
  std::string_view domain = s.substr(at + 1);
  if (local.empty())
    fail(ErrorCode::MalformedAddress, "empty local part in: " + std::string(text));
  for (char c : local)
    if (!detail::is_local_char(c))
      fail(ErrorCode::MalformedAddress, "illegal local character in: " + std::string(text));
  std::string domain_lower = ascii_lower(domain);
  if (!is_valid_dns_name(domain_lower))
    fail(ErrorCode::MalformedAddress, "illegal domain in: " + std::string(text));
  out.local = std::string(local);
  out.domain = std::move(domain_lower);
  return out;
}

inline std::string render_address(const EmailAddress& addr) {
  if (addr.display_name) return *addr.display_name + " <" + addr.addr_spec() + ">";
  return addr.addr_spec();
}

namespace detail {

// Static public-suffix snapshot. Covers the TLDs and second-level suffixes
// the shipped fixtures use; anything else falls back to the two-label rule
// in registered_domain below.
inline const std::unordered_set<std::string_view>& public_suffixes() {
  static const std::unordered_set<std::string_view> suffixes = {
      // generic
      "com", "org", "net", "edu", "gov", "mil", "int", "info", "biz", "name",
      "pro", "aero", "coop", "museum", "travel", "io", "co", "ai", "app",
      "dev", "email", "online", "site", "tech", "store", "xyz",
      // country-code, flat
      "us", "uk", "fr", "de", "pl", "hu", "lv", "ru", "no", "se", "fi", "nl",
      "it", "es", "au", "nz", "jp", "cn", "in", "br", "ca", "ch", "at", "be",
      "cz", "eu",
      // country-code, second level
      "co.uk", "org.uk", "ac.uk", "gov.uk", "me.uk", "net.uk", "ltd.uk",
      "plc.uk", "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au",
      "id.au", "co.nz", "net.nz", "org.nz", "ac.nz", "govt.nz", "co.jp",
      "ne.jp", "or.jp", "ac.jp", "go.jp", "com.cn", "net.cn", "org.cn",
      "gov.cn", "edu.cn", "com.br", "net.br", "org.br", "gov.br", "co.in",
      "net.in", "org.in", "gov.in", "ac.in", "com.pl", "net.pl", "org.pl",
      "edu.pl", "gov.pl", "com.ru", "net.ru", "org.ru",
  };
  return suffixes;
}

inline std::vector<std::string_view> split_labels(std::string_view domain) {
  std::vector<std::string_view> labels;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= domain.size(); ++i) {
    if (i == domain.size() || domain[i] == '.') {
      labels.push_back(domain.substr(start, i - start));
      start = i + 1;
    }
  }
  return labels;
}

}  // namespace detail

// Organizational domain: longest known public suffix plus one label. For a
// name whose suffix is not in the snapshot the last two labels are used
// (two-label fallback). A name that is itself a public suffix, or a single
// unknown label, has no registered domain.
inline std::string registered_domain(std::string_view domain) {
  std::string lower = ascii_lower(domain);
  auto labels = detail::split_labels(lower);
  const auto& suffixes = detail::public_suffixes();
  std::size_t n = labels.size();
  auto join_from = [&](std::size_t i) {
    std::string out;
    for (std::size_t k = i; k < n; ++k) {
      if (!out.empty()) out += '.';
      out += std::string(labels[k]);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    // labels[i..] is the longest matching public suffix when it hits.
    if (suffixes.contains(join_from(i))) {
      if (i == 0)
        fail(ErrorCode::UnknownSuffix,
             "name is a public suffix: " + std::string(domain));
      return join_from(i - 1);
    }
  }
  if (n >= 2) return join_from(n - 2);
  fail(ErrorCode::UnknownSuffix, "no registrable part in: " + std::string(domain));
}

// Relaxed-alignment helper: falls back to the full name when the domain has
// no registered part instead of raising.
inline std::string org_domain_or_self(std::string_view domain) {
  try {
    return registered_domain(domain);
  } catch (const SimError&) {
    return ascii_lower(domain);
  }
}

}  // namespace fwdsim
