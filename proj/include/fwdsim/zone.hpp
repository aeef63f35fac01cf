#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fwdsim/address.hpp"
#include "fwdsim/net.hpp"
#include "fwdsim/verdicts.hpp"

namespace fwdsim {

// SPF mechanisms. Anything outside the modeled grammar (a, mx, exists,
// redirect=..., ?all) parses as Other: it never matches and never expands,
// which keeps the audit parser usable on real-world records.
struct SpfIp4 {
  Cidr cidr;
};
struct SpfInclude {
  std::string domain;
};
enum class SpfAllQualifier { Pass, Fail, SoftFail };
struct SpfAll {
  SpfAllQualifier qualifier = SpfAllQualifier::Fail;
};
struct SpfOther {
  std::string token;
};
using SpfMechanism = std::variant<SpfIp4, SpfInclude, SpfAll, SpfOther>;

// Invariant: at most one All and it is the last mechanism.
struct SpfRecord {
  std::vector<SpfMechanism> mechanisms;
};

struct DmarcRecord {
  DmarcPolicy policy = DmarcPolicy::None;
  AlignmentMode alignment = AlignmentMode::Relaxed;
};

struct KeyRecord {
  std::string selector;
  std::string domain;
  std::string key_id;  // doubles as the signing secret in the tag scheme
};

// Accepts both the zone-file form ("ip4:... include:... -all") and the live
// TXT form with a leading "v=spf1".
inline SpfRecord parse_spf_record(std::string_view text) {
  SpfRecord record;
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  bool saw_all = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string tok = ascii_lower(tokens[i]);
    if (i == 0 && tok == "v=spf1") continue;
    if (saw_all)
      fail(ErrorCode::BadInput, "mechanism after terminal all: " + tokens[i]);
    if (tok.rfind("ip4:", 0) == 0) {
      record.mechanisms.push_back(SpfIp4{parse_cidr(tok.substr(4))});
    } else if (tok.rfind("include:", 0) == 0) {
      std::string domain = tok.substr(8);
      if (!is_valid_dns_name(domain))
        fail(ErrorCode::BadInput, "bad include target: " + tokens[i]);
      record.mechanisms.push_back(SpfInclude{std::move(domain)});
    } else if (tok == "all" || tok == "+all") {
      record.mechanisms.push_back(SpfAll{SpfAllQualifier::Pass});
      saw_all = true;
    } else if (tok == "-all") {
      record.mechanisms.push_back(SpfAll{SpfAllQualifier::Fail});
      saw_all = true;
    } else if (tok == "~all") {
      record.mechanisms.push_back(SpfAll{SpfAllQualifier::SoftFail});
      saw_all = true;
    } else {
      record.mechanisms.push_back(SpfOther{tokens[i]});
    }
  }
  return record;
}

// Simulated DNS: SPF, DMARC and key registry by domain. Keys are addressed
// by selector within a domain.
struct ZoneDb {
  std::map<std::string, SpfRecord> spf;
  std::map<std::string, DmarcRecord> dmarc;
  std::map<std::string, KeyRecord> keys;  // "selector:domain"

  static std::string key_slot(const std::string& selector, const std::string& domain) {
    return selector + ":" + domain;
  }

  void put_spf(const std::string& domain, std::string_view record_text) {
    spf[ascii_lower(domain)] = parse_spf_record(record_text);
  }
  void put_dmarc(const std::string& domain, DmarcPolicy p,
                 AlignmentMode m = AlignmentMode::Relaxed) {
    dmarc[ascii_lower(domain)] = DmarcRecord{p, m};
  }
  void put_key(const std::string& selector, const std::string& domain,
               const std::string& key_id) {
    keys[key_slot(selector, ascii_lower(domain))] =
        KeyRecord{selector, ascii_lower(domain), key_id};
  }
};

struct SpfEvaluation {
  SpfVerdict verdict = SpfVerdict::None;
  int lookups = 0;  // record fetches, root included
};

inline constexpr int kSpfLookupLimit = 10;

namespace detail {

inline SpfVerdict evaluate_spf_rec(const ZoneDb& zone, const std::string& domain,
                                   IpAddr ip, int& lookups) {
  if (lookups >= kSpfLookupLimit) return SpfVerdict::PermError;
  ++lookups;
  auto it = zone.spf.find(ascii_lower(domain));
  if (it == zone.spf.end()) return SpfVerdict::None;
  for (const auto& mech : it->second.mechanisms) {
    if (const auto* ip4 = std::get_if<SpfIp4>(&mech)) {
      if (ip4->cidr.contains(ip)) return SpfVerdict::Pass;
    } else if (const auto* inc = std::get_if<SpfInclude>(&mech)) {
      SpfVerdict sub = evaluate_spf_rec(zone, inc->domain, ip, lookups);
      if (sub == SpfVerdict::Pass) return SpfVerdict::Pass;
      if (sub == SpfVerdict::PermError) return SpfVerdict::PermError;
      // Fail/SoftFail/None inside an include just means "not matched".
    } else if (const auto* all = std::get_if<SpfAll>(&mech)) {
      switch (all->qualifier) {
        case SpfAllQualifier::Pass: return SpfVerdict::Pass;
        case SpfAllQualifier::Fail: return SpfVerdict::Fail;
        case SpfAllQualifier::SoftFail: return SpfVerdict::SoftFail;
      }
    }
    // SpfOther never matches.
  }
  return SpfVerdict::None;
}

}  // namespace detail

// Depth-first evaluation with the 10-fetch budget; exceeding it is the
// LookupLimitExceeded condition and surfaces as PermError. A domain with no
// record evaluates to None.
inline SpfEvaluation evaluate_spf(const ZoneDb& zone, const std::string& domain,
                                  IpAddr sender_ip) {
  SpfEvaluation out;
  out.verdict = detail::evaluate_spf_rec(zone, domain, sender_ip, out.lookups);
  return out;
}

// Exact-domain record, else the registered domain's (organizational
// fallback), else nothing.
inline std::optional<DmarcRecord> lookup_dmarc(const ZoneDb& zone,
                                               const std::string& domain) {
  std::string lower = ascii_lower(domain);
  auto it = zone.dmarc.find(lower);
  if (it != zone.dmarc.end()) return it->second;
  std::string org = org_domain_or_self(lower);
  if (org != lower) {
    it = zone.dmarc.find(org);
    if (it != zone.dmarc.end()) return it->second;
  }
  return std::nullopt;
}

inline std::optional<KeyRecord> lookup_key(const ZoneDb& zone,
                                           const std::string& selector,
                                           const std::string& domain) {
  auto it = zone.keys.find(ZoneDb::key_slot(selector, ascii_lower(domain)));
  if (it == zone.keys.end()) return std::nullopt;
  return it->second;
}

// Zone file shape:
//   {"state.gov": {"spf": "include:spf.protection.outlook.com -all",
//                  "dmarc": {"p": "reject", "alignment": "relaxed"},
//                  "keys": [{"selector": "s1", "key_id": "k1"}]}}
inline ZoneDb zone_from_json(const njson& j) {
  ZoneDb zone;
  if (!j.is_object()) fail(ErrorCode::BadInput, "zone file must be an object");
  for (const auto& [domain, entry] : j.items()) {
    if (entry.contains("spf")) zone.put_spf(domain, entry.at("spf").get<std::string>());
    if (entry.contains("dmarc")) {
      const auto& d = entry.at("dmarc");
      zone.put_dmarc(domain, dmarc_policy_from_string(d.at("p").get<std::string>()),
                     alignment_from_string(d.value("alignment", std::string{"relaxed"})));
    }
    if (entry.contains("keys")) {
      for (const auto& k : entry.at("keys"))
        zone.put_key(k.at("selector").get<std::string>(), domain,
                     k.at("key_id").get<std::string>());
    }
  }
  return zone;
}

// Later entries win; used to layer scenario zones over the standard fixture.
inline void zone_merge(ZoneDb& base, const ZoneDb& extra) {
  for (const auto& [k, v] : extra.spf) base.spf[k] = v;
  for (const auto& [k, v] : extra.dmarc) base.dmarc[k] = v;
  for (const auto& [k, v] : extra.keys) base.keys[k] = v;
}

}  // namespace fwdsim
