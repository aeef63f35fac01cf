#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fwdsim/message.hpp"
#include "fwdsim/zone.hpp"

namespace fwdsim {

// Deterministic keyed tag standing in for a real signature: FNV-1a 64 over
// key, a separator, and the payload. Every party here is simulated, so
// unforgeability is not required, only that a changed payload or a changed
// key changes the tag.
inline std::string keyed_tag(std::string_view key, std::string_view payload) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(key);
  h ^= 0xff;
  h *= 1099511628211ull;
  mix(payload);
  constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// SPF is checked against the MAIL FROM domain; the null reverse-path checks
// nothing.
inline SpfCheck check_spf(const ZoneDb& zone, const EmailMessage& msg) {
  if (!msg.envelope.mail_from) return SpfCheck{SpfVerdict::None, ""};
  const std::string& domain = msg.envelope.mail_from->domain;
  return SpfCheck{evaluate_spf(zone, domain, msg.origin_ip).verdict, domain};
}

namespace detail {

inline std::string dkim_payload(const EmailMessage& msg, const DkimSignature& sig) {
  return sig.selector + "|" + sig.signer_domain + "|" +
         canonicalize(msg, sig.signed_headers);
}

}  // namespace detail

inline const std::vector<std::string> kDkimSignedHeaders = {"from", "to", "subject"};

inline DkimSignature sign_dkim(const EmailMessage& msg, const std::string& signer_domain,
                               const std::string& selector, const ZoneDb& zone) {
  auto key = lookup_key(zone, selector, signer_domain);
  if (!key)
    fail(ErrorCode::UnknownKey, "no key " + selector + " for " + signer_domain);
  DkimSignature sig;
  sig.signer_domain = ascii_lower(signer_domain);
  sig.selector = selector;
  sig.signed_headers = kDkimSignedHeaders;
  sig.tag = keyed_tag(key->key_id, detail::dkim_payload(msg, sig));
  return sig;
}

inline EmailMessage with_dkim_signature(EmailMessage msg, const std::string& signer_domain,
                                        const std::string& selector, const ZoneDb& zone) {
  msg.headers.dkim_signatures.push_back(sign_dkim(msg, signer_domain, selector, zone));
  return msg;
}

// Verifies every signature in header order. A signature whose key is not in
// the registry is invalid, not an error.
inline std::vector<DkimResult> verify_dkim(const ZoneDb& zone, const EmailMessage& msg) {
  std::vector<DkimResult> out;
  out.reserve(msg.headers.dkim_signatures.size());
  for (const auto& sig : msg.headers.dkim_signatures) {
    DkimResult r{sig.signer_domain, false};
    if (auto key = lookup_key(zone, sig.selector, sig.signer_domain))
      r.valid = sig.tag == keyed_tag(key->key_id, detail::dkim_payload(msg, sig));
    out.push_back(std::move(r));
  }
  return out;
}

// Identifier alignment. Relaxed compares registered domains, strict the full
// names. A domain with no registrable part falls back to itself under
// relaxed, so single-label oddities still compare.
inline bool domains_aligned(const std::string& from_domain, const std::string& other,
                            AlignmentMode mode) {
  if (other.empty()) return false;
  if (mode == AlignmentMode::Strict) return ascii_lower(from_domain) == ascii_lower(other);
  return org_domain_or_self(from_domain) == org_domain_or_self(other);
}

// DMARC: pass requires an aligned SPF pass or an aligned valid DKIM
// signature; the applicable policy comes from the FROM domain's record (or
// its organizational fallback), Absent when none exists.
inline DmarcResult evaluate_dmarc(const ZoneDb& zone, const EmailMessage& msg,
                                  const SpfCheck& spf,
                                  const std::vector<DkimResult>& dkim) {
  DmarcResult out;
  const std::string& from_domain = msg.headers.from.domain;
  auto record = lookup_dmarc(zone, from_domain);
  out.applicable_policy = record ? record->policy : DmarcPolicy::Absent;
  out.alignment = record ? record->alignment : AlignmentMode::Relaxed;
  bool spf_aligned = spf.verdict == SpfVerdict::Pass &&
                     domains_aligned(from_domain, spf.checked_domain, out.alignment);
  bool dkim_aligned = false;
  for (const auto& r : dkim)
    dkim_aligned |= r.valid && domains_aligned(from_domain, r.signer_domain, out.alignment);
  out.aligned_pass = spf_aligned || dkim_aligned;
  return out;
}

// Full pipeline for one inbound message; ARC is the receiver's concern and
// stays NotEvaluated here.
inline AuthOutcome authenticate(const ZoneDb& zone, const EmailMessage& msg) {
  AuthOutcome out;
  out.spf = check_spf(zone, msg);
  out.dkim = verify_dkim(zone, msg);
  out.dmarc = evaluate_dmarc(zone, msg, out.spf, out.dkim);
  return out;
}

namespace detail {

// A seal covers the FROM header, every earlier set verbatim, and this set's
// own metadata. Envelope rewrites therefore never break a seal; a FROM
// rewrite breaks every seal.
inline std::string arc_payload(const EmailMessage& msg, std::size_t upto,
                               const ArcSet& sealed) {
  njson prior = njson::array();
  for (std::size_t i = 0; i < upto; ++i) prior.push_back(msg.headers.arc_sets[i]);
  ArcSet meta = sealed;
  meta.seal_tag.clear();
  njson meta_json = meta;
  return canonicalize(msg, {"from"}) + "\n--arc--\n" + prior.dump() + "\n" +
         meta_json.dump();
}

}  // namespace detail

inline bool verify_arc_seal(const ZoneDb& zone, const EmailMessage& msg,
                            std::size_t index) {
  if (index >= msg.headers.arc_sets.size()) return false;
  const ArcSet& set = msg.headers.arc_sets[index];
  auto key = lookup_key(zone, "arc", set.sealer_domain);
  if (!key) return false;
  return set.seal_tag ==
         keyed_tag(key->key_id, detail::arc_payload(msg, index, set));
}

// Appends the next ARC set. chain_valid starts true on a virgin chain and
// stays true only while every earlier seal still verifies; the instance-1
// recorded DMARC result is judged separately at validation time.
inline EmailMessage seal_arc(EmailMessage msg, const std::string& sealer_domain,
                             const AuthOutcome& outcome, const ZoneDb& zone) {
  auto key = lookup_key(zone, "arc", sealer_domain);
  if (!key)
    fail(ErrorCode::UnknownKey, "no arc key for " + sealer_domain);
  ArcSet set;
  set.instance = static_cast<int>(msg.headers.arc_sets.size()) + 1;
  set.sealer_domain = ascii_lower(sealer_domain);
  set.recorded_results = outcome;
  if (msg.headers.arc_sets.empty()) {
    set.chain_valid = true;
  } else {
    bool prior_ok = msg.headers.arc_sets.back().chain_valid;
    for (std::size_t i = 0; i < msg.headers.arc_sets.size() && prior_ok; ++i)
      prior_ok = verify_arc_seal(zone, msg, i);
    set.chain_valid = prior_ok;
  }
  set.seal_tag = keyed_tag(
      key->key_id, detail::arc_payload(msg, msg.headers.arc_sets.size(), set));
  msg.headers.arc_sets.push_back(std::move(set));
  return msg;
}

enum class ArcMode { Off, Correct, ZohoBuggy };

inline std::string to_string(ArcMode m) {
  switch (m) {
    case ArcMode::Off: return "off";
    case ArcMode::Correct: return "correct";
    case ArcMode::ZohoBuggy: return "zoho_buggy";
  }
  return "off";
}

inline ArcMode arc_mode_from_string(const std::string& s) {
  if (s == "off") return ArcMode::Off;
  if (s == "correct") return ArcMode::Correct;
  if (s == "zoho_buggy") return ArcMode::ZohoBuggy;
  fail(ErrorCode::BadInput, "unknown arc mode: " + s);
}

// Correct validation demands an intact, fully trusted chain whose first hop
// saw the message pass DMARC. The buggy variant looks no further than the
// newest seal: a trusted last sealer vouches for everything, including a
// chain that has recorded failures from the start.
inline ArcCheck validate_arc(const ZoneDb& zone, const EmailMessage& msg,
                             const std::set<std::string>& trusted_sealers,
                             ArcMode mode) {
  const auto& sets = msg.headers.arc_sets;
  if (mode == ArcMode::Off || sets.empty()) return ArcCheck::NoOverride;
  if (mode == ArcMode::ZohoBuggy) {
    std::size_t last = sets.size() - 1;
    bool ok = trusted_sealers.contains(sets[last].sealer_domain) &&
              verify_arc_seal(zone, msg, last);
    return ok ? ArcCheck::OverridePass : ArcCheck::NoOverride;
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!trusted_sealers.contains(sets[i].sealer_domain)) return ArcCheck::NoOverride;
    if (!sets[i].chain_valid) return ArcCheck::NoOverride;
    if (!verify_arc_seal(zone, msg, i)) return ArcCheck::NoOverride;
  }
  if (!sets.front().recorded_results.dmarc.aligned_pass) return ArcCheck::NoOverride;
  return ArcCheck::OverridePass;
}

}  // namespace fwdsim
