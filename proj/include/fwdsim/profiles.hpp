#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fwdsim/auth.hpp"
#include "fwdsim/forwarding.hpp"

namespace fwdsim {

// Ceiling on the DMARC policy a recipient allowlist entry may override.
enum class AllowlistScope { MaxNone, MaxQuarantine, MaxReject };

inline std::string to_string(AllowlistScope s) {
  switch (s) {
    case AllowlistScope::MaxNone: return "max_none";
    case AllowlistScope::MaxQuarantine: return "max_quarantine";
    case AllowlistScope::MaxReject: return "max_reject";
  }
  return "max_none";
}

inline AllowlistScope allowlist_scope_from_string(const std::string& s) {
  if (s == "max_none") return AllowlistScope::MaxNone;
  if (s == "max_quarantine") return AllowlistScope::MaxQuarantine;
  if (s == "max_reject") return AllowlistScope::MaxReject;
  fail(ErrorCode::BadInput, "unknown allowlist scope: " + s);
}

inline int scope_rank(AllowlistScope s) {
  switch (s) {
    case AllowlistScope::MaxNone: return 0;
    case AllowlistScope::MaxQuarantine: return 1;
    case AllowlistScope::MaxReject: return 2;
  }
  return 0;
}

// One entry of a provider's relaxed-validation table: mail forwarded by the
// named provider is accepted despite a DMARC failure, up to max_policy.
// requires_to_mismatch models the recipient-must-not-be-in-TO condition.
struct RelaxedSource {
  DmarcPolicy max_policy = DmarcPolicy::None;  // None or Quarantine
  bool requires_to_mismatch = false;
};

struct ProviderProfile {
  std::string name;
  std::string domain;  // primary account domain, also the ARC sealer identity
  std::vector<std::string> hosted_domains;
  ForwardingMechanism forwarding_mechanism = ForwardingMechanism::Pmf;
  bool is_mailing_list = false;
  bool open_forwarding = false;
  bool notifies_destination = false;
  bool enforces_dmarc = true;
  bool quarantine_instead_of_reject = false;
  bool fail_none_means_quarantine = false;
  bool warn_on_dmarc_fail = false;
  AllowlistScope allowlist_override_scope = AllowlistScope::MaxQuarantine;
  std::set<std::string> protected_domains;
  std::map<std::string, RelaxedSource> relaxed_validation_sources;  // by provider name
  bool unsolicited_dkim_for_hosted = false;
  ArcMode arc_mode = ArcMode::Off;
  std::set<std::string> arc_trust;  // provider names
  bool arc_seals_on_forward = false;
  bool gmail_ui_bug = false;
  bool list_modifies_body = false;
  IpAddr sending_ip = 0;
  Cidr sending_range;       // block the provider's customers incorporate
  std::string spf_domain;   // include target; empty = publish ip4 directly
};

using ProfileMap = std::map<std::string, ProviderProfile>;

struct UserAccount {
  EmailAddress address;
  std::string provider;  // profile name
  std::vector<std::string> allowlist;  // addr-specs or bare domains
  std::optional<EmailAddress> forward_to;
  bool forward_confirmed = false;
  std::vector<EmailAddress> members;  // mailing-list recipients
};

enum class Verdict { Inbox, Spam, Reject };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Inbox: return "inbox";
    case Verdict::Spam: return "spam";
    case Verdict::Reject: return "reject";
  }
  return "reject";
}

struct Disposition {
  Verdict verdict = Verdict::Inbox;
  bool warning = false;
};

inline void to_json(njson& j, const Disposition& d) {
  j = njson{{"verdict", to_string(d.verdict)}, {"warning", d.warning}};
}

// ---------------------------------------------------------------------------
// Builtin presets: sixteen consumer providers and four mailing-list stacks.
// Sending addresses and CIDR blocks are fixture values; only the behavior
// flags encode the modeled provider policies.
// ---------------------------------------------------------------------------

inline ProfileMap builtin_profiles() {
  ProfileMap m;
  auto add = [&m](ProviderProfile p) { m[p.name] = std::move(p); };

  {
    ProviderProfile p;
    p.name = "Gmail";
    p.domain = "gmail.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = false;  // destination must confirm
    p.warn_on_dmarc_fail = true;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.relaxed_validation_sources = {
        {"Gmail", {DmarcPolicy::Quarantine, false}},
        {"Outlook", {DmarcPolicy::Quarantine, false}},
        {"Fastmail", {DmarcPolicy::Quarantine, true}},
    };
    p.arc_mode = ArcMode::Correct;
    p.arc_trust = {"Gmail", "Fastmail", "Pobox"};
    p.arc_seals_on_forward = true;
    p.gmail_ui_bug = true;
    p.sending_ip = parse_ip("209.85.1.1");
    p.sending_range = parse_cidr("209.85.0.0/16");
    p.spf_domain = "spf.google.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Outlook";
    p.domain = "outlook.com";
    p.forwarding_mechanism = ForwardingMechanism::Mfef;
    p.open_forwarding = true;
    p.quarantine_instead_of_reject = true;
    p.fail_none_means_quarantine = true;  // DMARC fail never reaches inbox
    p.allowlist_override_scope = AllowlistScope::MaxReject;
    p.protected_domains = {"aa.com", "foxnews.com", "ikea.com", "citizensbank.com"};
    p.relaxed_validation_sources = {
        {"Gmail", {DmarcPolicy::None, false}},
        {"Fastmail", {DmarcPolicy::None, false}},
    };
    p.arc_mode = ArcMode::Correct;
    p.arc_trust = {"Gmail"};
    p.arc_seals_on_forward = false;  // seals only mail that would pass anyway
    p.sending_ip = parse_ip("40.92.1.1");
    p.sending_range = parse_cidr("40.92.0.0/15");
    p.spf_domain = "spf.protection.outlook.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Fastmail";
    p.domain = "fastmail.com";
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = true;
    p.quarantine_instead_of_reject = true;
    p.allowlist_override_scope = AllowlistScope::MaxReject;
    p.arc_mode = ArcMode::Correct;
    p.arc_trust = {"Gmail", "Zoho", "Fastmail", "Pobox"};
    p.arc_seals_on_forward = true;
    p.sending_ip = parse_ip("103.168.172.10");
    p.sending_range = parse_cidr("103.168.172.0/24");
    p.spf_domain = "spf.fastmail.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Zoho";
    p.domain = "zohomail.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = false;
    p.warn_on_dmarc_fail = true;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.arc_mode = ArcMode::ZohoBuggy;  // only the newest seal is examined
    p.arc_trust = {"Gmail", "Fastmail", "Pobox"};
    p.arc_seals_on_forward = true;
    p.sending_ip = parse_ip("136.143.1.1");
    p.sending_range = parse_cidr("136.143.0.0/16");
    p.spf_domain = "spf.zoho.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Pobox";
    p.domain = "pobox.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = true;
    p.notifies_destination = true;
    p.quarantine_instead_of_reject = true;
    p.allowlist_override_scope = AllowlistScope::MaxReject;
    p.arc_mode = ArcMode::Correct;
    p.arc_trust = {"Gmail", "Fastmail", "Pobox"};
    p.arc_seals_on_forward = true;
    p.sending_ip = parse_ip("64.147.1.1");
    p.sending_range = parse_cidr("64.147.0.0/16");
    p.spf_domain = "spf.pobox.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "iCloud";
    p.domain = "icloud.com";
    p.hosted_domains = {"peterborgapps.com"};
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = true;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.unsolicited_dkim_for_hosted = true;
    p.sending_ip = parse_ip("17.57.1.1");
    p.sending_range = parse_cidr("17.57.0.0/16");
    p.spf_domain = "spf.icloud.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Hushmail";
    p.domain = "hushmail.com";
    p.hosted_domains = {"secureclinic.com"};
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = true;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.unsolicited_dkim_for_hosted = true;
    p.sending_ip = parse_ip("65.39.1.1");
    p.sending_range = parse_cidr("65.39.0.0/16");
    p.spf_domain = "spf.hushmail.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Runbox";
    p.domain = "runbox.com";
    p.hosted_domains = {"nordicpress.no"};
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = true;
    p.enforces_dmarc = false;
    p.unsolicited_dkim_for_hosted = true;
    p.sending_ip = parse_ip("91.220.196.10");
    p.sending_range = parse_cidr("91.220.196.0/24");
    p.spf_domain = "spf.runbox.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Freemail";
    p.domain = "freemail.hu";
    p.forwarding_mechanism = ForwardingMechanism::Mfef;
    p.open_forwarding = true;
    p.enforces_dmarc = false;
    p.sending_ip = parse_ip("84.2.1.1");
    p.sending_range = parse_cidr("84.2.0.0/16");
    p.spf_domain = "spf.freemail.hu";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Mail2World";
    p.domain = "mail2world.com";
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = true;
    p.notifies_destination = true;
    p.enforces_dmarc = false;
    p.sending_ip = parse_ip("64.88.1.1");
    p.sending_range = parse_cidr("64.88.0.0/16");
    p.spf_domain = "spf.mail2world.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "GoDaddy";
    p.domain = "godaddy.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = true;
    p.sending_ip = parse_ip("173.201.1.1");
    p.sending_range = parse_cidr("173.201.0.0/16");
    p.spf_domain = "spf.godaddy.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Onet";
    p.domain = "onet.pl";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = true;
    p.warn_on_dmarc_fail = true;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.sending_ip = parse_ip("213.180.1.1");
    p.sending_range = parse_cidr("213.180.0.0/16");
    p.spf_domain = "spf.onet.pl";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "GMX";
    p.domain = "gmx.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = false;
    p.quarantine_instead_of_reject = true;
    p.allowlist_override_scope = AllowlistScope::MaxReject;
    p.sending_ip = parse_ip("212.227.1.1");
    p.sending_range = parse_cidr("212.227.0.0/16");
    p.spf_domain = "spf.gmx.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Inbox.lv";
    p.domain = "inbox.lv";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.open_forwarding = false;
    p.quarantine_instead_of_reject = true;
    p.allowlist_override_scope = AllowlistScope::MaxReject;
    p.sending_ip = parse_ip("194.152.1.1");
    p.sending_range = parse_cidr("194.152.0.0/16");
    p.spf_domain = "spf.inbox.lv";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Mail.ru";
    p.domain = "mail.ru";
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = false;
    p.allowlist_override_scope = AllowlistScope::MaxQuarantine;
    p.relaxed_validation_sources = {{"Gmail", {DmarcPolicy::Quarantine, false}}};
    p.sending_ip = parse_ip("94.100.1.1");
    p.sending_range = parse_cidr("94.100.0.0/16");
    p.spf_domain = "spf.mail.ru";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Yahoo";
    p.domain = "yahoo.com";
    p.forwarding_mechanism = ForwardingMechanism::Pmf;
    p.open_forwarding = false;
    p.allowlist_override_scope = AllowlistScope::MaxNone;
    p.sending_ip = parse_ip("98.136.1.1");
    p.sending_range = parse_cidr("98.136.0.0/16");
    p.spf_domain = "spf.yahoo.com";
    add(std::move(p));
  }

  // Mailing-list stacks. Delivery is membership fan-out, never user
  // forwarding; allowlists play no role on a list.
  {
    ProviderProfile p;
    p.name = "Gaggle";
    p.domain = "gaggle.email";
    p.forwarding_mechanism = ForwardingMechanism::RemMod;
    p.is_mailing_list = true;
    p.enforces_dmarc = false;
    p.allowlist_override_scope = AllowlistScope::MaxNone;
    p.sending_ip = parse_ip("216.198.1.1");
    p.sending_range = parse_cidr("216.198.0.0/16");
    p.spf_domain = "spf.gaggle.email";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "GoogleGroups";
    p.domain = "googlegroups.com";
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.is_mailing_list = true;
    p.allowlist_override_scope = AllowlistScope::MaxNone;
    p.arc_seals_on_forward = true;
    p.sending_ip = parse_ip("209.85.1.2");  // rides Google infrastructure
    p.sending_range = parse_cidr("209.85.0.0/16");
    p.spf_domain = "spf.google.com";
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Mailman";
    p.domain = "lists.univ.edu";  // the fixture deployment
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.is_mailing_list = true;
    p.allowlist_override_scope = AllowlistScope::MaxNone;
    p.arc_seals_on_forward = true;
    p.sending_ip = parse_ip("198.51.100.80");
    p.sending_range = parse_cidr("198.51.100.80/32");
    add(std::move(p));
  }
  {
    ProviderProfile p;
    p.name = "Listserv";
    p.domain = "listserv.wa.gov";  // the fixture deployment
    p.forwarding_mechanism = ForwardingMechanism::Rem;
    p.is_mailing_list = true;
    p.allowlist_override_scope = AllowlistScope::MaxNone;
    p.sending_ip = parse_ip("198.51.100.90");
    p.sending_range = parse_cidr("198.51.100.90/32");
    add(std::move(p));
  }
  return m;
}

// Exact-match identification of the server that handed us the message.
inline const ProviderProfile* provider_by_ip(const ProfileMap& profiles, IpAddr ip) {
  for (const auto& [name, p] : profiles)
    if (p.sending_ip == ip) return &p;
  return nullptr;
}

namespace detail {

inline bool allowlist_matches(const UserAccount& account, const EmailAddress& from) {
  std::string spec = ascii_lower(from.addr_spec());
  for (const auto& raw : account.allowlist) {
    std::string entry = ascii_lower(raw);
    if (entry.find('@') != std::string::npos) {
      if (entry == spec) return true;
    } else if (entry == from.domain) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

struct InboundDecision {
  Disposition disposition;
  AuthOutcome outcome;
  std::vector<std::string> overrides;  // which escape hatches fired
};

// Inbound disposition procedure. Ordering is fixed: authenticate, DMARC
// pass, ARC override, allowlist override, relaxed validation, policy
// application, then the forwarded-mail warning pass. The warning pass never
// touches ARC or allowlist results.
inline InboundDecision decide_inbound(const ProviderProfile& profile,
                                      const UserAccount& account,
                                      const EmailMessage& msg, const ZoneDb& zone,
                                      const ProfileMap& profiles) {
  InboundDecision d;
  d.outcome = authenticate(zone, msg);
  const DmarcResult& dmarc = d.outcome.dmarc;
  bool warning_pass_applies = true;

  Disposition& out = d.disposition;
  if (dmarc.aligned_pass) {
    out = {Verdict::Inbox, false};
  } else {
    bool resolved = false;
    if (profile.arc_mode != ArcMode::Off) {
      std::set<std::string> trusted;
      for (const auto& name : profile.arc_trust) {
        auto it = profiles.find(name);
        if (it != profiles.end()) trusted.insert(it->second.domain);
      }
      d.outcome.arc = validate_arc(zone, msg, trusted, profile.arc_mode);
      if (d.outcome.arc == ArcCheck::OverridePass) {
        out = {Verdict::Inbox, false};
        d.overrides.push_back("arc");
        warning_pass_applies = false;
        resolved = true;
      }
    }
    if (!resolved && detail::allowlist_matches(account, msg.headers.from) &&
        policy_rank(dmarc.applicable_policy) <=
            scope_rank(profile.allowlist_override_scope) &&
        !profile.protected_domains.contains(msg.headers.from.domain)) {
      out = {Verdict::Inbox, false};
      d.overrides.push_back("allowlist");
      warning_pass_applies = false;
      resolved = true;
    }
    if (!resolved && msg.forwarded()) {
      const ProviderProfile* source = provider_by_ip(profiles, msg.origin_ip);
      if (source) {
        auto it = profile.relaxed_validation_sources.find(source->name);
        if (it != profile.relaxed_validation_sources.end() &&
            policy_rank(dmarc.applicable_policy) <= policy_rank(it->second.max_policy) &&
            (!it->second.requires_to_mismatch ||
             msg.headers.to != account.address)) {
          out = {Verdict::Inbox, false};
          d.overrides.push_back("relaxed_validation");
          resolved = true;
        }
      }
    }
    if (!resolved) {
      if (!profile.enforces_dmarc) {
        out = {Verdict::Inbox, false};
      } else {
        switch (dmarc.applicable_policy) {
          case DmarcPolicy::Reject:
            out = {profile.quarantine_instead_of_reject ? Verdict::Spam
                                                        : Verdict::Reject,
                   false};
            break;
          case DmarcPolicy::Quarantine:
            out = {Verdict::Spam, false};
            break;
          case DmarcPolicy::None:
          case DmarcPolicy::Absent:
            if (profile.fail_none_means_quarantine)
              out = {Verdict::Spam, false};
            else
              out = {Verdict::Inbox, profile.warn_on_dmarc_fail};
            break;
        }
      }
    }
  }

  // Forwarded-mail warning. Suppressed only by the indicator bug: no DKIM
  // header at all and the same registered domain in MAIL FROM and FROM.
  if (warning_pass_applies && out.verdict == Verdict::Inbox &&
      profile.warn_on_dmarc_fail && msg.forwarded()) {
    bool bug = profile.gmail_ui_bug && msg.headers.dkim_signatures.empty() &&
               msg.envelope.mail_from &&
               org_domain_or_self(msg.envelope.mail_from->domain) ==
                   org_domain_or_self(msg.headers.from.domain);
    if (!bug) out.warning = true;
  }
  return d;
}

enum class ConfigureResult { Ok, NeedsConfirmation, Denied };

inline std::string to_string(ConfigureResult r) {
  switch (r) {
    case ConfigureResult::Ok: return "ok";
    case ConfigureResult::NeedsConfirmation: return "needs_confirmation";
    case ConfigureResult::Denied: return "denied";
  }
  return "denied";
}

// Sets up user forwarding. Open-forwarding providers activate immediately
// (some notify the destination, which the caller records); the rest keep the
// rule inert until the destination confirms.
inline ConfigureResult configure_forwarding(const ProviderProfile& profile,
                                            UserAccount& account,
                                            const EmailAddress& destination) {
  if (profile.is_mailing_list) return ConfigureResult::Denied;
  account.forward_to = destination;
  account.forward_confirmed = profile.open_forwarding;
  return profile.open_forwarding ? ConfigureResult::Ok
                                 : ConfigureResult::NeedsConfirmation;
}

// Only the configured destination may confirm.
inline void confirm_destination(UserAccount& account, const EmailAddress& by) {
  if (!account.forward_to)
    fail(ErrorCode::InvalidSetup,
         "no forwarding configured on " + account.address.addr_spec());
  if (*account.forward_to != by)
    fail(ErrorCode::InvalidSetup,
         by.addr_spec() + " is not the forwarding destination of " +
             account.address.addr_spec());
  account.forward_confirmed = true;
}

inline bool forwarding_active(const UserAccount& account) {
  return account.forward_to.has_value() && account.forward_confirmed;
}

struct ForwardDecision {
  InboundDecision inbound;
  bool forward = false;
  std::vector<EmailMessage> messages;  // one per destination, in order
};

// Forwarding path: the inbound procedure decides whether the message
// survives; surviving mail is rewritten per mechanism, optionally signed for
// hosted sender domains, and optionally ARC-sealed with this hop's outcome.
inline ForwardDecision decide_forward(const ProviderProfile& profile,
                                      const UserAccount& account,
                                      const EmailMessage& msg, const ZoneDb& zone,
                                      const ProfileMap& profiles) {
  ForwardDecision fd;
  fd.inbound = decide_inbound(profile, account, msg, zone, profiles);
  if (fd.inbound.disposition.verdict != Verdict::Inbox) return fd;

  std::vector<EmailAddress> destinations;
  if (profile.is_mailing_list) {
    destinations = account.members;
  } else if (forwarding_active(account)) {
    destinations.push_back(*account.forward_to);
  }
  if (destinations.empty()) return fd;

  fd.forward = true;
  ForwarderIdentity identity{account.address, profile.sending_ip};
  for (const auto& dest : destinations) {
    EmailMessage next = apply_forwarding(msg, profile.forwarding_mechanism, identity,
                                         dest, profile.list_modifies_body);
    if (profile.unsolicited_dkim_for_hosted) {
      const std::string& from_domain = next.headers.from.domain;
      bool hosted = false;
      for (const auto& d : profile.hosted_domains) hosted |= d == from_domain;
      if (hosted && lookup_key(zone, "hosted", from_domain))
        next = with_dkim_signature(next, from_domain, "hosted", zone);
    }
    if (profile.arc_seals_on_forward)
      next = seal_arc(std::move(next), profile.domain, fd.inbound.outcome, zone);
    fd.messages.push_back(std::move(next));
  }
  return fd;
}

// ---------------------------------------------------------------------------
// Profile overrides: a JSON object keyed by preset name, each value a patch
// of the fields below. Unknown names and unknown fields are errors.
// ---------------------------------------------------------------------------

inline void apply_profile_patch(ProviderProfile& p, const njson& patch) {
  for (const auto& [key, value] : patch.items()) {
    if (key == "domain") {
      p.domain = value.get<std::string>();
    } else if (key == "hosted_domains") {
      p.hosted_domains = value.get<std::vector<std::string>>();
    } else if (key == "forwarding_mechanism") {
      p.forwarding_mechanism = mechanism_from_string(value.get<std::string>());
    } else if (key == "is_mailing_list") {
      p.is_mailing_list = value.get<bool>();
    } else if (key == "open_forwarding") {
      p.open_forwarding = value.get<bool>();
    } else if (key == "notifies_destination") {
      p.notifies_destination = value.get<bool>();
    } else if (key == "enforces_dmarc") {
      p.enforces_dmarc = value.get<bool>();
    } else if (key == "quarantine_instead_of_reject") {
      p.quarantine_instead_of_reject = value.get<bool>();
    } else if (key == "fail_none_means_quarantine") {
      p.fail_none_means_quarantine = value.get<bool>();
    } else if (key == "warn_on_dmarc_fail") {
      p.warn_on_dmarc_fail = value.get<bool>();
    } else if (key == "allowlist_override_scope") {
      p.allowlist_override_scope = allowlist_scope_from_string(value.get<std::string>());
    } else if (key == "protected_domains") {
      p.protected_domains.clear();
      for (const auto& d : value) p.protected_domains.insert(d.get<std::string>());
    } else if (key == "relaxed_validation_sources") {
      p.relaxed_validation_sources.clear();
      for (const auto& [name, src] : value.items()) {
        RelaxedSource rs;
        rs.max_policy = dmarc_policy_from_string(
            src.value("max_policy", std::string{"none"}));
        if (rs.max_policy != DmarcPolicy::None && rs.max_policy != DmarcPolicy::Quarantine)
          fail(ErrorCode::BadInput, "relaxed source max_policy must be none or quarantine");
        rs.requires_to_mismatch = src.value("requires_to_mismatch", false);
        p.relaxed_validation_sources[name] = rs;
      }
    } else if (key == "unsolicited_dkim_for_hosted") {
      p.unsolicited_dkim_for_hosted = value.get<bool>();
    } else if (key == "arc_mode") {
      p.arc_mode = arc_mode_from_string(value.get<std::string>());
    } else if (key == "arc_trust") {
      p.arc_trust.clear();
      for (const auto& n : value) p.arc_trust.insert(n.get<std::string>());
    } else if (key == "arc_seals_on_forward") {
      p.arc_seals_on_forward = value.get<bool>();
    } else if (key == "gmail_ui_bug") {
      p.gmail_ui_bug = value.get<bool>();
    } else if (key == "list_modifies_body") {
      p.list_modifies_body = value.get<bool>();
    } else if (key == "sending_ip") {
      p.sending_ip = parse_ip(value.get<std::string>());
    } else if (key == "sending_range") {
      p.sending_range = parse_cidr(value.get<std::string>());
    } else if (key == "spf_domain") {
      p.spf_domain = value.get<std::string>();
    } else {
      fail(ErrorCode::BadInput, "unknown profile field: " + key);
    }
  }
  if (p.arc_mode == ArcMode::Off && !p.arc_trust.empty())
    fail(ErrorCode::BadInput,
         p.name + ": arc_trust requires an active arc_mode");
}

inline void apply_profile_overrides(ProfileMap& profiles, const njson& overrides) {
  if (!overrides.is_object())
    fail(ErrorCode::BadInput, "profile override file must be an object");
  for (const auto& [name, patch] : overrides.items()) {
    auto it = profiles.find(name);
    if (it == profiles.end())
      fail(ErrorCode::BadInput, "unknown profile name in override: " + name);
    apply_profile_patch(it->second, patch);
  }
}

}  // namespace fwdsim
