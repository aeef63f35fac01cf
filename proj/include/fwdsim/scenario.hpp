#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "fwdsim/profiles.hpp"

namespace fwdsim {

enum class SetupOp { AllowlistAdd, ConfigureForwarding, ConfirmDestination };

struct SetupStep {
  SetupOp op = SetupOp::AllowlistAdd;
  EmailAddress account;
  std::string arg;  // pattern, destination, or confirming address
};

struct Injection {
  EmailMessage message;
  std::string actor;  // label only; the message speaks for itself
  std::vector<std::pair<std::string, std::string>> sign_with;  // selector, domain
};

struct ExpectedOutcome {
  bool success_required = true;
  EmailAddress victim;
};

struct Scenario {
  std::string name;
  std::string description;
  ZoneDb zone;
  ProfileMap profiles;
  std::vector<UserAccount> accounts;
  std::vector<SetupStep> setup;
  Injection injection;
  ExpectedOutcome expect;
  int max_hops = 8;
};

struct TraceHop {
  int index = 0;
  std::string provider;
  std::string account;
  AuthOutcome outcome;
  std::string action;  // deliver | forward | drop
  Disposition disposition;
  std::string transform;  // mechanism name, or none
  std::vector<std::string> forwarded_to;
  std::vector<std::string> overrides;
};

struct DeliveryTrace {
  std::vector<std::string> setup_notes;
  std::vector<TraceHop> hops;
  std::map<std::string, Disposition> final;  // terminal recipient -> outcome
};

// Provider infrastructure records derived from the profile table: each
// provider's domain publishes its sending block (directly or through its
// include target), provider domains that are their own org domain carry a
// None policy, sealers get their arc key, hosted customer domains publish
// the provider's SPF plus their signing key.
inline ZoneDb infrastructure_zone(const ProfileMap& profiles) {
  ZoneDb zone;
  for (const auto& [name, p] : profiles) {
    if (p.domain.empty()) continue;
    std::string block = "ip4:" + format_cidr(p.sending_range);
    if (p.spf_domain.empty()) {
      zone.put_spf(p.domain, block + " -all");
    } else {
      zone.put_spf(p.domain, "include:" + p.spf_domain + " -all");
      zone.put_spf(p.spf_domain, block + " -all");
    }
    if (org_domain_or_self(p.domain) == p.domain)
      zone.put_dmarc(p.domain, DmarcPolicy::None);
    if (p.arc_seals_on_forward) zone.put_key("arc", p.domain, "arckey-" + p.domain);
    for (const auto& hosted : p.hosted_domains) {
      zone.put_spf(hosted, p.spf_domain.empty()
                               ? block + " -all"
                               : "include:" + p.spf_domain + " -all");
      zone.put_dmarc(hosted, DmarcPolicy::Quarantine);
      zone.put_key("hosted", hosted, "hostedkey-" + hosted);
    }
  }
  return zone;
}

namespace detail {

struct AccountIndex {
  std::map<std::string, UserAccount> by_address;

  UserAccount* find(const EmailAddress& addr) {
    auto it = by_address.find(ascii_lower(addr.addr_spec()));
    return it == by_address.end() ? nullptr : &it->second;
  }
};

}  // namespace detail

// Deterministic replay of one scenario: apply setup, inject, walk the
// forwarding graph breadth-first until every copy reaches a terminal
// disposition or the hop budget runs out.
inline DeliveryTrace run_scenario(const Scenario& s) {
  DeliveryTrace trace;

  detail::AccountIndex accounts;
  for (const auto& a : s.accounts) {
    if (!s.profiles.contains(a.provider))
      fail(ErrorCode::InvalidSetup,
           a.address.addr_spec() + " references unknown provider " + a.provider);
    std::string key = ascii_lower(a.address.addr_spec());
    if (accounts.by_address.contains(key))
      fail(ErrorCode::InvalidSetup, "duplicate account " + a.address.addr_spec());
    accounts.by_address.emplace(key, a);
  }

  for (const auto& step : s.setup) {
    UserAccount* acct = accounts.find(step.account);
    if (!acct)
      fail(ErrorCode::InvalidSetup,
           "setup references unknown account " + step.account.addr_spec());
    const ProviderProfile& profile = s.profiles.at(acct->provider);
    switch (step.op) {
      case SetupOp::AllowlistAdd:
        acct->allowlist.push_back(step.arg);
        trace.setup_notes.push_back("allowlist: " + acct->address.addr_spec() +
                                    " accepts " + step.arg);
        break;
      case SetupOp::ConfigureForwarding: {
        EmailAddress dest = parse_address(step.arg);
        ConfigureResult r = configure_forwarding(profile, *acct, dest);
        if (r == ConfigureResult::Denied)
          fail(ErrorCode::InvalidSetup,
               "forwarding cannot be configured on list account " +
                   acct->address.addr_spec());
        trace.setup_notes.push_back("forwarding: " + acct->address.addr_spec() +
                                    " -> " + dest.addr_spec() + " (" + to_string(r) +
                                    ")");
        if (profile.notifies_destination)
          trace.setup_notes.push_back("notice sent to " + dest.addr_spec() +
                                      " about forwarding from " +
                                      acct->address.addr_spec());
        break;
      }
      case SetupOp::ConfirmDestination: {
        confirm_destination(*acct, parse_address(step.arg));
        trace.setup_notes.push_back("forwarding to " + step.arg + " confirmed on " +
                                    acct->address.addr_spec());
        break;
      }
    }
  }

  EmailMessage first = s.injection.message;
  for (const auto& [selector, domain] : s.injection.sign_with)
    first = with_dkim_signature(first, domain, selector, s.zone);

  std::deque<EmailMessage> queue;
  queue.push_back(std::move(first));
  int hops = 0;
  while (!queue.empty()) {
    EmailMessage msg = std::move(queue.front());
    queue.pop_front();
    if (++hops > s.max_hops)
      fail(ErrorCode::HopLimitExceeded,
           "scenario exceeded " + std::to_string(s.max_hops) + " hops");

    UserAccount* acct = accounts.find(msg.envelope.rcpt_to);
    if (!acct)
      fail(ErrorCode::UnknownAccount,
           "no account for recipient " + msg.envelope.rcpt_to.addr_spec());
    const ProviderProfile& profile = s.profiles.at(acct->provider);

    TraceHop hop;
    hop.index = hops;
    hop.provider = profile.name;
    hop.account = acct->address.addr_spec();

    bool wants_forward = profile.is_mailing_list ? !acct->members.empty()
                                                 : forwarding_active(*acct);
    if (wants_forward) {
      ForwardDecision fd = decide_forward(profile, *acct, msg, s.zone, s.profiles);
      hop.outcome = fd.inbound.outcome;
      hop.disposition = fd.inbound.disposition;
      hop.overrides = fd.inbound.overrides;
      if (fd.forward) {
        hop.action = "forward";
        hop.transform = to_string(profile.forwarding_mechanism);
        for (auto& next : fd.messages) {
          hop.forwarded_to.push_back(next.envelope.rcpt_to.addr_spec());
          queue.push_back(std::move(next));
        }
      } else {
        hop.action = "drop";
        hop.transform = "none";
        trace.final[hop.account] = fd.inbound.disposition;
      }
    } else {
      InboundDecision dec = decide_inbound(profile, *acct, msg, s.zone, s.profiles);
      hop.outcome = dec.outcome;
      hop.disposition = dec.disposition;
      hop.overrides = dec.overrides;
      hop.action = "deliver";
      hop.transform = "none";
      trace.final[hop.account] = dec.disposition;
    }
    trace.hops.push_back(std::move(hop));
  }
  return trace;
}

struct JudgeResult {
  bool pass = false;
  bool attack_success = false;
  std::string reason;
};

// An attack succeeds only when the designated victim gets the message in the
// inbox with no warning attached. Pass means observed matched expected.
inline JudgeResult judge(const DeliveryTrace& trace, const ExpectedOutcome& expect) {
  JudgeResult r;
  auto it = trace.final.find(ascii_lower(expect.victim.addr_spec()));
  if (it == trace.final.end()) {
    r.attack_success = false;
    r.reason = "never reached victim";
  } else if (it->second.verdict == Verdict::Inbox && !it->second.warning) {
    r.attack_success = true;
    r.reason = "delivered to inbox without warning";
  } else if (it->second.verdict == Verdict::Inbox) {
    r.attack_success = false;
    r.reason = "warning shown";
  } else if (it->second.verdict == Verdict::Spam) {
    r.attack_success = false;
    r.reason = "delivered to spam";
  } else {
    r.attack_success = false;
    r.reason = "rejected";
  }
  r.pass = r.attack_success == expect.success_required;
  return r;
}

inline void to_json(njson& j, const TraceHop& h) {
  j = njson{{"hop", h.index},
            {"provider", h.provider},
            {"account", h.account},
            {"outcome", h.outcome},
            {"action", h.action},
            {"disposition", h.disposition},
            {"transform", h.transform},
            {"forwarded_to", h.forwarded_to},
            {"overrides", h.overrides}};
}

// JSON-lines rendering: one hop per line, then one summary object whose
// trailing keys are the victim's verdict and warning flag.
inline std::string trace_to_jsonl(const DeliveryTrace& trace,
                                  const ExpectedOutcome& expect,
                                  const JudgeResult& result) {
  std::string out;
  for (const auto& hop : trace.hops) {
    njson line = hop;
    out += line.dump();
    out += '\n';
  }
  njson finals = njson::object();
  for (const auto& [addr, disp] : trace.final) finals[addr] = disp;
  njson victim_verdict = nullptr;
  njson victim_warning = nullptr;
  auto it = trace.final.find(ascii_lower(expect.victim.addr_spec()));
  if (it != trace.final.end()) {
    victim_verdict = to_string(it->second.verdict);
    victim_warning = it->second.warning;
  }
  njson summary{{"setup_notes", trace.setup_notes},
                {"final", finals},
                {"victim", expect.victim.addr_spec()},
                {"expected_success", expect.success_required},
                {"attack_success", result.attack_success},
                {"judgement", result.pass ? "pass" : "fail"},
                {"reason", result.reason},
                {"verdict", victim_verdict},
                {"warning", victim_warning}};
  out += summary.dump();
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Scenario files. Shape:
//   {"name": "...", "description": "...",
//    "profiles": {"builtin": true, "patch": {...}, "custom": {...}},
//    "zones": {...},                       // layered over infrastructure
//    "include_infrastructure": true,       // default true
//    "accounts": [{"provider": "...", "address": "...", ...}],
//    "setup": [{"op": "...", "account": "...", ...}],
//    "inject": {"message": {...}, "actor": "...", "sign_with": [...]},
//    "expect": {"success": true, "victim": "..."},
//    "max_hops": 8}
// ---------------------------------------------------------------------------

inline Scenario scenario_from_json(const njson& j) {
  Scenario s;
  s.name = j.value("name", std::string{"unnamed"});
  s.description = j.value("description", std::string{});
  s.max_hops = j.value("max_hops", 8);

  bool use_builtin = true;
  njson patches = njson::object();
  njson custom = njson::object();
  if (j.contains("profiles")) {
    const auto& p = j.at("profiles");
    use_builtin = p.value("builtin", true);
    if (p.contains("patch")) patches = p.at("patch");
    if (p.contains("custom")) custom = p.at("custom");
  }
  if (use_builtin) s.profiles = builtin_profiles();
  for (const auto& [name, fields] : custom.items()) {
    ProviderProfile prof;
    prof.name = name;
    apply_profile_patch(prof, fields);
    s.profiles[name] = std::move(prof);
  }
  apply_profile_overrides(s.profiles, patches);

  if (j.value("include_infrastructure", true))
    s.zone = infrastructure_zone(s.profiles);
  if (j.contains("zones")) zone_merge(s.zone, zone_from_json(j.at("zones")));

  if (!j.contains("accounts") || !j.contains("inject") || !j.contains("expect"))
    fail(ErrorCode::BadInput, "scenario needs accounts, inject and expect");
  for (const auto& a : j.at("accounts")) {
    UserAccount acct;
    acct.provider = a.at("provider").get<std::string>();
    acct.address = parse_address(a.at("address").get<std::string>());
    if (a.contains("allowlist"))
      acct.allowlist = a.at("allowlist").get<std::vector<std::string>>();
    if (a.contains("forward_to") && !a.at("forward_to").is_null()) {
      acct.forward_to = parse_address(a.at("forward_to").get<std::string>());
      acct.forward_confirmed = a.value("forward_confirmed", false);
    }
    if (a.contains("members"))
      for (const auto& m : a.at("members"))
        acct.members.push_back(parse_address(m.get<std::string>()));
    s.accounts.push_back(std::move(acct));
  }

  if (j.contains("setup")) {
    for (const auto& st : j.at("setup")) {
      SetupStep step;
      std::string op = st.at("op").get<std::string>();
      step.account = parse_address(st.at("account").get<std::string>());
      if (op == "allowlist_add") {
        step.op = SetupOp::AllowlistAdd;
        step.arg = st.at("pattern").get<std::string>();
      } else if (op == "configure_forwarding") {
        step.op = SetupOp::ConfigureForwarding;
        step.arg = st.at("destination").get<std::string>();
      } else if (op == "confirm_destination") {
        step.op = SetupOp::ConfirmDestination;
        step.arg = st.at("by").get<std::string>();
      } else {
        fail(ErrorCode::BadInput, "unknown setup op: " + op);
      }
      s.setup.push_back(std::move(step));
    }
  }

  const auto& inj = j.at("inject");
  s.injection.message = message_from_json(inj.at("message"));
  s.injection.actor = inj.value("actor", std::string{"attacker"});
  if (inj.contains("sign_with"))
    for (const auto& sw : inj.at("sign_with"))
      s.injection.sign_with.emplace_back(sw.at("selector").get<std::string>(),
                                         sw.at("domain").get<std::string>());

  const auto& exp = j.at("expect");
  s.expect.success_required = exp.at("success").get<bool>();
  s.expect.victim = parse_address(exp.at("victim").get<std::string>());
  return s;
}

}  // namespace fwdsim
