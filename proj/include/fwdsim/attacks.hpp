#pragma once

#include <map>
#include <string>

#include "fwdsim/scenario.hpp"

namespace fwdsim {

// Attacker infrastructure and spoof-target fixture domains shared by the
// preset scenarios. Policies on the spoofed domains are the point: the
// attacks route around Reject and Quarantine, the list attacks exploit None.
inline constexpr const char* kAttackerIp = "203.0.113.5";

inline void add_attack_fixture_zone(ZoneDb& zone) {
  // The attacker's own domain; its SPF blesses the attacker's server.
  zone.put_spf("bad.com", "ip4:203.0.113.0/24 -all");
  zone.put_dmarc("bad.com", DmarcPolicy::None);
  zone.put_key("s1", "bad.com", "attacker-key");

  // Spoof targets that incorporate an open forwarder's SPF.
  zone.put_spf("state.gov", "include:spf.protection.outlook.com -all");
  zone.put_dmarc("state.gov", DmarcPolicy::Reject);
  zone.put_spf("heritagefund.org", "include:spf.icloud.com -all");
  zone.put_dmarc("heritagefund.org", DmarcPolicy::Quarantine);
  zone.put_spf("lawpartners.com", "include:spf.hushmail.com -all");
  zone.put_dmarc("lawpartners.com", DmarcPolicy::Quarantine);
  zone.put_spf("budapestweekly.hu", "include:spf.freemail.hu -all");
  zone.put_dmarc("budapestweekly.hu", DmarcPolicy::Reject);
  zone.put_spf("cityutility.gov", "include:spf.mail2world.com -all");
  zone.put_dmarc("cityutility.gov", DmarcPolicy::Reject);
  zone.put_spf("fjordpress.no", "include:spf.runbox.com -all");
  zone.put_dmarc("fjordpress.no", DmarcPolicy::Reject);

  // Spoof targets with self-contained SPF.
  zone.put_spf("alipay.com", "ip4:110.76.0.0/16 -all");
  zone.put_dmarc("alipay.com", DmarcPolicy::Quarantine);
  zone.put_spf("lesechos.fr", "ip4:195.25.0.0/16 -all");
  zone.put_dmarc("lesechos.fr", DmarcPolicy::None);
  zone.put_spf("facebook.com", "ip4:157.240.0.0/16 -all");
  zone.put_dmarc("facebook.com", DmarcPolicy::Reject);
  zone.put_spf("foo.com", "ip4:192.0.2.0/24 -all");
  zone.put_dmarc("foo.com", DmarcPolicy::Reject);

  // Organizations hosting the fixture mailing lists.
  zone.put_spf("univ.edu", "include:spf.google.com -all");
  zone.put_dmarc("univ.edu", DmarcPolicy::None);
  zone.put_spf("wa.gov", "ip4:198.51.100.0/24 -all");
  zone.put_dmarc("wa.gov", DmarcPolicy::None);
}

namespace attack_detail {

inline Scenario base(const std::string& name, const std::string& description) {
  Scenario s;
  s.name = name;
  s.description = description;
  s.profiles = builtin_profiles();
  s.zone = infrastructure_zone(s.profiles);
  add_attack_fixture_zone(s.zone);
  return s;
}

inline EmailMessage spoof(const std::string& from, const std::string& mail_from,
                          const std::string& rcpt, const std::string& to,
                          const std::string& subject) {
  EmailMessage m;
  m.headers.from = parse_address(from);
  m.headers.to = parse_address(to);
  m.headers.subject = subject;
  if (!mail_from.empty()) m.envelope.mail_from = parse_address(mail_from);
  m.envelope.rcpt_to = parse_address(rcpt);
  m.body = "please review the attached invoice";
  m.origin_ip = parse_ip(kAttackerIp);
  return m;
}

inline UserAccount account(const std::string& provider, const std::string& address) {
  UserAccount a;
  a.provider = provider;
  a.address = parse_address(address);
  return a;
}

inline SetupStep allowlist_add(const std::string& acct, const std::string& pattern) {
  return SetupStep{SetupOp::AllowlistAdd, parse_address(acct), pattern};
}
inline SetupStep configure(const std::string& acct, const std::string& dest) {
  return SetupStep{SetupOp::ConfigureForwarding, parse_address(acct), dest};
}
inline SetupStep confirm(const std::string& acct, const std::string& by) {
  return SetupStep{SetupOp::ConfirmDestination, parse_address(acct), by};
}

inline void expect(Scenario& s, bool success, const std::string& victim) {
  s.expect.success_required = success;
  s.expect.victim = parse_address(victim);
}

// SPF-incorporation attack: the spoofed domain's SPF includes the open
// forwarder's servers, so mail relayed through an attacker-controlled
// account there arrives SPF-authentic for the spoofed domain.
inline Scenario spf_incorporation(const std::string& name, const std::string& provider,
                                  const std::string& attacker_addr,
                                  const std::string& spoofed,
                                  bool needs_allowlist) {
  Scenario s = base(name, "spoof " + spoofed + " via open forwarding at " + provider);
  const std::string victim = "victim@gmail.com";
  s.accounts = {account(provider, attacker_addr), account("Gmail", victim)};
  if (needs_allowlist) s.setup.push_back(allowlist_add(attacker_addr, spoofed));
  s.setup.push_back(configure(attacker_addr, victim));
  s.injection.message = spoof(spoofed, spoofed, attacker_addr, victim, "urgent notice");
  expect(s, true, victim);
  return s;
}

}  // namespace attack_detail

// The preset attack scenarios and their paired negative controls, keyed by
// name. Controls invert the expectation after removing or repairing the one
// ingredient the attack depends on.
inline std::map<std::string, Scenario> attack_library() {
  using namespace attack_detail;
  std::map<std::string, Scenario> lib;
  auto put = [&lib](Scenario s) { lib[s.name] = std::move(s); };

  // --- A1: SPF incorporation through six open forwarders -----------------
  struct A1Row {
    const char* suffix;
    const char* provider;
    const char* attacker;
    const char* spoofed;
    bool allowlist;
  };
  const A1Row a1_rows[] = {
      {"outlook", "Outlook", "attacker@outlook.com", "bush@state.gov", true},
      {"icloud", "iCloud", "attacker@icloud.com", "director@heritagefund.org", true},
      {"hushmail", "Hushmail", "attacker@hushmail.com", "partner@lawpartners.com", true},
      {"freemail", "Freemail", "attacker@freemail.hu", "press@budapestweekly.hu", false},
      {"mail2world", "Mail2World", "attacker@mail2world.com", "billing@cityutility.gov", false},
      {"runbox", "Runbox", "attacker@runbox.com", "editor@fjordpress.no", false},
  };
  for (const auto& row : a1_rows) {
    std::string name = std::string("a1-spf-incorporation-") + row.suffix;
    put(spf_incorporation(name, row.provider, row.attacker, row.spoofed, row.allowlist));

    Scenario control = spf_incorporation(name + "-control", row.provider, row.attacker,
                                         row.spoofed, false);
    if (row.allowlist) {
      // Without the allowlist entry the forwarder itself quarantines.
      control.description = "control: no allowlist entry at the forwarder";
    } else {
      // These forwarders pass everything; repairing their enforcement is the
      // only ingredient to remove.
      apply_profile_patch(control.profiles.at(row.provider),
                          njson{{"enforces_dmarc", true}});
      control.description = "control: forwarder enforces DMARC";
    }
    control.expect.success_required = false;
    put(std::move(control));
  }

  // --- A2: relaxed validation of forwarded mail ---------------------------
  {
    Scenario s = base("a2-relaxed-gmail-via-outlook",
                      "quarantine-policy spoof forwarded through Outlook into Gmail");
    s.accounts = {account("Outlook", "attacker@outlook.com"),
                  account("Gmail", "victim@gmail.com")};
    s.setup = {allowlist_add("attacker@outlook.com", "ceo@alipay.com"),
               configure("attacker@outlook.com", "victim@gmail.com")};
    s.injection.message = spoof("ceo@alipay.com", "ceo@alipay.com",
                                "attacker@outlook.com", "victim@gmail.com",
                                "wire transfer approval");
    expect(s, true, "victim@gmail.com");
    put(s);

    Scenario control = s;
    control.name = "a2-relaxed-gmail-via-outlook-control";
    control.description = "control: Gmail without relaxed-validation sources";
    apply_profile_patch(control.profiles.at("Gmail"),
                        njson{{"relaxed_validation_sources", njson::object()}});
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a2-relaxed-outlook-via-fastmail",
                      "none-policy spoof forwarded through Fastmail into Outlook");
    s.accounts = {account("Fastmail", "attacker@fastmail.com"),
                  account("Outlook", "victim@outlook.com")};
    s.setup = {configure("attacker@fastmail.com", "victim@outlook.com")};
    s.injection.message = spoof("editor@lesechos.fr", "editor@lesechos.fr",
                                "attacker@fastmail.com", "victim@outlook.com",
                                "exclusive: please comment");
    expect(s, true, "victim@outlook.com");
    put(s);

    Scenario control = s;
    control.name = "a2-relaxed-outlook-via-fastmail-control";
    control.description = "control: Outlook without relaxed-validation sources";
    apply_profile_patch(control.profiles.at("Outlook"),
                        njson{{"relaxed_validation_sources", njson::object()}});
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a2-relaxed-gmail-via-fastmail-me-trick",
                      "Fastmail-to-Gmail relaxed path; TO is dressed up as 'me' so "
                      "it differs from the recipient");
    s.accounts = {account("Fastmail", "attacker@fastmail.com"),
                  account("Gmail", "victim@gmail.com")};
    s.setup = {allowlist_add("attacker@fastmail.com", "ceo@alipay.com"),
               configure("attacker@fastmail.com", "victim@gmail.com")};
    s.injection.message =
        spoof("ceo@alipay.com", "ceo@alipay.com", "attacker@fastmail.com",
              "me <attacker@fastmail.com>", "quarterly numbers");
    expect(s, true, "victim@gmail.com");
    put(s);

    Scenario control = s;
    control.name = "a2-relaxed-gmail-via-fastmail-me-trick-control";
    control.description = "control: TO names the recipient, relaxed path refuses";
    control.injection.message.headers.to = parse_address("victim@gmail.com");
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    // Mail.ru trusts mail forwarded by Gmail, but Gmail forwarding only
    // activates once the destination confirms, which the attacker cannot do.
    Scenario s = base("a2-mailru-via-gmail-control",
                      "non-exploitable: Gmail will not forward unconfirmed");
    s.accounts = {account("Gmail", "attacker@gmail.com"),
                  account("Mail.ru", "victim@mail.ru")};
    s.setup = {allowlist_add("attacker@gmail.com", "ceo@alipay.com"),
               configure("attacker@gmail.com", "victim@mail.ru")};
    s.injection.message = spoof("ceo@alipay.com", "ceo@alipay.com",
                                "attacker@gmail.com", "victim@mail.ru", "payment");
    expect(s, false, "victim@mail.ru");
    put(std::move(s));
  }

  // --- A3: ARC chain laundering into Zoho ---------------------------------
  {
    Scenario s = base("a3-zoho-arc-via-fastmail",
                      "reject-policy spoof sealed by Fastmail, accepted by Zoho's "
                      "last-seal-only validation");
    s.accounts = {account("Fastmail", "attacker@fastmail.com"),
                  account("Zoho", "victim@zohomail.com")};
    s.setup = {allowlist_add("attacker@fastmail.com", "biden@facebook.com"),
               configure("attacker@fastmail.com", "victim@zohomail.com")};
    s.injection.message = spoof("biden@facebook.com", "attacker@bad.com",
                                "attacker@fastmail.com", "victim@zohomail.com",
                                "statement");
    expect(s, true, "victim@zohomail.com");
    put(s);

    Scenario control = s;
    control.name = "a3-zoho-arc-via-fastmail-control";
    control.description = "control: Zoho validates the whole chain";
    apply_profile_patch(control.profiles.at("Zoho"), njson{{"arc_mode", "correct"}});
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a3-zoho-arc-multihop-gmail-outlook",
                      "three-hop laundering: Gmail seals a failing message, Outlook "
                      "re-forwards it unsealed, Zoho trusts Gmail's stale seal");
    s.accounts = {account("Gmail", "attacker1@gmail.com"),
                  account("Outlook", "attacker2@outlook.com"),
                  account("Zoho", "victim@zohomail.com")};
    s.setup = {allowlist_add("attacker1@gmail.com", "biden@alipay.com"),
               configure("attacker1@gmail.com", "attacker2@outlook.com"),
               confirm("attacker1@gmail.com", "attacker2@outlook.com"),
               allowlist_add("attacker2@outlook.com", "biden@alipay.com"),
               configure("attacker2@outlook.com", "victim@zohomail.com")};
    s.injection.message = spoof("biden@alipay.com", "biden@alipay.com",
                                "attacker1@gmail.com", "victim@zohomail.com",
                                "statement");
    expect(s, true, "victim@zohomail.com");
    put(s);

    Scenario control = s;
    control.name = "a3-zoho-arc-multihop-gmail-outlook-control";
    control.description = "control: Zoho validates the whole chain";
    apply_profile_patch(control.profiles.at("Zoho"), njson{{"arc_mode", "correct"}});
    control.expect.success_required = false;
    put(std::move(control));
  }

  // --- A4: mailing lists as laundering forwarders -------------------------
  {
    Scenario s = base("a4-mailinglist-googlegroups-dmarc-none",
                      "spoof a None-policy org through its Google Group; SRS makes "
                      "the copy authentic for the org domain");
    ProviderProfile univ;
    univ.name = "UnivMail";
    univ.domain = "univ.edu";
    univ.spf_domain = "spf.google.com";
    univ.sending_range = parse_cidr("209.85.0.0/16");
    s.profiles["UnivMail"] = univ;
    s.accounts = {account("GoogleGroups", "list@univ.edu"),
                  account("UnivMail", "prof@univ.edu"),
                  account("Gmail", "victim@gmail.com")};
    s.accounts[0].members = {parse_address("prof@univ.edu"),
                             parse_address("victim@gmail.com")};
    s.injection.message = spoof("dean@univ.edu", "dean@univ.edu", "list@univ.edu",
                                "list@univ.edu", "faculty meeting moved");
    expect(s, true, "victim@gmail.com");
    put(s);

    Scenario control = s;
    control.name = "a4-mailinglist-googlegroups-dmarc-none-control";
    control.description = "control: the org publishes Reject, the list blocks it";
    control.zone.put_dmarc("univ.edu", DmarcPolicy::Reject);
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a4-mailinglist-mailman-dmarc-none",
                      "spoof a None-policy org through its Mailman list hosted on a "
                      "subdomain");
    s.accounts = {account("Mailman", "seminar@lists.univ.edu"),
                  account("Yahoo", "victim@yahoo.com")};
    s.accounts[0].members = {parse_address("victim@yahoo.com")};
    s.injection.message = spoof("prof@univ.edu", "prof@univ.edu",
                                "seminar@lists.univ.edu", "seminar@lists.univ.edu",
                                "reading list");
    expect(s, true, "victim@yahoo.com");
    put(s);

    Scenario control = s;
    control.name = "a4-mailinglist-mailman-dmarc-none-control";
    control.description = "control: the org publishes Reject, the list blocks it";
    control.zone.put_dmarc("univ.edu", DmarcPolicy::Reject);
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a4-mailinglist-listserv-dmarc-none",
                      "spoof a None-policy org through its Listserv deployment");
    s.accounts = {account("Listserv", "announce@listserv.wa.gov"),
                  account("Outlook", "victim@outlook.com")};
    s.accounts[0].members = {parse_address("victim@outlook.com")};
    s.injection.message = spoof("governor@wa.gov", "governor@wa.gov",
                                "announce@listserv.wa.gov",
                                "announce@listserv.wa.gov", "road closures");
    expect(s, true, "victim@outlook.com");
    put(s);

    Scenario control = s;
    control.name = "a4-mailinglist-listserv-dmarc-none-control";
    control.description = "control: the org publishes Reject, the list blocks it";
    control.zone.put_dmarc("wa.gov", DmarcPolicy::Reject);
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    Scenario s = base("a4-gaggle-any-policy",
                      "Gaggle's REM+MOD replaces FROM with the list address, so even "
                      "a Reject-policy spoof re-authenticates");
    s.accounts = {account("Gaggle", "parents@gaggle.email"),
                  account("Gmail", "victim@gmail.com")};
    s.accounts[0].members = {parse_address("victim@gmail.com")};
    s.injection.message = spoof("principal@foo.com", "principal@foo.com",
                                "parents@gaggle.email", "parents@gaggle.email",
                                "schedule change");
    expect(s, true, "victim@gmail.com");
    put(s);

    Scenario control = s;
    control.name = "a4-gaggle-any-policy-control";
    control.description = "control: Gaggle enforces DMARC";
    apply_profile_patch(control.profiles.at("Gaggle"), njson{{"enforces_dmarc", true}});
    control.expect.success_required = false;
    put(std::move(control));
  }
  {
    // Same-org spoof with a Reject policy: the list's backend MTA skips
    // DMARC, and after SRS the members' own checks align on the org domain.
    Scenario s = base("a4-backend-mta-no-dmarc",
                      "Listserv behind an MTA that never checks DMARC forwards a "
                      "Reject-policy same-org spoof");
    apply_profile_patch(s.profiles.at("Listserv"), njson{{"enforces_dmarc", false}});
    s.zone.put_dmarc("wa.gov", DmarcPolicy::Reject);
    s.accounts = {account("Listserv", "announce@listserv.wa.gov"),
                  account("Outlook", "victim@outlook.com")};
    s.accounts[0].members = {parse_address("victim@outlook.com")};
    s.injection.message = spoof("governor@wa.gov", "governor@wa.gov",
                                "announce@listserv.wa.gov",
                                "announce@listserv.wa.gov", "emergency alert");
    expect(s, true, "victim@outlook.com");
    put(s);

    Scenario control = s;
    control.name = "a4-backend-mta-no-dmarc-control";
    control.description = "control: the backend MTA checks DMARC";
    apply_profile_patch(control.profiles.at("Listserv"), njson{{"enforces_dmarc", true}});
    control.expect.success_required = false;
    put(std::move(control));
  }

  return lib;
}

}  // namespace fwdsim
