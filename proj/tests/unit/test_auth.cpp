#include <catch2/catch_amalgamated.hpp>

#include "fwdsim/auth.hpp"

using namespace fwdsim;

namespace {

ZoneDb news_zone() {
  ZoneDb zone;
  zone.put_spf("mail.example.com", "v=spf1 ip4:198.51.100.0/24 -all");
  zone.put_dmarc("example.com", DmarcPolicy::Quarantine);
  zone.put_key("s1", "example.com", "secret-1");
  zone.put_key("arc", "gmail.com", "arc-gmail");
  zone.put_key("arc", "fastmail.com", "arc-fastmail");
  return zone;
}

EmailMessage news_message() {
  EmailMessage m;
  m.envelope.mail_from = parse_address("bounce@mail.example.com");
  m.envelope.rcpt_to = parse_address("reader@gmail.com");
  m.headers.from = parse_address("updates@example.com");
  m.headers.to = parse_address("reader@gmail.com");
  m.headers.subject = "Weekly digest";
  m.body = "All the news.";
  m.origin_ip = parse_ip("198.51.100.20");
  return m;
}

}  // namespace

TEST_CASE("keyed_tag is deterministic, key-sensitive and payload-sensitive") {
  std::string t = keyed_tag("key", "payload");
  CHECK(t == keyed_tag("key", "payload"));
  CHECK(t.size() == 16);
  CHECK(t.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(t != keyed_tag("key2", "payload"));
  CHECK(t != keyed_tag("key", "payload2"));
  // key/payload boundary must matter
  CHECK(keyed_tag("ab", "c") != keyed_tag("a", "bc"));
}

TEST_CASE("check_spf uses the mail-from domain and handles the null sender") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  SpfCheck c = check_spf(zone, m);
  CHECK(c.verdict == SpfVerdict::Pass);
  CHECK(c.checked_domain == "mail.example.com");

  m.envelope.mail_from.reset();
  SpfCheck null_sender = check_spf(zone, m);
  CHECK(null_sender.verdict == SpfVerdict::None);
  CHECK(null_sender.checked_domain.empty());
}

TEST_CASE("dkim signatures verify and break when FROM changes") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  m = with_dkim_signature(m, "example.com", "s1", zone);

  auto results = verify_dkim(zone, m);
  REQUIRE(results.size() == 1);
  CHECK(results[0].signer_domain == "example.com");
  CHECK(results[0].valid);

  EmailMessage tampered = m;
  tampered.headers.from = parse_address("updates@evil.com");
  CHECK_FALSE(verify_dkim(zone, tampered)[0].valid);

  EmailMessage resubjected = m;
  resubjected.headers.subject = "changed";
  CHECK_FALSE(verify_dkim(zone, resubjected)[0].valid);

  // Envelope rewrites leave the signature intact.
  EmailMessage renveloped = m;
  renveloped.envelope.mail_from = parse_address("other@elsewhere.net");
  CHECK(verify_dkim(zone, renveloped)[0].valid);
}

TEST_CASE("signing without a registered key fails, verifying tolerates it") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  CHECK_THROWS_AS(with_dkim_signature(m, "example.com", "nosuch", zone), SimError);

  m.headers.dkim_signatures.push_back(
      DkimSignature{"stranger.net", "s9", kDkimSignedHeaders, "0123456789abcdef"});
  auto results = verify_dkim(zone, m);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].valid);
}

TEST_CASE("alignment modes compare different scopes") {
  CHECK(domains_aligned("example.com", "mail.example.com", AlignmentMode::Relaxed));
  CHECK_FALSE(domains_aligned("example.com", "mail.example.com", AlignmentMode::Strict));
  CHECK(domains_aligned("example.com", "EXAMPLE.COM", AlignmentMode::Strict));
  CHECK_FALSE(domains_aligned("example.com", "example.net", AlignmentMode::Relaxed));
  CHECK_FALSE(domains_aligned("example.com", "", AlignmentMode::Relaxed));
}

TEST_CASE("dmarc passes on aligned spf or aligned dkim") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();

  DmarcResult by_spf = evaluate_dmarc(zone, m, check_spf(zone, m), {});
  CHECK(by_spf.aligned_pass);
  CHECK(by_spf.applicable_policy == DmarcPolicy::Quarantine);
  CHECK(by_spf.alignment == AlignmentMode::Relaxed);

  DmarcResult by_dkim = evaluate_dmarc(zone, m, SpfCheck{SpfVerdict::Fail, "bad.com"},
                                       {DkimResult{"example.com", true}});
  CHECK(by_dkim.aligned_pass);

  DmarcResult invalid_dkim = evaluate_dmarc(
      zone, m, SpfCheck{SpfVerdict::Fail, "bad.com"}, {DkimResult{"example.com", false}});
  CHECK_FALSE(invalid_dkim.aligned_pass);

  DmarcResult misaligned = evaluate_dmarc(
      zone, m, SpfCheck{SpfVerdict::Pass, "unrelated.org"}, {});
  CHECK_FALSE(misaligned.aligned_pass);
}

TEST_CASE("dmarc under strict alignment rejects cousin subdomains") {
  ZoneDb zone = news_zone();
  zone.put_dmarc("example.com", DmarcPolicy::Reject, AlignmentMode::Strict);
  EmailMessage m = news_message();
  DmarcResult r = evaluate_dmarc(zone, m, check_spf(zone, m), {});
  CHECK_FALSE(r.aligned_pass);  // mail.example.com != example.com exactly
  CHECK(r.applicable_policy == DmarcPolicy::Reject);
}

TEST_CASE("dmarc with no record reports Absent and relaxed defaults") {
  ZoneDb zone;
  EmailMessage m = news_message();
  DmarcResult r = evaluate_dmarc(zone, m, SpfCheck{SpfVerdict::None, ""}, {});
  CHECK(r.applicable_policy == DmarcPolicy::Absent);
  CHECK(r.alignment == AlignmentMode::Relaxed);
  CHECK_FALSE(r.aligned_pass);
}

TEST_CASE("authenticate bundles the three mechanisms") {
  ZoneDb zone = news_zone();
  EmailMessage m = with_dkim_signature(news_message(), "example.com", "s1", zone);
  AuthOutcome out = authenticate(zone, m);
  CHECK(out.spf.verdict == SpfVerdict::Pass);
  REQUIRE(out.dkim.size() == 1);
  CHECK(out.dkim[0].valid);
  CHECK(out.dmarc.aligned_pass);
  CHECK(out.arc == ArcCheck::NotEvaluated);
}

TEST_CASE("arc seals verify individually and chain correctly") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  AuthOutcome first_hop = authenticate(zone, m);
  m = seal_arc(std::move(m), "gmail.com", first_hop, zone);

  REQUIRE(m.headers.arc_sets.size() == 1);
  CHECK(m.headers.arc_sets[0].instance == 1);
  CHECK(m.headers.arc_sets[0].chain_valid);
  CHECK(verify_arc_seal(zone, m, 0));

  // Envelope rewrite between hops leaves the seal verifiable.
  m.envelope.mail_from = parse_address("fwd=bounce@gmail.com");
  CHECK(verify_arc_seal(zone, m, 0));

  AuthOutcome second_hop = authenticate(zone, m);
  m = seal_arc(std::move(m), "fastmail.com", second_hop, zone);
  REQUIRE(m.headers.arc_sets.size() == 2);
  CHECK(m.headers.arc_sets[1].instance == 2);
  CHECK(m.headers.arc_sets[1].chain_valid);
  CHECK(verify_arc_seal(zone, m, 1));
}

TEST_CASE("a FROM rewrite between seals breaks the earlier seal") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  m = seal_arc(std::move(m), "gmail.com", authenticate(zone, m), zone);
  m.headers.from = parse_address("list@lists.example.org");  // RemMod-style rewrite
  CHECK_FALSE(verify_arc_seal(zone, m, 0));

  m = seal_arc(std::move(m), "fastmail.com", authenticate(zone, m), zone);
  CHECK_FALSE(m.headers.arc_sets[1].chain_valid);
  CHECK(verify_arc_seal(zone, m, 1));  // the new seal itself is fine
}

TEST_CASE("sealing needs a registered arc key") {
  ZoneDb zone = news_zone();
  EmailMessage m = news_message();
  CHECK_THROWS_AS(seal_arc(std::move(m), "unkeyed.example", AuthOutcome{}, zone),
                  SimError);
}

TEST_CASE("correct arc validation demands a trusted, intact, passing chain") {
  ZoneDb zone = news_zone();
  std::set<std::string> trust{"gmail.com", "fastmail.com"};

  EmailMessage good = news_message();
  good = seal_arc(std::move(good), "gmail.com", authenticate(zone, good), zone);
  CHECK(validate_arc(zone, good, trust, ArcMode::Correct) == ArcCheck::OverridePass);

  // Instance-1 recorded a DMARC failure: no override.
  EmailMessage failed_first = news_message();
  failed_first.envelope.mail_from = parse_address("x@elsewhere.net");
  AuthOutcome failing = authenticate(zone, failed_first);
  REQUIRE_FALSE(failing.dmarc.aligned_pass);
  failed_first = seal_arc(std::move(failed_first), "gmail.com", failing, zone);
  CHECK(validate_arc(zone, failed_first, trust, ArcMode::Correct) ==
        ArcCheck::NoOverride);

  // Untrusted sealer anywhere in the chain: no override.
  ZoneDb wider = zone;
  wider.put_key("arc", "shady.example", "arc-shady");
  EmailMessage untrusted = news_message();
  untrusted = seal_arc(std::move(untrusted), "shady.example",
                       authenticate(wider, untrusted), wider);
  untrusted = seal_arc(std::move(untrusted), "gmail.com",
                       authenticate(wider, untrusted), wider);
  CHECK(validate_arc(wider, untrusted, trust, ArcMode::Correct) ==
        ArcCheck::NoOverride);

  CHECK(validate_arc(zone, news_message(), trust, ArcMode::Correct) ==
        ArcCheck::NoOverride);  // no sets at all
  CHECK(validate_arc(zone, good, trust, ArcMode::Off) == ArcCheck::NoOverride);
}

TEST_CASE("buggy arc validation looks only at the newest seal") {
  ZoneDb zone = news_zone();
  zone.put_key("arc", "shady.example", "arc-shady");
  std::set<std::string> trust{"fastmail.com"};

  // Chain starts with a recorded DMARC failure at an untrusted sealer, but
  // the buggy validator only sees the trusted newest seal.
  EmailMessage m = news_message();
  m.envelope.mail_from = parse_address("x@elsewhere.net");
  AuthOutcome failing = authenticate(zone, m);
  m = seal_arc(std::move(m), "shady.example", failing, zone);
  m = seal_arc(std::move(m), "fastmail.com", authenticate(zone, m), zone);

  CHECK(validate_arc(zone, m, trust, ArcMode::ZohoBuggy) == ArcCheck::OverridePass);
  CHECK(validate_arc(zone, m, trust, ArcMode::Correct) == ArcCheck::NoOverride);

  // Newest sealer untrusted: even the buggy validator refuses.
  EmailMessage reversed = news_message();
  reversed = seal_arc(std::move(reversed), "fastmail.com",
                      authenticate(zone, reversed), zone);
  reversed = seal_arc(std::move(reversed), "shady.example",
                      authenticate(zone, reversed), zone);
  CHECK(validate_arc(zone, reversed, trust, ArcMode::ZohoBuggy) ==
        ArcCheck::NoOverride);
}
