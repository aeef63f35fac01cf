#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwdsim/address.hpp"
#include "fwdsim/net.hpp"
#include "fwdsim/verdicts.hpp"

namespace fwdsim {

// SMTP envelope. mail_from may be the null reverse-path (bounces).
struct Envelope {
  std::optional<EmailAddress> mail_from;
  EmailAddress rcpt_to;
};

// Detached signature stub: binds the named headers to the signer domain's
// key. signed_headers always contains "from".
struct DkimSignature {
  std::string signer_domain;
  std::string selector;
  std::vector<std::string> signed_headers;
  std::string tag;
};

// One sealed hop of an ARC chain. recorded_results snapshots the sealer's
// authentication view; chain_valid is the sealer's cv claim for the chain
// up to and including the previous set.
struct ArcSet {
  int instance = 1;
  std::string sealer_domain;
  AuthOutcome recorded_results;
  bool chain_valid = true;
  std::string seal_tag;
};

struct MessageHeaders {
  EmailAddress from;
  EmailAddress to;
  std::string subject;
  std::vector<DkimSignature> dkim_signatures;
  std::vector<ArcSet> arc_sets;        // ascending instance order
  std::vector<std::string> received;   // one annotation per forwarding hop
};

struct EmailMessage {
  Envelope envelope;
  MessageHeaders headers;
  std::string body;
  IpAddr origin_ip = 0;  // address of the server that delivered the last hop

  bool forwarded() const { return !headers.received.empty(); }
};

namespace detail {

inline std::string collapse_ws(std::string_view value) {
  std::string out;
  bool in_ws = false;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = !out.empty();  // leading whitespace drops entirely
      continue;
    }
    if (in_ws) out += ' ';
    in_ws = false;
    out += c;
  }
  return out;
}

inline std::string strip_trailing_blank(std::string_view body) {
  std::size_t end = body.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(body[end - 1]))) --end;
  return std::string(body.substr(0, end));
}

}  // namespace detail

// Canonical signing input: each requested header as lowercase name, colon,
// whitespace-collapsed value and a newline, then a blank line, then the body
// with trailing blank lines stripped. Address headers canonicalize to the
// bare addr-spec, so display names never enter signatures.
inline std::string canonicalize(const EmailMessage& msg,
                                const std::vector<std::string>& header_names) {
  std::string out;
  for (const auto& raw_name : header_names) {
    std::string name = ascii_lower(raw_name);
    std::string value;
    if (name == "from") {
      value = msg.headers.from.addr_spec();
    } else if (name == "to") {
      value = msg.headers.to.addr_spec();
    } else if (name == "subject") {
      value = msg.headers.subject;
    } else {
      fail(ErrorCode::MissingHeader, "no such canonical header: " + raw_name);
    }
    out += name;
    out += ':';
    out += detail::collapse_ws(value);
    out += '\n';
  }
  out += '\n';
  out += detail::strip_trailing_blank(msg.body);
  return out;
}

inline void to_json(njson& j, const DkimSignature& s) {
  j = njson{{"signer_domain", s.signer_domain},
            {"selector", s.selector},
            {"signed_headers", s.signed_headers},
            {"tag", s.tag}};
}

inline void to_json(njson& j, const ArcSet& s) {
  j = njson{{"instance", s.instance},
            {"sealer_domain", s.sealer_domain},
            {"recorded_results", s.recorded_results},
            {"chain_valid", s.chain_valid},
            {"seal_tag", s.seal_tag}};
}

// Message fixture reader. Shape:
//   {"envelope": {"mail_from": "a@b" | null, "rcpt_to": "c@d"},
//    "headers": {"from": "a@b", "to": "c@d", "subject": "..."},
//    "body": "...", "origin_ip": "203.0.113.5"}
inline EmailMessage message_from_json(const njson& j) {
  if (!j.is_object() || !j.contains("envelope") || !j.contains("headers"))
    fail(ErrorCode::BadInput, "message fixture needs envelope and headers");
  EmailMessage msg;
  const auto& env = j.at("envelope");
  if (env.contains("mail_from") && !env.at("mail_from").is_null())
    msg.envelope.mail_from = parse_address(env.at("mail_from").get<std::string>());
  msg.envelope.rcpt_to = parse_address(env.at("rcpt_to").get<std::string>());
  const auto& hdr = j.at("headers");
  msg.headers.from = parse_address(hdr.at("from").get<std::string>());
  msg.headers.to = parse_address(hdr.at("to").get<std::string>());
  msg.headers.subject = hdr.value("subject", std::string{});
  msg.body = j.value("body", std::string{});
  msg.origin_ip = parse_ip(j.value("origin_ip", std::string{"0.0.0.0"}));
  return msg;
}

inline njson message_to_json(const EmailMessage& msg) {
  njson env;
  env["mail_from"] =
      msg.envelope.mail_from ? njson(msg.envelope.mail_from->addr_spec()) : njson(nullptr);
  env["rcpt_to"] = msg.envelope.rcpt_to.addr_spec();
  njson hdr;
  hdr["from"] = render_address(msg.headers.from);
  hdr["to"] = render_address(msg.headers.to);
  hdr["subject"] = msg.headers.subject;
  return njson{{"envelope", env},
               {"headers", hdr},
               {"body", msg.body},
               {"origin_ip", format_ip(msg.origin_ip)}};
}

}  // namespace fwdsim
