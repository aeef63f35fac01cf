#pragma once

#include <optional>
#include <string>

#include "fwdsim/message.hpp"

namespace fwdsim {

// The four header-rewrite strategies forwarders use. They differ only in
// what they do to MAIL FROM and FROM; all of them re-address the envelope
// and take over as the sending server.
enum class ForwardingMechanism {
  Pmf,     // plain: envelope recipient only
  Mfef,    // MAIL FROM := FROM
  Rem,     // MAIL FROM := SRS address in the forwarder's domain
  RemMod,  // Rem, plus FROM := the forwarding account itself
};

inline std::string to_string(ForwardingMechanism m) {
  switch (m) {
    case ForwardingMechanism::Pmf: return "pmf";
    case ForwardingMechanism::Mfef: return "mfef";
    case ForwardingMechanism::Rem: return "rem";
    case ForwardingMechanism::RemMod: return "rem_mod";
  }
  return "pmf";
}

inline ForwardingMechanism mechanism_from_string(const std::string& s) {
  if (s == "pmf") return ForwardingMechanism::Pmf;
  if (s == "mfef") return ForwardingMechanism::Mfef;
  if (s == "rem") return ForwardingMechanism::Rem;
  if (s == "rem_mod") return ForwardingMechanism::RemMod;
  fail(ErrorCode::BadInput, "unknown forwarding mechanism: " + s);
}

struct ForwarderIdentity {
  EmailAddress account;  // the account doing the forwarding
  IpAddr sending_ip = 0;
};

// Sender Rewriting Scheme, reduced: the original sender is folded into the
// local part under the forwarder's domain, so bounces still have somewhere
// to go and SPF at the next hop checks the forwarder's domain.
inline EmailAddress srs_rewrite(const std::optional<EmailAddress>& original,
                                const std::string& forwarder_domain) {
  EmailAddress out;
  out.local = original ? "fwd=" + original->local + "=" + original->domain
                       : "fwd=bounce";
  out.domain = ascii_lower(forwarder_domain);
  return out;
}

// Rewrites the message for its next hop. Body, existing DKIM signatures and
// ARC sets pass through untouched (so a seal over FROM survives everything
// except RemMod), unless modify_body simulates a list footer.
inline EmailMessage apply_forwarding(EmailMessage msg, ForwardingMechanism mechanism,
                                     const ForwarderIdentity& fwd,
                                     const EmailAddress& destination,
                                     bool modify_body = false) {
  if (msg.envelope.rcpt_to != fwd.account)
    fail(ErrorCode::NotAddressedToForwarder,
         "message for " + msg.envelope.rcpt_to.addr_spec() + " reached forwarder " +
             fwd.account.addr_spec());
  switch (mechanism) {
    case ForwardingMechanism::Pmf:
      break;
    case ForwardingMechanism::Mfef: {
      EmailAddress from = msg.headers.from;
      from.display_name.reset();
      msg.envelope.mail_from = std::move(from);
      break;
    }
    case ForwardingMechanism::Rem:
      msg.envelope.mail_from = srs_rewrite(msg.envelope.mail_from, fwd.account.domain);
      break;
    case ForwardingMechanism::RemMod: {
      msg.envelope.mail_from = srs_rewrite(msg.envelope.mail_from, fwd.account.domain);
      EmailAddress from = fwd.account;
      from.display_name.reset();
      msg.headers.from = std::move(from);
      break;
    }
  }
  msg.envelope.rcpt_to = destination;
  msg.origin_ip = fwd.sending_ip;
  msg.headers.received.push_back("by " + fwd.account.domain + " (" +
                                 to_string(mechanism) + ") for " +
                                 destination.addr_spec());
  if (modify_body) msg.body += "\n--\nforwarded by " + fwd.account.addr_spec();
  return msg;
}

}  // namespace fwdsim
