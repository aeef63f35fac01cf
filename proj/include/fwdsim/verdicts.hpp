#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fwdsim/errors.hpp"

namespace fwdsim {

// All emitted JSON uses ordered_json so repeated runs serialize
// byte-identically.
using njson = nlohmann::ordered_json;

enum class SpfVerdict { Pass, Fail, SoftFail, None, PermError };

// Absent means the sender domain publishes no DMARC record at all.
enum class DmarcPolicy { None, Quarantine, Reject, Absent };

enum class AlignmentMode { Relaxed, Strict };

enum class ArcCheck { NotEvaluated, OverridePass, NoOverride };

inline std::string to_string(SpfVerdict v) {
  switch (v) {
    case SpfVerdict::Pass: return "pass";
    case SpfVerdict::Fail: return "fail";
    case SpfVerdict::SoftFail: return "softfail";
    case SpfVerdict::None: return "none";
    case SpfVerdict::PermError: return "permerror";
  }
  return "none";
}

inline std::string to_string(DmarcPolicy p) {
  switch (p) {
    case DmarcPolicy::None: return "none";
    case DmarcPolicy::Quarantine: return "quarantine";
    case DmarcPolicy::Reject: return "reject";
    case DmarcPolicy::Absent: return "absent";
  }
  return "absent";
}

inline std::string to_string(AlignmentMode m) {
  return m == AlignmentMode::Strict ? "strict" : "relaxed";
}

inline std::string to_string(ArcCheck c) {
  switch (c) {
    case ArcCheck::NotEvaluated: return "not_evaluated";
    case ArcCheck::OverridePass: return "override_pass";
    case ArcCheck::NoOverride: return "no_override";
  }
  return "not_evaluated";
}

inline DmarcPolicy dmarc_policy_from_string(const std::string& s) {
  if (s == "none") return DmarcPolicy::None;
  if (s == "quarantine") return DmarcPolicy::Quarantine;
  if (s == "reject") return DmarcPolicy::Reject;
  if (s == "absent") return DmarcPolicy::Absent;
  fail(ErrorCode::BadInput, "unknown DMARC policy: " + s);
}

inline AlignmentMode alignment_from_string(const std::string& s) {
  if (s == "relaxed") return AlignmentMode::Relaxed;
  if (s == "strict") return AlignmentMode::Strict;
  fail(ErrorCode::BadInput, "unknown alignment mode: " + s);
}

// Enforcement severity order; a missing record asks for nothing, like None.
inline int policy_rank(DmarcPolicy p) {
  switch (p) {
    case DmarcPolicy::Reject: return 2;
    case DmarcPolicy::Quarantine: return 1;
    case DmarcPolicy::None:
    case DmarcPolicy::Absent: return 0;
  }
  return 0;
}

struct SpfCheck {
  SpfVerdict verdict = SpfVerdict::None;
  std::string checked_domain;  // empty when MAIL FROM was null
};

struct DkimResult {
  std::string signer_domain;
  bool valid = false;
};

struct DmarcResult {
  bool aligned_pass = false;
  DmarcPolicy applicable_policy = DmarcPolicy::Absent;
  AlignmentMode alignment = AlignmentMode::Relaxed;
};

struct AuthOutcome {
  SpfCheck spf;
  std::vector<DkimResult> dkim;
  DmarcResult dmarc;
  ArcCheck arc = ArcCheck::NotEvaluated;
};

inline void to_json(njson& j, const SpfCheck& c) {
  j = njson{{"verdict", to_string(c.verdict)}, {"checked_domain", c.checked_domain}};
}

inline void to_json(njson& j, const DkimResult& r) {
  j = njson{{"signer_domain", r.signer_domain}, {"valid", r.valid}};
}

inline void to_json(njson& j, const DmarcResult& r) {
  j = njson{{"aligned_pass", r.aligned_pass},
            {"applicable_policy", to_string(r.applicable_policy)},
            {"alignment", to_string(r.alignment)}};
}

inline void to_json(njson& j, const AuthOutcome& o) {
  j = njson{{"spf", o.spf},
            {"dkim", o.dkim},
            {"dmarc", o.dmarc},
            {"arc", to_string(o.arc)}};
}

}  // namespace fwdsim
