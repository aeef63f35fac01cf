#pragma once

#include <arpa/nameser.h>
#include <netdb.h>
#include <netinet/in.h>
#include <resolv.h>

#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "fwdsim/profiles.hpp"
#include "fwdsim/zone.hpp"

namespace fwdsim {

// TXT lookup result. Each entry of records is one TXT record with its
// character-string segments already concatenated. The three failure kinds
// stay distinct; "no such record" is simply an empty list.
struct TxtResult {
  std::vector<std::string> records;
  std::optional<std::string> error;  // timeout | nxdomain | servfail
};

class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual TxtResult query_txt(const std::string& name) = 0;
  virtual int calls() const = 0;
};

// Recorded-fixture resolver; the only backend tests use. Fixture shape:
//   {"state.gov": ["v=spf1 ... -all"],
//    "split.example": [["v=spf1 ip4:1.2.3.4 ", "-all"]],
//    "down.example": {"error": "timeout"}}
class FixtureResolver : public Resolver {
 public:
  explicit FixtureResolver(const njson& fixtures) {
    for (const auto& [name, entry] : fixtures.items()) {
      Entry e;
      if (entry.is_object()) {
        e.error = entry.at("error").get<std::string>();
      } else {
        for (const auto& rec : entry) {
          if (rec.is_array()) {
            std::string joined;
            for (const auto& seg : rec) joined += seg.get<std::string>();
            e.records.push_back(std::move(joined));
          } else {
            e.records.push_back(rec.get<std::string>());
          }
        }
      }
      entries_[ascii_lower(name)] = std::move(e);
    }
  }

  TxtResult query_txt(const std::string& name) override {
    ++calls_;
    TxtResult out;
    auto it = entries_.find(ascii_lower(name));
    if (it == entries_.end()) return out;  // empty answer
    if (it->second.error) {
      out.error = it->second.error;
      return out;
    }
    out.records = it->second.records;
    return out;
  }

  int calls() const override { return calls_.load(); }

 private:
  struct Entry {
    std::vector<std::string> records;
    std::optional<std::string> error;
  };
  std::map<std::string, Entry> entries_;
  std::atomic<int> calls_{0};
};

// Thin libresolv client. Each call runs on its own resolver state, so
// concurrent audits are safe.
class LiveResolver : public Resolver {
 public:
  TxtResult query_txt(const std::string& name) override {
    ++calls_;
    TxtResult out;
    struct __res_state state {};
    if (res_ninit(&state) != 0) {
      out.error = "servfail";
      return out;
    }
    state.retrans = 2;  // seconds per try
    state.retry = 2;
    unsigned char answer[8192];
    int len = res_nquery(&state, name.c_str(), ns_c_in, ns_t_txt, answer,
                         sizeof(answer));
    if (len < 0) {
      switch (state.res_h_errno) {
        case HOST_NOT_FOUND: out.error = "nxdomain"; break;
        case TRY_AGAIN: out.error = "timeout"; break;
        case NO_DATA: break;  // name exists, no TXT: empty answer
        default: out.error = "servfail"; break;
      }
      res_nclose(&state);
      return out;
    }
    ns_msg msg;
    if (ns_initparse(answer, len, &msg) == 0) {
      int count = ns_msg_count(msg, ns_s_an);
      for (int i = 0; i < count; ++i) {
        ns_rr rr;
        if (ns_parserr(&msg, ns_s_an, i, &rr) != 0) continue;
        if (ns_rr_type(rr) != ns_t_txt) continue;
        const unsigned char* rdata = ns_rr_rdata(rr);
        int rdlen = ns_rr_rdlen(rr);
        std::string record;
        int pos = 0;
        while (pos < rdlen) {
          int seg = rdata[pos++];
          if (pos + seg > rdlen) break;
          record.append(reinterpret_cast<const char*>(rdata + pos), seg);
          pos += seg;
        }
        out.records.push_back(std::move(record));
      }
    } else {
      out.error = "servfail";
    }
    res_nclose(&state);
    return out;
  }

  int calls() const override { return calls_.load(); }

 private:
  std::atomic<int> calls_{0};
};

// One TXT fetch with bounded retries on transient failures.
inline TxtResult fetch_txt(Resolver& resolver, const std::string& name,
                           int attempts = 3, int backoff_ms = 50) {
  TxtResult last;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0 && backoff_ms > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms * attempt));
    last = resolver.query_txt(name);
    if (!last.error || *last.error == "nxdomain") return last;
  }
  return last;
}

struct IncludeNode {
  std::string domain;
  std::string spf_raw;  // empty when absent or unfetched
  std::optional<std::string> error;  // fetch/parse problem, cycle, lookup_limit
  std::vector<IncludeNode> children;
};

struct FlattenResult {
  IncludeNode root;
  int lookup_count = 0;  // SPF TXT fetches, root included
  bool truncated = false;
};

namespace audit_detail {

inline std::optional<std::string> pick_spf_record(const TxtResult& txt) {
  for (const auto& rec : txt.records) {
    std::string lower = ascii_lower(rec);
    if (lower.rfind("v=spf1", 0) == 0) return rec;
  }
  return std::nullopt;
}

}  // namespace audit_detail

// Breadth-first include expansion with a visited set (cycles are cut and
// flagged) and the standard 10-fetch budget (exhaustion flips truncated and
// leaves the frontier unexpanded).
inline FlattenResult flatten_spf(Resolver& resolver, const std::string& domain) {
  FlattenResult result;
  result.root.domain = ascii_lower(domain);

  std::set<std::string> visited;
  std::deque<IncludeNode*> frontier;
  visited.insert(result.root.domain);
  frontier.push_back(&result.root);

  while (!frontier.empty()) {
    IncludeNode* node = frontier.front();
    frontier.pop_front();
    if (result.lookup_count >= kSpfLookupLimit) {
      result.truncated = true;
      node->error = "lookup_limit";
      continue;
    }
    ++result.lookup_count;
    TxtResult txt = fetch_txt(resolver, node->domain, 3, 0);
    if (txt.error) {
      node->error = txt.error;
      continue;
    }
    auto spf = audit_detail::pick_spf_record(txt);
    if (!spf) {
      node->error = "no_spf";
      continue;
    }
    node->spf_raw = *spf;
    SpfRecord parsed;
    try {
      parsed = parse_spf_record(*spf);
    } catch (const SimError&) {
      node->error = "parse_error";
      continue;
    }
    std::size_t includes = 0;
    for (const auto& mech : parsed.mechanisms)
      includes += std::holds_alternative<SpfInclude>(mech);
    node->children.reserve(includes);  // queued child pointers must not move
    for (const auto& mech : parsed.mechanisms) {
      if (const auto* inc = std::get_if<SpfInclude>(&mech)) {
        IncludeNode child;
        child.domain = inc->domain;
        node->children.push_back(std::move(child));
        IncludeNode* child_ptr = &node->children.back();
        if (visited.contains(child_ptr->domain)) {
          child_ptr->error = "cycle";
          result.truncated = true;  // the tree was cut short
          continue;
        }
        visited.insert(child_ptr->domain);
        frontier.push_back(child_ptr);
      }
    }
  }
  return result;
}

namespace audit_detail {

inline bool tree_contains(const IncludeNode& node, const std::string& domain,
                          bool include_self) {
  if (include_self && node.domain == domain) return true;
  for (const auto& child : node.children)
    if (tree_contains(child, domain, true)) return true;
  return false;
}

inline void include_tree_to_json(const IncludeNode& node, njson& j) {
  j = njson{{"domain", node.domain}};
  if (!node.spf_raw.empty()) j["spf"] = node.spf_raw;
  if (node.error) j["error"] = *node.error;
  njson children = njson::array();
  for (const auto& child : node.children) {
    njson cj;
    include_tree_to_json(child, cj);
    children.push_back(std::move(cj));
  }
  j["children"] = std::move(children);
}

}  // namespace audit_detail

struct IncorporationFinding {
  bool direct = false;
  bool transitive = false;
};

struct AuditReport {
  std::string domain;
  std::optional<std::string> error;  // root fetch failure
  std::string spf_raw;
  FlattenResult flatten;
  std::map<std::string, IncorporationFinding> incorporates;  // by provider spf domain
  std::string dmarc_policy = "absent";
  int dmarc_lookups = 0;
  bool vulnerable = false;
};

// True iff the provider's SPF domain appears anywhere below the root.
inline bool incorporates(const FlattenResult& flatten, const std::string& provider_domain) {
  std::string lower = ascii_lower(provider_domain);
  for (const auto& child : flatten.root.children)
    if (audit_detail::tree_contains(child, lower, true)) return true;
  return false;
}

namespace audit_detail {

inline std::string parse_dmarc_policy(const std::string& record) {
  std::string lower = ascii_lower(record);
  if (lower.rfind("v=dmarc1", 0) != 0) return "absent";
  std::size_t pos = 0;
  while (pos < lower.size()) {
    std::size_t end = lower.find(';', pos);
    if (end == std::string::npos) end = lower.size();
    std::string tag = lower.substr(pos, end - pos);
    auto eq = tag.find('=');
    if (eq != std::string::npos) {
      auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
          s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
          s.pop_back();
        return s;
      };
      if (trim(tag.substr(0, eq)) == "p") {
        std::string value = trim(tag.substr(eq + 1));
        if (value == "reject" || value == "quarantine" || value == "none") return value;
        return "absent";
      }
    }
    pos = end + 1;
  }
  return "absent";
}

inline std::string fetch_dmarc_policy(Resolver& resolver, const std::string& domain,
                                      int& lookups) {
  auto read = [&](const std::string& name) -> std::optional<std::string> {
    ++lookups;
    TxtResult txt = fetch_txt(resolver, name, 3, 0);
    if (txt.error) return std::nullopt;
    for (const auto& rec : txt.records) {
      if (ascii_lower(rec).rfind("v=dmarc1", 0) == 0) return parse_dmarc_policy(rec);
    }
    return std::nullopt;
  };
  if (auto policy = read("_dmarc." + ascii_lower(domain))) return *policy;
  std::string org = org_domain_or_self(domain);
  if (org != ascii_lower(domain))
    if (auto policy = read("_dmarc." + org)) return *policy;
  return "absent";
}

}  // namespace audit_detail

// The six open-forwarding providers whose SPF domains the study flags.
inline std::vector<std::string> default_audit_providers() {
  return {"spf.protection.outlook.com", "spf.icloud.com", "spf.freemail.hu",
          "spf.hushmail.com",           "spf.mail2world.com", "spf.runbox.com"};
}

inline std::map<std::string, const ProviderProfile*> profiles_by_spf_domain(
    const ProfileMap& profiles) {
  std::map<std::string, const ProviderProfile*> out;
  for (const auto& [name, p] : profiles)
    if (!p.spf_domain.empty()) out[p.spf_domain] = &p;
  return out;
}

// Audits one domain: flatten its SPF, test incorporation of each provider,
// read its DMARC policy. vulnerable = incorporates at least one provider
// that actually runs open forwarding.
inline AuditReport audit_domain(Resolver& resolver, const std::string& domain,
                                const std::vector<std::string>& providers,
                                const ProfileMap& profiles) {
  AuditReport report;
  report.domain = ascii_lower(domain);
  report.flatten = flatten_spf(resolver, report.domain);
  if (report.flatten.root.error &&
      (*report.flatten.root.error == "timeout" ||
       *report.flatten.root.error == "nxdomain" ||
       *report.flatten.root.error == "servfail"))
    report.error = report.flatten.root.error;
  report.spf_raw = report.flatten.root.spf_raw;

  auto by_spf = profiles_by_spf_domain(profiles);
  for (const auto& provider : providers) {
    IncorporationFinding finding;
    finding.transitive = incorporates(report.flatten, provider);
    for (const auto& child : report.flatten.root.children)
      finding.direct |= child.domain == ascii_lower(provider);
    report.incorporates[ascii_lower(provider)] = finding;
    auto it = by_spf.find(ascii_lower(provider));
    if (finding.transitive && it != by_spf.end() && it->second->open_forwarding)
      report.vulnerable = true;
  }
  report.dmarc_policy =
      audit_detail::fetch_dmarc_policy(resolver, report.domain, report.dmarc_lookups);
  return report;
}

inline void to_json(njson& j, const AuditReport& r) {
  njson tree;
  audit_detail::include_tree_to_json(r.flatten.root, tree);
  njson inc = njson::object();
  for (const auto& [provider, finding] : r.incorporates)
    inc[provider] = njson{{"direct", finding.direct}, {"transitive", finding.transitive}};
  j = njson{{"domain", r.domain},
            {"error", r.error ? njson(*r.error) : njson(nullptr)},
            {"spf", r.spf_raw},
            {"include_tree", tree},
            {"incorporates", inc},
            {"dmarc_policy", r.dmarc_policy},
            {"lookup_count", r.flatten.lookup_count},
            {"truncated", r.flatten.truncated},
            {"vulnerable", r.vulnerable}};
}

// Batch audit with bounded concurrency. Output order is input order
// regardless of completion order; a failing domain yields a report with its
// error set and never disturbs its neighbors.
inline std::vector<AuditReport> audit(Resolver& resolver,
                                      const std::vector<std::string>& domains,
                                      const std::vector<std::string>& providers,
                                      const ProfileMap& profiles,
                                      int concurrency = 16) {
  std::vector<AuditReport> reports(domains.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= domains.size()) return;
      try {
        reports[i] = audit_domain(resolver, domains[i], providers, profiles);
      } catch (const std::exception& e) {
        reports[i] = AuditReport{};
        reports[i].domain = ascii_lower(domains[i]);
        reports[i].error = std::string("internal: ") + e.what();
      }
    }
  };
  int threads = std::min<int>(std::max(concurrency, 1),
                              static_cast<int>(domains.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

inline njson audit_to_json(const std::vector<AuditReport>& reports) {
  njson domains = njson::array();
  int errors = 0, vulnerable = 0, incorporating = 0;
  std::map<std::string, int> policies;
  for (const auto& r : reports) {
    domains.push_back(r);
    if (r.error) ++errors;
    if (r.vulnerable) ++vulnerable;
    bool any = false;
    for (const auto& [_, f] : r.incorporates) any |= f.transitive;
    if (any) ++incorporating;
    ++policies[r.dmarc_policy];
  }
  njson policy_counts = njson::object();
  for (const auto& [policy, count] : policies) policy_counts[policy] = count;
  return njson{{"domains", domains},
               {"summary",
                njson{{"total", reports.size()},
                      {"errors", errors},
                      {"incorporating_any", incorporating},
                      {"vulnerable", vulnerable},
                      {"dmarc_policies", policy_counts}}}};
}

}  // namespace fwdsim
