#pragma once

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fwdsim/attacks.hpp"
#include "fwdsim/audit.hpp"
#include "fwdsim/scenario.hpp"

namespace fwdsim {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitJudgeFail = 1;
inline constexpr int kExitBadInput = 2;

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadInput, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline njson parse_json_file(const std::string& path) {
  try {
    return njson::parse(read_file(path));
  } catch (const njson::exception& e) {
    fail(ErrorCode::BadInput, path + ": " + e.what());
  }
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string render_run_text(const Scenario& s, const DeliveryTrace& trace,
                                   const JudgeResult& result) {
  std::ostringstream out;
  out << "scenario: " << s.name << '\n';
  for (const auto& note : trace.setup_notes) out << "setup: " << note << '\n';
  for (const auto& hop : trace.hops) {
    out << "hop " << hop.index << ": provider=" << hop.provider
        << " account=" << hop.account << " action=" << hop.action;
    if (!hop.transform.empty()) out << " transform=" << hop.transform;
    if (!hop.forwarded_to.empty()) {
      out << " forwarded_to=";
      for (std::size_t i = 0; i < hop.forwarded_to.size(); ++i)
        out << (i ? "," : "") << hop.forwarded_to[i];
    }
    if (hop.action == "deliver")
      out << " verdict=" << to_string(hop.disposition.verdict)
          << " warning=" << bool_str(hop.disposition.warning);
    for (const auto& o : hop.overrides) out << " override=" << o;
    out << '\n';
  }
  for (const auto& [addr, disp] : trace.final)
    out << "final: " << addr << " verdict=" << to_string(disp.verdict)
        << " warning=" << bool_str(disp.warning) << '\n';
  out << "victim: " << s.expect.victim.addr_spec()
      << " expected_success=" << bool_str(s.expect.success_required)
      << " attack_success=" << bool_str(result.attack_success)
      << " judgement=" << (result.pass ? "pass" : "fail")
      << " reason=" << result.reason << '\n';
  return out.str();
}

// Overrides given on the command line must land before the infrastructure
// zone is derived, so splice them into the file's patch object and reparse.
inline njson merge_profile_patch(njson scenario_json, const njson& overrides) {
  if (overrides.empty()) return scenario_json;
  njson& profiles = scenario_json["profiles"];
  if (!profiles.is_object()) profiles = njson::object();
  njson& patch = profiles["patch"];
  if (!patch.is_object()) patch = njson::object();
  for (const auto& [provider, fields] : overrides.items())
    for (const auto& [key, value] : fields.items()) patch[provider][key] = value;
  return scenario_json;
}

struct AttackRow {
  std::string name;
  std::string description;
  bool expected = false;
  JudgeResult result;
  DeliveryTrace trace;
  const Scenario* scenario = nullptr;
};

inline njson attack_rows_to_json(const std::vector<AttackRow>& rows) {
  njson attacks = njson::array();
  int passed = 0;
  for (const auto& row : rows) {
    if (row.result.pass) ++passed;
    njson victim_verdict = nullptr;
    njson victim_warning = nullptr;
    auto it = row.trace.final.find(
        ascii_lower(row.scenario->expect.victim.addr_spec()));
    if (it != row.trace.final.end()) {
      victim_verdict = to_string(it->second.verdict);
      victim_warning = it->second.warning;
    }
    attacks.push_back(njson{{"name", row.name},
                            {"description", row.description},
                            {"expected_success", row.expected},
                            {"attack_success", row.result.attack_success},
                            {"judgement", row.result.pass ? "pass" : "fail"},
                            {"reason", row.result.reason},
                            {"victim_verdict", victim_verdict},
                            {"victim_warning", victim_warning}});
  }
  return njson{{"attacks", attacks},
               {"summary",
                njson{{"total", rows.size()},
                      {"passed", passed},
                      {"failed", rows.size() - passed}}}};
}

}  // namespace cli_detail

// Runs one scenario file. Exit 0 when the observed outcome matches the
// expectation, 1 when it does not, 2 on unreadable/invalid input.
inline int cmd_run(const std::string& path, const njson& profile_overrides,
                   const std::string& format, std::ostream& out,
                   std::ostream& err) {
  Scenario scenario;
  try {
    njson j = cli_detail::parse_json_file(path);
    j = cli_detail::merge_profile_patch(std::move(j), profile_overrides);
    scenario = scenario_from_json(j);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  try {
    DeliveryTrace trace = run_scenario(scenario);
    JudgeResult result = judge(trace, scenario.expect);
    if (format == "json")
      out << trace_to_jsonl(trace, scenario.expect, result);
    else
      out << cli_detail::render_run_text(scenario, trace, result);
    return result.pass ? kExitOk : kExitJudgeFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}

// Runs the built-in attack library (name order), optionally filtered by a
// substring. A filter that matches nothing warns and exits 0.
inline int cmd_attacks(const std::string& filter, const std::string& format,
                       std::ostream& out, std::ostream& err) {
  const auto& library = attack_library();
  std::vector<cli_detail::AttackRow> rows;
  for (const auto& [name, scenario] : library) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    cli_detail::AttackRow row;
    row.name = name;
    row.description = scenario.description;
    row.expected = scenario.expect.success_required;
    row.scenario = &scenario;
    row.trace = run_scenario(scenario);
    row.result = judge(row.trace, scenario.expect);
    rows.push_back(std::move(row));
  }
  if (rows.empty() && !filter.empty())
    err << "warning: no attack matches filter '" << filter << "'\n";

  bool all_pass = true;
  for (const auto& row : rows) all_pass &= row.result.pass;

  if (format == "json") {
    out << cli_detail::attack_rows_to_json(rows).dump(2) << '\n';
  } else {
    for (const auto& row : rows)
      out << (row.result.pass ? "PASS" : "FAIL") << ' ' << row.name
          << ": expected_success=" << cli_detail::bool_str(row.expected)
          << " attack_success=" << cli_detail::bool_str(row.result.attack_success)
          << " (" << row.result.reason << ")\n";
    int passed = 0;
    for (const auto& row : rows) passed += row.result.pass;
    out << "summary: total=" << rows.size() << " passed=" << passed
        << " failed=" << rows.size() - passed << '\n';
  }
  return all_pass ? kExitOk : kExitJudgeFail;
}

struct AuditOptions {
  std::string domains_path;
  std::string fixtures_path;         // recorded resolver; empty means live
  bool live_acknowledged = false;    // --live-dns-i-understand
  std::vector<std::string> providers = default_audit_providers();
  std::string format = "text";
  int concurrency = 16;
};

// Audits domains for SPF incorporation of forwarding providers. Live DNS
// needs both the explicit flag and FWDSIM_ALLOW_NETWORK=1; recorded fixtures
// need neither. Per-domain failures are data, not process errors.
inline int cmd_audit(const AuditOptions& opts, std::ostream& out,
                     std::ostream& err) {
  std::vector<std::string> domains;
  std::unique_ptr<Resolver> resolver;
  try {
    std::istringstream lines(cli_detail::read_file(opts.domains_path));
    std::string line;
    while (std::getline(lines, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      std::size_t start = line.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      line = line.substr(start);
      if (line.empty() || line[0] == '#') continue;
      domains.push_back(line);
    }
    if (!opts.fixtures_path.empty()) {
      resolver = std::make_unique<FixtureResolver>(
          cli_detail::parse_json_file(opts.fixtures_path));
    } else {
      const char* env = std::getenv("FWDSIM_ALLOW_NETWORK");
      bool env_ok = env && std::string(env) == "1";
      if (!opts.live_acknowledged || !env_ok) {
        err << "error: live DNS requires --live-dns-i-understand and "
               "FWDSIM_ALLOW_NETWORK=1; pass --fixtures for recorded mode\n";
        return kExitBadInput;
      }
      resolver = std::make_unique<LiveResolver>();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  ProfileMap profiles = builtin_profiles();
  std::vector<AuditReport> reports =
      audit(*resolver, domains, opts.providers, profiles, opts.concurrency);

  if (opts.format == "json") {
    out << audit_to_json(reports).dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << r.domain << ": vulnerable=" << cli_detail::bool_str(r.vulnerable)
          << " dmarc=" << r.dmarc_policy << " lookups=" << r.flatten.lookup_count
          << " truncated=" << cli_detail::bool_str(r.flatten.truncated);
      std::string hits;
      for (const auto& [provider, f] : r.incorporates)
        if (f.transitive) hits += (hits.empty() ? "" : ",") + provider;
      if (!hits.empty()) out << " incorporates=" << hits;
      if (r.error) out << " error=" << *r.error;
      out << '\n';
    }
    njson summary = audit_to_json(reports)["summary"];
    out << "summary: total=" << summary["total"].get<std::size_t>()
        << " vulnerable=" << summary["vulnerable"].get<int>()
        << " incorporating_any=" << summary["incorporating_any"].get<int>()
        << " errors=" << summary["errors"].get<int>() << '\n';
  }
  return kExitOk;
}

}  // namespace fwdsim
