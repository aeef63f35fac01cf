// Command-line front end: run | attacks | audit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "fwdsim/cli.hpp"

namespace {

// --out writes to a file; default is stdout.
struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;
  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path, std::ios::binary);
    if (!file) return false;
    stream = &file;
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator of email forwarding and sender "
               "authentication, with an SPF incorporation audit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --format/--out may follow the subcommand

  std::string format = "text";
  std::string out_path;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "Write output to a file instead of stdout");

  auto* run = app.add_subcommand("run", "Run one scenario file and judge it");
  std::string scenario_path;
  std::string profiles_json;
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--profiles", profiles_json,
                  "JSON object of per-provider field overrides");

  auto* attacks = app.add_subcommand("attacks", "Run the built-in attack library");
  std::string filter;
  attacks->add_option("--filter", filter, "Only run attacks whose name contains this");

  auto* audit = app.add_subcommand("audit", "Audit domains for SPF incorporation");
  fwdsim::AuditOptions audit_opts;
  audit->add_option("domains", audit_opts.domains_path,
                    "File with one domain per line")->required();
  audit->add_option("--fixtures", audit_opts.fixtures_path,
                    "Recorded DNS fixture JSON (offline mode)");
  audit->add_flag("--live-dns-i-understand", audit_opts.live_acknowledged,
                  "Acknowledge that live DNS queries leave this machine");
  audit->add_option("--providers", audit_opts.providers,
                    "Provider SPF domains to test for (defaults to the six "
                    "open forwarders)");
  audit->add_option("--concurrency", audit_opts.concurrency,
                    "Parallel lookups in live mode")
      ->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  OutputTarget out;
  if (!out.open(out_path)) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return fwdsim::kExitBadInput;
  }

  if (run->parsed()) {
    fwdsim::njson overrides = fwdsim::njson::object();
    if (!profiles_json.empty()) {
      try {
        overrides = fwdsim::njson::parse(profiles_json);
      } catch (const fwdsim::njson::exception& e) {
        std::cerr << "error: --profiles: " << e.what() << '\n';
        return fwdsim::kExitBadInput;
      }
    }
    return fwdsim::cmd_run(scenario_path, overrides, format, *out.stream,
                           std::cerr);
  }
  if (attacks->parsed())
    return fwdsim::cmd_attacks(filter, format, *out.stream, std::cerr);

  audit_opts.format = format;
  return fwdsim::cmd_audit(audit_opts, *out.stream, std::cerr);
}
