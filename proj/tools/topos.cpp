#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "topos/suites.hpp"

namespace {

using topos::suites::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::optional<std::uint64_t>& seed, std::string& json_out) {
  sub->add_option("--heyting", cfg.heyting, "bundled algebra (chain2, chain3, diamond4, m3) or algebra file");
  sub->add_option("--max-set", cfg.max_set, "largest base set in map sweeps");
  sub->add_option("--max-carrier", cfg.max_carrier, "largest PER carrier in object sweeps");
  sub->add_option("--probe-bound", cfg.probe_bound, "largest probe carrier for universal properties");
  sub->add_option("--predicate-cap", cfg.predicate_cap, "predicate spaces above this are sampled");
  sub->add_option("--seed", seed, "seed for sampled sweeps");
  sub->add_option("--json", json_out, "write the report here instead of stdout");
  sub->add_option("--object", cfg.objects, "PER file (repeatable)");
  sub->add_option("--pseq", cfg.pseq, "pseudoequivalence file");
  sub->add_option("--category", cfg.category, "finset, per or fam");
  sub->add_option("--functor", cfg.functor, "global-sections or identity");
}

int fail_with(const topos::Error& e) {
  topos::json j{{"error", std::string(topos::to_string(e.code()))}, {"message", e.what()}};
  if (!e.witness().is_null()) j["witness"] = e.witness();
  std::cerr << j.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite tripos-to-topos checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string json_out;
  const std::pair<const char*, const char*> commands[] = {
      {"heyting-check", "validate a finite Heyting algebra"},
      {"tripos-verify", "check the tripos laws of T X = H^X"},
      {"topos-laws", "category, limit, image and classifier laws of the PER topos"},
      {"resolve", "check sigma resolutions of PER objects"},
      {"kan", "left Kan extension along the assembly embedding"},
      {"quotient", "quotient of a pseudoequivalence"},
      {"ortho", "orthogonality of covers and monos"},
      {"sub-nabla-iso", "compare Sub(nabla X) with T X"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (std::string(name) == "topos-laws") sub->alias("laws");
    add_common(sub, cfg, seed, json_out);
    sub->callback([&cfg, name = std::string(name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  cfg.seed = seed;

  try {
    const topos::Report report = topos::suites::run(cfg);
    const topos::json out = topos::suites::report_json(cfg, report);
    if (json_out.empty()) {
      std::cout << out.dump(2) << '\n';
    } else {
      std::ofstream f(json_out, std::ios::binary);
      if (!f) throw topos::Error(topos::ErrorCode::parse_error, json_out + ": cannot write report");
      f << out.dump(2) << '\n';
      std::size_t failed = 0;
      for (const auto& c : report.checks()) failed += c.status == topos::Status::fail;
      std::cout << report.checks().size() << " checks, " << failed << " failed\n";
    }
    return report.ok() ? 0 : 1;
  } catch (const topos::Error& e) {
    return fail_with(e);
  }
}
