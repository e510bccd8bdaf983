// semsec: command-line front end for the converse/inner region sweeps.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "semsec/errors.hpp"
#include "semsec/run.hpp"
#include "semsec/verify.hpp"

namespace {

using nlohmann::json;
using namespace semsec;

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kInfeasible = 3, kStarved = 4 };

struct Common {
  std::string config, preset, model, out, format;
  std::vector<int> cases;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--preset", c.preset, "built-in configuration (see `semsec preset list`)");
  sub->add_option("--model", c.model, "gaussian or binary");
  sub->add_option("--case", c.cases, "encoder case (1 or 2); repeatable");
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--samples", c.samples, "Monte Carlo samples per case");
  sub->add_option("--threads", c.threads, "worker threads (0: all cores)");
  sub->add_option("--out", c.out, "output path (stdout when omitted)");
  sub->add_option("--format", c.format, "csv or json");
}

json load_document(const Common& c, const std::string& mode) {
  json doc = json::object();
  if (!c.preset.empty()) doc = preset_json(c.preset);
  if (!c.config.empty()) {
    std::ifstream f(c.config);
    json file;
    try {
      file = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ValidationError("config", std::string("not valid JSON: ") + e.what());
    }
    doc.merge_patch(file);
  }
  if (!mode.empty()) doc["mode"] = mode;
  if (!c.model.empty()) doc["model"] = c.model;
  if (!c.cases.empty()) doc["cases"] = c.cases;
  if (c.seed) doc["seed"] = *c.seed;
  if (c.samples) doc["samples"] = *c.samples;
  if (c.threads) doc["threads"] = *c.threads;
  if (!c.out.empty()) doc["output"]["path"] = c.out;
  if (!c.format.empty()) doc["output"]["format"] = c.format;
  return doc;
}

int do_run(const Common& c, const std::string& mode) {
  const RunConfig cfg = parse_config(load_document(c, mode));
  const RunResult res = run(cfg);
  write_outputs(res, cfg, std::cout);
  if (res.all_infeasible()) {
    std::cerr << "semsec: every cell is infeasible\n";
    return kInfeasible;
  }
  return kOk;
}

int do_verify(const Common& c) {
  json doc = load_document(c, "");
  // The oracle suites use the Gaussian parameters and the seed only.
  doc.erase("mode");
  doc["model"] = "gaussian";
  const RunConfig cfg = parse_config(doc);
  const json report = verify_report(cfg);
  if (cfg.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream f(cfg.out);
    f << report.dump(2) << "\n";
  }
  for (const auto& check : report["checks"]) {
    std::cerr << (check["pass"].get<bool>() ? "PASS " : "FAIL ") << check["name"].get<std::string>()
              << "  observed=" << check["observed"] << " threshold=" << check["threshold"] << "\n";
  }
  return report["pass"].get<bool>() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure semantic source coding: converse and inner region sweeps"};
  app.set_version_flag("--version", std::string(SEMSEC_VERSION));
  app.require_subcommand(1);

  Common common;
  std::string mode;
  for (const char* name : {"converse", "inner", "curve", "rdf"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("evaluate the ") + name + " sweep");
    add_common(sub, common);
    sub->callback([&mode, name] { mode = name; });
  }
  CLI::App* verify = app.add_subcommand("verify", "run the oracle suites and print a JSON report");
  add_common(verify, common);
  CLI::App* preset = app.add_subcommand("preset", "inspect built-in presets");
  preset->require_subcommand(1);
  CLI::App* list = preset->add_subcommand("list", "list preset names");
  std::string show_name;
  CLI::App* show = preset->add_subcommand("show", "print a preset as a JSON configuration");
  show->add_option("name", show_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : preset_names()) std::cout << n << "\t" << preset_description(n) << "\n";
      return kOk;
    }
    if (show->parsed()) {
      std::cout << config_to_json(parse_config(preset_json(show_name))).dump(2) << "\n";
      return kOk;
    }
    if (verify->parsed()) return do_verify(common);
    return do_run(common, mode);
  } catch (const ValidationError& e) {
    std::cerr << "semsec: invalid configuration: " << e.what() << "\n";
    return kInvalid;
  } catch (const SamplerStarvation& e) {
    std::cerr << "semsec: " << e.what() << "\n";
    return kStarved;
  } catch (const std::exception& e) {
    std::cerr << "semsec: " << e.what() << "\n";
    return kFailed;
  }
}
