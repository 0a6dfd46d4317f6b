// realbundles: command-line front end. See README.md for the commands.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "realbundles/cli.hpp"

namespace rc = realbundles::cli;

int main(int argc, char** argv) {
  CLI::App app{"Topological classes of Real line bundles on real tori and real curves"};
  app.set_version_flag("--version", "realbundles 1.0.0");
  std::string command, config_path, format, out_path;
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
  app.add_option("command", command, "classify-torus | classify-curve | theta-table | orientability | holonomy-check | verify");
  app.add_option("--config", config_path, "JSON file with command, parameters, seed, output_format");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
  auto* fmt_opt = app.add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--set", sets, "parameter override key=JSON, repeatable");
  CLI11_PARSE(app, argc, argv);

  try {
    rc::RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw realbundles::InvalidInput("cannot read " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = rc::parse_config(ss.str());
    }
    if (!command.empty()) cfg.command = command;
    if (cfg.command.empty()) throw realbundles::InvalidInput("no command given");
    if (*seed_opt) cfg.seed = seed;
    if (*fmt_opt) cfg.format = format;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw realbundles::InvalidInput("--set expects key=JSON, got " + s);
      try {
        cfg.parameters[s.substr(0, eq)] = rc::Json::parse(s.substr(eq + 1));
      } catch (const rc::Json::parse_error&) {
        cfg.parameters[s.substr(0, eq)] = s.substr(eq + 1);  // bare strings such as --set suite=theta
      }
    }
    const rc::Report report = rc::run(cfg);
    const std::string text = rc::render(report, cfg.format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      out << text;
    }
    return report.exit_code;
  } catch (const realbundles::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return rc::kInvalidInput;
  } catch (const realbundles::InconsistentSystem& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return rc::kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return rc::kInvalidInput;
  }
}
