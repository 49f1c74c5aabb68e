// Command-line verification harness.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qshilov/report.hpp"

int main(int argc, char** argv) {
  qshilov::RunConfig config;
  std::vector<std::string> suites;
  std::string format = "text";
  std::string mutation = "none";
  std::string output;

  CLI::App app{"Verify the quantum matrix ball identities on truncated Fock spaces."};
  app.add_option("--q", config.q, "deformation parameter in (0, 1)")->capture_default_str();
  app.add_option("--n1", config.n1, "truncation for one-leg representations")->capture_default_str();
  app.add_option("--n2", config.n2, "truncation for two-leg representations")->capture_default_str();
  app.add_option("--n3", config.n3, "truncation for three-leg representations")->capture_default_str();
  app.add_option("--phi-grid", config.phi_grid, "phase grid size")->capture_default_str();
  app.add_option("--tol", config.tol, "tolerance for norm comparisons")->capture_default_str();
  app.add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  app.add_option("--suite", suites, "suite to run (repeatable; 'none' runs nothing; default all)")
      ->check(CLI::IsMember([] {
        auto names = qshilov::suite_names();
        names.push_back("none");
        names.push_back("all");
        return names;
      }()));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--mutate", mutation, "inject a defect: none, drop-rule, drop-coaction-summand")
      ->check(CLI::IsMember({"none", "drop-rule", "drop-coaction-summand"}))
      ->capture_default_str();
  app.add_option("-o,--output", output, "write the report to a file instead of standard output");
  CLI11_PARSE(app, argc, argv);

  if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end()) {
    config.suites = qshilov::suite_names();
  } else {
    for (const auto& s : suites)
      if (s != "none") config.suites.push_back(s);
  }
  config.mutation = qshilov::parse_mutation(mutation);

  qshilov::Report report;
  try {
    report = qshilov::run(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "json" ? qshilov::to_json(report).dump(2) + "\n" : qshilov::to_text(report);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream(output) << text;
  }
  return report.ok() ? 0 : 1;
}
