// rrfilt: invariants of m-primary ideal filtrations (Hilbert coefficients,
// Ratliff-Rush closures, reduction numbers, depths of associated graded
// rings) with theorem verdicts, reported as JSON.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rrfilt/analyze.hpp"

int main(int argc, char** argv) {
  CLI::App app{"invariants of I-adic filtrations of m-primary ideals"};
  app.require_subcommand(1);

  CLI::App* analyze = app.add_subcommand("analyze", "analyze an ideal file");
  std::string file, checks_csv, json_path;
  unsigned max_power = 6, max_n = 10, window = 3, trials = 24;
  std::uint64_t seed = 1;
  bool assume_ic = false;
  analyze->add_option("file", file, "input file (ring: / ideal: lines)")
      ->required();
  analyze->add_option("--checks", checks_csv,
                      "comma-separated checks (hilbert,rr,reduction,"
                      "superficial,sigma,depth,xi,narita,e2,red2,rr-mod,"
                      "xi-descent)");
  analyze->add_option("--max-power", max_power, "largest power for xi");
  analyze->add_option("--max-n", max_n, "horizon for filtration windows");
  analyze->add_option("--window", window, "certification window width");
  analyze->add_option("--trials", trials, "random search trials");
  analyze->add_option("--seed", seed, "random seed");
  analyze->add_flag("--assume-integrally-closed", assume_ic,
                    "unlock conclusions that need I integrally closed");
  analyze->add_option("--json", json_path, "write the JSON document here");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "cannot open " << file << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    rrfilt::AnalysisRequest req = rrfilt::parse_input(buf.str());
    if (!checks_csv.empty()) {
      std::stringstream cs(checks_csv);
      std::string c;
      while (std::getline(cs, c, ','))
        if (!c.empty()) req.checks.push_back(c);
    }
    req.max_power = max_power;
    req.max_n = max_n;
    req.window = window;
    req.trials = trials;
    req.seed = seed;
    req.assume_integrally_closed = assume_ic;
    rrfilt::validate_checks(req);

    rrfilt::AnalysisResult res = rrfilt::run_report_cached(req);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      out << res.document.dump(2) << "\n";
    }
    std::cout << rrfilt::human_summary(res.document);
    return res.exit_code;
  } catch (const rrfilt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
