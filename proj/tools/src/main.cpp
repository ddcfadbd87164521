#include "holocontact_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  namespace hc = holocontact::cli;
  CLI::App app{"holocontact: order-n contact checks for holomorphic Hermitian bundles"};
  std::string config_path, out_path;
  hc::Overrides ov;
  app.add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_option("--task", ov.task, "pointwise | along-z | curvature | verify-recursions | verify-appendix | rkhs-quotient");
  app.add_option("--order", ov.order, "jet order n");
  app.add_option("--tolerance", ov.tolerance, "relative tolerance");
  app.add_option("--seed", ov.seed, "seed for randomized checks");
  app.add_option("--out", out_path, "report path (stdout when omitted)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hc::kInputError;
  }

  std::optional<double> env_tol;
  if (const char* s = std::getenv("HOLOCONTACT_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v > 0)) {
      std::cerr << "HOLOCONTACT_TOLERANCE: not a positive number: " << s << "\n";
      return hc::kInputError;
    }
    env_tol = v;
  }

  std::ifstream in(config_path);
  std::stringstream buf;
  buf << in.rdbuf();
  hc::RunResult res;
  try {
    res = hc::run(hc::load_config(buf.str(), ov, env_tol));
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return hc::kInputError;
  }
  if (res.report.contains("error"))
    std::cerr << config_path << ": " << res.report["error"]["message"].get<std::string>() << "\n";

  const std::string text = res.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return hc::kInputError;
    }
    out << text;
  }
  return res.exit_code;
}
