#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "toricfam/error.hpp"
#include "toricfam/report.hpp"

using namespace toricfam;

namespace {

std::vector<Elem> parse_lambda(const std::string& text) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<Elem>(v));
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "--lambda: '" + tok + "' is not a field element encoding");
    }
  }
  return out;
}

bool write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << body;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toricfam: L-functions of toric exponential sum families over finite fields"};
  app.require_subcommand(1);

  std::string input, out_path, format = "json", csv_path, lambda_text;
  RunOptions opt;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", input, "problem file (TOML or JSON)");
    if (needs_input) in->required();
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--threads", opt.threads, "worker threads for character sums")->check(CLI::PositiveNumber);
    sub->add_option("--budget-seconds", opt.budget_seconds, "abort when the cost model exceeds this");
    sub->add_flag("--force", opt.force, "run even when over budget");
    sub->add_option("--csv", csv_path, "export polygon vertices as CSV");
  };
  auto* analyze = app.add_subcommand("analyze", "polytopes, nondegeneracy, Hodge basis and bound tables");
  auto* fiber = app.add_subcommand("fiber", "L-polynomial of one fiber with Newton and Hodge polygons");
  auto* family = app.add_subcommand("family", "family L-series, reconstruction and bound verification");
  auto* bounds = app.add_subcommand("bounds", "bound calculators only");
  auto* selftest = app.add_subcommand("selftest", "built-in regression checks");
  for (auto* s : {analyze, fiber, family, bounds}) add_common(s, true);
  add_common(selftest, false);
  fiber->add_option("--lambda", lambda_text, "comma-separated coordinates of lambda (field encodings)");
  fiber->add_option("--lambda-degree", opt.lambda_degree, "extension degree of lambda over F_q")->check(CLI::PositiveNumber);
  family->add_flag("--inject-oracle-fault", opt.inject_oracle_fault, "perturb the oracle series (testing aid)");

  CLI11_PARSE(app, argc, argv);
  opt.log = [](const std::string& msg) { std::cerr << "cost model: " << msg << "\n"; };

  CommandResult res;
  try {
    if (!lambda_text.empty()) opt.lambda = parse_lambda(lambda_text);
    if (selftest->parsed()) {
      res = cmd_selftest(opt);
    } else {
      const Problem pr = load_problem(input);
      if (analyze->parsed()) res = cmd_analyze(pr, opt);
      else if (fiber->parsed()) res = cmd_fiber(pr, opt);
      else if (family->parsed()) res = cmd_family(pr, opt);
      else res = cmd_bounds(pr, opt);
    }
  } catch (const Error& e) {
    res.report = error_report(e);
    res.exit_code = exit_code_for(e.code());
    std::cerr << "error: " << e.what() << "\n";
  }
  const std::string body = format == "json" ? res.report.dump(2) + "\n" : render_text(res.report);
  if (out_path.empty()) std::cout << body;
  else if (!write_file(out_path, body)) return kExitValidation;
  if (!csv_path.empty() && !write_file(csv_path, render_csv(res.csv))) return kExitValidation;
  return res.exit_code;
}
