#pragma once

// Subcommand drivers producing deterministic JSON reports.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toricfam/error.hpp"
#include "toricfam/euler.hpp"
#include "toricfam/problem.hpp"

namespace toricfam {

enum ExitCode { kExitOk = 0, kExitCheckFail = 2, kExitValidation = 3, kExitBudget = 4 };

struct RunOptions {
  int threads = 1;
  double budget_seconds = 0;  // 0: no limit
  bool force = false;
  std::optional<std::vector<Elem>> lambda;
  int lambda_degree = 1;
  /// Perturbs the moment-oracle series before comparison (testing aid).
  bool inject_oracle_fault = false;
  /// Receives the cost model before any expensive step.
  std::function<void(const std::string&)> log;
};

struct CsvRow {
  std::string source;
  std::string polygon;
  long x;
  Rat y;
};

struct CommandResult {
  ojson report;
  int exit_code = kExitOk;
  std::vector<CsvRow> csv;
};

CommandResult cmd_analyze(const Problem& pr, const RunOptions& opt);
CommandResult cmd_fiber(const Problem& pr, const RunOptions& opt);
CommandResult cmd_family(const Problem& pr, const RunOptions& opt);
CommandResult cmd_bounds(const Problem& pr, const RunOptions& opt);
CommandResult cmd_selftest(const RunOptions& opt);

int exit_code_for(Errc code);
ojson error_report(const Error& e);

std::string render_text(const ojson& report);
std::string render_csv(const std::vector<CsvRow>& rows);

ojson to_json(const Rat& r);
ojson to_json(const Int& v);
ojson to_json(const CycInt& x);
ojson to_json(const CycRat& x);
ojson to_json(const NewtonPolygon& np);
ojson to_json(const BoundValue& b);

}  // namespace toricfam
