#pragma once

// Problem files: a TOML subset or JSON with the same schema.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricfam/family.hpp"

namespace toricfam {

using ojson = nlohmann::ordered_json;

struct Budget {
  int k_max = 4;   // nondegeneracy search depth
  int M = 4;       // truncation order of family series
  int d_max = 0;   // largest closed-point degree; 0 means M
  int guard = 3;   // extra coefficients checked past a solve window
};

struct Problem {
  FamilySpec spec;
  std::vector<LinOp> ops;
  Budget budget;
  std::shared_ptr<FieldTower> tower;
  /// Source line of each key path, e.g. "f[1].exponent" (TOML input only).
  std::map<std::string, int> lines;
};

/// Parses the TOML subset: comments, [table], [[array]], key = value with
/// integers, strings, booleans, arrays and inline tables.
ojson parse_toml(const std::string& text, std::map<std::string, int>* lines = nullptr);

/// JSON when the text starts with '{', TOML otherwise.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

}  // namespace toricfam
