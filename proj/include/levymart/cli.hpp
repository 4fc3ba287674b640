#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levymart/generator.hpp"
#include "levymart/polynomial.hpp"

namespace levy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConvergence = 3;

/// A test function from the mini-language: "poly:c0,c1,...",
/// "expmix:a,l1,b,l2", or a name (cosh, cube, square, exp, sin, tanh, one).
struct FunctionSpec {
  std::string text;
  SmoothFunction smooth;
  std::optional<Polynomial> poly;
  std::optional<ExpMix> expmix;
};

FunctionSpec parse_function(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_csv(const std::string& text);

/// Runs one command. `args` excludes the program name. JSON reports go to
/// `out` (or --out); the human-readable table goes to `err` when
/// `table_on_err` is set or --table is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool table_on_err = false);

}  // namespace levy::cli
