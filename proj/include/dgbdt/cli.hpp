#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dgbdt/io.hpp"

namespace dgbdt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr double kFallbackTol = 1e-7;

/// DIRAC_GBDT_TOL if set (throws Error when it is not a positive number),
/// otherwise kFallbackTol.
double default_tolerance();

struct GenerateArgs {
  std::string kind = "self_adjoint";
  int n = 2;
  int m1 = 1;
  int m2 = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  bool quiet = true;
};

struct VerifyArgs {
  std::filesystem::path triple;
  int kmax = 40;
  double tol = kFallbackTol;
  std::filesystem::path out;
  bool quiet = true;
};

struct EvalArgs {
  std::filesystem::path triple;
  std::string what;  // potential | fundamental | weyl | reflection
  std::optional<GridSpec> grid;
  std::optional<int> k;
  int kmax = 40;
  std::filesystem::path out;
  bool quiet = true;
};

// Each command reports human-readable messages on `err` and progress on `out`
// (only when not quiet), and returns one of the exit codes above.
int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgbdt::cli
