#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dgbdt/triples.hpp"

namespace dgbdt {

/// Malformed input file or unreadable/unwritable path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Canonical one-line JSON: fixed field order, complex entries as [re, im],
/// matrices as row-major nested arrays, shortest round-trip number text.
std::string triple_to_json(const ParameterTriple& t);
ParameterTriple triple_from_json(std::string_view text);

ParameterTriple load_triple(const std::filesystem::path& path);
void save_triple(const ParameterTriple& t, const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

/// Real-axis and/or imaginary-axis sample ranges; both present means the
/// rectangle x + iy over the product grid.
struct GridSpec {
  struct Axis {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> values() const;
  };
  bool has_re = false;
  bool has_im = false;
  Axis re;
  Axis im;

  /// "re=START:STOP:COUNT", "im=START:STOP:COUNT" or both joined by ','.
  static GridSpec parse(std::string_view text);
  std::vector<Complex> points() const;
};

struct EvalRow {
  std::string what;
  int k = 0;
  Complex z;
  int row = 0;
  int col = 0;
  Complex value;
};

inline constexpr std::string_view kCsvHeader = "what,k,z_re,z_im,row,col,val_re,val_im";

void write_csv(std::ostream& out, const std::vector<EvalRow>& rows);

struct ReportCheck {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ReportDocument {
  std::string version;
  std::string triple_sha256;
  std::vector<ReportCheck> checks;
  bool pass = false;
  double seconds = 0.0;

  /// Recomputes `pass` as the conjunction of the per-check flags.
  void finalize();
  std::string to_json() const;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace dgbdt
