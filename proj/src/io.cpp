#include "dgbdt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include <openssl/evp.h>

#include "dgbdt/version.hpp"

namespace dgbdt {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(ordered_json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const ordered_json& j, int rows, int cols, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw IoError(std::string("triple JSON: '") + name + "' must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw IoError(std::string("triple JSON: '") + name + "' row " + std::to_string(r) +
                    " must have " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw IoError(std::string("triple JSON: '") + name + "' entries must be [re, im]");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

int positive_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    throw IoError(std::string("triple JSON: '") + key + "' must be a positive integer");
  }
  return static_cast<int>(j[key].get<long long>());
}

}  // namespace

std::string triple_to_json(const ParameterTriple& t) {
  ordered_json j;
  j["kind"] = std::string(to_string(t.kind));
  j["n"] = t.n();
  j["m1"] = t.sig.m1;
  j["m2"] = t.sig.m2;
  j["A"] = matrix_to_json(t.a);
  j["S0"] = matrix_to_json(t.s0);
  j["Pi0"] = matrix_to_json(t.pi0);
  return j.dump() + "\n";
}

ParameterTriple triple_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("triple JSON: parse error: ") + e.what());
  }
  if (!j.is_object()) throw IoError("triple JSON: top level must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw IoError("triple JSON: missing 'kind'");
  ParameterTriple t;
  const auto kind = j["kind"].get<std::string>();
  if (kind == "self_adjoint") {
    t.kind = SystemKind::SelfAdjoint;
  } else if (kind == "skew") {
    t.kind = SystemKind::SkewSelfAdjoint;
  } else {
    throw IoError("triple JSON: kind must be \"self_adjoint\" or \"skew\"");
  }
  const int n = positive_int(j, "n");
  t.sig = {positive_int(j, "m1"), positive_int(j, "m2")};
  for (const char* key : {"A", "S0", "Pi0"}) {
    if (!j.contains(key)) throw IoError(std::string("triple JSON: missing '") + key + "'");
  }
  t.a = matrix_from_json(j["A"], n, n, "A");
  t.s0 = matrix_from_json(j["S0"], n, n, "S0");
  t.pi0 = matrix_from_json(j["Pi0"], n, t.sig.m(), "Pi0");
  try {
    t.check_dimensions();
  } catch (const DimensionError& e) {
    throw IoError(std::string("triple JSON: ") + e.what());
  }
  return t;
}

ParameterTriple load_triple(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return triple_from_json(buffer.str());
}

void save_triple(const ParameterTriple& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << triple_to_json(t);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::vector<double> GridSpec::Axis::values() const {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return out;
}

GridSpec GridSpec::parse(std::string_view text) {
  GridSpec spec;
  auto parse_double = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error("grid: invalid number '" + std::string(s) + "'");
    }
    return v;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view part = text.substr(pos, end - pos);
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) throw Error("grid: expected AXIS=START:STOP:COUNT");
    const std::string_view axis = part.substr(0, eq);
    const std::string_view range = part.substr(eq + 1);
    const std::size_t c1 = range.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw Error("grid: expected AXIS=START:STOP:COUNT");
    Axis a;
    a.start = parse_double(range.substr(0, c1));
    a.stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1));
    const double count = parse_double(range.substr(c2 + 1));
    if (count < 1 || count != std::floor(count)) throw Error("grid: count must be a positive integer");
    a.count = static_cast<int>(count);
    if (a.start > a.stop) throw Error("grid: start must not exceed stop");
    if (axis == "re" && !spec.has_re) {
      spec.re = a;
      spec.has_re = true;
    } else if (axis == "im" && !spec.has_im) {
      spec.im = a;
      spec.has_im = true;
    } else {
      throw Error("grid: axis must be 're' or 'im', each at most once");
    }
    pos = end + 1;
  }
  return spec;
}

std::vector<Complex> GridSpec::points() const {
  const std::vector<double> xs = has_re ? re.values() : std::vector<double>{0.0};
  const std::vector<double> ys = has_im ? im.values() : std::vector<double>{0.0};
  std::vector<Complex> out;
  out.reserve(xs.size() * ys.size());
  for (const double x : xs) {
    for (const double y : ys) out.emplace_back(x, y);
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<EvalRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.what << ',' << r.k << ',' << format_double(r.z.real()) << ','
        << format_double(r.z.imag()) << ',' << r.row << ',' << r.col << ','
        << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << '\n';
  }
}

void ReportDocument::finalize() {
  pass = !checks.empty();
  for (const auto& c : checks) pass = pass && c.pass;
}

std::string ReportDocument::to_json() const {
  ordered_json j;
  j["version"] = version;
  j["triple_sha256"] = triple_sha256;
  ordered_json list = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json item;
    item["name"] = c.name;
    // JSON has no infinity; non-finite values are reported as null.
    if (std::isfinite(c.value)) {
      item["value"] = c.value;
    } else {
      item["value"] = nullptr;
    }
    item["tol"] = c.tol;
    item["pass"] = c.pass;
    list.push_back(std::move(item));
  }
  j["checks"] = std::move(list);
  j["pass"] = pass;
  j["seconds"] = seconds;
  return j.dump(2) + "\n";
}

}  // namespace dgbdt
