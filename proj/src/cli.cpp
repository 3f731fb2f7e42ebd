#include "dgbdt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "dgbdt/verify.hpp"
#include "dgbdt/version.hpp"

namespace dgbdt::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void append_matrix(std::vector<EvalRow>& rows, const std::string& what, int k, Complex z,
                   const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rows.push_back({what, k, z, static_cast<int>(r), static_cast<int>(c), m(r, c)});
    }
  }
}

}  // namespace

double default_tolerance() {
  const char* env = std::getenv("DIRAC_GBDT_TOL");
  if (env == nullptr || *env == '\0') return kFallbackTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw Error(std::string("DIRAC_GBDT_TOL must be a positive number, got '") + env + "'");
  }
  return v;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  ParameterTriple t;
  try {
    if (args.n < 1 || args.m1 < 1 || args.m2 < 1) {
      err << "gen: --n, --m1 and --m2 must be positive\n";
      return kExitUsage;
    }
    const SystemKind kind = parse_kind(args.kind);
    t = generate(kind, args.n, Signature{args.m1, args.m2}, args.seed);
  } catch (const GenerationError& e) {
    err << "gen: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "gen: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    save_triple(t, args.out);
  } catch (const IoError& e) {
    err << "gen: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!args.quiet) out << "wrote " << to_string(t.kind) << " triple (n=" << t.n() << ") to "
                       << args.out.string() << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.kmax < 1 || !(args.tol > 0.0)) {
    err << "verify: --kmax and --tol must be positive\n";
    return kExitUsage;
  }
  ParameterTriple t;
  try {
    t = load_triple(args.triple);
  } catch (const Error& e) {
    err << "verify: " << e.what() << '\n';
    return kExitUsage;
  }
  ReportDocument report;
  try {
    report = run_verification(t, {args.kmax, args.tol});
  } catch (const Error& e) {
    err << "verify: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  try {
    write_text(args.out, report.to_json());
  } catch (const IoError& e) {
    err << "verify: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!args.quiet) {
    for (const auto& c : report.checks) {
      out << (c.pass ? "pass " : "FAIL ") << c.name << " = " << format_double(c.value)
          << " (tol " << format_double(c.tol) << ")\n";
    }
  }
  for (const auto& c : report.checks) {
    if (!c.pass) err << "verify: check failed: " << c.name << " = " << format_double(c.value) << '\n';
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const bool is_potential = args.what == "potential";
  const bool is_fundamental = args.what == "fundamental";
  if (!is_potential && !is_fundamental && args.what != "weyl" && args.what != "reflection") {
    err << "eval: --what must be potential, fundamental, weyl or reflection\n";
    return kExitUsage;
  }
  if (!is_potential && !args.grid) {
    err << "eval: --grid is required for --what " << args.what << '\n';
    return kExitUsage;
  }
  if ((args.k && *args.k < 0) || args.kmax < 0) {
    err << "eval: --k and --kmax must be non-negative\n";
    return kExitUsage;
  }
  ParameterTriple t;
  try {
    t = load_triple(args.triple);
  } catch (const Error& e) {
    err << "eval: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<EvalRow> rows;
  int skipped = 0;
  int evaluated = 0;
  try {
    const int k_lo = args.k.value_or(0);
    const int k_hi = args.k.value_or(args.kmax);
    const bool needs_sequence = is_potential || is_fundamental || args.what == "weyl";
    std::optional<GbdtSequence> seq;
    if (needs_sequence) seq.emplace(GbdtSequence::build(t, std::max(k_hi, 1)));
    const std::vector<Complex> points =
        args.grid ? args.grid->points() : std::vector<Complex>{Complex(0.0)};

    if (is_potential) {
      for (int k = k_lo; k <= k_hi; ++k) append_matrix(rows, "potential", k, 0.0, seq->c(k));
      evaluated = k_hi - k_lo + 1;
    } else if (is_fundamental) {
      for (int k = k_lo; k <= k_hi; ++k) {
        for (const Complex z : points) {
          try {
            append_matrix(rows, "fundamental", k, z, fundamental_closed(*seq, k, z));
            ++evaluated;
          } catch (const PoleError&) {
            ++skipped;
          } catch (const SingularError&) {
            ++skipped;
          }
        }
      }
    } else {
      const bool weyl = args.what == "weyl";
      for (const Complex z : points) {
        try {
          const Matrix v = weyl ? weyl_value(*seq, z) : reflection_closed(t, z);
          append_matrix(rows, args.what, 0, z, v);
          ++evaluated;
        } catch (const PoleError&) {
          ++skipped;
        } catch (const SingularError&) {
          ++skipped;
        }
      }
    }
  } catch (const Error& e) {
    err << "eval: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  if (skipped > 0) err << "eval: skipped " << skipped << " point(s) at poles\n";
  if (evaluated == 0) {
    err << "eval: every grid point was at a pole\n";
    return kExitCheckFailed;
  }
  std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "eval: cannot open '" << args.out.string() << "' for writing\n";
    return kExitUsage;
  }
  write_csv(file, rows);
  if (!file) {
    err << "eval: write to '" << args.out.string() << "' failed\n";
    return kExitUsage;
  }
  if (!args.quiet) out << "wrote " << rows.size() << " rows to " << args.out.string() << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Dirac systems from GBDT parameter triples", "dirac-gbdt"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  bool quiet = true;
  app.add_flag("--quiet,!--no-quiet", quiet, "Suppress progress output on stdout")
      ->capture_default_str();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random strongly admissible triple");
  gen_cmd->add_option("--kind", gen.kind, "self_adjoint (sa) or skew")->required();
  gen_cmd->add_option("--n", gen.n, "State dimension")->required();
  gen_cmd->add_option("--m1", gen.m1, "Size of the positive block of j")->required();
  gen_cmd->add_option("--m2", gen.m2, "Size of the negative block of j")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.out, "Output triple JSON")->required();

  VerifyArgs ver;
  double ver_tol = 0.0;
  auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suite on a triple");
  ver_cmd->add_option("triple", ver.triple, "Triple JSON")->required();
  ver_cmd->add_option("--kmax", ver.kmax, "Horizon of the sequence checks")->capture_default_str();
  auto* tol_opt = ver_cmd->add_option("--tol", ver_tol, "Tolerance of the theorem checks");
  ver_cmd->add_option("-o,--output", ver.out, "Output report JSON")->required();

  EvalArgs ev;
  std::string grid_text;
  int k_value = 0;
  auto* ev_cmd = app.add_subcommand("eval", "Evaluate a quantity on a grid and write CSV");
  ev_cmd->add_option("triple", ev.triple, "Triple JSON")->required();
  ev_cmd->add_option("--what", ev.what, "potential, fundamental, weyl or reflection")->required();
  ev_cmd->add_option("--grid", grid_text, "re=START:STOP:COUNT[,im=START:STOP:COUNT]");
  auto* k_opt = ev_cmd->add_option("--k", k_value, "Single step index (default: 0..kmax)");
  ev_cmd->add_option("--kmax", ev.kmax, "Largest step index when --k is absent")
      ->capture_default_str();
  ev_cmd->add_option("-o,--output", ev.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      gen.quiet = quiet;
      return cmd_generate(gen, out, err);
    }
    if (ver_cmd->parsed()) {
      ver.tol = tol_opt->count() > 0 ? ver_tol : default_tolerance();
      ver.quiet = quiet;
      return cmd_verify(ver, out, err);
    }
    if (!grid_text.empty()) ev.grid = GridSpec::parse(grid_text);
    if (k_opt->count() > 0) ev.k = k_value;
    ev.quiet = quiet;
    return cmd_eval(ev, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace dgbdt::cli
