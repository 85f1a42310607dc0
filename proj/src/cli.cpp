#include "bjg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bjg/matrix_io.hpp"
#include "bjg/report.hpp"

namespace bjg {

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::WitnessNotFound ? kExitWitnessNotFound : kExitPrecondition;
}

namespace {

struct Config {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t budget = 4096;
  bool exact = false;
  int phase_grid = 64;
  std::string out_path;
  std::string format = "json-lines";
  std::size_t workers = 1;
  bool normalize = false;
  bool approximate_complex = false;
};

struct Inputs {
  std::vector<std::string> paths;
  std::size_t rows = 0, cols = 0;
};

OperatorOptions operator_options(const Config& c) {
  OperatorOptions op;
  op.tol.active = c.tol;
  op.tol.margin = c.tol;
  op.phase_grid = c.phase_grid;
  op.seed = c.seed;
  return op;
}

Json config_json(const Config& c) {
  return Json{{"tol", c.tol},        {"seed", c.seed},     {"budget", c.budget},
              {"exact", c.exact},    {"phase_grid", c.phase_grid}, {"normalize", c.normalize},
              {"approximate_complex", c.approximate_complex}};
}

// Reads, hashes and echoes every input matrix.
std::vector<OperatorMatrix> load(const Inputs& in, const Config& c, Json& report) {
  std::vector<OperatorMatrix> out;
  for (const auto& path : in.paths) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream bytes;
    bytes << file.rdbuf();
    OperatorMatrix t = parse_matrix(bytes.str());
    report["inputs"].push_back(Json{{"path", path}, {"hash", content_hash(bytes.str())}, {"matrix", matrix_json(t)}});
    if (c.normalize && !t.is_zero()) t = t.scaled(1.0 / op_norm(t, operator_options(c)));
    out.push_back(std::move(t));
  }
  return out;
}

using Handler = std::function<Json(const std::vector<OperatorMatrix>&, const Config&, const Inputs&)>;

Json run_norm(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  const auto est = op_norm_estimate(a[0], operator_options(c));
  return Json{{"norm", est.value}, {"exact", est.exact}};
}

Json run_norming_set(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  return norming_json(norming_set(a[0], operator_options(c)), a[0].field());
}

Json run_bj_check(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  return orthogonality_json(operator_bj_orthogonality(a[0], a[1], operator_options(c)), a[0].field());
}

Json run_smooth_check(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  const auto op = operator_options(c);
  return Json{{"smooth", operator_is_smooth(a[0], op)}, {"norming", norming_json(norming_set(a[0], op), a[0].field())}};
}

Json run_extreme_check(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  ExtremalityOptions eo;
  eo.op = operator_options(c);
  eo.arithmetic = c.exact ? LpArithmetic::Rational : LpArithmetic::Float;
  eo.approximate_complex = c.approximate_complex;
  return extremality_json(is_extreme_contraction(a[0], eo), a[0]);
}

SymmetryOptions symmetry_options(const Config& c) {
  SymmetryOptions so;
  so.op = operator_options(c);
  so.seed = c.seed;
  return so;
}

Json run_left_witness(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  return witness_json(left_symmetry_witness(a[0], symmetry_options(c)));
}

Json run_right_witness(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  return witness_json(right_symmetry_witness(a[0], symmetry_options(c)));
}

Json run_symmetry_pair(const std::vector<OperatorMatrix>& a, const Config& c, const Inputs&) {
  return pair_json(check_symmetry_pair(a[0], a[1], operator_options(c)), a[0].field());
}

Json run_grothendieck(const std::vector<OperatorMatrix>& extra, const Config& c, const Inputs& in) {
  GrothendieckOptions go;
  go.budget = c.budget;
  go.seed = c.seed;
  go.workers = c.workers;
  go.extra_candidates = extra;
  return grothendieck_json(lower_bound(in.rows, in.cols, go));
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--tol", c.tol, "Relative tolerance for active sets and hull margins")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Seed for every random choice");
  sub->add_option("--budget", c.budget, "Ascent runs for the Grothendieck search");
  sub->add_flag("--exact", c.exact, "Solve extremality programs in rational arithmetic");
  sub->add_option("--phase-grid", c.phase_grid, "Phases per coordinate for complex norming")->check(CLI::Range(2, 4096));
  sub->add_option("--out", c.out_path, "Write the report here instead of standard output");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json-lines", "human"}));
  sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  sub->add_flag("--normalize", c.normalize, "Scale every input matrix to norm one");
  sub->add_flag("--approximate-complex", c.approximate_complex, "Run the approximate complex extremality program");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birkhoff-James geometry of B(linf^n, l1^m)", "bjgeom"};
  app.require_subcommand(1);
  Config config;
  Inputs inputs;

  struct Command {
    const char* name;
    const char* help;
    std::size_t files;
    Handler handler;
  };
  const std::vector<Command> commands = {
      {"norm", "Operator norm", 1, run_norm},
      {"norming-set", "Extreme points where the norm is attained", 1, run_norming_set},
      {"bj-check", "Is A Birkhoff-James orthogonal to B?", 2, run_bj_check},
      {"smooth-check", "Is A a smooth point?", 1, run_smooth_check},
      {"extreme-check", "Is A an extreme contraction?", 1, run_extreme_check},
      {"left-witness", "Witness that A is not left-symmetric", 1, run_left_witness},
      {"right-witness", "Witness that A is not right-symmetric", 1, run_right_witness},
      {"symmetry-pair", "Orthogonality of A and B in both orders", 2, run_symmetry_pair},
      {"grothendieck", "Lower bound for G(m, n)", 0, run_grothendieck},
  };
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub, config);
    if (cmd.files == 0) {
      sub->add_option("m", inputs.rows, "Rows")->required()->check(CLI::Range(1, 16));
      sub->add_option("n", inputs.cols, "Columns")->required()->check(CLI::Range(1, 16));
      sub->add_option("--candidate", inputs.paths, "Extra candidate matrix file");
    } else {
      sub->add_option("files", inputs.paths, "Matrix files")->required()->expected(static_cast<int>(cmd.files));
    }
    by_app[sub] = &cmd;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bjgeom: " << e.what() << "\n";
    return kExitPrecondition;
  }
  const Command* cmd = by_app.at(app.get_subcommands().front());

  Json report{{"command", cmd->name}, {"inputs", Json::array()}, {"config", config_json(config)}};
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const auto matrices = load(inputs, config, report);
    report["result"] = cmd->handler(matrices, config, inputs);
    report["status"] = "ok";
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    report["status"] = "error";
    report["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = kExitInternal;
    report["status"] = "error";
    report["error"] = Json{{"kind", "Internal"}, {"message", e.what()}};
  }
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = config.format == "human" ? render_human(report) : report.dump() + "\n";
  if (config.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
      err << "bjgeom: cannot write " << config.out_path << "\n";
      return kExitInternal;
    }
    file << text;
  }
  if (code != kExitOk) err << "bjgeom: " << report["error"]["message"].get<std::string>() << "\n";
  return code;
}

}  // namespace bjg
