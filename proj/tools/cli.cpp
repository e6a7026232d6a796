#include "cli.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "hallgh/hall.hpp"
#include "hallgh/measure_io.hpp"
#include "hallgh/parallel.hpp"
#include "hallgh/starlike.hpp"
#include "json.hpp"

namespace hallgh::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QuadOptions quad_options() {
  QuadOptions opts = hall_quad_defaults();
  if (const char* env = std::getenv("HALLGH_MAX_EVALS")) {
    const std::string_view text(env);
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || end != text.data() + text.size() || n == 0) {
      throw UsageError(fmt::format("HALLGH_MAX_EVALS must be a positive integer, got '{}'", text));
    }
    opts.max_evals = n;
  }
  return opts;
}

OrderAlpha order_from(double alpha) {
  try {
    return OrderAlpha(alpha);
  } catch (const std::domain_error&) {
    throw UsageError(fmt::format("invalid alpha {}: need 0 <= alpha < 1", alpha));
  }
}

void require_grid(std::size_t grid) {
  if (grid < 2) throw UsageError("--grid must be at least 2");
}

// `out` unless a path is given; the file is opened before any work starts.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw UsageError(fmt::format("cannot open '{}' for writing", path));
    os_ = &file_;
  }

  std::ostream& stream() { return *os_; }

  void finish() {
    os_->flush();
    if (!*os_) throw UsageError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// ---- constant -------------------------------------------------------------

struct ConstantArgs {
  double alpha = 0.0;
};

int cmd_constant(const ConstantArgs& args, std::ostream& out) {
  const OrderAlpha order = order_from(args.alpha);
  const double beta = hall_constant(order);
  const double crude = hall_crude_bound(order);
  out << fmt::format("alpha        {:.15g}\n", order.alpha());
  out << fmt::format("beta         {:.15f}\n", beta);
  out << fmt::format("crude_bound  {:.15f}\n", crude);
  out << fmt::format("gap          {:.15f}\n", crude - beta);
  return kPass;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  double alpha = 0.0;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::string out_path;
};

VerificationReport run_suite(std::string_view suite, const VerifyArgs& args, OrderAlpha order,
                             const QuadOptions& opts) {
  auto grid_or = [&](std::size_t fallback) { return args.grid.value_or(fallback); };
  if (suite == "lemma2") {
    const std::size_t g = grid_or(50);
    require_grid(g);
    return verify_lemma2(g, args.tol.value_or(1e-12));
  }
  if (suite == "lemma3") {
    const std::size_t g = grid_or(20);
    require_grid(g);
    return verify_lemma3(order, g, args.tol.value_or(1e-8), opts);
  }
  if (suite == "lemma4") {
    const std::size_t g = grid_or(1000);
    require_grid(g);
    return verify_lemma4(g, args.tol.value_or(0.0), opts);
  }
  if (suite == "lemma5") {
    return verify_lemma5(order, grid_or(0), args.tol.value_or(1e-8), opts);
  }
  const std::size_t g = grid_or(30);
  require_grid(g);
  return verify_main_claim(order, g, args.tol.value_or(1e-6), opts);
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const OrderAlpha order = order_from(args.alpha);
  if (args.tol && !(*args.tol >= 0.0)) throw UsageError("--tol must be nonnegative");
  const QuadOptions opts = quad_options();
  Sink sink(args.out_path, out);

  std::vector<std::string_view> suites;
  if (args.suite == "all") {
    suites = {"lemma2", "lemma3", "lemma4", "lemma5", "main"};
  } else {
    suites = {args.suite};
  }

  bool all_passed = true;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (std::string_view suite : suites) {
    const VerificationReport report = run_suite(suite, args, order, opts);
    err << report.summary() << '\n';
    all_passed = all_passed && report.passed();
    reports.push_back(report.to_json());
  }
  const auto& doc = args.suite == "all" ? reports : reports.front();
  sink.stream() << doc.dump(2) << '\n';
  sink.finish();
  return all_passed ? kPass : kVerificationFailed;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string what = "main";
  std::vector<double> alphas{0.0};
  std::size_t grid = 10;
  double tol = 1e-6;
  std::string out_path;
  std::string format = "csv";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table sweep_main(const SweepArgs& args, const QuadOptions& opts) {
  Table table{{"alpha", "s", "t", "I_sum", "bound", "margin"}, {}};
  const auto angles = main_grid_angles(args.grid);
  const std::size_t n = angles.size();
  for (double alpha : args.alphas) {
    const OrderAlpha order = order_from(alpha);
    std::vector<double> values(n * n);
    parallel_for(n * n, [&](std::size_t idx) {
      values[idx] = I_angles(angles[idx / n], angles[idx % n], order, opts);
    });
    const double bound = 2.0 * (hall_constant(order) - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double sum = values[i * n + j] + values[j * n + i];
        table.rows.push_back({alpha, angles[i], angles[j], sum, bound, bound - sum});
      }
    }
  }
  return table;
}

Table sweep_u(const SweepArgs& args, const QuadOptions& opts) {
  Table table{{"alpha", "a", "U", "G_gamma_at_1"}, {}};
  std::vector<double> as(args.grid);
  for (std::size_t i = 0; i < args.grid; ++i) {
    as[i] = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(args.grid - 1));
  }
  for (double alpha : args.alphas) {
    const double gamma = order_from(alpha).gamma();
    std::vector<double> values(as.size());
    parallel_for(as.size(), [&](std::size_t i) { values[i] = upper_bound_U(as[i], gamma, opts); });
    const double at_one = G_gamma(1.0, gamma, opts);
    for (std::size_t i = 0; i < as.size(); ++i) table.rows.push_back({alpha, as[i], values[i], at_one});
  }
  return table;
}

Table sweep_g1(const SweepArgs& args) {
  Table table{{"a", "G1"}, {}};
  for (std::size_t i = 0; i < args.grid; ++i) {
    const double a = static_cast<double>(i + 1) / static_cast<double>(args.grid + 1);
    table.rows.push_back({a, G1_closed(a)});
  }
  return table;
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += ',';
      line += fmt::format("{:.15g}", row[c]);
    }
    line += '\n';
    os << line;
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << '\n';
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  require_grid(args.grid);
  if (args.alphas.empty()) throw UsageError("--alpha needs at least one value");
  for (double alpha : args.alphas) order_from(alpha);
  const QuadOptions opts = quad_options();
  Sink sink(args.out_path, out);

  Table table;
  bool passed = true;
  if (args.what == "main") {
    table = sweep_main(args, opts);
    for (const auto& row : table.rows) passed = passed && row[5] >= -args.tol;
  } else if (args.what == "u") {
    table = sweep_u(args, opts);
    for (const auto& row : table.rows) {
      const double gamma = 1.0 - 2.0 * row[0];
      passed = passed && row[2] <= 0.5 * (1.0 + gamma) * row[3] + args.tol;
    }
  } else {
    table = sweep_g1(args);
  }

  if (args.format == "json") {
    write_json(table, sink.stream());
  } else {
    write_csv(table, sink.stream());
  }
  sink.finish();
  err << fmt::format("sweep {}: {} rows, {}\n", args.what, table.rows.size(),
                     passed ? "all within tolerance" : "tolerance violated");
  return passed ? kPass : kVerificationFailed;
}

// ---- ratio ----------------------------------------------------------------

struct RatioArgs {
  std::string measure_path;
  std::optional<std::uint64_t> seed;
  std::size_t atoms = 3;
  double alpha = 0.0;
  double r = 0.0;
  double theta = 0.0;
};

int cmd_ratio(const RatioArgs& args, std::ostream& out, std::ostream& err) {
  if (args.measure_path.empty() == !args.seed.has_value()) {
    throw UsageError("give exactly one of --measure FILE or --seed N");
  }
  if (!(args.r > 0.0 && args.r < 1.0)) throw UsageError("--r must lie in (0, 1)");
  if (!std::isfinite(args.theta)) throw UsageError("--theta must be finite");

  std::optional<StarlikeMap> map;
  if (args.seed) {
    if (args.atoms == 0) throw UsageError("--atoms must be at least 1");
    map.emplace(sample_measure(*args.seed, args.atoms), order_from(args.alpha));
  } else {
    LoadedMeasure loaded = load_measure_file(args.measure_path);
    if (loaded.renormalized) {
      err << fmt::format("warning: atom weights sum to {:.15g}; renormalized to 1\n",
                         loaded.raw_weight_sum);
    }
    map.emplace(std::move(loaded.measure), loaded.order);
  }

  const QuadOptions opts = quad_options();
  const double length = ray_length(*map, args.r, args.theta, opts);
  const double modulus = std::abs(map->eval_map(std::polar(args.r, args.theta)));
  const double ratio = length / modulus;
  const double beta = hall_constant(map->order());
  out << fmt::format("length  {:.15g}\n", length);
  out << fmt::format("|f|     {:.15g}\n", modulus);
  out << fmt::format("ratio   {:.6f}\n", ratio);
  out << fmt::format("beta    {:.15g}\n", beta);
  out << fmt::format("slack   {:.6e}\n", beta - ratio);
  return ratio <= beta + 1e-6 ? kPass : kVerificationFailed;
}

// ---- sharpness ------------------------------------------------------------

struct SharpnessArgs {
  double alpha = 0.0;
  double t_min = 1e-6;
};

int cmd_sharpness(const SharpnessArgs& args, std::ostream& out) {
  const OrderAlpha order = order_from(args.alpha);
  if (!(args.t_min > 0.0 && args.t_min <= 4.0)) throw UsageError("--t-min must lie in (0, 4]");
  const QuadOptions opts = quad_options();
  const double beta = hall_constant(order);

  std::vector<double> ts;
  for (double T = 1.0; T > args.t_min * (1.0 + 1e-9); T /= 10.0) ts.push_back(T);
  ts.push_back(args.t_min);

  bool consistent = true;
  out << "T,limit,beta,slack\n";
  for (double T : ts) {
    const double limit = extremal_limit(T, order.gamma(), opts);
    consistent = consistent && limit <= beta + 1e-6;
    out << fmt::format("{:.15g},{:.15g},{:.15g},{:.15g}\n", T, limit, beta, beta - limit);
  }
  return consistent ? kPass : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of the sharp Gehring-Hayman constant for S*(alpha)",
               "hallgh"};
  app.require_subcommand(1);

  ConstantArgs constant_args;
  auto* constant = app.add_subcommand("constant", "Print beta(alpha) and the crude bound");
  constant->add_option("--alpha", constant_args.alpha, "Order alpha in [0, 1)")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a JSON report");
  verify->add_option("--suite", verify_args.suite, "Suite to run")
      ->check(CLI::IsMember({"lemma2", "lemma3", "lemma4", "lemma5", "main", "all"}));
  verify->add_option("--alpha", verify_args.alpha, "Order alpha in [0, 1)");
  verify->add_option("--grid", verify_args.grid,
                     "Grid size per axis (lemma5: extra log-spaced points)");
  verify->add_option("--tol", verify_args.tol, "Allowed negative margin");
  verify->add_option("--out", verify_args.out_path, "Write the JSON report here");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Tabulate a quantity over a grid");
  sweep->add_option("--what", sweep_args.what, "main | u | g1")
      ->check(CLI::IsMember({"main", "u", "g1"}));
  sweep->add_option("--alpha,--alphas", sweep_args.alphas, "Comma-separated alphas")
      ->delimiter(',');
  sweep->add_option("--grid", sweep_args.grid, "Points per axis");
  sweep->add_option("--tol", sweep_args.tol, "Allowed negative margin");
  sweep->add_option("--out", sweep_args.out_path, "Output path");
  sweep->add_option("--format", sweep_args.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  RatioArgs ratio_args;
  auto* ratio = app.add_subcommand("ratio", "Gehring-Hayman ratio of one map at r e^{i theta}");
  ratio->add_option("--measure", ratio_args.measure_path, "Measure JSON file");
  ratio->add_option("--seed", ratio_args.seed, "Sample a random measure with this seed");
  ratio->add_option("--atoms", ratio_args.atoms, "Atoms of the sampled measure");
  ratio->add_option("--alpha", ratio_args.alpha, "Order alpha of the sampled measure");
  ratio->add_option("--r", ratio_args.r, "Radius in (0, 1)")->required();
  ratio->add_option("--theta", ratio_args.theta, "Angle");

  SharpnessArgs sharpness_args;
  auto* sharpness = app.add_subcommand("sharpness", "Limit ratio of k_alpha as T decreases");
  sharpness->add_option("--alpha", sharpness_args.alpha, "Order alpha in [0, 1)");
  sharpness->add_option("--t-min", sharpness_args.t_min, "Smallest T");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  try {
    if (constant->parsed()) return cmd_constant(constant_args, out);
    if (verify->parsed()) return cmd_verify(verify_args, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_args, out, err);
    if (ratio->parsed()) return cmd_ratio(ratio_args, out, err);
    if (sharpness->parsed()) return cmd_sharpness(sharpness_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MeasureFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace hallgh::cli
