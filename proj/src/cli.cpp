#include "gaussbm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gaussbm/bm_inequality.hpp"
#include "gaussbm/error.hpp"
#include "gaussbm/serialize.hpp"
#include "gaussbm/spectrum.hpp"
#include "gaussbm/torsion.hpp"

namespace gaussbm::cli {

namespace {

struct Options {
  double tol = 1e-12;
  int jobs = 1;
  std::string format;  // empty: subcommand default

  // torsion / eigen / aux
  std::vector<double> interval;
  bool ball = false;
  bool halfspace = false;
  int n = 0;
  double R = 0.0;
  double s = 0.0;
  bool oracle = false;

  // check
  std::string functional;
  bool identity = false;
  std::optional<double> power;
  bool log = false;
  std::string direction;
  double t = 0.5;
  std::vector<double> interval0, interval1;
  std::optional<double> ball0, ball1, halfspace0, halfspace1;

  // reproduce
  bool json = false;

  // sweeps
  std::string n_list;
  std::optional<double> rmin;
  double rmax = 10.0;
  double step = 0.05;
  bool sup = false;
};

[[noreturn]] void usage(const std::string& what) { fail(ErrorCode::Usage, what); }

QuadConfig quad_config(const Options& o) {
  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) usage("--tol must be positive");
  QuadConfig cfg;
  cfg.rel_tol = o.tol;
  cfg.abs_tol = o.tol / 10.0;
  return cfg;
}

bool want_json(const Options& o, bool default_json) {
  if (o.format.empty()) return default_json;
  return o.format == "json";
}

void emit_single(std::ostream& out, const Options& o, const nlohmann::json& j) {
  if (want_json(o, true)) {
    out << j.dump() << '\n';
    return;
  }
  std::string header, row;
  for (const auto& [key, value] : j.items()) {
    header += (header.empty() ? "" : ",") + key;
    std::string cell = value.is_number() ? format_number(value.get<double>())
                       : value.is_string() ? value.get<std::string>()
                                           : value.dump();
    row += (row.empty() ? "" : ",") + cell;
  }
  out << header << '\n' << row << '\n';
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ns.push_back(n);
    } catch (const std::exception&) {
      usage("-n expects integers separated by commas, got '" + text + "'");
    }
  }
  if (ns.empty()) usage("-n needs at least one dimension");
  return ns;
}

int cmd_torsion(const Options& o, std::ostream& out) {
  const int picked = (!o.interval.empty()) + o.ball + o.halfspace;
  if (picked != 1) usage("torsion needs exactly one of --interval, --ball, --halfspace");
  const QuadConfig cfg = quad_config(o);
  NumResult r;
  if (!o.interval.empty()) {
    r = torsion_interval({o.interval[0], o.interval[1]}, cfg);
  } else if (o.ball) {
    r = torsion_ball(Dimension(o.n), o.R, cfg);
  } else {
    r = torsion_halfspace({Dimension(o.n), o.s}, cfg);
  }
  emit_single(out, o, to_json(r));
  return kExitOk;
}

int cmd_eigen(const Options& o, std::ostream& out) {
  if (!o.ball) usage("eigen is only available on balls (--ball)");
  const Dimension n(o.n);
  const EigenResult e = eigen_ball(n, o.R);
  nlohmann::json j = to_json(e);
  if (o.oracle) {
    const double shooting = eigen_ball_shooting(n, o.R);
    j["shooting"] = shooting;
    j["relative_difference"] = std::fabs(shooting - e.lambda) / e.lambda;
  }
  emit_single(out, o, j);
  return kExitOk;
}

int cmd_aux(const Options& o, std::ostream& out) {
  emit_single(out, o, to_json(aux_quantities(Dimension(o.n), o.R, quad_config(o))));
  return kExitOk;
}

std::pair<Domain, Domain> check_domains(const Options& o) {
  std::vector<std::pair<Domain, Domain>> found;
  if (!o.interval0.empty() || !o.interval1.empty()) {
    if (o.interval0.empty() || o.interval1.empty()) {
      usage("--interval0 and --interval1 go together");
    }
    found.emplace_back(IntervalDomain{o.interval0[0], o.interval0[1]},
                       IntervalDomain{o.interval1[0], o.interval1[1]});
  }
  if (o.ball0 || o.ball1) {
    if (!o.ball0 || !o.ball1) usage("--ball0 and --ball1 go together");
    found.emplace_back(BallDomain{Dimension(o.n), *o.ball0},
                       BallDomain{Dimension(o.n), *o.ball1});
  }
  if (o.halfspace0 || o.halfspace1) {
    if (!o.halfspace0 || !o.halfspace1) usage("--halfspace0 and --halfspace1 go together");
    found.emplace_back(HalfSpaceDomain{Dimension(o.n), *o.halfspace0},
                       HalfSpaceDomain{Dimension(o.n), *o.halfspace1});
  }
  if (found.size() != 1) usage("check needs exactly one pair of domain specs");
  return found.front();
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const int picked = o.identity + o.power.has_value() + o.log;
  if (picked != 1) usage("check needs exactly one of --identity, --power A, --log");
  const Transform tr = o.identity ? Transform::identity()
                       : o.log    ? Transform::log()
                                  : Transform::power(*o.power);
  const Functional functional =
      o.functional == "torsion" ? Functional::Torsion : Functional::Eigenvalue;
  const Direction direction =
      o.direction == "convex" ? Direction::Convexity : Direction::Concavity;
  const auto [d0, d1] = check_domains(o);
  const BmReport report = check_bm(functional, d0, d1, o.t, tr, direction, quad_config(o));
  const double tolerance = std::max(report.err, 1e-12);
  nlohmann::json j = to_json(report);
  j["holds"] = report.holds(tolerance);
  emit_single(out, o, j);
  if (!report.holds(tolerance)) {
    err << "violated: deficit " << format_number(report.deficit) << " against "
        << direction_name(direction) << " direction\n";
    return kExitViolated;
  }
  return kExitOk;
}

int cmd_reproduce(const Options& o, std::ostream& out, std::ostream& err) {
  const auto rows = reproduce_counterexamples(quad_config(o));
  if (o.json || want_json(o, false)) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    out << j.dump() << '\n';
  } else {
    write_csv(out, rows);
  }
  int status = kExitOk;
  for (const auto& row : rows) {
    if (!row.error.empty()) err << row.name << ": " << row.error << '\n';
    if (!row.ok) status = kExitError;
  }
  return status;
}

std::vector<double> sweep_grid(const Options& o) {
  return radius_grid(o.rmin.value_or(o.step), o.rmax, o.step);
}

void emit_table(const Options& o, const SweepTable& table, std::ostream& out,
                std::ostream& err) {
  if (want_json(o, false)) {
    out << to_json(table).dump() << '\n';
  } else {
    write_csv(out, table);
  }
  for (const auto& row : table.rows) {
    if (!row.error.empty()) {
      err << "n=" << row.n << " R=" << format_number(row.R) << " " << row.error << '\n';
    }
  }
}

int cmd_sweep_f(const Options& o, std::ostream& out, std::ostream& err) {
  const auto table = sweep_f(parse_n_list(o.n_list), sweep_grid(o), quad_config(o), o.jobs);
  emit_table(o, table, out, err);
  return kExitOk;
}

int cmd_sweep_alpha(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ns = parse_n_list(o.n_list);
  const auto grid = sweep_grid(o);
  const QuadConfig cfg = quad_config(o);
  if (o.sup) {
    nlohmann::json j = nlohmann::json::array();
    for (int n : ns) {
      const AlphaSupremum s = alpha_sup_estimate(Dimension(n), grid, cfg);
      j.push_back({{"n", n}, {"sup", s.value}, {"argmax", s.argmax}});
    }
    out << j.dump() << '\n';
    return kExitOk;
  }
  emit_table(o, sweep_alpha(ns, grid, cfg, o.jobs), out, err);
  return kExitOk;
}

double default_tolerance() {
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-12;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.tol = default_tolerance();

  CLI::App app{"Gaussian torsional rigidity, Ornstein-Uhlenbeck eigenvalues and "
               "Brunn-Minkowski deficits",
               "gaussbm"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "quadrature relative tolerance (abs = tol/10)");
  app.add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-n", o.n, "dimension");
    if (required) opt->required();
  };

  auto* torsion = app.add_subcommand("torsion", "torsional rigidity of one domain");
  torsion->add_option("--interval", o.interval, "interval endpoints A B")->expected(2);
  torsion->add_flag("--ball", o.ball, "origin-centred ball (-n, -R)");
  torsion->add_flag("--halfspace", o.halfspace, "half-space {x1 >= s} (-s)");
  torsion->add_option("-R", o.R, "ball radius");
  torsion->add_option("-s", o.s, "half-space threshold");
  o.n = 1;
  add_n(torsion, false);

  auto* eigen = app.add_subcommand("eigen", "first Dirichlet eigenvalue on a ball");
  eigen->add_flag("--ball", o.ball, "origin-centred ball")->required();
  add_n(eigen, true);
  eigen->add_option("-R", o.R, "ball radius")->required();
  eigen->add_flag("--oracle", o.oracle, "also run the ODE shooting oracle");

  auto* aux = app.add_subcommand("aux", "radial auxiliary quantities I, J, h, v, p");
  add_n(aux, true);
  aux->add_option("-R", o.R, "radius")->required();

  auto* check = app.add_subcommand("check", "Brunn-Minkowski deficit along a segment");
  check->add_option("--functional", o.functional, "torsion | eigen")
      ->required()
      ->check(CLI::IsMember({"torsion", "eigen"}));
  check->add_flag("--identity", o.identity, "no transform");
  check->add_option("--power", o.power, "power transform exponent");
  check->add_flag("--log", o.log, "geometric-mean (log) form");
  check->add_option("--direction", o.direction, "convex | concave")
      ->required()
      ->check(CLI::IsMember({"convex", "concave"}));
  check->add_option("--t", o.t, "Minkowski parameter")->required();
  check->add_option("--interval0", o.interval0, "first interval A B")->expected(2);
  check->add_option("--interval1", o.interval1, "second interval A B")->expected(2);
  check->add_option("--ball0", o.ball0, "first ball radius");
  check->add_option("--ball1", o.ball1, "second ball radius");
  check->add_option("--halfspace0", o.halfspace0, "first half-space threshold");
  check->add_option("--halfspace1", o.halfspace1, "second half-space threshold");
  add_n(check, false);

  auto* reproduce = app.add_subcommand("reproduce", "recompute the published counterexamples");
  reproduce->add_flag("--json", o.json, "JSON instead of CSV");

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("-n", o.n_list, "dimensions, comma separated")->required();
    sub->add_option("--rmin", o.rmin, "first radius (default: step)");
    sub->add_option("--rmax", o.rmax, "last radius");
    sub->add_option("--step", o.step, "grid spacing");
  };
  auto* sweep_f_cmd = app.add_subcommand("sweep-f", "f(n, R) over a radius grid");
  add_grid(sweep_f_cmd);
  auto* sweep_alpha_cmd = app.add_subcommand("sweep-alpha", "alpha_n(R) over a radius grid");
  add_grid(sweep_alpha_cmd);
  sweep_alpha_cmd->add_flag("--sup", o.sup, "report sup_R alpha_n(R) instead of the table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_code_name(ErrorCode::Usage) << ": " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*torsion) return cmd_torsion(o, out);
    if (*eigen) return cmd_eigen(o, out);
    if (*aux) return cmd_aux(o, out);
    if (*check) return cmd_check(o, out, err);
    if (*reproduce) return cmd_reproduce(o, out, err);
    if (*sweep_f_cmd) return cmd_sweep_f(o, out, err);
    if (*sweep_alpha_cmd) return cmd_sweep_alpha(o, out, err);
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace gaussbm::cli
