#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opineq/harness/harness.hpp"
#include "opineq/io/json.hpp"
#include "opineq/isom/isom.hpp"
#include "opineq/range/boundary.hpp"
#include "opineq/range/estimate.hpp"
#include "opineq/rkhs/berezin.hpp"

namespace {

using namespace opineq;
using io::Json;

enum Exit : int { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  io::write_text(path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json enclosure_json(const Enclosure& e) {
  return Json{{"lo", e.lo}, {"hi", e.hi}, {"mid", e.mid()}, {"width", e.width()}};
}

// radius / crawford

struct RangeArgs {
  std::string matrix;
  double tol = 1e-10;
};

int run_radius(const RangeArgs& a, bool crawford) {
  const ComplexMatrix m = io::read_matrix(a.matrix);
  const auto est = crawford ? range::crawford_number(m, a.tol) : range::numerical_radius(m, a.tol);
  const Enclosure& e = crawford ? *est.crawford : *est.omega;
  Json j;
  j[crawford ? "crawford" : "omega"] = e.mid();
  j["enclosure"] = enclosure_json(e);
  j["method"] = est.method;
  j["evaluations"] = est.evaluations;
  emit("", dump(j));
  return kOk;
}

// boundary

struct BoundaryArgs {
  std::string matrix;
  std::size_t ntheta = 720;
  std::string out;
};

int run_boundary(const BoundaryArgs& a) {
  const auto b = range::range_boundary(io::read_matrix(a.matrix), a.ntheta);
  std::ostringstream os;
  os << std::setprecision(17) << "theta,re,im\n";
  for (const auto& s : b.samples) os << s.theta << ',' << s.point.real() << ',' << s.point.imag() << '\n';
  emit(a.out, os.str());
  return kOk;
}

// berezin

struct BerezinArgs {
  std::string op;
  std::string space = "hardy";
  double rmax = 1.0 - 0x1p-10;
  std::size_t rings = 10;
  std::size_t angles = 256;
  std::string out;
  std::string csv;
};

int run_berezin(const BerezinArgs& a) {
  const OperatorExpr op = io::read_operator(a.op);
  const rkhs::RkhsModel model = rkhs::parse_model(a.space);
  const auto grid = rkhs::DiscGrid::standard(a.rmax, a.rings, a.angles);
  const auto est = rkhs::berezin_number(op, model, grid);
  Json j;
  j["lower"] = est.lower;
  j["upper"] = est.upper;
  j["witness"] = io::complex_to_json(est.witness.front());
  j["grid"] = Json{{"space", model.name()}, {"radii", grid.radii},        {"angles", grid.angles},
                   {"rounds", grid.rounds}, {"factor", grid.factor},      {"index_count", grid.index_count},
                   {"samples", est.samples}, {"error_bound", est.error_bound}};
  emit(a.out, dump(j));
  if (!a.csv.empty()) {
    std::ostringstream os;
    rkhs::write_berezin_csv(os, rkhs::berezin_samples(op, model, grid));
    emit(a.csv, os.str());
  }
  return kOk;
}

// isom

struct WanderingArgs {
  std::string op;
  std::size_t n = 128;
  double tol = 1e-8;
};

int run_wandering(const WanderingArgs& a) {
  const auto w = isom::wandering_basis(io::read_operator(a.op), a.n, a.tol);
  Json j;
  j["N"] = a.n;
  j["dimension"] = w.dimension();
  j["residual"] = w.residual;
  const std::size_t shown = std::min<std::size_t>(w.singular_values.size(), 8);
  j["smallest_singular_values"] =
      std::vector<double>(w.singular_values.begin(), w.singular_values.begin() + static_cast<long>(shown));
  j["basis"] = io::matrix_to_json(w.basis);
  emit("", dump(j));
  return kOk;
}

struct DecayArgs {
  std::string op;
  std::size_t k = 32;
  std::size_t len = 8;
};

int run_decay(const DecayArgs& a) {
  const OperatorExpr v = io::read_operator(a.op);
  std::size_t len = a.len;
  if (v.dim()) len = std::min(len, *v.dim());
  const ComplexVector x = ComplexVector::Ones(static_cast<Eigen::Index>(len));
  const auto d = isom::purity_decay(v, x, a.k);
  Json profile = Json::array();
  for (const auto& [k, r] : d.ratios) profile.push_back(Json::array({k, r}));
  Json j;
  j["K"] = a.k;
  j["profile"] = std::move(profile);
  j["cut_error"] = d.cut_error;
  j["non_increasing"] = d.non_increasing();
  j["not_pure"] = d.not_pure();
  emit("", dump(j));
  return kOk;
}

// hardy

struct WeightsArgs {
  std::string kind = "classical";
  std::size_t n = 10;
  bool json = false;
};

int run_weights(const WeightsArgs& a) {
  const auto kind = hardy::parse_weight_kind(a.kind);
  if (a.n == 0) throw DomainError("hardy weights: --n must be at least 1");
  if (a.json) {
    Json rows = Json::array();
    for (std::size_t n = 1; n <= a.n; ++n)
      rows.push_back(Json{{"n", n}, {"weight", hardy::weight(kind, n)}, {"partial_sum", hardy::partial_weight_sum(kind, n)}});
    emit("", dump(Json{{"kind", hardy::to_string(kind)}, {"weights", rows}}));
    return kOk;
  }
  std::ostringstream os;
  os << std::setw(6) << "n" << "  " << std::setw(24) << "weight" << "  " << std::setw(24) << "partial_sum" << '\n'
     << std::setprecision(17);
  for (std::size_t n = 1; n <= a.n; ++n)
    os << std::setw(6) << n << "  " << std::setw(24) << hardy::weight(kind, n) << "  " << std::setw(24)
       << hardy::partial_weight_sum(kind, n) << '\n';
  emit("", os.str());
  return kOk;
}

struct ConstantsArgs {
  std::optional<double> p;
  std::optional<std::size_t> N;
  bool json = false;
};

int run_constants(const ConstantsArgs& a) {
  if (a.p || a.N) {
    const double p = a.p.value_or(2.0);
    const std::size_t N = a.N.value_or(2);
    const auto c = hardy::constant_main(p, N);
    if (a.json) {
      emit("", dump(Json{{"p", p}, {"N", N}, {"value", c.value}, {"bracket", enclosure_json(c.value_bracket)},
                         {"tail", enclosure_json(c.tail_bracket)}}));
    } else {
      std::ostringstream os;
      os << std::setprecision(12) << "p = " << p << ", N = " << N << ": constant " << c.value << " in ["
         << c.value_bracket.lo << ", " << c.value_bracket.hi << "]\n";
      emit("", os.str());
    }
    return kOk;
  }
  const auto rows = harness::constants_table();
  if (a.json) {
    emit("", dump(harness::to_json(rows)));
    return kOk;
  }
  std::ostringstream os;
  os << std::left << std::setw(24) << "key" << std::setw(14) << "value" << std::setw(12) << "origin"
     << std::setw(30) << "inequality" << "expression\n";
  for (const auto& r : rows) {
    std::ostringstream v;
    v << std::setprecision(10) << r.value;
    os << std::setw(24) << r.key << std::setw(14) << v.str() << std::setw(12) << r.origin << std::setw(30)
       << r.inequality << r.expression << (r.best ? "  <- best" : "") << '\n';
  }
  emit("", os.str());
  return kOk;
}

// check

struct CheckArgs {
  std::string id;
  harness::CheckConfig cfg;
  std::string out;
};

int run_checks(const CheckArgs& a) {
  std::vector<harness::CheckReport> reports;
  Json j;
  if (a.id == "all") {
    reports = harness::run_all(a.cfg);
    j = harness::to_json(reports, a.cfg);
  } else {
    reports.push_back(harness::run_check(a.id, a.cfg));
    j = harness::to_json(reports.front());
  }
  if (a.out.empty()) {
    emit("", dump(j));
  } else {
    emit(a.out, dump(j));
    for (const auto& r : reports) {
      std::ostringstream line;
      line << std::left << std::setw(30) << r.id << std::setw(12) << harness::to_string(r.severity)
           << (r.violation_count == 0 ? "pass" : (r.failed() ? "FAIL" : "falsified")) << "  min_margin "
           << std::setprecision(6) << r.min_margin << "  violations " << r.violation_count << '\n';
      std::cout << line.str();
    }
  }
  return harness::exit_status(reports) == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius, Berezin number and Hardy-type inequality toolkit"};
  app.require_subcommand(1);

  RangeArgs radius_args, crawford_args;
  crawford_args.tol = 1e-10;
  auto* radius = app.add_subcommand("radius", "Certified numerical radius of a matrix");
  radius->add_option("--matrix", radius_args.matrix, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  radius->add_option("--tol", radius_args.tol, "Enclosure width")->capture_default_str();
  auto* crawford = app.add_subcommand("crawford", "Certified Crawford number of a matrix");
  crawford->add_option("--matrix", crawford_args.matrix, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  crawford->add_option("--tol", crawford_args.tol, "Enclosure width")->capture_default_str();

  BoundaryArgs boundary_args;
  auto* boundary = app.add_subcommand("boundary", "Sampled numerical range boundary as CSV");
  boundary->add_option("--matrix", boundary_args.matrix, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  boundary->add_option("--ntheta", boundary_args.ntheta, "Number of directions")->capture_default_str();
  boundary->add_option("--out", boundary_args.out, "Output CSV (stdout if omitted)");

  BerezinArgs berezin_args;
  auto* berezin = app.add_subcommand("berezin", "Berezin number over a disc grid");
  berezin->add_option("--op", berezin_args.op, "Operator JSON file")->required()->check(CLI::ExistingFile);
  berezin->add_option("--space", berezin_args.space, "hardy, bergman, dirichlet or discrete")
      ->check(CLI::IsMember({"hardy", "bergman", "dirichlet", "discrete"}))
      ->capture_default_str();
  berezin->add_option("--rmax", berezin_args.rmax, "Outermost ring radius")->capture_default_str();
  berezin->add_option("--rings", berezin_args.rings, "Number of dyadic rings")->capture_default_str();
  berezin->add_option("--angles", berezin_args.angles, "Points per ring")->capture_default_str();
  berezin->add_option("--out", berezin_args.out, "Result JSON (stdout if omitted)");
  berezin->add_option("--csv", berezin_args.csv, "Dump of the transform over the base grid");

  auto* isom = app.add_subcommand("isom", "Isometry structure");
  isom->require_subcommand(1);
  WanderingArgs wandering_args;
  auto* wandering = isom->add_subcommand("wandering", "Wandering subspace of an isometry");
  wandering->add_option("--op", wandering_args.op, "Operator JSON file")->required()->check(CLI::ExistingFile);
  wandering->add_option("--n", wandering_args.n, "Section size")->capture_default_str();
  wandering->add_option("--tol", wandering_args.tol, "Singular value threshold")->capture_default_str();
  DecayArgs decay_args;
  auto* decay = isom->add_subcommand("decay", "Decay profile of ||V*^k x|| for x = (1, ..., 1)");
  decay->add_option("--op", decay_args.op, "Operator JSON file")->required()->check(CLI::ExistingFile);
  decay->add_option("--k", decay_args.k, "Largest power")->capture_default_str();
  decay->add_option("--len", decay_args.len, "Support length of x")->capture_default_str()->check(CLI::PositiveNumber);

  auto* hardy = app.add_subcommand("hardy", "Discrete Hardy weights and constants");
  hardy->require_subcommand(1);
  WeightsArgs weights_args;
  auto* weights = hardy->add_subcommand("weights", "Weight table");
  weights->add_option("--kind", weights_args.kind, "classical or improved")
      ->check(CLI::IsMember({"classical", "improved"}))
      ->capture_default_str();
  weights->add_option("--n", weights_args.n, "Number of rows")->capture_default_str();
  weights->add_flag("--json", weights_args.json, "JSON output");
  ConstantsArgs constants_args;
  auto* constants = hardy->add_subcommand("constants", "Constant for (p, N), or the comparison table");
  constants->add_option("--p", constants_args.p, "Exponent p > 1");
  constants->add_option("--N", constants_args.N, "Split index N >= 1");
  constants->add_flag("--json", constants_args.json, "JSON output");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Run a registered check or all of them");
  check->add_option("id", check_args.id, "Check id or 'all'")->required();
  check->add_option("--seed", check_args.cfg.seed, "Master seed")->capture_default_str();
  check->add_option("--instances", check_args.cfg.instances, "Instances per property check")->capture_default_str();
  check->add_option("--dims", check_args.cfg.dims, "Largest random dimension")->capture_default_str();
  check->add_option("--out", check_args.out, "Report JSON (stdout if omitted)");
  check->add_flag("--timing", check_args.cfg.timing, "Record wall time in the report");
  auto* list = app.add_subcommand("list", "List registered check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*radius) return run_radius(radius_args, false);
    if (*crawford) return run_radius(crawford_args, true);
    if (*boundary) return run_boundary(boundary_args);
    if (*berezin) return run_berezin(berezin_args);
    if (*wandering) return run_wandering(wandering_args);
    if (*decay) return run_decay(decay_args);
    if (*weights) return run_weights(weights_args);
    if (*constants) return run_constants(constants_args);
    if (*check) return run_checks(check_args);
    if (*list) {
      for (const auto& c : harness::registry())
        std::cout << std::left << std::setw(30) << c.id << harness::to_string(c.severity) << '\n';
      return kOk;
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
