#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "parse.hpp"
#include "qwalk/acceptance.hpp"
#include "qwalk/classify.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/spectrum.hpp"
#include "qwalk/stationarity.hpp"
#include "qwalk/transfer.hpp"

namespace qwalk::cli {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

// Stationarity oracle attached to classify output.
constexpr int kOracleHalfWidth = 32;
constexpr int kOracleSteps = 10;
constexpr double kOracleTol = 1e-10;

/// A library error tagged with the flag whose value caused it.
struct FlagError {
  std::string flag;
  std::string message;
};

template <typename F>
auto for_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const Error& e) {
    throw FlagError{flag, e.what()};
  }
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix2cd& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) rows.push_back(json::array({complex_json(m(i, 0)), complex_json(m(i, 1))}));
  return rows;
}

struct Options {
  std::string coin = "hadamard";
  std::string theta;
  std::string phi = "1,0";
  std::string init = "delta:1,0";
  int window = 16;
  int steps = 1;
  int grid = 4096;
  std::string format;
  std::optional<double> tol;
  std::string out_path;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  int theta_grid = AcceptanceOptions{}.theta_grid;
  int phi_samples = AcceptanceOptions{}.phi_samples;
  bool dispersion = false;
  bool timing = false;
};

void require_json(const Options& o, const char* command) {
  if (!o.format.empty() && o.format != "json") {
    throw UsageError(std::string("--format: ") + command + " only emits json");
  }
}

bool wants_csv(const Options& o, bool csv_default) {
  return o.format.empty() ? csv_default : o.format == "csv";
}

// --- evolve ---------------------------------------------------------------

int cmd_evolve(const Options& o, std::ostream& out) {
  const auto coin = for_flag("--coin", [&] { return parse_coin(o.coin); });
  const auto init = for_flag("--init", [&] { return parse_init(o.init); });
  if (o.window < 1) throw UsageError("--window: must be positive");
  if (o.steps < 0) throw UsageError("--steps: must be nonnegative");
  if (o.steps >= o.window) {
    throw FlagError{"--steps", "WindowTooSmall: a window of half-width " + std::to_string(o.window) +
                                   " survives at most " + std::to_string(o.window - 1) + " steps"};
  }

  const Window w = Window::symmetric(o.window);
  const Spinord v(init.left, init.right);
  SpinorField field = init.kind == InitSpec::Kind::Delta ? SpinorField::delta(w, v) : SpinorField::constant(w, v);

  const bool csv = wants_csv(o, true);
  json steps = json::array();
  if (csv) out << "step,x,mu_L,mu_R,mu\n";
  for (int s = 0; s <= o.steps; ++s) {
    if (s > 0) field = step(coin, field);
    json rows = json::array();
    for (int x = field.xmin(); x <= field.xmax(); ++x) {
      const double l = std::norm(field.at(x)(0)), r = std::norm(field.at(x)(1));
      if (csv) {
        out << s << ',' << x << ',' << format_real(l) << ',' << format_real(r) << ',' << format_real(l + r) << '\n';
      } else {
        rows.push_back({{"x", x}, {"mu_L", l}, {"mu_R", r}, {"mu", l + r}});
      }
    }
    if (!csv) steps.push_back({{"step", s}, {"sites", std::move(rows)}});
  }
  if (!csv) out << json{{"steps", std::move(steps)}}.dump(2) << '\n';
  return kExitOk;
}

// --- classify / period ------------------------------------------------------

json period_json(const PeriodVerdict& p) {
  json j;
  j["kind"] = to_string(p.kind);
  j["m_min"] = p.kind == PeriodKind::Aperiodic ? json(nullptr) : json(p.m_min);
  j["xi"] = p.xi ? json(*p.xi) : json(nullptr);
  if (p.approximant) {
    j["approximant"] = {{"p", p.approximant->p}, {"q", p.approximant->q}, {"residual", p.approximant->residual}};
  } else {
    j["approximant"] = nullptr;
  }
  j["confirmation_deviation"] = p.confirmation_deviation;
  j["numerical_policy"] = p.numerical_policy;
  return j;
}

int cmd_classify(const Options& o, std::ostream& out) {
  require_json(o, "classify");
  const auto theta = for_flag("--theta", [&] { return parse_angle(o.theta); });
  const auto phi = for_flag("--phi", [&] { return parse_phi(o.phi); });
  const auto cls = for_flag("--theta", [&] { return classify(theta, phi); });

  json j;
  j["theta"] = format_angle(theta);
  j["region"] = to_string(cls.region);
  j["class"] = class_name(cls);
  json params;
  if (const auto* q = std::get_if<QuadraticPolynomial>(&cls.kind)) {
    params = {{"a", q->coefficients.a}, {"b", q->coefficients.b}, {"c", q->coefficients.c}};
  } else if (const auto* u = std::get_if<Uniform>(&cls.kind)) {
    params = {{"level", u->level}};
    j["level"] = u->level;
  } else if (const auto* b = std::get_if<BoundedOscillatory>(&cls.kind)) {
    const bool finite = b->period.kind == PeriodKind::Finite;
    params = {{"xi", b->xi}, {"period", finite ? json(b->period.m_min) : json(nullptr)},
              {"period_detail", period_json(b->period)},
              {"w", {{"w1", b->w.w1}, {"w2", complex_json(b->w.w2)}, {"w3", b->w.w3}, {"w4", complex_json(b->w.w4)}}}};
    j["period"] = finite ? json(b->period.m_min) : json(nullptr);
  } else if (const auto* e = std::get_if<Exponential>(&cls.kind)) {
    params = {{"rates",
               {{"r_plus", e->rates.r_plus}, {"r_minus", e->rates.r_minus},
                {"growth_right", e->rates.growth_right}, {"growth_left", e->rates.growth_left}}}};
  }
  j["parameters"] = std::move(params);

  const auto coin = Coin::hadamard();
  const auto field = transfer_eigenfunction(coin, theta.unit(), phi, -kOracleHalfWidth, kOracleHalfWidth);
  const auto report = verify_stationary_field(coin, theta.unit(), field, kOracleSteps, kOracleTol);
  j["oracle"] = {{"eigen_residual", eigen_residual(coin, theta.unit(), field)},
                 {"stationarity_max_dev", report.max_deviation},
                 {"cross_check_deviation", cls.cross_check_deviation}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_period(const Options& o, std::ostream& out) {
  require_json(o, "period");
  const auto theta = for_flag("--theta", [&] { return parse_angle(o.theta); });
  const auto phi = for_flag("--phi", [&] { return parse_phi(o.phi); });
  const auto p = for_flag("--theta", [&] { return period_of(theta, phi); });
  json j;
  j["theta"] = format_angle(theta);
  j["region"] = to_string(theta_region(theta));
  j.update(period_json(p));
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- spectrum ---------------------------------------------------------------

int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto coin = for_flag("--coin", [&] { return parse_coin(o.coin); });
  const auto arcs = for_flag("--grid", [&] { return spectrum_arcs(coin, o.grid); });
  const auto table = dispersion_table(coin, o.grid);

  if (wants_csv(o, false)) {
    if (o.dispersion) {
      out << "k,arg1,arg2\n";
      for (const auto& p : table) out << format_real(p.k) << ',' << format_real(p.arg1) << ',' << format_real(p.arg2) << '\n';
    } else {
      out << "lo,hi\n";
      for (const auto& a : arcs) out << format_real(a.lo) << ',' << format_real(a.hi) << '\n';
    }
    return kExitOk;
  }
  json j;
  j["grid"] = o.grid;
  j["arcs"] = json::array();
  for (const auto& a : arcs) j["arcs"].push_back(json::array({a.lo, a.hi}));
  if (o.dispersion) {
    j["dispersion"] = json::array();
    for (const auto& p : table) j["dispersion"].push_back({{"k", p.k}, {"arg1", p.arg1}, {"arg2", p.arg2}});
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- verify -------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  require_json(o, "verify");
  AcceptanceOptions a;
  if (o.theta_grid < 8) throw UsageError("--theta-grid: must be at least 8");
  if (o.phi_samples < 1) throw UsageError("--phi-samples: must be positive");
  if (o.tol && !(*o.tol > 0)) throw UsageError("--tol: must be positive");
  a.theta_grid = o.theta_grid;
  a.phi_samples = o.phi_samples;
  a.tol = o.tol;
  a.seed = o.seed;

  const auto results = run_acceptance(a);
  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    json c = {{"id", r.id},           {"name", r.name},           {"passed", r.passed},
              {"measured", r.measured}, {"tolerance", r.tolerance}, {"detail", r.detail}};
    if (o.timing) c["runtime_ms"] = r.runtime_ms;
    checks.push_back(std::move(c));
  }
  json j = {{"passed", all}, {"seed", a.seed}, {"theta_grid", a.theta_grid}, {"phi_samples", a.phi_samples},
            {"checks", std::move(checks)}};
  out << j.dump(2) << '\n';
  return all ? kExitOk : kExitCheckFailed;
}

// --- transfer / roots -----------------------------------------------------------

int cmd_transfer(const Options& o, std::ostream& out) {
  const auto coin = for_flag("--coin", [&] { return parse_coin(o.coin); });
  const auto theta = for_flag("--theta", [&] { return parse_angle(o.theta); });
  const auto pair = for_flag("--coin", [&] { return build_transfer(coin, theta.unit()); });
  if (wants_csv(o, false)) {
    out << "matrix,row,col,re,im\n";
    for (const auto& [name, m] : {std::pair{"t_plus", pair.t_plus}, std::pair{"t_minus", pair.t_minus}}) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          out << name << ',' << r + 1 << ',' << c + 1 << ',' << format_real(m(r, c).real()) << ','
              << format_real(m(r, c).imag()) << '\n';
        }
      }
    }
    return kExitOk;
  }
  json j = {{"theta", format_angle(theta)},
            {"lambda", complex_json(pair.lambda)},
            {"t_plus", matrix_json(pair.t_plus)},
            {"t_minus", matrix_json(pair.t_minus)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_roots(const Options& o, std::ostream& out) {
  const auto coin = for_flag("--coin", [&] { return parse_coin(o.coin); });
  const auto theta = for_flag("--theta", [&] { return parse_angle(o.theta); });
  const auto roots = for_flag("--coin", [&] { return char_roots(coin, theta.unit()); });
  const auto type = root_type(roots);
  const std::pair<const char*, cd> named[] = {{"lambda_plus", roots.lambda_plus},
                                              {"lambda_minus", roots.lambda_minus},
                                              {"gamma_plus", roots.gamma_plus},
                                              {"gamma_minus", roots.gamma_minus}};
  if (wants_csv(o, false)) {
    out << "name,re,im,abs\n";
    for (const auto& [name, z] : named) {
      out << name << ',' << format_real(z.real()) << ',' << format_real(z.imag()) << ',' << format_real(std::abs(z)) << '\n';
    }
    return kExitOk;
  }
  json j = {{"theta", format_angle(theta)}, {"type", to_string(type.kind)}, {"is_double", roots.is_double}};
  for (const auto& [name, z] : named) j[name] = complex_json(z);
  j["modulus_plus"] = type.modulus_plus;
  j["modulus_minus"] = type.modulus_minus;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary measures of two-state quantum walks on the line"};
  app.name("qwalk");
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "write output here instead of stdout");
  };
  auto add_coin = [&](CLI::App* sub) {
    sub->add_option("--coin", o.coin, "hadamard | identity | rotation:<angle> | c11,c12,c21,c22")
        ->capture_default_str();
  };
  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", o.theta, "eigenvalue argument: radians or p*pi/q")->required();
  };
  auto add_phi = [&](CLI::App* sub) {
    sub->add_option("--phi", o.phi, "Psi(0) as 'phi1,phi2'")->capture_default_str();
  };

  auto* evolve = app.add_subcommand("evolve", "iterate the walk and print per-step measures");
  add_coin(evolve);
  evolve->add_option("--init", o.init, "delta:a,b or const:a,b")->capture_default_str();
  evolve->add_option("--steps", o.steps)->capture_default_str();
  evolve->add_option("--window", o.window, "half-width of the lattice window")->capture_default_str();
  add_format(evolve);

  auto* classify_cmd = app.add_subcommand("classify", "classify the Hadamard stationary measure");
  add_theta(classify_cmd);
  add_phi(classify_cmd);
  add_format(classify_cmd);

  auto* period = app.add_subcommand("period", "minimal period of a bounded Hadamard measure");
  add_theta(period);
  add_phi(period);
  add_format(period);

  auto* spectrum = app.add_subcommand("spectrum", "spectrum arcs from the Fourier symbol");
  add_coin(spectrum);
  spectrum->add_option("--grid", o.grid, "number of k samples (>= 16)")->capture_default_str();
  spectrum->add_flag("--dispersion", o.dispersion, "emit the (k, arg lambda) table");
  add_format(spectrum);

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--theta-grid", o.theta_grid)->capture_default_str();
  verify->add_option("--phi-samples", o.phi_samples)->capture_default_str();
  verify->add_option("--tol", o.tol, "replace every residual tolerance");
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_flag("--timing", o.timing, "include per-check runtimes");
  add_format(verify);

  auto* transfer = app.add_subcommand("transfer", "print the transfer matrices T+ and T-");
  add_coin(transfer);
  add_theta(transfer);
  add_format(transfer);

  auto* roots = app.add_subcommand("roots", "print the characteristic roots and their type");
  add_coin(roots);
  add_theta(roots);
  add_format(roots);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::map<CLI::App*, std::function<int(const Options&, std::ostream&)>> handlers = {
      {evolve, cmd_evolve}, {classify_cmd, cmd_classify}, {period, cmd_period}, {spectrum, cmd_spectrum},
      {verify, cmd_verify}, {transfer, cmd_transfer},     {roots, cmd_roots}};
  CLI::App* chosen = app.get_subcommands().front();

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = handlers.at(chosen)(o, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FlagError& e) {
    err << "error: " << e.flag << ": " << e.message << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << "error: --out: cannot write " << o.out_path << '\n';
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace qwalk::cli
