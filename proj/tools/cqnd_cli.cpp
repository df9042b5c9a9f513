// Command-line front door: compute bounds, run sweeps, classify regimes,
// solve optics configurations, replay ontic identities, and verify the
// analytic layer against the brute-force oracles.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cqnd/bounds.hpp"
#include "cqnd/maxconf.hpp"
#include "cqnd/ontic.hpp"
#include "cqnd/ontic_json.hpp"
#include "cqnd/optics.hpp"
#include "cqnd/oracle.hpp"
#include "cqnd/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

using nlohmann::json;

// 12 significant digits, '.' decimal, locale-independent.
std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Accepts plain radians or "<x>pi" literals (e.g. "0.42pi").
double parse_angle(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() > 2 && s.substr(s.size() - 2) == "pi") {
    factor = M_PI;
    s = s.substr(0, s.size() - 2);
    if (s.empty()) s = "1";
  }
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw CLI::ValidationError("angle", "bad angle literal: " + text);
  return v * factor;
}

cqnd::Tolerances global_tol() {
  cqnd::Tolerances tol;
  if (const char* env = std::getenv("CONTEXTUAL_QND_TOL")) {
    try {
      tol.tol_opt = std::stod(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("CONTEXTUAL_QND_TOL", "not a number");
    }
    tol.validate();
  }
  return tol;
}

json meta_block() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return json{{"version", kVersion}, {"generated", buf}};
}

struct BoundsRecord {
  cqnd::bounds::Task task;
  cqnd::bounds::TaskParams params;
  cqnd::bounds::Regime regime;
};

json record_to_json(const BoundsRecord& r) {
  return json{
      {"schema", 1},
      {"task", cqnd::bounds::task_name(r.task)},
      {"q1", r.params.q1},
      {"c", r.params.c},
      {"N", r.params.N},
      {"n", r.params.n},
      {"m", r.params.m},
      {"nc", r.regime.bounds.nc},
      {"quantum", r.regime.bounds.quantum},
      {"margin", r.regime.margin},
      {"regime", r.regime.label == cqnd::bounds::RegimeLabel::Contextual
                     ? "contextual"
                     : "noncontextual"},
  };
}

const char* kBoundsCsvHeader = "task,q1,c,N,n,m,nc,quantum,margin,regime";

std::string record_to_csv(const BoundsRecord& r) {
  std::ostringstream out;
  out << cqnd::bounds::task_name(r.task) << ',' << fmt_num(r.params.q1) << ','
      << fmt_num(r.params.c) << ',' << r.params.N << ',' << r.params.n << ','
      << r.params.m << ',' << fmt_num(r.regime.bounds.nc) << ','
      << fmt_num(r.regime.bounds.quantum) << ',' << fmt_num(r.regime.margin) << ','
      << (r.regime.label == cqnd::bounds::RegimeLabel::Contextual ? "contextual"
                                                                  : "noncontextual");
  return out.str();
}

// Shared flag bundle for subcommands taking task parameters.
struct ParamFlags {
  double q1 = 0.5;
  std::optional<double> c;
  std::optional<double> s;
  int N = 1;
  int n = 1;
  int m = 2;

  void attach(CLI::App* cmd, bool with_copies) {
    cmd->add_option("--q1", q1, "prior of state 1")->check(CLI::Range(0.0, 1.0));
    auto* copt = cmd->add_option("--c", c, "confusability (squared overlap)")
                     ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--s", s, "state overlap; sets c = s^2")
        ->check(CLI::Range(0.0, 1.0))
        ->excludes(copt);
    cmd->add_option("--N", N, "receiver count (susd)")->check(CLI::Range(1, 6));
    if (with_copies) {
      cmd->add_option("--n", n, "input copies")->check(CLI::PositiveNumber);
      cmd->add_option("--m", m, "output copies")->check(CLI::PositiveNumber);
    }
  }

  cqnd::bounds::TaskParams resolve() const {
    cqnd::bounds::TaskParams p;
    p.q1 = q1;
    p.c = s ? (*s) * (*s) : c.value_or(0.0);
    p.N = N;
    p.n = n;
    p.m = m;
    return p;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::ios_base::failure("cannot open " + out_path);
  f << text;
  if (!f) throw std::ios_base::failure("write failed: " + out_path);
}

int run_bounds(const std::string& task_name, const ParamFlags& flags,
               const std::string& format, bool meta, const cqnd::Tolerances& tol) {
  BoundsRecord rec;
  rec.task = cqnd::bounds::parse_task(task_name);
  rec.params = flags.resolve();
  rec.regime = cqnd::bounds::regime_classify(rec.task, rec.params, tol);
  if (format == "json") {
    json out = record_to_json(rec);
    if (meta) out["meta"] = meta_block();
    std::cout << out.dump(2) << '\n';
  } else {
    if (meta) std::cout << "# cqnd " << kVersion << '\n';
    std::cout << kBoundsCsvHeader << '\n' << record_to_csv(rec) << '\n';
  }
  return kExitOk;
}

int run_sweep(const std::string& task_name, const ParamFlags& flags,
              const std::string& var, double lo, double hi, int steps,
              const std::vector<double>& values, const std::string& format,
              const std::string& out_path, bool meta, const cqnd::Tolerances& tol) {
  const cqnd::bounds::Task task = cqnd::bounds::parse_task(task_name);
  std::vector<double> points = values;
  if (points.empty()) {
    if (steps < 2) throw CLI::ValidationError("--steps", "need at least 2 steps");
    if (!(lo < hi)) throw CLI::ValidationError("--lo/--hi", "empty range");
    points.reserve(steps);
    for (int i = 0; i < steps; ++i) {
      points.push_back(lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
    }
  }

  std::vector<BoundsRecord> rows(points.size());
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      cqnd::bounds::TaskParams p = flags.resolve();
      const double v = points[i];
      if (var == "c") {
        p.c = v;
      } else if (var == "s") {
        p.c = v * v;
      } else if (var == "q1") {
        p.q1 = v;
      } else if (var == "N") {
        p.N = static_cast<int>(std::lround(v));
      } else if (var == "n") {
        p.n = static_cast<int>(std::lround(v));
      } else if (var == "m") {
        p.m = static_cast<int>(std::lround(v));
      } else {
        throw cqnd::InvalidArgument("unsupported sweep variable: " + var);
      }
      rows[i] = {task, p, cqnd::bounds::regime_classify(task, p, tol)};
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::ostringstream out;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(record_to_json(r));
    json doc = json{{"rows", std::move(arr)}};
    if (meta) doc["meta"] = meta_block();
    out << doc.dump(2) << '\n';
  } else {
    if (meta) out << "# cqnd " << kVersion << '\n';
    out << kBoundsCsvHeader << '\n';
    for (const auto& r : rows) out << record_to_csv(r) << '\n';
  }
  emit(out.str(), out_path);
  return kExitOk;
}

int run_maxconf(double theta, double p, double q1, const std::string& format, bool meta,
                const cqnd::Tolerances& tol) {
  const cqnd::maxconf::QubitEnsemble ens(theta, p, q1);
  const auto r1 = cqnd::maxconf::max_confidence(ens, 1, tol);
  const auto r2 = cqnd::maxconf::max_confidence(ens, 2, tol);
  if (format == "json") {
    auto block = [](const cqnd::maxconf::ConfidenceResult& r) {
      return json{{"confidence", r.confidence},
                  {"dual", r.dual_value},
                  {"certificate_min_eig", r.certificate_min_eig},
                  {"slackness_residual", r.slackness_residual}};
    };
    json out{{"theta", theta}, {"p", p},          {"q1", q1},
             {"c1", block(r1)}, {"c2", block(r2)}};
    if (meta) out["meta"] = meta_block();
    std::cout << out.dump(2) << '\n';
  } else {
    if (meta) std::cout << "# cqnd " << kVersion << '\n';
    std::cout << "k,theta,p,q1,confidence,dual,certificate_min_eig,slackness_residual\n";
    for (const auto* r : {&r1, &r2}) {
      std::cout << r->k << ',' << fmt_num(theta) << ',' << fmt_num(p) << ','
                << fmt_num(q1) << ',' << fmt_num(r->confidence) << ','
                << fmt_num(r->dual_value) << ',' << fmt_num(r->certificate_min_eig)
                << ',' << fmt_num(r->slackness_residual) << '\n';
    }
  }
  return kExitOk;
}

json config_to_json(const cqnd::optics::OpticalConfig& c) {
  return json{{"phi", c.phi}, {"mu", c.mu}, {"nu", c.nu}, {"xi1", c.xi1},
              {"xi2", c.xi2}};
}

int run_optics_usd(double q1, double s, bool meta, const cqnd::Tolerances& tol) {
  const auto sol = cqnd::optics::solve_usd_config(q1, s, tol);
  json out{{"config", config_to_json(sol.config)},
           {"alphas", json{{"alpha1", sol.alpha1}, {"alpha2", sol.alpha2}}},
           {"achieved", sol.achieved},
           {"residual", sol.residual}};
  if (meta) out["meta"] = meta_block();
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_optics_mc(double q1, double theta, double p, bool meta,
                  const cqnd::Tolerances& tol) {
  const auto sol = cqnd::optics::solve_mc_config(q1, theta, p, tol);
  json out{{"config", config_to_json(sol.config)},
           {"confidences", json{{"c1", sol.c1}, {"c2", sol.c2}}},
           {"residual", sol.residual}};
  if (meta) out["meta"] = meta_block();
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

// Replays the discrimination identities on a user-supplied instance:
// {"mu1": [...], "mu2": [...], "alpha1": x, "alpha2": y,
//  "post1": [...], "post2": [...]}.
int run_ontic_file(const std::string& path, const cqnd::Tolerances& tol) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  json doc = json::parse(f);

  using namespace cqnd::ontic;
  const EpistemicState mu1 = epistemic_from_json(doc.at("mu1"), tol);
  const EpistemicState mu2 = epistemic_from_json(doc.at("mu2"), tol);
  const EpistemicState post1 = epistemic_from_json(doc.at("post1"), tol);
  const EpistemicState post2 = epistemic_from_json(doc.at("post2"), tol);
  const double a1 = doc.at("alpha1").get<double>();
  const double a2 = doc.at("alpha2").get<double>();

  const QndMeasurement qnd = build_usd_qnd(mu1, mu2, a1, a2, post1, post2, tol);
  bool ok = true;
  auto report = [&](const std::string& name, double dev, double bound) {
    const bool pass = dev <= bound;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name
              << "  deviation=" << fmt_num(dev) << "  tolerance=" << fmt_num(bound)
              << '\n';
  };

  const double c = confusability(mu1, mu2, tol).value;
  const auto pres1 = check_confusability_preserved(qnd.map, mu1, mu2, tol);
  report("confusability_preserved", std::abs(pres1.after - pres1.before), tol.tol_eq);
  const double cp = confusability(qnd.post_states[0], qnd.post_states[1], tol).value;
  report("success_branch_relation", std::abs(c - cp * (1.0 - a1)), tol.tol_eq);

  const ResponseSet resp = extract_response_functions(qnd, tol);
  double norm_dev = 0.0;
  for (std::size_t i = 0; i < resp.space().size; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < resp.outcomes(); ++k) sum += resp.function(k)[i];
    norm_dev = std::max(norm_dev, std::abs(sum - 1.0));
  }
  report("response_normalization", norm_dev, tol.tol_eq);
  report("outcome_prob_state1", std::abs(outcome_probability(qnd, mu1, 1, tol) - a1),
         tol.tol_eq);
  report("outcome_prob_state2", std::abs(outcome_probability(qnd, mu2, 2, tol) - a2),
         tol.tol_eq);
  return ok ? kExitOk : kExitVerifyFail;
}

int run_verify(const std::string& suite, const cqnd::Tolerances& tol) {
  using cqnd::verify::CheckResult;
  std::vector<CheckResult> checks;
  auto add = [&](const std::vector<CheckResult>& more) {
    checks.insert(checks.end(), more.begin(), more.end());
  };
  const bool all = suite == "all";
  if (all || suite == "worked") add(cqnd::verify::worked_point(tol));
  if (all || suite == "bounds") add(cqnd::verify::bound_oracle_agreement(tol));
  if (all || suite == "stage") checks.push_back(cqnd::verify::sequential_stage_check(tol));
  if (all || suite == "optics") add(cqnd::verify::optics_usd_bridge(tol));
  if (all || suite == "ontic") add(cqnd::verify::ontic_identities(tol));
  if (all || suite == "regimes") add(cqnd::verify::regime_reproduction(tol));
  if (all || suite == "duality") add(cqnd::verify::confidence_duality(200, tol));
  if (checks.empty()) throw CLI::ValidationError("--suite", "unknown suite: " + suite);

  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
              << "  max_deviation=" << fmt_num(c.max_deviation)
              << "  tolerance=" << fmt_num(c.tolerance);
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << '\n';
  }
  return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum vs noncontextual bounds for non-demolition state discrimination"};
  app.require_subcommand(1);
  bool meta = false;
  app.add_flag("--meta", meta, "include version/timestamp metadata in output");

  // bounds <task>
  auto* bounds_cmd = app.add_subcommand("bounds", "single bound record for a task");
  std::string bounds_task;
  bounds_cmd->add_option("task", bounds_task, "usd | susd | pqc1 | pqc2")->required();
  ParamFlags bounds_flags;
  bounds_flags.attach(bounds_cmd, true);
  std::string bounds_format = "json";
  bounds_cmd->add_option("--format", bounds_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one variable over a range");
  std::string sweep_task, sweep_var, sweep_out, sweep_format = "csv";
  double sweep_lo = 0.0, sweep_hi = 1.0;
  int sweep_steps = 0;
  std::vector<double> sweep_values;
  sweep_cmd->add_option("task", sweep_task, "usd | susd | pqc1 | pqc2")->required();
  sweep_cmd->add_option("--var", sweep_var, "c | s | q1 | N | n | m")->required();
  sweep_cmd->add_option("--lo", sweep_lo, "range start");
  sweep_cmd->add_option("--hi", sweep_hi, "range end");
  sweep_cmd->add_option("--steps", sweep_steps, "number of samples (>= 2)");
  sweep_cmd->add_option("--values", sweep_values, "explicit sample list");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  ParamFlags sweep_flags;
  sweep_flags.attach(sweep_cmd, true);

  // maxconf
  auto* mc_cmd = app.add_subcommand("maxconf", "maximal-confidence discrimination");
  std::string mc_theta = "0";
  double mc_p = 1.0, mc_q1 = 0.5;
  std::string mc_format = "json";
  mc_cmd->add_option("--theta", mc_theta, "angle in radians, or '<x>pi'")->required();
  mc_cmd->add_option("--p", mc_p, "depolarizing parameter")->check(CLI::Range(0.0, 1.0));
  mc_cmd->add_option("--q1", mc_q1, "prior of state 1")->check(CLI::Range(0.0, 1.0));
  mc_cmd->add_option("--format", mc_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // optics usd / optics maxconf
  auto* optics_cmd = app.add_subcommand("optics", "wave-plate angle solvers");
  optics_cmd->require_subcommand(1);
  auto* ousd = optics_cmd->add_subcommand("usd", "unambiguous-discrimination setup");
  double ousd_q1 = 0.5;
  std::optional<double> ousd_c, ousd_s;
  ousd->add_option("--q1", ousd_q1)->check(CLI::Range(0.0, 1.0));
  auto* ousd_copt = ousd->add_option("--c", ousd_c, "confusability")
                        ->check(CLI::Range(0.0, 1.0));
  ousd->add_option("--s", ousd_s, "overlap; sets c = s^2")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(ousd_copt);
  auto* omc = optics_cmd->add_subcommand("maxconf", "maximal-confidence setup");
  double omc_q1 = 0.5, omc_p = 1.0;
  std::string omc_theta = "0";
  omc->add_option("--q1", omc_q1)->check(CLI::Range(0.0, 1.0));
  omc->add_option("--theta", omc_theta, "angle in radians, or '<x>pi'")->required();
  omc->add_option("--p", omc_p)->check(CLI::Range(0.0, 1.0));

  // ontic verify
  auto* ontic_cmd = app.add_subcommand("ontic", "ontological-model simulator");
  ontic_cmd->require_subcommand(1);
  auto* overify = ontic_cmd->add_subcommand(
      "verify", "replay discrimination identities on toy or supplied models");
  std::string ontic_input;
  overify->add_option("--input", ontic_input, "JSON instance file");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "oracle/property verification");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite,
                         "all | worked | bounds | stage | optics | ontic | "
                         "regimes | duality");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const cqnd::Tolerances tol = global_tol();
    if (bounds_cmd->parsed()) {
      return run_bounds(bounds_task, bounds_flags, bounds_format, meta, tol);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_task, sweep_flags, sweep_var, sweep_lo, sweep_hi,
                       sweep_steps, sweep_values, sweep_format, sweep_out, meta, tol);
    }
    if (mc_cmd->parsed()) {
      return run_maxconf(parse_angle(mc_theta), mc_p, mc_q1, mc_format, meta, tol);
    }
    if (ousd->parsed()) {
      const double s = ousd_s ? *ousd_s : std::sqrt(ousd_c.value_or(0.0));
      return run_optics_usd(ousd_q1, s, meta, tol);
    }
    if (omc->parsed()) {
      return run_optics_mc(omc_q1, parse_angle(omc_theta), omc_p, meta, tol);
    }
    if (overify->parsed()) {
      if (ontic_input.empty()) {
        bool ok = true;
        for (const auto& c : cqnd::verify::ontic_identities(tol)) {
          ok = ok && c.pass;
          std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                    << "  max_deviation=" << fmt_num(c.max_deviation)
                    << "  tolerance=" << fmt_num(c.tolerance) << '\n';
        }
        return ok ? kExitOk : kExitVerifyFail;
      }
      return run_ontic_file(ontic_input, tol);
    }
    if (verify_cmd->parsed()) {
      return run_verify(suite, tol);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cqnd::UnsupportedCombination& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cqnd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
