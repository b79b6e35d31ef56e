#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "r2opuc/chain.hpp"
#include "r2opuc/errors.hpp"
#include "r2opuc/fixtures.hpp"
#include "r2opuc/opuc.hpp"
#include "r2opuc/pencil.hpp"
#include "r2opuc/spectral.hpp"

using namespace r2opuc;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kNuChainLength = 400000;

struct Job {
  std::string command;
  std::string example;
  double kappa = 0.5;
  double lambda = 0.0;
  double eta = 0.0;
  std::optional<double> s;
  std::size_t n = 0;
  std::string input;
  std::string output = "csv";
  std::uint64_t seed = 1;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;
  Json extra = Json::object();
};

std::string shortest(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double round15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return shortest(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Job& job, const Table& t) {
  if (job.output == "json") {
    Json out;
    out["command"] = job.command;
    out["n"] = job.n;
    out["rows"] = t.rows;
    for (const auto& [k, v] : t.extra.items()) out[k] = v;
    std::cout << out.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << t.columns[i];
  std::cout << '\n';
  for (const Json& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      std::cout << (i ? "," : "") << (row.contains(t.columns[i]) ? csv_cell(row[t.columns[i]]) : "");
    }
    std::cout << '\n';
  }
  for (const auto& [k, v] : t.extra.items()) std::cout << "# " << k << "," << csv_cell(v) << '\n';
}

std::optional<ExampleSpec> example_of(const Job& job, bool base) {
  if (job.example.empty()) return std::nullopt;
  ExampleSpec ex = parse_example_id(job.example);
  ex.kappa = job.kappa;
  ex.lambda = job.lambda;
  ex.eta = job.eta;
  ex.s = base ? std::optional<double>{} : job.s;
  ex.validate();
  return ex;
}

/// Sequences with c_1..c_N (examples) or the input arrays verbatim.
CoefficientData load(const Job& job, std::size_t N, std::size_t chain_len = 0, bool base = false) {
  if (const auto ex = example_of(job, base)) return example_sequences(*ex, N, chain_len);
  std::ifstream in(job.input);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + job.input + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.contains("c") || !j.contains("d") || !j["c"].is_array() || !j["d"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "input needs arrays \"c\" and \"d\" (d[0] = d_2)");
  }
  std::vector<double> c;
  std::vector<double> d;
  try {
    c = j["c"].get<std::vector<double>>();
    d = j["d"].get<std::vector<double>>();
  } catch (const Json::exception&) {
    throw Error(ErrorCode::InvalidInput, "\"c\" and \"d\" must hold numbers");
  }
  if (c.size() < job.n || d.size() < job.n) {
    throw Error(ErrorCode::InvalidInput, "input arrays shorter than n");
  }
  return make_coefficient_data(std::move(c), ChainSequence{std::move(d)});
}

Json cplx_row(Json row, const char* name, cplx z) {
  row[std::string(name) + "_re"] = z.real();
  row[std::string(name) + "_im"] = z.imag();
  return row;
}

Table cmd_zeros(const Job& job) {
  const CircleQuadrature q = quadrature(load(job, job.n), job.n);
  Table t{{"r", "x", "zeta_re", "zeta_im"}, {}, Json::object()};
  for (std::size_t r = 0; r < q.n; ++r) {
    t.rows.push_back(Json{{"r", r + 1},
                          {"x", round15(q.x[r])},
                          {"zeta_re", round15(q.zeta[r].real())},
                          {"zeta_im", round15(q.zeta[r].imag())}});
  }
  return t;
}

Table cmd_weights(const Job& job) {
  const CircleQuadrature q = quadrature(load(job, job.n), job.n);
  Table t{{"r", "x", "lambda", "lambda_hat"}, {}, Json::object()};
  double total = 0.0;
  for (std::size_t r = 0; r < q.n; ++r) {
    t.rows.push_back(Json{{"r", r + 1}, {"x", q.x[r]}, {"lambda", q.lambda[r]}, {"lambda_hat", q.lambda_hat[r]}});
    total += q.lambda_hat[r];
  }
  t.extra["lambda_hat_sum"] = total;
  return t;
}

Table cmd_verblunsky(const Job& job) {
  const VerblunskyData v = verblunsky_from_cd(load(job, job.n + 1), job.n);
  Table t{{"k", "alpha_re", "alpha_im", "tau_re", "tau_im"}, {}, Json::object()};
  for (std::size_t k = 0; k < job.n; ++k) {
    t.rows.push_back(cplx_row(cplx_row(Json{{"k", k}}, "alpha", v.alpha[k]), "tau", v.tau[k]));
  }
  return t;
}

Table cmd_nu(const Job& job) {
  const NuData nd = nu_data(load(job, job.n, kNuChainLength), job.n);
  Table t{{"n", "M", "gamma", "beta_re", "beta_im"}, {}, Json::object()};
  for (std::size_t n = 1; n <= job.n; ++n) {
    t.rows.push_back(cplx_row(Json{{"n", n}, {"M", nd.M[n - 1]}, {"gamma", nd.gamma[n]}}, "beta", nd.beta[n - 1]));
  }
  t.extra["gamma_recurrence_gap"] = nd.gamma_recurrence_gap;
  t.extra["extrapolated"] = nd.extrapolated;
  return t;
}

Table cmd_sfamily(const Job& job) {
  if (!job.s) throw Error(ErrorCode::InvalidInput, "sfamily needs --s");
  const CoefficientData base = load(job, job.n + 1, 0, true);
  const VerblunskyData v = verblunsky_from_cd(base, job.n);
  // c_1 = -2 Im I for the member at s = 0.
  const cplx I{0.5, -0.5 * base.c_at(1)};
  const SFamily f = s_family(v.alpha, I, *job.s, job.n);
  Table t{{"n", "c", "d_next", "ell", "tau_re", "tau_im"}, {}, Json::object()};
  for (std::size_t n = 1; n <= job.n; ++n) {
    t.rows.push_back(cplx_row(Json{{"n", n}, {"c", f.c[n - 1]}, {"d_next", f.d[n - 1]}, {"ell", f.ell[n - 1]}}, "tau",
                              f.tau[n - 1]));
  }
  t.extra["I_re"] = I.real();
  t.extra["I_im"] = I.imag();
  return t;
}

cplx density_moment(const ExampleSpec& ex, int k) {
  const double two_pi = 2.0 * std::acos(-1.0);
  const double re = integrate_interval([&](double t) { return std::cos(k * t) * circle_density(ex, t); }, 0.0, two_pi);
  const double im = integrate_interval([&](double t) { return std::sin(k * t) * circle_density(ex, t); }, 0.0, two_pi);
  cplx out{re, im};
  for (const PointMass& m : point_masses(ex)) out += m.mass * std::pow(m.zeta, k);
  return out;
}

Table cmd_moments(const Job& job) {
  const CircleQuadrature q = quadrature(load(job, job.n), job.n);
  const std::optional<ExampleSpec> ex = example_of(job, false);
  Table t{{"k", "re", "im", "exact"}, {}, Json::object()};
  if (ex) t.columns.insert(t.columns.end(), {"density_re", "density_im", "abs_diff"});
  const int n = static_cast<int>(job.n);
  for (int k = -(n - 1); k < n; ++k) {
    const Moment m = discrete_moment(q, k);
    Json clean{{"k", k}, {"re", m.value.real()}, {"im", m.value.imag()}, {"exact", m.measure_exact}};
    if (ex) {
      const cplx d = density_moment(*ex, k);
      clean["density_re"] = d.real();
      clean["density_im"] = d.imag();
      clean["abs_diff"] = std::abs(d - m.value);
    }
    t.rows.push_back(clean);
  }
  return t;
}

struct Checks {
  Table table{{"check", "value", "tolerance", "status"}, {}, Json::object()};
  bool failed = false;

  void add(const std::string& name, double value, double tol) {
    const bool ok = value <= tol;
    failed = failed || !ok;
    table.rows.push_back(Json{{"check", name}, {"value", value}, {"tolerance", tol}, {"status", ok ? "pass" : "fail"}});
  }
  void skip(const std::string& name, const std::string& why) {
    table.rows.push_back(Json{{"check", name}, {"value", nullptr}, {"tolerance", nullptr}, {"status", "skip: " + why}});
  }
};

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return out;
}

Table cmd_verify(const Job& job, bool& failed) {
  const std::size_t n = job.n;
  const std::optional<ExampleSpec> ex = example_of(job, false);
  const CoefficientData cd = load(job, ex ? n + 1 : n);
  const bool long_enough = cd.c.size() >= n + 1 && cd.d.size() >= n;
  std::mt19937_64 rng(job.seed);
  Checks ch;

  const SpectralData sd = solve(build_pencil(cd, n));
  ch.add("zeros_dual_path", max_rel(sd.x, zeros_by_bisection(cd, n)), 1e-10);
  ch.table.rows.push_back(Json{{"check", "zeros_min_gap"}, {"value", sd.min_gap}, {"tolerance", 1e-11},
                               {"status", sd.min_gap > 1e-11 ? "pass" : "fail"}});
  ch.failed = ch.failed || !(sd.min_gap > 1e-11);
  if (n >= 2) {
    const std::vector<double> prev = solve(build_pencil(cd, n - 1)).x;
    double worst = 0.0;
    for (std::size_t r = 0; r + 1 < n; ++r) {
      const double tol = 1e-11 * (1.0 + std::abs(prev[r]));
      worst = std::max({worst, (sd.x[r + 1] - prev[r]) / tol, (prev[r] - sd.x[r]) / tol});
    }
    ch.add("interlacing_violation_scaled", std::max(0.0, worst), 1.0);
  }

  const CircleQuadrature q = quadrature(cd, n);
  const std::vector<double> oracle = eigenvector_weights(cd, n);
  ch.add("weights_dual_path", max_rel(q.lambda, oracle), 1e-9);
  double total = 0.0;
  for (const double w : q.lambda_hat) total += w;
  ch.add("lambda_hat_sum", std::abs(total - 1.0), 1e-10);
  ch.add("discrete_orthogonality", verify_discrete_orthogonality(cd, n).max_offdiag, 1e-9);
  const OrthogonalityReport phi = verify_phi_orthogonality(cd, n);
  ch.add("phi_orthogonality", std::max(phi.max_offdiag, phi.max_diag), 1e-9);
  const OrthogonalityReport uh = verify_u_hat_orthonormality(cd, n);
  ch.add("u_hat_orthonormality", std::max(uh.max_offdiag, uh.max_diag), 1e-10);
  ch.add("wall_partial_sum", wall_partial_sum(cd, n).rel_error, 1e-9);

  std::uniform_real_distribution<double> unit(-1.5, 1.5);
  std::vector<cplx> points;
  for (int i = 0; i < 4; ++i) points.emplace_back(unit(rng), unit(rng));
  double comb = 0.0;
  for (const cplx z : points) comb = std::max(comb, combination_residual(cd, n, z));
  ch.add("combination_residual", comb, 1e-10);

  if (long_enough) {
    const VerblunskyData v = verblunsky_from_cd(cd, n);
    const ReciprocalData r = cd_from_verblunsky(v, n);
    double rt = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      rt = std::max(rt, std::abs(r.cd.c_at(k) - cd.c_at(k)) / std::max(1.0, std::abs(cd.c_at(k))));
      rt = std::max(rt, std::abs(r.cd.d_at(k) - cd.d_at(k)) / std::max(1.0, std::abs(cd.d_at(k))));
    }
    ch.add("round_trip", rt, 1e-10);
    ch.add("reciprocal_alternative_forms", r.alternative_gap, 1e-11);
    ch.add("reciprocal_consistency", r.consistency_gap, 1e-11);
    ch.add("tau_conventions", tau_convention_gap(cd, v), 1e-10);
    ch.add("para_orthogonal", para_orthogonal_gap(cd, v, n, points), 1e-10);
    if (ex && !(ex->s && *ex->s != 0.0) && ex->id != ExampleId::Ex2) {
      double a = 0.0;
      for (std::size_t k = 0; k < n; ++k) a = std::max(a, std::abs(v.alpha[k] - closed_form_alpha(*ex, k)));
      ch.add("alpha_closed_form", a, 1e-10);
    }
  } else {
    ch.skip("round_trip", "needs c_1..c_{n+1} and d_2..d_{n+1}");
  }

  if (ex && !(ex->s && *ex->s != 0.0) && ex->id != ExampleId::Ex2) {
    double p = 0.0;
    for (const double x : {-2.5, -0.3, 0.7, 4.0}) {
      const double ref = eval_P(cd, n, x).value.value();
      p = std::max(p, std::abs(closed_form_P(*ex, n, x).real() - ref) / std::max(1.0, std::abs(ref)));
    }
    ch.add("P_closed_form", p, 1e-10);
  }
  if (ex && (ex->id == ExampleId::Ex3 || (ex->id == ExampleId::Ex4 && ex->lambda >= 0.0)) && !(ex->s && *ex->s != 0.0)) {
    const NuData nd = nu_data(example_sequences(*ex, n, kNuChainLength), n);
    ch.add("gamma_recurrence", nd.gamma_recurrence_gap, 1e-11);
    double m = 0.0;
    for (std::size_t k = 1; k <= n; ++k) m = std::max(m, std::abs(nd.M[k - 1] - closed_form_M(*ex, k)));
    ch.add("maximal_parameters", m, 1e-9);
  }
  if (ex && ex->id != ExampleId::Ex4 && n <= 12) ch.add("pv_orthogonality", pv_checks(*ex, n).max_error, 1e-6);

  failed = ch.failed;
  return ch.table;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::ParameterOutOfDomain:
    case ErrorCode::DegreeOutOfRange:
    case ErrorCode::DimensionTooSmall:
    case ErrorCode::UnsupportedExample:
    case ErrorCode::NotAChainSequence:
    case ErrorCode::RequiresMultipleParameter:
    case ErrorCode::DepthInsufficient:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"R_II recurrences, pencils and OPUC"};
  app.require_subcommand(1);
  Job job;

  const auto add_common = [&job](CLI::App* sub) {
    auto* ex = sub->add_option("--example", job.example, "Built-in example")->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4"}));
    auto* in = sub->add_option("--input", job.input, "JSON file {\"c\": [c_1, ...], \"d\": [d_2, ...]}");
    ex->excludes(in);
    sub->add_option("--kappa", job.kappa, "Example 2 point mass");
    sub->add_option("--lambda", job.lambda, "Example 4 lambda");
    sub->add_option("--eta", job.eta, "Example 4 eta");
    sub->add_option("--s", job.s, "s-family parameter");
    sub->add_option("--n", job.n, "Degree")->required()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    sub->add_option("--output", job.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", job.seed, "Seed for randomized checks");
  };
  for (const char* name : {"zeros", "weights", "verblunsky", "nu", "sfamily", "moments", "verify"}) {
    add_common(app.add_subcommand(name, std::string(name)));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  job.command = app.get_subcommands().front()->get_name();
  if (job.example.empty() && job.input.empty()) {
    std::cerr << "error: InvalidInput: one of --example or --input is required\n";
    return 2;
  }

  try {
    bool failed = false;
    Table t;
    if (job.command == "zeros") t = cmd_zeros(job);
    else if (job.command == "weights") t = cmd_weights(job);
    else if (job.command == "verblunsky") t = cmd_verblunsky(job);
    else if (job.command == "nu") t = cmd_nu(job);
    else if (job.command == "sfamily") t = cmd_sfamily(job);
    else if (job.command == "moments") t = cmd_moments(job);
    else t = cmd_verify(job, failed);
    emit(job, t);
    return failed ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
