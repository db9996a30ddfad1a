#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "diracshell/bem2d.hpp"
#include "diracshell/conditions.hpp"
#include "diracshell/confinement.hpp"
#include "diracshell/spectral2d.hpp"
#include "diracshell/triple_1d.hpp"

namespace dshell::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "dirac-shell/1";

json to_json(const CMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json to_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json config_json(const RunConfig& c) {
  return {{"command", c.command}, {"eta", c.eta},         {"tau", c.tau},
          {"lambda", c.lambda},   {"m", c.m},             {"q", c.q},
          {"curve", c.curve},     {"n", c.n},             {"zgrid", c.zgrid},
          {"tol_bs", c.tol_bs},   {"tol_conv", c.tol_conv}, {"tol_jump", c.tol_jump},
          {"out", c.out},         {"format", c.format},   {"quick", c.quick},
          {"verify_only", c.verify_only}};
}

json header(const RunConfig& c) { return {{"schema", kSchema}, {"command", c.command}, {"config", config_json(c)}}; }

InteractionStrengths strengths(const RunConfig& c) {
  InteractionStrengths s{c.eta, c.tau, c.lambda, c.m};
  s.validate();
  return s;
}

json classification_json(const StrengthClassification& k) {
  json j{{"regime", to_string(k.regime)},
         {"confinement", k.confinement},
         {"zigzag", k.zigzag},
         {"d", k.d},
         {"criticality", k.criticality},
         {"essential_spectrum", k.essential_spectrum},
         {"gap_empty", k.gap_empty},
         {"notes", k.notes}};
  j["extra_essential_point"] = k.extra_essential_point ? json(*k.extra_essential_point) : json(nullptr);
  return j;
}

// Sufficient conditions evaluated with omega bounds of the configured curve.
json selfadjointness_json(const InteractionStrengths& s, const ClosedCurve& curve, int n) {
  const QuadratureGrid g = build_grid(curve, n);
  const OmegaBounds b = omega_bounds(assemble_D_alpha(g));
  // a real reference point needs a nonempty gap
  const cplx zref = s.m > 0.0 ? cplx(0.0) : cplx(0.0, 1.0);
  const double norm_c = spectral_norm(assemble_C(zref, s.m, g).weighted);
  const ConditionReport r = check_selfadjointness_conditions(s, b, norm_c);
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name},
                     {"statement", c.statement},
                     {"applicable", c.applicable},
                     {"holds", c.holds},
                     {"lhs", std::isfinite(c.lhs) ? json(c.lhs) : json(nullptr)},
                     {"rhs", c.rhs}});
  return {{"curve", curve.name()},
          {"n", n},
          {"omega_min", r.omega_min},
          {"omega_max", r.omega_max},
          {"outliers_removed", b.outliers_removed},
          {"norm_c", r.norm_c},
          {"norm_c_reference_z", {zref.real(), zref.imag()}},
          {"conditions", conds},
          {"certified", r.certified},
          {"verdict", r.verdict}};
}

void emit(const RunConfig& c, const json& report, std::ostream& out, const std::string& name = "report.json") {
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    std::ofstream f(std::filesystem::path(c.out) / name);
    f << report.dump(2) << '\n';
  }
  if (c.format == "json") out << report.dump(2) << '\n';
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const InteractionStrengths s = strengths(c);
  json r = header(c);
  const StrengthClassification k = classify_strengths(s);
  r.update(classification_json(k));

  const DiracRepresentation rep = build_dirac_matrices(c.q);
  std::vector<double> nu(c.q, 0.0);
  nu[0] = 1.0;
  const TransmissionData t = transmission_data(s, rep, nu);
  json tr{{"normal", nu}, {"R", to_json(t.R)}, {"identity_residual", confinement_identity_residual(t)}};
  tr["Q"] = t.Q ? to_json(*t.Q) : json(nullptr);
  tr["bc_plus"] = t.bc_plus ? to_json(*t.bc_plus) : json(nullptr);
  tr["bc_minus"] = t.bc_minus ? to_json(*t.bc_minus) : json(nullptr);
  r["transmission"] = tr;
  // the omega bounds are computed on a curve, so only for q = 2
  r["selfadjointness"] = c.q == 2 ? selfadjointness_json(s, parse_curve(c.curve), c.n) : json(nullptr);
  if (c.format != "json") throw DomainError("classify supports --format json only");
  emit(c, r, out);
  return ok;
}

json eigen1d_json(const std::vector<Eigenvalue1D>& ev) {
  json a = json::array();
  for (const auto& e : ev)
    a.push_back({{"value", e.value}, {"branch", to_string(e.branch)}, {"residual", e.residual},
                 {"bs_residual", e.bs_residual}});
  return a;
}

int cmd_spec1d(const RunConfig& c, std::ostream& out) {
  if (c.q != 1) throw DomainError("spec1d requires q = 1");
  if (!(c.m > 0.0)) throw DomainError("empty gap: spec1d requires m > 0");
  if (c.format != "json") throw DomainError("spec1d supports --format json only");
  const InteractionStrengths s = strengths(c);
  json r = header(c);
  const auto closed = discrete_spectrum_1d_closed_form(s);
  const auto numeric = discrete_spectrum_1d_numeric(s);
  json values = json::array();
  for (const auto& e : closed) values.push_back(e.value);
  r["eigenvalues"] = values;
  r["closed_form"] = eigen1d_json(closed);
  r["numeric"] = eigen1d_json(numeric);
  r["classification"] = classification_json(classify_strengths(s));
  emit(c, r, out);
  return ok;
}

json oracles_json(const QuadratureGrid& g, double m) {
  const DiscretizedOperator cz = assemble_C(m > 0.0 ? cplx(0.0) : cplx(0.0, 1.0), m, g);
  return {{"n", g.n},
          {"cinv", cinv_residual(cz)},
          {"riesz", riesz_square_residual(g)},
          {"hermiticity", m > 0.0 ? json(hermiticity_deviation(cz)) : json(nullptr)}};
}

int cmd_spec2d(const RunConfig& c, std::ostream& out) {
  if (c.q != 2) throw DomainError("spec2d requires q = 2");
  if (c.format != "json" && c.format != "csv") throw DomainError("--format must be json or csv");
  const InteractionStrengths s = strengths(c);
  const ClosedCurve curve = parse_curve(c.curve);
  const QuadratureGrid g = build_grid(curve, c.n);
  json r = header(c);
  r["classification"] = classification_json(classify_strengths(s));
  r["oracles"] = oracles_json(g, s.m);
  if (c.verify_only) {
    emit(c, r, out);
    return ok;
  }
  if (!(s.m > 0.0)) throw DomainError("empty gap");
  r["selfadjointness"] = selfadjointness_json(s, curve, c.n);

  EigenOptions opt;
  opt.scan_points = c.zgrid;
  opt.tol_bs = c.tol_bs;
  opt.tol_conv = c.tol_conv;
  opt.tol_jump = c.tol_jump;
  const ScanResult scan = bs_scan(s, build_grid(curve, std::min(c.n, opt.scan_n)), opt.scan_points, opt.margin);
  const auto pairs = find_eigenvalues(s, curve, c.n, scan, opt);

  double smin = 1e300;
  for (double v : scan.sigma_min) smin = std::min(smin, v);
  r["scan"] = {{"n", scan.n}, {"points", scan.z.size()}, {"min_sigma", smin}};
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    std::ofstream f(std::filesystem::path(c.out) / "scan.csv");
    write_scan_csv(scan, f);
    r["scan"]["csv"] = (std::filesystem::path(c.out) / "scan.csv").string();
  }
  json ep = json::array();
  for (const auto& e : pairs)
    ep.push_back({{"z", e.z},
                  {"z_2n", e.z_2n},
                  {"n", e.n},
                  {"accepted", e.accepted},
                  {"multiplicity", e.multiplicity},
                  {"certificate",
                   {{"sigma_min", e.certificate.sigma_min},
                    {"convergence", e.certificate.convergence},
                    {"jump_residual", e.certificate.jump_residual}}},
                  {"warnings", e.warnings},
                  {"density", to_json(e.density)}});
  r["eigenpairs"] = ep;
  json accepted = json::array();
  for (const auto& e : pairs)
    if (e.accepted) accepted.push_back(e.z);
  r["eigenvalues"] = accepted;
  if (c.format == "csv") write_scan_csv(scan, out);
  emit(c, r, out);
  return ok;
}

struct SuiteEntry {
  std::string name;
  double value;
  double lo, hi;  // pass iff lo <= value <= hi
};

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const double relax = c.quick ? 100.0 : 1.0;
  const int n = c.quick ? 64 : c.n;
  std::vector<SuiteEntry> suite;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-2.0, 2.0);

  double anti = 0.0, symbol = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  for (int q = 1; q <= 3; ++q) {
    DiracRepresentation rep = build_dirac_matrices(q);
    if (c.corrupt_representation) rep.alphas[1](0, rep.n_spinor - 1) *= -1.0;
    anti = std::max(anti, verify_anticommutation(rep));
    for (int k = 0; k < 20; ++k) {
      std::vector<double> xi(q);
      for (auto& v : xi) v = u(rng);
      symbol = std::max(symbol, symbol_factorization_check(rep, 1.0, cplx(u(rng), u(rng)), xi));
    }
    for (int k = 0; k < 4; ++k) {
      std::vector<double> x(q);
      for (auto& v : x) v = 0.5 * u(rng) + (v >= 0 ? 0.7 : -0.7);
      const cplx z(0.3, 0.4);
      const double r1 = fundamental_solution_residual(rep, 1.0, z, x, 1e-3);
      const double r2 = fundamental_solution_residual(rep, 1.0, z, x, 5e-4);
      ratio_lo = std::min(ratio_lo, r1 / r2);
      ratio_hi = std::max(ratio_hi, r1 / r2);
    }
  }
  suite.push_back({"anticommutation", anti, 0.0, 1e-13 * relax});
  suite.push_back({"symbol_factorization", symbol, 0.0, 1e-12 * relax});
  suite.push_back({"fundamental_solution_ratio_min", ratio_lo, 3.5, 4.5});
  suite.push_back({"fundamental_solution_ratio_max", ratio_hi, 3.5, 4.5});

  double green = 0.0;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector4cd a, b;
    for (int i = 0; i < 4; ++i) {
      a(i) = cplx(u(rng), u(rng));
      b(i) = cplx(u(rng), u(rng));
    }
    green = std::max(green, green_identity_residual_1d(boundary_lift_1d(a), boundary_lift_1d(b), 1.0).residual);
  }
  suite.push_back({"green_identity_1d", green, 0.0, 1e-10 * relax});

  const QuadratureGrid g = build_grid(parse_curve(c.curve), n);
  const DiscretizedOperator c0 = assemble_C(0.0, 1.0, g);
  suite.push_back({"cinv", cinv_residual(c0), 0.0, 1e-6 * relax});
  suite.push_back({"riesz", riesz_square_residual(g), 0.0, 1e-6 * relax});
  suite.push_back({"hermiticity_c0", hermiticity_deviation(c0), 0.0, 1e-8 * relax});
  CVector phi(2 * n);
  for (int j = 0; j < n; ++j) {
    const double t = g.t[j] * 2.0 * kPi;
    phi(2 * j) = std::cos(t) + 0.5;
    phi(2 * j + 1) = cplx(0.3, std::sin(2.0 * t));
  }
  suite.push_back({"jump_relation", jump_relation_residual(0.0, 1.0, g, phi).max(), 0.0, 1e-4 * relax});

  const DiracRepresentation rep2 = build_dirac_matrices(2);
  double conf = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double th = u(rng) * kPi;
    const double nu[2] = {std::cos(th), std::sin(th)};
    // d = -4: (tau, lambda) on the circle of radius sqrt(eta^2 + 4)
    const double eta = u(rng), phi = u(rng) * kPi, r = std::sqrt(eta * eta + 4.0);
    const InteractionStrengths sc{eta, r * std::cos(phi), r * std::sin(phi), 1.0};
    conf = std::max(conf, confinement_identity_residual(transmission_data(sc, rep2, nu)));
    const InteractionStrengths sg{u(rng), u(rng), u(rng), 1.0};
    if (std::abs(sg.d() + 4.0) > 1e-3) conf = std::max(conf, confinement_identity_residual(transmission_data(sg, rep2, nu)));
  }
  suite.push_back({"confinement_identities", conf, 0.0, 1e-12 * relax});

  double zz_lo = 1e300, zz_hi = 0.0;
  const std::vector<Vec2> samples = {Vec2(1.5, 0.5), Vec2(-1.0, 1.2), Vec2(0.4, -1.3)};
  for (int p = 3; p <= 5; ++p) {
    const double r1 = zigzag_kernel_check(rep2, 1.0, cplx(0.1, -0.2), p, samples, 1e-3);
    const double r2 = zigzag_kernel_check(rep2, 1.0, cplx(0.1, -0.2), p, samples, 5e-4);
    zz_lo = std::min(zz_lo, r1 / r2);
    zz_hi = std::max(zz_hi, r1 / r2);
  }
  suite.push_back({"zigzag_ratio_min", zz_lo, 3.5, 4.5});
  suite.push_back({"zigzag_ratio_max", zz_hi, 3.5, 4.5});

  json r = header(c);
  json items = json::array();
  bool all = true;
  for (const auto& e : suite) {
    const bool pass = std::isfinite(e.value) && e.value >= e.lo && e.value <= e.hi;
    all = all && pass;
    items.push_back({{"name", e.name}, {"value", e.value}, {"lower", e.lo}, {"upper", e.hi}, {"pass", pass}});
  }
  r["n"] = n;
  r["suite"] = items;
  r["all_pass"] = all;
  if (c.format != "json") throw DomainError("verify supports --format json only");
  emit(c, r, out);
  return all ? ok : verification_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dirac operators with delta-shell interactions"};
  app.require_subcommand(1);
  CLI::Option* q_opt = nullptr;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--eta", c.eta, "electrostatic strength");
    sub->add_option("--tau", c.tau, "Lorentz scalar strength");
    sub->add_option("--lambda", c.lambda, "anomalous magnetic strength");
    sub->add_option("--m", c.m, "mass")->check(CLI::NonNegativeNumber);
    auto* qo = sub->add_option("--q", c.q, "space dimension")->check(CLI::Range(1, 3));
    if (sub->get_name() == "spec1d") q_opt = qo;
    sub->add_option("--curve", c.curve, "circle:r=R | ellipse:a=A,b=B | kite | star:eps=E,k=K");
    sub->add_option("--N", c.n, "quadrature nodes (even)");
    sub->add_option("--zgrid", c.zgrid, "scan points in the gap")->check(CLI::PositiveNumber);
    sub->add_option("--tol-bs", c.tol_bs, "sigma_min acceptance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-conv", c.tol_conv, "N-doubling acceptance (relative to m)")->check(CLI::PositiveNumber);
    sub->add_option("--tol-jump", c.tol_jump, "jump residual acceptance")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--quick", c.quick, "small grid, tolerances x100");
    sub->add_flag("--verify-only", c.verify_only, "oracle residuals only");
    sub->add_flag("--corrupt-representation", c.corrupt_representation)->group("");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"classify", "regime, confinement flags and sufficient self-adjointness conditions"},
      {"spec1d", "discrete spectrum of the point interaction on the line"},
      {"spec2d", "Birman-Schwinger eigenvalue search for a closed curve"},
      {"verify", "oracle residual suite; exit 1 when a check fails"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&c, name] { c.command = name; });
  }

  std::vector<const char*> argv{"dirac_shell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (c.command == "spec1d" && (!q_opt || q_opt->count() == 0)) c.q = 1;
    if (c.n < 4 || c.n % 2) throw DomainError("N must be even and at least 4");
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "spec1d") return cmd_spec1d(c, out);
    if (c.command == "spec2d") return cmd_spec2d(c, out);
    return cmd_verify(c, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace dshell::cli
