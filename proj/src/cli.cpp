#include "beltrami/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "beltrami/elliptic.hpp"
#include "beltrami/estimators.hpp"
#include "beltrami/factorization.hpp"
#include "beltrami/field_io.hpp"
#include "beltrami/neumann.hpp"

namespace beltrami::cli {

namespace {

struct ConfigError : Error {
  using Error::Error;
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw FormatError("spec key '" + key + "' expects a number, got '" + value + "'");
  }
}

constexpr const char* kCatalog =
    "Built-in coefficient families (radial, supported in the unit disk):\n"
    "  gp       --p P        rho(t) = log(e+1/t)^(-p/2) loglog(e+1/t)^(-1/2); e^K in L^s for s < p\n"
    "  alpha    --alpha A [--lambda-re X --lambda-im Y]\n"
    "                        gamma(t) = (A - log(5/t))/(A + log(5/t)), motion rho_lambda\n"
    "  stretch  --gamma G    constant dilatation G, rho(t) = t^((1+G)/(1-G)); G = 0 gives mu = 0\n"
    "  file     --spec FILE with 'file = mu.cf1'   coefficient read from a CF1 field\n";

void emit_svg(const RunConfig& config, const ReportTable& table, const std::string& name,
              const std::string& x, const std::vector<std::string>& ys, bool log_x, bool log_y) {
  if (!config.plot) return;
  write_file_atomic(config.out / (name + ".svg"), table.to_svg(x, ys, log_x, log_y, name));
}

int finish(const ReportTable& table, std::ostream& out, std::ostream& err, const std::string& name) {
  if (auto row = table.first_failure()) {
    err << name << ": inequality failed at row " << *row << '\n';
    return 1;
  }
  if (!table.failures().empty()) {
    err << name << ": " << table.failures().front() << '\n';
    return 1;
  }
  out << name << ": PASS\n";
  return 0;
}

double oracle_error(const PrincipalSolution& sol, double gamma) {
  const double a = (1 + gamma) / (1 - gamma);
  const Grid& g = sol.displacement.grid();
  double num = 0, den = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    complex z = g.point(k);
    double r = std::abs(z);
    if (!(r > 0.1 && r < 0.9)) continue;
    complex exact = z * std::pow(r, a - 1);
    num += std::norm(z + sol.displacement[k] - exact);
    den += std::norm(exact);
  }
  return std::sqrt(num / den);
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  BeltramiCoefficient mu = coefficient_for(c);
  SpectralPlan plan(mu.grid());
  PrincipalSolution sol = solve(mu, plan, c.n_terms);
  write_cf1(c.out / "displacement.cf1", sol.displacement);
  write_cf1(c.out / "fz.cf1", sol.fz);
  write_cf1(c.out / "fzbar.cf1", sol.fzbar);
  write_cf1(c.out / "jacobian.cf1", to_complex(sol.jacobian));
  ReportTable summary({"terms", "residual", "nonconvergent", "truncation_bound", "oracle_error"});
  double oracle = c.spec.family == "stretch" ? oracle_error(sol, c.spec.gamma.value_or(0.0))
                                             : std::numeric_limits<double>::quiet_NaN();
  summary.add_row({static_cast<double>(sol.terms), sol.residual, sol.nonconvergent ? 1.0 : 0.0,
                   truncation_bound(mu.sup_norm(), sol.terms), oracle});
  summary.note("family", c.spec.family);
  summary.write_csv(c.out / "summary.csv");
  out << "solve: terms=" << sol.terms << " residual=" << format_number(sol.residual)
      << " nonconvergent=" << sol.nonconvergent;
  if (!std::isnan(oracle)) out << " oracle_error=" << format_number(oracle);
  out << '\n';
  if (sol.nonconvergent && c.strict) {
    err << "solve: series failed to decrease over 8 consecutive terms\n";
    return 3;
  }
  return 0;
}

int cmd_decay(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::string method = c.method.empty() ? (is_radial(c.spec) ? "radial" : "grid") : c.method;
  std::vector<double> norms;
  bool nonconvergent = false;
  if (method == "radial") {
    if (!is_radial(c.spec)) throw ConfigError("--method radial needs a radial family");
    norms = radial_neumann_norms(profile_for(c.spec), c.n_terms + 1);
  } else if (method == "grid") {
    BeltramiCoefficient mu = coefficient_for(c);
    SpectralPlan plan(mu.grid());
    NeumannRun run(mu, plan);
    while (run.terms_computed() <= c.n_terms) run.advance(plan);
    norms = run.norms();
    nonconvergent = run.nonconvergent();
  } else {
    throw ConfigError("--method must be grid or radial");
  }
  ReportTable table = decay_report(norms, c.beta);
  table.note("method", method);
  table.write_csv(c.out / "decay.csv");
  emit_svg(c, table, "decay", "n", {"norm", "envelope"}, false, true);
  out << "decay: dhat=" << *table.note_value("dhat") << '\n';
  if (nonconvergent && c.strict) {
    err << "decay: series failed to decrease over 8 consecutive terms\n";
    return 3;
  }
  return finish(table, out, err, "decay");
}

int sharpness_exit(bool grows, const RunConfig& c, std::ostream& out, std::ostream& err,
                   const std::string& name) {
  out << name << ": growth at beta >= p " << (grows ? "observed" : "not observed") << '\n';
  if (c.strict_sharpness && !grows) {
    err << name << ": expected divergence at beta = p was not observed\n";
    return 1;
  }
  return 0;
}

int cmd_area(const RunConfig& c, std::ostream& out, std::ostream& err) {
  RadialProfile profile = profile_for(c.spec);
  std::vector<double> radii;
  for (int k = 2; k <= 24; ++k) radii.push_back(std::pow(10.0, -0.5 * k));
  ReportTable table = area_distortion_curve(profile, radii, c.beta, c.p());
  table.write_csv(c.out / "area.csv");
  emit_svg(c, table, "area", "measure", {"image", "weighted"}, true, true);
  if (c.beta >= c.p()) return sharpness_exit(shows_growth(table.column("weighted")), c, out, err, "area");
  return finish(table, out, err, "area");
}

int cmd_regularity(const RunConfig& c, std::ostream& out, std::ostream& err) {
  RadialProfile profile = profile_for(c.spec);
  std::vector<double> eps;
  for (int k = 3; k <= 12; ++k) eps.push_back(std::pow(10.0, -k));
  ReportTable table = regularity_integrals(profile, c.beta, c.p(), eps);
  table.write_csv(c.out / "regularity.csv");
  emit_svg(c, table, "regularity", "eps", {"df_integral", "j_integral"}, true, true);
  if (c.beta >= c.p()) {
    bool grows = table.note_value("df_diverges") == "1" && table.note_value("j_diverges") == "1";
    return sharpness_exit(grows, c, out, err, "regularity");
  }
  return finish(table, out, err, "regularity");
}

int cmd_factorize(const RunConfig& c, std::ostream& out, std::ostream& err) {
  RunConfig gp = c;
  if (!c.spec.file) gp.spec.family = "gp";
  BeltramiCoefficient mu = coefficient_for(gp);
  double p = gp.p();
  double M = c.M.value_or(3.0 / p);
  if (!(M > 1)) throw ConfigError("--M must exceed 1");
  SplitResult split = hyperbolic_split(mu, M);
  ReportTable violations = split_violation_report(mu, split);
  ReportTable bound = exp_bound_check(split, p);
  violations.write_csv(c.out / "factorize.csv");
  bound.write_csv(c.out / "exp_bound.csv");
  int code = finish(violations, out, err, "factorize");
  int code2 = finish(bound, out, err, "exp_bound");
  return std::max(code, code2);
}

RealField real_part(const std::string& path) { return read_cf1(path).real(); }

int cmd_elliptic(const RunConfig& c, std::ostream& out, std::ostream& err) {
  bool any = c.a11 || c.a12 || c.a22 || c.u || c.v;
  bool all = c.a11 && c.a12 && c.a22 && c.u && c.v;
  if (any && !all) throw ConfigError("elliptic-check needs all of --a11 --a12 --a22 --u --v");
  std::optional<MatrixField> A;
  std::optional<RealField> u, v;
  if (all) {
    A.emplace(real_part(*c.a11), real_part(*c.a12), real_part(*c.a22));
    u.emplace(real_part(*c.u));
    v.emplace(real_part(*c.v));
  } else {
    // Manufactured pair for A = diag(K, 1/K): u = x, v = K y.
    const double K = 4.0;
    Grid g(c.grid_n, c.grid_L);
    A.emplace(MatrixField::constant(g, {K, 0.0, 1.0 / K}));
    u.emplace(RealField::from_function(g, [](complex z) { return z.real(); }));
    v.emplace(RealField::from_function(g, [K](complex z) { return K * z.imag(); }));
  }
  ReportTable table = conjugate_relation_check(*u, *v, *A);
  RegionMask disk = RegionMask::disk(u->grid(), 1.0);
  Gradient gu = gradient(*u), gv = gradient(*v);
  std::vector<double> J(u->size());
  for (std::size_t k = 0; k < J.size(); ++k) J[k] = gu.dx[k] * gv.dy[k] - gu.dy[k] * gv.dx[k];
  table.note("energy_unit_disk", energy(*u, *A, disk));
  table.note("jacobian_unit_disk", integrate(RealField(u->grid(), std::move(J)), disk));
  table.write_csv(c.out / "elliptic.csv");
  return finish(table, out, err, "elliptic-check");
}

}  // namespace

CoefficientSpec parse_spec(const std::string& text) {
  CoefficientSpec spec;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw FormatError("spec line " + std::to_string(number) + " is not 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "family") {
      if (value != "gp" && value != "alpha" && value != "stretch" && value != "file")
        throw FormatError("unknown family '" + value + "'");
      spec.family = value;
    } else if (key == "p") {
      spec.p = to_double(key, value);
    } else if (key == "alpha") {
      spec.alpha = to_double(key, value);
    } else if (key == "lambda_re") {
      spec.lambda_re = to_double(key, value);
    } else if (key == "lambda_im") {
      spec.lambda_im = to_double(key, value);
    } else if (key == "gamma") {
      spec.gamma = to_double(key, value);
    } else if (key == "file") {
      spec.file = value;
    } else if (key == "grid_n") {
      double n = to_double(key, value);
      if (!(n >= 1) || n != std::floor(n)) throw FormatError("grid_n must be a positive integer");
      spec.grid_n = static_cast<std::size_t>(n);
    } else if (key == "grid_L") {
      spec.grid_L = to_double(key, value);
    } else {
      throw FormatError("unknown spec key '" + key + "'");
    }
  }
  if (spec.family == "file" && !spec.file) throw FormatError("family = file needs a file key");
  return spec;
}

CoefficientSpec read_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open spec " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

double RunConfig::p() const {
  if (spec.p) return *spec.p;
  if (spec.family == "alpha") return 2.0 * spec.alpha.value_or(0.4);
  return 1.0;
}

complex RunConfig::lambda() const {
  return {spec.lambda_re.value_or(1.0), spec.lambda_im.value_or(0.0)};
}

bool is_radial(const CoefficientSpec& spec) { return spec.family != "file"; }

RadialProfile profile_for(const CoefficientSpec& spec) {
  if (spec.family == "gp") return gp_profile(spec.p.value_or(1.0));
  if (spec.family == "alpha")
    return alpha_profile(spec.alpha.value_or(0.4),
                         {spec.lambda_re.value_or(1.0), spec.lambda_im.value_or(0.0)});
  if (spec.family == "stretch") return stretch_profile(spec.gamma.value_or(0.0));
  throw ConfigError("family '" + spec.family + "' has no radial profile");
}

BeltramiCoefficient coefficient_for(const RunConfig& config) {
  if (config.spec.family == "file") {
    ComplexField mu = read_cf1(*config.spec.file);
    return BeltramiCoefficient(std::move(mu));
  }
  Grid grid(config.grid_n, config.grid_L);
  return radial_to_coefficient(profile_for(config.spec), grid);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degenerate Beltrami equation solver and estimate checker", "beltrami"};
  app.require_subcommand(1, 1);

  std::string family, spec_path, out_dir = ".", method;
  double p = 0, alpha = 0, gamma = 0, lambda_re = 0, lambda_im = 0, L = 0, beta = 1.5, M = 0;
  std::size_t n = 0;
  int terms = 64;
  std::uint64_t seed = 1;
  bool plot = false, strict = false, strict_sharpness = false;
  std::string a11, a12, a22, u, v;

  struct Bound {
    CLI::App* app;
    std::map<std::string, CLI::Option*> opts;
  };
  std::vector<Bound> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    Bound b{app.add_subcommand(name, help), {}};
    auto& o = b.opts;
    o["family"] = b.app->add_option("--family", family, "gp | alpha | stretch | file");
    o["spec"] = b.app->add_option("--spec", spec_path, "coefficient spec file (key = value)");
    o["p"] = b.app->add_option("--p", p, "exponent p");
    o["alpha"] = b.app->add_option("--alpha", alpha, "alpha family parameter");
    o["gamma"] = b.app->add_option("--gamma", gamma, "constant dilatation of the stretch family");
    o["lambda-re"] = b.app->add_option("--lambda-re", lambda_re, "Re lambda (alpha family)");
    o["lambda-im"] = b.app->add_option("--lambda-im", lambda_im, "Im lambda (alpha family)");
    o["n"] = b.app->add_option("--n", n, "samples per axis (power of two, 64..4096)");
    o["L"] = b.app->add_option("--L", L, "half width of the square");
    o["terms"] = b.app->add_option("--terms", terms, "number of series terms");
    o["beta"] = b.app->add_option("--beta", beta, "exponent beta");
    o["M"] = b.app->add_option("--M", M, "distortion budget of the split (default 3/p)");
    o["out"] = b.app->add_option("--out", out_dir, "output directory");
    o["method"] = b.app->add_option("--method", method, "decay: grid | radial");
    b.app->add_option("--seed", seed, "seed for randomized checks");
    b.app->add_flag("--plot", plot, "also write SVG plots");
    b.app->add_flag("--strict", strict, "exit 3 when the series does not converge");
    b.app->add_flag("--strict-sharpness", strict_sharpness,
                    "at beta >= p, require the divergence predicted by sharpness");
    b.app->add_option("--a11", a11, "elliptic-check: CF1 file of a11");
    b.app->add_option("--a12", a12, "elliptic-check: CF1 file of a12");
    b.app->add_option("--a22", a22, "elliptic-check: CF1 file of a22");
    b.app->add_option("--u", u, "elliptic-check: CF1 file of u");
    b.app->add_option("--v", v, "elliptic-check: CF1 file of v");
    subs.push_back(b);
  };
  add("solve", "sum the Neumann series and write the principal solution");
  add("decay", "term norms and the decay envelope");
  add("area", "area distortion curve of a radial family");
  add("regularity", "regularity integrals of a radial family");
  add("factorize", "hyperbolic split of a coefficient and its identities");
  add("elliptic-check", "matrix to Beltrami reduction on a conjugate pair");
  add("examples", "print the built-in family catalog");

  if (args.empty()) {
    err << app.help();
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    const Bound* chosen = nullptr;
    for (const auto& b : subs)
      if (b.app->parsed()) chosen = &b;
    RunConfig c;
    c.subcommand = chosen->app->get_name();
    if (c.subcommand == "examples") {
      out << kCatalog;
      return 0;
    }
    auto given = [&](const char* key) { return chosen->opts.at(key)->count() > 0; };
    if (given("spec")) c.spec = read_spec(spec_path);
    if (given("family")) {
      if (family != "gp" && family != "alpha" && family != "stretch" && family != "file")
        throw ConfigError("unknown family '" + family + "'");
      if (family == "file" && !c.spec.file) throw ConfigError("family file needs --spec with a file key");
      c.spec.family = family;
    }
    if (given("p")) c.spec.p = p;
    if (given("alpha")) c.spec.alpha = alpha;
    if (given("gamma")) c.spec.gamma = gamma;
    if (given("lambda-re")) c.spec.lambda_re = lambda_re;
    if (given("lambda-im")) c.spec.lambda_im = lambda_im;
    if (c.spec.grid_n) c.grid_n = *c.spec.grid_n;
    if (c.spec.grid_L) c.grid_L = *c.spec.grid_L;
    if (given("n")) c.grid_n = n;
    if (given("L")) c.grid_L = L;
    if (c.grid_n < 64 || c.grid_n > 4096 || (c.grid_n & (c.grid_n - 1)))
      throw ConfigError("--n must be a power of two in [64, 4096]");
    if (terms < 1) throw ConfigError("--terms must be positive");
    if (!(beta > 0)) throw ConfigError("--beta must be positive");
    if (c.spec.p && !(*c.spec.p > 0)) throw ConfigError("--p must be positive");
    c.n_terms = terms;
    c.beta = beta;
    if (given("M")) c.M = M;
    c.out = out_dir;
    c.plot = plot;
    c.seed = seed;
    c.strict = strict;
    c.strict_sharpness = strict_sharpness;
    c.method = method;
    if (!a11.empty()) c.a11 = a11;
    if (!a12.empty()) c.a12 = a12;
    if (!a22.empty()) c.a22 = a22;
    if (!u.empty()) c.u = u;
    if (!v.empty()) c.v = v;
    std::filesystem::create_directories(c.out);

    if (c.subcommand == "solve") return cmd_solve(c, out, err);
    if (c.subcommand == "decay") return cmd_decay(c, out, err);
    if (c.subcommand == "area") return cmd_area(c, out, err);
    if (c.subcommand == "regularity") return cmd_regularity(c, out, err);
    if (c.subcommand == "factorize") return cmd_factorize(c, out, err);
    return cmd_elliptic(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace beltrami::cli
