// hylab: experiments and checks for the twisted Young trilinear form.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hylab/lab.hpp"
#include "hylab/report.hpp"

namespace {

using namespace hylab;

using Settings = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Lines of key=value; '#' starts a comment. Keys may carry leading dashes.
Settings read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  Settings s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    std::replace(key.begin(), key.end(), '_', '-');
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("--" + key + ": not a number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--" + key + ": empty list");
  return out;
}

double parse_double(const std::string& text, const std::string& key) {
  const auto v = parse_doubles(text, key);
  if (v.size() != 1) throw std::invalid_argument("--" + key + ": expected a single number");
  return v[0];
}

std::int64_t parse_int(const std::string& text, const std::string& key) {
  const double v = parse_double(text, key);
  if (v != std::floor(v)) throw std::invalid_argument("--" + key + ": expected an integer");
  return static_cast<std::int64_t>(v);
}

struct Command {
  explicit Command(CLI::App* a) : app(a) {}

  CLI::App* app;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void add(const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }

  /// Config file entries, overridden by flags given on the command line.
  Settings merged() const {
    Settings s;
    if (!config_path.empty()) s = read_config(config_path);
    for (const auto& [k, v] : s) {
      if (!options.count(k) && k != "config") throw std::invalid_argument("config: unknown key " + k);
    }
    for (const auto& [k, opt] : options) {
      if (opt->count() > 0) s[k] = values.at(k);
    }
    return s;
  }
};

void add_common(Command& c) {
  c.app->add_option("--config", c.config_path, "key=value file; command-line flags take precedence");
  c.add("p", "exponents a,b,c with 1/a + 1/b + 1/c = 2");
  c.add("d", "half the dimension of the x variable");
  c.add("gh-nodes", "Gauss-Hermite nodes per axis");
  c.add("mc-samples", "Monte Carlo samples");
  c.add("seed", "random seed");
  c.add("out", "output path (default stdout)");
  c.add("format", "csv or json");
  c.add("tol", "relative tolerance of the distance optimizer");
  c.add("threads", "worker threads");
  c.add("restarts", "distance optimizer restarts");
  c.add("evaluations", "distance optimizer evaluations per restart");
}

ExperimentConfig make_config(const Settings& s) {
  ExperimentConfig c;
  auto has = [&](const char* k) { return s.count(k) > 0; };
  if (has("p")) {
    const auto p = parse_doubles(s.at("p"), "p");
    if (p.size() != 3) throw std::invalid_argument("--p: expected three exponents");
    c.p = ExponentTriple(p[0], p[1], p[2]);
  }
  if (has("d")) c.d = static_cast<int>(parse_int(s.at("d"), "d"));
  if (has("gh-nodes")) c.gh_nodes = static_cast<int>(parse_int(s.at("gh-nodes"), "gh-nodes"));
  if (has("mc-samples")) c.mc_samples = parse_int(s.at("mc-samples"), "mc-samples");
  if (has("seed")) c.seed = static_cast<std::uint64_t>(parse_int(s.at("seed"), "seed"));
  if (has("tol")) c.tol = parse_double(s.at("tol"), "tol");
  if (has("threads")) c.threads = static_cast<int>(parse_int(s.at("threads"), "threads"));
  if (has("restarts")) c.distance_restarts = static_cast<int>(parse_int(s.at("restarts"), "restarts"));
  if (has("evaluations")) c.distance_evaluations = static_cast<int>(parse_int(s.at("evaluations"), "evaluations"));
  if (has("grid")) c.lambda_grid = parse_doubles(s.at("grid"), "grid");
  if (has("eps-grid")) c.eps_grid = parse_doubles(s.at("eps-grid"), "eps-grid");
  if (has("mode-alpha")) {
    c.mode_alpha.clear();
    for (double a : parse_doubles(s.at("mode-alpha"), "mode-alpha")) c.mode_alpha.push_back(static_cast<int>(a));
  }
  if (has("mode-amplitude")) c.mode_amplitude = parse_double(s.at("mode-amplitude"), "mode-amplitude");
  if (has("young-corpus")) c.young_corpus = static_cast<int>(parse_int(s.at("young-corpus"), "young-corpus"));
  if (has("young-samples")) c.young_samples = parse_int(s.at("young-samples"), "young-samples");
  if (c.d != 1 && !has("mode-alpha")) {
    c.mode_alpha = MultiIndex(2 * c.d + 1, 0);
    c.mode_alpha[0] = 3;
  }
  c.validate();
  return c;
}

std::string output_format(const Settings& s) {
  const std::string f = s.count("format") ? s.at("format") : "csv";
  if (f != "csv" && f != "json") throw std::invalid_argument("--format must be csv or json");
  return f;
}

void emit(const Settings& s, const std::string& text) {
  if (s.count("out") && !s.at("out").empty()) {
    std::ofstream out(s.at("out"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + s.at("out"));
    out << text;
  } else {
    std::cout << text;
  }
}

int run_verify(const Settings& s) {
  const ExperimentConfig c = make_config(s);
  const VerifyReport r = verify_suite(c);
  emit(s, output_format(s) == "json" ? verify_json(r, c) : verify_csv(r));
  for (const auto& ch : r.checks) std::cerr << (ch.pass ? "PASS " : "FAIL ") << ch.name << "\n";
  return r.failures();
}

int run_lambda(const Settings& s) {
  const ExperimentConfig c = make_config(s);
  const ExperimentTable t = lambda_family_experiment(c);
  emit(s, output_format(s) == "json" ? table_json(t, c) : table_csv(t));
  int failures = 0;
  for (const auto& r : t.rows) failures += r.deficit > 0.0 ? 0 : 1;
  return failures;
}

int run_fit(const Settings& s) {
  const ExperimentConfig c = make_config(s);
  const ExponentFit f = exponent_fit_experiment(c);
  emit(s, output_format(s) == "json" ? fit_json(f, c) : fit_csv(f));
  std::cerr << "slope " << format_double(f.slope) << " r_squared " << format_double(f.r_squared)
            << (f.degenerate ? " (degenerate fit)" : "") << "\n";
  const bool ok = !f.degenerate && f.slope >= 1.8 && f.slope <= 2.2 && f.r_squared >= 0.99;
  return ok ? 0 : 1;
}

int run_deficit(const Settings& s) {
  const ExperimentConfig c = make_config(s);
  const double lambda = s.count("lambda") ? parse_double(s.at("lambda"), "lambda") : 1.0;
  const double a = s.count("a-scale") ? parse_double(s.at("a-scale"), "a-scale") : 1.0;
  const double b = s.count("b") ? parse_double(s.at("b"), "b") : 0.0;
  const std::string method = s.count("method") ? s.at("method") : "mc";
  if (method != "mc" && method != "gh") throw std::invalid_argument("--method must be mc or gh");
  const int n = 2 * c.d + 1;
  QuadratureScheme scheme = method == "mc" ? QuadratureScheme::monte_carlo(c.mc_samples, c.seed)
                                           : QuadratureScheme::gauss_hermite(c.gh_nodes);
  scheme.threads = c.threads;
  const GaussTriple f = lambda_family(c.p, lambda, c.d);
  const AttachedParams params{a * Mat::Identity(n - 1, n - 1), b};
  const PhiResult ph = phi_hybrid(f, c.p, params, scheme, c.gh_nodes);
  const DeficitResult dr = deficit_from_phi(ph.value, ph.error, c.p, n);
  const std::vector<Field> rec{{"lambda", lambda},
                               {"a_scale", a},
                               {"b", b},
                               {"method", std::string(method_name(ph.trilinear.method))},
                               {"phi", ph.value},
                               {"phi_err", ph.error},
                               {"optimal", dr.optimal},
                               {"deficit", dr.deficit},
                               {"deficit_err", dr.error},
                               {"young_violation", dr.young_violation}};
  emit(s, output_format(s) == "json" ? record_json(rec, c) : record_csv(rec));
  return dr.young_violation ? 1 : 0;
}

int run_distance(const Settings& s) {
  const ExperimentConfig c = make_config(s);
  DistanceConfig dc;
  dc.restarts = c.distance_restarts;
  dc.max_evaluations = c.distance_evaluations;
  dc.seed = c.seed;
  dc.ftol = c.tol;
  GaussTriple f;
  AttachedParams params = AttachedParams::identity(c.d);
  std::vector<Field> rec;
  if (s.count("eps")) {
    const double eps = parse_double(s.at("eps"), "eps");
    f = mode_perturbation(c.p, c.mode_alpha, eps * c.mode_amplitude);
    params = AttachedParams::euclidean(c.d);
    rec.push_back({"eps", eps});
  } else {
    const double lambda = s.count("lambda") ? parse_double(s.at("lambda"), "lambda") : 1.0;
    f = lambda_family(c.p, lambda, c.d);
    dc.hints.push_back(lambda_family_hint(c.p, lambda, c.d));
    rec.push_back({"lambda", lambda});
  }
  const DistanceReport r = orbit_distance_upper(f, params, c.p, dc);
  rec.push_back({"dist_upper", r.upper_bound});
  rec.push_back({"max_norm_sq", r.breakdown.max_norm_sq});
  rec.push_back({"mjm_sq", r.breakdown.mjm_sq});
  rec.push_back({"twist_mjm_sq", r.breakdown.twist_mjm_sq});
  rec.push_back({"quadrature_gap", r.quadrature_gap});
  rec.push_back({"converged", r.converged});
  rec.push_back({"evaluations", static_cast<std::int64_t>(r.evaluations)});
  emit(s, output_format(s) == "json" ? record_json(rec, c) : record_csv(rec));
  return std::isfinite(r.upper_bound) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the sharp Young inequality on twisted Heisenberg-type groups"};
  app.require_subcommand(1);

  Command verify{app.add_subcommand("verify", "run the named property checks")};
  add_common(verify);
  verify.add("young-corpus", "random triples in the Young-bound check");
  verify.add("young-samples", "Monte Carlo samples per Young-bound triple");

  Command lambda{app.add_subcommand("lambda", "deficit and distance along the lambda family")};
  add_common(lambda);
  lambda.add("grid", "comma-separated lambda values in [1, 100]");

  Command fit{app.add_subcommand("exponent-fit", "fit log deficit against log distance")};
  add_common(fit);
  fit.add("eps-grid", "comma-separated perturbation sizes in [0.005, 0.05]");
  fit.add("mode-alpha", "multi-index of the Hermite perturbation, total degree 3");
  fit.add("mode-amplitude", "amplitude multiplying each eps");

  Command def{app.add_subcommand("deficit", "deficit of a lambda-family triple at A = a Id and twist b")};
  add_common(def);
  def.add("lambda", "family parameter (default 1)");
  def.add("a-scale", "A = a-scale * Id (default 1)");
  def.add("b", "twist (default 0)");
  def.add("method", "mc or gh (default mc)");

  Command dist{app.add_subcommand("distance", "orbit distance upper bound")};
  add_common(dist);
  dist.add("lambda", "lambda-family input (default 1)");
  dist.add("eps", "mode-perturbation input at A = 0 instead of the lambda family");
  dist.add("mode-alpha", "multi-index of the Hermite perturbation");
  dist.add("mode-amplitude", "amplitude multiplying eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (verify.app->parsed()) return run_verify(verify.merged());
    if (lambda.app->parsed()) return run_lambda(lambda.merged());
    if (fit.app->parsed()) return run_fit(fit.merged());
    if (def.app->parsed()) return run_deficit(def.merged());
    if (dist.app->parsed()) return run_distance(dist.merged());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 100;
  }
  return 0;
}
