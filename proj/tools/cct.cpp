// Command-line front end: multiplier tables, injectivity verdicts,
// verification suites, and one-off transform evaluations.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <tuple>

#include "cct/suites.hpp"

namespace {

using cct::Complex;
using cct::MultiIndex;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<Complex> parse_lambda(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad lambda: " + tok);
    out.emplace_back(v, 0.0);
  }
  if (out.empty()) throw std::invalid_argument("empty lambda");
  return out;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int k = std::stoi(text);
    return {k, k};
  }
  const int lo = std::stoi(text.substr(0, dots));
  const int hi = std::stoi(text.substr(dots + 2));
  return {lo, hi};
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

cct::Matrix read_matrix(const std::string& path, int rows, int cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  cct::Matrix x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(in >> x(i, j)))
        throw std::runtime_error("matrix file too short: " + path);
  return x;
}

std::string fmt_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int cmd_mu(int n, int m, const std::string& k_spec,
           const std::vector<std::string>& lambda_specs,
           const std::string& out_path) {
  const auto [k_lo, k_hi] = parse_k_range(k_spec);
  if (k_lo > k_hi || k_lo < 0)
    throw std::invalid_argument("empty or negative k range");
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);

  std::vector<std::string> header;
  for (int j = 1; j <= m; ++j) header.push_back("lambda_" + std::to_string(j));
  header.insert(header.end(), {"k", "kind", "value_re", "value_im", "order"});
  os << cct::csv_row(header);

  for (const auto& spec : lambda_specs) {
    std::vector<Complex> comps = parse_lambda(spec);
    if (static_cast<int>(comps.size()) == 1 && m > 1)
      comps.assign(static_cast<std::size_t>(m), comps[0]);
    if (static_cast<int>(comps.size()) != m)
      throw std::invalid_argument("lambda has wrong arity: " + spec);
    const MultiIndex lambda(comps);
    for (int k = k_lo; k <= k_hi; ++k) {
      const cct::TaggedValue mu = cct::multiplier_mu(lambda, k, n);
      std::vector<std::string> row;
      for (int j = 0; j < m; ++j) row.push_back(fmt_number(lambda[j].real()));
      row.push_back(std::to_string(k));
      row.push_back(mu.is_finite() ? "finite" : (mu.is_zero() ? "zero" : "pole"));
      row.push_back(fmt_number(mu.is_finite() ? mu.value.real() : 0.0));
      row.push_back(fmt_number(mu.is_finite() ? mu.value.imag() : 0.0));
      row.push_back(std::to_string(mu.order));
      os << cct::csv_row(row);
    }
  }
  return kExitPass;
}

int cmd_classify(int n, int m, const std::string& lambda_spec,
                 const std::string& out_path) {
  std::vector<Complex> comps = parse_lambda(lambda_spec);
  if (static_cast<int>(comps.size()) == 1 && m > 1)
    comps.assign(static_cast<std::size_t>(m), comps[0]);
  if (static_cast<int>(comps.size()) != m)
    throw std::invalid_argument("lambda has wrong arity");
  const MultiIndex lambda(comps);
  const cct::InjectivityVerdict v = cct::injectivity_classify(lambda, n);

  nlohmann::json j;
  j["n"] = n;
  j["m"] = m;
  nlohmann::json lam = nlohmann::json::array();
  for (int i = 0; i < m; ++i)
    lam.push_back({lambda[i].real(), lambda[i].imag()});
  j["lambda"] = lam;
  j["applicable"] = v.applicable;
  j["injective"] = v.injective;
  j["known"] = v.known;
  j["reason"] = cct::InjectivityVerdict::reason_name(v.reason);
  j["annihilated_degrees"] = v.annihilated_degrees;
  j["note"] = v.note;

  std::ofstream file;
  open_out(file, out_path) << j.dump(2) << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& suite, const cct::SuiteOptions& opts,
               const std::string& out_path) {
  if (!cct::is_suite_name(suite))
    throw std::invalid_argument("unknown suite: " + suite);
  const cct::SuiteReport report = cct::run_suite(suite, opts);
  std::ofstream file;
  open_out(file, out_path) << cct::to_json(report).dump(2) << "\n";
  for (const auto& c : report.cases)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  return report.all_pass() ? kExitPass : kExitFail;
}

int cmd_transform(const std::string& f_spec, const std::string& lambda_spec,
                  int n, int m, const std::string& u_path,
                  const cct::SuiteOptions& opts, bool force,
                  const std::string& out_path) {
  std::vector<Complex> comps = parse_lambda(lambda_spec);
  if (static_cast<int>(comps.size()) == 1 && m > 1)
    comps.assign(static_cast<std::size_t>(m), comps[0]);
  const MultiIndex lambda(comps);
  if (!cct::in_L_set(lambda) && !force)
    throw std::invalid_argument(
        "lambda outside the convergence set (use --force to override)");

  cct::AngleFunction f;
  std::optional<cct::HPolynomial> poly;
  if (f_spec == "one") {
    f = cct::AngleFunction::one();
  } else if (f_spec.rfind("hpoly:", 0) == 0) {
    poly = cct::make_h_polynomial(n, m, std::stoi(f_spec.substr(6)));
    f.evaluator = [&poly](const cct::StiefelFrame& v) {
      return poly->eval(v);
    };
    f.invariance = poly->k() % 2 == 0 ? cct::Invariance::RightOm
                                      : cct::Invariance::RightSOm;
  } else if (f_spec.rfind("file:", 0) == 0) {
    // Each row "i j c_re c_im" contributes c * (vv')_{ij}; the sum is a
    // right-O(m)-invariant linear functional of the projector.
    std::ifstream in(f_spec.substr(5));
    if (!in)
      throw std::invalid_argument("cannot open f table: " + f_spec.substr(5));
    auto terms = std::make_shared<std::vector<std::tuple<int, int, Complex>>>();
    int i, j;
    double re, im;
    while (in >> i >> j >> re >> im) {
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("f table index out of range");
      terms->emplace_back(i, j, Complex(re, im));
    }
    if (terms->empty()) throw std::invalid_argument("empty f table");
    f = cct::AngleFunction::from_projector(
        [terms](const cct::Matrix& p) {
          Complex acc = 0.0;
          for (const auto& [a, b, c] : *terms) acc += c * p(a, b);
          return acc;
        });
  } else {
    throw std::invalid_argument("f spec must be one | hpoly:k | file:path");
  }

  cct::RngStream frame_rng(opts.seed, 7000001);
  const cct::StiefelFrame u =
      u_path.empty() ? cct::sample_stiefel(n, m, frame_rng)
                     : cct::StiefelFrame(read_matrix(u_path, n, m));

  cct::McOptions mc;
  mc.samples = opts.samples > 0 ? opts.samples : 100000;
  mc.partitions = opts.partitions;
  mc.seed = opts.seed;
  const cct::McEstimate est = cct::cosine_transform(f, lambda, u, mc, force);

  nlohmann::json j;
  j["value"] = {est.value.real(), est.value.imag()};
  j["stderr"] = est.stderr_;
  j["samples"] = est.samples;
  j["skipped_fraction"] = est.skipped_fraction();
  std::ofstream file;
  open_out(file, out_path) << j.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composite cosine transforms on Stiefel manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config");

  std::uint64_t seed = 42;
  long long samples = 0;
  int partitions = 8;
  std::string out_path;
  bool force = false;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--samples", samples, "Monte Carlo sample count (0 = default)");
  app.add_option("--partitions", partitions, "deterministic stream partitions")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_flag("--force", force, "override convergence-domain checks");

  int n = 0, m = 0;
  std::string k_spec, lambda_spec, suite, f_spec = "one", u_path;
  std::vector<std::string> lambda_specs;

  CLI::App* mu = app.add_subcommand("mu", "multiplier table as CSV");
  mu->add_option("--n", n)->required();
  mu->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  mu->add_option("--k", k_spec, "degree or range a..b")->required();
  mu->add_option("--lambda", lambda_specs, "comma-separated components")
      ->required();

  CLI::App* classify = app.add_subcommand("classify", "injectivity verdict");
  classify->add_option("--n", n)->required();
  classify->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  classify->add_option("--lambda", lambda_spec)->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite)->required();

  CLI::App* transform =
      app.add_subcommand("transform", "evaluate a cosine transform");
  transform->add_option("--f", f_spec, "one | hpoly:k | file:path");
  transform->add_option("--lambda", lambda_spec)->required();
  transform->add_option("--n", n)->required();
  transform->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  transform->add_option("--u", u_path, "frame file (whitespace n x m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (mu->parsed()) return cmd_mu(n, m, k_spec, lambda_specs, out_path);
    if (classify->parsed()) return cmd_classify(n, m, lambda_spec, out_path);
    if (verify->parsed()) {
      cct::SuiteOptions opts;
      opts.seed = seed;
      opts.samples = samples;
      opts.partitions = partitions;
      return cmd_verify(suite, opts, out_path);
    }
    if (transform->parsed()) {
      cct::SuiteOptions opts;
      opts.seed = seed;
      opts.samples = samples;
      opts.partitions = partitions;
      return cmd_transform(f_spec, lambda_spec, n, m, u_path, opts, force,
                           out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cct::ConvergenceDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
