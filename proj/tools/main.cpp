// Command-line front end: degrade / deblur / eval / bench / phantom.
// Exit codes: 0 ok, 1 runtime or per-case failure, 2 usage or validation
// error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deblur/config.hpp"
#include "deblur/degrade.hpp"
#include "deblur/image_io.hpp"
#include "deblur/metrics.hpp"
#include "deblur/solver.hpp"

namespace {

using namespace deblur;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void require_readable(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw CLI::ValidationError("input file does not exist: " + path);
  }
}

// Option layering: explicit flag wins, then config file, then default.
struct Layered {
  const KeyValueConfig* file = nullptr;

  std::string str(const CLI::Option* opt, const std::string& cli_value,
                  const std::string& key, const std::string& fallback) const {
    if (opt->count() > 0) return cli_value;
    if (file && file->has(key)) return file->get(key);
    return fallback;
  }
  double num(const CLI::Option* opt, double cli_value, const std::string& key,
             double fallback) const {
    if (opt->count() > 0) return cli_value;
    if (file && file->has(key)) return file->get_double(key);
    return fallback;
  }
  long long integer(const CLI::Option* opt, long long cli_value,
                    const std::string& key, long long fallback) const {
    if (opt->count() > 0) return cli_value;
    if (file && file->has(key)) return file->get_int(key);
    return fallback;
  }
  bool flag(const CLI::Option* opt, bool cli_value, const std::string& key,
            bool fallback) const {
    if (opt->count() > 0) return cli_value;
    if (file && file->has(key)) return file->get_bool(key);
    return fallback;
  }
  bool provided(const CLI::Option* opt, const std::string& key) const {
    return opt->count() > 0 || (file && file->has(key));
  }
};

PreSmooth parse_pre(const std::string& text) {
  PreSmooth pre;
  if (text == "none" || text.empty()) return pre;
  if (text.rfind("gaussian:", 0) == 0) {
    const std::string rest = text.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--pre wants gaussian:size:spread");
    }
    pre.kind = PreSmoothKind::Gaussian;
    pre.size = std::stoi(rest.substr(0, colon));
    pre.spread = std::stod(rest.substr(colon + 1));
    return pre;
  }
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    require_readable(path);
    pre.kind = PreSmoothKind::External;
    pre.external = load_image(path);
    return pre;
  }
  throw CLI::ValidationError("--pre wants none, gaussian:size:spread or file:path");
}

std::string pre_to_string(const PreSmooth& pre, const std::string& raw) {
  switch (pre.kind) {
    case PreSmoothKind::None: return "none";
    case PreSmoothKind::Gaussian:
      return "gaussian:" + std::to_string(pre.size) + ":" + fmt6(pre.spread);
    case PreSmoothKind::External: return raw;
  }
  return "none";
}

// ---------------------------------------------------------------- degrade

struct DegradeArgs {
  std::string input, output, kernel, config_path, sidecar;
  double sigma = 0.0;
  long long seed = 0;
  CLI::Option *kernel_opt, *sigma_opt, *seed_opt;
};

int run_degrade(const DegradeArgs& a) {
  KeyValueConfig file;
  Layered lay;
  if (!a.config_path.empty()) {
    file = KeyValueConfig::load(a.config_path);
    lay.file = &file;
  }
  const std::string kernel_text = lay.str(a.kernel_opt, a.kernel, "kernel", "");
  if (kernel_text.empty()) {
    throw CLI::ValidationError("--kernel is required (or 'kernel' in --config)");
  }
  DegradeSpec spec;
  spec.blur = parse_blur_spec(kernel_text);
  spec.noise_sigma = lay.num(a.sigma_opt, a.sigma, "sigma", 0.0);
  spec.seed = static_cast<std::uint64_t>(lay.integer(a.seed_opt, a.seed, "seed", 0));
  if (spec.noise_sigma < 0.0) {
    throw CLI::ValidationError("--sigma must be >= 0");
  }
  make_blur_kernel(spec.blur);  // validates sizes before any compute
  require_readable(a.input);

  const Image clean = load_image(a.input);
  const Image degraded = degrade(clean, spec);
  save_image(degraded, a.output);

  KeyValueConfig sidecar;
  sidecar.set("command", std::string("degrade"));
  sidecar.set("input", a.input);
  sidecar.set("output", a.output);
  sidecar.set("kernel", to_string(spec.blur));
  sidecar.set("sigma", spec.noise_sigma);
  sidecar.set("seed", static_cast<long long>(spec.seed));
  const std::string sidecar_path =
      a.sidecar.empty() ? a.output + ".meta" : a.sidecar;
  sidecar.save(sidecar_path);

  std::cout << "degraded " << a.input << " -> " << a.output << " ("
            << to_string(spec.blur) << ", sigma " << fmt6(spec.noise_sigma)
            << ", seed " << spec.seed << ")\n";
  return 0;
}

// ----------------------------------------------------------------- deblur

struct DeblurArgs {
  std::string input, output, kernel, config_path, sidecar, history, schedule, pre;
  double sigma = 0.0, mu = 0.0, tau = 0.0, beta = 0.0;
  double alpha1 = 1.0, alpha2 = 1.0, theta1 = 0.5, theta2 = 0.5;
  double g_spread = 1.0, eta = 1.0, rho1 = 0.1, rho2 = 0.1, tol = 5e-5;
  long long g_size = 5, max_iter = 500, refresh_every = 1;
  bool no_refresh = false, verbose = false;
  CLI::Option *kernel_opt, *sigma_opt, *schedule_opt, *mu_opt, *tau_opt,
      *beta_opt, *alpha1_opt, *alpha2_opt, *theta1_opt, *theta2_opt,
      *g_size_opt, *g_spread_opt, *eta_opt, *rho1_opt, *rho2_opt, *tol_opt,
      *max_iter_opt, *refresh_every_opt, *no_refresh_opt, *pre_opt;
};

int run_deblur(const DeblurArgs& a) {
  KeyValueConfig file;
  Layered lay;
  if (!a.config_path.empty()) {
    file = KeyValueConfig::load(a.config_path);
    lay.file = &file;
  }
  const std::string kernel_text = lay.str(a.kernel_opt, a.kernel, "kernel", "");
  if (kernel_text.empty()) {
    throw CLI::ValidationError("--kernel is required (non-blind restoration)");
  }
  const BlurSpec blur = parse_blur_spec(kernel_text);
  const Kernel kern = make_blur_kernel(blur);

  SolverConfig cfg;
  const double sigma = lay.num(a.sigma_opt, a.sigma, "sigma", 0.0);
  std::string schedule = lay.str(a.schedule_opt, a.schedule, "schedule", "auto");
  const bool explicit_given = lay.provided(a.mu_opt, "mu") ||
                              lay.provided(a.tau_opt, "tau") ||
                              lay.provided(a.beta_opt, "beta");
  if (schedule == "explicit" || (schedule == "auto" && explicit_given)) {
    schedule = "explicit";
    if (!lay.provided(a.mu_opt, "mu") || !lay.provided(a.tau_opt, "tau") ||
        !lay.provided(a.beta_opt, "beta")) {
      throw CLI::ValidationError("explicit schedule wants --mu, --tau and --beta");
    }
    cfg.mu = lay.num(a.mu_opt, a.mu, "mu", 0.0);
    cfg.weights.tau = lay.num(a.tau_opt, a.tau, "tau", 0.0);
    cfg.beta = lay.num(a.beta_opt, a.beta, "beta", 0.0);
  } else if (schedule == "auto") {
    if (!(sigma > 0.0)) {
      throw CLI::ValidationError(
          "schedule auto wants --sigma > 0; otherwise pass explicit --mu/--tau/--beta");
    }
    const ScheduleParams p = param_schedule(blur.kind, sigma);
    cfg.mu = p.mu;
    cfg.weights.tau = p.tau;
    cfg.beta = p.beta;
  } else {
    throw CLI::ValidationError("--schedule wants auto or explicit");
  }

  cfg.weights.alpha1 = lay.num(a.alpha1_opt, a.alpha1, "alpha1", cfg.weights.alpha1);
  cfg.weights.alpha2 = lay.num(a.alpha2_opt, a.alpha2, "alpha2", cfg.weights.alpha2);
  cfg.weights.theta1 = lay.num(a.theta1_opt, a.theta1, "theta1", cfg.weights.theta1);
  cfg.weights.theta2 = lay.num(a.theta2_opt, a.theta2, "theta2", cfg.weights.theta2);
  cfg.weights.g_size = static_cast<int>(lay.integer(a.g_size_opt, a.g_size, "g_size", cfg.weights.g_size));
  cfg.weights.g_spread = lay.num(a.g_spread_opt, a.g_spread, "g_spread", cfg.weights.g_spread);
  cfg.eta = lay.num(a.eta_opt, a.eta, "eta", cfg.eta);
  cfg.rho1 = lay.num(a.rho1_opt, a.rho1, "rho1", cfg.rho1);
  cfg.rho2 = lay.num(a.rho2_opt, a.rho2, "rho2", cfg.rho2);
  cfg.tol = lay.num(a.tol_opt, a.tol, "tol", cfg.tol);
  cfg.max_iter = static_cast<int>(lay.integer(a.max_iter_opt, a.max_iter, "max_iter", cfg.max_iter));
  cfg.refresh_every = static_cast<int>(lay.integer(
      a.refresh_every_opt, a.refresh_every, "refresh_every", cfg.refresh_every));
  cfg.refresh_weights = !lay.flag(a.no_refresh_opt, a.no_refresh, "no_refresh", false);
  cfg.verbose = a.verbose;
  const std::string pre_text = lay.str(a.pre_opt, a.pre, "pre", "none");
  cfg.pre = parse_pre(pre_text);

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(e.what());
  }
  require_readable(a.input);
  const Image observed = load_image(a.input);

  std::cout << "schedule " << schedule << ": mu " << fmt6(cfg.mu) << ", tau "
            << fmt6(cfg.weights.tau) << ", beta " << fmt6(cfg.beta) << "\n";

  const SolveResult result = solve(observed, kern, cfg);
  save_image(result.restored, a.output);

  for (std::size_t c = 0; c < result.channels.size(); ++c) {
    const ChannelResult& cr = result.channels[c];
    const HistoryRow& last = cr.history.back();
    std::cout << "channel " << c << ": " << cr.iterations << " iterations, "
              << (cr.converged ? "converged" : "max_iter reached")
              << ", final primal residual " << fmt6(last.primal_residual)
              << "\n";
  }

  if (!a.history.empty()) {
    std::ofstream hist(a.history);
    if (!hist) throw std::runtime_error("unwritable path: " + a.history);
    write_history_csv(hist, result);
  }

  KeyValueConfig sidecar;
  sidecar.set("command", std::string("deblur"));
  sidecar.set("input", a.input);
  sidecar.set("output", a.output);
  sidecar.set("kernel", to_string(blur));
  sidecar.set("schedule", schedule);
  if (sigma > 0.0) sidecar.set("sigma", sigma);
  sidecar.set("mu", cfg.mu);
  sidecar.set("tau", cfg.weights.tau);
  sidecar.set("beta", cfg.beta);
  sidecar.set("alpha1", cfg.weights.alpha1);
  sidecar.set("alpha2", cfg.weights.alpha2);
  sidecar.set("theta1", cfg.weights.theta1);
  sidecar.set("theta2", cfg.weights.theta2);
  sidecar.set("g_size", static_cast<long long>(cfg.weights.g_size));
  sidecar.set("g_spread", cfg.weights.g_spread);
  sidecar.set("eta", cfg.eta);
  sidecar.set("rho1", cfg.rho1);
  sidecar.set("rho2", cfg.rho2);
  sidecar.set("tol", cfg.tol);
  sidecar.set("max_iter", static_cast<long long>(cfg.max_iter));
  sidecar.set("refresh_weights", std::string(cfg.refresh_weights ? "true" : "false"));
  sidecar.set("refresh_every", static_cast<long long>(cfg.refresh_every));
  sidecar.set("pre", pre_to_string(cfg.pre, pre_text));
  if (!a.history.empty()) sidecar.set("history", a.history);
  const std::string sidecar_path =
      a.sidecar.empty() ? a.output + ".meta" : a.sidecar;
  sidecar.save(sidecar_path);
  return 0;
}

// ------------------------------------------------------------------- eval

struct EvalArgs {
  std::string reference, test, csv, image_label, method = "-", kernel_label = "-";
  double sigma = 0.0;
};

void append_eval_csv(const std::string& path, const std::string& image,
                     const std::string& method, const std::string& kernel,
                     double sigma, const QualityReport& q) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("unwritable path: " + path);
  if (fresh) out << "image,method,kernel,sigma,psnr,ssim,mse\n";
  out << image << ',' << method << ',' << kernel << ',' << fmt(sigma) << ','
      << fmt(q.psnr) << ',' << fmt(q.ssim) << ',' << fmt(q.mse) << '\n';
}

int run_eval(const EvalArgs& a) {
  require_readable(a.reference);
  require_readable(a.test);
  const Image ref = load_image(a.reference);
  const Image test = load_image(a.test);
  const QualityReport q = evaluate(ref, test);
  std::cout << "psnr " << fmt6(q.psnr) << " dB  ssim " << fmt6(q.ssim)
            << "  mse " << fmt6(q.mse) << "\n";
  for (std::size_t c = 0; c < q.psnr_per_channel.size(); ++c) {
    std::cout << "  channel " << c << ": psnr " << fmt6(q.psnr_per_channel[c])
              << "  ssim " << fmt6(q.ssim_per_channel[c]) << "  mse "
              << fmt6(q.mse_per_channel[c]) << "\n";
  }
  if (!a.csv.empty()) {
    const std::string image = a.image_label.empty() ? a.test : a.image_label;
    append_eval_csv(a.csv, image, a.method, a.kernel_label, a.sigma, q);
  }
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchCase {
  std::string image;
  std::string kernel;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

std::vector<BenchCase> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("unreadable manifest: " + path);
  std::vector<BenchCase> cases;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    BenchCase c;
    if (!(row >> c.image)) continue;  // blank line
    if (!(row >> c.kernel >> c.sigma)) {
      throw std::runtime_error("manifest line " + std::to_string(lineno) +
                               ": expected <image> <kernel> <sigma> [seed]");
    }
    long long seed = 1000 + static_cast<long long>(cases.size());
    row >> seed;
    c.seed = static_cast<std::uint64_t>(seed);
    cases.push_back(c);
  }
  if (cases.empty()) {
    throw std::runtime_error("manifest has no cases: " + path);
  }
  return cases;
}

struct BenchArgs {
  std::string manifest, out, config_path;
};

int run_bench(const BenchArgs& a) {
  const std::vector<BenchCase> cases = parse_manifest(a.manifest);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("unwritable path: " + a.out);
  out << "image,kernel,sigma,seed,degraded_psnr,degraded_ssim,restored_psnr,"
         "restored_ssim,psnr_gain,ssim_gain,iterations,converged,status\n";

  int failures = 0;
  int ok_count = 0;
  double sum_dp = 0, sum_ds = 0, sum_rp = 0, sum_rs = 0;
  for (const BenchCase& c : cases) {
    try {
      const Image clean = load_image(c.image);
      DegradeSpec spec;
      spec.blur = parse_blur_spec(c.kernel);
      spec.noise_sigma = c.sigma;
      spec.seed = c.seed;
      const Kernel kern = make_blur_kernel(spec.blur);
      const Image degraded = degrade(clean, spec);
      const QualityReport before = evaluate(clean, degraded);

      SolverConfig cfg;
      if (!a.config_path.empty()) {
        // Solver overrides shared by every case (alpha1=..., eta=..., ...).
        const KeyValueConfig file = KeyValueConfig::load(a.config_path);
        if (file.has("alpha1")) cfg.weights.alpha1 = file.get_double("alpha1");
        if (file.has("alpha2")) cfg.weights.alpha2 = file.get_double("alpha2");
        if (file.has("theta1")) cfg.weights.theta1 = file.get_double("theta1");
        if (file.has("theta2")) cfg.weights.theta2 = file.get_double("theta2");
        if (file.has("g_size")) cfg.weights.g_size = static_cast<int>(file.get_int("g_size"));
        if (file.has("g_spread")) cfg.weights.g_spread = file.get_double("g_spread");
        if (file.has("eta")) cfg.eta = file.get_double("eta");
        if (file.has("rho1")) cfg.rho1 = file.get_double("rho1");
        if (file.has("rho2")) cfg.rho2 = file.get_double("rho2");
        if (file.has("tol")) cfg.tol = file.get_double("tol");
        if (file.has("max_iter")) cfg.max_iter = static_cast<int>(file.get_int("max_iter"));
      }
      const ScheduleParams p = param_schedule(spec.blur.kind, c.sigma);
      cfg.mu = p.mu;
      cfg.weights.tau = p.tau;
      cfg.beta = p.beta;
      cfg.validate();

      const SolveResult result = solve(degraded, kern, cfg);
      const QualityReport after = evaluate(clean, result.restored);
      int iters = 0;
      bool converged = true;
      for (const ChannelResult& cr : result.channels) {
        iters = std::max(iters, cr.iterations);
        converged = converged && cr.converged;
      }
      out << c.image << ',' << c.kernel << ',' << fmt(c.sigma) << ',' << c.seed
          << ',' << fmt(before.psnr) << ',' << fmt(before.ssim) << ','
          << fmt(after.psnr) << ',' << fmt(after.ssim) << ','
          << fmt(after.psnr - before.psnr) << ',' << fmt(after.ssim - before.ssim)
          << ',' << iters << ',' << (converged ? "true" : "false") << ",ok\n";
      sum_dp += before.psnr;
      sum_ds += before.ssim;
      sum_rp += after.psnr;
      sum_rs += after.ssim;
      ++ok_count;
    } catch (const std::exception& e) {
      ++failures;
      std::string message = e.what();
      for (char& ch : message) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << c.image << ',' << c.kernel << ',' << fmt(c.sigma) << ',' << c.seed
          << ",-,-,-,-,-,-,-,-,failed: " << message << '\n';
      std::cerr << "case failed (" << c.image << "): " << e.what() << "\n";
    }
  }
  if (ok_count > 0) {
    const double n = ok_count;
    out << "average,-,-,-," << fmt(sum_dp / n) << ',' << fmt(sum_ds / n) << ','
        << fmt(sum_rp / n) << ',' << fmt(sum_rs / n) << ','
        << fmt((sum_rp - sum_dp) / n) << ',' << fmt((sum_rs - sum_ds) / n)
        << ",-,-,ok\n";
  }
  std::cout << "bench: " << ok_count << " ok, " << failures << " failed -> "
            << a.out << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-adaptive hybrid TV/Tikhonov image deblurring"};
  app.require_subcommand(1);

  DegradeArgs dg;
  CLI::App* degrade_cmd =
      app.add_subcommand("degrade", "Blur an image and add seeded noise");
  degrade_cmd->add_option("input", dg.input, "clean input image (PGM/PPM)")->required();
  degrade_cmd->add_option("output", dg.output, "degraded output image")->required();
  dg.kernel_opt = degrade_cmd->add_option(
      "--kernel", dg.kernel, "gaussian:size:spread | motion:length:angle | average:size");
  dg.sigma_opt = degrade_cmd->add_option("--sigma", dg.sigma,
                                         "noise standard deviation (0-255 scale)");
  dg.seed_opt = degrade_cmd->add_option("--seed", dg.seed, "noise seed");
  degrade_cmd->add_option("--config", dg.config_path, "key=value config file");
  degrade_cmd->add_option("--sidecar", dg.sidecar,
                          "where to record the spec (default <output>.meta)");

  DeblurArgs db;
  CLI::App* deblur_cmd =
      app.add_subcommand("deblur", "Restore a degraded image (non-blind)");
  deblur_cmd->add_option("input", db.input, "degraded input image")->required();
  deblur_cmd->add_option("output", db.output, "restored output image")->required();
  db.kernel_opt = deblur_cmd->add_option("--kernel", db.kernel, "blur kernel spec");
  db.sigma_opt = deblur_cmd->add_option("--sigma", db.sigma,
                                        "noise level for the auto schedule");
  db.schedule_opt = deblur_cmd->add_option("--schedule", db.schedule, "auto | explicit");
  db.mu_opt = deblur_cmd->add_option("--mu", db.mu, "fidelity weight (explicit schedule)");
  db.tau_opt = deblur_cmd->add_option("--tau", db.tau, "edge threshold (explicit schedule)");
  db.beta_opt = deblur_cmd->add_option("--beta", db.beta, "penalty (explicit schedule)");
  db.alpha1_opt = deblur_cmd->add_option("--alpha1", db.alpha1, "base TV weight");
  db.alpha2_opt = deblur_cmd->add_option("--alpha2", db.alpha2, "base quadratic weight");
  db.theta1_opt = deblur_cmd->add_option("--theta1", db.theta1, "TV scaling on smooth pixels");
  db.theta2_opt = deblur_cmd->add_option("--theta2", db.theta2,
                                         "quadratic scaling on smooth pixels");
  db.g_size_opt = deblur_cmd->add_option("--g-size", db.g_size, "edge-smoothing Gaussian size");
  db.g_spread_opt = deblur_cmd->add_option("--g-spread", db.g_spread,
                                           "edge-smoothing Gaussian spread");
  db.eta_opt = deblur_cmd->add_option("--eta", db.eta, "multiplier step length");
  db.rho1_opt = deblur_cmd->add_option("--rho1", db.rho1, "proximal scalar (image step)");
  db.rho2_opt = deblur_cmd->add_option("--rho2", db.rho2, "proximal scalar (split step)");
  db.tol_opt = deblur_cmd->add_option("--tol", db.tol, "termination tolerance");
  db.max_iter_opt = deblur_cmd->add_option("--max-iter", db.max_iter, "iteration cap");
  db.refresh_every_opt = deblur_cmd->add_option("--refresh-every", db.refresh_every,
                                                "edge-weight refresh cadence");
  db.no_refresh_opt = deblur_cmd->add_flag("--no-refresh", db.no_refresh,
                                           "freeze edge weights after the first map");
  db.pre_opt = deblur_cmd->add_option(
      "--pre", db.pre, "pre-denoising: none | gaussian:size:spread | file:path");
  deblur_cmd->add_option("--history", db.history, "per-iteration CSV path");
  deblur_cmd->add_option("--config", db.config_path, "key=value config file");
  deblur_cmd->add_option("--sidecar", db.sidecar,
                         "effective-config record (default <output>.meta)");
  deblur_cmd->add_flag("--verbose", db.verbose, "log every iteration");

  EvalArgs ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "PSNR/SSIM/MSE between two images");
  eval_cmd->add_option("reference", ev.reference, "reference image")->required();
  eval_cmd->add_option("test", ev.test, "image under test")->required();
  eval_cmd->add_option("--csv", ev.csv, "append a CSV row here");
  eval_cmd->add_option("--image", ev.image_label, "CSV image label (default: test path)");
  eval_cmd->add_option("--method", ev.method, "CSV method label");
  eval_cmd->add_option("--kernel", ev.kernel_label, "CSV kernel label");
  eval_cmd->add_option("--sigma", ev.sigma, "CSV sigma label");

  BenchArgs bn;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Degrade, restore and evaluate a manifest of cases");
  bench_cmd->add_option("--manifest", bn.manifest,
                        "lines: <image> <kernel> <sigma> [seed]")->required();
  bench_cmd->add_option("--out", bn.out, "result CSV path")->required();
  bench_cmd->add_option("--config", bn.config_path, "solver overrides for every case");

  std::string ph_out;
  long long ph_size = 256;
  CLI::App* phantom_cmd =
      app.add_subcommand("phantom", "Write the built-in head phantom test image");
  phantom_cmd->add_option("output", ph_out, "output image (PGM)")->required();
  phantom_cmd->add_option("--size", ph_size, "side length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (degrade_cmd->parsed()) return run_degrade(dg);
    if (deblur_cmd->parsed()) return run_deblur(db);
    if (eval_cmd->parsed()) return run_eval(ev);
    if (bench_cmd->parsed()) return run_bench(bn);
    if (phantom_cmd->parsed()) {
      save_image(shepp_logan_phantom(static_cast<int>(ph_size)), ph_out);
      std::cout << "phantom " << ph_size << "x" << ph_size << " -> " << ph_out
                << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
