#include "deblur/solver.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace deblur {

Vec2 shrink_isotropic(Vec2 t, double alpha, double beta) {
  const double mag = std::hypot(t.x, t.y);
  if (mag == 0.0) return {0.0, 0.0};
  const double factor = 1.0 - alpha / (beta * mag);
  if (factor <= 0.0) return {0.0, 0.0};
  return {factor * t.x, factor * t.y};
}

void SolverConfig::validate() const {
  constexpr double kEtaMax = 1.6180339887498949;  // (1+sqrt(5))/2
  if (!(mu > 0.0)) throw std::invalid_argument("solver: mu must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("solver: beta must be > 0");
  if (!(eta > 0.0 && eta < kEtaMax)) {
    throw std::invalid_argument("solver: eta must lie in (0, (1+sqrt(5))/2)");
  }
  if (!(rho1 > 0.0)) throw std::invalid_argument("solver: rho1 must be > 0");
  if (!(rho2 > 0.0)) throw std::invalid_argument("solver: rho2 must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  if (refresh_every < 1) {
    throw std::invalid_argument("solver: refresh_every must be >= 1");
  }
  if (pre.kind == PreSmoothKind::Gaussian) {
    if (pre.size < 1 || pre.size % 2 == 0) {
      throw std::invalid_argument("solver: pre-smoothing size must be odd");
    }
    if (!(pre.spread > 0.0)) {
      throw std::invalid_argument("solver: pre-smoothing spread must be > 0");
    }
  }
  weights.validate();
}

double objective_terms(const GradientField& grad_u, const Image& w1,
                       const Image& w2, const Image& residual, double mu) {
  double tv = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < w1.data.size(); ++i) {
    const double gx = grad_u.gx.data[i];
    const double gy = grad_u.gy.data[i];
    const double m2 = gx * gx + gy * gy;
    tv += w1.data[i] * std::sqrt(m2);
    quad += w2.data[i] * m2;
  }
  double fid = 0.0;
  for (double r : residual.data) fid += r * r;
  return tv + 0.5 * quad + 0.5 * mu * fid;
}

double objective(const Image& u, const Image& f, const Kernel& a,
                 const Image& w1, const Image& w2, double mu) {
  Image conv = convolve_periodic(u, a);
  Image residual(u.height, u.width, 1);
  for (std::size_t i = 0; i < residual.data.size(); ++i) {
    residual.data[i] = conv.data[i] - f.data[i];
  }
  return objective_terms(grad(u), w1, w2, residual, mu);
}

Image update_u(const Image& u_prev, const GradientField& k,
               const GradientField& lambda, const Spectrum& f_hat,
               const Spectrum& a_hat, const std::vector<double>& lap,
               double mu, double beta, double rho1, Fft2D& fft) {
  const int h = u_prev.height, w = u_prev.width;
  // div^T term of the normal equation: -div(lambda + beta*k).
  GradientField coupled(h, w);
  for (std::size_t i = 0; i < coupled.gx.data.size(); ++i) {
    coupled.gx.data[i] = lambda.gx.data[i] + beta * k.gx.data[i];
    coupled.gy.data[i] = lambda.gy.data[i] + beta * k.gy.data[i];
  }
  Image neg_div = div(coupled);
  for (double& v : neg_div.data) v = -v;

  Spectrum rhs = fft.forward(neg_div);
  Spectrum u_prev_hat = fft.forward(u_prev);
  for (std::size_t i = 0; i < rhs.data.size(); ++i) {
    const std::complex<double> ah = a_hat.data[i];
    const std::complex<double> numer =
        mu * std::conj(ah) * f_hat.data[i] + rhs.data[i] +
        rho1 * u_prev_hat.data[i];
    const double denom = mu * std::norm(ah) + beta * lap[i] + rho1;
    rhs.data[i] = numer / denom;
  }
  return fft.inverse_real(rhs);
}

GradientField update_k(const GradientField& grad_u,
                       const GradientField& k_prev,
                       const GradientField& lambda, const Image& w1,
                       const Image& w2, double beta, double rho2) {
  const int h = grad_u.height(), w = grad_u.width();
  GradientField k(h, w);
  for (std::size_t i = 0; i < k.gx.data.size(); ++i) {
    const double denom = beta + 2.0 * w2.data[i] + rho2;
    const Vec2 t{(beta * grad_u.gx.data[i] - lambda.gx.data[i] +
                  rho2 * k_prev.gx.data[i]) /
                     denom,
                 (beta * grad_u.gy.data[i] - lambda.gy.data[i] +
                  rho2 * k_prev.gy.data[i]) /
                     denom};
    const Vec2 z = shrink_isotropic(t, w1.data[i], denom);
    k.gx.data[i] = z.x;
    k.gy.data[i] = z.y;
  }
  return k;
}

void update_lambda(GradientField& lambda, const GradientField& k,
                   const GradientField& grad_u, double eta, double beta) {
  const double step = eta * beta;
  for (std::size_t i = 0; i < lambda.gx.data.size(); ++i) {
    lambda.gx.data[i] += step * (k.gx.data[i] - grad_u.gx.data[i]);
    lambda.gy.data[i] += step * (k.gy.data[i] - grad_u.gy.data[i]);
  }
}

TerminationCheck check_termination(const Image& u, const Image& u_prev,
                                   const GradientField& k,
                                   const GradientField& grad_u, double norm_f,
                                   double norm_grad_f, double tol) {
  double du = 0.0;
  for (std::size_t i = 0; i < u.data.size(); ++i) {
    const double d = u.data[i] - u_prev.data[i];
    du += d * d;
  }
  double dp = 0.0;
  for (std::size_t i = 0; i < k.gx.data.size(); ++i) {
    const double dx = k.gx.data[i] - grad_u.gx.data[i];
    const double dy = k.gy.data[i] - grad_u.gy.data[i];
    dp += dx * dx + dy * dy;
  }
  TerminationCheck tc;
  tc.rel_u_change = std::sqrt(du) / (norm_f > 0.0 ? norm_f : 1.0);
  tc.rel_primal = std::sqrt(dp) / (norm_grad_f > 0.0 ? norm_grad_f : 1.0);
  tc.stop = std::min(tc.rel_u_change, tc.rel_primal) <= tol;
  return tc;
}

bool terminated(const SolverState& s, const Image& f, const SolverConfig& cfg) {
  if (s.iter >= cfg.max_iter) return true;
  if (s.iter < 1) return false;
  const double norm_f = norm2(f);
  const double norm_grad_f = norm2(grad(f));
  return check_termination(s.u, s.u_prev, s.k, grad(s.u), norm_f, norm_grad_f,
                           cfg.tol)
      .stop;
}

SchedulePolynomials default_schedule(KernelKind kind) {
  // A single calibrated fit so far; the kind hook stays for per-kind fits.
  (void)kind;
  return SchedulePolynomials{};
}

ScheduleParams eval_schedule(const SchedulePolynomials& poly, double sigma) {
  auto eval = [sigma](const std::array<double, 3>& c) {
    return c[0] + c[1] * sigma + c[2] * sigma * sigma;
  };
  return {eval(poly.mu), eval(poly.tau), eval(poly.beta)};
}

ScheduleParams param_schedule(KernelKind kind, double sigma) {
  if (!(sigma > 0.0 && sigma <= 100.0)) {
    throw std::domain_error("param_schedule: sigma must lie in (0,100]");
  }
  return eval_schedule(default_schedule(kind), sigma);
}

namespace {

void check_finite(bool ok, int iter, const char* step) {
  if (!ok) {
    throw std::runtime_error("solver: non-finite values at iteration " +
                             std::to_string(iter) + " in " + step);
  }
}

ChannelResult solve_channel(const Image& f_in, const Kernel& a,
                            const SolverConfig& cfg,
                            const Image* pre_denoised) {
  Image f = f_in;
  if (cfg.pre.kind == PreSmoothKind::Gaussian) {
    f = convolve_periodic(f, gaussian_kernel(cfg.pre.size, cfg.pre.spread));
  } else if (cfg.pre.kind == PreSmoothKind::External) {
    f = *pre_denoised;
  }

  const int h = f.height, w = f.width;
  Fft2D fft(h, w);
  const Spectrum a_hat = kernel_spectrum(a, h, w);
  const Spectrum f_hat = fft.forward(f);
  const std::vector<double> lap = laplacian_spectrum(h, w);
  const Spectrum g_hat = kernel_spectrum(
      gaussian_kernel(cfg.weights.g_size, cfg.weights.g_spread), h, w);

  ChannelResult result;
  SolverState& s = result.state;
  s.u = Image(h, w, 1, 0.0);
  s.u_prev = s.u;
  s.k = GradientField(h, w);
  s.lambda = GradientField(h, w);
  s.norm_f = norm2(f);
  s.norm_grad_f = norm2(grad(f));

  std::vector<std::uint8_t> prev_branch;
  bool have_weights = false;

  for (int n = 1; n <= cfg.max_iter; ++n) {
    s.iter = n;

    long flips = 0;
    const bool refresh =
        !have_weights ||
        (cfg.refresh_weights && (n - 1) % cfg.refresh_every == 0);
    if (refresh) {
      // The first edge map comes from the observation; u^0 = 0 would score
      // every pixel as flat.
      const Image& basis = (n == 1) ? f : s.u;
      Image score = edge_matrix(grad(basis), g_hat, fft);
      auto maps = binarize_weights(score, cfg.weights);
      s.w1 = std::move(maps.first);
      s.w2 = std::move(maps.second);
      std::vector<std::uint8_t> branch(score.data.size());
      for (std::size_t i = 0; i < score.data.size(); ++i) {
        branch[i] = score.data[i] >= cfg.weights.tau ? 1 : 0;
      }
      if (!prev_branch.empty()) {
        for (std::size_t i = 0; i < branch.size(); ++i) {
          if (branch[i] != prev_branch[i]) ++flips;
        }
      }
      prev_branch = std::move(branch);
      have_weights = true;
    }

    Image u_new = update_u(s.u, s.k, s.lambda, f_hat, a_hat, lap, cfg.mu,
                           cfg.beta, cfg.rho1, fft);
    check_finite(u_new.all_finite(), n, "u-update");
    s.u_prev = std::move(s.u);
    s.u = std::move(u_new);

    const GradientField grad_u = grad(s.u);
    s.k = update_k(grad_u, s.k, s.lambda, s.w1, s.w2, cfg.beta, cfg.rho2);
    check_finite(s.k.all_finite(), n, "k-update");

    update_lambda(s.lambda, s.k, grad_u, cfg.eta, cfg.beta);
    check_finite(s.lambda.all_finite(), n, "multiplier-update");

    const TerminationCheck tc = check_termination(
        s.u, s.u_prev, s.k, grad_u, s.norm_f, s.norm_grad_f, cfg.tol);

    Image conv = apply_spectrum(s.u, a_hat, fft);
    for (std::size_t i = 0; i < conv.data.size(); ++i) {
      conv.data[i] -= f.data[i];
    }
    HistoryRow row;
    row.iter = n;
    row.primal_residual = tc.rel_primal * (s.norm_grad_f > 0.0 ? s.norm_grad_f : 1.0);
    row.rel_u_change = tc.rel_u_change;
    row.objective = objective_terms(grad_u, s.w1, s.w2, conv, cfg.mu);
    row.weights_flipped = flips;
    result.history.push_back(row);

    if (cfg.verbose) {
      std::cout << "iter " << n << "  primal " << row.primal_residual
                << "  rel_du " << row.rel_u_change << "  obj "
                << row.objective << "\n";
    }

    if (tc.stop) {
      result.converged = true;
      break;
    }
  }
  result.iterations = s.iter;
  s.history = result.history;
  return result;
}

}  // namespace

SolveResult solve(const Image& f, const Kernel& a, const SolverConfig& cfg) {
  cfg.validate();
  if (cfg.pre.kind == PreSmoothKind::External &&
      !cfg.pre.external.same_shape(f)) {
    throw std::invalid_argument("solver: external pre-denoised image shape mismatch");
  }

  SolveResult result;
  if (f.channels == 1) {
    const Image* pre =
        cfg.pre.kind == PreSmoothKind::External ? &cfg.pre.external : nullptr;
    ChannelResult cr = solve_channel(f, a, cfg, pre);
    result.restored = cr.state.u;
    result.channels.push_back(std::move(cr));
    return result;
  }

  const std::vector<Image> planes = split_channels(f);
  std::vector<Image> pre_planes;
  if (cfg.pre.kind == PreSmoothKind::External) {
    pre_planes = split_channels(cfg.pre.external);
  }
  std::vector<Image> restored_planes;
  for (std::size_t c = 0; c < planes.size(); ++c) {
    const Image* pre = pre_planes.empty() ? nullptr : &pre_planes[c];
    ChannelResult cr = solve_channel(planes[c], a, cfg, pre);
    restored_planes.push_back(cr.state.u);
    result.channels.push_back(std::move(cr));
  }
  result.restored = merge_channels(restored_planes);
  return result;
}

KktResiduals kkt_residuals(const SolverState& s, const Image& f,
                           const Kernel& a, double mu) {
  const int h = s.u.height, w = s.u.width;
  Fft2D fft(h, w);
  const Spectrum a_hat = kernel_spectrum(a, h, w);
  Spectrum adj_hat = a_hat;
  for (auto& v : adj_hat.data) v = std::conj(v);

  Image residual = apply_spectrum(s.u, a_hat, fft);
  for (std::size_t i = 0; i < residual.data.size(); ++i) {
    residual.data[i] -= f.data[i];
  }
  Image back = apply_spectrum(residual, adj_hat, fft);
  const Image div_lambda = div(s.lambda);

  KktResiduals r;
  double stat = 0.0;
  // Stationarity: mu*A^T(A(*)u - f) = -div(lambda) at a fixed point.
  for (std::size_t i = 0; i < back.data.size(); ++i) {
    const double v = mu * back.data[i] + div_lambda.data[i];
    stat += v * v;
  }
  r.stationarity = std::sqrt(stat);

  const GradientField grad_u = grad(s.u);
  double feas = 0.0;
  for (std::size_t i = 0; i < grad_u.gx.data.size(); ++i) {
    const double dx = grad_u.gx.data[i] - s.k.gx.data[i];
    const double dy = grad_u.gy.data[i] - s.k.gy.data[i];
    feas += dx * dx + dy * dy;
  }
  r.feasibility = std::sqrt(feas);

  // Distance of -lambda from the subgradient of the split term at k:
  // w1*k/|k| + 2*w2*k away from zero, the ball of radius w1 at zero.
  double sub = 0.0;
  for (std::size_t i = 0; i < s.k.gx.data.size(); ++i) {
    const double kx = s.k.gx.data[i], ky = s.k.gy.data[i];
    const double lx = s.lambda.gx.data[i], ly = s.lambda.gy.data[i];
    const double kmag = std::hypot(kx, ky);
    double d;
    if (kmag > 0.0) {
      const double gx = s.w1.data[i] * kx / kmag + 2.0 * s.w2.data[i] * kx;
      const double gy = s.w1.data[i] * ky / kmag + 2.0 * s.w2.data[i] * ky;
      d = std::hypot(lx + gx, ly + gy);
    } else {
      d = std::max(std::hypot(lx, ly) - s.w1.data[i], 0.0);
    }
    sub += d * d;
  }
  r.multiplier = std::sqrt(sub);
  return r;
}

ConvergenceReport convergence_report(const ChannelResult& run, const Image& f,
                                     const Kernel& a,
                                     const SolverConfig& cfg) {
  ConvergenceReport report;
  report.history = run.history;
  report.converged = run.converged;
  report.iterations = run.iterations;
  report.kkt = kkt_residuals(run.state, f, a, cfg.mu);
  return report;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_history_csv(std::ostream& out, const SolveResult& result) {
  out << "iter,primal_residual,rel_u_change,objective,weights_flipped\n";
  for (const ChannelResult& cr : result.channels) {
    for (const HistoryRow& row : cr.history) {
      out << row.iter << ',' << fmt_double(row.primal_residual) << ','
          << fmt_double(row.rel_u_change) << ',' << fmt_double(row.objective)
          << ',' << row.weights_flipped << '\n';
    }
  }
}

}  // namespace deblur
