#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "deblur/degrade.hpp"
#include "deblur/edge_weights.hpp"
#include "deblur/fft.hpp"
#include "deblur/image.hpp"
#include "deblur/operators.hpp"

namespace deblur {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// argmin_z alpha*|z| + beta/2*|z - t|^2 over R^2:
// z = (1 - alpha/(beta*|t|))_+ t, with 0/0 taken as 0.
Vec2 shrink_isotropic(Vec2 t, double alpha, double beta);

enum class PreSmoothKind { None, Gaussian, External };

// Optional pre-denoising applied to the observation before the loop; the
// External variant substitutes a caller-supplied pre-denoised image.
struct PreSmooth {
  PreSmoothKind kind = PreSmoothKind::None;
  int size = 5;
  double spread = 1.0;
  Image external;
};

struct SolverConfig {
  double mu = 2000.0;    // data fidelity weight
  double beta = 0.11815; // penalty on the gradient split
  double eta = 1.0;      // multiplier step length, in (0, (1+sqrt(5))/2)
  double rho1 = 0.1;     // proximal scalar of the image subproblem
  double rho2 = 0.1;     // proximal scalar of the split subproblem
  double tol = 5e-5;
  int max_iter = 500;
  WeightConfig weights;
  bool refresh_weights = true;  // recompute edge weights during iterations
  int refresh_every = 1;
  PreSmooth pre;
  bool verbose = false;

  void validate() const;  // throws std::invalid_argument
};

struct HistoryRow {
  int iter = 0;
  double primal_residual = 0.0;  // ||k - grad(u)||_2
  double rel_u_change = 0.0;     // ||u - u_prev||_2 / ||f||_2
  double objective = 0.0;
  long weights_flipped = 0;
};

struct SolverState {
  Image u;
  Image u_prev;
  GradientField k;       // auxiliary field constrained to equal grad(u)
  GradientField lambda;  // multiplier of that constraint
  Image w1, w2;          // weight maps in effect
  int iter = 0;
  std::vector<HistoryRow> history;
  double norm_f = 0.0;
  double norm_grad_f = 0.0;
};

struct ChannelResult {
  SolverState state;  // final iterate
  std::vector<HistoryRow> history;
  bool converged = false;
  int iterations = 0;
};

struct SolveResult {
  Image restored;
  std::vector<ChannelResult> channels;
};

// sum w1.*|grad u| + 1/2 sum w2.*|grad u|^2 + mu/2 ||A(*)u - f||^2, with the
// isotropic per-pixel gradient magnitude.
double objective(const Image& u, const Image& f, const Kernel& a,
                 const Image& w1, const Image& w2, double mu);

// Same value from precomputed pieces (residual = A(*)u - f).
double objective_terms(const GradientField& grad_u, const Image& w1,
                       const Image& w2, const Image& residual, double mu);

// Quadratic image step, solved exactly in the frequency domain:
//   u = F^-1[ (mu*conj(A^)*f^ + F(div^T) + rho1*u_prev^)
//             / (mu*|A^|^2 + beta*lap + rho1) ]
// where div^T = -div(lambda + beta*k) and lap = |Dx|^2 + |Dy|^2. The
// denominator is at least rho1 everywhere.
Image update_u(const Image& u_prev, const GradientField& k,
               const GradientField& lambda, const Spectrum& f_hat,
               const Spectrum& a_hat, const std::vector<double>& lap,
               double mu, double beta, double rho1, Fft2D& fft);

// Per-pixel prox step:
//   t = (beta*grad(u) - lambda + rho2*k_prev) / (beta + 2*w2 + rho2)
//   k = (1 - w1 / ((beta + 2*w2 + rho2)*|t|))_+ t
GradientField update_k(const GradientField& grad_u,
                       const GradientField& k_prev,
                       const GradientField& lambda, const Image& w1,
                       const Image& w2, double beta, double rho2);

// lambda += eta * beta * (k - grad(u))
void update_lambda(GradientField& lambda, const GradientField& k,
                   const GradientField& grad_u, double eta, double beta);

struct TerminationCheck {
  double rel_u_change = 0.0;
  double rel_primal = 0.0;
  bool stop = false;
};

// min{ ||u - u_prev|| / ||f||, ||k - grad(u)|| / ||grad(f)|| } <= tol;
// absolute norms are used when a denominator vanishes.
TerminationCheck check_termination(const Image& u, const Image& u_prev,
                                   const GradientField& k,
                                   const GradientField& grad_u, double norm_f,
                                   double norm_grad_f, double tol);

// Termination rule over a full state; also true once iter >= max_iter.
bool terminated(const SolverState& s, const Image& f, const SolverConfig& cfg);

struct ScheduleParams {
  double mu = 0.0;
  double tau = 0.0;
  double beta = 0.0;
};

// Per-blur-kind polynomial coefficients (c0 + c1*s + c2*s^2) mapping the
// noise level to (mu, tau, beta).
struct SchedulePolynomials {
  std::array<double, 3> mu{1.1e4, -2.7e3, 1.8e2};
  std::array<double, 3> tau{0.9, 3.4e-3, 0.0};
  std::array<double, 3> beta{1.2e-1, -3.7e-4, 0.0};
};

SchedulePolynomials default_schedule(KernelKind kind);
ScheduleParams eval_schedule(const SchedulePolynomials& poly, double sigma);

// (mu, tau, beta) for a blur kind and noise level sigma in (0,100]. Only the
// gaussian fit is calibrated; motion and average blur reuse it until
// dedicated fits exist (see README), overridable via explicit parameters.
ScheduleParams param_schedule(KernelKind kind, double sigma);

// Alternate hand-tuned operating point for gaussian blur at sigma = 3; the
// polynomial schedule evaluates to (4520, 0.9102, 0.11889) there.
inline constexpr ScheduleParams kGaussianSigma3Preset{5000.0, 0.9, 0.1};

// Full restoration: channel-wise semi-proximal ADMM on k = grad(u) with
// edge-adaptive weights, FFT image steps and closed-form prox split steps.
SolveResult solve(const Image& f, const Kernel& a, const SolverConfig& cfg);

struct KktResiduals {
  double stationarity = 0.0;  // ||mu*A^T(A(*)u - f) - div^T(lambda)||
  double multiplier = 0.0;    // distance of -lambda from the subgradient at k
  double feasibility = 0.0;   // ||grad(u) - k||
};

KktResiduals kkt_residuals(const SolverState& s, const Image& f,
                           const Kernel& a, double mu);

struct ConvergenceReport {
  std::vector<HistoryRow> history;
  KktResiduals kkt;
  bool converged = false;
  int iterations = 0;
};

ConvergenceReport convergence_report(const ChannelResult& run, const Image& f,
                                     const Kernel& a, const SolverConfig& cfg);

// CSV with columns iter,primal_residual,rel_u_change,objective,weights_flipped;
// channels are emitted back to back, each restarting at iter 1.
void write_history_csv(std::ostream& out, const SolveResult& result);

}  // namespace deblur
