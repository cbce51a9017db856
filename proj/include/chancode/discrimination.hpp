#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chancode/channel.hpp"
#include "chancode/ensemble.hpp"

namespace chancode {

// Positive operator-valued measure: PSD elements summing to the identity
// (both within 1e-9, checked at construction).
class Povm {
 public:
  explicit Povm(std::vector<CMat> elements);

  const std::vector<CMat>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  int dim() const { return elements_.front().dim(); }

 private:
  std::vector<CMat> elements_;
};

inline constexpr double kPovmTol = 1e-9;

// Qubit POVM in weight/direction form: M_x = w_x (I + m_x . sigma) / 2.
struct PovmBlochItem {
  double w;
  BlochVec m;
};

struct PovmBloch {
  std::vector<PovmBlochItem> items;
};

// Outcome of a discrimination solve. certificate_residual < 1e-8 certifies
// global optimality of the returned measurement.
struct DiscrimResult {
  Povm povm;
  double p_guess;
  bool trivial;
  bool trivial_boundary;  // the triviality inequality held only up to 1e-12
  double certificate_residual;
};

// Result of the measurement-preservation condition check: the weighted state
// differences before/after the channel must be proportional with a common
// ratio kappa in (0, 1].
struct OmpCheckResult {
  bool holds;
  std::optional<double> kappa;
  double max_residual;
  // Pairs whose weighted difference vanished; they are skipped, not classified.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_pairs;
};

// sum_x q_x tr(rho_x M_x) with outcome x matched to state x.
double success_probability(const Ensemble& e, const Povm& m);

// Two-state optimum from the spectral split of q1 rho1 - q2 rho2. Eigenvalue
// zero goes to the first element.
DiscrimResult helstrom(const Ensemble& e);

struct TrivialityCheck {
  bool trivial;
  bool boundary;  // strict inequality decided by less than 1e-12
};

TrivialityCheck check_trivial(const Ensemble& e);
bool is_trivial(const Ensemble& e);

// Holevo-Helstrom optimality certificate: with Gamma = sum_y q_y rho_y M_y,
// returns max(||Gamma - Gamma^dag||_max,
//             max_x -min_eig((Gamma + Gamma^dag)/2 - q_x rho_x)).
double certify_optimality(const Ensemble& e, const Povm& m);

struct OptimizationOptions {
  int restarts = 20;
  int max_iterations = 100000;
  // Certification bar: any point below it is accepted as globally optimal.
  double certificate_tol = 1e-8;
  // Iterations keep polishing down to this before stopping, which keeps the
  // duality gap (at most twice the residual) well under 1e-9.
  double target_tol = 5e-10;
  std::uint64_t seed = 0x0b5e55ed5eedULL;
};

// General n-state qubit solver: fixed-point iteration on the Lagrangian map
// seeded from the square-root measurement, with random restarts. Returns the
// first certified point in restart order; throws ConvergenceFailureError when
// the restart budget is exhausted.
DiscrimResult optimal_discrimination(const Ensemble& e,
                                     const OptimizationOptions& options = {});

OmpCheckResult omp_check(const Ensemble& e, const KrausChannel& n);

// State-preservation checker: the channel keeps the states' information
// content iff ||q rho_x - (1-q) rho_y||_1 is unchanged for every pair and
// every mixing weight q. Checked on a q grid (default 0.05 steps).
struct IpsCheckResult {
  bool holds;
  double max_deviation;
};

IpsCheckResult information_preserving_check(const std::vector<DensityOp>& states,
                                            const KrausChannel& n, double tol = 1e-9);

PovmBloch povm_bloch_decompose(const Povm& m);

// Reverses every Bloch direction: w_x s(m_x) -> w_x s(-m_x). Used as the
// measurement update when the twirled channel has negative scaling.
Povm update_measurement(const Povm& m);

}  // namespace chancode
