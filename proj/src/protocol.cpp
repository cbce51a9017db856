#include "chancode/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "chancode/rng.hpp"

namespace chancode {

namespace {

void require_equal_priors(const Ensemble& e) {
  if (!e.has_equal_priors()) {
    throw NotEqualPriorsError("the coding protocol is defined for equal-prior ensembles");
  }
}

struct CodedSetup {
  KrausChannel twirled;
  double eta_fit;
  bool updated;
  Povm measurement;
};

CodedSetup coded_setup(const KrausChannel& n, const TwoDesign& w, const Povm& fixed_m) {
  KrausChannel twirled = twirl_channel(n, w);
  const DepolarizingFit fit = fit_depolarizing(twirled);
  const bool updated = 1.0 - fit.eta < 0.0;
  // Pre-protocol: flip every Bloch direction when the twirled scaling is
  // negative, so the fixed detectors keep pointing at the likelier outcomes.
  Povm measurement = updated ? update_measurement(fixed_m) : fixed_m;
  return {std::move(twirled), fit.eta, updated, std::move(measurement)};
}

}  // namespace

ProtocolReport run_exact(const Ensemble& e, const KrausChannel& n, const TwoDesign& w,
                         const Povm& fixed_m) {
  require_equal_priors(e);
  const CodedSetup setup = coded_setup(n, w, fixed_m);

  ProtocolReport report{};
  report.p_id = success_probability(e, fixed_m);
  const Ensemble noisy = apply_channel_to_ensemble(e, n);
  report.p_channel = optimal_discrimination(noisy).p_guess;
  report.p_channel_fixed = success_probability(noisy, fixed_m);
  report.p_coded =
      success_probability(apply_channel_to_ensemble(e, setup.twirled), setup.measurement);
  report.eta_fit = setup.eta_fit;
  report.measurement_updated = setup.updated;
  return report;
}

std::pair<ProtocolTranscript, ProtocolReport> run_sampled(const Ensemble& e,
                                                          const KrausChannel& n,
                                                          const TwoDesign& w, const Povm& fixed_m,
                                                          std::uint64_t rounds,
                                                          std::uint64_t seed) {
  require_equal_priors(e);
  if (rounds < 1) throw Error("sampled run needs at least one round");
  const CodedSetup setup = coded_setup(n, w, fixed_m);

  ProtocolTranscript transcript{{}, ProtocolMode::SAMPLED, seed};
  transcript.rounds.reserve(rounds);

  const std::size_t n_states = e.size();
  const std::size_t n_design = w.size();
  std::uint64_t successes = 0;
  for (std::uint64_t round = 0; round < rounds; ++round) {
    // Independent per-round stream, so rounds can be recomputed in isolation.
    SplitMix64 rng(derive_seed(seed, round));
    const int x = static_cast<int>(rng.next_below(n_states));
    const int j = static_cast<int>(rng.next_below(n_design));

    const CMat& u = w.unitaries()[static_cast<std::size_t>(j)];
    const CMat encoded = u * e.items()[static_cast<std::size_t>(x)].state.mat() * u.adjoint();
    const CMat received = u.adjoint() * apply_mat(n, encoded) * u;

    // Born sampling over the fixed measurement.
    const double draw = rng.next_double();
    double cumulative = 0.0;
    int outcome = static_cast<int>(setup.measurement.size()) - 1;
    for (std::size_t k = 0; k < setup.measurement.size(); ++k) {
      cumulative += std::max((received * setup.measurement.elements()[k]).trace().real(), 0.0);
      if (draw < cumulative) {
        outcome = static_cast<int>(k);
        break;
      }
    }
    if (outcome == x) ++successes;
    transcript.rounds.push_back({round, x, j, outcome});
  }

  ProtocolReport report{};
  report.p_id = success_probability(e, fixed_m);
  const Ensemble noisy = apply_channel_to_ensemble(e, n);
  report.p_channel = optimal_discrimination(noisy).p_guess;
  report.p_channel_fixed = success_probability(noisy, fixed_m);
  report.p_coded = static_cast<double>(successes) / static_cast<double>(rounds);
  report.eta_fit = setup.eta_fit;
  report.measurement_updated = setup.updated;
  return {std::move(transcript), report};
}

}  // namespace chancode
