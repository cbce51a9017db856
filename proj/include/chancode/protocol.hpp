#pragma once

#include <cstdint>
#include <vector>

#include "chancode/discrimination.hpp"
#include "chancode/twirl.hpp"

namespace chancode {

// One round of the sampled run: which state was sent, which design element
// both parties agreed on, and the receiver's outcome.
struct ProtocolRound {
  std::uint64_t round_index;
  int state_label;
  int design_index;
  int outcome_label;
};

enum class ProtocolMode { EXACT, SAMPLED };

struct ProtocolTranscript {
  std::vector<ProtocolRound> rounds;  // empty in EXACT mode
  ProtocolMode mode;
  std::uint64_t seed = 0;  // SAMPLED only
};

// Guessing probabilities before the channel, after it, and after the coded
// (twirled) channel with the fixed measurement kept in place.
struct ProtocolReport {
  double p_id;
  double p_channel;        // re-optimized measurement on the raw noisy ensemble
  double p_channel_fixed;  // the fixed measurement on the raw noisy ensemble
  double p_coded;          // fixed (possibly direction-flipped) measurement after twirl
  double eta_fit;
  bool measurement_updated;
};

// Runs the four-step coding protocol on the exact twirled mixture. fixed_m
// must be the certified optimal measurement for e, and e must have equal
// priors; the direction flip is applied automatically when 1 - eta < 0.
ProtocolReport run_exact(const Ensemble& e, const KrausChannel& n, const TwoDesign& w,
                         const Povm& fixed_m);

// Same protocol with per-round sampling: state and design element drawn
// uniformly, outcome drawn from the Born distribution. p_coded in the report
// is the empirical success fraction. Deterministic for a fixed seed.
std::pair<ProtocolTranscript, ProtocolReport> run_sampled(const Ensemble& e,
                                                          const KrausChannel& n,
                                                          const TwoDesign& w, const Povm& fixed_m,
                                                          std::uint64_t rounds,
                                                          std::uint64_t seed);

}  // namespace chancode
