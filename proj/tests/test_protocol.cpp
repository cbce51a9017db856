#include <doctest.h>

#include <cmath>

#include "chancode/protocol.hpp"
#include "chancode/sampling.hpp"

using namespace chancode;

namespace {

Povm z_basis_povm() {
  return Povm({CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 0.0}, {0.0, 1.0}}});
}

}  // namespace

TEST_CASE("run_exact: half X flip on the orthogonal pair") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  const ProtocolReport report =
      run_exact(sz, flip_channel(FlipAxis::X, 0.5), tetrahedral_design(), z_basis_povm());
  CHECK(report.p_id == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.p_channel == doctest::Approx(0.5).epsilon(1e-9));
  // Coding recovers distinguishability the raw channel destroyed.
  CHECK(report.p_coded == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(1.0 - report.eta_fit == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK_FALSE(report.measurement_updated);
}

TEST_CASE("run_exact: identity channel changes nothing") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  const ProtocolReport report =
      run_exact(sz, KrausChannel::identity(2), tetrahedral_design(), z_basis_povm());
  CHECK(report.p_id == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.p_channel == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.p_coded == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("run_exact: BB84 under a quarter Y flip") {
  const Ensemble bb84 = builtin(BuiltinEnsemble::SBB84);
  const Povm xz({CMat{{0.5, 0.0}, {0.0, 0.0}}, CMat{{0.0, 0.0}, {0.0, 0.5}},
                 CMat{{0.25, 0.25}, {0.25, 0.25}}, CMat{{0.25, -0.25}, {-0.25, 0.25}}});
  const ProtocolReport report =
      run_exact(bb84, flip_channel(FlipAxis::Y, 0.25), tetrahedral_design(), xz);
  CHECK(report.p_channel_fixed == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(report.p_channel == doctest::Approx(0.375).epsilon(1e-8));
  CHECK(report.p_coded == doctest::Approx(0.25 + 2.0 / 12.0).epsilon(1e-10));
}

TEST_CASE("run_exact: unitary channels trigger the measurement update") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  // A full X flip twirls to scaling -1/3; without the direction flip the
  // fixed measurement would do worse than guessing.
  const ProtocolReport report =
      run_exact(sz, flip_channel(FlipAxis::X, 1.0), tetrahedral_design(), z_basis_povm());
  CHECK(report.measurement_updated);
  CHECK(1.0 - report.eta_fit == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  CHECK(report.p_coded == doctest::Approx(0.5 + 1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("run_exact rejects unequal priors") {
  const Ensemble trine = builtin(BuiltinEnsemble::TRINE_MOD);
  const Povm trivial3({CMat::identity(2), CMat(2), CMat(2)});
  CHECK_THROWS_AS(run_exact(trine, KrausChannel::identity(2), tetrahedral_design(), trivial3),
                  NotEqualPriorsError);
}

TEST_CASE("exact coded value equals the materialized twirl mixture") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const Ensemble e = random_ensemble(rng, 2, true);
    const KrausChannel n = random_channel(rng);
    const Povm fixed = optimal_discrimination(e).povm;
    const ProtocolReport report = run_exact(e, n, tetrahedral_design(), fixed);

    const KrausChannel twirled = twirl_channel(n, tetrahedral_design());
    const bool updated = 1.0 - fit_depolarizing(twirled).eta < 0.0;
    const Povm used = updated ? update_measurement(fixed) : fixed;
    const double direct = success_probability(apply_channel_to_ensemble(e, twirled), used);
    REQUIRE(std::abs(report.p_coded - direct) < 1e-12);
  }
}

TEST_CASE("report ordering invariants on random inputs") {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 500; ++trial) {
    const int n_states = 2 + static_cast<int>(rng.next_below(3));
    const Ensemble e = random_ensemble(rng, n_states, true);
    const KrausChannel n = random_channel(rng);
    const Povm fixed = optimal_discrimination(e).povm;
    const ProtocolReport report = run_exact(e, n, tetrahedral_design(), fixed);
    REQUIRE(report.p_id >= report.p_channel - 1e-9);
    REQUIRE(report.p_id >= report.p_coded - 1e-9);
    REQUIRE(report.p_channel >= report.p_channel_fixed - 1e-9);
  }
}

TEST_CASE("run_sampled: deterministic, correct shape, exact on noiseless input") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  const auto [transcript, report] =
      run_sampled(sz, KrausChannel::identity(2), tetrahedral_design(), z_basis_povm(), 10000, 7);
  CHECK(report.p_coded == 1.0);  // identity channel never misses
  REQUIRE(transcript.rounds.size() == 10000);
  for (const ProtocolRound& round : transcript.rounds) {
    CHECK(round.design_index >= 0);
    CHECK(round.design_index < 12);
    CHECK((round.state_label == 0 || round.state_label == 1));
  }

  const auto [transcript2, report2] =
      run_sampled(sz, KrausChannel::identity(2), tetrahedral_design(), z_basis_povm(), 10000, 7);
  for (std::size_t i = 0; i < transcript.rounds.size(); ++i) {
    REQUIRE(transcript.rounds[i].outcome_label == transcript2.rounds[i].outcome_label);
    REQUIRE(transcript.rounds[i].design_index == transcript2.rounds[i].design_index);
  }
  CHECK(report.p_coded == report2.p_coded);
}

TEST_CASE("run_sampled converges to the exact mixture value") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  const KrausChannel n = flip_channel(FlipAxis::X, 0.5);
  const ProtocolReport exact = run_exact(sz, n, tetrahedral_design(), z_basis_povm());

  const std::uint64_t rounds = 100000;
  const auto [transcript, sampled] =
      run_sampled(sz, n, tetrahedral_design(), z_basis_povm(), rounds, 99);
  CHECK(std::abs(sampled.p_coded - exact.p_coded) < 0.01);

  // Seeded 3-sigma binomial coverage across many trials.
  const double p = exact.p_coded;
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(rounds));
  int hits = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto [tr, rep] =
        run_sampled(sz, n, tetrahedral_design(), z_basis_povm(), rounds, 1000 + t);
    if (std::abs(rep.p_coded - p) < 3.0 * sigma) ++hits;
  }
  CHECK(hits >= 99);
}
