#include <doctest.h>

#include <cmath>

#include "chancode/channel.hpp"
#include "chancode/ensemble.hpp"
#include "chancode/sampling.hpp"

using namespace chancode;

TEST_CASE("bloch_to_state basics") {
  CHECK(max_abs_diff(bloch_to_state({0, 0, 1}).mat(), CMat{{1.0, 0.0}, {0.0, 0.0}}) < 1e-12);
  CHECK(max_abs_diff(bloch_to_state({0, 0, 0}).mat(), 0.5 * CMat::identity(2)) < 1e-12);
  // The mixed trine state.
  CHECK(max_abs_diff(bloch_to_state({0.5, 0, 0}).mat(), CMat{{0.5, 0.25}, {0.25, 0.5}}) < 1e-12);
  CHECK_THROWS_AS(bloch_to_state({1.2, 0, 0}), BlochOutOfBallError);
}

TEST_CASE("state_to_bloch basics") {
  const BlochVec down = state_to_bloch(bloch_to_state({0, 0, -1}));
  CHECK(down.z == doctest::Approx(-1.0).epsilon(1e-12));
  const BlochVec plus = state_to_bloch(bloch_to_state({1, 0, 0}));
  CHECK(plus.x == doctest::Approx(1.0).epsilon(1e-12));
  const BlochVec center = state_to_bloch(bloch_to_state({0, 0, 0}));
  CHECK(std::abs(center.x) + std::abs(center.y) + std::abs(center.z) < 1e-12);
}

TEST_CASE("bloch round trip on random states") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityOp rho = random_density(rng);
    const DensityOp back = bloch_to_state(state_to_bloch(rho));
    CHECK(max_abs_diff(back.mat(), rho.mat()) < 1e-10);
  }
}

TEST_CASE("builtin ensembles") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);
  REQUIRE(sz.size() == 2);
  CHECK(sz.items()[0].prior == doctest::Approx(0.5));
  CHECK(sz.has_equal_priors());

  const Ensemble bb84 = builtin(BuiltinEnsemble::SBB84);
  REQUIRE(bb84.size() == 4);
  for (const auto& item : bb84.items()) CHECK(item.prior == doctest::Approx(0.25));

  const Ensemble trine = builtin(BuiltinEnsemble::TRINE_MOD);
  REQUIRE(trine.size() == 3);
  CHECK(trine.items()[0].prior == doctest::Approx(0.5));
  CHECK(trine.items()[1].prior == doctest::Approx(0.25));
  CHECK(trine.items()[2].prior == doctest::Approx(0.25));
  CHECK_FALSE(trine.has_equal_priors());
  const BlochVec r2 = state_to_bloch(trine.items()[1].state);
  CHECK(r2.x == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r2.y == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(Ensemble(2, {{0.6, bloch_to_state({0, 0, 1})},
                               {0.6, bloch_to_state({0, 0, -1})}}),
                  Error);
  CHECK_THROWS_AS(Ensemble(2, {{1.0, bloch_to_state({0, 0, 1})}}), Error);
}

TEST_CASE("apply_channel_to_ensemble") {
  const Ensemble sz = builtin(BuiltinEnsemble::SZ);

  const Ensemble same = apply_channel_to_ensemble(sz, KrausChannel::identity(2));
  CHECK(max_abs_diff(same.items()[0].state.mat(), sz.items()[0].state.mat()) < 1e-12);

  // A half X flip sends both basis states to the maximally mixed state.
  const Ensemble mixed = apply_channel_to_ensemble(sz, flip_channel(FlipAxis::X, 0.5));
  CHECK(max_abs_diff(mixed.items()[0].state.mat(), 0.5 * CMat::identity(2)) < 1e-12);
  CHECK(max_abs_diff(mixed.items()[1].state.mat(), 0.5 * CMat::identity(2)) < 1e-12);

  // Depolarizing scales Bloch vectors by 1 - eta and keeps priors.
  const double eta = 0.3;
  const Ensemble shrunk = apply_channel_to_ensemble(sz, depolarizing(eta));
  CHECK(shrunk.items()[0].prior == sz.items()[0].prior);
  CHECK(state_to_bloch(shrunk.items()[0].state).z == doctest::Approx(1.0 - eta).epsilon(1e-12));
}

TEST_CASE("channel application preserves priors and state invariants") {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Ensemble e = random_ensemble(rng, 3, false);
    const KrausChannel n = random_channel(rng);
    const Ensemble mapped = apply_channel_to_ensemble(e, n);
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(mapped.items()[i].prior == e.items()[i].prior);
      // DensityOp construction re-validates Hermiticity, trace, positivity.
      CHECK(mapped.items()[i].state.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}
