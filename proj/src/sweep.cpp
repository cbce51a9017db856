#include "chancode/sweep.hpp"

#include <cmath>

#include "chancode/rng.hpp"
#include "chancode/twirl.hpp"

namespace chancode {

namespace {

struct StateSpec {
  CMat prep;      // maps |0> to the prepared state
  CMat meas_rot;  // maps the preparation basis to the Z basis
  int correct_bit;
  double weight;  // prior times the basis-choice weight
};

std::vector<StateSpec> panel_states(SweepPanel panel) {
  const CMat eye = CMat::identity(2);
  const double r = 1.0 / std::sqrt(2.0);
  const CMat h{{r, r}, {r, -r}};
  if (panel == SweepPanel::OrthogonalPairX) {
    return {{eye, eye, 0, 0.5}, {pauli(1), eye, 1, 0.5}};
  }
  // BB84: each state is read in its own basis, which the random X/Z
  // measurement picks with probability 1/2; the other basis never yields the
  // right label, so it contributes weight but no successes.
  return {{eye, eye, 0, 0.125},
          {pauli(1), eye, 1, 0.125},
          {h, h, 0, 0.125},
          {h * pauli(1), h, 1, 0.125}};
}

FlipAxis panel_axis(SweepPanel panel) {
  return panel == SweepPanel::OrthogonalPairX ? FlipAxis::X : FlipAxis::Y;
}

double panel_noise_trace(SweepPanel panel) {
  // sum_x q_x tr(M_x) for the panel's detectors.
  return panel == SweepPanel::OrthogonalPairX ? 1.0 : 0.5;
}

double correct_probability(const std::vector<double>& probs, int correct_bit, bool flip) {
  const int want = flip ? 1 - correct_bit : correct_bit;
  // Distribution is ordered 00, 01, 10, 11 with the q1 bit first.
  return want == 0 ? probs[0] + probs[1] : probs[2] + probs[3];
}

double empirical_correct(const ShotResult& result, int correct_bit, bool flip) {
  return marginal_probability(result, 1, flip ? 1 - correct_bit : correct_bit);
}

}  // namespace

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  return grid;
}

std::vector<SweepRow> run_guess_sweep(SweepPanel panel, const SweepConfig& config) {
  const std::vector<double> grid =
      config.p_f_values.empty() ? default_sweep_grid() : config.p_f_values;
  const double noise_eta =
      config.noise_eta >= 0.0 ? config.noise_eta
                              : (panel == SweepPanel::OrthogonalPairX ? 0.05 : 0.15);
  const std::vector<StateSpec> states = panel_states(panel);
  const FlipAxis axis = panel_axis(panel);
  const auto& design = tetrahedral_design().unitaries();

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t point = 0; point < grid.size(); ++point) {
    const double p_f = grid[point];
    // Detector relabelling follows the analytic Bloch scaling: 1 - 2 p_f for
    // the raw flip channel, (3 - 4 p_f)/3 after twirling.
    const bool flip_raw = 1.0 - 2.0 * p_f < 0.0;
    const bool flip_coded = 3.0 - 4.0 * p_f < 0.0;

    SweepRow row{};
    row.p_f = p_f;
    for (std::size_t s = 0; s < states.size(); ++s) {
      const StateSpec& st = states[s];
      const Circuit raw = build_flip_circuit(axis, p_f, st.prep, st.meas_rot);
      row.p_channel_exact +=
          st.weight * correct_probability(exact_distribution(raw), st.correct_bit, flip_raw);
      const ShotResult raw_counts =
          simulate_counts(raw, config.shots, derive_seed(config.seed, point, s, 0));
      row.p_channel_sampled += st.weight * empirical_correct(raw_counts, st.correct_bit, flip_raw);

      for (std::size_t j = 0; j < design.size(); ++j) {
        const Circuit coded = build_flip_circuit(axis, p_f, st.prep, st.meas_rot, &design[j]);
        const double share = st.weight / static_cast<double>(design.size());
        row.p_coded_exact +=
            share * correct_probability(exact_distribution(coded), st.correct_bit, flip_coded);
        const ShotResult coded_counts =
            simulate_counts(coded, config.shots, derive_seed(config.seed, point, s, j + 1));
        row.p_coded_sampled += share * empirical_correct(coded_counts, st.correct_bit, flip_coded);
      }
    }
    row.p_channel_noise = shot_noise(row.p_channel_exact, noise_eta, panel_noise_trace(panel));
    row.p_coded_noise = shot_noise(row.p_coded_exact, noise_eta, panel_noise_trace(panel));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace chancode
