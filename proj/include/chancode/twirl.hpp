#pragma once

#include <vector>

#include "chancode/channel.hpp"

namespace chancode {

// A finite set of unitaries whose channel twirl reproduces the Haar twirl.
// Every element is checked unitary at construction.
class TwoDesign {
 public:
  explicit TwoDesign(std::vector<CMat> unitaries);

  const std::vector<CMat>& unitaries() const { return unitaries_; }
  std::size_t size() const { return unitaries_.size(); }

 private:
  std::vector<CMat> unitaries_;
};

// The 12-element subgroup of the tetrahedral rotations:
// {I, -iX, -iY, -iZ} plus eight order-3 elements, entry-exact.
const TwoDesign& tetrahedral_design();

// rho -> (1/|W|) sum_i U_i^dag N[U_i rho U_i^dag] U_i, materialized as a
// Kraus mixture of |W| * |K_N| operators in fixed order.
KrausChannel twirl_channel(const KrausChannel& n, const TwoDesign& w);

// Best depolarizing description of a qubit channel. eta comes from the
// transfer-diagonal average; residual measures the distance from exact
// depolarizing form (residual < 1e-10 certifies it).
struct DepolarizingFit {
  double eta;
  double residual;
};

DepolarizingFit fit_depolarizing(const KrausChannel& n);

// Probes used by verify_two_design when the caller has no preference.
std::vector<KrausChannel> default_probe_channels();

// True iff twirling every probe through w yields an exactly depolarizing
// channel that agrees, as a map, with the reference tetrahedral twirl.
bool verify_two_design(const TwoDesign& w, const std::vector<KrausChannel>& probes);

}  // namespace chancode
