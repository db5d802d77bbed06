// Copyright 2026 The gptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Builds the four-measurement ball theory, lists its fermions and shows that
// two of them, exchanged in either order under the same control, leave the
// control in distinguishable states.

#include <iostream>

#include "gptlab/gptlab.hpp"

int main() {
  using namespace gptlab;
  const Theory t = ball3_w();
  const PhaseGroup pg = compute_phase_group(t, t.designated_measurement());
  const ParticleCatalog cat = classify(pg, Topology::Simple);

  std::cout << t.name() << ": phase group of " << pg.measurement.name() << " has order " << pg.order()
            << ", " << cat.count(ParticleKind::Fermion) << " fermion types\n";
  if (cat.witness_pair)
    std::cout << "non-commuting fermions: " << cat.witness_pair->first.label << " and "
              << cat.witness_pair->second.label << "\n";

  const ParticleType a = find_particle(t.group(), "flip_x");
  const ParticleType b = find_particle(t.group(), "swap_xy");
  const State control(make_vector({1, 1, 0, 0, 0}));
  const OrderTestResult r = run_order_test(t, "W", a, b, control);
  std::cout << "a first: " << format_vector(r.final_ab_first.vector()) << "\n"
            << "b first: " << format_vector(r.final_ba_first.vector()) << "\n"
            << "distinguishability " << r.distinguishability << " via " << r.best_measurement << "\n";
  return 0;
}
