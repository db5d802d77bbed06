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


// Swaps a qubit pair conditioned on a control in |+>. The exchange phase
// shows up as a rotation of the control's Bloch vector.

#include <iostream>
#include <numbers>

#include "gptlab/gptlab.hpp"

int main() {
  using namespace gptlab;
  const Theory t = qubit_bloch();
  const State plus(make_vector({1, 1, 0, 0}));
  const State pair(make_vector({1, 0, 0, 1}));
  for (int k = 0; k < 4; ++k) {
    const double theta = k * std::numbers::pi / 2;
    const ParticleType p{bloch_rz(theta, "rz"), particle_kind(bloch_rz(theta, "rz")), "rz"};
    const SwapExperimentResult r = run_controlled_swap(t, {"Z", p, plus, pair});
    std::cout << "theta = " << theta << ": control " << format_vector(r.control_out.vector())
              << ", pair unchanged: " << (r.indistinguishability_ok ? "yes" : "no") << "\n";
  }
  return 0;
}
