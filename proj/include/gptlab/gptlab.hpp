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


/// @file gptlab.hpp
/// Umbrella header for the gptlab library.

#pragma once

#include "gptlab/numeric.hpp"
#include "gptlab/core.hpp"
#include "gptlab/groups.hpp"
#include "gptlab/theory.hpp"
#include "gptlab/phase.hpp"
#include "gptlab/composite.hpp"
#include "gptlab/experiments.hpp"
#include "gptlab/theories.hpp"
#include "gptlab/quantum_oracle.hpp"
