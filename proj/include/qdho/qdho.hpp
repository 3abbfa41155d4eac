// Copyright 2026 The qdho Authors
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

#pragma once

#include "qdho/analytic.hpp"
#include "qdho/error.hpp"
#include "qdho/fock.hpp"
#include "qdho/invariants.hpp"
#include "qdho/lindblad.hpp"
#include "qdho/linalg.hpp"
#include "qdho/observables.hpp"
#include "qdho/scenario.hpp"
#include "qdho/tolerances.hpp"
