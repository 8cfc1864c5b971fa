// Copyright 2026 The quasicut Authors
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

#include "quasicut/algebra.hpp"
#include "quasicut/analysis.hpp"
#include "quasicut/canonical.hpp"
#include "quasicut/circuit.hpp"
#include "quasicut/decomposition.hpp"
#include "quasicut/io.hpp"
#include "quasicut/local_basis.hpp"
#include "quasicut/nelder_mead.hpp"
#include "quasicut/rng.hpp"
#include "quasicut/sampler.hpp"
