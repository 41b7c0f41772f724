// Copyright 2026 The paexp Authors
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

#include "paexp/bound_certifier.hpp"
#include "paexp/cut_analysis.hpp"
#include "paexp/experiment.hpp"
#include "paexp/graph_io.hpp"
#include "paexp/lemma2.hpp"
#include "paexp/modularity.hpp"
#include "paexp/multigraph.hpp"
#include "paexp/pa_models.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"
