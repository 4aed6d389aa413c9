/*
 * Copyright 2026 The hybrid-rrt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "hybrid_rrt/archsim.hpp"
#include "hybrid_rrt/bench.hpp"
#include "hybrid_rrt/error.hpp"
#include "hybrid_rrt/fixed_point.hpp"
#include "hybrid_rrt/grid.hpp"
#include "hybrid_rrt/optimizer.hpp"
#include "hybrid_rrt/perf_models.hpp"
#include "hybrid_rrt/planner.hpp"
#include "hybrid_rrt/rng.hpp"
#include "hybrid_rrt/tagging.hpp"
