/*
 * Copyright 2026 The poibench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef POIBENCH_POIBENCH_HPP_
#define POIBENCH_POIBENCH_HPP_

#include "poibench/core.hpp"
#include "poibench/dataset.hpp"
#include "poibench/context.hpp"
#include "poibench/kde.hpp"
#include "poibench/power_law.hpp"
#include "poibench/geosoca.hpp"
#include "poibench/lore.hpp"
#include "poibench/usg.hpp"
#include "poibench/baselines.hpp"
#include "poibench/ranking.hpp"
#include "poibench/metrics.hpp"
#include "poibench/fusion.hpp"
#include "poibench/config.hpp"
#include "poibench/runner.hpp"
#include "poibench/synthetic.hpp"

#endif  // POIBENCH_POIBENCH_HPP_
