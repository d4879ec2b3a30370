/*
 * Copyright 2026 The Fairway Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAIRWAY_FAIRWAY_HPP_
#define FAIRWAY_FAIRWAY_HPP_

#include "fairway/ambiguity_filter.hpp"
#include "fairway/cart.hpp"
#include "fairway/csv.hpp"
#include "fairway/dataset.hpp"
#include "fairway/error.hpp"
#include "fairway/fair_flash.hpp"
#include "fairway/logistic.hpp"
#include "fairway/matrix.hpp"
#include "fairway/metrics.hpp"
#include "fairway/pipeline.hpp"
#include "fairway/random.hpp"
#include "fairway/report.hpp"
#include "fairway/situation_audit.hpp"

#endif  // FAIRWAY_FAIRWAY_HPP_
