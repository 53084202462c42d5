// Copyright 2026 The metricext Authors
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

#include "metricext/choice_set.hpp"
#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/extension.hpp"
#include "metricext/game.hpp"
#include "metricext/generators.hpp"
#include "metricext/glue.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/random.hpp"
#include "metricext/rational.hpp"
