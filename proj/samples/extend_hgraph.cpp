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

// Completes a four-vertex partial metric and plays one extension game on it.

#include <iostream>

#include "metricext/json_io.hpp"
#include "metricext/metricext.hpp"

int main() {
  using namespace metricext;
  const PartialMetric h({"a", "b", "x", "y"}, {{"a", "b", 10}, {"a", "x", 1}, {"b", "y", 1}});

  const FloppyReport r = is_floppy(h);
  std::cout << "floppy: " << std::boolalpha << r.floppy << ", tightest pair " << r.worst_pair->pair.str()
            << " with gap " << r.worst_pair->gap << "\n";

  const AdmissibleInterval iv = admissible_interval(h, {"x", "y"});
  std::cout << "x,y may take any value in [" << iv.lo << ", " << iv.hi << ")\n";

  const ExtensionTrace trace = full_extend(h, OrderPolicy::max_gap());
  for (const auto& step : trace.steps) std::cout << "  " << step.pair.str() << " := " << step.chosen << "\n";
  std::cout << json_io::to_json(trace.result).dump(2) << "\n";

  auto player_i = winning_player1(h);
  auto player_ii = adversary_player2();
  const GameTranscript game = play(h, h.non_edges().size(), *player_i, *player_ii);
  std::cout << "game: " << to_string(game.verdict) << "\n";
  return 0;
}
