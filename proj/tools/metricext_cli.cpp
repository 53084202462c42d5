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

// Command-line front-end. Every subcommand reads JSON documents and prints a
// JSON result. Exit status: 0 success, 1 domain error, 2 malformed input or
// usage.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metricext/json_io.hpp"
#include "metricext/metricext.hpp"

namespace {

using namespace metricext;
using json_io::json;

constexpr int kDomainError = 1;
constexpr int kMalformed = 2;

/// Input failure that is not a metricext::Error.
struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Malformed("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Malformed("'" + path + "' is not JSON: " + e.what());
  }
}

Doubleton parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw Malformed("pair '" + text + "' is not of the form x,y");
  }
  std::string a = text.substr(0, comma);
  std::string b = text.substr(comma + 1);
  if (a.empty() || b.empty() || a == b) throw Malformed("pair '" + text + "' needs two distinct labels");
  return Doubleton(a, b);
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw Malformed("'" + text + "' is not a rational");
  }
}

/// "name" or "name:ARG"; returns name and sets arg.
std::string split_spec(const std::string& spec, std::string& arg) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    arg.clear();
    return spec;
  }
  arg = spec.substr(colon + 1);
  return spec.substr(0, colon);
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used);
    if (used != text.size()) throw Malformed("bad seed '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw Malformed("bad seed '" + text + "'");
  }
}

struct Output {
  bool dot = false;

  void metric(const PartialMetric& m) const {
    if (dot) {
      std::cout << json_io::to_dot(m);
    } else {
      value(json_io::to_json(m));
    }
  }
  void value(const json& j) const { std::cout << j.dump(2) << "\n"; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial metrics: distances, floppiness, extensions, games and patchworks"};
  app.require_subcommand(1);
  // Lets --dot appear after the subcommand name.
  app.fallthrough();
  Output out;
  app.add_flag("--dot", out.dot, "Print metric results as Graphviz DOT");

  std::string file;

  auto* validate_cmd = app.add_subcommand("validate", "Connectivity, graph-metric and fullness report");
  validate_cmd->add_option("metric", file, "Metric document")->required();

  auto* query = app.add_subcommand("query", "Evaluate hat, check, ddot or the admissible interval");
  std::vector<std::string> q_hat, q_check, q_ddot;
  std::string q_interval;
  query->add_option("--hat", q_hat, "hat(x, y)")->expected(2);
  query->add_option("--check", q_check, "check(x, y)")->expected(2);
  query->add_option("--ddot", q_ddot, "ddot(ab, uv) given as a,b u,v")->expected(2);
  query->add_option("--interval", q_interval, "Admissible interval of x,y");
  query->add_option("metric", file, "Metric document")->required();

  auto* floppy = app.add_subcommand("floppy", "Floppiness report");
  bool minimal = false;
  floppy->add_flag("--minimal", minimal, "Print the minimal floppy extension instead");
  floppy->add_option("metric", file, "Metric document")->required();

  auto* extend = app.add_subcommand("extend", "Extend to a full metric");
  std::string order_spec = "lex";
  std::vector<std::string> choice_spec{"midpoint"};
  bool exhaustive = false;
  extend->add_option("--order", order_spec, "lex | maxgap | random:SEED");
  extend->add_option("--choice", choice_spec, "midpoint | set-file PATH")->expected(1, 2);
  extend->add_flag("--exhaustive", exhaustive, "Recompute shortest paths from scratch after each step");
  extend->add_option("metric", file, "Metric document")->required();

  auto* step = app.add_subcommand("step", "Add one pair");
  auto* pstep = app.add_subcommand("pstep", "Evaluate the one-step inequalities");
  std::string pair_text, r_text, mode_text = "theorem";
  for (auto* cmd : {step, pstep}) {
    cmd->add_option("--pair", pair_text, "Pair x,y")->required();
    cmd->add_option("--r", r_text, "Value as p/q")->required();
    cmd->add_option("metric", file, "Metric document")->required();
  }
  step->add_option("--mode", mode_text, "theorem | proposition")->check(CLI::IsMember({"theorem", "proposition"}));

  auto* game = app.add_subcommand("game", "Metric-extending game");
  game->require_subcommand(1);
  auto* game_play = game->add_subcommand("play", "Play one game");
  std::string p1_spec = "winning", p2_spec = "least";
  long long lambda_value = -1;
  game_play->add_option("--p1", p1_spec, "winning | family:PATH");
  game_play->add_option("--p2", p2_spec,
                        "least | adversary | low | high | mid | random:SEED | mixed:SEED");
  game_play->add_option("--lambda", lambda_value, "Innings (default: number of missing pairs)");
  game_play->add_option("metric", file, "Base metric document")->required();
  auto* game_sabotage = game->add_subcommand("sabotage", "Find two pairs whose choice sets force a failure");
  std::string family_path;
  game_sabotage->add_option("--family", family_path, "Choice-set family document")->required();
  game_sabotage->add_option("metric", file, "Base metric document")->required();

  auto* glue_cmd = app.add_subcommand("glue", "Patchwork operations");
  std::vector<std::string> g_hat;
  std::string g_lambda, g_b;
  bool g_cert = false, g_validate = false;
  glue_cmd->add_option("--hat", g_hat, "Glued hat(x, y) by the gateway formula")->expected(2);
  glue_cmd->add_option("--lambda", g_lambda, "Lambda(v; B) with --B");
  glue_cmd->add_option("--B", g_b, "Comma-separated vertex set");
  glue_cmd->add_flag("--certificate", g_cert, "Floppiness certificate");
  glue_cmd->add_flag("--validate", g_validate, "Check the gluing conditions");
  glue_cmd->add_option("patchwork", file, "Patchwork document")->required();

  auto* gen = app.add_subcommand("gen", "Generate a metric");
  std::string gen_kind;
  std::size_t gen_n = 0, gen_depth = 0;
  std::string gen_scale = "1", gen_density = "1/2";
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", gen_kind, "cantor | path | cycle | star | complete | random")
      ->required()
      ->check(CLI::IsMember({"cantor", "path", "cycle", "star", "complete", "random"}));
  gen->add_option("--n", gen_n, "Vertex count");
  gen->add_option("--depth", gen_depth, "Cantor depth");
  gen->add_option("--scale", gen_scale, "Edge weight");
  gen->add_option("--density", gen_density, "Edge density in (0, 1]");
  gen->add_option("--seed", gen_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }

  try {
    if (*validate_cmd) {
      out.value(json_io::to_json(validate(json_io::metric_from_json(read_json(file)))));
    } else if (*query) {
      const int picked = !q_hat.empty() + !q_check.empty() + !q_ddot.empty() + !q_interval.empty();
      if (picked != 1) throw Malformed("query takes exactly one of --hat, --check, --ddot, --interval");
      PartialMetric m = json_io::metric_from_json(read_json(file));
      if (!q_hat.empty()) {
        out.value({{"value", hat(m, q_hat[0], q_hat[1]).str()}});
      } else if (!q_check.empty()) {
        out.value({{"value", check(m, q_check[0], q_check[1]).str()}});
      } else if (!q_ddot.empty()) {
        out.value({{"value", ddot(m, parse_pair(q_ddot[0]), parse_pair(q_ddot[1])).str()}});
      } else {
        out.value(json_io::to_json(admissible_interval(m, parse_pair(q_interval))));
      }
    } else if (*floppy) {
      PartialMetric m = json_io::metric_from_json(read_json(file));
      if (minimal) {
        auto ext = minimal_floppy_extension(m);
        if (out.dot) {
          out.metric(ext.metric);
        } else {
          out.value(json_io::to_json(ext));
        }
      } else {
        out.value(json_io::to_json(is_floppy(m)));
      }
    } else if (*extend) {
      PartialMetric m = json_io::metric_from_json(read_json(file));
      std::string arg;
      std::string kind = split_spec(order_spec, arg);
      OrderPolicy order;
      if (kind == "lex" && arg.empty()) {
        order = OrderPolicy::lexicographic();
      } else if (kind == "maxgap" && arg.empty()) {
        order = OrderPolicy::max_gap();
      } else if (kind == "random") {
        order = OrderPolicy::random(parse_seed(arg));
      } else {
        throw Malformed("unknown order '" + order_spec + "'");
      }
      ChoicePolicy choice;
      if (choice_spec.size() == 1 && choice_spec[0] == "midpoint") {
        choice = ChoicePolicy::midpoint();
      } else if (choice_spec.size() == 2 && choice_spec[0] == "set-file") {
        choice = ChoicePolicy::from_sets(json_io::family_from_json(read_json(choice_spec[1])));
      } else {
        throw Malformed("--choice takes 'midpoint' or 'set-file PATH'");
      }
      ExtendOptions options;
      options.exhaustive_recompute = exhaustive;
      ExtensionTrace trace = full_extend(m, order, choice, options);
      if (out.dot) {
        out.metric(trace.result);
      } else {
        out.value(json_io::to_json(trace));
      }
    } else if (*step) {
      PartialMetric m = json_io::metric_from_json(read_json(file));
      StepMode mode = mode_text == "proposition" ? StepMode::proposition : StepMode::theorem;
      out.metric(one_step_extend(m, parse_pair(pair_text), parse_rational(r_text), mode));
    } else if (*pstep) {
      PartialMetric m = json_io::metric_from_json(read_json(file));
      out.value(json_io::to_json(verify_pstep(m, parse_pair(pair_text), parse_rational(r_text))));
    } else if (*game_play) {
      PartialMetric base = json_io::metric_from_json(read_json(file));
      std::string arg;
      std::unique_ptr<PlayerIStrategy> p1;
      std::string kind = split_spec(p1_spec, arg);
      if (kind == "winning" && arg.empty()) {
        p1 = winning_player1(base);
      } else if (kind == "family" && !arg.empty()) {
        p1 = family_player1(base, json_io::family_from_json(read_json(arg)));
      } else {
        throw Malformed("unknown Player I strategy '" + p1_spec + "'");
      }
      std::unique_ptr<PlayerIIStrategy> p2;
      kind = split_spec(p2_spec, arg);
      if (kind == "least") {
        p2 = least_player2();
      } else if (kind == "adversary") {
        p2 = adversary_player2();
      } else if (kind == "low") {
        p2 = sampler_player2(SamplerMode::low);
      } else if (kind == "high") {
        p2 = sampler_player2(SamplerMode::high);
      } else if (kind == "mid") {
        p2 = sampler_player2(SamplerMode::mid);
      } else if (kind == "random") {
        p2 = random_player2(parse_seed(arg));
      } else if (kind == "mixed") {
        p2 = sampler_player2(SamplerMode::mixed, parse_seed(arg));
      } else {
        throw Malformed("unknown Player II strategy '" + p2_spec + "'");
      }
      if (!arg.empty() && kind != "random" && kind != "mixed") {
        throw Malformed("strategy '" + kind + "' takes no argument");
      }
      std::size_t length = lambda_value >= 0 ? static_cast<std::size_t>(lambda_value) : base.non_edges().size();
      out.value(json_io::to_json(play(base, length, *p1, *p2)));
    } else if (*game_sabotage) {
      PartialMetric base = json_io::metric_from_json(read_json(file));
      auto plan = sabotage_witness(base, json_io::family_from_json(read_json(family_path)));
      out.value({{"plan", plan ? json_io::to_json(*plan) : json(nullptr)}});
    } else if (*glue_cmd) {
      Patchwork pw = json_io::patchwork_from_json(read_json(file));
      if (g_validate) {
        out.value(json_io::to_json(validate_patchwork(pw)));
      } else if (!g_hat.empty()) {
        out.value({{"value", glue_hat(pw, g_hat[0], g_hat[1]).str()}});
      } else if (!g_lambda.empty()) {
        std::vector<VertexId> b;
        std::stringstream ss(g_b);
        for (std::string item; std::getline(ss, item, ',');) {
          if (!item.empty()) b.emplace_back(item);
        }
        out.value({{"value", lambda(pw, g_lambda, b).str()}});
      } else if (g_cert) {
        out.value(json_io::to_json(floppy_certificate(pw)));
      } else {
        out.metric(glue(pw));
      }
    } else if (*gen) {
      GenSpec spec;
      spec.scale = parse_rational(gen_scale);
      spec.density = parse_rational(gen_density);
      spec.seed = gen_seed;
      spec.size = gen_n;
      if (gen_kind == "cantor") {
        spec.kind = GenKind::cantor;
        spec.size = gen_depth;
      } else if (gen_kind == "path") {
        spec.kind = GenKind::path;
      } else if (gen_kind == "cycle") {
        spec.kind = GenKind::cycle;
      } else if (gen_kind == "star") {
        spec.kind = GenKind::star;
      } else if (gen_kind == "complete") {
        spec.kind = GenKind::complete;
      } else {
        spec.kind = GenKind::random_floppy;
      }
      out.metric(generate(spec));
    }
  } catch (const Malformed& e) {
    std::cout << json{{"error", {{"code", "REJECT_MALFORMED"}, {"message", e.what()}, {"detail", ""}}}}.dump(2) << "\n";
    return kMalformed;
  } catch (const Error& e) {
    std::cout << json_io::to_json(e).dump(2) << "\n";
    return e.code() == ErrorCode::reject_malformed ? kMalformed : kDomainError;
  }
  return 0;
}
