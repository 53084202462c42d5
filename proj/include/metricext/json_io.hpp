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

// JSON documents for every value type. Rationals travel as strings "p/q" or
// "n"; integer JSON numbers are accepted on input, floating-point ones are
// rejected. Output is canonical: vertices and edges sorted, pairs written as
// two-element label arrays in sorted order.

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "metricext/choice_set.hpp"
#include "metricext/error.hpp"
#include "metricext/extension.hpp"
#include "metricext/game.hpp"
#include "metricext/glue.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/rational.hpp"

namespace metricext::json_io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::reject_malformed, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

// -- scalars -----------------------------------------------------------------

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      auto u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) malformed("integer out of range");
      return Rational(static_cast<std::int64_t>(u));
    }
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_number_float()) malformed("floating-point value " + j.dump() + "; write rationals as \"p/q\"");
  malformed("expected a rational, got " + j.dump());
}

inline std::string label_from_json(const json& j) {
  if (!j.is_string()) malformed("vertex labels must be strings, got " + j.dump());
  return j.get<std::string>();
}

inline json to_json(const Doubleton& p) { return json::array({p.a().label(), p.b().label()}); }

inline Doubleton pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) malformed("a pair is a two-element array of labels, got " + j.dump());
  std::string a = label_from_json(j[0]);
  std::string b = label_from_json(j[1]);
  if (a == b) malformed("pair repeats vertex '" + a + "'");
  return Doubleton(a, b);
}

// -- metric ------------------------------------------------------------------

inline json to_json(const PartialMetric& m) {
  json out;
  json vs = json::array();
  for (const auto& v : m.labels()) vs.push_back(v.label());
  json es = json::array();
  for (const auto& [u, v, w] : m.labeled_edges()) es.push_back({{"u", u.label()}, {"v", v.label()}, {"w", w.str()}});
  out["vertices"] = std::move(vs);
  out["edges"] = std::move(es);
  return out;
}

inline PartialMetric metric_from_json(const json& j) {
  const json& vs = field(j, "vertices");
  const json& es = field(j, "edges");
  if (!vs.is_array()) malformed("'vertices' must be an array");
  if (!es.is_array()) malformed("'edges' must be an array");
  std::vector<VertexId> vertices;
  for (const auto& v : vs) vertices.emplace_back(label_from_json(v));
  std::vector<WeightedPair> edges;
  for (const auto& e : es) {
    edges.push_back({label_from_json(field(e, "u")), label_from_json(field(e, "v")), rational_from_json(field(e, "w"))});
  }
  return PartialMetric(std::move(vertices), edges);
}

inline std::string to_dot(const PartialMetric& m) {
  std::ostringstream os;
  os << "graph metric {\n";
  for (const auto& v : m.labels()) os << "  \"" << v.label() << "\";\n";
  for (const auto& [u, v, w] : m.labeled_edges()) {
    os << "  \"" << u.label() << "\" -- \"" << v.label() << "\" [label=\"" << w.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

// -- reports -----------------------------------------------------------------

inline json to_json(const PolygonalViolation& v) {
  json chain = json::array();
  for (const auto& x : v.chain) chain.push_back(x.label());
  return {{"edge", to_json(v.edge)}, {"weight", v.weight.str()}, {"chain", chain}, {"chain_weight", v.chain_weight.str()}};
}

inline json to_json(const ValidationReport& r) {
  json out{{"connected", r.connected},
           {"graph_pseudometric", r.graph_pseudometric},
           {"graph_metric", r.graph_metric},
           {"full", r.full}};
  if (r.violation) out["violation"] = to_json(*r.violation);
  return out;
}

inline json to_json(const PairGap& g) { return {{"pair", to_json(g.pair)}, {"gap", g.gap.str()}}; }

inline json to_json(const FloppyReport& r) {
  return {{"floppy", r.floppy}, {"worst_pair", r.worst_pair ? to_json(*r.worst_pair) : json(nullptr)}};
}

inline json to_json(const MinimalFloppyExtension& e) {
  json added = json::array();
  for (const auto& p : e.added) added.push_back(to_json(p));
  return {{"iterations", e.iterations}, {"added", added}, {"metric", to_json(e.metric)}};
}

inline json to_json(const AdmissibleInterval& iv) {
  return {{"lo", iv.lo.str()}, {"hi", iv.hi.str()}, {"closed_lo", iv.closed_lo}, {"open_hi", iv.open_hi}};
}

inline std::string_view to_string(StatementResult r) {
  switch (r) {
    case StatementResult::pass: return "pass";
    case StatementResult::fail: return "fail";
    case StatementResult::vacuous: return "vacuous";
  }
  return "unknown";
}

inline json to_json(const PropertyReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    json st = json::array();
    for (auto s : p.results) st.push_back(std::string(to_string(s)));
    pairs.push_back({{"pair", to_json(p.pair)}, {"statements", st}});
  }
  return {{"graph_pseudometric", r.extension_is_graph_pseudometric},
          {"all_pass", r.all_pass()},
          {"failures", r.failures()},
          {"applicable", r.applicable()},
          {"pairs", pairs}};
}

inline json to_json(const ExtensionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"pair", to_json(s.pair)}, {"interval", to_json(s.interval)}, {"chosen", s.chosen.str()}});
  }
  return {{"steps", steps}, {"result", to_json(t.result)}};
}

// -- choice sets -------------------------------------------------------------

inline json to_json(const ChoiceSet& s) {
  json points = json::array();
  for (const auto& p : s.points()) points.push_back(p.str());
  json intervals = json::array();
  for (const auto& iv : s.intervals()) intervals.push_back({iv.lo.str(), iv.hi ? json(iv.hi->str()) : json(nullptr)});
  return {{"points", points}, {"intervals", intervals}};
}

inline ChoiceSet choice_set_from_json(const json& j) {
  ChoiceSet s;
  if (!j.is_object()) malformed("a choice set is an object with 'points' and 'intervals'");
  if (auto it = j.find("points"); it != j.end()) {
    if (!it->is_array()) malformed("'points' must be an array");
    for (const auto& p : *it) s.add_point(rational_from_json(p));
  }
  if (auto it = j.find("intervals"); it != j.end()) {
    if (!it->is_array()) malformed("'intervals' must be an array");
    for (const auto& iv : *it) {
      if (!iv.is_array() || iv.size() != 2) malformed("an interval is [lo, hi] or [lo, null]");
      std::optional<Rational> hi;
      if (!iv[1].is_null()) hi = rational_from_json(iv[1]);
      s.add_interval(rational_from_json(iv[0]), std::move(hi));
    }
  }
  if (s.empty()) malformed("choice set is empty");
  return s;
}

/// {"sets": [{"pair": [a, b], "points": [...], "intervals": [...]}, ...]}
inline json to_json(const std::map<Doubleton, ChoiceSet>& family) {
  json sets = json::array();
  for (const auto& [pair, set] : family) {
    json entry = to_json(set);
    entry["pair"] = to_json(pair);
    sets.push_back(std::move(entry));
  }
  return {{"sets", sets}};
}

inline std::map<Doubleton, ChoiceSet> family_from_json(const json& j) {
  const json& sets = field(j, "sets");
  if (!sets.is_array()) malformed("'sets' must be an array");
  std::map<Doubleton, ChoiceSet> out;
  for (const auto& entry : sets) {
    Doubleton pair = pair_from_json(field(entry, "pair"));
    if (!out.emplace(pair, choice_set_from_json(entry)).second) malformed("two choice sets for " + pair.str());
  }
  return out;
}

// -- game --------------------------------------------------------------------

inline json to_json(const Witness& w) {
  json out{{"kind", std::string(to_string(w.kind))}, {"message", w.message}};
  if (w.pair) out["pair"] = to_json(*w.pair);
  if (w.polygonal) out["polygonal"] = to_json(*w.polygonal);
  if (w.validation) out["validation"] = to_json(*w.validation);
  return out;
}

inline json to_json(const GameTranscript& t) {
  json moves = json::array();
  for (const auto& m : t.moves) {
    json mv{{"pair", to_json(m.pair)}, {"offered", to_json(m.offered)}, {"answer", m.answer.str()}};
    if (m.base_edge) mv["base_edge"] = true;
    if (m.repeated) mv["repeated"] = true;
    moves.push_back(std::move(mv));
  }
  return {{"base", to_json(t.base)},
          {"length", t.length},
          {"moves", moves},
          {"verdict", std::string(to_string(t.verdict))},
          {"witness", to_json(t.reason)}};
}

inline json to_json(const SabotagePlan& p) {
  return {{"p", to_json(p.p)}, {"q", to_json(p.q)}, {"r_p", p.r_p.str()}, {"r_q", p.r_q.str()}};
}

// -- glue --------------------------------------------------------------------

inline json to_json(const Patchwork& pw) {
  json pieces = json::array();
  for (const auto& f : pw.pieces) pieces.push_back(to_json(f));
  return {{"base", to_json(pw.base)}, {"pieces", pieces}};
}

inline Patchwork patchwork_from_json(const json& j) {
  Patchwork pw{metric_from_json(field(j, "base")), {}};
  const json& pieces = field(j, "pieces");
  if (!pieces.is_array()) malformed("'pieces' must be an array");
  for (const auto& f : pieces) pw.pieces.push_back(metric_from_json(f));
  return pw;
}

inline json to_json(const PatchworkReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    json e{{"condition", std::string(to_string(i.condition))}, {"message", i.message}};
    if (i.piece) e["piece"] = *i.piece;
    if (i.other_piece) e["other_piece"] = *i.other_piece;
    issues.push_back(std::move(e));
  }
  return {{"valid", r.valid()}, {"issues", issues}};
}

inline json to_json(const CertReport& c) {
  json pieces = json::array();
  for (const auto& p : c.pieces) {
    pieces.push_back({{"floppy", p.floppy}, {"worst_pair", p.worst_pair ? to_json(*p.worst_pair) : json(nullptr)}});
  }
  json lam = json::array();
  for (const auto& f : c.lambda_failures) {
    lam.push_back({{"piece", f.piece}, {"vertex", f.vertex.label()}, {"lambda", f.value.str()}});
  }
  json out{{"certified", c.certified}, {"base_full", c.base_full}, {"pieces", pieces}, {"lambda_failures", lam}};
  if (c.certified) {
    out["grade"] = *c.grade == Grade::metric ? "metric" : "pseudometric";
    out["glued_floppy"] = c.glued_floppy;
    json bounds = json::array();
    for (const auto& b : c.bounds) {
      bounds.push_back({{"pair", to_json(b.pair)},
                        {"kind", std::string(to_string(b.kind))},
                        {"delta", b.delta.str()},
                        {"gap", b.gap.str()},
                        {"met", b.met()}});
    }
    out["bounds"] = std::move(bounds);
  }
  return out;
}

inline json to_json(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.message()}, {"detail", e.detail()}}}};
}

}  // namespace metricext::json_io
