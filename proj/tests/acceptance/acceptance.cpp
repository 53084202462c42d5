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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every quantity is recomputed from fresh Floyd-Warshall tables and the
// definition-level check oracle rather than taken from the library's own
// post-conditions.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "metricext/metricext.hpp"
#include "oracles.hpp"
#include "patchworks.hpp"

namespace {

using namespace metricext;

struct Outcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
};

// Fresh tables with check computed straight from its definition.
struct Fresh {
  DistanceTables t;
  std::vector<Rational> chk;

  explicit Fresh(const PartialMetric& m) : t(m, ShortestPathMethod::floyd_warshall) {
    const std::size_t n = m.size();
    std::vector<Rational> h(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) h[i * n + j] = t.hat(i, j);
    }
    chk.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) chk[i * n + j] = i == j ? Rational(0) : oracle::check(m, h, i, j);
    }
  }
  const Rational& hat(std::size_t i, std::size_t j) const { return t.hat(i, j); }
  const Rational& check(std::size_t i, std::size_t j) const { return chk[i * t.size() + j]; }
  bool floppy(const PartialMetric& m) const {
    for (auto [i, j] : m.non_edges()) {
      if (!(check(i, j) < hat(i, j))) return false;
    }
    return true;
  }
};

std::string where(const oracle::CorpusEntry& e, const Doubleton& p, const Rational& r) {
  std::ostringstream s;
  s << "seed " << e.seed << " n " << e.n << " pair " << p.str() << " r " << r;
  return s.str();
}

// Three admissible samples: lo, midpoint, hi - (hi - lo)/8.
std::vector<Rational> theorem_samples(const AdmissibleInterval& iv) {
  return {iv.lo, iv.midpoint(), iv.hi - (iv.hi - iv.lo) / Rational(8)};
}

const std::vector<oracle::CorpusEntry>& corpus() {
  static const auto c = oracle::floppy_corpus(500);
  return c;
}

Outcome closure() {
  Outcome o;
  for (const auto& e : corpus()) {
    const PartialMetric& m = e.metric;
    const Fresh base(m);
    for (auto [i, j] : m.non_edges()) {
      const Doubleton xy = m.pair(i, j);
      const AdmissibleInterval iv = admissible_interval(m, xy);
      o.expect(iv.lo == base.check(i, j) / Rational(3) + base.hat(i, j) * Rational(2, 3) && iv.hi == base.hat(i, j),
               [&] { return where(e, xy, iv.lo) + ": interval differs from recomputation"; });
      for (const Rational& r : theorem_samples(iv)) {
        try {
          PartialMetric ext = one_step_extend(m, xy, r);
          const PartialMetric expect = m.with_edge(i, j, r);
          const Fresh f(expect);
          o.expect(ext == expect && f.floppy(expect) && is_floppy(ext).floppy,
                   [&] { return where(e, xy, r) + ": extension not floppy"; });
        } catch (const Error& err) {
          o.expect(false, [&] { return where(e, xy, r) + ": " + err.what(); });
        }
      }
    }
  }
  return o;
}

// Statements (1)-(5) evaluated from fresh tables of m and m + xy:r.
bool statements_hold(const Fresh& b, const PartialMetric& m, std::size_t i, std::size_t j, const Rational& r,
                     std::string& detail) {
  const PartialMetric ext = m.with_edge(i, j, r);
  const Fresh x(ext);
  for (const Edge& e : ext.edges()) {
    if (x.hat(e.u, e.v) != e.weight) {
      detail = "extension is not a graph pseudometric";
      return false;
    }
  }
  const Rational hxy = b.hat(i, j);
  const Rational cxy = b.check(i, j);
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = u + 1; v < m.size(); ++v) {
      const Rational hd = b.hat(u, v), cd = b.check(u, v);
      const Rational HD = x.hat(u, v), CD = x.check(u, v);
      const Rational dd = std::min(b.hat(i, u) + b.hat(j, v), b.hat(i, v) + b.hat(j, u));
      const std::string at = " at " + m.pair(u, v).str();
      if (!(HD <= hd && std::max(cd, r - dd) <= CD)) return detail = "(1)" + at, false;
      if (hd != HD) {
        if (!(hd - (hxy - r) <= HD && HD == r + dd)) return detail = "(2)" + at, false;
        if (!(HD - cd >= r - cxy)) return detail = "(3)" + at, false;
      }
      if (cd != CD && CD != r - dd && CD > hxy - Rational(2) * r) {
        if (!(CD - cd <= hxy - r && hd - CD >= r - cxy)) return detail = "(4)" + at, false;
      }
      if (cxy / Rational(3) + hxy * Rational(2, 3) <= r && r <= hxy) {
        if (!(HD - CD >= std::min({hd - cd, hxy - r, dd + dd}))) return detail = "(5)" + at, false;
      }
    }
  }
  return true;
}

Outcome pstep() {
  Outcome o;
  std::size_t evaluations = 0;
  for (const auto& e : corpus()) {
    const PartialMetric& m = e.metric;
    const Fresh base(m);
    for (auto [i, j] : m.non_edges()) {
      const Doubleton xy = m.pair(i, j);
      const Rational c = base.check(i, j), h = base.hat(i, j);
      std::vector<Rational> rs{c, c + (h - c) / Rational(4), (c + h) / Rational(2), c + (h - c) * Rational(3, 4), h};
      for (const Rational& r : theorem_samples(admissible_interval(m, xy))) rs.push_back(r);
      for (const Rational& r : rs) {
        std::string detail;
        const bool mine = statements_hold(base, m, i, j, r, detail);
        bool lib = false;
        try {
          lib = verify_pstep(m, xy, r).all_pass();
        } catch (const Error& err) {
          detail += std::string(" library: ") + err.what();
        }
        ++evaluations;
        o.expect(mine && lib, [&] { return where(e, xy, r) + ": statement " + detail; });
      }
    }
  }
  o.note = std::to_string(evaluations) + " (pair, r) evaluations";
  return o;
}

Outcome lemma() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 3 + seed % 5;
    const PartialMetric g = seed % 2 ? oracle::random_graph_metric(n, seed) : oracle::random_connected_graph(n, seed);
    const Fresh f(g);
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) ps.emplace_back(i, j);
    }
    auto dd = [&](auto p, auto q) {
      return std::min(f.hat(p.first, q.first) + f.hat(p.second, q.second),
                      f.hat(p.first, q.second) + f.hat(p.second, q.first));
    };
    for (const auto& p : ps) {
      for (const auto& q : ps) {
        const Rational pq = dd(p, q);
        o.expect(f.t.ddot(p.first, p.second, q.first, q.second) == pq, [&] { return "ddot differs from definition"; });
        o.expect(f.hat(p.first, p.second) <= f.hat(q.first, q.second) + pq, [&] {
          return "seed " + std::to_string(seed) + ": hat(" + g.pair(p.first, p.second).str() + ") transfer fails";
        });
        for (const auto& s : ps) {
          o.expect(dd(p, s) <= pq + dd(q, s), [&] { return "seed " + std::to_string(seed) + ": ddot triangle fails"; });
        }
      }
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t graphs = 0;
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    const PartialMetric g = oracle::random_connected_graph(2 + seed % 4, 5000 + seed);
    ++graphs;
    const DistanceTables fw(g, ShortestPathMethod::floyd_warshall);
    const DistanceTables dj(g, ShortestPathMethod::dijkstra);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const Rational want = i == j ? Rational(0) : oracle::simple_chain_min(g, i, j).value();
        o.expect(fw.hat(i, j) == want && dj.hat(i, j) == want && hat(g, g.label(i), g.label(j)) == want,
                 [&] { return "seed " + std::to_string(5000 + seed) + ": hat(" + g.pair(i, j).str() + ")"; });
      }
    }
  }
  o.note = std::to_string(graphs) + " graphs";
  return o;
}

// The accumulated relation as a metric, or nullopt when some pair got two
// different values.
std::optional<PartialMetric> relation(const GameTranscript& t) {
  std::map<Doubleton, Rational> values;
  for (const auto& [u, v, w] : t.base.labeled_edges()) values.emplace(Doubleton(u, v), w);
  for (const auto& mv : t.moves) {
    auto [it, fresh] = values.emplace(mv.pair, mv.answer);
    if (!fresh && it->second != mv.answer) return std::nullopt;
  }
  std::vector<WeightedPair> edges;
  for (const auto& [p, w] : values) edges.push_back({p.a(), p.b(), w});
  return PartialMetric(t.base.labels(), edges);
}

bool is_full_metric(const PartialMetric& m) {
  if (!m.is_full()) return false;
  for (const Edge& e : m.edges()) {
    if (e.weight.sign() <= 0) return false;
  }
  return oracle::full_metric_by_triangles(m);
}

Outcome games() {
  Outcome o;
  std::vector<std::pair<std::string, PartialMetric>> bases{{"H", oracle::h_graph()}, {"cantor2", cantor_tree(2)}};
  for (std::uint64_t k = 0; k < 20; ++k) {
    bases.emplace_back("random" + std::to_string(k), random_floppy(4 + k % 6, Rational(2 + k % 5, 10), 700 + k));
  }
  const std::array<SamplerMode, 5> modes{SamplerMode::low, SamplerMode::high, SamplerMode::mid, SamplerMode::random,
                                         SamplerMode::mixed};
  std::size_t played = 0;
  for (const auto& [name, base] : bases) {
    const std::size_t lambda = base.non_edges().size();
    for (std::uint64_t g = 0; g < 1000; ++g) {
      auto p1 = winning_player1(base);
      std::unique_ptr<PlayerIIStrategy> p2 =
          g % 6 == 5 ? adversary_player2() : sampler_player2(modes[g % 6], g);
      const GameTranscript t = play(base, lambda, *p1, *p2);
      ++played;
      const auto rel = relation(t);
      o.expect(t.verdict == Verdict::player_i_wins && rel && is_full_metric(*rel), [&] {
        return name + " game " + std::to_string(g) + ": " + std::string(to_string(t.verdict)) + " " + t.reason.message;
      });
    }
  }
  o.note = std::to_string(played) + " games on " + std::to_string(bases.size()) + " bases";
  return o;
}

Outcome sabotage() {
  Outcome o;
  Rng rng(2026);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Rational ab(rng.between(1, 12), rng.between(1, 4));
    const Rational bc(rng.between(1, 12), rng.between(1, 4));
    const Rational cd(rng.between(1, 12), rng.between(1, 4));
    const PartialMetric base = oracle::path_abcd(ab, bc, cd);
    const Rational dd = ddot(base, {"a", "c"}, {"b", "d"});
    const Rational low(rng.between(1, 8), rng.between(1, 3));
    const Rational high = low + dd * Rational(3) + Rational(rng.between(1, 40), rng.between(1, 5));
    ChoiceSet f_ac = k % 3 == 2 ? ChoiceSet::of_interval(low, high) : ChoiceSet::of_points({low, high});
    if (k % 3 == 1) f_ac.add_point(low + Rational(1, 7));
    std::map<Doubleton, ChoiceSet> family{
        {Doubleton("a", "c"), f_ac},
        {Doubleton("b", "d"), ChoiceSet::of_points({Rational(rng.between(1, 30), rng.between(1, 3))})},
        {Doubleton("a", "d"), ChoiceSet::of_interval(Rational(1), std::nullopt)}};
    const std::string tag = "variant " + std::to_string(k);
    if (const Extended diam = f_ac.diameter(); !diam.is_infinite() && !(dd * Rational(3) < diam.value())) {
      o.expect(false, [&] { return tag + ": family does not meet the diameter premise"; });
      continue;
    }
    const auto plan = sabotage_witness(base, family);
    if (!plan) {
      o.expect(false, [&] { return tag + ": no plan"; });
      continue;
    }
    auto p1 = family_player1(base, family);
    auto p2 = plan_player2(*plan);
    const GameTranscript t = play(base, base.non_edges().size(), *p1, *p2);
    bool explicit_failure = false;
    if (t.reason.polygonal) {
      // The reported chain must undercut the reported edge in the relation.
      const auto& v = *t.reason.polygonal;
      const auto rel = relation(t);
      Rational sum(0);
      bool chain_ok = rel.has_value() && v.chain.size() >= 2;
      for (std::size_t s = 0; chain_ok && s + 1 < v.chain.size(); ++s) {
        auto w = rel->weight(Doubleton(v.chain[s], v.chain[s + 1]));
        if (!w) chain_ok = false; else sum += *w;
      }
      explicit_failure = chain_ok && sum == v.chain_weight && sum < *rel->weight(v.edge) && v.weight == *rel->weight(v.edge);
    }
    o.expect(t.verdict == Verdict::player_ii_wins && t.reason.kind == WitnessKind::polygonal && explicit_failure,
             [&] { return tag + ": replay did not produce a polygonal failure"; });
  }
  return o;
}

Outcome glue_suite() {
  Outcome o;
  std::size_t certified = 0, bounds = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Patchwork pw = testing_support::random_patchwork(seed);
    const std::string tag = "patchwork " + std::to_string(seed);
    if (!validate_patchwork(pw).valid()) {
      o.expect(false, [&] { return tag + ": generator produced an invalid patchwork"; });
      continue;
    }
    const PartialMetric d = glue(pw);
    const Fresh f(d);
    const GluedDistances gd(pw);
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < d.size(); ++j) {
        o.expect(gd.hat(d.label(i), d.label(j)) == f.hat(i, j) && glue_hat(pw, d.label(i), d.label(j)) == f.hat(i, j),
                 [&] { return tag + ": glue_hat(" + d.pair(i, j).str() + ")"; });
      }
    }
    const CertReport c = floppy_certificate(pw);
    if (!c.certified) continue;
    ++certified;
    o.expect(f.floppy(d) && is_floppy(d).floppy, [&] { return tag + ": certified but not floppy"; });
    for (const auto& b : c.bounds) {
      ++bounds;
      auto [i, j] = d.index_of(b.pair);
      const Rational gap = f.hat(i, j) - f.check(i, j);
      o.expect(b.gap == gap && b.delta <= gap, [&] { return tag + ": bound at " + b.pair.str(); });
    }
  }
  o.expect(certified > 0, [] { return std::string("no patchwork was certified"); });
  o.note = std::to_string(certified) + "/200 certified, " + std::to_string(bounds) + " bounds";
  return o;
}

Outcome cantor() {
  Outcome o;
  std::size_t printed_mismatch = 0, pairs = 0;
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    const PartialMetric m = cantor_tree(depth);
    const Fresh f(m);
    o.expect(f.floppy(m) && is_floppy(m).floppy, [&] { return "depth " + std::to_string(depth) + " not floppy"; });
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const std::string& s = m.label(i).label();
        const std::string& t = m.label(j).label();
        std::size_t meet = 1;
        while (meet < s.size() && meet < t.size() && s[meet] == t[meet]) ++meet;
        const Rational ps = pow2_neg(s.size() - 1), pt = pow2_neg(t.size() - 1), pm = pow2_neg(meet - 1);
        ++pairs;
        o.expect(f.check(i, j) == (ps - pt).abs(), [&] { return "check(" + m.pair(i, j).str() + ")"; });
        o.expect(f.hat(i, j) == Rational(2) * pm - ps - pt, [&] { return "hat(" + m.pair(i, j).str() + ")"; });
        if (f.hat(i, j) != ps + pt - Rational(2) * pm) ++printed_mismatch;
      }
    }
  }
  o.note = "printed hat expression differs on " + std::to_string(printed_mismatch) + "/" + std::to_string(pairs) +
           " pairs; corrected expression asserted";
  return o;
}

Outcome injectivity() {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& e : corpus()) {
    const PartialMetric& m = e.metric;
    if (m.non_edges().empty()) continue;
    Rational total(1);
    for (const Edge& ed : m.edges()) total += ed.weight;
    // One wide interval for every pair, so unguarded midpoints collide.
    std::map<Doubleton, ChoiceSet> sets;
    for (auto [i, j] : m.non_edges()) sets.emplace(m.pair(i, j), ChoiceSet::of_interval(Rational(0), total));
    const OrderPolicy order = e.seed % 3 == 0   ? OrderPolicy::lexicographic()
                              : e.seed % 3 == 1 ? OrderPolicy::max_gap()
                                                : OrderPolicy::random(e.seed);
    ++runs;
    try {
      const ExtensionTrace t = full_extend(m, order, ChoicePolicy::from_sets(sets));
      std::set<Rational> seen;
      bool ok = is_full_metric(t.result);
      for (const auto& s : t.steps) ok = ok && s.interval.contains(s.chosen) && seen.insert(s.chosen).second;
      o.expect(ok && t.steps.size() == m.non_edges().size(),
               [&] { return "seed " + std::to_string(e.seed) + ": repeated or inadmissible value"; });
    } catch (const Error& err) {
      o.expect(false, [&] { return "seed " + std::to_string(e.seed) + ": " + err.what(); });
    }
  }
  o.note = std::to_string(runs) + " runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"one-step closure", closure},        {"one-step inequalities", pstep},
      {"doubleton lemma", lemma},           {"shortest-path oracle", oracle_equivalence},
      {"game", games},                      {"sabotage", sabotage},
      {"glue", glue_suite},                 {"cantor", cantor},
      {"injective choice", injectivity}};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.expect(false, [&] { return std::string("uncaught: ") + e.what(); });
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.failures == 0;
    failed += !pass;
    std::printf("criterion %zu: %s  %s: %zu checks, %zu failures%s%s (%.1fs)\n", k + 1, pass ? "PASS" : "FAIL",
                criteria[k].first.c_str(), o.checks, o.failures, o.note.empty() ? "" : "; ",
                o.note.c_str(), secs);
    if (!pass) std::printf("  first failure: %s\n", o.first_failure.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
