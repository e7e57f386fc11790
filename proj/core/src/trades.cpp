// Copyright 2026 The tridecomp Authors
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

#include "tridecomp/trades.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "tridecomp/errors.hpp"

namespace tridecomp {

std::string to_string(TradeOptions::Ordering ordering) {
  return ordering == TradeOptions::Ordering::kMod3 ? "mod3" : "mod4";
}

namespace {

std::size_t at(int v) { return static_cast<std::size_t>(v); }

// Per-template data that does not depend on the hexagon it is placed on.
struct PreparedTemplate {
  const TradeTemplate* tmpl = nullptr;
  std::vector<std::vector<int>> in_neighbors;  // slot -> slots joined by an in-edge
  std::vector<int> order;                      // internal slots, most constrained first
};

PreparedTemplate prepare(const TradeTemplate& t) {
  PreparedTemplate p;
  p.tmpl = &t;
  const int slots = t.slot_count();
  p.in_neighbors.assign(at(slots), {});
  for (const auto& tri : t.in_triangles) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a != b) p.in_neighbors[at(tri[at(a)])].push_back(tri[at(b)]);
      }
    }
  }
  for (auto& list : p.in_neighbors) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<char> placed(at(slots), 0);
  for (int s = 0; s < 6; ++s) placed[at(s)] = 1;
  for (int round = 6; round < slots; ++round) {
    int best = -1, best_score = -1;
    for (int s = 6; s < slots; ++s) {
      if (placed[at(s)]) continue;
      int score = 0;
      for (int u : p.in_neighbors[at(s)]) score += placed[at(u)];
      if (score > best_score) {
        best = s;
        best_score = score;
      }
    }
    placed[at(best)] = 1;
    p.order.push_back(best);
  }
  return p;
}

int out_triangle_on(const TradeTemplate& t, int s, int u) {
  for (std::size_t k = 0; k < t.out_triangles.size(); ++k) {
    const auto& tri = t.out_triangles[k];
    bool hs = std::find(tri.begin(), tri.end(), s) != tri.end();
    bool hu = std::find(tri.begin(), tri.end(), u) != tri.end();
    if (hs && hu) return static_cast<int>(k);
  }
  return -1;
}

Cycle rotate(const Cycle& c, int start) {
  Cycle out;
  const int len = static_cast<int>(c.size());
  out.reserve(c.size());
  for (int k = 0; k < len; ++k) out.push_back(c[at((start + k) % len)]);
  return out;
}

// Positions i < j holding the same vertex, or {-1, -1}.
std::pair<int, int> repeated_vertex(const Cycle& c) {
  std::map<int, int> first;
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    auto [it, fresh] = first.emplace(c[at(k)], k);
    if (!fresh) return {it->second, k};
  }
  return {-1, -1};
}

bool distinct_vertices(const Cycle& c) { return repeated_vertex(c).first < 0; }

}  // namespace

struct TradeEngine::Impl {
  Impl(TradeEngine& owner, Graph& host, std::vector<int> labels, std::vector<int> blocks, TradeOptions options,
       const TradeCatalog& catalog)
      : self(owner),
        host(host),
        label(std::move(labels)),
        block(std::move(blocks)),
        options(options),
        catalog(catalog) {
    const int n = host.vertex_count();
    if (static_cast<int>(label.size()) != n) throw PreconditionError("trade labels do not match the host");
    if (block.empty()) block.assign(at(n), -1);
    if (static_cast<int>(block.size()) != n) throw PreconditionError("trade blocks do not match the host");
    for (int l = 0; l < 3; ++l) {
      std::vector<int> members;
      for (int v = 0; v < n; ++v) {
        if (label[at(v)] == l) members.push_back(v);
      }
      label_mask[at(l)] = make_mask(n, members);
    }
    in_config.assign(at(n), 0);
    on_trail.assign(at(n), 0);
    pool_load.assign(at(n), 0);
    self.ledger_.boundary_uses.assign(at(n), 0);
  }

  TradeEngine& self;
  Graph& host;
  std::vector<int> label;
  std::vector<int> block;
  TradeOptions options;
  const TradeCatalog& catalog;
  std::array<std::vector<std::uint64_t>, 3> label_mask;
  std::map<const TradeTemplate*, PreparedTemplate> prepared;
  std::vector<char> in_config;
  std::vector<char> on_trail;
  std::vector<int> pool_load;  // occurrences on trails still waiting in the schedule
  std::map<std::pair<int, int>, int> block_load;  // (label, block) -> configuration vertices

  const PreparedTemplate& prepared_for(const TradeTemplate& t) {
    auto it = prepared.find(&t);
    if (it == prepared.end()) it = prepared.emplace(&t, prepare(t)).first;
    return it->second;
  }

  // --- instantiation ------------------------------------------------------

  struct Placement {
    const PreparedTemplate* prep = nullptr;
    std::array<int, 3> actual_label{};    // canonical label -> actual label
    std::array<std::array<int, 3>, 3> actual_block{};  // [canonical label][canonical block] (refined only)
    int apex_slot = -1;                   // open window: apex of the dropped out-triangle
    std::vector<int> vertex;              // slot -> vertex
    long long nodes = 0;
  };

  void bump_load(int v, int delta) {
    if (block[at(v)] >= 0) block_load[{label[at(v)], block[at(v)]}] += delta;
  }

  // Vertices a new P3 apex or gadget vertex must avoid. Trails are edge
  // disjoint, so sharing a vertex with a pooled trail is legal; such
  // vertices are only tried late.
  bool busy(int v) const { return on_trail[at(v)] != 0; }
  bool pooled(int v) const { return pool_load[at(v)] > 0; }

  void hold(const Cycle& c, int delta) {
    for (int v : c) pool_load[at(v)] += delta;
  }

  bool crowded(int v) {
    if (block[at(v)] < 0) return false;
    auto it = block_load.find({label[at(v)], block[at(v)]});
    return it != block_load.end() && it->second > 2;
  }

  bool place(Placement& pl, std::size_t k, int relaxed_budget, int& relaxed_used) {
    const auto& order = pl.prep->order;
    if (k == order.size()) return true;
    const TradeTemplate& t = *pl.prep->tmpl;
    const int s = order[k];
    const int want = pl.actual_label[at(t.label(s))];
    std::vector<std::uint64_t> mask = label_mask[at(want)];
    for (int u : pl.prep->in_neighbors[at(s)]) {
      int vu = pl.vertex[at(u)];
      if (vu < 0) continue;
      auto row = host.row(vu);
      for (std::size_t w = 0; w < mask.size(); ++w) mask[w] &= row[w];
    }
    const int want_block = t.refined() ? pl.actual_block[at(t.label(s))][at(t.block(s))] : -1;
    struct Cand {
      bool crowded;
      bool pooled;
      int degree;
      int v;
    };
    std::vector<Cand> cands;
    for (std::size_t w = 0; w < mask.size(); ++w) {
      std::uint64_t bits = mask[w];
      while (bits) {
        int v = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
        if (in_config[at(v)]) continue;
        if (s == pl.apex_slot && busy(v)) continue;
        if (want_block >= 0 && block[at(v)] != want_block) continue;
        cands.push_back({crowded(v), s == pl.apex_slot && pooled(v), host.degree(v), v});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.crowded != b.crowded) return !a.crowded;
      if (a.pooled != b.pooled) return !a.pooled;
      if (a.degree != b.degree) return a.degree > b.degree;
      return a.v < b.v;
    });
    for (const Cand& c : cands) {
      if (c.crowded && (options.strict_block_rule || relaxed_used >= relaxed_budget)) break;
      if (++pl.nodes > options.instantiate_budget) return false;
      pl.vertex[at(s)] = c.v;
      in_config[at(c.v)] = 1;
      bump_load(c.v, +1);
      relaxed_used += c.crowded ? 1 : 0;
      if (place(pl, k + 1, relaxed_budget, relaxed_used)) return true;
      relaxed_used -= c.crowded ? 1 : 0;
      bump_load(c.v, -1);
      in_config[at(c.v)] = 0;
      pl.vertex[at(s)] = -1;
    }
    return false;
  }

  // Tries to embed template t on the boundary vertices. On success the
  // configuration bookkeeping is left to the caller to clear.
  bool instantiate(Placement& pl, int& relaxed) {
    const TradeTemplate& t = *pl.prep->tmpl;
    for (int s = 0; s < 6; ++s) {
      in_config[at(pl.vertex[at(s)])] = 1;
      bump_load(pl.vertex[at(s)], +1);
    }
    bool ok = false;
    // First without crowding a block, then allowing it where permitted.
    for (int budget : {0, static_cast<int>(t.internal_labels.size())}) {
      int used = 0;
      pl.nodes = 0;
      if (place(pl, 0, budget, used)) {
        ok = true;
        relaxed = used;
        break;
      }
      if (options.strict_block_rule) break;
    }
    for (int s = 0; s < t.slot_count(); ++s) {
      int v = pl.vertex[at(s)];
      if (v < 0) continue;
      in_config[at(v)] = 0;
      bump_load(v, -1);
    }
    return ok;
  }

  // --- shrinking ----------------------------------------------------------

  std::vector<const TradeTemplate*> candidates(const HexLabeling& canonical) {
    std::vector<const TradeTemplate*> out;
    for (const TradeTemplate* t : catalog.lookup(canonical)) {
      if (options.family == TradeTemplate::Family::kTOnly && t->family != TradeTemplate::Family::kTOnly) continue;
      out.push_back(t);
    }
    return out;
  }

  const TradeTemplate* refined_template(const HexAlignment& al, const std::array<int, 6>& window,
                                        std::array<std::array<int, 3>, 3>& actual_block) {
    // Canonical blocks by first appearance per canonical label, in slot order.
    std::array<std::array<int, 3>, 3> canon_of{};  // [canonical label][actual block]
    for (auto& row : canon_of) row.fill(-1);
    std::array<int, 3> next{};
    std::array<int, 6> blocks{};
    for (int s = 0; s < 6; ++s) {
      int v = window[at(al.position_of_slot[at(s)])];
      int cl = al.canonical.labels[at(s)];
      int b = block[at(v)];
      if (b < 0) return nullptr;
      if (canon_of[at(cl)][at(b)] < 0) canon_of[at(cl)][at(b)] = next[at(cl)]++;
      blocks[at(s)] = canon_of[at(cl)][at(b)];
    }
    for (int cl = 0; cl < 3; ++cl) {
      for (int b = 0; b < 3; ++b) {
        if (canon_of[at(cl)][at(b)] < 0) canon_of[at(cl)][at(b)] = next[at(cl)]++;
        actual_block[at(cl)][at(canon_of[at(cl)][at(b)])] = b;
      }
    }
    if (options.family == TradeTemplate::Family::kAny) {
      if (const TradeTemplate* t = TradeCatalog::builtin_refined().find_refined(al.canonical, blocks)) return t;
    }
    std::string key = al.canonical.to_string() + ":" + to_string(options.family) + ":";
    for (int b : blocks) key += static_cast<char>('0' + b);
    // The search costs up to a few seconds, so results are shared process-wide.
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<TradeTemplate>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::unique_ptr<TradeTemplate> t;
      try {
        t = std::make_unique<TradeTemplate>(derive_refined_template(al.canonical, blocks, options.family));
      } catch (const CandidateExhausted&) {
        t = nullptr;
      }
      it = cache.emplace(key, std::move(t)).first;
    }
    return it->second.get();
  }

  // Attempts one template on the window starting at `start`. Returns true and
  // fills `step` on success.
  bool try_window(const Cycle& trail, int start, bool open, TradeStep& step) {
    const int len = static_cast<int>(trail.size());
    std::array<int, 6> window{};
    std::array<int, 6> labels{};
    std::set<int> seen;
    for (int k = 0; k < 6; ++k) {
      window[at(k)] = trail[at((start + k) % len)];
      labels[at(k)] = label[at(window[at(k)])];
      if (labels[at(k)] < 0) return false;
      if (!seen.insert(window[at(k)]).second) return false;
    }
    HexAlignment al = align_hexagon(labels);
    std::array<int, 6> slot_of_position{};
    for (int s = 0; s < 6; ++s) slot_of_position[at(al.position_of_slot[at(s)])] = s;

    auto attempt = [&](const TradeTemplate& t, const std::array<std::array<int, 3>, 3>* blocks) -> bool {
      Placement pl;
      pl.prep = &prepared_for(t);
      for (int a = 0; a < 3; ++a) pl.actual_label[at(al.label_map[at(a)])] = a;
      if (blocks) pl.actual_block = *blocks;
      pl.vertex.assign(at(t.slot_count()), -1);
      for (int s = 0; s < 6; ++s) pl.vertex[at(s)] = window[at(al.position_of_slot[at(s)])];
      int closing = -1;
      if (open) {
        closing = out_triangle_on(t, slot_of_position[0], slot_of_position[5]);
        if (closing < 0) return false;
        for (int s : t.out_triangles[at(closing)]) {
          if (s >= 6) pl.apex_slot = s;
        }
      }
      int relaxed = 0;
      if (!instantiate(pl, relaxed)) return false;
      // Charge with the closing triangle located through the slot map.
      int cross = 0;
      std::array<int, 3> within{};
      for (const auto& tri : t.in_triangles) {
        Triangle real(pl.vertex[at(tri[0])], pl.vertex[at(tri[1])], pl.vertex[at(tri[2])]);
        host.remove_triangle(real);
        step.consumed.push_back(real);
        int l0 = label[at(real.a)], l1 = label[at(real.b)], l2 = label[at(real.c)];
        if (l0 == l1 && l1 == l2) {
          ++within[at(l0)];
        } else {
          ++cross;
        }
      }
      int apex = -1;
      for (std::size_t k = 0; k < t.out_triangles.size(); ++k) {
        const auto& tri = t.out_triangles[k];
        if (static_cast<int>(k) == closing) {
          apex = pl.vertex[at(pl.apex_slot)];
          continue;
        }
        step.emitted.emplace_back(pl.vertex[at(tri[0])], pl.vertex[at(tri[1])], pl.vertex[at(tri[2])]);
      }
      auto& L = self.ledger_;
      ++L.shrink_trades;
      if (!open) ++L.hexagon_trades;
      if (blocks) ++L.refined_templates;
      L.block_rule_relaxed += relaxed;
      L.consumed_cross += cross;
      for (int l = 0; l < 3; ++l) {
        L.consumed_within[at(l)] += within[at(l)];
        L.max_within_per_trade = std::max(L.max_within_per_trade, within[at(l)]);
      }
      L.max_cross_per_trade = std::max(L.max_cross_per_trade, cross);
      for (int v : window) ++L.boundary_uses[at(v)];
      if (open) {
        Cycle rest{window[0], apex, window[5]};
        for (int k = 6; k < len; ++k) rest.push_back(trail[at((start + k) % len)]);
        step.trails.push_back(std::move(rest));
        step.p3_position = 0;
      }
      return true;
    };

    for (int v : trail) on_trail[at(v)] = 1;
    bool done = false;
    for (const TradeTemplate* t : candidates(al.canonical)) {
      if (attempt(*t, nullptr)) {
        done = true;
        break;
      }
    }
    if (!done && options.family == TradeTemplate::Family::kAny) {
      std::array<std::array<int, 3>, 3> actual_block{};
      if (const TradeTemplate* t = refined_template(al, window, actual_block)) done = attempt(*t, &actual_block);
    }
    for (int v : trail) on_trail[at(v)] = 0;
    return done;
  }

  TradeStep shrink(const Cycle& trail, int anchor) {
    const int len = static_cast<int>(trail.size());
    if (len < 6) throw PreconditionError("shrink needs a trail of length at least 6");
    TradeStep step;
    if (len == 6) {
      if (!distinct_vertices(trail)) throw PreconditionError("six-trail with a repeated vertex cannot be traded");
      if (try_window(trail, 0, false, step)) return step;
      throw CandidateExhausted(diagnose(trail));
    }
    std::vector<int> starts;
    if (anchor >= 0) {
      starts.push_back(((anchor - 2) % len + len) % len);
      starts.push_back(((anchor - 1) % len + len) % len);
    }
    for (int s = 0; s < len; ++s) {
      if (std::find(starts.begin(), starts.end(), s) == starts.end()) starts.push_back(s);
    }
    for (int s : starts) {
      if (try_window(trail, s, true, step)) return step;
    }
    throw CandidateExhausted(diagnose(trail));
  }

  std::string diagnose(const Cycle& trail) const {
    std::string s = "no trade instantiates on trail of length " + std::to_string(trail.size()) + " [";
    for (std::size_t k = 0; k < trail.size() && k < 12; ++k) {
      if (k) s += " ";
      s += std::to_string(trail[k]);
    }
    if (trail.size() > 12) s += " ...";
    // Unlabelled vertices (a remainder, say) are isolated by design; skip them.
    int low = -1;
    for (int v = 0; v < host.vertex_count(); ++v) {
      if (label[at(v)] < 0) continue;
      if (low < 0 || host.degree(v) < low) low = host.degree(v);
    }
    s += "]; labelled host min degree " + std::to_string(low) + " (epsilon too large for the host?)";
    return s;
  }

  // --- merging ------------------------------------------------------------

  TradeStep merge(const Cycle& a, const Cycle& b) {
    TradeStep step;
    std::set<int> in_a(a.begin(), a.end());
    if (options.allow_splice) {
      for (int j = 0; j < static_cast<int>(b.size()); ++j) {
        if (!in_a.count(b[at(j)])) continue;
        int w = b[at(j)];
        int i = static_cast<int>(std::find(a.begin(), a.end(), w) - a.begin());
        Cycle joined = rotate(a, i);
        Cycle tail = rotate(b, j);
        joined.insert(joined.end(), tail.begin(), tail.end());
        step.trails.push_back(std::move(joined));
        ++self.ledger_.splice_merges;
        return step;
      }
    }
    for (int v : a) on_trail[at(v)] = 1;
    for (int v : b) on_trail[at(v)] = 1;
    auto clear = [&] {
      for (int v : a) on_trail[at(v)] = 0;
      for (int v : b) on_trail[at(v)] = 0;
    };
    // Gadget A = (x, g1, h1), B = (g1, g2, h2), C = (g2, y, h3), all cross.
    auto by_degree = [&](std::vector<int> vs) {
      std::sort(vs.begin(), vs.end(), [&](int p, int q) {
        if (pooled(p) != pooled(q)) return !pooled(p);
        if (host.degree(p) != host.degree(q)) return host.degree(p) > host.degree(q);
        return p < q;
      });
      return vs;
    };
    auto free_common = [&](std::initializer_list<int> anchors, int want_label, std::initializer_list<int> exclude) {
      std::vector<int> out;
      if (want_label < 0) return out;
      std::vector<std::uint64_t> mask = label_mask[at(want_label)];
      for (int u : anchors) {
        auto row = host.row(u);
        for (std::size_t w = 0; w < mask.size(); ++w) mask[w] &= row[w];
      }
      for (std::size_t w = 0; w < mask.size(); ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
          int v = static_cast<int>(w * 64) + std::countr_zero(bits);
          bits &= bits - 1;
          if (busy(v)) continue;
          if (std::find(exclude.begin(), exclude.end(), v) != exclude.end()) continue;
          out.push_back(v);
        }
      }
      return by_degree(std::move(out));
    };
    auto third = [](int p, int q) { return 3 - p - q; };
    long long budget = options.instantiate_budget;
    std::vector<int> xs = by_degree(std::vector<int>(in_a.begin(), in_a.end()));
    std::set<int> bset(b.begin(), b.end());
    std::vector<int> ys = by_degree(std::vector<int>(bset.begin(), bset.end()));
    for (int x : xs) {
      const int lx = label[at(x)];
      if (lx < 0) continue;
      for (int y : ys) {
        const int ly = label[at(y)];
        if (ly < 0) continue;
        for (int lg1 = 0; lg1 < 3; ++lg1) {
          if (lg1 == lx) continue;
          for (int g1 : free_common({x}, lg1, {})) {
            for (int h1 : free_common({x, g1}, third(lx, lg1), {g1})) {
              for (int lg2 = 0; lg2 < 3; ++lg2) {
                if (lg2 == lg1 || lg2 == ly) continue;
                for (int g2 : free_common({g1, y}, lg2, {g1, h1})) {
                  if (--budget < 0) {
                    clear();
                    throw CandidateExhausted("no merge gadget between trails of length " + std::to_string(a.size()) +
                                             " and " + std::to_string(b.size()) + " within the search budget");
                  }
                  auto h2s = free_common({g1, g2}, third(lg1, lg2), {g1, g2, h1});
                  if (h2s.empty()) continue;
                  auto h3s = free_common({g2, y}, third(lg2, ly), {g1, g2, h1, h2s.front()});
                  if (h3s.empty()) continue;
                  int h2 = h2s.front(), h3 = h3s.front();
                  clear();
                  Triangle ta(x, g1, h1), tb(g1, g2, h2), tc(g2, y, h3);
                  for (const Triangle& t : {ta, tb, tc}) {
                    host.remove_triangle(t);
                    step.consumed.push_back(t);
                  }
                  int ia = static_cast<int>(std::find(a.begin(), a.end(), x) - a.begin());
                  int ib = static_cast<int>(std::find(b.begin(), b.end(), y) - b.begin());
                  Cycle joined = rotate(a, ia);
                  for (int v : {x, h1, g1, h2, g2, h3}) joined.push_back(v);
                  Cycle tail = rotate(b, ib);
                  joined.insert(joined.end(), tail.begin(), tail.end());
                  for (int v : {y, g2, g1}) joined.push_back(v);
                  step.trails.push_back(std::move(joined));
                  auto& L = self.ledger_;
                  ++L.merge_trades;
                  L.consumed_cross += 3;
                  L.max_cross_per_trade = std::max(L.max_cross_per_trade, 3);
                  return step;
                }
              }
            }
          }
        }
      }
    }
    clear();
    throw CandidateExhausted("no merge gadget between trails of length " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
  }

  // --- schedule -----------------------------------------------------------

  void record(TradeStep& step) {
    self.consumed_.insert(self.consumed_.end(), step.consumed.begin(), step.consumed.end());
    self.emitted_.insert(self.emitted_.end(), step.emitted.begin(), step.emitted.end());
  }

  // Cuts a trail at its first repeated vertex.
  std::pair<Cycle, Cycle> split(const Cycle& c) {
    auto [i, j] = repeated_vertex(c);
    if (i < 0) throw ContractViolation("split of a trail without repeated vertex");
    Cycle first(c.begin() + i, c.begin() + j);
    Cycle second(c.begin() + j, c.end());
    second.insert(second.end(), c.begin(), c.begin() + i);
    ++self.ledger_.splits;
    return {std::move(first), std::move(second)};
  }

  // Shrinks `c` while it is longer than `stop`; pieces below or equal to
  // `stop` (and split-off pieces) go to `out`. With stop < 3 the trail is
  // reduced to triangles.
  void reduce(Cycle c, int stop, std::vector<Cycle>& out) {
    int anchor = -1;
    for (;;) {
      const int len = static_cast<int>(c.size());
      if (len == 3) {
        self.emitted_.emplace_back(c[0], c[1], c[2]);
        ++self.ledger_.direct_triangles;
        return;
      }
      if (len <= stop || len < 6) {
        hold(c, +1);
        out.push_back(std::move(c));
        return;
      }
      if (len == 6 && !distinct_vertices(c)) {
        auto [p, q] = split(c);
        reduce(std::move(p), stop, out);
        reduce(std::move(q), stop, out);
        return;
      }
      TradeStep step;
      try {
        step = shrink(c, anchor);
      } catch (const CandidateExhausted&) {
        if (repeated_vertex(c).first < 0) throw;
        auto [p, q] = split(c);
        reduce(std::move(p), stop, out);
        reduce(std::move(q), stop, out);
        return;
      }
      record(step);
      if (step.trails.empty()) return;
      c = std::move(step.trails.front());
      anchor = step.p3_position;
    }
  }

  bool late(const Cycle& c) const {
    const std::size_t len = c.size();
    return options.ordering == TradeOptions::Ordering::kMod3 ? len % 3 == 1 : len % 4 == 1;
  }

  void absorb(std::vector<Cycle> trails) {
    long long total = 0;
    for (const auto& c : trails) {
      if (c.size() < 3) throw PreconditionError("trail shorter than three");
      total += static_cast<long long>(c.size());
    }
    if (total % 3 != 0) throw PreconditionError("trail lengths do not sum to a multiple of three");
    const long long cap = 64 + 16 * total;
    long long steps = 0;

    std::vector<Cycle> pool;
    for (const auto& c : trails) hold(c, +1);
    // Residue-0 trails first, fully. reduce() re-holds whatever it hands back.
    for (auto& c : trails) {
      if (c.size() % 3 == 0) {
        hold(c, -1);
        reduce(std::move(c), 0, pool);
      } else {
        pool.push_back(std::move(c));
      }
    }
    for (;;) {
      if (++steps > cap) throw ContractViolation("trade schedule exceeded its iteration cap");
      // Anything divisible by three is finished off right away.
      std::vector<Cycle> next;
      bool progressed = false;
      for (auto& c : pool) {
        if (c.size() % 3 == 0) {
          hold(c, -1);
          reduce(std::move(c), 0, next);
          progressed = true;
        } else {
          next.push_back(std::move(c));
        }
      }
      pool = std::move(next);
      if (progressed) continue;
      if (pool.empty()) return;

      // Pre-shrink long trails to length 4 or 5, the late class last.
      std::stable_sort(pool.begin(), pool.end(), [&](const Cycle& p, const Cycle& q) { return !late(p) && late(q); });
      bool shrunk = false;
      next.clear();
      for (auto& c : pool) {
        if (c.size() > 5) {
          hold(c, -1);
          reduce(std::move(c), 5, next);
          shrunk = true;
        } else {
          next.push_back(std::move(c));
        }
      }
      pool = std::move(next);
      if (shrunk) continue;

      // Every trail now has length 4 or 5.
      std::vector<std::size_t> r1, r2;
      for (std::size_t k = 0; k < pool.size(); ++k) (pool[k].size() % 3 == 1 ? r1 : r2).push_back(k);
      std::size_t i, j;
      if (!r1.empty() && !r2.empty()) {
        i = r1.front();
        j = r2.front();
      } else if (r1.size() >= 2) {
        i = r1[0];
        j = r1[1];
      } else if (r2.size() >= 2) {
        i = r2[0];
        j = r2[1];
      } else {
        throw ContractViolation("trade schedule dead end: a lone trail of length " + std::to_string(pool.front().size()));
      }
      hold(pool[i], -1);
      hold(pool[j], -1);
      TradeStep step = merge(pool[i], pool[j]);
      record(step);
      next.clear();
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (k != i && k != j) next.push_back(std::move(pool[k]));
      }
      Cycle joined = std::move(step.trails.front());
      const int stop = joined.size() % 3 == 0 ? 0 : 5;
      reduce(std::move(joined), stop, next);
      pool = std::move(next);
    }
  }
};

TradeEngine::TradeEngine(Graph& host, std::vector<int> labels, std::vector<int> blocks, TradeOptions options,
                         const TradeCatalog& catalog)
    : impl_(std::make_unique<Impl>(*this, host, std::move(labels), std::move(blocks), options, catalog)) {}

TradeEngine::~TradeEngine() = default;

TradeStep TradeEngine::shrink_cycle(const Cycle& trail, int anchor) {
  TradeStep step = impl_->shrink(trail, anchor);
  impl_->record(step);
  return step;
}

TradeStep TradeEngine::merge_cycles(const Cycle& a, const Cycle& b) {
  if (a.size() % 3 == 0 || b.size() % 3 == 0) throw PreconditionError("merge needs trails of length not divisible by 3");
  TradeStep step = impl_->merge(a, b);
  impl_->record(step);
  return step;
}

void TradeEngine::absorb(std::vector<Cycle> trails) { impl_->absorb(std::move(trails)); }

// --- leftover absorption ---------------------------------------------------

namespace {

Rational ratio(long long p, long long q) { return Rational(p, q); }

}  // namespace

Rational AbsorbResult::epsilon_t_limit() const {
  return t_before.epsilon + ratio(leftover_degree, 2LL * ti_before[0].part_size);
}
Rational AbsorbResult::epsilon_ti_limit(int i) const {
  return ti_before[at(i)].epsilon + ratio(leftover_degree, ti_before[at(i)].part_size);
}
Rational AbsorbResult::xi_t_limit() const {
  long long n = ti_before[0].part_size;
  return t_before.xi + ratio(71 * leftover_edges, 36 * n * n);
}
Rational AbsorbResult::xi_ti_limit(int i) const {
  long long n = ti_before[at(i)].part_size;
  return ti_before[at(i)].xi + ratio(9 * leftover_edges, 2 * n * n);
}
bool AbsorbResult::epsilon_t_bound() const { return t_after.epsilon <= epsilon_t_limit(); }
bool AbsorbResult::epsilon_ti_bound(int i) const { return ti_after[at(i)].epsilon <= epsilon_ti_limit(i); }
bool AbsorbResult::xi_t_bound() const { return t_after.xi <= xi_t_limit(); }
bool AbsorbResult::xi_ti_bound(int i) const { return ti_after[at(i)].xi <= xi_ti_limit(i); }

AbsorbResult absorb_leftovers(const Graph& leftover, Graph& host, const VertexPartition& partition,
                              const TradeOptions& options) {
  const int n_vertices = host.vertex_count();
  if (leftover.vertex_count() != n_vertices || partition.vertex_count() != n_vertices) {
    throw PreconditionError("leftover, host and partition disagree on the vertex count");
  }
  if (!is_tridivisible(leftover)) throw PreconditionError("leftover graph is not tridivisible");
  for (const Edge& e : host.edges()) {
    if (partition.in_remainder(e.u) || partition.in_remainder(e.v) ||
        partition.block_of(e.u) == partition.block_of(e.v)) {
      throw PreconditionError("host edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                              " is not between two blocks of the core");
    }
  }
  for (const Edge& e : leftover.edges()) {
    if (host.has_edge(e)) throw PreconditionError("leftover and host share an edge");
    if (partition.in_remainder(e.u) || partition.in_remainder(e.v)) {
      throw PreconditionError("leftover edge touches the remainder");
    }
  }

  AbsorbResult r;
  const PartiteView t_view = partition.big_tripartite();
  r.t_before = metrics(host, t_view);
  for (int i = 0; i < 3; ++i) r.ti_before[at(i)] = metrics(host, partition.small_tripartite(i));
  r.leftover_degree = leftover_degree(leftover);
  r.leftover_edges = leftover.edge_count();
  {
    const long long n = partition.block_size();
    Rational worst = r.t_before.epsilon + ratio(r.leftover_degree, 2 * n);
    for (const auto& m : r.ti_before) worst = std::max(worst, m.epsilon);
    r.precondition_slack = Rational(n) - 4 * worst * n - 4 * r.leftover_degree;
  }

  std::vector<int> labels(at(n_vertices), -1), blocks(at(n_vertices), -1);
  for (int v = 0; v < n_vertices; ++v) {
    if (partition.in_remainder(v)) continue;
    labels[at(v)] = partition.group_of(v);
    blocks[at(v)] = partition.block_of(v) - 3 * partition.group_of(v);
  }
  TradeOptions opts = options;
  opts.family = TradeTemplate::Family::kAny;
  TradeEngine engine(host, std::move(labels), std::move(blocks), opts);
  engine.absorb(cycle_decompose(leftover));

  r.emitted = engine.emitted();
  r.consumed = engine.consumed();
  r.ledger = engine.ledger();
  r.t_after = metrics(host, t_view);
  for (int i = 0; i < 3; ++i) r.ti_after[at(i)] = metrics(host, partition.small_tripartite(i));
  return r;
}

// --- complement preparation ------------------------------------------------

ComplementResult prepare_complement(Graph& host, const PartiteView& view, const ComplementOptions& options) {
  if (view.mode != PartiteMode::kTripartite) throw PreconditionError("complement preparation needs a tripartite view");
  view.validate(host.vertex_count());
  ComplementResult r;
  r.before = metrics(host, view);
  if (!is_balanced(host, view)) throw PreconditionError("view is not balanced (deg+ != deg-)");
  const long long n = r.before.part_size;
  if (options.enforce_preconditions && !(Rational(n) - 8 * r.before.epsilon * n > 3)) {
    throw PreconditionError("complement preparation needs n - 8 eps n > 3, have n = " + std::to_string(n) +
                            ", eps = " + to_string(r.before.epsilon));
  }

  Graph complement(host.vertex_count());
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t q = p + 1; q < 3; ++q) {
      for (int u : view.parts[p]) {
        for (int v : view.parts[q]) {
          if (!host.has_edge(u, v)) complement.add_edge(u, v);
        }
      }
    }
  }
  r.complement_edges = complement.edge_count();

  std::vector<int> labels = view.part_index(host.vertex_count());
  TradeOptions opts = options.trades;
  opts.family = TradeTemplate::Family::kTOnly;
  TradeEngine engine(host, std::move(labels), {}, opts);
  engine.absorb(oriented_cycle_decompose(complement, view));

  r.consumed = engine.consumed();
  r.cells = engine.emitted();
  r.ledger = engine.ledger();
  r.after = metrics(host, view);
  return r;
}

}  // namespace tridecomp
