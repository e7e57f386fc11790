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

#include "tridecomp/templates.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tridecomp/errors.hpp"

namespace tridecomp {

std::string HexLabeling::to_string() const {
  std::string s;
  for (int l : labels) s += static_cast<char>('1' + l);
  return s;
}

HexLabeling HexLabeling::parse(const std::string& text) {
  if (text.size() != 6) throw std::invalid_argument("hexagon labelling needs six labels: " + text);
  HexLabeling h;
  for (std::size_t i = 0; i < 6; ++i) {
    if (text[i] < '1' || text[i] > '3') throw std::invalid_argument("bad hexagon label in " + text);
    h.labels[i] = text[i] - '1';
  }
  return h;
}

HexAlignment align_hexagon(const std::array<int, 6>& labels) {
  HexAlignment best;
  bool have = false;
  for (int flip = 0; flip < 2; ++flip) {
    for (int r = 0; r < 6; ++r) {
      HexAlignment cand;
      cand.label_map = {-1, -1, -1};
      int next = 0;
      for (int s = 0; s < 6; ++s) {
        int pos = flip ? ((r - s) % 6 + 6) % 6 : (r + s) % 6;
        cand.position_of_slot[static_cast<std::size_t>(s)] = pos;
        int a = labels[static_cast<std::size_t>(pos)];
        if (cand.label_map[static_cast<std::size_t>(a)] < 0) cand.label_map[static_cast<std::size_t>(a)] = next++;
        cand.canonical.labels[static_cast<std::size_t>(s)] = cand.label_map[static_cast<std::size_t>(a)];
      }
      // Labels absent from the hexagon still need a bijective image.
      for (auto& m : cand.label_map) {
        if (m < 0) m = next++;
      }
      if (!have || cand.canonical < best.canonical) {
        best = cand;
        have = true;
      }
    }
  }
  return best;
}

HexLabeling canonical_labeling(const std::array<int, 6>& labels) { return align_hexagon(labels).canonical; }

std::vector<HexLabeling> enumerate_hex_labelings() {
  std::set<HexLabeling> seen;
  for (int code = 0; code < 729; ++code) {
    std::array<int, 6> l{};
    int c = code;
    for (int i = 5; i >= 0; --i) {
      l[static_cast<std::size_t>(i)] = c % 3;
      c /= 3;
    }
    seen.insert(canonical_labeling(l));
  }
  return {seen.begin(), seen.end()};
}

int TradeTemplate::closing_triangle() const {
  for (std::size_t k = 0; k < out_triangles.size(); ++k) {
    const auto& t = out_triangles[k];
    bool has0 = std::find(t.begin(), t.end(), 0) != t.end();
    bool has5 = std::find(t.begin(), t.end(), 5) != t.end();
    if (has0 && has5) return static_cast<int>(k);
  }
  return -1;
}

std::string to_string(TradeTemplate::Family family) {
  return family == TradeTemplate::Family::kTOnly ? "tonly" : "any";
}

namespace {

bool is_boundary_edge(int u, int v) {
  if (u >= 6 || v >= 6) return false;
  int d = std::abs(u - v);
  return d == 1 || d == 5;
}

bool is_chord(int u, int v) { return u < 6 && v < 6 && !is_boundary_edge(u, v); }

SlotTriple sorted(int a, int b, int c) {
  SlotTriple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

bool check_template(const TradeTemplate& t, std::string* why) {
  auto fail = [why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int slots = t.slot_count();
  if (t.refined() && (t.boundary_blocks.size() != 6 || t.internal_blocks.size() != t.internal_labels.size())) {
    return fail("block refinement has the wrong size");
  }
  std::map<std::pair<int, int>, int> balance;  // out-count minus (boundary + in)-count
  std::set<std::pair<int, int>> in_edges, out_edges;
  for (int k = 0; k < 6; ++k) --balance[{std::min(k, (k + 1) % 6), std::max(k, (k + 1) % 6)}];
  for (const auto& tri : t.in_triangles) {
    for (int s : tri) {
      if (s < 0 || s >= slots) return fail("in-triangle slot out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) return fail("degenerate in-triangle");
    int l0 = t.label(tri[0]), l1 = t.label(tri[1]), l2 = t.label(tri[2]);
    bool same = l0 == l1 && l1 == l2;
    bool distinct = l0 != l1 && l1 != l2 && l0 != l2;
    if (!distinct && !(same && t.family == TradeTemplate::Family::kAny)) {
      return fail("in-triangle with mixed labels");
    }
    if (same && t.refined()) {
      int b0 = t.block(tri[0]), b1 = t.block(tri[1]), b2 = t.block(tri[2]);
      if (b0 == b1 || b1 == b2 || b0 == b2) return fail("same-label in-triangle repeats a block");
    }
    for (int a = 0; a < 3; ++a) {
      int u = std::min(tri[a], tri[(a + 1) % 3]), v = std::max(tri[a], tri[(a + 1) % 3]);
      if (u < 6 && v < 6) return fail("in-edge between two boundary slots");
      if (!in_edges.insert({u, v}).second) return fail("edge used by two in-triangles");
      --balance[{u, v}];
    }
  }
  for (const auto& tri : t.out_triangles) {
    for (int s : tri) {
      if (s < 0 || s >= slots) return fail("out-triangle slot out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) return fail("degenerate out-triangle");
    for (int a = 0; a < 3; ++a) {
      int u = std::min(tri[a], tri[(a + 1) % 3]), v = std::max(tri[a], tri[(a + 1) % 3]);
      if (!out_edges.insert({u, v}).second) return fail("edge used by two out-triangles");
      ++balance[{u, v}];
    }
  }
  for (const auto& [e, b] : balance) {
    if (b != 0) {
      return fail("trade identity fails on slots " + std::to_string(e.first) + "-" + std::to_string(e.second));
    }
  }
  for (const auto& tri : t.in_triangles) {
    if (std::find(t.out_triangles.begin(), t.out_triangles.end(), tri) != t.out_triangles.end()) {
      return fail("triangle on both sides");
    }
  }
  if (t.closing_triangle() < 0) return fail("no out-triangle on the closing edge");
  return true;
}

namespace {

class TemplateSearch {
 public:
  TemplateSearch(const HexLabeling& lab, TradeTemplate::Family fam, int max_internal, int max_in,
                 const std::array<int, 6>* blocks = nullptr)
      : family_(fam), max_slots_(6 + max_internal), max_in_(max_in), refined_(blocks != nullptr) {
    labels_.assign(static_cast<std::size_t>(max_slots_), -1);
    blocks_.assign(static_cast<std::size_t>(max_slots_), -1);
    if (blocks) {
      for (int s = 0; s < 6; ++s) blocks_[static_cast<std::size_t>(s)] = (*blocks)[static_cast<std::size_t>(s)];
    }
    for (int s = 0; s < 6; ++s) labels_[static_cast<std::size_t>(s)] = lab.labels[static_cast<std::size_t>(s)];
    co_.assign(static_cast<std::size_t>(max_slots_ * max_slots_), 0);
    ci_.assign(static_cast<std::size_t>(max_slots_ * max_slots_), 0);
  }

  bool run() { return dfs(); }

  TradeTemplate result(const HexLabeling& lab) const {
    TradeTemplate t;
    t.boundary = lab;
    t.family = family_;
    for (int s = 6; s < slots_; ++s) t.internal_labels.push_back(labels_[static_cast<std::size_t>(s)]);
    if (refined_) {
      t.boundary_blocks.assign(blocks_.begin(), blocks_.begin() + 6);
      for (int s = 6; s < slots_; ++s) t.internal_blocks.push_back(blocks_[static_cast<std::size_t>(s)]);
    }
    t.in_triangles = in_;
    t.out_triangles = out_;
    std::sort(t.in_triangles.begin(), t.in_triangles.end());
    std::sort(t.out_triangles.begin(), t.out_triangles.end());
    return t;
  }

 private:
  struct Option {
    bool is_out;
    int u, v, w;
    int new_label;  // >= 0 when w is a fresh slot
    int new_block;
  };

  int& co(int u, int v) { return co_[static_cast<std::size_t>(std::min(u, v) * max_slots_ + std::max(u, v))]; }
  int& ci(int u, int v) { return ci_[static_cast<std::size_t>(std::min(u, v) * max_slots_ + std::max(u, v))]; }
  int need(int u, int v) {  // > 0: needs out-cover, < 0: needs in-cover
    return (is_boundary_edge(u, v) ? 1 : 0) + ci(u, v) - co(u, v);
  }
  int label(int s) const { return labels_[static_cast<std::size_t>(s)]; }
  int block(int s) const { return blocks_[static_cast<std::size_t>(s)]; }
  int max_block(int l) const {
    int m = -1;
    for (int s = 0; s < slots_; ++s) {
      if (label(s) == l) m = std::max(m, block(s));
    }
    return m;
  }

  bool has(const std::vector<SlotTriple>& list, const SlotTriple& t) const {
    return std::find(list.begin(), list.end(), t) != list.end();
  }

  bool out_ok(int u, int v, int w) {
    for (auto [a, b] : {std::pair{u, w}, std::pair{v, w}}) {
      if (is_chord(a, b) || co(a, b) != 0) return false;
    }
    return !has(in_, sorted(u, v, w));
  }

  bool in_ok(int u, int v, int w, int lw, int bw) {
    int lu = label(u), lv = label(v);
    bool same = lu == lv && lv == lw;
    bool distinct = lu != lv && lv != lw && lu != lw;
    if (!distinct && !(same && family_ == TradeTemplate::Family::kAny)) return false;
    if (same && refined_) {
      int bu = block(u), bv = block(v);
      if (bu == bv || bv == bw || bu == bw) return false;
    }
    for (auto [a, b] : {std::pair{u, w}, std::pair{v, w}}) {
      if (a < 6 && b < 6) return false;
      if (ci(a, b) != 0) return false;
    }
    return !has(out_, sorted(u, v, w));
  }

  std::vector<Option> options(int u, int v, bool want_out) {
    std::vector<Option> opts;
    if (want_out && static_cast<int>(out_.size()) + 1 > max_in_ + 2) return opts;
    if (!want_out && static_cast<int>(in_.size()) + 1 > max_in_) return opts;
    for (int w = 0; w < slots_; ++w) {
      if (w == u || w == v) continue;
      if (want_out ? out_ok(u, v, w) : in_ok(u, v, w, label(w), block(w))) opts.push_back({want_out, u, v, w, -1, -1});
    }
    if (slots_ < max_slots_) {
      for (int l = 0; l < 3; ++l) {
        // Unused blocks of a label are interchangeable: open them in order.
        int open_blocks = refined_ ? std::min(3, max_block(l) + 2) : 1;
        for (int b = 0; b < open_blocks; ++b) {
          int bw = refined_ ? b : -1;
          labels_[static_cast<std::size_t>(slots_)] = l;
          blocks_[static_cast<std::size_t>(slots_)] = bw;
          bool ok = want_out ? out_ok(u, v, slots_) : in_ok(u, v, slots_, l, bw);
          labels_[static_cast<std::size_t>(slots_)] = -1;
          blocks_[static_cast<std::size_t>(slots_)] = -1;
          if (ok) opts.push_back({want_out, u, v, slots_, l, bw});
        }
      }
    }
    return opts;
  }

  void apply(const Option& o, int delta) {
      for (auto [a, b] : {std::pair{o.u, o.v}, std::pair{o.u, o.w}, std::pair{o.v, o.w}}) {
      (o.is_out ? co(a, b) : ci(a, b)) += delta;
    }
  }

  bool dfs() {
    int pending_out = 0, pending_in = 0, open_boundary = 0;
    std::vector<Option> best;
    bool have = false;
    for (int u = 0; u < slots_; ++u) {
      for (int v = u + 1; v < slots_; ++v) {
        int nd = need(u, v);
        if (nd == 0) continue;
        if (nd > 0) {
          ++pending_out;
          if (is_boundary_edge(u, v)) ++open_boundary;
        } else {
          ++pending_in;
        }
        if (nd > 1 || nd < -1) return false;
        auto opts = options(u, v, nd > 0);
        if (opts.empty()) return false;
        if (!have || opts.size() < best.size()) {
          best = std::move(opts);
          have = true;
        }
      }
    }
    if (!have) return true;
    // |out| = |in| + 2 at the end; each open boundary edge needs its own
    // out-triangle, every pending in-edge an in-triangle.
    int min_in = static_cast<int>(in_.size()) + (pending_in + 2) / 3;
    int min_out = static_cast<int>(out_.size()) + open_boundary;
    if (min_in > max_in_ || min_out > max_in_ + 2 || min_out - 2 > max_in_) return false;
    if (++nodes_ > kNodeLimit) return false;

    for (const Option& o : best) {
      bool fresh = o.new_label >= 0;
      if (fresh) {
        labels_[static_cast<std::size_t>(slots_)] = o.new_label;
        blocks_[static_cast<std::size_t>(slots_)] = o.new_block;
        ++slots_;
      }
      apply(o, +1);
      (o.is_out ? out_ : in_).push_back(sorted(o.u, o.v, o.w));
      if (dfs()) return true;
      (o.is_out ? out_ : in_).pop_back();
      apply(o, -1);
      if (fresh) {
        --slots_;
        labels_[static_cast<std::size_t>(slots_)] = -1;
        blocks_[static_cast<std::size_t>(slots_)] = -1;
      }
    }
    return false;
  }

  static constexpr long long kNodeLimit = 20'000'000;

  TradeTemplate::Family family_;
  int max_slots_;
  int max_in_;
  bool refined_;
  int slots_ = 6;
  long long nodes_ = 0;
  std::vector<int> labels_;
  std::vector<int> blocks_;
  std::vector<int> co_, ci_;
  std::vector<SlotTriple> in_, out_;
};

}  // namespace

TradeTemplate derive_template(const HexLabeling& labeling, TradeTemplate::Family family, int max_internal,
                              int max_in_triangles) {
  for (int bound = 0; bound <= max_in_triangles; ++bound) {
    TemplateSearch search(labeling, family, max_internal, bound);
    if (search.run()) {
      TradeTemplate t = search.result(labeling);
      std::string why;
      if (!check_template(t, &why)) throw ContractViolation("template search produced an invalid trade: " + why);
      return t;
    }
  }
  throw CandidateExhausted("no trade template for hexagon " + labeling.to_string() + " (" + to_string(family) + ")");
}

TradeTemplate derive_refined_template(const HexLabeling& labeling, const std::array<int, 6>& blocks,
                                      TradeTemplate::Family family, int max_internal, int max_in_triangles) {
  for (int bound = 0; bound <= max_in_triangles; ++bound) {
    TemplateSearch search(labeling, family, max_internal, bound, &blocks);
    if (search.run()) {
      TradeTemplate t = search.result(labeling);
      std::string why;
      if (!check_template(t, &why)) throw ContractViolation("refined template search produced an invalid trade: " + why);
      return t;
    }
  }
  std::string pattern;
  for (int b : blocks) pattern += static_cast<char>('1' + b);
  throw CandidateExhausted("no refined trade template for hexagon " + labeling.to_string() + " with blocks " +
                           pattern);
}

TradeCatalog TradeCatalog::generate() {
  TradeCatalog catalog;
  for (const HexLabeling& lab : enumerate_hex_labelings()) {
    catalog.templates_.push_back(derive_template(lab, TradeTemplate::Family::kAny));
    try {
      catalog.templates_.push_back(derive_template(lab, TradeTemplate::Family::kTOnly));
    } catch (const CandidateExhausted&) {
      // Most labellings have no trade using tripartite triangles alone.
    }
  }
  return catalog;
}

namespace {

std::string triples_to_string(const std::vector<SlotTriple>& list) {
  std::string s;
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (k) s += " ;";
    for (int v : list[k]) s += " " + std::to_string(v);
  }
  return s;
}

std::vector<SlotTriple> parse_triples(const std::string& body, int line) {
  std::vector<SlotTriple> out;
  std::stringstream groups(body);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::stringstream in(group);
    SlotTriple t{};
    for (int& v : t) {
      if (!(in >> v)) throw ParseError(line, "expected three slot indices");
    }
    std::string extra;
    if (in >> extra) throw ParseError(line, "too many slot indices in a triple");
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::string TradeCatalog::serialize() const {
  std::ostringstream out;
  out << "# tridecomp trade catalog v1\n";
  out << "# template <labelling> <family>; internal <labels>|-; in/out: slot triples separated by ';'\n";
  out << "# slots 0-5 are the hexagon w1..w6 in cyclic order, 6+ internal; labels printed 1-3\n";
  out << "# optional 'blocks <boundary> <internal>' after 'internal' pins every slot to a block 1-3 of its label\n";
  for (const TradeTemplate& t : templates_) {
    out << "template " << t.boundary.to_string() << " " << to_string(t.family) << "\n";
    out << "internal ";
    if (t.internal_labels.empty()) out << "-";
    for (int l : t.internal_labels) out << static_cast<char>('1' + l);
    out << "\n";
    if (t.refined()) {
      out << "blocks ";
      for (int b : t.boundary_blocks) out << static_cast<char>('1' + b);
      out << " ";
      if (t.internal_blocks.empty()) out << "-";
      for (int b : t.internal_blocks) out << static_cast<char>('1' + b);
      out << "\n";
    }
    out << "in" << triples_to_string(t.in_triangles) << "\n";
    out << "out" << triples_to_string(t.out_triangles) << "\n";
    out << "end\n";
  }
  return out.str();
}

TradeCatalog TradeCatalog::parse(const std::string& text) {
  TradeCatalog catalog;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  TradeTemplate cur;
  int stage = 0;  // 0 expect template, 1 internal, 2 in, 3 out, 4 end
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') throw ParseError(line, "CR line ending");
    if (raw.empty() || raw[0] == '#') continue;
    std::istringstream ls(raw);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    switch (stage) {
      case 0: {
        if (key != "template") throw ParseError(line, "expected 'template'");
        std::istringstream rs(rest);
        std::string lab, fam;
        if (!(rs >> lab >> fam)) throw ParseError(line, "template needs a labelling and a family");
        cur = TradeTemplate{};
        try {
          cur.boundary = HexLabeling::parse(lab);
        } catch (const std::invalid_argument& e) {
          throw ParseError(line, e.what());
        }
        if (fam == "any") {
          cur.family = TradeTemplate::Family::kAny;
        } else if (fam == "tonly") {
          cur.family = TradeTemplate::Family::kTOnly;
        } else {
          throw ParseError(line, "unknown family '" + fam + "'");
        }
        break;
      }
      case 1: {
        if (key != "internal") throw ParseError(line, "expected 'internal'");
        std::istringstream rs(rest);
        std::string labs;
        rs >> labs;
        if (labs != "-") {
          for (char c : labs) {
            if (c < '1' || c > '3') throw ParseError(line, "bad internal label");
            cur.internal_labels.push_back(c - '1');
          }
        }
        break;
      }
      case 2:
        if (key == "blocks") {
          // Optional refinement line; stays in stage 2.
          std::istringstream rs(rest);
          std::string outer, inner;
          if (!(rs >> outer >> inner) || outer.size() != 6) throw ParseError(line, "blocks needs 6 boundary digits and the internal ones");
          auto digits = [&](const std::string& text, std::vector<int>& out) {
            if (text == "-") return;
            for (char c : text) {
              if (c < '1' || c > '3') throw ParseError(line, "bad block digit");
              out.push_back(c - '1');
            }
          };
          digits(outer, cur.boundary_blocks);
          digits(inner, cur.internal_blocks);
          if (cur.internal_blocks.size() != cur.internal_labels.size()) {
            throw ParseError(line, "one block per internal slot expected");
          }
          continue;
        }
        if (key != "in") throw ParseError(line, "expected 'in'");
        if (rest.find_first_not_of(' ') != std::string::npos) cur.in_triangles = parse_triples(rest, line);
        break;
      case 3:
        if (key != "out") throw ParseError(line, "expected 'out'");
        cur.out_triangles = parse_triples(rest, line);
        break;
      case 4: {
        if (key != "end") throw ParseError(line, "expected 'end'");
        std::string why;
        if (!check_template(cur, &why)) throw ParseError(line, "invalid template: " + why);
        catalog.templates_.push_back(cur);
        break;
      }
    }
    stage = (stage + 1) % 5;
  }
  if (stage != 0) throw ParseError(line, "unterminated template record");
  return catalog;
}

namespace detail {
extern const char* const kBuiltinCatalog;
extern const char* const kBuiltinRefinedCatalog;
}  // namespace detail

const TradeCatalog& TradeCatalog::builtin() {
  static const TradeCatalog catalog = parse(detail::kBuiltinCatalog);
  return catalog;
}

const TradeCatalog& TradeCatalog::builtin_refined() {
  static const TradeCatalog catalog = parse(detail::kBuiltinRefinedCatalog);
  return catalog;
}

std::array<int, 6> normalize_blocks(const HexLabeling& labeling, const std::array<int, 6>& blocks) {
  std::array<std::array<int, 3>, 3> seen{};
  for (auto& row : seen) row.fill(-1);
  std::array<int, 3> next{};
  std::array<int, 6> out{};
  for (std::size_t s = 0; s < 6; ++s) {
    const auto l = static_cast<std::size_t>(labeling.labels[s]);
    const auto b = static_cast<std::size_t>(blocks[s]);
    if (seen[l][b] < 0) seen[l][b] = next[l]++;
    out[s] = seen[l][b];
  }
  return out;
}

std::vector<std::array<int, 6>> enumerate_block_patterns(const HexLabeling& labeling) {
  std::set<std::array<int, 6>> patterns;
  for (int code = 0; code < 729; ++code) {
    std::array<int, 6> b{};
    int c = code;
    for (int& x : b) {
      x = c % 3;
      c /= 3;
    }
    patterns.insert(normalize_blocks(labeling, b));
  }
  return {patterns.begin(), patterns.end()};
}

TradeCatalog TradeCatalog::generate_refined() {
  TradeCatalog catalog;
  for (const HexLabeling& lab : enumerate_hex_labelings()) {
    for (const auto& pattern : enumerate_block_patterns(lab)) {
      catalog.templates_.push_back(derive_refined_template(lab, pattern, TradeTemplate::Family::kAny));
    }
  }
  return catalog;
}

const TradeTemplate* TradeCatalog::find_refined(const HexLabeling& canonical,
                                                const std::array<int, 6>& normalized_blocks) const {
  for (const TradeTemplate& t : templates_) {
    if (!t.refined() || t.boundary != canonical) continue;
    if (std::equal(normalized_blocks.begin(), normalized_blocks.end(), t.boundary_blocks.begin())) return &t;
  }
  return nullptr;
}

std::vector<const TradeTemplate*> TradeCatalog::lookup(const HexLabeling& canonical) const {
  std::vector<const TradeTemplate*> out;
  for (const TradeTemplate& t : templates_) {
    if (t.boundary == canonical && !t.refined()) out.push_back(&t);
  }
  return out;
}

const TradeTemplate* TradeCatalog::find(const HexLabeling& canonical, TradeTemplate::Family family) const {
  for (const TradeTemplate& t : templates_) {
    if (t.boundary == canonical && t.family == family) return &t;
  }
  return nullptr;
}

}  // namespace tridecomp
