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

#ifndef TRIDECOMP_TEMPLATES_HPP_
#define TRIDECOMP_TEMPLATES_HPP_

#include <array>
#include <string>
#include <vector>

namespace tridecomp {

// Labels of the six hexagon vertices w1..w6 in cyclic order, each 0, 1 or 2
// (printed as 1, 2, 3).
struct HexLabeling {
  std::array<int, 6> labels{};

  std::string to_string() const;  // e.g. "123123"
  static HexLabeling parse(const std::string& text);
  auto operator<=>(const HexLabeling&) const = default;
};

// How a concrete labelled hexagon maps onto its canonical representative:
// canonical slot s sits at hexagon position position_of_slot[s], and a
// vertex with actual label a carries canonical label label_map[a].
struct HexAlignment {
  HexLabeling canonical;
  std::array<int, 6> position_of_slot{};
  std::array<int, 3> label_map{};
};

// Lexicographically smallest labelling in the orbit under rotation,
// reflection and permutation of the three labels.
HexAlignment align_hexagon(const std::array<int, 6>& labels);
HexLabeling canonical_labeling(const std::array<int, 6>& labels);

// One representative per orbit, ascending.
std::vector<HexLabeling> enumerate_hex_labelings();

using SlotTriple = std::array<int, 3>;

// A trade on a labelled hexagon. Slots 0..5 are the boundary w1..w6, slots
// 6.. are internal vertices. Removing the boundary cycle and the in-triangles
// and adding the out-triangles leaves the edge multiset unchanged.
struct TradeTemplate {
  enum class Family { kAny, kTOnly };

  HexLabeling boundary;
  Family family = Family::kAny;
  std::vector<int> internal_labels;
  // Block refinement, only for templates derived for a concrete hexagon:
  // boundary_blocks[s] is the block (0..2 within its label) of slot s, and
  // internal_blocks the block of each internal slot. Empty when generic.
  std::vector<int> boundary_blocks;
  std::vector<int> internal_blocks;
  std::vector<SlotTriple> in_triangles;
  std::vector<SlotTriple> out_triangles;

  int slot_count() const { return 6 + static_cast<int>(internal_labels.size()); }
  bool refined() const { return !boundary_blocks.empty(); }
  int block(int slot) const {
    if (!refined()) return -1;
    return slot < 6 ? boundary_blocks[static_cast<std::size_t>(slot)]
                    : internal_blocks[static_cast<std::size_t>(slot - 6)];
  }
  int label(int slot) const {
    return slot < 6 ? boundary.labels[static_cast<std::size_t>(slot)]
                    : internal_labels[static_cast<std::size_t>(slot - 6)];
  }
  // Index of the out-triangle holding boundary edge {w6, w1}.
  int closing_triangle() const;
};

std::string to_string(TradeTemplate::Family family);

// Checks the trade identity and the structural rules: every in-triangle is
// all-one-label or all-distinct (all-distinct only for kTOnly), no in-edge
// joins two boundary slots, no edge is used twice on either side. On failure
// returns false and describes the problem in *why. Refined templates must
// also give same-label in-triangles three distinct blocks.
bool check_template(const TradeTemplate& t, std::string* why = nullptr);

// Bounded exhaustive search (iterative deepening on the number of
// in-triangles, at most `max_internal` internal slots). Deterministic.
// Throws CandidateExhausted if nothing is found.
TradeTemplate derive_template(const HexLabeling& labeling, TradeTemplate::Family family,
                              int max_internal = 7, int max_in_triangles = 8);

// Same search with a fixed block refinement of the boundary: in-triangles
// whose slots share a label must then use three distinct blocks.
TradeTemplate derive_refined_template(const HexLabeling& labeling, const std::array<int, 6>& blocks,
                                      TradeTemplate::Family family, int max_internal = 7,
                                      int max_in_triangles = 9);

// Blocks renumbered per label by first appearance along the slots, the
// key under which refined templates are stored.
std::array<int, 6> normalize_blocks(const HexLabeling& labeling, const std::array<int, 6>& blocks);
// Every normalized block pattern a hexagon with this labelling can carry.
std::vector<std::array<int, 6>> enumerate_block_patterns(const HexLabeling& labeling);

// Templates for every canonical labelling, several per labelling.
class TradeCatalog {
 public:
  // Runs the search for all 22 labellings and both families.
  static TradeCatalog generate();
  // Catalog shipped with the library (data/trades.catalog compiled in).
  static const TradeCatalog& builtin();
  // One block-refined template per labelling and normalized block pattern
  // (data/refined.catalog, compiled in). Regenerating takes minutes.
  static TradeCatalog generate_refined();
  static const TradeCatalog& builtin_refined();

  // Throws ParseError with a line number on malformed input.
  static TradeCatalog parse(const std::string& text);
  std::string serialize() const;

  const std::vector<TradeTemplate>& templates() const { return templates_; }
  // Templates for a canonical labelling, in preference order.
  std::vector<const TradeTemplate*> lookup(const HexLabeling& canonical) const;
  const TradeTemplate* find(const HexLabeling& canonical, TradeTemplate::Family family) const;
  const TradeTemplate* find_refined(const HexLabeling& canonical, const std::array<int, 6>& normalized_blocks) const;

 private:
  std::vector<TradeTemplate> templates_;
};

}  // namespace tridecomp

#endif  // TRIDECOMP_TEMPLATES_HPP_
