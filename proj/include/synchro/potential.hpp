#pragma once

#include <memory>

#include "synchro/dfa.hpp"

namespace synchro {

inline constexpr int kInfiniteLevel = -1;

/// Per-pair merge levels: d(p,q) is the number of moves Alice needs to merge
/// tokens from p and q when the opponent moves first and is unbounded;
/// kInfiniteLevel when she cannot. Level sets are computed bottom-up on the
/// pair automaton: a pair enters level l+1 when everything it can be driven
/// to still has a letter into level <= l (or the sink).
struct LevelProfile {
  std::shared_ptr<const PairAutomaton> pairs;
  std::vector<int> level;  // indexed by pair index; excludes the sink
  int max_finite = 0;
  bool all_finite = false;

  int d(State p, State q) const {
    return p == q ? 0 : level[pairs->pair_index(p, q)];
  }
};

LevelProfile level_profile(const Dfa& a);

/// The nested hierarchy of connected components of the level graphs: leaves
/// are single states, the root is the whole state set, and each inner node
/// splits into the components it was merged from one level below.
struct ComponentTree {
  struct Node {
    std::vector<State> states;  // ascending
    StateSet member_mask;
    int h = 0;                  // first level at which this component exists
    std::vector<int> children;  // empty for leaves
    int parent = -1;
  };

  std::vector<Node> nodes;
  int root = -1;
  std::vector<int> leaf_of;  // state -> leaf node id

  /// Least component containing every state of a nonempty set.
  int least_containing(const StateSet& a) const;

  /// Edge budget of a node: |children|-1 for inner nodes, 0 for leaves.
  int node_gamma(int id) const {
    const auto& c = nodes[id].children;
    return c.empty() ? 0 : static_cast<int>(c.size()) - 1;
  }
};

/// Requires a fully finite profile.
ComponentTree component_tree(const LevelProfile& profile, const Dfa& a);

/// Caps for the exact Steiner computation below; it refuses rather than
/// approximates beyond them, since the strategy built on top needs exactness.
inline constexpr int kGammaTerminalCap = 12;
inline constexpr int kGammaSupernodeCap = 24;

/// Minimum number of top-level edges in a connected graph covering A inside
/// its least enclosing component: lower-level edges are free within each
/// child component, so this is an exact minimum Steiner tree on the quotient
/// graph of children, with the children meeting A as terminals.
int gamma(const ComponentTree& tree, const LevelProfile& profile, const StateSet& a);

struct Characteristic {
  int component = -1;  // node id in the tree
  int gamma = 0;

  bool trivial() const { return gamma == 0; }
  bool operator==(const Characteristic&) const = default;
};

Characteristic characteristic(const ComponentTree& tree, const LevelProfile& profile,
                              const StateSet& a);

/// A letter x such that no continuation of A.x ever shows A's characteristic
/// again: took from a minimum Steiner tree a top-level edge and a letter
/// strictly lowering that edge's level. Requires |A| > 1.
int avoiding_letter(const ComponentTree& tree, const LevelProfile& profile, const Dfa& a,
                    const StateSet& set);

/// A single base letter whose image set avoids the characteristic of the full
/// state set in the m-th iteration: found by walking a reset word to the last
/// position where two tracked states still sit in different root children.
/// Requires Alice to win the m-bounded-against-unbounded game.
int first_letter_iterated(const Dfa& a, int m);

/// Reset word from the avoidance strategy on the m-th iteration with a
/// passing opponent: a single letter first, then one derived letter (a base
/// word of length <= m) per move; at most n-1 moves in total, so the result
/// has length <= m(n-2)+1, and <= n-1 when m = 1.
Word extract_reset_word(const Dfa& a, int m);

}  // namespace synchro
