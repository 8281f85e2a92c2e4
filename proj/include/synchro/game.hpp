#pragma once

#include <array>
#include <memory>
#include <optional>

#include "synchro/dfa.hpp"

namespace synchro {

enum class Winner { alice, bob };

inline const char* to_string(Winner w) { return w == Winner::alice ? "alice" : "bob"; }

/// Proof that Alice wins, as a per-state round table over the automaton the
/// decision ran on (the pair automaton for the general deciders). The sink is
/// round 0; from any state, some letter reaches a strictly smaller round and
/// no word of the opponent can raise the reachable minimum above the current
/// round. Replaying "move to the smallest-round successor" wins the game.
struct MarkingCertificate {
  std::vector<int> round;  // -1 marks states never firmly marked

  bool complete() const {
    for (int r : round)
      if (r < 0) return false;
    return true;
  }
};

/// Why Bob wins, with enough state to replay his strategy.
struct BobWitness {
  enum class Kind {
    extra_sink,   // a second all-letter-fixed state: never merges with the sink
    trapped,      // no letter leaves this state's strongly connected component
    escapes,      // outside the final preliminary marking of the bounded game
  };
  Kind kind;
  State state;       // witness state in the decided automaton
  StateSet final_p;  // final preliminary marking (escapes only)
};

struct GameOutcome {
  Winner winner = Winner::alice;
  std::optional<MarkingCertificate> certificate;  // present iff Alice wins
  std::optional<BobWitness> witness;              // present iff Bob wins

  /// Set when the decision ran on a derived 2-subset automaton; certificate
  /// rounds and witness states are then indexed by its states.
  std::shared_ptr<const PairAutomaton> pairs;
  /// Bob's witness decoded to a pair of base states, when applicable.
  std::optional<std::array<State, 2>> witness_pair;
};

/// Winner of the unbounded game on an automaton with a sink, by the
/// component-crossing criterion. O(n m). Multiple sinks mean Bob; an
/// automaton without any sink is rejected.
GameOutcome decide_omega_sink(const Dfa& a);

/// Winner of the unbounded game on an arbitrary automaton, via the 2-subset
/// reduction. O(n^2 m).
GameOutcome decide_omega(const Dfa& a);

/// Winner of the game where Bob plays words of length < k, on an automaton
/// with a sink: iterated preliminary/firm marking with per-state reach sets.
/// O(n^2 m).
GameOutcome decide_k_sink(const Dfa& a, long long k);

/// Bounded-Bob winner on an arbitrary automaton, via the 2-subset reduction.
/// O(n^4 m).
GameOutcome decide_k(const Dfa& a, long long k);

/// Dispatch on the bound.
GameOutcome decide(const Dfa& a, const KBound& k);

/// Largest game Alice wins.
struct GameLevel {
  enum class Kind { not_synchronizing, finite, omega };
  Kind kind = Kind::omega;
  long long k = 0;  // meaningful for finite only

  bool operator==(const GameLevel&) const = default;
};

std::string to_string(const GameLevel&);

/// The largest k such that Alice wins the k-bounded game: omega when she wins
/// the unbounded game, otherwise a binary search over [1, C(n,2)-1], which is
/// exhaustive because winning is monotone in k and winning at C(n,2) already
/// implies winning the unbounded game.
GameLevel game_level(const Dfa& a);

/// Winner of the game where Alice plays nonempty words of length <= m and Bob
/// is unbounded: the unbounded game on the m-th iteration.
GameOutcome decide_m_omega(const Dfa& a, int m,
                           std::size_t letter_cap = kMaxIterationLetters);

/// All states fixed by every letter.
std::vector<State> find_sinks(const Dfa& a);

/// Upper bound on the moves Alice ever needs when she wins: C(n,2)(n-2)+1.
long long win_horizon(int n);

}  // namespace synchro
