#pragma once

#include <functional>

#include "synchro/dfa.hpp"
#include "synchro/game.hpp"
#include "synchro/rng.hpp"
#include "synchro/sim.hpp"

namespace synchro {
namespace oracle {

/// Exact reset threshold by breadth-first search over the power set, with a
/// lexicographically least shortest witness.
struct SubsetBfsResult {
  bool synchronizing = false;
  long long rt = -1;
  Word witness;
};
SubsetBfsResult rt_exact(const Dfa& a, int max_states = 20);

/// Winner by a plain alternating least fixpoint on pair positions (Bob moves
/// first). Shares nothing with the marking solver beyond the Dfa type.
Winner decide_k_bruteforce(const Dfa& a, const KBound& k, int max_pair_states = 2048);

/// The same fixpoint taken over all full subset positions instead of pairs.
Winner decide_full_position_bruteforce(const Dfa& a, const KBound& k, int max_states = 10);

/// Every n-state m-letter transition table exactly once, in lexicographic
/// order of the flattened table; n^(n*m) automata.
void enumerate_dfas(int n, int m, const std::function<void(const Dfa&)>& fn,
                    std::uint64_t budget = 20'000'000);

Dfa random_dfa(int n, int m, SplitMix64& rng);

/// Checks that a word drives `start` along a Hamiltonian path of the pair
/// automaton: all pair states visited exactly once, with the sink allowed
/// only as the final stop.
bool verify_hamiltonian(const PairAutomaton& pa, std::pair<State, State> start, const Word& w);

/// Rounds-to-win table over all subset positions, for building an exactly
/// optimal (maximally delaying) adversary.
struct SubsetGame {
  int n = 0;
  KBound k;
  std::vector<int> alice_value;  // by token bitmask; moves Alice still needs, -1 = she cannot win
  std::vector<int> bob_value;    // same, with Bob to move
  Winner winner(std::uint32_t mask) const { return bob_value[mask] >= 0 ? Winner::alice : Winner::bob; }
};
SubsetGame analyze_subset_game(const Dfa& a, const KBound& k, int max_states = 10);

/// Plays the legal word leading to the position worst for Alice (unwinnable
/// if possible, else maximal remaining rounds; ties to the shortest, then
/// lexicographically least word).
BobStrategy bob_oracle(const Dfa& a, const KBound& k, int max_states = 10);

}  // namespace oracle
}  // namespace synchro
