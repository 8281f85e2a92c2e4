#pragma once

#include <functional>
#include <memory>
#include <string>

#include "synchro/dfa.hpp"
#include "synchro/game.hpp"
#include "synchro/potential.hpp"

namespace synchro {

enum class Mover { alice, bob };

inline char mover_char(Mover m) { return m == Mover::alice ? 'A' : 'B'; }

struct Position {
  StateSet tokens;
  Mover to_move = Mover::bob;
  Word history;  // concatenation of all moves so far
};

/// Returns the letter to play. Instantiate strategies freshly per game; they
/// may carry internal tracking state.
using AliceStrategy = std::function<int(const Position&)>;
/// Returns the word to play; the empty word is a pass. Length legality is
/// enforced by the game loop.
using BobStrategy = std::function<Word(const Position&)>;

struct SimMove {
  Mover mover;
  Word word;
  StateSet after;
};

enum class SimOutcome { alice_won, bob_survived, aborted };

/// A fully replayable game record.
struct Transcript {
  KBound k;
  Mover first = Mover::bob;
  std::uint64_t seed = 0;
  long long horizon = 0;  // bound on Alice's move count
  std::vector<SimMove> moves;
  SimOutcome outcome = SimOutcome::bob_survived;
  int win_move = 0;  // 1-based index of the winning move when alice_won
  std::string abort_reason;

  int alice_move_count() const;
  std::string dump(const Dfa& a) const;
};

struct SimOptions {
  Mover first = Mover::bob;
  long long horizon = -1;       // < 0: win_horizon(n)
  long long bob_word_cap = -1;  // < 0: n*C(n,2) for the unbounded game
  std::uint64_t seed = 0;       // echoed into the transcript
};

/// Alternating game loop from the full position. Stops at a singleton (Alice
/// wins), after `horizon` Alice moves (Bob survives), or at an illegal move
/// (recorded and aborted).
Transcript simulate(const Dfa& a, const KBound& k, const AliceStrategy& alice,
                    const BobStrategy& bob, const SimOptions& opt = {});

/// Re-applies every recorded move and checks all recorded positions and the
/// win condition.
bool replay_matches(const Dfa& a, const Transcript& t);

/// Tracks the live pair with the smallest certificate round and always moves
/// it to a strictly smaller round; wins every game the certificate decides.
AliceStrategy alice_from_certificate(const MarkingCertificate& cert,
                                     std::shared_ptr<const PairAutomaton> pairs);
AliceStrategy alice_from_certificate(const GameOutcome& outcome);

/// Plays the avoidance letter of the current position; wins the unbounded
/// game within n-1 moves on any automaton with a finite profile.
AliceStrategy alice_characteristic(std::shared_ptr<const LevelProfile> profile,
                                   std::shared_ptr<const ComponentTree> tree);

/// Merges the two lowest live tokens along shortest pair-automaton paths,
/// one letter per turn. A baseline for games Alice cannot win.
AliceStrategy alice_greedy(const Dfa& a);

/// Plays random letters. Test adversary for instances where Bob wins.
AliceStrategy alice_random(const Dfa& a, std::uint64_t seed);

/// Never loses when Bob is the winner: keeps a tracked pair outside the final
/// preliminary marking (bounded game), returns it around its trapped
/// component (unbounded game), or just passes beside a second sink. Degrades
/// to passing when Alice is the winner.
BobStrategy bob_optimal(const Dfa& a, const KBound& k);

/// Answers Alice's letter x with x^k; passes until Alice has moved.
BobStrategy bob_echo_power(long long k);

/// Plays the same word on every turn.
BobStrategy bob_fixed_word(Word w);

/// Random legal words with an explicit 64-bit seed.
BobStrategy bob_random(const Dfa& a, const KBound& k, std::uint64_t seed);

BobStrategy bob_pass();

}  // namespace synchro
