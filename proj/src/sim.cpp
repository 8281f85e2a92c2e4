#include "synchro/sim.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "synchro/rng.hpp"

namespace synchro {

int Transcript::alice_move_count() const {
  int c = 0;
  for (const auto& mv : moves) c += mv.mover == Mover::alice;
  return c;
}

std::string Transcript::dump(const Dfa& a) const {
  std::ostringstream out;
  out << "game k=" << to_string(k) << " first=" << mover_char(first) << " seed=" << seed << '\n';
  for (const auto& mv : moves)
    out << mover_char(mv.mover) << ' ' << format_word(a, mv.word) << " -> "
        << format_state_set(mv.after) << '\n';
  switch (outcome) {
    case SimOutcome::alice_won:
      out << "winner alice@" << win_move << '\n';
      break;
    case SimOutcome::bob_survived:
      out << "winner bob@" << horizon << '\n';
      break;
    case SimOutcome::aborted:
      out << "aborted: " << abort_reason << '\n';
      break;
  }
  return out.str();
}

Transcript simulate(const Dfa& a, const KBound& k, const AliceStrategy& alice,
                    const BobStrategy& bob, const SimOptions& opt) {
  Transcript t;
  t.k = k;
  t.first = opt.first;
  t.seed = opt.seed;
  t.horizon = opt.horizon >= 0 ? opt.horizon : win_horizon(a.n);
  const long long bob_cap =
      k.is_omega()
          ? (opt.bob_word_cap >= 0 ? opt.bob_word_cap
                                   : static_cast<long long>(a.n) * a.n * (a.n - 1) / 2)
          : k.k() - 1;

  Position pos{StateSet::full(a.n), opt.first, {}};
  long long alice_moves = 0;

  if (pos.tokens.is_singleton()) {
    t.outcome = SimOutcome::alice_won;
    t.win_move = 0;
    return t;
  }

  while (true) {
    Word word;
    if (pos.to_move == Mover::alice) {
      if (alice_moves == t.horizon) {
        t.outcome = SimOutcome::bob_survived;
        return t;
      }
      int x = alice(pos);
      if (x < 0 || x >= a.m()) {
        t.outcome = SimOutcome::aborted;
        t.abort_reason = "alice played invalid letter index " + std::to_string(x);
        return t;
      }
      word = {x};
      ++alice_moves;
    } else {
      word = bob(pos);
      if (static_cast<long long>(word.size()) > bob_cap) {
        t.moves.push_back({Mover::bob, word, pos.tokens});
        t.outcome = SimOutcome::aborted;
        t.abort_reason = "bob played a word of length " + std::to_string(word.size()) +
                         ", limit " + std::to_string(bob_cap);
        return t;
      }
      for (int x : word)
        if (x < 0 || x >= a.m()) {
          t.moves.push_back({Mover::bob, word, pos.tokens});
          t.outcome = SimOutcome::aborted;
          t.abort_reason = "bob played invalid letter index " + std::to_string(x);
          return t;
        }
    }

    pos.tokens = apply_set(a, pos.tokens, word);
    pos.history.insert(pos.history.end(), word.begin(), word.end());
    t.moves.push_back({pos.to_move, word, pos.tokens});
    if (pos.tokens.is_singleton()) {
      t.outcome = SimOutcome::alice_won;
      t.win_move = static_cast<int>(t.moves.size());
      return t;
    }
    pos.to_move = pos.to_move == Mover::alice ? Mover::bob : Mover::alice;
  }
}

bool replay_matches(const Dfa& a, const Transcript& t) {
  StateSet tokens = StateSet::full(a.n);
  for (const auto& mv : t.moves) {
    tokens = apply_set(a, tokens, mv.word);
    if (!(tokens == mv.after)) return false;
  }
  if (t.outcome == SimOutcome::alice_won && t.win_move > 0 && !tokens.is_singleton()) return false;
  return true;
}

namespace {

/// Keeps two tracked states up to date against the growing game history.
struct PairTracker {
  std::size_t seen = 0;
  State p = -1, q = -1;

  void follow(const Dfa& a, const Word& history) {
    for (std::size_t i = seen; i < history.size(); ++i) {
      if (p != -1) p = a.act(p, history[i]);
      if (q != -1) q = a.act(q, history[i]);
    }
    seen = history.size();
  }

  bool live() const { return p != -1 && p != q; }
};

/// Shortest word from `from` into `targets`, scanning letters in index order
/// so the first word found is also lexicographically least; empty optional if
/// unreachable within `depth` (-1 = unbounded).
std::optional<Word> shortest_word_into(const Dfa& a, State from, const StateSet& targets,
                                       long long depth = -1) {
  if (targets.test(from)) return Word{};
  std::vector<int> pred(a.n, -1), via(a.n, -1);
  pred[from] = from;
  std::deque<std::pair<State, long long>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [q, dist] = queue.front();
    queue.pop_front();
    if (depth >= 0 && dist == depth) continue;
    for (int x = 0; x < a.m(); ++x) {
      State r = a.act(q, x);
      if (pred[r] != -1) continue;
      pred[r] = q;
      via[r] = x;
      if (targets.test(r)) {
        Word w;
        for (State s = r; s != from; s = pred[s]) w.push_back(via[s]);
        std::reverse(w.begin(), w.end());
        return w;
      }
      queue.push_back({r, dist + 1});
    }
  }
  return std::nullopt;
}

}  // namespace

AliceStrategy alice_from_certificate(const MarkingCertificate& cert,
                                     std::shared_ptr<const PairAutomaton> pairs) {
  if (!pairs) throw std::invalid_argument("alice_from_certificate: missing pair automaton");
  if (!cert.complete())
    throw std::invalid_argument("alice_from_certificate: certificate has unmarked states");
  auto tracker = std::make_shared<PairTracker>();
  auto rounds = std::make_shared<MarkingCertificate>(cert);
  return [pairs, tracker, rounds](const Position& pos) -> int {
    const Dfa& base = pairs->base;
    tracker->follow(base, pos.history);
    if (!tracker->live()) {
      // New tracked pair: the live pair with the smallest round.
      auto live = pos.tokens.elements();
      int best_round = -1;
      for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = i + 1; j < live.size(); ++j) {
          int r = rounds->round[pairs->pair_index(live[i], live[j])];
          if (best_round == -1 || r < best_round) {
            best_round = r;
            tracker->p = live[i];
            tracker->q = live[j];
          }
        }
      if (best_round == -1) return 0;  // singleton position; the loop has already stopped
    }
    int idx = pairs->pair_index(tracker->p, tracker->q);
    int best_letter = 0, best_round = -1;
    for (int x = 0; x < base.m(); ++x) {
      int r = rounds->round[pairs->dfa.act(idx, x)] /* sink has round 0 */;
      if (best_round == -1 || r < best_round) {
        best_round = r;
        best_letter = x;
      }
    }
    return best_letter;
  };
}

AliceStrategy alice_from_certificate(const GameOutcome& outcome) {
  if (outcome.winner != Winner::alice || !outcome.certificate)
    throw std::invalid_argument("alice_from_certificate: outcome carries no certificate");
  return alice_from_certificate(*outcome.certificate, outcome.pairs);
}

AliceStrategy alice_characteristic(std::shared_ptr<const LevelProfile> profile,
                                   std::shared_ptr<const ComponentTree> tree) {
  if (!profile->all_finite)
    throw std::invalid_argument("alice_characteristic: profile has infinite levels");
  return [profile, tree](const Position& pos) -> int {
    return avoiding_letter(*tree, *profile, profile->pairs->base, pos.tokens);
  };
}

AliceStrategy alice_greedy(const Dfa& a) {
  auto pairs = std::make_shared<PairAutomaton>(two_subset(a));
  return [pairs](const Position& pos) -> int {
    auto live = pos.tokens.elements();
    int idx = pairs->pair_index(live[0], live[1]);
    auto word = shortest_word_into(pairs->dfa, idx, StateSet::single(pairs->dfa.n, pairs->sink));
    if (!word || word->empty()) return 0;  // pair cannot merge; play something legal
    return word->front();
  };
}

AliceStrategy alice_random(const Dfa& a, std::uint64_t seed) {
  auto rng = std::make_shared<SplitMix64>(seed);
  int m = a.m();
  return [rng, m](const Position&) -> int { return static_cast<int>(rng->below(m)); };
}

BobStrategy bob_optimal(const Dfa& a, const KBound& k) {
  GameOutcome outcome = a.n >= 2 ? decide(a, k) : GameOutcome{};
  if (a.n < 2 || outcome.winner == Winner::alice) return bob_pass();

  auto pairs = outcome.pairs;
  auto witness = std::make_shared<BobWitness>(*outcome.witness);
  auto tracker = std::make_shared<PairTracker>();
  auto start = pairs->pair_of(witness->state);
  tracker->p = start.first;
  tracker->q = start.second;
  const long long k_depth = k.is_omega() ? -1 : k.k() - 1;

  return [pairs, witness, tracker, k_depth](const Position& pos) -> Word {
    tracker->follow(pairs->base, pos.history);
    if (!tracker->live()) return {};  // cannot happen when the witness is sound
    int idx = pairs->pair_index(tracker->p, tracker->q);
    switch (witness->kind) {
      case BobWitness::Kind::extra_sink:
        return {};
      case BobWitness::Kind::trapped: {
        // Return the tracked pair to its trapped component.
        if (idx == witness->state) return {};
        auto w = shortest_word_into(pairs->dfa, idx,
                                    StateSet::single(pairs->dfa.n, witness->state));
        return w ? *w : Word{};
      }
      case BobWitness::Kind::escapes: {
        if (!witness->final_p.test(idx)) return {};
        auto w = shortest_word_into(pairs->dfa, idx, witness->final_p.complement(), k_depth);
        return w ? *w : Word{};
      }
    }
    return {};
  };
}

BobStrategy bob_echo_power(long long k) {
  return [k](const Position& pos) -> Word {
    if (pos.history.empty()) return {};
    return Word(static_cast<std::size_t>(k), pos.history.back());
  };
}

BobStrategy bob_fixed_word(Word w) {
  return [w = std::move(w)](const Position&) -> Word { return w; };
}

BobStrategy bob_random(const Dfa& a, const KBound& k, std::uint64_t seed) {
  auto rng = std::make_shared<SplitMix64>(seed);
  const long long omega_cap = static_cast<long long>(a.n) * a.n * (a.n - 1) / 2;
  const long long max_len = k.is_omega() ? std::min<long long>(2 * a.n, omega_cap)
                                         : std::min<long long>(k.k() - 1, 2 * a.n);
  const int m = a.m();
  return [rng, max_len, m](const Position&) -> Word {
    Word w(static_cast<std::size_t>(rng->below(max_len + 1)));
    for (auto& x : w) x = static_cast<int>(rng->below(m));
    return w;
  };
}

BobStrategy bob_pass() {
  return [](const Position&) -> Word { return {}; };
}

}  // namespace synchro
