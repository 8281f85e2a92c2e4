#include "synchro/game.hpp"

#include <algorithm>

namespace synchro {

std::vector<State> find_sinks(const Dfa& a) {
  std::vector<State> sinks;
  for (State q = 0; q < a.n; ++q) {
    bool fixed = true;
    for (int x = 0; x < a.m() && fixed; ++x) fixed = a.act(q, x) == q;
    if (fixed) sinks.push_back(q);
  }
  return sinks;
}

long long win_horizon(int n) {
  if (n < 2) return 1;
  return static_cast<long long>(n) * (n - 1) / 2 * (n - 2) + 1;
}

namespace {

GameOutcome bob_wins(BobWitness w) {
  GameOutcome out;
  out.winner = Winner::bob;
  out.witness = std::move(w);
  return out;
}

GameOutcome alice_wins(MarkingCertificate cert) {
  GameOutcome out;
  out.winner = Winner::alice;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace

GameOutcome decide_omega_sink(const Dfa& a) {
  std::vector<State> sinks = find_sinks(a);
  if (sinks.empty()) throw std::invalid_argument("decide_omega_sink: automaton has no sink");
  if (sinks.size() > 1)
    return bob_wins({BobWitness::Kind::extra_sink, sinks[1], StateSet(a.n)});

  const State sink = sinks[0];
  SccResult scc = sccs(a);
  for (State q = 0; q < a.n; ++q) {
    if (q == sink) continue;
    bool crosses = false;
    for (int x = 0; x < a.m() && !crosses; ++x)
      crosses = scc.comp[a.act(q, x)] != scc.comp[q];
    if (!crosses) return bob_wins({BobWitness::Kind::trapped, q, StateSet(a.n)});
  }

  // Component ids are reverse-topological, so they already serve as rounds:
  // the sink's component is the unique closed one and gets id 0, Bob's moves
  // never raise the id, and the crossing letter strictly lowers it.
  if (scc.comp[sink] != 0) throw std::logic_error("sink component must carry id 0");
  MarkingCertificate cert;
  cert.round = scc.comp;
  return alice_wins(std::move(cert));
}

GameOutcome decide_k_sink(const Dfa& a, long long k) {
  if (k < 1) throw std::invalid_argument("decide_k_sink: k >= 1 required");
  std::vector<State> sinks = find_sinks(a);
  if (sinks.empty()) throw std::invalid_argument("decide_k_sink: automaton has no sink");
  if (sinks.size() > 1)
    return bob_wins({BobWitness::Kind::extra_sink, sinks[1], StateSet(a.n)});

  const State sink = sinks[0];
  const int n = a.n;
  const long long depth = std::min<long long>(k - 1, n - 1);  // reach balls saturate

  std::vector<StateSet> r(n);
  for (State q = 0; q < n; ++q) {
    if (q == sink) continue;
    r[q] = reach_within(a, q, depth);
    r[q].reset(sink);
  }

  StateSet firm = StateSet::single(n, sink);
  StateSet prelim = firm;
  std::vector<int> round(n, -1);
  round[sink] = 0;
  int firm_count = 1;

  for (int iter = 1; firm_count < n; ++iter) {
    StateSet next_prelim = preimage(a, firm);
    next_prelim |= prelim;
    for (State p : next_prelim.elements())
      if (!prelim.test(p))
        for (State q = 0; q < n; ++q)
          if (q != sink) r[q].reset(p);
    prelim = next_prelim;

    bool marked_any = false;
    for (State q : prelim.elements())
      if (!firm.test(q) && r[q].empty()) {
        firm.set(q);
        round[q] = iter;
        ++firm_count;
        marked_any = true;
      }
    if (!marked_any) {
      State witness = prelim.complement().first();
      return bob_wins({BobWitness::Kind::escapes, witness, prelim});
    }
  }
  MarkingCertificate cert;
  cert.round = std::move(round);
  return alice_wins(std::move(cert));
}

namespace {

GameOutcome decide_via_pairs(const Dfa& a, const std::optional<long long>& k) {
  if (a.n == 1) return alice_wins(MarkingCertificate{});  // nothing to merge
  auto pairs = std::make_shared<PairAutomaton>(two_subset(a));
  GameOutcome out = k ? decide_k_sink(pairs->dfa, *k) : decide_omega_sink(pairs->dfa);
  if (out.witness && out.witness->state != pairs->sink) {
    auto [p, q] = pairs->pair_of(out.witness->state);
    out.witness_pair = std::array<State, 2>{p, q};
  }
  out.pairs = std::move(pairs);
  return out;
}

}  // namespace

GameOutcome decide_omega(const Dfa& a) { return decide_via_pairs(a, std::nullopt); }

GameOutcome decide_k(const Dfa& a, long long k) { return decide_via_pairs(a, k); }

GameOutcome decide(const Dfa& a, const KBound& k) {
  return k.is_omega() ? decide_omega(a) : decide_k(a, k.k());
}

std::string to_string(const GameLevel& l) {
  switch (l.kind) {
    case GameLevel::Kind::not_synchronizing:
      return "not-synchronizing";
    case GameLevel::Kind::omega:
      return "omega";
    default:
      return std::to_string(l.k);
  }
}

GameLevel game_level(const Dfa& a) {
  if (a.n == 1) return {GameLevel::Kind::omega, 0};
  if (decide_omega(a).winner == Winner::alice) return {GameLevel::Kind::omega, 0};
  if (decide_k(a, 1).winner == Winner::bob) return {GameLevel::Kind::not_synchronizing, 0};

  // Winning is monotone in k and winning at C(n,2) would imply winning the
  // unbounded game, so the answer lies in [1, C(n,2)-1].
  long long lo = 1, hi = static_cast<long long>(a.n) * (a.n - 1) / 2 - 1;
  while (lo < hi) {
    long long mid = lo + (hi - lo + 1) / 2;
    if (decide_k(a, mid).winner == Winner::alice)
      lo = mid;
    else
      hi = mid - 1;
  }
  return {GameLevel::Kind::finite, lo};
}

GameOutcome decide_m_omega(const Dfa& a, int m, std::size_t letter_cap) {
  return decide_omega(iterate(a, m, letter_cap));
}

}  // namespace synchro
