#include "synchro/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>

namespace synchro {
namespace oracle {

SubsetBfsResult rt_exact(const Dfa& a, int max_states) {
  if (a.n > max_states) throw CapExceeded("rt_exact: state count exceeds the subset-BFS cap");
  const int n = a.n;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  const std::size_t space = std::size_t{1} << n;

  if (n == 1) return {true, 0, {}};

  std::vector<std::int32_t> pred(space, -1);
  std::vector<std::uint8_t> via(space, 0);
  std::deque<std::uint32_t> queue{full};
  pred[full] = static_cast<std::int32_t>(full);

  auto step = [&](std::uint32_t mask, int x) {
    std::uint32_t out = 0;
    std::uint32_t rest = mask;
    while (rest != 0) {
      int q = std::countr_zero(rest);
      rest &= rest - 1;
      out |= 1u << a.act(q, x);
    }
    return out;
  };

  // FIFO order with letters scanned ascending discovers each subset through
  // its lexicographically least shortest word.
  while (!queue.empty()) {
    std::uint32_t mask = queue.front();
    queue.pop_front();
    for (int x = 0; x < a.m(); ++x) {
      std::uint32_t next = step(mask, x);
      if (pred[next] != -1) continue;
      pred[next] = static_cast<std::int32_t>(mask);
      via[next] = static_cast<std::uint8_t>(x);
      if (std::popcount(next) == 1) {
        SubsetBfsResult res;
        res.synchronizing = true;
        Word w;
        for (std::uint32_t s = next; s != full; s = static_cast<std::uint32_t>(pred[s]))
          w.push_back(via[s]);
        std::reverse(w.begin(), w.end());
        res.rt = static_cast<long long>(w.size());
        res.witness = std::move(w);
        return res;
      }
      queue.push_back(next);
    }
  }
  return {};
}

namespace {

std::vector<StateSet> reach_table(const Dfa& a, long long depth) {
  std::vector<StateSet> reach(a.n);
  for (State q = 0; q < a.n; ++q) reach[q] = reach_within(a, q, depth);
  return reach;
}

}  // namespace

Winner decide_k_bruteforce(const Dfa& a, const KBound& k, int max_pair_states) {
  if (a.n == 1) return Winner::alice;
  const long long pair_states = static_cast<long long>(a.n) * (a.n - 1) / 2 + 1;
  if (pair_states > max_pair_states)
    throw CapExceeded("decide_k_bruteforce: pair automaton exceeds the cap");

  PairAutomaton pa = two_subset(a);
  const Dfa& d = pa.dfa;
  const int np = d.n;
  const long long depth = k.is_omega() ? np - 1 : std::min<long long>(k.k() - 1, np - 1);
  std::vector<StateSet> reach = reach_table(d, depth);

  StateSet awin(np), bwin(np);
  bool changed = true;
  while (changed) {
    changed = false;
    for (State q = 0; q < np; ++q) {
      if (!awin.test(q)) {
        bool win = q == pa.sink;
        for (int x = 0; x < d.m() && !win; ++x) win = bwin.test(d.act(q, x));
        if (win) {
          awin.set(q);
          changed = true;
        }
      }
      if (!bwin.test(q) && awin.contains(reach[q])) {
        bwin.set(q);
        changed = true;
      }
    }
  }
  return bwin.count() == np ? Winner::alice : Winner::bob;
}

Winner decide_full_position_bruteforce(const Dfa& a, const KBound& k, int max_states) {
  if (a.n > max_states)
    throw CapExceeded("decide_full_position_bruteforce: state count exceeds the cap");
  if (a.n == 1) return Winner::alice;
  const int n = a.n;
  const std::uint32_t count = 1u << n;

  std::vector<std::uint32_t> succ(static_cast<std::size_t>(count) * a.m());
  for (std::uint32_t mask = 1; mask < count; ++mask)
    for (int x = 0; x < a.m(); ++x) {
      std::uint32_t out = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
        out |= 1u << a.act(std::countr_zero(rest), x);
      succ[static_cast<std::size_t>(mask) * a.m() + x] = out;
    }

  const long long depth = k.is_omega() ? count : std::min<long long>(k.k() - 1, count);
  std::vector<std::vector<std::uint32_t>> reach(count);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    std::vector<bool> seen(count, false);
    seen[mask] = true;
    std::vector<std::uint32_t> frontier{mask};
    reach[mask].push_back(mask);
    for (long long layer = 0; layer < depth && !frontier.empty(); ++layer) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t cur : frontier)
        for (int x = 0; x < a.m(); ++x) {
          std::uint32_t r = succ[static_cast<std::size_t>(cur) * a.m() + x];
          if (!seen[r]) {
            seen[r] = true;
            next.push_back(r);
            reach[mask].push_back(r);
          }
        }
      frontier = std::move(next);
    }
  }

  std::vector<bool> awin(count, false), bwin(count, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      if (!awin[mask]) {
        bool win = std::popcount(mask) == 1;
        for (int x = 0; x < a.m() && !win; ++x)
          win = bwin[succ[static_cast<std::size_t>(mask) * a.m() + x]];
        if (win) {
          awin[mask] = true;
          changed = true;
        }
      }
      if (!bwin[mask]) {
        bool win = true;
        for (std::uint32_t r : reach[mask])
          if (!awin[r]) {
            win = false;
            break;
          }
        if (win) {
          bwin[mask] = true;
          changed = true;
        }
      }
    }
  }
  return bwin[count - 1] ? Winner::alice : Winner::bob;
}

void enumerate_dfas(int n, int m, const std::function<void(const Dfa&)>& fn,
                    std::uint64_t budget) {
  const int digits = n * m;
  std::uint64_t total = 1;
  for (int i = 0; i < digits; ++i) {
    if (total > budget / static_cast<std::uint64_t>(n))
      throw CapExceeded("enumerate_dfas: space exceeds the budget");
    total *= static_cast<std::uint64_t>(n);
  }

  Dfa a;
  a.n = n;
  for (int x = 0; x < m; ++x) a.letters.push_back(std::string(1, static_cast<char>('a' + x)));
  a.table.assign(digits, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    fn(a);
    // Odometer over the flattened table, last digit fastest.
    for (int i = digits - 1; i >= 0; --i) {
      if (++a.table[i] < n) break;
      a.table[i] = 0;
    }
  }
}

Dfa random_dfa(int n, int m, SplitMix64& rng) {
  Dfa a;
  a.n = n;
  for (int x = 0; x < m; ++x) a.letters.push_back(std::string(1, static_cast<char>('a' + x)));
  a.table.resize(static_cast<std::size_t>(n) * m);
  for (auto& t : a.table) t = static_cast<State>(rng.below(n));
  return a;
}

bool verify_hamiltonian(const PairAutomaton& pa, std::pair<State, State> start, const Word& w) {
  const int pair_count = pa.dfa.n - 1;
  std::vector<bool> seen(pa.dfa.n, false);
  State cur = pa.pair_index(start.first, start.second);
  std::vector<State> visited{cur};
  for (int x : w) {
    cur = pa.dfa.act(cur, x);
    visited.push_back(cur);
  }

  const bool ends_at_sink = visited.back() == pa.sink;
  const std::size_t pair_prefix = ends_at_sink ? visited.size() - 1 : visited.size();
  if (static_cast<int>(pair_prefix) != pair_count) return false;
  for (std::size_t i = 0; i < pair_prefix; ++i) {
    State s = visited[i];
    if (s == pa.sink || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

SubsetGame analyze_subset_game(const Dfa& a, const KBound& k, int max_states) {
  if (a.n > max_states) throw CapExceeded("analyze_subset_game: state count exceeds the cap");
  SubsetGame g;
  g.n = a.n;
  g.k = k;
  const std::uint32_t count = 1u << a.n;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;

  std::vector<std::uint32_t> succ(static_cast<std::size_t>(count) * a.m());
  for (std::uint32_t mask = 1; mask < count; ++mask)
    for (int x = 0; x < a.m(); ++x) {
      std::uint32_t out = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
        out |= 1u << a.act(std::countr_zero(rest), x);
      succ[static_cast<std::size_t>(mask) * a.m() + x] = out;
    }

  const long long depth = k.is_omega() ? count : std::min<long long>(k.k() - 1, count);
  std::vector<std::vector<std::uint32_t>> reach(count);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    std::vector<bool> seen(count, false);
    seen[mask] = true;
    std::vector<std::uint32_t> frontier{mask};
    reach[mask].push_back(mask);
    for (long long layer = 0; layer < depth && !frontier.empty(); ++layer) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t cur : frontier)
        for (int x = 0; x < a.m(); ++x) {
          std::uint32_t r = succ[static_cast<std::size_t>(cur) * a.m() + x];
          if (!seen[r]) {
            seen[r] = true;
            next.push_back(r);
            reach[mask].push_back(r);
          }
        }
      frontier = std::move(next);
    }
  }

  std::vector<int> va(count, kInf), vb(count, kInf);
  for (std::uint32_t mask = 1; mask < count; ++mask)
    if (std::popcount(mask) == 1) va[mask] = vb[mask] = 0;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      if (std::popcount(mask) == 1) continue;
      int best = kInf;
      for (int x = 0; x < a.m(); ++x)
        best = std::min(best, vb[succ[static_cast<std::size_t>(mask) * a.m() + x]]);
      if (best < kInf && best + 1 < va[mask]) {
        va[mask] = best + 1;
        changed = true;
      }
      int worst = 0;
      for (std::uint32_t r : reach[mask]) {
        worst = std::max(worst, va[r]);
        if (worst >= kInf) break;
      }
      if (worst < vb[mask]) {
        vb[mask] = worst;
        changed = true;
      }
    }
  }

  g.alice_value.assign(count, -1);
  g.bob_value.assign(count, -1);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    if (va[mask] < kInf) g.alice_value[mask] = va[mask];
    if (vb[mask] < kInf) g.bob_value[mask] = vb[mask];
  }
  return g;
}

BobStrategy bob_oracle(const Dfa& a, const KBound& k, int max_states) {
  auto game = std::make_shared<SubsetGame>(analyze_subset_game(a, k, max_states));
  auto dfa = std::make_shared<Dfa>(a);
  const long long max_len = k.is_omega() ? (1LL << a.n) : k.k() - 1;

  return [game, dfa, max_len](const Position& pos) -> Word {
    const Dfa& d = *dfa;
    std::uint32_t start = 0;
    for (State q : pos.tokens.elements()) start |= 1u << q;

    // BFS over subset images; keep the first (shortest, lex-least) word per
    // mask, then pick the target mask worst for Alice.
    std::vector<std::pair<std::uint32_t, Word>> layer{{start, {}}};
    std::vector<bool> seen(std::size_t{1} << d.n, false);
    seen[start] = true;
    std::uint32_t best_mask = start;
    Word best_word;
    auto value = [&](std::uint32_t m2) {
      int v = game->alice_value[m2];
      return v < 0 ? std::numeric_limits<int>::max() : v;
    };
    for (long long dist = 0; dist < max_len && !layer.empty(); ++dist) {
      std::vector<std::pair<std::uint32_t, Word>> next;
      for (auto& [mask, w] : layer)
        for (int x = 0; x < d.m(); ++x) {
          std::uint32_t out = 0;
          for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
            out |= 1u << d.act(std::countr_zero(rest), x);
          if (seen[out]) continue;
          seen[out] = true;
          Word w2 = w;
          w2.push_back(x);
          if (value(out) > value(best_mask)) {
            best_mask = out;
            best_word = w2;
          }
          next.push_back({out, std::move(w2)});
        }
      layer = std::move(next);
    }
    return best_word;
  };
}

}  // namespace oracle
}  // namespace synchro
