#include "synchro/potential.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "synchro/families.hpp"
#include "synchro/game.hpp"
#include "synchro/oracle.hpp"
#include "synchro/rng.hpp"

using namespace synchro;
using namespace synchro::test;

namespace {

constexpr int kInf = 1 << 20;

// Independent merge-level oracle: direct value iteration on the game
// semantics (Bob first, unbounded words), sharing nothing with the
// level-set construction.
std::vector<int> d_oracle(const Dfa& a) {
  PairAutomaton pa = two_subset(a);
  const int np = pa.dfa.n;
  std::vector<StateSet> closure(np);
  for (State q = 0; q < np; ++q) closure[q] = reach_within(pa.dfa, q, np - 1);

  std::vector<int> av(np, kInf), bv(np, kInf);
  av[pa.sink] = bv[pa.sink] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (State q = 0; q < np; ++q) {
      if (q != pa.sink) {
        int best = kInf;
        for (int x = 0; x < pa.dfa.m(); ++x) best = std::min(best, bv[pa.dfa.act(q, x)]);
        if (best < kInf && best + 1 < av[q]) {
          av[q] = best + 1;
          changed = true;
        }
      }
      int worst = 0;
      for (State r : closure[q].elements()) {
        worst = std::max(worst, av[r]);
        if (worst >= kInf) break;
      }
      if (worst < bv[q]) {
        bv[q] = worst;
        changed = true;
      }
    }
  }
  std::vector<int> d(np - 1);
  for (State q = 0; q < np - 1; ++q) d[q] = bv[q] >= kInf ? kInfiniteLevel : bv[q];
  return d;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Brute-force gamma: enumerate every vertex set between A and its least
// enclosing component, contract the cheap edges, and count what it takes to
// connect the rest.
int gamma_oracle(const Dfa& a, const LevelProfile& prof, const StateSet& set) {
  const int n = a.n;
  if (set.is_singleton()) return 0;

  auto connected_at = [&](int level, const StateSet& who) {
    Dsu dsu(n);
    for (State p = 0; p < n; ++p)
      for (State q = p + 1; q < n; ++q)
        if (prof.d(p, q) != kInfiniteLevel && prof.d(p, q) <= level) dsu.unite(p, q);
    auto members = who.elements();
    for (State s : members)
      if (dsu.find(s) != dsu.find(members[0])) return std::pair(false, StateSet(n));
    StateSet comp(n);
    for (State q = 0; q < n; ++q)
      if (dsu.find(q) == dsu.find(members[0])) comp.set(q);
    return std::pair(true, comp);
  };

  int level = 0;
  StateSet enclosing(n);
  for (;; ++level) {
    auto [ok, comp] = connected_at(level, set);
    if (ok) {
      enclosing = comp;
      break;
    }
  }

  std::vector<State> extra;
  for (State q : enclosing.elements())
    if (!set.test(q)) extra.push_back(q);

  int best = kInf;
  for (std::uint32_t pick = 0; pick < (1u << extra.size()); ++pick) {
    StateSet v(n);
    v |= set;
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (pick & (1u << i)) v.set(extra[i]);

    Dsu dsu(n);
    auto members = v.elements();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        int d = prof.d(members[i], members[j]);
        if (d != kInfiniteLevel && d <= level - 1) dsu.unite(members[i], members[j]);
      }
    std::map<int, int> block_id;
    for (State s : members) block_id.emplace(dsu.find(s), static_cast<int>(block_id.size()));
    int blocks = static_cast<int>(block_id.size());

    Dsu top(blocks);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (prof.d(members[i], members[j]) == level)
          top.unite(block_id[dsu.find(members[i])], block_id[dsu.find(members[j])]);
    bool connected = true;
    for (int b = 1; b < blocks && connected; ++b) connected = top.find(b) == top.find(0);
    if (connected) best = std::min(best, blocks - 1);
  }
  return best;
}

// Every subset reachable from `from` under arbitrary words.
std::vector<StateSet> forward_closure(const Dfa& a, const StateSet& from) {
  std::vector<StateSet> out{from};
  std::vector<StateSet> frontier{from};
  while (!frontier.empty()) {
    std::vector<StateSet> next;
    for (const auto& s : frontier)
      for (int x = 0; x < a.m(); ++x) {
        StateSet img = apply_set(a, s, {x});
        if (std::find(out.begin(), out.end(), img) == out.end()) {
          out.push_back(img);
          next.push_back(img);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

bool avoidance_holds(const Dfa& a, const LevelProfile& prof, const ComponentTree& tree,
                     const StateSet& set, int letter) {
  Characteristic target = characteristic(tree, prof, set);
  StateSet image = apply_set(a, set, {letter});
  for (const auto& s : forward_closure(a, image))
    if (characteristic(tree, prof, s) == target) return false;
  return true;
}

}  // namespace

TEST_CASE("level profile matches the semantic oracle") {
  auto check_profile = [](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    std::vector<int> expect = d_oracle(a);
    REQUIRE(prof.level.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(prof.level[i] == expect[i]);
  };
  check_profile(families::one_way_line(3));
  check_profile(families::one_way_line(6));
  check_profile(families::b2());
  check_profile(families::two_way_line(4));
  check_profile(families::e_series(4));
  check_profile(families::l_series(2, 2));
  check_profile(families::cerny(4));

  int checked = 0;
  oracle::enumerate_dfas(3, 2, [&](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    std::vector<int> expect = d_oracle(a);
    for (std::size_t i = 0; i < expect.size(); ++i) REQUIRE(prof.level[i] == expect[i]);
    ++checked;
  });
  CHECK(checked == 729);
}

TEST_CASE("one_way_line and two_way_line levels") {
  LevelProfile one = level_profile(families::one_way_line(3));
  CHECK(one.d(0, 1) == 1);
  CHECK(one.d(1, 2) == 2);
  CHECK(one.d(0, 2) == 2);
  CHECK(one.all_finite);

  LevelProfile two = level_profile(families::two_way_line(4));
  CHECK(!two.all_finite);
  CHECK(two.d(1, 2) == kInfiniteLevel);
}

TEST_CASE("profile properties hold") {
  SplitMix64 rng(61);
  int seen_finite = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Dfa a = oracle::random_dfa(5, 2, rng);
    LevelProfile prof = level_profile(a);

    for (State p = 0; p < a.n; ++p) {
      CHECK(prof.d(p, p) == 0);
      for (State q = 0; q < a.n; ++q) {
        CHECK(prof.d(p, q) == prof.d(q, p));
        if (p == q) continue;
        int d = prof.d(p, q);
        if (d == kInfiniteLevel) continue;
        CHECK(d > 0);
        // Descent: some letter strictly lowers the level.
        bool descends = false;
        for (int x = 0; x < a.m(); ++x) {
          int dx = prof.d(a.act(p, x), a.act(q, x));
          CHECK(dx != kInfiniteLevel);
          CHECK(dx <= d);  // stability, letter case
          descends |= dx < d;
        }
        CHECK(descends);
        // Stability under random words.
        Word w;
        for (int i = 0; i < 6; ++i) w.push_back(static_cast<int>(rng.below(a.m())));
        int dw = prof.d(apply(a, p, w), apply(a, q, w));
        CHECK(dw != kInfiniteLevel);
        CHECK(dw <= d);
      }
    }
    if (!prof.all_finite) continue;
    ++seen_finite;
    CHECK(decide_omega(a).winner == Winner::alice);
    // Triangle inequality (observed, not relied upon).
    for (State p = 0; p < a.n; ++p)
      for (State q = 0; q < a.n; ++q)
        for (State r = 0; r < a.n; ++r)
          CHECK(prof.d(p, r) <= prof.d(p, q) + prof.d(q, r));
  }
  CHECK(seen_finite > 0);
}

TEST_CASE("profile finiteness equals the unbounded winner") {
  oracle::enumerate_dfas(3, 2, [&](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    REQUIRE(prof.all_finite == (decide_omega(a).winner == Winner::alice));
  });
}

TEST_CASE("component tree shape") {
  Dfa a = families::one_way_line(5);
  LevelProfile prof = level_profile(a);
  ComponentTree tree = component_tree(prof, a);

  CHECK(tree.nodes[tree.root].states == std::vector<State>{0, 1, 2, 3, 4});
  int gamma_sum = 0;
  for (int id = 0; id < static_cast<int>(tree.nodes.size()); ++id) {
    const auto& node = tree.nodes[id];
    gamma_sum += tree.node_gamma(id);
    if (node.children.empty()) continue;
    CHECK(node.children.size() >= 2);
    std::vector<State> merged;
    for (int c : node.children) {
      CHECK(tree.nodes[c].h < node.h);
      CHECK(tree.nodes[c].parent == id);
      merged.insert(merged.end(), tree.nodes[c].states.begin(), tree.nodes[c].states.end());
    }
    std::sort(merged.begin(), merged.end());
    CHECK(merged == node.states);
  }
  CHECK(gamma_sum == a.n - 1);

  CHECK_THROWS_AS(component_tree(level_profile(families::two_way_line(4)), families::two_way_line(4)),
                  std::invalid_argument);
}

TEST_CASE("gamma agrees with subgraph enumeration") {
  auto check_all_subsets = [](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    if (!prof.all_finite) return false;
    ComponentTree tree = component_tree(prof, a);
    for (std::uint32_t mask = 1; mask < (1u << a.n); ++mask) {
      StateSet set(a.n);
      for (State q = 0; q < a.n; ++q)
        if (mask & (1u << q)) set.set(q);
      CHECK(gamma(tree, prof, set) == gamma_oracle(a, prof, set));
    }
    return true;
  };

  check_all_subsets(families::one_way_line(7));
  check_all_subsets(families::b2());

  int finite_seen = 0;
  oracle::enumerate_dfas(3, 2, [&](const Dfa& a) { finite_seen += check_all_subsets(a); });
  CHECK(finite_seen > 0);

  SplitMix64 rng(71);
  int sampled = 0;
  for (int trial = 0; trial < 4000 && sampled < 40; ++trial) {
    int n = 5 + static_cast<int>(rng.below(3));  // up to 7 states
    Dfa a = oracle::random_dfa(n, 2, rng);
    sampled += check_all_subsets(a);
  }
  CHECK(sampled == 40);
}

TEST_CASE("gamma endpoints") {
  Dfa a = families::b2();
  LevelProfile prof = level_profile(a);
  ComponentTree tree = component_tree(prof, a);
  CHECK(gamma(tree, prof, set_of(3, {1})) == 0);
  const auto& root = tree.nodes[tree.root];
  StateSet full = StateSet::full(3);
  CHECK(gamma(tree, prof, full) == static_cast<int>(root.children.size()) - 1);
  Characteristic chi = characteristic(tree, prof, full);
  CHECK(chi.component == tree.root);
  CHECK(!chi.trivial());
  CHECK(characteristic(tree, prof, set_of(3, {2})).trivial());
}

TEST_CASE("characteristic lookup agrees with a linear scan") {
  Dfa a = families::one_way_line(6);
  LevelProfile prof = level_profile(a);
  ComponentTree tree = component_tree(prof, a);
  for (std::uint32_t mask = 1; mask < (1u << a.n); ++mask) {
    StateSet set(a.n);
    for (State q = 0; q < a.n; ++q)
      if (mask & (1u << q)) set.set(q);
    int got = tree.least_containing(set);
    int best = -1;
    for (int id = 0; id < static_cast<int>(tree.nodes.size()); ++id)
      if (tree.nodes[id].member_mask.contains(set) &&
          (best == -1 || tree.nodes[id].states.size() < tree.nodes[best].states.size()))
        best = id;
    CHECK(got == best);
  }
}

TEST_CASE("avoiding letter honors its contract") {
  auto check_avoidance = [](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    if (!prof.all_finite) return false;
    ComponentTree tree = component_tree(prof, a);
    for (std::uint32_t mask = 1; mask < (1u << a.n); ++mask) {
      if (std::popcount(mask) < 2) continue;
      StateSet set(a.n);
      for (State q = 0; q < a.n; ++q)
        if (mask & (1u << q)) set.set(q);
      int x = avoiding_letter(tree, prof, a, set);
      CHECK(avoidance_holds(a, prof, tree, set, x));
    }
    return true;
  };

  check_avoidance(families::b2());
  check_avoidance(families::one_way_line(5));

  oracle::enumerate_dfas(3, 2, [&](const Dfa& a) { check_avoidance(a); });

  SplitMix64 rng(83);
  int sampled = 0;
  for (int trial = 0; trial < 3000 && sampled < 60; ++trial)
    sampled += check_avoidance(oracle::random_dfa(4, 2, rng));
  CHECK(sampled == 60);
}

TEST_CASE("nontrivial characteristics stay below the state count") {
  auto count_characteristics = [](const Dfa& a) {
    LevelProfile prof = level_profile(a);
    if (!prof.all_finite) return;
    ComponentTree tree = component_tree(prof, a);
    int total = 0;
    for (int id = 0; id < static_cast<int>(tree.nodes.size()); ++id)
      total += tree.node_gamma(id);
    CHECK(total == a.n - 1);
  };
  count_characteristics(families::one_way_line(8));
  count_characteristics(families::b2());
}

TEST_CASE("first letter of the iterated game") {
  for (int n = 4; n <= 6; ++n) {
    Dfa f = families::flower(n);
    int x = first_letter_iterated(f, 2);
    CHECK(x >= 0);
    CHECK(x < f.m());
    Dfa it = iterate(f, 2);
    LevelProfile prof = level_profile(it);
    ComponentTree tree = component_tree(prof, it);
    // The image of the full set under that single base letter dodges the
    // root characteristic forever (closure over base letters is the closure
    // over all derived letters).
    CHECK(avoidance_holds(it, prof, tree, StateSet::full(n), x));
  }
  Dfa one = families::one_way_line(4);
  LevelProfile prof = level_profile(one);
  ComponentTree tree = component_tree(prof, one);
  CHECK(first_letter_iterated(one, 1) == avoiding_letter(tree, prof, one, StateSet::full(4)));
  CHECK_THROWS_AS(first_letter_iterated(families::cerny(4), 1), std::invalid_argument);
}

TEST_CASE("extract_reset_word meets the length bounds") {
  for (int n = 3; n <= 8; ++n) {
    Dfa a = families::one_way_line(n);
    Word w = extract_reset_word(a, 1);
    CHECK(static_cast<int>(w.size()) <= n - 1);
    CHECK(apply_set(a, StateSet::full(n), w).is_singleton());
    CHECK(static_cast<int>(w.size()) == n - 1);  // threshold is exactly n-1 here
  }
  for (int n = 4; n <= 6; ++n) {
    Dfa f = families::flower(n);
    Word w = extract_reset_word(f, 2);
    CHECK(apply_set(f, StateSet::full(n), w).is_singleton());
    CHECK(static_cast<int>(w.size()) <= 2 * n - 3);
  }
  oracle::enumerate_dfas(3, 2, [&](const Dfa& a) {
    if (decide_omega(a).winner != Winner::alice) return;
    Word w = extract_reset_word(a, 1);
    REQUIRE(apply_set(a, StateSet::full(a.n), w).is_singleton());
    REQUIRE(w.size() <= 2);
  });
  CHECK_THROWS_AS(extract_reset_word(families::cerny(4), 1), std::invalid_argument);

  // Wider word budgets stay within m(n-2)+1 and still start with one letter.
  for (int m = 3; m <= 4; ++m) {
    Dfa l = families::l_series(2, 2);
    if (decide_m_omega(l, m).winner != Winner::alice) continue;
    Word w = extract_reset_word(l, m);
    CHECK(apply_set(l, StateSet::full(l.n), w).is_singleton());
    CHECK(static_cast<int>(w.size()) <= m * (l.n - 2) + 1);
  }
}
