#include "synchro/potential.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace synchro {

LevelProfile level_profile(const Dfa& a) {
  LevelProfile prof;
  prof.pairs = std::make_shared<PairAutomaton>(two_subset(a));
  const Dfa& pd = prof.pairs->dfa;
  const State sink = prof.pairs->sink;
  const int np = pd.n;

  std::vector<std::vector<State>> rev(np);
  for (State q = 0; q < np; ++q)
    for (int x = 0; x < pd.m(); ++x) rev[pd.act(q, x)].push_back(q);

  prof.level.assign(np - 1, kInfiniteLevel);
  StateSet cur = StateSet::single(np, sink);  // pairs known mergeable in <= l moves, plus the sink
  int assigned = 0;

  for (int l = 1; assigned < np - 1; ++l) {
    // good: a letter reaches the current set. The opponent loses exactly the
    // states whose whole forward closure stays good, i.e. the complement of
    // the backward closure of the bad states.
    StateSet good(np);
    for (State q = 0; q < np; ++q)
      for (int x = 0; x < pd.m(); ++x)
        if (cur.test(pd.act(q, x))) {
          good.set(q);
          break;
        }
    StateSet reaches_bad = good.complement();
    std::deque<State> queue;
    for (State q : reaches_bad.elements()) queue.push_back(q);
    while (!queue.empty()) {
      State q = queue.front();
      queue.pop_front();
      for (State p : rev[q])
        if (!reaches_bad.test(p)) {
          reaches_bad.set(p);
          queue.push_back(p);
        }
    }

    StateSet next = reaches_bad.complement();
    next |= cur;
    bool grew = false;
    for (State q : next.elements())
      if (!cur.test(q) && q != sink) {
        prof.level[q] = l;
        ++assigned;
        grew = true;
        prof.max_finite = l;
      }
    if (!grew) break;
    cur = next;
  }
  prof.all_finite = assigned == np - 1;
  return prof;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);  // keep the lowest state as representative
    parent[y] = x;
    return true;
  }
};

}  // namespace

ComponentTree component_tree(const LevelProfile& profile, const Dfa& a) {
  if (!profile.all_finite)
    throw std::invalid_argument("component tree requires all merge levels finite");
  const int n = a.n;

  // Pairs bucketed by level, so the partition chain can be grown incrementally.
  std::vector<std::vector<std::pair<State, State>>> by_level(profile.max_finite + 1);
  for (State p = 0; p < n; ++p)
    for (State q = p + 1; q < n; ++q) by_level[profile.d(p, q)].push_back({p, q});

  ComponentTree tree;
  tree.leaf_of.resize(n);
  std::vector<int> node_of(n);  // state -> current block's node id
  for (State q = 0; q < n; ++q) {
    ComponentTree::Node leaf;
    leaf.states = {q};
    leaf.member_mask = StateSet::single(n, q);
    leaf.h = 0;
    tree.nodes.push_back(std::move(leaf));
    tree.leaf_of[q] = q;
    node_of[q] = q;
  }
  if (n == 1) {
    tree.root = 0;
    return tree;
  }

  Dsu dsu(n);
  int blocks = n;
  for (int l = 1; l <= profile.max_finite && blocks > 1; ++l) {
    bool merged = false;
    for (auto [p, q] : by_level[l]) merged |= dsu.unite(p, q);
    if (!merged) continue;

    std::vector<std::vector<State>> groups(n);
    for (State q = 0; q < n; ++q) groups[dsu.find(q)].push_back(q);
    for (State root = 0; root < n; ++root) {
      const auto& members = groups[root];
      if (members.size() < 2) continue;
      std::vector<int> child_nodes;
      for (State q : members)
        if (std::find(child_nodes.begin(), child_nodes.end(), node_of[q]) == child_nodes.end())
          child_nodes.push_back(node_of[q]);
      if (child_nodes.size() < 2) continue;  // block unchanged at this level

      ComponentTree::Node node;
      node.states = members;
      node.member_mask = StateSet(n);
      for (State q : members) node.member_mask.set(q);
      node.h = l;
      node.children = child_nodes;
      int id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(std::move(node));
      for (int c : child_nodes) tree.nodes[c].parent = id;
      for (State q : members) node_of[q] = id;
      blocks -= static_cast<int>(child_nodes.size()) - 1;
    }
  }
  tree.root = node_of[0];
  return tree;
}

int ComponentTree::least_containing(const StateSet& a) const {
  State q = a.first();
  if (q < 0) throw std::invalid_argument("least_containing: empty set");
  int node = leaf_of[q];
  while (!nodes[node].member_mask.contains(a)) {
    node = nodes[node].parent;
    if (node == -1) throw std::logic_error("set escapes the component tree");
  }
  return node;
}

namespace {

/// Quotient of a tree node: one supernode per child, edges between children
/// joined by a pair at exactly the node's level.
struct Quotient {
  int count = 0;
  std::vector<int> super_of;              // state -> child position, -1 outside
  std::vector<std::vector<bool>> adj;     // count x count
  std::vector<std::vector<int>> dist;     // BFS hops, -1 unreachable
};

Quotient build_quotient(const ComponentTree& tree, const LevelProfile& profile, const Dfa& a,
                        int node_id) {
  const auto& node = tree.nodes[node_id];
  const int level = node.h;
  Quotient q;
  q.count = static_cast<int>(node.children.size());
  q.super_of.assign(a.n, -1);
  for (int i = 0; i < q.count; ++i)
    for (State s : tree.nodes[node.children[i]].states) q.super_of[s] = i;

  q.adj.assign(q.count, std::vector<bool>(q.count, false));
  for (std::size_t i = 0; i < node.states.size(); ++i)
    for (std::size_t j = i + 1; j < node.states.size(); ++j) {
      State u = node.states[i], v = node.states[j];
      if (q.super_of[u] != q.super_of[v] && profile.d(u, v) == level) {
        q.adj[q.super_of[u]][q.super_of[v]] = true;
        q.adj[q.super_of[v]][q.super_of[u]] = true;
      }
    }

  q.dist.assign(q.count, std::vector<int>(q.count, -1));
  for (int src = 0; src < q.count; ++src) {
    auto& d = q.dist[src];
    d[src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < q.count; ++v)
        if (q.adj[u][v] && d[v] == -1) {
          d[v] = d[u] + 1;
          queue.push_back(v);
        }
    }
  }
  return q;
}

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

/// Dreyfus-Wagner dynamic program; returns dp[mask][v] = fewest edges of a
/// connected subgraph covering terminals(mask) and v.
std::vector<std::vector<int>> steiner_dp(const Quotient& q, const std::vector<int>& terminals) {
  const int t = static_cast<int>(terminals.size());
  const int v_count = q.count;
  std::vector<std::vector<int>> dp(std::size_t{1} << t, std::vector<int>(v_count, kUnreachable));
  for (int i = 0; i < t; ++i)
    for (int v = 0; v < v_count; ++v)
      if (q.dist[terminals[i]][v] >= 0) dp[std::size_t{1} << i][v] = q.dist[terminals[i]][v];

  for (std::size_t mask = 1; mask < (std::size_t{1} << t); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons initialized above
    auto& row = dp[mask];
    for (int v = 0; v < v_count; ++v)
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (sub < (mask ^ sub)) break;  // each split once
        int cost = dp[sub][v] == kUnreachable || dp[mask ^ sub][v] == kUnreachable
                       ? kUnreachable
                       : dp[sub][v] + dp[mask ^ sub][v];
        row[v] = std::min(row[v], cost);
      }
    // Relax through intermediate vertices (uniform edge weight 1 lets a
    // BFS-style pass settle vertices in cost order).
    std::vector<bool> done(v_count, false);
    for (int step = 0; step < v_count; ++step) {
      int best = -1;
      for (int v = 0; v < v_count; ++v)
        if (!done[v] && (best == -1 || row[v] < row[best])) best = v;
      if (best == -1 || row[best] == kUnreachable) break;
      done[best] = true;
      for (int v = 0; v < v_count; ++v)
        if (q.dist[best][v] >= 0 && row[best] + q.dist[best][v] < row[v])
          row[v] = row[best] + q.dist[best][v];
    }
  }
  return dp;
}

/// Re-derives one optimal Steiner tree as a set of quotient edges,
/// deterministically (lowest split / lowest vertex first).
void steiner_tree_edges(const Quotient& q, const std::vector<int>& terminals,
                        const std::vector<std::vector<int>>& dp, std::size_t mask, int v,
                        std::vector<std::pair<int, int>>& edges) {
  if ((mask & (mask - 1)) == 0) {
    int t = terminals[std::countr_zero(mask)];
    // Walk one shortest path from the terminal to v.
    int cur = t;
    while (cur != v) {
      for (int u = 0; u < q.count; ++u)
        if (q.adj[cur][u] && q.dist[u][v] == q.dist[cur][v] - 1) {
          edges.push_back({std::min(cur, u), std::max(cur, u)});
          cur = u;
          break;
        }
    }
    return;
  }
  for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
    if (sub < (mask ^ sub)) break;
    if (dp[sub][v] != kUnreachable && dp[mask ^ sub][v] != kUnreachable &&
        dp[sub][v] + dp[mask ^ sub][v] == dp[mask][v]) {
      steiner_tree_edges(q, terminals, dp, sub, v, edges);
      steiner_tree_edges(q, terminals, dp, mask ^ sub, v, edges);
      return;
    }
  }
  // Otherwise the value came from relaxing through a neighbor.
  for (int u = 0; u < q.count; ++u)
    if (q.adj[v][u] && dp[mask][u] + 1 == dp[mask][v]) {
      edges.push_back({std::min(u, v), std::max(u, v)});
      steiner_tree_edges(q, terminals, dp, mask, u, edges);
      return;
    }
  throw std::logic_error("steiner reconstruction failed");
}

std::vector<int> terminal_children(const ComponentTree& tree, int node_id, const StateSet& a) {
  std::vector<int> terminals;
  const auto& children = tree.nodes[node_id].children;
  for (int i = 0; i < static_cast<int>(children.size()); ++i) {
    StateSet inter = tree.nodes[children[i]].member_mask;
    inter &= a;
    if (!inter.empty()) terminals.push_back(i);
  }
  return terminals;
}

struct GammaResult {
  int value = 0;
  std::vector<std::pair<int, int>> tree_edges;  // quotient edges of one optimum
};

GammaResult gamma_with_tree(const ComponentTree& tree, const LevelProfile& profile, const Dfa& a,
                            const StateSet& set, bool want_edges) {
  if (set.empty()) throw std::invalid_argument("gamma: empty set");
  GammaResult res;
  if (set.is_singleton()) return res;

  int node_id = tree.least_containing(set);
  Quotient q = build_quotient(tree, profile, a, node_id);
  std::vector<int> terminals = terminal_children(tree, node_id, set);

  if (static_cast<int>(terminals.size()) == q.count && !want_edges) {
    res.value = q.count - 1;  // spanning case: every child is a terminal
    return res;
  }
  if (q.count > kGammaSupernodeCap)
    throw CapExceeded("gamma: component has too many child blocks for exact search");
  if (static_cast<int>(terminals.size()) > kGammaTerminalCap)
    throw CapExceeded("gamma: too many terminal blocks for exact search");

  auto dp = steiner_dp(q, terminals);
  std::size_t full = (std::size_t{1} << terminals.size()) - 1;
  int best = dp[full][terminals[0]];
  if (best >= kUnreachable) throw std::logic_error("gamma: quotient graph is disconnected");
  res.value = best;
  if (want_edges) {
    steiner_tree_edges(q, terminals, dp, full, terminals[0], res.tree_edges);
    std::sort(res.tree_edges.begin(), res.tree_edges.end());
    res.tree_edges.erase(std::unique(res.tree_edges.begin(), res.tree_edges.end()),
                         res.tree_edges.end());
  }
  return res;
}

}  // namespace

int gamma(const ComponentTree& tree, const LevelProfile& profile, const StateSet& a) {
  return gamma_with_tree(tree, profile, profile.pairs->base, a, false).value;
}

Characteristic characteristic(const ComponentTree& tree, const LevelProfile& profile,
                              const StateSet& a) {
  Characteristic chi;
  chi.component = tree.least_containing(a);
  chi.gamma = gamma(tree, profile, a);
  return chi;
}

int avoiding_letter(const ComponentTree& tree, const LevelProfile& profile, const Dfa& a,
                    const StateSet& set) {
  if (set.count() < 2) throw std::invalid_argument("avoiding_letter: need >= 2 live states");
  int node_id = tree.least_containing(set);
  const auto& node = tree.nodes[node_id];
  const int level = node.h;

  GammaResult g = gamma_with_tree(tree, profile, a, set, true);
  if (g.tree_edges.empty()) throw std::logic_error("avoiding_letter: no top-level edge");
  auto [ci, cj] = g.tree_edges.front();

  // Lowest concrete pair realizing the chosen quotient edge.
  const auto& child_i = tree.nodes[node.children[ci]].states;
  const auto& child_j = tree.nodes[node.children[cj]].states;
  State p0 = -1, q0 = -1;
  for (State u : child_i)
    for (State v : child_j)
      if (profile.d(u, v) == level) {
        State lo = std::min(u, v), hi = std::max(u, v);
        if (p0 == -1 || std::pair(lo, hi) < std::pair(p0, q0)) {
          p0 = lo;
          q0 = hi;
        }
      }
  if (p0 == -1) throw std::logic_error("avoiding_letter: edge without a witness pair");

  for (int x = 0; x < a.m(); ++x)
    if (profile.d(a.act(p0, x), a.act(q0, x)) < level) return x;
  throw std::logic_error("avoiding_letter: no descending letter");
}

int first_letter_iterated(const Dfa& a, int m) {
  const Dfa iterated = m == 1 ? a : iterate(a, m);
  LevelProfile profile = level_profile(iterated);
  if (!profile.all_finite)
    throw std::invalid_argument("first_letter_iterated: Alice does not win this game");
  ComponentTree tree = component_tree(profile, iterated);
  if (m == 1) return avoiding_letter(tree, profile, iterated, StateSet::full(a.n));

  const auto& root_children = tree.nodes[tree.root].children;
  std::vector<int> block_of(a.n);
  for (int i = 0; i < static_cast<int>(root_children.size()); ++i)
    for (State q : tree.nodes[root_children[i]].states) block_of[q] = i;

  State p = tree.nodes[root_children[0]].states[0];
  State q = tree.nodes[root_children[1]].states[0];
  Word reset = synthesize_reset_word(a);
  // After the last position where the two trails sit in different root
  // blocks, the next letter joins them; its image set dodges the root
  // characteristic for good.
  int split = -1;
  State sp = p, sq = q;
  std::vector<std::pair<State, State>> trail{{sp, sq}};
  for (int x : reset) {
    sp = a.act(sp, x);
    sq = a.act(sq, x);
    trail.push_back({sp, sq});
  }
  for (int i = static_cast<int>(reset.size()); i-- > 0;)
    if (block_of[trail[i].first] != block_of[trail[i].second]) {
      split = i;
      break;
    }
  if (split < 0) throw std::logic_error("first_letter_iterated: trails never split");
  return reset[split];
}

Word extract_reset_word(const Dfa& a, int m) {
  if (m < 1) throw std::invalid_argument("extract_reset_word: m >= 1");
  if (a.n == 1) return {};
  const Dfa iterated = m == 1 ? a : iterate(a, m);
  LevelProfile profile = level_profile(iterated);
  if (!profile.all_finite)
    throw std::invalid_argument("extract_reset_word: Alice does not win this game");
  ComponentTree tree = component_tree(profile, iterated);

  Word word;
  StateSet tokens = StateSet::full(a.n);
  bool first_move = true;
  while (!tokens.is_singleton()) {
    Word base_move;
    if (first_move && m > 1) {
      base_move = {first_letter_iterated(a, m)};
    } else {
      int derived = avoiding_letter(tree, profile, iterated, tokens);
      base_move = m == 1 ? Word{derived} : iterated_letter_word(a.m(), derived);
    }
    first_move = false;
    tokens = apply_set(a, tokens, base_move);
    word.insert(word.end(), base_move.begin(), base_move.end());
  }
  return word;
}

}  // namespace synchro
