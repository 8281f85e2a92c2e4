#include "synchro/suites.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "synchro/families.hpp"
#include "synchro/game.hpp"
#include "synchro/oracle.hpp"
#include "synchro/potential.hpp"
#include "synchro/rng.hpp"
#include "synchro/sim.hpp"

namespace synchro {
namespace suites {

namespace {

class Checker {
 public:
  Checker() : last_(clock::now()) {}

  /// Records a check, attributing to it the time elapsed since the previous
  /// record (which is when its work ran).
  void check(const std::string& name, bool pass, const std::string& detail = "") {
    auto now = clock::now();
    results_.push_back({name, pass, detail, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

  /// One row for a counted family of cases; a failure names the first culprit.
  void bulk(const std::string& name, long long total, long long failures,
            const std::string& first_failure) {
    std::ostringstream detail;
    detail << total << " checks";
    if (failures > 0) detail << ", " << failures << " failed; first: " << first_failure;
    check(name, failures == 0, detail.str());
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  using clock = std::chrono::steady_clock;
  std::vector<CheckResult> results_;
  clock::time_point last_;
};

struct BulkTally {
  long long total = 0;
  long long failures = 0;
  std::string first;

  void add(bool ok, const std::function<std::string()>& describe) {
    ++total;
    if (!ok && failures++ == 0) first = describe();
  }
  void add(bool ok, const std::string& describe) {
    ++total;
    if (!ok && failures++ == 0) first = describe;
  }
};

std::string dfa_tag(const Dfa& a) {
  std::string tag = "n=" + std::to_string(a.n) + " table=";
  for (State t : a.table) tag += std::to_string(t);
  return tag;
}

// ---- criterion 1 ----

std::vector<CheckResult> run_cerny_rt() {
  Checker out;
  for (int n = 2; n <= 7; ++n) {
    Dfa c = families::cerny(n);
    auto res = oracle::rt_exact(c);
    out.check("cerny(" + std::to_string(n) + ") rt = (n-1)^2",
              res.synchronizing && res.rt == static_cast<long long>(n - 1) * (n - 1),
              "rt=" + std::to_string(res.rt));
    Word classic;
    for (int rep = 0; rep < n - 2; ++rep) {
      classic.push_back(0);
      classic.insert(classic.end(), n - 1, 1);
    }
    classic.push_back(0);
    bool resets = apply_set(c, StateSet::full(n), classic).is_singleton();
    out.check("cerny(" + std::to_string(n) + ") classic witness resets",
              resets && static_cast<long long>(classic.size()) == res.rt);
  }
  return out.take();
}

// ---- criterion 2 ----

std::vector<CheckResult> run_hierarchy() {
  Checker out;
  BulkTally levels, two_game, one_game;
  for (int n = 3; n <= 8; ++n) {
    GameLevel lv = game_level(families::e_series(n));
    levels.add(lv.kind == GameLevel::Kind::finite && lv.k == n - 1,
               "e_series(" + std::to_string(n) + ") -> " + to_string(lv));
    two_game.add(decide_k(families::cerny(n), 2).winner == Winner::bob,
                 "cerny(" + std::to_string(n) + ") k=2");
    one_game.add(decide_k(families::cerny(n), 1).winner == Winner::alice,
                 "cerny(" + std::to_string(n) + ") k=1");
  }
  out.bulk("game_level(e_series(n)) = n-1 for n=3..8", levels.total, levels.failures,
           levels.first);
  out.bulk("bob wins the 2-game on cerny(3..8)", two_game.total, two_game.failures,
           two_game.first);
  out.bulk("alice wins the 1-game on cerny(3..8)", one_game.total, one_game.failures,
           one_game.first);
  return out.take();
}

// ---- criterion 3 ----

std::vector<CheckResult> run_theorem_main() {
  Checker out;
  BulkTally rt, beats, extract;
  long long omega_count = 0;

  auto run_instance = [&](const Dfa& a) {
    if (a.n < 2 || decide_omega(a).winner != Winner::alice) return;
    ++omega_count;
    const int n = a.n;

    auto res = oracle::rt_exact(a);
    rt.add(res.synchronizing && res.rt < n,
           [&] { return dfa_tag(a) + " rt=" + std::to_string(res.rt); });

    auto prof = std::make_shared<LevelProfile>(level_profile(a));
    auto tree = std::make_shared<ComponentTree>(component_tree(*prof, a));
    Transcript t = simulate(a, KBound::omega(), alice_characteristic(prof, tree),
                            bob_optimal(a, KBound::omega()));
    beats.add(t.outcome == SimOutcome::alice_won && t.alice_move_count() <= n - 1,
              [&] { return dfa_tag(a) + " moves=" + std::to_string(t.alice_move_count()); });

    Word w = extract_reset_word(a, 1);
    extract.add(static_cast<int>(w.size()) <= n - 1 &&
                    apply_set(a, StateSet::full(n), w).is_singleton(),
                [&] { return dfa_tag(a) + " len=" + std::to_string(w.size()); });
  };

  for (int n = 2; n <= 4; ++n) oracle::enumerate_dfas(n, 2, run_instance);
  run_instance(families::b2());
  for (int n = 3; n <= 8; ++n) run_instance(families::one_way_line(n));

  std::string scope = " over " + std::to_string(omega_count) +
                      " unbounded-winner automata (exhaustive 2-letter n<=4, b2, one-way lines)";
  out.bulk("rt < n" + scope, rt.total, rt.failures, rt.first);
  out.bulk("avoidance strategy beats the optimal adversary within n-1 moves" + scope, beats.total,
           beats.failures, beats.first);
  out.bulk("extracted reset word has length <= n-1" + scope, extract.total, extract.failures,
           extract.first);
  return out.take();
}

// ---- criterion 4 ----

std::vector<CheckResult> run_oracle_equivalence() {
  Checker out;
  const std::vector<KBound> bounds{KBound::finite(1), KBound::finite(2), KBound::finite(3),
                                   KBound::finite(6), KBound::omega()};

  BulkTally pair_agree, full_agree;
  auto compare = [&](const Dfa& a) {
    for (const KBound& k : bounds) {
      Winner solver = decide(a, k).winner;
      pair_agree.add(solver == oracle::decide_k_bruteforce(a, k),
                     [&] { return dfa_tag(a) + " k=" + to_string(k); });
      full_agree.add(solver == oracle::decide_full_position_bruteforce(a, k),
                     [&] { return dfa_tag(a) + " k=" + to_string(k); });
    }
  };

  long long enumerated = 0;
  oracle::enumerate_dfas(4, 2, [&](const Dfa& a) {
    ++enumerated;
    compare(a);
  });
  out.bulk("solver vs pair fixpoint, exhaustive " + std::to_string(enumerated) +
               " two-letter 4-state automata, k in {1,2,3,6,omega}",
           pair_agree.total, pair_agree.failures, pair_agree.first);
  out.bulk("solver vs full-position fixpoint on the same space", full_agree.total,
           full_agree.failures, full_agree.first);

  pair_agree = {};
  full_agree = {};
  SplitMix64 rng(0x5eed);
  for (int i = 0; i < 10'000; ++i) compare(oracle::random_dfa(5, 3, rng));
  out.bulk("solver vs pair fixpoint, 10^4 seeded random 3-letter 5-state automata",
           pair_agree.total, pair_agree.failures, pair_agree.first);
  out.bulk("solver vs full-position fixpoint on the same random automata", full_agree.total,
           full_agree.failures, full_agree.first);
  return out.take();
}

// ---- criterion 5 ----

std::vector<CheckResult> run_collapse() {
  Checker out;
  BulkTally pair_collapse, sink_collapse;
  for (int n = 2; n <= 4; ++n) {
    const long long k_n = std::max<long long>(static_cast<long long>(n) * (n - 1) / 2, 1);
    oracle::enumerate_dfas(n, 2, [&](const Dfa& a) {
      bool at_kn = decide_k(a, k_n).winner == Winner::alice;
      bool at_omega = decide_omega(a).winner == Winner::alice;
      pair_collapse.add(at_kn == at_omega, [&] { return dfa_tag(a); });
      if (n >= 2 && !find_sinks(a).empty()) {
        bool sink_k = decide_k_sink(a, n - 1).winner == Winner::alice;
        bool sink_omega = decide_omega_sink(a).winner == Winner::alice;
        sink_collapse.add(sink_k == sink_omega, [&] { return dfa_tag(a); });
      }
    });
  }
  out.bulk("bounded game at C(n,2) equals the unbounded game (exhaustive n<=4)",
           pair_collapse.total, pair_collapse.failures, pair_collapse.first);
  out.bulk("sink automata: bounded game at n-1 equals the unbounded game (exhaustive n<=4)",
           sink_collapse.total, sink_collapse.failures, sink_collapse.first);
  return out.take();
}

// ---- criterion 6 ----

std::vector<CheckResult> run_l_series() {
  Checker out;
  BulkTally level_checks, rt_checks, bound_checks;
  for (int k = 1; k <= 7; ++k)
    for (int m = 1; k + m + 1 <= 9; ++m) {
      const int n = k + m + 1;
      Dfa l = families::l_series(k, m);
      std::string tag = "l_series(" + std::to_string(k) + "," + std::to_string(m) + ")";

      GameLevel lv = game_level(l);
      level_checks.add(lv.kind == GameLevel::Kind::finite && lv.k == k,
                       tag + " level=" + to_string(lv));

      long long expected = 0;
      for (int q = 1; q <= k + m; ++q) expected += (q + k - 1) / k;
      auto res = oracle::rt_exact(l);
      rt_checks.add(res.synchronizing && res.rt == expected, tag + " rt=" + std::to_string(res.rt));
      bound_checks.add(res.rt * 2 * k >= static_cast<long long>(n) * (n - 1),
                       tag + " quadratic bound");
    }
  out.bulk("game_level(l_series(k,m)) = k for all n <= 9", level_checks.total,
           level_checks.failures, level_checks.first);
  out.bulk("rt(l_series) equals the ceiling-sum formula", rt_checks.total, rt_checks.failures,
           rt_checks.first);
  out.bulk("rt(l_series) >= n(n-1)/2k", bound_checks.total, bound_checks.failures,
           bound_checks.first);
  return out.take();
}

// ---- criterion 7 ----

std::vector<CheckResult> run_iteration() {
  Checker out;
  BulkTally flower_checks;
  for (int n = 4; n <= 7; ++n) {
    Dfa f = families::flower(n);
    std::string tag = "flower(" + std::to_string(n) + ")";
    bool wins = decide_m_omega(f, 2).winner == Winner::alice;
    Word w = extract_reset_word(f, 2);
    bool resets = apply_set(f, StateSet::full(n), w).is_singleton();
    bool exact_len = static_cast<int>(w.size()) == 2 * n - 3;
    bool matches_rt = oracle::rt_exact(f).rt == 2 * n - 3;
    bool single_first = !w.empty() && w[0] == first_letter_iterated(f, 2);
    flower_checks.add(wins && resets && exact_len && matches_rt && single_first,
                      tag + " len=" + std::to_string(w.size()));
  }
  out.bulk("2-bounded alice wins on flower(4..7), extracting a word of exactly 2n-3 = rt",
           flower_checks.total, flower_checks.failures, flower_checks.first);

  out.check("alice wins the 10-bounded-word game on cerny(5)",
            decide_m_omega(families::cerny(5), 10).winner == Winner::alice);
  out.check("bob wins the 9-bounded-word game on cerny(5)",
            decide_m_omega(families::cerny(5), 9).winner == Winner::bob);

  BulkTally sink_checks;
  for (int k = 1; k <= 5; ++k)
    for (int m = 1; k + m + 1 <= 7; ++m) {
      const int n = k + m + 1;
      sink_checks.add(decide_m_omega(families::l_series(k, m), n - 1).winner == Winner::alice,
                      "l_series(" + std::to_string(k) + "," + std::to_string(m) + ")");
    }
  out.bulk("alice wins the (n-1)-bounded-word game on every l_series with n <= 7",
           sink_checks.total, sink_checks.failures, sink_checks.first);
  return out.take();
}

// ---- criterion 8 ----

std::vector<CheckResult> run_hamiltonian() {
  Checker out;
  BulkTally forward, backward;
  for (int n = 3; n <= 9; ++n) {
    PairAutomaton pa = two_subset(families::cerny(n));
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    std::string tag = "n=" + std::to_string(n);

    Word wf = families::w_forward(n);
    forward.add(static_cast<long long>(wf.size()) == pairs - 1 &&
                    oracle::verify_hamiltonian(pa, {0, 1}, wf),
                tag);

    Word wb = families::w_backward(n);
    auto start = families::w_backward_start(n);
    bool ends_at_sink = apply(pa.dfa, pa.pair_index(start.first, start.second), wb) == pa.sink;
    backward.add(static_cast<long long>(wb.size()) == pairs && ends_at_sink &&
                     oracle::verify_hamiltonian(pa, start, wb),
                 tag);
  }
  out.bulk("forward word: Hamiltonian path from {0,1}, length C(n,2)-1, n=3..9", forward.total,
           forward.failures, forward.first);
  out.bulk("backward word: Hamiltonian path into the sink, length C(n,2), n=3..9", backward.total,
           backward.failures, backward.first);
  return out.take();
}

// ---- criterion 9 ----

std::vector<CheckResult> run_d_series() {
  Checker out;
  BulkTally top, middle;
  for (int n = 4; n <= 6; ++n) {
    const long long expect = static_cast<long long>(n) * (n - 1) / 2 - 1;
    GameLevel lv = game_level(families::d_series(n));
    top.add(lv.kind == GameLevel::Kind::finite && lv.k == expect,
            "d_series(" + std::to_string(n) + ") -> " + to_string(lv));
  }
  out.bulk("game_level(d_series(n)) = C(n,2)-1 for n=4..6", top.total, top.failures, top.first);

  for (int k = 5; k <= 8; ++k) {
    GameLevel lv = game_level(families::d_series_k(5, k));
    middle.add(lv.kind == GameLevel::Kind::finite && lv.k == k,
               "d_series_k(5," + std::to_string(k) + ") -> " + to_string(lv));
  }
  out.bulk("game_level(d_series_k(5,k)) = k for k=5..8", middle.total, middle.failures,
           middle.first);
  return out.take();
}

// ---- criterion 10 ----

std::vector<CheckResult> run_simulation() {
  Checker out;
  struct Instance {
    std::string name;
    Dfa dfa;
    KBound k;
  };
  const std::vector<Instance> instances{
      {"cerny(3) k=1", families::cerny(3), KBound::finite(1)},
      {"cerny(4) k=2", families::cerny(4), KBound::finite(2)},
      {"cerny(5) k=2", families::cerny(5), KBound::finite(2)},
      {"e_series(4) k=3", families::e_series(4), KBound::finite(3)},
      {"e_series(4) k=4", families::e_series(4), KBound::finite(4)},
      {"e_series(5) k=4", families::e_series(5), KBound::finite(4)},
      {"l_series(2,2) k=2", families::l_series(2, 2), KBound::finite(2)},
      {"l_series(2,2) k=3", families::l_series(2, 2), KBound::finite(3)},
      {"l_series(3,2) k=3", families::l_series(3, 2), KBound::finite(3)},
      {"rystsov(5) k=1", families::rystsov(5), KBound::finite(1)},
      {"b2 omega", families::b2(), KBound::omega()},
      {"one_way_line(5) omega", families::one_way_line(5), KBound::omega()},
      {"two_way_line(4) k=2", families::two_way_line(4), KBound::finite(2)},
      {"two_way_line(4) omega", families::two_way_line(4), KBound::omega()},
      {"flower(4) omega", families::flower(4), KBound::omega()},
      {"d_series(5) k=9", families::d_series(5), KBound::finite(9)},
      {"d_series(5) k=10", families::d_series(5), KBound::finite(10)},
  };

  BulkTally outcomes, horizons, replays;
  for (const auto& inst : instances) {
    GameOutcome solved = decide(inst.dfa, inst.k);

    auto play = [&](std::uint64_t seed) {
      return solved.winner == Winner::alice
                 ? simulate(inst.dfa, inst.k, alice_from_certificate(solved),
                            bob_random(inst.dfa, inst.k, seed), {Mover::bob, -1, -1, seed})
                 : simulate(inst.dfa, inst.k, alice_random(inst.dfa, seed),
                            bob_optimal(inst.dfa, inst.k), {Mover::bob, -1, -1, seed});
    };

    // The deciding pairing: the winner's fixpoint strategy against the
    // strongest opponent available.
    Transcript head = solved.winner == Winner::alice
                          ? simulate(inst.dfa, inst.k, alice_from_certificate(solved),
                                     bob_optimal(inst.dfa, inst.k))
                          : simulate(inst.dfa, inst.k, alice_greedy(inst.dfa),
                                     bob_optimal(inst.dfa, inst.k));
    bool head_ok = solved.winner == Winner::alice ? head.outcome == SimOutcome::alice_won
                                                  : head.outcome == SimOutcome::bob_survived;
    outcomes.add(head_ok, inst.name + " (deciding pair)");

    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      Transcript t = play(seed);
      bool expected = solved.winner == Winner::alice ? t.outcome == SimOutcome::alice_won
                                                     : t.outcome == SimOutcome::bob_survived;
      outcomes.add(expected, [&] { return inst.name + " seed=" + std::to_string(seed); });
      if (t.outcome == SimOutcome::bob_survived)
        horizons.add(t.alice_move_count() == win_horizon(inst.dfa.n) &&
                         t.horizon == win_horizon(inst.dfa.n),
                     [&] { return inst.name + " seed=" + std::to_string(seed); });
      if (seed <= 25) replays.add(replay_matches(inst.dfa, t), inst.name);
    }
    replays.add(play(424242).dump(inst.dfa) == play(424242).dump(inst.dfa),
                inst.name + " determinism");
  }

  out.bulk("10^3 seeded games per instance never contradict the solver", outcomes.total,
           outcomes.failures, outcomes.first);
  out.bulk("surviving-adversary transcripts run to the C(n,2)(n-2)+1 horizon", horizons.total,
           horizons.failures, horizons.first);
  out.bulk("transcripts replay deterministically", replays.total, replays.failures, replays.first);
  return out.take();
}

// ---- complexity smoke check ----

std::vector<CheckResult> run_scaling_smoke() {
  Checker out;
  auto time_decide = [](int n) {
    Dfa line = families::one_way_line(n);
    const int reps = 12;
    std::vector<double> samples;
    for (int s = 0; s < 5; ++s) {
      auto begin = std::chrono::steady_clock::now();
      for (int r = 0; r < reps; ++r) {
        GameOutcome o = decide_omega_sink(line);
        if (o.winner != Winner::alice) return -1.0;
      }
      samples.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[2];  // median of 5
  };
  const int base = 30000;
  time_decide(base);  // warm caches
  double small = time_decide(base);
  double big = time_decide(2 * base);
  bool subquadratic = small > 0 && big > 0 && big < 3.2 * small;
  std::ostringstream detail;
  detail << "t(" << base << ")=" << small << "s, t(" << 2 * base << ")=" << big
         << "s, ratio=" << (small > 0 ? big / small : -1.0);
  out.check("doubling n on one_way_line scales decide_omega_sink subquadratically", subquadratic,
            detail.str());
  return out.take();
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites{
      {"cerny-rt", "exact thresholds of the cerny series", run_cerny_rt},
      {"hierarchy", "strictness witnesses across game levels", run_hierarchy},
      {"theorem-main", "unbounded-game winners reset in under n letters", run_theorem_main},
      {"oracle-equivalence-n4", "solver vs brute force, exhaustive and random",
       run_oracle_equivalence},
      {"collapse", "level collapse at C(n,2), and at n-1 with a sink", run_collapse},
      {"l-series", "exact thresholds and levels of the l-series", run_l_series},
      {"iteration", "word-bounded alice via iterated automata", run_iteration},
      {"hamiltonian", "pair-automaton Hamiltonian words", run_hamiltonian},
      {"d-series", "top-of-hierarchy witnesses", run_d_series},
      {"simulation", "seeded games never contradict the solver", run_simulation},
      {"scaling-smoke", "sink decision stays near-linear", run_scaling_smoke},
  };
  return suites;
}

const Suite* find_suite(const std::string& name) {
  for (const auto& s : all_suites())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace suites
}  // namespace synchro
