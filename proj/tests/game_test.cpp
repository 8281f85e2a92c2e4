#include "synchro/game.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "synchro/families.hpp"
#include "synchro/oracle.hpp"
#include "synchro/rng.hpp"

using namespace synchro;
using namespace synchro::test;

TEST_CASE("decide_omega_sink criterion") {
  for (int n = 3; n <= 8; ++n)
    CHECK(decide_omega_sink(families::one_way_line(n)).winner == Winner::alice);

  GameOutcome l23 = decide_omega_sink(families::l_series(3, 2));
  CHECK(l23.winner == Winner::bob);
  CHECK(l23.witness->kind == BobWitness::Kind::trapped);
  CHECK(l23.witness->state == 4);  // every letter keeps 4 inside its component

  Dfa two_sinks;
  two_sinks.n = 3;
  two_sinks.letters = {"a"};
  two_sinks.table = {0, 1, 0};
  GameOutcome o = decide_omega_sink(two_sinks);
  CHECK(o.winner == Winner::bob);
  CHECK(o.witness->kind == BobWitness::Kind::extra_sink);

  Dfa no_sink = families::cerny(3);
  CHECK_THROWS_AS(decide_omega_sink(no_sink), std::invalid_argument);
}

TEST_CASE("decide_omega examples") {
  CHECK(decide_omega(families::b2()).winner == Winner::alice);
  CHECK(decide_omega(families::two_way_line(4)).winner == Winner::bob);
  for (int n = 3; n <= 6; ++n) CHECK(decide_omega(families::e_series(n)).winner == Winner::bob);
  GameOutcome b2o = decide_omega(families::b2());
  CHECK(b2o.certificate.has_value());
  CHECK(b2o.certificate->complete());
  CHECK(b2o.certificate->round[b2o.pairs->sink] == 0);
}

TEST_CASE("decide_k_sink follows the marking trace") {
  Dfa l = families::l_series(3, 2);

  GameOutcome win = decide_k_sink(l, 3);
  CHECK(win.winner == Winner::alice);
  REQUIRE(win.certificate.has_value());
  const auto& round = win.certificate->round;
  CHECK(round == std::vector<int>{0, 1, 2, 3, 3, 3});

  GameOutcome lose = decide_k_sink(l, 4);
  CHECK(lose.winner == Winner::bob);
  CHECK(lose.witness->kind == BobWitness::Kind::escapes);
  CHECK(lose.witness->state == 4);
  CHECK(lose.witness->final_p == set_of(6, {0, 1, 2, 3}));  // stops at the first marking round
}

TEST_CASE("k=1 with a sink is reachability") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Dfa a = oracle::random_dfa(5, 2, rng);
    for (int x = 0; x < a.m(); ++x) a.act(0, x) = 0;  // force a sink
    bool alice = decide_k_sink(a, 1).winner == Winner::alice;
    CHECK(alice == is_synchronizing(a));
  }
}

TEST_CASE("decide_k separations") {
  for (int n = 3; n <= 6; ++n) {
    CHECK(decide_k(families::cerny(n), 1).winner == Winner::alice);
    CHECK(decide_k(families::cerny(n), 2).winner == Winner::bob);
  }
  CHECK(decide_k(families::e_series(4), 3).winner == Winner::alice);
  CHECK(decide_k(families::e_series(4), 4).winner == Winner::bob);
  CHECK(decide_k(families::d_series(5), 9).winner == Winner::alice);
  CHECK(decide_k(families::d_series(5), 10).winner == Winner::bob);
}

TEST_CASE("bob witness decodes to a pair") {
  GameOutcome o = decide_k(families::cerny(4), 2);
  REQUIRE(o.winner == Winner::bob);
  REQUIRE(o.witness_pair.has_value());
  auto [p, q] = *o.witness_pair;
  CHECK(p != q);
  CHECK(o.pairs->pair_index(p, q) == o.witness->state);
}

TEST_CASE("game_level on the witness families") {
  for (int n = 3; n <= 6; ++n) {
    GameLevel lv = game_level(families::e_series(n));
    CHECK(lv.kind == GameLevel::Kind::finite);
    CHECK(lv.k == n - 1);
  }
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 2; ++m) {
      GameLevel lv = game_level(families::l_series(k, m));
      CHECK(lv.kind == GameLevel::Kind::finite);
      CHECK(lv.k == k);
    }
  CHECK(game_level(families::one_way_line(5)).kind == GameLevel::Kind::omega);
  CHECK(game_level(families::b2()).kind == GameLevel::Kind::omega);

  Dfa perm;
  perm.n = 3;
  perm.letters = {"a"};
  perm.table = {1, 2, 0};
  CHECK(game_level(perm).kind == GameLevel::Kind::not_synchronizing);
}

TEST_CASE("iterated game winners") {
  CHECK(decide_m_omega(families::flower(5), 2).winner == Winner::alice);
  CHECK(decide_m_omega(families::flower(5), 1).winner == Winner::bob);
  CHECK(decide_m_omega(families::cerny(4), 6).winner == Winner::alice);
  CHECK(decide_m_omega(families::cerny(4), 5).winner == Winner::bob);
}

TEST_CASE("monotonicity in k on random automata") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    Dfa a = oracle::random_dfa(4, 2, rng);
    bool prev = decide_k(a, 1).winner == Winner::alice;
    CHECK(prev == is_synchronizing(a));
    for (long long k = 2; k <= 7; ++k) {
      bool cur = decide_k(a, k).winner == Winner::alice;
      CHECK((!cur || prev));  // winning at k+1 implies winning at k
      prev = cur;
    }
  }
}

TEST_CASE("sink marking agrees with the pair fixpoint on random sink automata") {
  SplitMix64 rng(113);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 4 + static_cast<int>(rng.below(3));
    Dfa a = oracle::random_dfa(n, 2, rng);
    for (int x = 0; x < a.m(); ++x) a.act(0, x) = 0;
    for (long long k = 1; k <= 6; ++k) {
      Winner direct = decide_k_sink(a, k).winner;
      Winner via_pairs = decide_k(a, k).winner;
      Winner brute = oracle::decide_k_bruteforce(a, KBound::finite(k));
      CHECK(direct == brute);
      CHECK(via_pairs == brute);
    }
    CHECK(decide_omega_sink(a).winner == oracle::decide_k_bruteforce(a, KBound::omega()));
  }
}

TEST_CASE("d_series_k levels across the whole range") {
  for (int k = 6; k <= 13; ++k) {
    GameLevel lv = game_level(families::d_series_k(6, k));
    CHECK(lv.kind == GameLevel::Kind::finite);
    CHECK(lv.k == k);
  }
}

TEST_CASE("sink automata collapse at n-1") {
  SplitMix64 rng(97);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4 + static_cast<int>(rng.below(3));
    Dfa a = oracle::random_dfa(n, 2, rng);
    for (int x = 0; x < a.m(); ++x) a.act(0, x) = 0;
    bool at_nm1 = decide_k_sink(a, n - 1).winner == Winner::alice;
    bool at_omega = decide_omega_sink(a).winner == Winner::alice;
    CHECK(at_nm1 == at_omega);
  }
}

TEST_CASE("win horizon formula") {
  CHECK(win_horizon(2) == 1);
  CHECK(win_horizon(5) == 31);
  CHECK(win_horizon(4) == 13);
}
