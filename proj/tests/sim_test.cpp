#include "synchro/sim.hpp"

#include <memory>

#include "doctest.h"
#include "helpers.hpp"
#include "synchro/families.hpp"
#include "synchro/oracle.hpp"

using namespace synchro;
using namespace synchro::test;

namespace {

AliceStrategy alice_scripted(Word moves) {
  auto next = std::make_shared<std::size_t>(0);
  return [moves = std::move(moves), next](const Position&) -> int {
    return *next < moves.size() ? moves[(*next)++] : 0;
  };
}

}  // namespace

TEST_CASE("scripted game on cerny(5) with a passing bob") {
  Dfa c5 = families::cerny(5);
  Word script = word_of(c5, "abbbbabbbbabbbba");
  Transcript t = simulate(c5, KBound::finite(1), alice_scripted(script), bob_pass(),
                          {Mover::bob, 40, -1, 0});
  CHECK(t.outcome == SimOutcome::alice_won);
  int history = 0;
  for (const auto& mv : t.moves) history += static_cast<int>(mv.word.size());
  CHECK(history == 16);
  CHECK(t.alice_move_count() == 16);
  CHECK(replay_matches(c5, t));
}

TEST_CASE("e_series survives on the wrap cycle") {
  const int n = 5;
  Dfa e = families::e_series(n);
  Word cycle(n - 1, e.letter_index("b"));
  Transcript t = simulate(e, KBound::finite(n), alice_scripted(word_of(e, "cbdcbdcbdcbd")),
                          bob_fixed_word(cycle), {Mover::bob, 12, -1, 0});
  CHECK(t.outcome == SimOutcome::bob_survived);
  for (const auto& mv : t.moves)
    if (mv.mover == Mover::bob) {
      CHECK(mv.after.test(0));
      CHECK(mv.after.test(n - 1));
    }
}

TEST_CASE("certificate alice beats the oracle adversary") {
  struct Case {
    Dfa dfa;
    long long k;
  };
  std::vector<Case> cases{{families::l_series(3, 2), 3},
                          {families::e_series(5), 4},
                          {families::e_series(4), 3},
                          {families::cerny(4), 1}};
  for (const auto& c : cases) {
    GameOutcome o = decide_k(c.dfa, c.k);
    REQUIRE(o.winner == Winner::alice);
    Transcript t = simulate(c.dfa, KBound::finite(c.k), alice_from_certificate(o),
                            oracle::bob_oracle(c.dfa, KBound::finite(c.k)));
    CHECK(t.outcome == SimOutcome::alice_won);
    CHECK(replay_matches(c.dfa, t));
  }
}

TEST_CASE("certificate alice wins the unbounded game too") {
  for (const Dfa& a : {families::b2(), families::one_way_line(5)}) {
    GameOutcome o = decide_omega(a);
    REQUIRE(o.winner == Winner::alice);
    Transcript t =
        simulate(a, KBound::omega(), alice_from_certificate(o), oracle::bob_oracle(a, KBound::omega()));
    CHECK(t.outcome == SimOutcome::alice_won);
  }
}

TEST_CASE("characteristic alice wins within n-1 moves") {
  Dfa b = families::b2();
  auto prof = std::make_shared<LevelProfile>(level_profile(b));
  auto tree = std::make_shared<ComponentTree>(component_tree(*prof, b));
  Transcript t = simulate(b, KBound::omega(), alice_characteristic(prof, tree),
                          oracle::bob_oracle(b, KBound::omega()));
  CHECK(t.outcome == SimOutcome::alice_won);
  CHECK(t.alice_move_count() <= 2);

  for (int n = 3; n <= 7; ++n) {
    Dfa line = families::one_way_line(n);
    auto p2 = std::make_shared<LevelProfile>(level_profile(line));
    auto t2 = std::make_shared<ComponentTree>(component_tree(*p2, line));
    Transcript passing = simulate(line, KBound::omega(), alice_characteristic(p2, t2), bob_pass());
    CHECK(passing.outcome == SimOutcome::alice_won);
    CHECK(passing.alice_move_count() == n - 1);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      Transcript random = simulate(line, KBound::omega(), alice_characteristic(p2, t2),
                                   bob_random(line, KBound::omega(), seed), {Mover::bob, -1, -1, seed});
      CHECK(random.outcome == SimOutcome::alice_won);
      CHECK(random.alice_move_count() <= n - 1);
    }
  }
}

TEST_CASE("characteristic play descends through distinct characteristics") {
  Dfa a = families::one_way_line(6);
  auto prof = std::make_shared<LevelProfile>(level_profile(a));
  auto tree = std::make_shared<ComponentTree>(component_tree(*prof, a));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Transcript t = simulate(a, KBound::omega(), alice_characteristic(prof, tree),
                            bob_random(a, KBound::omega(), seed));
    REQUIRE(t.outcome == SimOutcome::alice_won);
    // Characteristics of the positions Alice answered are pairwise distinct.
    std::vector<Characteristic> seen;
    StateSet tokens = StateSet::full(a.n);
    for (const auto& mv : t.moves) {
      if (mv.mover == Mover::alice && tokens.count() > 1) {
        Characteristic chi = characteristic(*tree, *prof, tokens);
        for (const auto& old : seen) CHECK(!(old == chi));
        seen.push_back(chi);
      }
      tokens = mv.after;
    }
  }
}

TEST_CASE("optimal bob survives the horizon when he wins") {
  struct Case {
    Dfa dfa;
    KBound k;
  };
  std::vector<Case> cases{{families::cerny(4), KBound::finite(2)},
                          {families::cerny(5), KBound::finite(2)},
                          {families::e_series(4), KBound::finite(4)},
                          {families::two_way_line(4), KBound::finite(2)},
                          {families::l_series(2, 2), KBound::finite(3)},
                          {families::two_way_line(5), KBound::omega()},
                          {families::d_series(5), KBound::finite(10)}};
  for (const auto& c : cases) {
    REQUIRE(decide(c.dfa, c.k).winner == Winner::bob);
    BobStrategy bob = bob_optimal(c.dfa, c.k);
    Transcript greedy = simulate(c.dfa, c.k, alice_greedy(c.dfa), bob_optimal(c.dfa, c.k));
    CHECK(greedy.outcome == SimOutcome::bob_survived);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Transcript t = simulate(c.dfa, c.k, alice_random(c.dfa, seed), bob_optimal(c.dfa, c.k),
                              {Mover::bob, -1, -1, seed});
      CHECK(t.outcome == SimOutcome::bob_survived);
      CHECK(replay_matches(c.dfa, t));
    }
  }
}

TEST_CASE("echo bob pins the last state of l_series") {
  const int k = 2, m = 2;
  Dfa l = families::l_series(k, m);
  const int n = k + m + 1;
  Transcript t = simulate(l, KBound::finite(k + 1), alice_greedy(l), bob_echo_power(k),
                          {Mover::alice, 20, -1, 0});
  CHECK(t.outcome == SimOutcome::bob_survived);
  for (const auto& mv : t.moves)
    if (mv.mover == Mover::bob) CHECK(mv.after.test(n - 1));
}

TEST_CASE("pass bob turns the game into reset-word construction") {
  Dfa c4 = families::cerny(4);
  GameOutcome o = decide_k(c4, 1);
  Transcript t = simulate(c4, KBound::finite(1), alice_from_certificate(o), bob_pass());
  CHECK(t.outcome == SimOutcome::alice_won);
  Word history;
  for (const auto& mv : t.moves) history.insert(history.end(), mv.word.begin(), mv.word.end());
  CHECK(apply_set(c4, StateSet::full(4), history).is_singleton());
}

TEST_CASE("transcripts replay byte-identically") {
  Dfa e = families::e_series(4);
  auto run = [&](std::uint64_t seed) {
    GameOutcome o = decide_k(e, 3);
    Transcript t = simulate(e, KBound::finite(3), alice_from_certificate(o),
                            bob_random(e, KBound::finite(3), seed), {Mover::bob, -1, -1, seed});
    return t.dump(e);
  };
  CHECK(run(99) == run(99));
  CHECK(run(99) != run(100));
}

TEST_CASE("transcript format") {
  Dfa b = families::b2();
  GameOutcome o = decide_omega(b);
  Transcript t = simulate(b, KBound::omega(), alice_from_certificate(o), bob_pass(),
                          {Mover::bob, -1, -1, 7});
  std::string dump = t.dump(b);
  CHECK(dump.find("game k=omega first=B seed=7\n") == 0);
  CHECK(dump.find("B - -> {0,1,2}\n") != std::string::npos);
  CHECK(dump.find("winner alice@") != std::string::npos);

  Transcript survived = simulate(families::cerny(4), KBound::finite(2),
                                 alice_greedy(families::cerny(4)),
                                 bob_optimal(families::cerny(4), KBound::finite(2)));
  CHECK(survived.outcome == SimOutcome::bob_survived);
  CHECK(survived.dump(families::cerny(4)).find("winner bob@13") != std::string::npos);
}

TEST_CASE("illegal moves abort with the offending move recorded") {
  Dfa c4 = families::cerny(4);
  Transcript t = simulate(c4, KBound::finite(2), alice_greedy(c4), bob_fixed_word({0, 0, 0}));
  CHECK(t.outcome == SimOutcome::aborted);
  CHECK(t.abort_reason.find("length 3") != std::string::npos);
  CHECK(t.moves.back().word.size() == 3);

  Transcript t2 = simulate(c4, KBound::finite(2), alice_scripted({5}), bob_pass(),
                           {Mover::alice, -1, -1, 0});
  CHECK(t2.outcome == SimOutcome::aborted);
}

TEST_CASE("bob word legality bound in the unbounded game") {
  Dfa b = families::b2();
  // n * C(n,2) = 3 * 3 = 9 is the default cap for unbounded words.
  Transcript t = simulate(b, KBound::omega(), alice_greedy(b), bob_fixed_word(Word(10, 0)));
  CHECK(t.outcome == SimOutcome::aborted);
  Transcript ok = simulate(b, KBound::omega(), alice_greedy(b), bob_fixed_word(Word(9, 1)),
                           {Mover::bob, 5, -1, 0});
  CHECK(ok.outcome != SimOutcome::aborted);
}
