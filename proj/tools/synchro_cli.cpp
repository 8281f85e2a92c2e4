// Command-line surface for the synchronization game toolkit.
//
// Exit codes: 0 success / Alice; 1 negative result (Bob, not synchronizing,
// failed verification); 2 usage or input errors; 3 size-cap refusals.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "synchro/dfa.hpp"
#include "synchro/families.hpp"
#include "synchro/game.hpp"
#include "synchro/oracle.hpp"
#include "synchro/potential.hpp"
#include "synchro/sim.hpp"
#include "synchro/suites.hpp"

namespace {

using namespace synchro;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dfa load_dfa(const std::string& path) { return parse_dfa(read_input(path)); }

KBound parse_kbound(const std::string& text) {
  if (text == "omega") return KBound::omega();
  try {
    std::size_t used = 0;
    long long k = std::stoll(text, &used);
    if (used == text.size() && k >= 1) return KBound::finite(k);
  } catch (const std::exception&) {
  }
  throw UsageError("-k expects a positive integer or 'omega', got '" + text + "'");
}

Word parse_cli_word(const Dfa& a, const std::string& text) {
  // Letter names separated by whitespace or commas; '-' is the empty word.
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  return parse_word(a, normalized);
}

AliceStrategy make_alice(const std::string& spec, const Dfa& a, const KBound& k,
                         std::uint64_t seed) {
  if (spec == "cert") {
    GameOutcome o = decide(a, k);
    if (o.winner == Winner::alice) return alice_from_certificate(o);
    std::cerr << "note: no winning certificate for alice here; falling back to greedy merging\n";
    return alice_greedy(a);
  }
  if (spec == "chi") {
    auto prof = std::make_shared<LevelProfile>(level_profile(a));
    if (!prof->all_finite)
      throw UsageError("--alice chi needs an automaton alice wins without word bounds");
    auto tree = std::make_shared<ComponentTree>(component_tree(*prof, a));
    return alice_characteristic(prof, tree);
  }
  if (spec == "greedy") return alice_greedy(a);
  if (spec == "random") return alice_random(a, seed);
  if (spec.rfind("word:", 0) == 0) {
    Word w = parse_cli_word(a, spec.substr(5));
    auto next = std::make_shared<std::size_t>(0);
    return [w, next](const Position&) -> int { return *next < w.size() ? w[(*next)++] : 0; };
  }
  throw UsageError("unknown alice strategy '" + spec + "'");
}

BobStrategy make_bob(const std::string& spec, const Dfa& a, const KBound& k, std::uint64_t seed) {
  if (spec == "optimal") return bob_optimal(a, k);
  if (spec == "random") return bob_random(a, k, seed);
  if (spec == "pass") return bob_pass();
  if (spec.rfind("echo:", 0) == 0) return bob_echo_power(std::stoll(spec.substr(5)));
  if (spec.rfind("word:", 0) == 0) return bob_fixed_word(parse_cli_word(a, spec.substr(5)));
  throw UsageError("unknown bob strategy '" + spec + "'");
}

std::string render_board(const StateSet& tokens) {
  std::string board;
  for (State q = 0; q < tokens.universe(); ++q) {
    board += std::to_string(q);
    board += tokens.test(q) ? "*" : " ";
    board += ' ';
  }
  if (!board.empty()) board.pop_back();
  return board;
}

// ---- subcommand bodies ----

int cmd_gen(const std::string& family, std::optional<int> n, std::optional<int> k,
            std::optional<int> m) {
  auto dfa = families::by_name(family, n, k, m);
  if (!dfa) throw UsageError("unknown family '" + family + "'");
  std::cout << serialize_dfa(*dfa);
  return kExitOk;
}

int cmd_decide(const std::string& file, const std::optional<std::string>& k_text,
               std::optional<int> m) {
  if (k_text.has_value() == m.has_value())
    throw UsageError("decide needs exactly one of -k <bound> or -m <words>");
  Dfa a = load_dfa(file);
  GameOutcome o = m ? decide_m_omega(a, *m) : decide(a, parse_kbound(*k_text));
  std::cout << "result: " << to_string(o.winner) << '\n';
  if (o.winner == Winner::bob && o.witness_pair)
    std::cout << "witness-pair: {" << (*o.witness_pair)[0] << "," << (*o.witness_pair)[1] << "}\n";
  return o.winner == Winner::alice ? kExitOk : kExitNegative;
}

int cmd_level(const std::string& file) {
  GameLevel lv = game_level(load_dfa(file));
  std::cout << "result: " << to_string(lv) << '\n';
  return lv.kind == GameLevel::Kind::not_synchronizing ? kExitNegative : kExitOk;
}

int cmd_rt(const std::string& file) {
  Dfa a = load_dfa(file);
  auto res = oracle::rt_exact(a);
  if (!res.synchronizing) {
    std::cout << "result: not-synchronizing\n";
    return kExitNegative;
  }
  std::cout << "result: " << res.rt << '\n';
  std::cout << "witness: " << format_word(a, res.witness) << '\n';
  return kExitOk;
}

int cmd_reset_word(const std::string& file, int m) {
  Dfa a = load_dfa(file);
  Word w = extract_reset_word(a, m);
  std::cout << "result: " << format_word(a, w) << '\n';
  return kExitOk;
}

int cmd_pairs(const std::string& file, bool legend) {
  Dfa a = load_dfa(file);
  PairAutomaton pa = two_subset(a);
  if (legend)
    for (int idx = 0; idx < pa.sink; ++idx) {
      auto [p, q] = pa.pair_of(idx);
      std::cerr << "pair " << idx << " = {" << p << "," << q << "}\n";
    }
  if (legend) std::cerr << "pair " << pa.sink << " = sink\n";
  std::cout << serialize_dfa(pa.dfa);
  return kExitOk;
}

int cmd_iterate(const std::string& file, int m) {
  std::cout << serialize_dfa(iterate(load_dfa(file), m));
  return kExitOk;
}

int cmd_export_dot(const std::string& file) {
  std::cout << export_dot(load_dfa(file));
  return kExitOk;
}

int cmd_simulate(const std::string& file, const std::string& k_text, const std::string& alice,
                 const std::string& bob, const std::string& first, std::uint64_t seed,
                 long long horizon) {
  Dfa a = load_dfa(file);
  KBound k = parse_kbound(k_text);
  SimOptions opt;
  if (first != "A" && first != "B") throw UsageError("--first expects A or B");
  opt.first = first == "A" ? Mover::alice : Mover::bob;
  opt.seed = seed;
  opt.horizon = horizon;
  Transcript t = simulate(a, k, make_alice(alice, a, k, seed), make_bob(bob, a, k, seed), opt);
  std::cout << t.dump(a);
  if (t.outcome == SimOutcome::aborted) return kExitUsage;
  return t.outcome == SimOutcome::alice_won ? kExitOk : kExitNegative;
}

Word prompt_human_word(const Dfa& a, const KBound& k, long long cap) {
  while (true) {
    std::cout << "bob> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw UsageError("input closed");
    try {
      Word w = parse_word(a, line);
      if (!k.is_omega() && static_cast<long long>(w.size()) >= k.k()) {
        std::cout << "words must be shorter than " << k.k() << " letters here; try again\n";
        continue;
      }
      if (static_cast<long long>(w.size()) > cap) {
        std::cout << "that exceeds the word cap of " << cap << "; try again\n";
        continue;
      }
      return w;
    } catch (const std::invalid_argument& e) {
      std::cout << e.what() << "; try again ('-' passes)\n";
    }
  }
}

int prompt_human_letter(const Dfa& a) {
  while (true) {
    std::cout << "alice> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw UsageError("input closed");
    std::istringstream in(line);
    std::string name;
    in >> name;
    std::string extra;
    if (in >> extra) {
      std::cout << "alice plays exactly one letter per turn; try again\n";
      continue;
    }
    int x = name.empty() ? -1 : a.letter_index(name);
    if (x < 0) {
      std::cout << "unknown letter '" << name << "'; try again\n";
      continue;
    }
    return x;
  }
}

int cmd_play(const std::string& file, const std::string& k_text, const std::string& side,
             const std::string& opponent, std::uint64_t seed,
             const std::optional<std::string>& transcript_path) {
  Dfa a = load_dfa(file);
  KBound k = parse_kbound(k_text);
  if (side != "alice" && side != "bob") throw UsageError("--side expects alice or bob");
  const bool human_is_alice = side == "alice";

  std::string machine_spec = opponent;
  if (machine_spec.rfind("scripted:", 0) == 0) machine_spec = machine_spec.substr(9);
  AliceStrategy machine_alice;
  BobStrategy machine_bob;
  if (human_is_alice) {
    if (machine_spec == "pass")
      machine_bob = bob_pass();
    else
      machine_bob = make_bob(machine_spec, a, k, seed);
  } else {
    if (machine_spec == "pass") {
      std::cerr << "note: alice cannot pass; the opponent plays greedily instead\n";
      machine_spec = "greedy";
    }
    if (machine_spec == "optimal") machine_spec = "cert";
    machine_alice = make_alice(machine_spec, a, k, seed);
  }

  const long long horizon = win_horizon(a.n);
  const long long bob_cap =
      k.is_omega() ? static_cast<long long>(a.n) * a.n * (a.n - 1) / 2 : k.k() - 1;
  std::cout << "game k=" << to_string(k) << " on " << a.n << " states; you are " << side
            << ", seed " << seed << ", horizon " << horizon << " alice moves\n";
  std::cout << "letters:";
  for (const auto& name : a.letters) std::cout << ' ' << name;
  std::cout << "\nboard: " << render_board(StateSet::full(a.n)) << "\n";

  Transcript t;
  t.k = k;
  t.first = Mover::bob;
  t.seed = seed;
  t.horizon = horizon;
  Position pos{StateSet::full(a.n), Mover::bob, {}};
  long long alice_moves = 0;

  while (true) {
    if (pos.tokens.is_singleton()) {
      t.outcome = SimOutcome::alice_won;
      t.win_move = static_cast<int>(t.moves.size());
      std::cout << "alice wins: the history is a reset word\n";
      break;
    }
    if (pos.to_move == Mover::alice && alice_moves == horizon) {
      t.outcome = SimOutcome::bob_survived;
      std::cout << "bob survives the horizon\n";
      break;
    }

    Word word;
    if (pos.to_move == Mover::alice) {
      word = {human_is_alice ? prompt_human_letter(a) : machine_alice(pos)};
      ++alice_moves;
      if (!human_is_alice) std::cout << "alice plays " << format_word(a, word) << '\n';
    } else {
      word = human_is_alice ? machine_bob(pos) : prompt_human_word(a, k, bob_cap);
      if ((!k.is_omega() && static_cast<long long>(word.size()) >= k.k()) ||
          static_cast<long long>(word.size()) > bob_cap) {
        std::cout << "bob's move was too long and counts as a pass\n";
        word.clear();
      }
      if (human_is_alice)
        std::cout << (word.empty() ? std::string("bob passes")
                                   : "bob plays " + format_word(a, word))
                  << '\n';
    }
    pos.tokens = apply_set(a, pos.tokens, word);
    pos.history.insert(pos.history.end(), word.begin(), word.end());
    t.moves.push_back({pos.to_move, word, pos.tokens});
    std::cout << "board: " << render_board(pos.tokens) << "\n";
    pos.to_move = pos.to_move == Mover::alice ? Mover::bob : Mover::alice;
  }

  if (transcript_path) {
    std::ofstream out(*transcript_path);
    out << t.dump(a);
    std::cout << "transcript written to " << *transcript_path << '\n';
  }
  return t.outcome == SimOutcome::alice_won ? kExitOk : kExitNegative;
}

int cmd_verify(const std::optional<std::string>& suite_name, bool list) {
  if (list) {
    for (const auto& s : suites::all_suites()) std::cout << s.name << ": " << s.summary << '\n';
    return kExitOk;
  }
  if (!suite_name) throw UsageError("verify needs --suite <name> or --list");

  std::vector<const suites::Suite*> to_run;
  if (*suite_name == "all") {
    for (const auto& s : suites::all_suites()) to_run.push_back(&s);
  } else {
    const suites::Suite* s = suites::find_suite(*suite_name);
    if (!s) throw UsageError("unknown suite '" + *suite_name + "' (see verify --list)");
    to_run.push_back(s);
  }

  bool all_pass = true;
  for (const auto* s : to_run) {
    std::cout << "suite " << s->name << '\n';
    for (const auto& r : s->run()) {
      all_pass &= r.pass;
      std::printf("  %s  %-70s %8.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                  r.detail.c_str());
    }
  }
  std::cout << "result: " << (all_pass ? "pass" : "fail") << '\n';
  return all_pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchro: decide, certify, and play adversarial synchronization games on DFAs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a named automaton family");
  std::string gen_family;
  std::optional<int> gen_n, gen_k, gen_m;
  gen->add_option("family", gen_family,
                  "cerny|e_series|b2|flower|l_series|rystsov|d_series|d_series_k|"
                  "one_way_line|two_way_line")
      ->required();
  gen->add_option("--n", gen_n, "state count");
  gen->add_option("--k", gen_k, "family parameter k");
  gen->add_option("--m", gen_m, "family parameter m");

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "decide the winner of a game");
  std::optional<std::string> decide_k_text;
  std::optional<int> decide_m;
  std::string decide_file;
  decide_cmd->add_option("-k", decide_k_text, "bob's word bound: integer >= 1 or 'omega'");
  decide_cmd->add_option("-m", decide_m,
                         "alice plays words of length <= m against an unbounded bob");
  decide_cmd->add_option("file", decide_file, "automaton file, or - for stdin")->required();

  // level
  auto* level_cmd = app.add_subcommand("level", "largest game bound alice wins");
  std::string level_file;
  level_cmd->add_option("file", level_file)->required();

  // rt
  auto* rt_cmd = app.add_subcommand("rt", "exact reset threshold with a shortest witness");
  std::string rt_file;
  rt_cmd->add_option("file", rt_file)->required();

  // reset-word
  auto* rw_cmd = app.add_subcommand("reset-word", "reset word from the avoidance strategy");
  std::string rw_file;
  int rw_m = 1;
  rw_cmd->add_option("--m", rw_m, "alice's word length bound (default 1)");
  rw_cmd->add_option("file", rw_file)->required();

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "emit the 2-subset automaton");
  std::string pairs_file;
  bool pairs_legend = false;
  pairs_cmd->add_flag("--legend", pairs_legend, "print the pair/index mapping to stderr");
  pairs_cmd->add_option("file", pairs_file)->required();

  // iterate
  auto* it_cmd = app.add_subcommand("iterate", "emit the m-th iteration automaton");
  std::string it_file;
  int it_m = 1;
  it_cmd->add_option("--m", it_m, "iteration order")->required();
  it_cmd->add_option("file", it_file)->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run one game and print the transcript");
  std::string sim_file, sim_k, sim_alice = "cert", sim_bob = "optimal", sim_first = "B";
  std::uint64_t sim_seed = 0;
  long long sim_horizon = -1;
  sim_cmd->add_option("-k", sim_k, "integer >= 1 or 'omega'")->required();
  sim_cmd->add_option("--alice", sim_alice, "cert|chi|greedy|random|word:<letters>");
  sim_cmd->add_option("--bob", sim_bob, "optimal|random|pass|echo:<k>|word:<letters>");
  sim_cmd->add_option("--first", sim_first, "who moves first: A or B (default B)");
  sim_cmd->add_option("--seed", sim_seed, "seed for random strategies");
  sim_cmd->add_option("--horizon", sim_horizon, "alice-move budget (default C(n,2)(n-2)+1)");
  sim_cmd->add_option("file", sim_file)->required();

  // play
  auto* play_cmd = app.add_subcommand("play", "play interactively against the machine");
  std::string play_file, play_k, play_side, play_opponent = "optimal";
  std::uint64_t play_seed = 0;
  std::optional<std::string> play_transcript;
  play_cmd->add_option("-k", play_k, "integer >= 1 or 'omega'")->required();
  play_cmd->add_option("--side", play_side, "your side: alice or bob")->required();
  play_cmd->add_option("--opponent", play_opponent,
                       "optimal|random|pass|scripted:echo:<k>|scripted:word:<letters>");
  play_cmd->add_option("--seed", play_seed, "seed for random opponents");
  play_cmd->add_option("--transcript", play_transcript, "write the finished game to a file");
  play_cmd->add_option("file", play_file)->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::optional<std::string> verify_suite;
  bool verify_list = false;
  verify_cmd->add_option("--suite", verify_suite, "suite name, or 'all'");
  verify_cmd->add_flag("--list", verify_list, "list available suites");

  // export-dot
  auto* dot_cmd = app.add_subcommand("export-dot", "emit a graphviz digraph");
  std::string dot_file;
  dot_cmd->add_option("file", dot_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_family, gen_n, gen_k, gen_m);
    if (decide_cmd->parsed()) return cmd_decide(decide_file, decide_k_text, decide_m);
    if (level_cmd->parsed()) return cmd_level(level_file);
    if (rt_cmd->parsed()) return cmd_rt(rt_file);
    if (rw_cmd->parsed()) return cmd_reset_word(rw_file, rw_m);
    if (pairs_cmd->parsed()) return cmd_pairs(pairs_file, pairs_legend);
    if (it_cmd->parsed()) return cmd_iterate(it_file, it_m);
    if (sim_cmd->parsed())
      return cmd_simulate(sim_file, sim_k, sim_alice, sim_bob, sim_first, sim_seed, sim_horizon);
    if (play_cmd->parsed())
      return cmd_play(play_file, play_k, play_side, play_opponent, play_seed, play_transcript);
    if (verify_cmd->parsed()) return cmd_verify(verify_suite, verify_list);
    if (dot_cmd->parsed()) return cmd_export_dot(dot_file);
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.col << ": " << e.what()
              << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
