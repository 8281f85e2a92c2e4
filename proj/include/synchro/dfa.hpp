#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synchro {

using State = int;

/// A word is a sequence of letter indices; the empty vector is the empty word.
using Word = std::vector<int>;

/// Refusal limits. Both are deliberate desk-scale guards, overridable per call.
inline constexpr int kMaxStates = 1 << 16;
inline constexpr std::size_t kMaxIterationLetters = 1'000'000;

/// Thrown when an operation would exceed a configured size limit.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in the DFA text format, with 1-based source position.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

/// Fixed-width set of states, sized to one automaton (or one pair automaton).
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

  static StateSet full(int n) {
    StateSet s(n);
    for (State q = 0; q < n; ++q) s.set(q);
    return s;
  }
  static StateSet single(int n, State q) {
    StateSet s(n);
    s.set(q);
    return s;
  }

  int universe() const { return n_; }
  bool test(State q) const { return (bits_[q >> 6] >> (q & 63)) & 1; }
  void set(State q) { bits_[q >> 6] |= std::uint64_t{1} << (q & 63); }
  void reset(State q) { bits_[q >> 6] &= ~(std::uint64_t{1} << (q & 63)); }

  int count() const;
  bool empty() const;
  bool is_singleton() const { return count() == 1; }
  /// Lowest member, or -1 when empty.
  State first() const;
  /// All members in ascending order.
  std::vector<State> elements() const;

  bool contains(const StateSet& other) const;  // superset test

  StateSet& operator|=(const StateSet& o);
  StateSet& operator&=(const StateSet& o);
  StateSet& subtract(const StateSet& o);
  StateSet complement() const;

  bool operator==(const StateSet&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Complete deterministic finite automaton: dense states 0..n-1, named
/// letters, total transition table.
struct Dfa {
  int n = 0;
  std::vector<std::string> letters;
  std::vector<State> table;  // row-major: table[q * letters.size() + a]

  int m() const { return static_cast<int>(letters.size()); }
  State act(State q, int a) const { return table[static_cast<std::size_t>(q) * letters.size() + a]; }
  State& act(State q, int a) { return table[static_cast<std::size_t>(q) * letters.size() + a]; }

  /// Index of a letter name, or -1.
  int letter_index(std::string_view name) const;

  /// Validates totality, letter uniqueness, and index ranges; throws
  /// std::invalid_argument on violation.
  void check() const;
};

/// Bob's word-length budget: a finite k >= 1 (words of length < k) or omega.
struct KBound {
  static KBound finite(long long k);
  static KBound omega() { return KBound{0, true}; }

  bool is_omega() const { return omega_; }
  long long k() const { return k_; }

  bool operator==(const KBound&) const = default;

  long long k_ = 1;
  bool omega_ = false;
};

std::string to_string(const KBound&);

// ---- word actions ----

State apply(const Dfa& a, State q, const Word& w);
StateSet apply_set(const Dfa& a, const StateSet& p, const Word& w);

/// All states with a one-letter edge into f.
StateSet preimage(const Dfa& a, const StateSet& f);

/// BFS ball of radius `depth` around q (including q); saturates once a layer
/// adds nothing, so any depth >= n-1 yields the full forward closure.
StateSet reach_within(const Dfa& a, State q, long long depth);

// ---- graph structure ----

struct SccResult {
  int count = 0;
  /// comp[q] is the component id of q. Ids are assigned in reverse
  /// topological order of the condensation: every edge of the automaton ends
  /// in a component with an equal or smaller id.
  std::vector<int> comp;
};
SccResult sccs(const Dfa& a);

// ---- derived automata ----

/// The 2-subset automaton: one state per unordered pair {p,q}, p != q, plus a
/// sink absorbing merged pairs. Shares the base automaton's reset words.
struct PairAutomaton {
  Dfa base;
  Dfa dfa;  // C(n,2)+1 states over the same letters; the last one is the sink
  State sink = 0;

  int pair_index(State p, State q) const;
  std::pair<State, State> pair_of(int idx) const;
};
PairAutomaton two_subset(const Dfa& a);

/// The m-th iteration: same states, one derived letter per nonempty word of
/// length <= m over the base alphabet, acting by composition. Derived letters
/// are ordered by length, then lexicographically by base letter index, and
/// named by joining base names with '.'.
Dfa iterate(const Dfa& a, int m, std::size_t letter_cap = kMaxIterationLetters);

/// Base word spelled by the derived letter `index` of any iteration of an
/// automaton with `base_letters` letters (inverse of the iteration order).
Word iterated_letter_word(int base_letters, std::size_t index);

/// True iff every pair state of the 2-subset automaton can reach its sink.
bool is_synchronizing(const Dfa& a);

/// Some reset word, built by greedily merging the two lowest live states via
/// shortest pair-automaton paths. Throws std::invalid_argument when the
/// automaton is not synchronizing.
Word synthesize_reset_word(const Dfa& a);

// ---- text formats ----

Dfa parse_dfa(std::string_view text, int max_states = kMaxStates);
std::string serialize_dfa(const Dfa& a);
std::string export_dot(const Dfa& a);

/// Letter names joined by single spaces; "-" for the empty word.
std::string format_word(const Dfa& a, const Word& w);
/// Parses whitespace-separated letter names; "-" (alone) is the empty word.
/// Throws std::invalid_argument on unknown names.
Word parse_word(const Dfa& a, std::string_view text);

std::string format_state_set(const StateSet& s);

}  // namespace synchro
