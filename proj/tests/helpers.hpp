#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "synchro/dfa.hpp"

namespace synchro::test {

inline std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(SYNCHRO_GOLDEN_DIR) + "/" + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// Word from one-character letter names, e.g. "abba" on a two-letter automaton.
inline Word word_of(const Dfa& a, std::string_view chars) {
  Word w;
  for (char c : chars) {
    int x = a.letter_index(std::string(1, c));
    if (x < 0) throw std::invalid_argument("word_of: unknown letter");
    w.push_back(x);
  }
  return w;
}

inline StateSet set_of(int n, std::initializer_list<State> states) {
  StateSet s(n);
  for (State q : states) s.set(q);
  return s;
}

}  // namespace synchro::test
