#pragma once

#include <optional>
#include <string>

#include "synchro/dfa.hpp"

namespace synchro {
namespace families {

/// Slowest-synchronizing classics: letters a (0 -> 1, fixes the rest) and
/// b (the full cycle). Reset threshold (n-1)^2.
Dfa cerny(int n);

/// Three-letter witnesses separating the finite game levels n-1 and n.
/// Letters b (cycle), c (everything except 0 to 1), d (only n-1 to 1,
/// the rest to 0).
Dfa e_series(int n);

/// Three states, two letters; Alice wins the unbounded game although the
/// transition monoid is irregular. aa is a constant map.
Dfa b2();

/// Petals 2..n-1 swapped with the center 1 by their own letter; a_1 drops
/// the center to 0. Reset threshold 2n-3.
Dfa flower(int n);

/// Sink automaton over k+m+1 states: a_1..a_k send their own state to the
/// sink 0, a_{k+j} cyclically shifts the window j..k+j. Alice wins exactly
/// the games with Bob bounded below k+1.
Dfa l_series(int k, int m);

/// l_series(1, n-2): the classic sink automaton with reset threshold C(n,2).
Dfa rystsov(int n);

/// cerny(n) plus letters c (collapse to {0,1}) and d (pick out ceil(n/2)):
/// Alice wins with Bob bounded by C(n,2)-1 but loses one step higher.
Dfa d_series(int n);

/// cerny(n) plus c_k/d_k built from the pair {0,1} driven k steps along the
/// forward Hamiltonian word; d_series_k(n, C(n,2)-1) == d_series(n).
/// Requires n <= k <= C(n,2)-1.
Dfa d_series_k(int n, int k);

/// Single letter walking every state down to the absorbing 0.
Dfa one_way_line(int n);

/// Letters a and b walk in opposite directions between the absorbing ends.
Dfa two_way_line(int n);

/// Word over {a,b} driving {0,1} along a Hamiltonian path through all pair
/// states of cerny(n)'s 2-subset automaton; length C(n,2)-1.
Word w_forward(int n);

/// w_forward read backwards with a appended: drives w_backward_start(n)
/// through every pair state and into the sink; length C(n,2).
Word w_backward(int n);

/// Start pair of the backward Hamiltonian path: {1, floor(n/2)+1}.
std::pair<State, State> w_backward_start(int n);

/// Generator lookup for the CLI: name in {cerny, e_series, b2, flower,
/// l_series, rystsov, d_series, d_series_k, one_way_line, two_way_line}.
/// Unused parameters must be left unset. Returns nothing for unknown names.
std::optional<Dfa> by_name(const std::string& name, std::optional<int> n,
                           std::optional<int> k, std::optional<int> m);

}  // namespace families
}  // namespace synchro
