#include "synchro/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace synchro {
namespace families {

namespace {

Dfa blank(int n, std::vector<std::string> letters) {
  Dfa a;
  a.n = n;
  a.letters = std::move(letters);
  a.table.assign(static_cast<std::size_t>(n) * a.letters.size(), 0);
  return a;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Dfa cerny(int n) {
  require(n >= 2, "cerny: n >= 2");
  Dfa a = blank(n, {"a", "b"});
  for (State q = 0; q < n; ++q) {
    a.act(q, 0) = q == 0 ? 1 : q;
    a.act(q, 1) = (q + 1) % n;
  }
  return a;
}

Dfa e_series(int n) {
  require(n >= 3, "e_series: n >= 3");
  Dfa a = blank(n, {"b", "c", "d"});
  for (State q = 0; q < n; ++q) {
    a.act(q, 0) = (q + 1) % n;
    a.act(q, 1) = q == 0 ? 0 : 1;
    a.act(q, 2) = q == n - 1 ? 1 : 0;
  }
  return a;
}

Dfa b2() {
  Dfa a = blank(3, {"a", "b"});
  a.act(0, 0) = 0;
  a.act(0, 1) = 0;
  a.act(1, 0) = 2;
  a.act(1, 1) = 0;
  a.act(2, 0) = 0;
  a.act(2, 1) = 1;
  return a;
}

Dfa flower(int n) {
  require(n >= 3, "flower: n >= 3");
  std::vector<std::string> letters;
  for (int i = 1; i <= n - 1; ++i) letters.push_back("a_" + std::to_string(i));
  Dfa a = blank(n, std::move(letters));
  for (State q = 0; q < n; ++q) {
    a.act(q, 0) = q == 1 ? 0 : q;
    for (int k = 2; k <= n - 1; ++k) {
      State t = q;
      if (q == k) t = 1;
      else if (q == 1) t = k;
      a.act(q, k - 1) = t;
    }
  }
  return a;
}

Dfa l_series(int k, int m) {
  require(k >= 1 && m >= 1, "l_series: k >= 1 and m >= 1");
  const int n = k + m + 1;
  std::vector<std::string> letters;
  for (int i = 1; i <= k + m; ++i) letters.push_back("a_" + std::to_string(i));
  Dfa a = blank(n, std::move(letters));
  for (State q = 0; q < n; ++q) {
    for (int i = 1; i <= k; ++i) a.act(q, i - 1) = q == i ? 0 : q;
    for (int j = 1; j <= m; ++j) {
      State t = q;
      if (j <= q && q < k + j) t = q + 1;
      else if (q == k + j) t = j;
      a.act(q, k + j - 1) = t;
    }
  }
  return a;
}

Dfa rystsov(int n) {
  require(n >= 3, "rystsov: n >= 3");
  return l_series(1, n - 2);
}

namespace {

Dfa cerny_plus(int n, State p, State q, const std::string& cname, const std::string& dname) {
  Dfa base = cerny(n);
  Dfa a = blank(n, {"a", "b", cname, dname});
  for (State s = 0; s < n; ++s) {
    a.act(s, 0) = base.act(s, 0);
    a.act(s, 1) = base.act(s, 1);
    a.act(s, 2) = s == p ? 0 : 1;
    a.act(s, 3) = s == q ? 1 : 0;
  }
  return a;
}

}  // namespace

Dfa d_series(int n) {
  require(n >= 4, "d_series: n >= 4");
  return cerny_plus(n, 0, (n + 1) / 2, "c", "d");
}

Dfa d_series_k(int n, int k) {
  require(n >= 4, "d_series_k: n >= 4");
  const int big_k = n * (n - 1) / 2 - 1;
  require(n <= k && k <= big_k, "d_series_k: n <= k <= C(n,2)-1");
  Word u = w_forward(n);
  u.resize(k);
  Dfa c = cerny(n);
  State p = apply(c, 0, u);
  State q = apply(c, 1, u);
  // The pair {0,1}.u is unordered and the two added letters play symmetric
  // roles; give state 0, when present, the collapsing letter so that
  // k = C(n,2)-1 reproduces d_series exactly.
  if (q == 0) std::swap(p, q);
  return cerny_plus(n, p, q, "c", "d");
}

Dfa one_way_line(int n) {
  require(n >= 3, "one_way_line: n >= 3");
  Dfa a = blank(n, {"a"});
  for (State q = 0; q < n; ++q) a.act(q, 0) = q == 0 ? 0 : q - 1;
  return a;
}

Dfa two_way_line(int n) {
  require(n >= 4, "two_way_line: n >= 4");
  Dfa a = blank(n, {"a", "b"});
  for (State q = 0; q < n; ++q) {
    a.act(q, 0) = q == 0 ? 0 : q - 1;
    a.act(q, 1) = q == n - 1 ? n - 1 : q + 1;
  }
  return a;
}

namespace {

void append_run(Word& w, int letter, int count) {
  for (int i = 0; i < count; ++i) w.push_back(letter);
}

}  // namespace

Word w_forward(int n) {
  require(n >= 3, "w_forward: n >= 3");
  constexpr int a = 0, b = 1;
  Word w;
  if (n % 2 == 1) {
    for (int i = 0; i < (n - 1) / 2 - 1; ++i) {
      append_run(w, b, n - 1);
      w.push_back(a);
    }
    append_run(w, b, n - 1);
  } else {
    for (int i = 0; i < n / 2 - 1; ++i) {
      append_run(w, b, n - 1);
      w.push_back(a);
    }
    append_run(w, b, n / 2 - 1);
  }
  return w;
}

Word w_backward(int n) {
  require(n >= 3, "w_backward: n >= 3");
  Word w = w_forward(n);
  std::reverse(w.begin(), w.end());
  w.push_back(0);
  return w;
}

std::pair<State, State> w_backward_start(int n) {
  require(n >= 3, "w_backward_start: n >= 3");
  return {1, n / 2 + 1};
}

std::optional<Dfa> by_name(const std::string& name, std::optional<int> n,
                           std::optional<int> k, std::optional<int> m) {
  auto need_n = [&]() {
    if (!n) throw std::invalid_argument("family '" + name + "' requires --n");
    return *n;
  };
  auto no_params = [&](bool uses_n, bool uses_k, bool uses_m) {
    if (!uses_n && n) throw std::invalid_argument("family '" + name + "' does not take --n");
    if (!uses_k && k) throw std::invalid_argument("family '" + name + "' does not take --k");
    if (!uses_m && m) throw std::invalid_argument("family '" + name + "' does not take --m");
  };
  if (name == "cerny") {
    no_params(true, false, false);
    return cerny(need_n());
  }
  if (name == "e_series") {
    no_params(true, false, false);
    return e_series(need_n());
  }
  if (name == "b2") {
    no_params(false, false, false);
    return b2();
  }
  if (name == "flower") {
    no_params(true, false, false);
    return flower(need_n());
  }
  if (name == "l_series") {
    no_params(false, true, true);
    if (!k || !m) throw std::invalid_argument("l_series requires --k and --m");
    return l_series(*k, *m);
  }
  if (name == "rystsov") {
    no_params(true, false, false);
    return rystsov(need_n());
  }
  if (name == "d_series") {
    no_params(true, false, false);
    return d_series(need_n());
  }
  if (name == "d_series_k") {
    no_params(true, true, false);
    if (!k) throw std::invalid_argument("d_series_k requires --k");
    return d_series_k(need_n(), *k);
  }
  if (name == "one_way_line") {
    no_params(true, false, false);
    return one_way_line(need_n());
  }
  if (name == "two_way_line") {
    no_params(true, false, false);
    return two_way_line(need_n());
  }
  return std::nullopt;
}

}  // namespace families
}  // namespace synchro
