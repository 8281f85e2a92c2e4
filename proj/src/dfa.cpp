#include "synchro/dfa.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace synchro {

int StateSet::count() const {
  int c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

bool StateSet::empty() const {
  for (auto w : bits_)
    if (w != 0) return false;
  return true;
}

State StateSet::first() const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] != 0) return static_cast<State>(i * 64 + std::countr_zero(bits_[i]));
  return -1;
}

std::vector<State> StateSet::elements() const {
  std::vector<State> out;
  out.reserve(count());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    std::uint64_t w = bits_[i];
    while (w != 0) {
      out.push_back(static_cast<State>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool StateSet::contains(const StateSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if ((other.bits_[i] & ~bits_[i]) != 0) return false;
  return true;
}

StateSet& StateSet::operator|=(const StateSet& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

StateSet& StateSet::subtract(const StateSet& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out(n_);
  for (State q = 0; q < n_; ++q)
    if (!test(q)) out.set(q);
  return out;
}

int Dfa::letter_index(std::string_view name) const {
  for (int a = 0; a < m(); ++a)
    if (letters[a] == name) return a;
  return -1;
}

void Dfa::check() const {
  if (n < 1) throw std::invalid_argument("automaton needs at least one state");
  if (letters.empty()) throw std::invalid_argument("automaton needs at least one letter");
  for (const auto& name : letters) {
    if (name.empty() || name.find('#') != std::string::npos ||
        name.find_first_of(" \t\r\n") != std::string::npos)
      throw std::invalid_argument("bad letter name '" + name + "'");
  }
  for (std::size_t i = 0; i < letters.size(); ++i)
    for (std::size_t j = i + 1; j < letters.size(); ++j)
      if (letters[i] == letters[j])
        throw std::invalid_argument("duplicate letter name '" + letters[i] + "'");
  if (table.size() != static_cast<std::size_t>(n) * letters.size())
    throw std::invalid_argument("transition table has wrong size");
  for (State t : table)
    if (t < 0 || t >= n) throw std::invalid_argument("transition target out of range");
}

KBound KBound::finite(long long k) {
  if (k < 1) throw std::invalid_argument("finite game bound must be >= 1");
  return KBound{k, false};
}

std::string to_string(const KBound& k) {
  return k.is_omega() ? "omega" : std::to_string(k.k());
}

State apply(const Dfa& a, State q, const Word& w) {
  for (int x : w) q = a.act(q, x);
  return q;
}

StateSet apply_set(const Dfa& a, const StateSet& p, const Word& w) {
  std::vector<State> cur = p.elements();
  for (int x : w)
    for (auto& q : cur) q = a.act(q, x);
  StateSet out(a.n);
  for (State q : cur) out.set(q);
  return out;
}

StateSet preimage(const Dfa& a, const StateSet& f) {
  StateSet out(a.n);
  for (State q = 0; q < a.n; ++q)
    for (int x = 0; x < a.m(); ++x)
      if (f.test(a.act(q, x))) {
        out.set(q);
        break;
      }
  return out;
}

StateSet reach_within(const Dfa& a, State q, long long depth) {
  StateSet seen = StateSet::single(a.n, q);
  std::vector<State> frontier{q};
  for (long long layer = 0; layer < depth && !frontier.empty(); ++layer) {
    std::vector<State> next;
    for (State p : frontier)
      for (int x = 0; x < a.m(); ++x) {
        State r = a.act(p, x);
        if (!seen.test(r)) {
          seen.set(r);
          next.push_back(r);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

namespace {

// Iterative Tarjan; recursion is unusable here (line automata nest n deep).
struct TarjanFrame {
  State q;
  int next_letter;
};

}  // namespace

SccResult sccs(const Dfa& a) {
  const int n = a.n;
  const int m = a.m();
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<TarjanFrame> call;
  int next_index = 0;

  for (State root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      if (fr.next_letter < m) {
        State w = a.act(fr.q, fr.next_letter++);
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.q] = std::min(low[fr.q], index[w]);
        }
      } else {
        State q = fr.q;
        call.pop_back();
        if (!call.empty()) low[call.back().q] = std::min(low[call.back().q], low[q]);
        if (low[q] == index[q]) {
          int id = res.count++;
          State w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            res.comp[w] = id;
          } while (w != q);
        }
      }
    }
  }
  return res;
}

int PairAutomaton::pair_index(State p, State q) const {
  if (p > q) std::swap(p, q);
  const long long n = base.n;
  return static_cast<int>(p * n - p * (p + 1) / 2 + (q - p - 1));
}

std::pair<State, State> PairAutomaton::pair_of(int idx) const {
  const int n = base.n;
  State p = 0;
  int row = n - 1;  // number of pairs with first element p
  while (idx >= row) {
    idx -= row;
    --row;
    ++p;
  }
  return {p, p + 1 + idx};
}

PairAutomaton two_subset(const Dfa& a) {
  if (a.n < 2) throw std::invalid_argument("2-subset automaton needs >= 2 states");
  const long long pairs = static_cast<long long>(a.n) * (a.n - 1) / 2;
  if (pairs + 1 > kMaxStates) throw CapExceeded("2-subset automaton exceeds the state limit");

  PairAutomaton pa;
  pa.base = a;
  pa.sink = static_cast<State>(pairs);
  pa.dfa.n = static_cast<int>(pairs) + 1;
  pa.dfa.letters = a.letters;
  pa.dfa.table.resize(static_cast<std::size_t>(pa.dfa.n) * a.m());
  for (State p = 0; p < a.n; ++p)
    for (State q = p + 1; q < a.n; ++q) {
      int idx = pa.pair_index(p, q);
      for (int x = 0; x < a.m(); ++x) {
        State pp = a.act(p, x), qq = a.act(q, x);
        pa.dfa.act(idx, x) = pp == qq ? pa.sink : pa.pair_index(pp, qq);
      }
    }
  for (int x = 0; x < a.m(); ++x) pa.dfa.act(pa.sink, x) = pa.sink;
  return pa;
}

Word iterated_letter_word(int base_letters, std::size_t index) {
  const std::size_t b = static_cast<std::size_t>(base_letters);
  std::size_t block = b;
  int len = 1;
  while (index >= block) {
    index -= block;
    block *= b;
    ++len;
  }
  Word w(len);
  for (int i = len - 1; i >= 0; --i) {
    w[i] = static_cast<int>(index % b);
    index /= b;
  }
  return w;
}

Dfa iterate(const Dfa& a, int m, std::size_t letter_cap) {
  if (m < 1) throw std::invalid_argument("iteration order must be >= 1");
  for (const auto& name : a.letters)
    if (name.find('.') != std::string::npos)
      throw std::invalid_argument("iteration requires '.'-free base letter names");

  const std::size_t b = a.letters.size();
  std::size_t total = 0, block = 1;
  for (int len = 1; len <= m; ++len) {
    if (block > letter_cap / b) throw CapExceeded("iteration alphabet exceeds the letter cap");
    block *= b;
    total += block;
    if (total > letter_cap) throw CapExceeded("iteration alphabet exceeds the letter cap");
  }

  Dfa out;
  out.n = a.n;
  out.letters.reserve(total);
  out.table.resize(static_cast<std::size_t>(a.n) * total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Word w = iterated_letter_word(static_cast<int>(b), idx);
    std::string name = a.letters[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
      name += '.';
      name += a.letters[w[i]];
    }
    out.letters.push_back(std::move(name));
    for (State q = 0; q < a.n; ++q)
      out.table[static_cast<std::size_t>(q) * total + idx] = apply(a, q, w);
  }
  return out;
}

namespace {

// Backward closure of {sink} in the pair automaton.
StateSet pair_states_reaching_sink(const PairAutomaton& pa) {
  const Dfa& d = pa.dfa;
  std::vector<std::vector<State>> rev(d.n);
  for (State q = 0; q < d.n; ++q)
    for (int x = 0; x < d.m(); ++x) rev[d.act(q, x)].push_back(q);
  StateSet seen = StateSet::single(d.n, pa.sink);
  std::deque<State> queue{pa.sink};
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : rev[q])
      if (!seen.test(p)) {
        seen.set(p);
        queue.push_back(p);
      }
  }
  return seen;
}

}  // namespace

bool is_synchronizing(const Dfa& a) {
  if (a.n == 1) return true;
  PairAutomaton pa = two_subset(a);
  return pair_states_reaching_sink(pa).count() == pa.dfa.n;
}

Word synthesize_reset_word(const Dfa& a) {
  if (a.n == 1) return {};
  PairAutomaton pa = two_subset(a);
  Word word;
  StateSet tokens = StateSet::full(a.n);
  while (!tokens.is_singleton()) {
    auto live = tokens.elements();
    int from = pa.pair_index(live[0], live[1]);
    // Shortest path from the pair to the sink; letters scanned in index order
    // so the first path found is also the lexicographically least one.
    std::vector<int> pred(pa.dfa.n, -1), via(pa.dfa.n, -1);
    std::deque<State> queue{from};
    pred[from] = from;
    while (!queue.empty() && pred[pa.sink] == -1) {
      State q = queue.front();
      queue.pop_front();
      for (int x = 0; x < pa.dfa.m(); ++x) {
        State r = pa.dfa.act(q, x);
        if (pred[r] == -1) {
          pred[r] = q;
          via[r] = x;
          queue.push_back(r);
        }
      }
    }
    if (pred[pa.sink] == -1) throw std::invalid_argument("automaton is not synchronizing");
    Word path;
    for (State q = pa.sink; q != from; q = pred[q]) path.push_back(via[q]);
    std::reverse(path.begin(), path.end());
    tokens = apply_set(a, tokens, path);
    word.insert(word.end(), path.begin(), path.end());
  }
  return word;
}

// ---- text formats ----

namespace {

struct Token {
  std::string text;
  int line, col;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
      ++col;
      ++i;
      continue;
    }
    Token t{"", line, col};
    while (i < text.size() && text[i] != '#' && !std::isspace(static_cast<unsigned char>(text[i]))) {
      t.text += text[i];
      ++i;
      ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& expect(std::string_view what) {
    if (pos_ >= toks_.size()) {
      const Token* last = toks_.empty() ? nullptr : &toks_.back();
      throw ParseError("unexpected end of input, expected " + std::string(what),
                       last ? last->line : 1, last ? last->col : 1);
    }
    return toks_[pos_++];
  }

  void expect_keyword(std::string_view kw) {
    const Token& t = expect("'" + std::string(kw) + "'");
    if (t.text != kw)
      throw ParseError("expected '" + std::string(kw) + "', got '" + t.text + "'", t.line, t.col);
  }

  bool peek_is(std::string_view kw) const {
    return pos_ < toks_.size() && toks_[pos_].text == kw;
  }

  bool done() const { return pos_ >= toks_.size(); }
  const Token& current() const { return toks_[pos_]; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

long long parse_int(const Token& t, std::string_view what) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected " + std::string(what) + ", got '" + t.text + "'", t.line, t.col);
  if (t.text.size() > 12)
    throw ParseError(std::string(what) + " '" + t.text + "' is out of range", t.line, t.col);
  return std::stoll(t.text);
}

}  // namespace

Dfa parse_dfa(std::string_view text, int max_states) {
  TokenCursor cur(tokenize(text));
  cur.expect_keyword("dfa");
  cur.expect_keyword("states");
  const Token& nt = cur.expect("state count");
  long long n = parse_int(nt, "state count");
  if (n < 1) throw ParseError("state count must be >= 1", nt.line, nt.col);
  if (n > max_states) throw CapExceeded("state count exceeds the limit of " + std::to_string(max_states));

  cur.expect_keyword("letters");
  Dfa a;
  a.n = static_cast<int>(n);
  while (!cur.peek_is("trans")) {
    const Token& t = cur.expect("letter name or 'trans'");
    if (a.letter_index(t.text) != -1)
      throw ParseError("duplicate letter name '" + t.text + "'", t.line, t.col);
    a.letters.push_back(t.text);
  }
  if (a.letters.empty()) {
    const Token& t = cur.current();
    throw ParseError("at least one letter is required", t.line, t.col);
  }
  cur.expect_keyword("trans");

  a.table.reserve(static_cast<std::size_t>(a.n) * a.letters.size());
  for (State q = 0; q < a.n; ++q)
    for (std::size_t x = 0; x < a.letters.size(); ++x) {
      const Token& t = cur.expect("transition target");
      long long target = parse_int(t, "transition target");
      if (target < 0 || target >= n)
        throw ParseError("row " + std::to_string(q) + ": target index " + std::to_string(target) +
                             " out of range [0," + std::to_string(n - 1) + "]",
                         t.line, t.col);
      a.table.push_back(static_cast<State>(target));
    }
  cur.expect_keyword("end");
  if (!cur.done()) {
    const Token& t = cur.current();
    throw ParseError("unexpected token '" + t.text + "' after 'end'", t.line, t.col);
  }
  return a;
}

std::string serialize_dfa(const Dfa& a) {
  std::ostringstream out;
  out << "dfa\nstates " << a.n << "\nletters";
  for (const auto& name : a.letters) out << ' ' << name;
  out << "\ntrans\n";
  for (State q = 0; q < a.n; ++q) {
    for (int x = 0; x < a.m(); ++x) {
      if (x) out << ' ';
      out << a.act(q, x);
    }
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

std::string export_dot(const Dfa& a) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State q = 0; q < a.n; ++q) {
    // One edge bundle per (state, target), labels comma-joined in letter order.
    std::vector<State> targets;
    for (int x = 0; x < a.m(); ++x) {
      State t = a.act(q, x);
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (State t : targets) {
      out << "  " << q << " -> " << t << " [label=\"";
      bool first = true;
      for (int x = 0; x < a.m(); ++x)
        if (a.act(q, x) == t) {
          if (!first) out << ',';
          out << a.letters[x];
          first = false;
        }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string format_word(const Dfa& a, const Word& w) {
  if (w.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.letters[w[i]];
  }
  return out;
}

Word parse_word(const Dfa& a, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  if (toks.size() == 1 && toks[0] == "-") return {};
  Word w;
  for (const auto& name : toks) {
    int x = a.letter_index(name);
    if (x == -1) throw std::invalid_argument("unknown letter '" + name + "'");
    w.push_back(x);
  }
  return w;
}

std::string format_state_set(const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for (State q : s.elements()) {
    if (!first) out += ',';
    out += std::to_string(q);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace synchro
