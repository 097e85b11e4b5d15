#pragma once

// Exact word algebra for finitely generated free groups F(S).
//
// A letter is a nonzero int: +i is the i-th generator (1-based), -i its
// inverse. Words are stored freely reduced. The text format uses lowercase
// letters for generators and uppercase for inverses ("A" = a^-1); ranks
// beyond 26 switch to indexed tokens "g3" / "G3".

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uniconj {

using Letter = int;

// Total letter order a < A < b < B < ... used for all lexicographic
// comparisons and canonical rotations.
inline int letter_key(Letter l) {
  int idx = l > 0 ? l : -l;
  return 2 * (idx - 1) + (l < 0 ? 1 : 0);
}

inline Letter letter_from_key(int key) {
  int idx = key / 2 + 1;
  return (key % 2) ? -idx : idx;
}

class Word {
 public:
  Word() = default;

  // Reduces `raw` and takes the result; letters must reference generators
  // within `rank`.
  static Word reduce(std::span<const Letter> raw, int rank) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter l : raw) {
      if (l == 0 || l > rank || l < -rank)
        throw std::invalid_argument("letter out of range for rank " +
                                    std::to_string(rank));
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    return Word(std::move(out), rank);
  }

  static Word reduce(std::initializer_list<Letter> raw, int rank) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()), rank);
  }

  static Word identity(int rank) { return Word({}, rank); }

  static Word generator(Letter l, int rank) {
    std::vector<Letter> one{l};
    return reduce(one, rank);
  }

  // Parses the text format. With rank == 0 the rank is inferred as the
  // largest generator index mentioned (at least 1). "1" and "" both denote
  // the identity.
  static Word parse(std::string_view text, int rank = 0) {
    std::vector<Letter> raw;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == ' ' || c == '\t' || (c == '1' && raw.empty() && text.size() == 1)) {
        ++i;
        continue;
      }
      bool upper = (c >= 'A' && c <= 'Z');
      bool lower = (c >= 'a' && c <= 'z');
      if (!upper && !lower)
        throw std::invalid_argument("bad character in word: " +
                                    std::string(text));
      ++i;
      int idx;
      if ((c == 'g' || c == 'G') && i < text.size() && text[i] >= '0' &&
          text[i] <= '9') {
        idx = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          idx = idx * 10 + (text[i] - '0');
          ++i;
        }
        if (idx == 0) throw std::invalid_argument("generator index 0");
      } else {
        idx = lower ? (c - 'a' + 1) : (c - 'A' + 1);
      }
      raw.push_back(upper ? -idx : idx);
    }
    int r = rank;
    if (r == 0) {
      for (Letter l : raw) r = std::max(r, l > 0 ? l : -l);
      r = std::max(r, 1);
    }
    return reduce(raw, r);
  }

  const std::vector<Letter>& letters() const { return letters_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const {
    std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
    for (Letter& l : inv) l = -l;
    return Word(std::move(inv), rank_);
  }

  bool operator==(const Word& other) const {
    return letters_ == other.letters_;
  }
  bool operator!=(const Word& other) const { return !(*this == other); }

  std::string str() const {
    std::string out;
    for (Letter l : letters_) {
      int idx = l > 0 ? l : -l;
      if (idx <= 26) {
        out.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + idx - 1));
      } else {
        out.push_back(l > 0 ? 'g' : 'G');
        out += std::to_string(idx);
      }
    }
    return out;
  }

  // Already-reduced constructor for internal use; callers guarantee
  // reducedness.
  static Word from_reduced(std::vector<Letter> letters, int rank) {
    return Word(std::move(letters), rank);
  }

 private:
  Word(std::vector<Letter> letters, int rank)
      : letters_(std::move(letters)), rank_(rank) {}

  std::vector<Letter> letters_;
  int rank_ = 0;
};

// Lexicographic order under the fixed letter order; ranks are ignored.
inline bool lex_less(const Word& a, const Word& b) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int kx = letter_key(x[i]), ky = letter_key(y[i]);
    if (kx != ky) return kx < ky;
  }
  return x.size() < y.size();
}

inline bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

inline Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw std::invalid_argument("rank mismatch in multiply");
  const auto& x = u.letters();
  const auto& y = v.letters();
  std::size_t cancel = 0;
  while (cancel < x.size() && cancel < y.size() &&
         x[x.size() - 1 - cancel] == -y[cancel])
    ++cancel;
  std::vector<Letter> out;
  out.reserve(x.size() + y.size() - 2 * cancel);
  out.insert(out.end(), x.begin(), x.end() - static_cast<long>(cancel));
  out.insert(out.end(), y.begin() + static_cast<long>(cancel), y.end());
  return Word::from_reduced(std::move(out), u.rank());
}

inline Word multiply(const Word& a, const Word& b, const Word& c) {
  return multiply(multiply(a, b), c);
}

// z^-1 u z
inline Word conjugate(const Word& u, const Word& z) {
  return multiply(z.inverse(), multiply(u, z));
}

// Index of the lexicographically least rotation (Booth's algorithm).
inline std::size_t least_rotation_index(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0;
  auto key = [&](std::size_t i) { return letter_key(s[i % n]); };
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    int sj = key(j);
    long i = f[j - k - 1];
    while (i != -1 && sj != key(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < key(k + static_cast<std::size_t>(i) + 1))
        k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != key(k)) {
      if (sj < key(k)) k = j;
      f[j - k] = -1;
    } else if (i == -1) {
      f[j - k] = 0;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

// Conjugacy-class canonical form: `core` is cyclically reduced and is the
// least rotation of itself; witness * core * witness^-1 reduces back to the
// originating word.
struct CyclicWord {
  Word core;
  Word witness;

  bool operator==(const CyclicWord& other) const {
    return core == other.core;
  }
};

inline CyclicWord cyclic_reduce(const Word& w) {
  std::vector<Letter> mid(w.letters());
  std::vector<Letter> prefix;
  while (mid.size() >= 2 && mid.front() == -mid.back()) {
    prefix.push_back(mid.front());
    mid.erase(mid.begin());
    mid.pop_back();
  }
  std::size_t k = least_rotation_index(mid);
  // core = rotation of mid starting at k; witness extends by the rotated-off
  // prefix mid[0..k).
  std::vector<Letter> core(mid.begin() + static_cast<long>(k), mid.end());
  core.insert(core.end(), mid.begin(), mid.begin() + static_cast<long>(k));
  prefix.insert(prefix.end(), mid.begin(), mid.begin() + static_cast<long>(k));
  return CyclicWord{Word::from_reduced(std::move(core), w.rank()),
                    Word::reduce(prefix, w.rank())};
}

// Minimal conjugate length; the norm ||w|| at delta = 0.
inline int cyclic_length(const Word& w) {
  std::vector<Letter> mid(w.letters());
  std::size_t lo = 0, hi = mid.size();
  while (hi - lo >= 2 && mid[lo] == -mid[hi - 1]) {
    ++lo;
    --hi;
  }
  return static_cast<int>(hi - lo);
}

inline Word pow(const Word& w, long long k) {
  if (k == 0 || w.empty()) return Word::identity(w.rank());
  CyclicWord c = cyclic_reduce(w);
  const Word base = k > 0 ? c.core : c.core.inverse();
  const unsigned long long reps = k > 0 ? static_cast<unsigned long long>(k)
                                        : static_cast<unsigned long long>(-k);
  std::vector<Letter> out(c.witness.letters());
  for (unsigned long long i = 0; i < reps; ++i)
    out.insert(out.end(), base.letters().begin(), base.letters().end());
  Word inv = c.witness.inverse();
  out.insert(out.end(), inv.letters().begin(), inv.letters().end());
  return Word::reduce(out, w.rank());
}

// Conjugator z with z^-1 u z = v, when one exists (iff canonical cores
// agree).
inline std::optional<Word> is_conjugate(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw std::invalid_argument("rank mismatch in is_conjugate");
  CyclicWord cu = cyclic_reduce(u);
  CyclicWord cv = cyclic_reduce(v);
  if (!(cu.core == cv.core)) return std::nullopt;
  return multiply(cu.witness, cv.witness.inverse());
}

// root^exponent == w with root not a proper power; <root> is the centralizer
// of w.
struct RootPower {
  Word root;
  int exponent;
};

inline RootPower primitive_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("primitive_root of identity");
  CyclicWord c = cyclic_reduce(w);
  const auto& letters = c.core.letters();
  const int m = static_cast<int>(letters.size());
  for (int p = 1; p <= m; ++p) {
    if (m % p != 0) continue;
    bool periodic = true;
    for (int i = p; i < m && periodic; ++i)
      periodic = (letters[i] == letters[i - p]);
    if (!periodic) continue;
    std::vector<Letter> root_core(letters.begin(), letters.begin() + p);
    Word root = multiply(
        multiply(c.witness, Word::from_reduced(std::move(root_core), w.rank())),
        c.witness.inverse());
    return RootPower{root, m / p};
  }
  return RootPower{w, 1};  // unreachable: p == m always periodic
}

inline bool commute(const Word& u, const Word& v) {
  return multiply(u, v) == multiply(v, u);
}

// Homomorphic substitution x_i -> args[i-1], freely reduced. `abstract` is a
// word over formal variables x_1..x_n.
using AbstractWord = Word;

inline Word evaluate(const AbstractWord& abstract,
                     std::span<const Word> args) {
  int arity = 0;
  for (Letter l : abstract.letters())
    arity = std::max(arity, l > 0 ? l : -l);
  if (arity > static_cast<int>(args.size()))
    throw std::invalid_argument("arity exceeds tuple length");
  int rank = args.empty() ? 1 : args[0].rank();
  std::vector<Letter> raw;
  for (Letter l : abstract.letters()) {
    const Word& sub = args[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
    if (l > 0) {
      raw.insert(raw.end(), sub.letters().begin(), sub.letters().end());
    } else {
      for (auto it = sub.letters().rbegin(); it != sub.letters().rend(); ++it)
        raw.push_back(-*it);
    }
  }
  return Word::reduce(raw, rank);
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w.letters()) {
      h ^= static_cast<std::size_t>(l + 512);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace uniconj
