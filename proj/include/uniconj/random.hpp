#pragma once

// Seeded instance generators shared by the property suites, the acceptance
// tests and the CLI. No ambient entropy anywhere: callers own the engine.

#include <random>

#include "uniconj/word.hpp"

namespace uniconj::rnd {

inline Word reduced_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> ls;
  std::uniform_int_distribution<int> key(0, 2 * rank - 1);
  while (static_cast<int>(ls.size()) < len) {
    Letter l = letter_from_key(key(rng));
    if (!ls.empty() && ls.back() == -l) continue;
    ls.push_back(l);
  }
  return Word::from_reduced(std::move(ls), rank);
}

inline Word reduced_word_up_to(std::mt19937_64& rng, int rank, int max_len,
                               int min_len = 0) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  return reduced_word(rng, rank, len(rng));
}

inline std::vector<Word> tuple(std::mt19937_64& rng, int rank, int n,
                               int max_len, int min_len = 1) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(reduced_word_up_to(rng, rank, max_len, min_len));
  return out;
}

// A pair built with a uniform conjugator z: right_i = z^-1 left_i z.
struct SeededPair {
  std::vector<Word> left;
  std::vector<Word> right;
  Word z;
};

inline SeededPair uniform_pair(std::mt19937_64& rng, int rank, int n,
                               int max_word_len, int max_conj_len) {
  SeededPair out{tuple(rng, rank, n, max_word_len),
                 {},
                 reduced_word_up_to(rng, rank, max_conj_len)};
  for (const Word& a : out.left) out.right.push_back(conjugate(a, out.z));
  return out;
}

// Componentwise conjugate with independent conjugators (may or may not admit
// a uniform one).
inline SeededPair componentwise_pair(std::mt19937_64& rng, int rank, int n,
                                     int max_word_len, int max_conj_len) {
  SeededPair out{tuple(rng, rank, n, max_word_len), {}, Word::identity(rank)};
  for (const Word& a : out.left)
    out.right.push_back(
        conjugate(a, reduced_word_up_to(rng, rank, max_conj_len)));
  return out;
}

}  // namespace uniconj::rnd
