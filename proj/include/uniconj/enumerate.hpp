#pragma once

// Streaming enumeration of freely reduced words in length-then-lex order.
// Used both for abstract words in n variables and for ball enumeration in
// free groups; truncation at any maximum length is deterministic.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "uniconj/word.hpp"

namespace uniconj {

class ReducedWordStream {
 public:
  // Yields every freely reduced word of length len_lo..len_hi over `rank`
  // generators, each exactly once, in length-then-lex order.
  ReducedWordStream(int rank, int len_lo, int len_hi)
      : rank_(rank), len_hi_(len_hi), next_len_(len_lo) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (len_lo < 0) throw std::invalid_argument("negative length");
  }

  std::optional<Word> next() {
    if (!advance()) return std::nullopt;
    std::vector<Letter> letters(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i)
      letters[i] = letter_from_key(keys_[i]);
    return Word::from_reduced(std::move(letters), rank_);
  }

 private:
  bool start_length(int len) {
    if (len > len_hi_) return false;
    keys_.assign(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 1; i < keys_.size(); ++i)
      keys_[i] = smallest_allowed(keys_[i - 1]);
    return true;
  }

  int smallest_allowed(int prev_key) const {
    return (prev_key ^ 1) == 0 ? 1 : 0;
  }

  bool advance() {
    if (!started_) {
      started_ = true;
      if (next_len_ == 0) {
        keys_.clear();
        return true;  // the identity, when len_lo == 0
      }
      return start_length(next_len_);
    }
    if (keys_.empty()) return start_length(std::max(next_len_, 1));
    int i = static_cast<int>(keys_.size()) - 1;
    while (i >= 0) {
      int forbidden = i > 0 ? (keys_[i - 1] ^ 1) : -1;
      int v = keys_[i] + 1;
      if (v == forbidden) ++v;
      if (v < 2 * rank_) {
        keys_[static_cast<std::size_t>(i)] = v;
        for (std::size_t j = static_cast<std::size_t>(i) + 1;
             j < keys_.size(); ++j)
          keys_[j] = smallest_allowed(keys_[j - 1]);
        return true;
      }
      --i;
    }
    return start_length(static_cast<int>(keys_.size()) + 1);
  }

  int rank_;
  int len_hi_;
  int next_len_;
  bool started_ = false;
  std::vector<int> keys_;
};

// Number of freely reduced words of length exactly `len`: 2n(2n-1)^(len-1).
inline std::uint64_t reduced_word_count(int rank, int len) {
  if (len == 0) return 1;
  std::uint64_t c = 2 * static_cast<std::uint64_t>(rank);
  for (int i = 1; i < len; ++i) c *= 2 * static_cast<std::uint64_t>(rank) - 1;
  return c;
}

inline std::uint64_t reduced_word_count_up_to(int rank, int len) {
  std::uint64_t total = 0;
  for (int l = 1; l <= len; ++l) total += reduced_word_count(rank, l);
  return total;
}

// Convenience wrapper; the callback may return false to stop early.
inline void for_each_reduced_word(int rank, int len_lo, int len_hi,
                                  const std::function<bool(const Word&)>& fn) {
  ReducedWordStream stream(rank, len_lo, len_hi);
  while (auto w = stream.next())
    if (!fn(*w)) return;
}

}  // namespace uniconj
