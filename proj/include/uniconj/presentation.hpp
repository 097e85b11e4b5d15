#pragma once

// Word-problem backend for small-cancellation presentations and the
// Cayley-ball explorer. Dehn's algorithm decides triviality for C'(1/6)
// presentations; Dehn-reduced words are used as normal forms with their
// length as the distance (validated against BFS layers in the tests).
// Equal-half lex-decreasing swaps give the canonical vertex key.

#include <cstdlib>
#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "uniconj/enumerate.hpp"
#include "uniconj/geometry.hpp"
#include "uniconj/guard.hpp"
#include "uniconj/word.hpp"

namespace uniconj::geometry {

using uniconj::ResourceExceeded;
using uniconj::memory_guard_mb;

class Presentation {
 public:
  Presentation(int rank, std::vector<Word> relators)
      : rank_(rank) {
    for (const Word& r : relators) {
      CyclicWord c = cyclic_reduce(r);
      if (c.core.empty())
        throw std::invalid_argument("trivial relator");
      relators_.push_back(c.core);
    }
    if (relators_.empty()) throw std::invalid_argument("no relators");
    build_symmetrized();
    compute_ratio();
  }

  // Text format: first line the rank, then one relator per line.
  static Presentation parse(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
      throw std::invalid_argument("empty presentation");
    int rank = std::stoi(line);
    std::vector<Word> relators;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      relators.push_back(Word::parse(line, rank));
    }
    return Presentation(rank, std::move(relators));
  }

  static Presentation parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  // Closed orientable genus-2 surface group, the standard C'(1/8) example.
  static Presentation genus2_surface() {
    return Presentation(4, {Word::parse("abABcdCD", 4)});
  }

  int rank() const { return rank_; }
  const std::vector<Word>& relators() const { return relators_; }
  const bounds::Rat& cancellation_ratio() const { return ratio_; }
  bool is_c_sixth() const { return ratio_ < bounds::Rat(1, 6); }
  int min_relator_length() const { return min_relator_len_; }

  // Freely reduces, then repeatedly replaces any subword longer than half a
  // symmetrized relator by the inverse of the complement (leftmost match,
  // longest pattern, first pattern index as the tie break). Empty result
  // iff the word is trivial in the group.
  Word dehn_normal_form(const Word& w) const {
    require_c_sixth();
    std::vector<Letter> cur(w.letters());
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
        int best_len = 0;
        std::size_t best_pat = 0;
        for (std::size_t p = 0; p < patterns_.size(); ++p) {
          const auto& pat = patterns_[p];
          std::size_t m = 0;
          while (i + m < cur.size() && m < pat.size() &&
                 cur[i + m] == pat[m])
            ++m;
          if (2 * m > pat.size() && static_cast<int>(m) > best_len) {
            best_len = static_cast<int>(m);
            best_pat = p;
          }
        }
        if (best_len > 0) {
          const auto& pat = patterns_[best_pat];
          std::vector<Letter> next(cur.begin(),
                                   cur.begin() + static_cast<long>(i));
          for (std::size_t j = pat.size(); j > static_cast<std::size_t>(best_len); --j)
            next.push_back(-pat[j - 1]);
          next.insert(next.end(),
                      cur.begin() + static_cast<long>(i) + best_len,
                      cur.end());
          cur = Word::reduce(next, rank_).letters();
          changed = true;
        }
      }
    }
    return Word::from_reduced(std::move(cur), rank_);
  }

  bool is_trivial(const Word& w) const { return dehn_normal_form(w).empty(); }

  bool equal(const Word& u, const Word& v) const {
    return is_trivial(multiply(u.inverse(), v));
  }

  int distance(const Word& u, const Word& v) const {
    return dehn_normal_form(multiply(u.inverse(), v)).size();
  }

  // Canonical key: lex-least word in the closure of the Dehn-reduced form
  // under exactly-half relator swaps (these preserve length).
  Word canonical_form(const Word& w) const {
    Word reduced = dehn_normal_form(w);
    std::set<std::string> seen;
    std::vector<Word> frontier{reduced};
    Word best = reduced;
    seen.insert(reduced.str());
    while (!frontier.empty()) {
      if (seen.size() > 4096)
        throw ResourceExceeded("half-swap closure too large");
      Word cur = frontier.back();
      frontier.pop_back();
      if (lex_less(cur, best)) best = cur;
      const auto& letters = cur.letters();
      for (std::size_t i = 0; i < letters.size(); ++i) {
        for (const auto& pat : patterns_) {
          if (pat.size() % 2 != 0) continue;
          std::size_t half = pat.size() / 2;
          if (i + half > letters.size()) continue;
          std::size_t m = 0;
          while (m < half && letters[i + m] == pat[m]) ++m;
          if (m != half) continue;
          std::vector<Letter> next(letters.begin(),
                                   letters.begin() + static_cast<long>(i));
          for (std::size_t j = pat.size(); j > half; --j)
            next.push_back(-pat[j - 1]);
          next.insert(next.end(),
                      letters.begin() + static_cast<long>(i + half),
                      letters.end());
          Word cand = Word::reduce(next, rank_);
          if (cand.size() != cur.size()) continue;  // only length-preserving
          if (seen.insert(cand.str()).second) frontier.push_back(cand);
        }
      }
    }
    return best;
  }

 private:
  void require_c_sixth() const {
    if (!is_c_sixth())
      throw std::invalid_argument(
          "presentation is not C'(1/6): ratio " + bounds::rat_str(ratio_));
  }

  void build_symmetrized() {
    std::set<std::string> seen;
    for (const Word& rel : relators_) {
      for (const Word& base : {rel, rel.inverse()}) {
        const auto& L = base.letters();
        for (std::size_t k = 0; k < L.size(); ++k) {
          std::vector<Letter> rot(L.begin() + static_cast<long>(k), L.end());
          rot.insert(rot.end(), L.begin(), L.begin() + static_cast<long>(k));
          sym_all_.push_back(rot);
          Word wrot = Word::from_reduced(rot, rank_);
          if (seen.insert(wrot.str()).second)
            patterns_.push_back(std::move(rot));
        }
      }
    }
  }

  void compute_ratio() {
    min_relator_len_ = relators_[0].size();
    for (const Word& r : relators_)
      min_relator_len_ = std::min(min_relator_len_, r.size());
    // longest piece: longest common prefix of two distinct occurrences in
    // the symmetrized multiset (coinciding rotations of a proper power count
    // as full-length pieces)
    std::size_t longest = 0;
    for (std::size_t a = 0; a < sym_all_.size(); ++a)
      for (std::size_t b = a + 1; b < sym_all_.size(); ++b) {
        std::size_t m = 0;
        while (m < sym_all_[a].size() && m < sym_all_[b].size() &&
               sym_all_[a][m] == sym_all_[b][m])
          ++m;
        longest = std::max(longest, m);
      }
    ratio_ = bounds::Rat(static_cast<long long>(longest), min_relator_len_);
  }

  int rank_;
  std::vector<Word> relators_;
  std::vector<std::vector<Letter>> patterns_;
  std::vector<std::vector<Letter>> sym_all_;
  bounds::Rat ratio_;
  int min_relator_len_ = 0;
};

// Ball of a given radius around the identity: vertices in normal form,
// generator-labeled adjacency, distances from the origin.
class BallGraph {
 public:
  // Free group ball.
  static BallGraph free_ball(int rank, int radius) {
    BallGraph b;
    b.rank_ = rank;
    b.radius_ = radius;
    guard_size(rank, radius);
    b.vertices_.push_back(Word::identity(rank));
    b.index_[""] = 0;
    b.dist_.push_back(0);
    for_each_reduced_word(rank, 1, radius, [&](const Word& w) {
      b.index_[w.str()] = static_cast<int>(b.vertices_.size());
      b.vertices_.push_back(w);
      b.dist_.push_back(w.size());
      return true;
    });
    b.fill_adjacency([&](const Word& w) { return w; });
    return b;
  }

  // Presented-group ball via BFS over canonical forms.
  static BallGraph presented_ball(const Presentation& p, int radius) {
    BallGraph b;
    b.rank_ = p.rank();
    b.radius_ = radius;
    b.presentation_ = &p;
    guard_size(p.rank(), radius);
    b.vertices_.push_back(Word::identity(p.rank()));
    b.index_[""] = 0;
    b.dist_.push_back(0);
    std::vector<int> frontier{0};
    for (int layer = 0; layer < radius; ++layer) {
      std::vector<int> next;
      for (int vi : frontier) {
        Word v = b.vertices_[static_cast<std::size_t>(vi)];
        for (int key = 0; key < 2 * p.rank(); ++key) {
          Word cand = p.canonical_form(
              multiply(v, Word::generator(letter_from_key(key), p.rank())));
          auto it = b.index_.find(cand.str());
          if (it != b.index_.end()) {
            // reached from a layer-`layer` vertex, so its distance can be
            // layer - 1 (back edge) through layer + 1
            int known = b.dist_[static_cast<std::size_t>(it->second)];
            if (std::abs(known - layer) > 1)
              throw std::logic_error("ball BFS distance inconsistency");
            continue;
          }
          if (cand.size() != layer + 1)
            throw std::logic_error(
                "normal form length disagrees with BFS layer");
          b.index_[cand.str()] = static_cast<int>(b.vertices_.size());
          next.push_back(static_cast<int>(b.vertices_.size()));
          b.vertices_.push_back(cand);
          b.dist_.push_back(layer + 1);
        }
      }
      frontier = std::move(next);
    }
    b.fill_adjacency([&](const Word& w) { return p.canonical_form(w); });
    return b;
  }

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Word>& vertices() const { return vertices_; }
  int origin_distance(int v) const { return dist_[static_cast<std::size_t>(v)]; }
  // neighbor along a generator, -1 when it leaves the ball
  int neighbor(int v, int letter_key) const {
    return adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(letter_key)];
  }

  int distance(int u, int v) const {
    if (presentation_)
      return presentation_->distance(vertices_[static_cast<std::size_t>(u)],
                                     vertices_[static_cast<std::size_t>(v)]);
    return geometry::distance(vertices_[static_cast<std::size_t>(u)],
                              vertices_[static_cast<std::size_t>(v)]);
  }

  // every edge changes the origin distance by at most one
  bool edges_consistent() const {
    for (int v = 0; v < size(); ++v)
      for (int k = 0; k < 2 * rank_; ++k) {
        int w = neighbor(v, k);
        if (w >= 0 && std::abs(origin_distance(v) - origin_distance(w)) > 1)
          return false;
      }
    return true;
  }

 private:
  static void guard_size(int rank, int radius) {
    double est = 1;
    double layer = 1;
    for (int i = 0; i < radius; ++i) {
      layer *= 2.0 * rank - (i ? 1 : 0);
      est += layer;
    }
    double mb = est * 128.0 / (1024 * 1024);
    if (mb > static_cast<double>(memory_guard_mb()))
      throw ResourceExceeded("ball of radius " + std::to_string(radius) +
                             " exceeds the memory guard");
  }

  template <class Normalize>
  void fill_adjacency(Normalize&& normal) {
    adj_.assign(vertices_.size(), std::vector<int>(2 * rank_, -1));
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      for (int key = 0; key < 2 * rank_; ++key) {
        Word n = normal(
            multiply(vertices_[v], Word::generator(letter_from_key(key), rank_)));
        auto it = index_.find(n.str());
        if (it != index_.end()) adj_[v][static_cast<std::size_t>(key)] = it->second;
      }
  }

  int rank_ = 0;
  int radius_ = 0;
  const Presentation* presentation_ = nullptr;
  std::vector<Word> vertices_;
  std::vector<int> dist_;
  std::vector<std::vector<int>> adj_;
  std::unordered_map<std::string, int> index_;
};

struct DeltaEstimate {
  bounds::Rat value{0};
  bool sampled = false;          // triangle sampling engaged
  bool geodesic_capped = false;  // some pair hit the per-pair geodesic cap
  long long triangles = 0;
};

namespace detail {

// All geodesic vertex paths u -> v through the ball, capped.
inline void geodesics_between(const BallGraph& ball,
                              const std::vector<int>& dist_to_target, int u,
                              int v, std::vector<int>& path,
                              std::vector<std::vector<int>>& out,
                              std::size_t cap) {
  if (out.size() >= cap) return;
  path.push_back(u);
  if (u == v) {
    out.push_back(path);
  } else {
    for (int key = 0; key < 2 * ball.rank(); ++key) {
      int w = ball.neighbor(u, key);
      if (w >= 0 && dist_to_target[static_cast<std::size_t>(w)] ==
                        dist_to_target[static_cast<std::size_t>(u)] - 1)
        geodesics_between(ball, dist_to_target, w, v, path, out, cap);
    }
  }
  path.pop_back();
}

}  // namespace detail

// Thin-triangle defect over geodesic triangles with vertices in the ball and
// sides realized inside it: for each corner, points at equal distances up to
// the Gromov product on the two adjacent sides must be close; the estimate
// is the max observed gap. Exhaustive when the triple count is small enough,
// otherwise seeded sampling (flagged in the result).
inline DeltaEstimate delta_estimate(const BallGraph& ball,
                                    long long max_triples = 2000000,
                                    std::size_t geodesic_cap = 64,
                                    std::uint64_t seed = 1) {
  const int n = ball.size();
  // distance matrix
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n), 0));
  if (static_cast<double>(n) * n * 4 >
      static_cast<double>(memory_guard_mb()) * 1024 * 1024)
    throw ResourceExceeded("distance matrix exceeds the memory guard");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              ball.distance(i, j);

  DeltaEstimate est;
  long long total = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
  est.sampled = total > max_triples;
  std::mt19937_64 rng(seed);

  auto scan_triangle = [&](int a, int b, int c) {
    ++est.triangles;
    int corners[3] = {a, b, c};
    // geodesic sets per unordered pair
    std::vector<std::vector<int>> sides[3];
    int pair_u[3] = {a, a, b};
    int pair_v[3] = {b, c, c};
    for (int s = 0; s < 3; ++s) {
      const std::vector<int>& dt = d[static_cast<std::size_t>(pair_v[s])];
      std::vector<int> path;
      detail::geodesics_between(ball, dt, pair_u[s], pair_v[s], path,
                                sides[s], geodesic_cap);
      if (sides[s].size() >= geodesic_cap) est.geodesic_capped = true;
      if (sides[s].empty()) return;  // side not realizable inside the ball
    }
    auto dd = [&](int x, int y) {
      return d[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    };
    // iterate over one chosen geodesic combination per side set; thinness
    // quantifies over all, so scan every combination up to the cap
    for (const auto& ab : sides[0])
      for (const auto& ac : sides[1])
        for (const auto& bc : sides[2]) {
          const std::vector<int>* from[3][2] = {
              {&ab, &ac}, {&ab, &bc}, {&ac, &bc}};
          for (int ci = 0; ci < 3; ++ci) {
            int corner = corners[ci];
            const std::vector<int>& s1 = *from[ci][0];
            const std::vector<int>& s2 = *from[ci][1];
            // orient both sides to start at the corner
            auto at = [&](const std::vector<int>& side, int idx) {
              return side.front() == corner ? side[static_cast<std::size_t>(idx)]
                                            : side[side.size() - 1 -
                                                   static_cast<std::size_t>(idx)];
            };
            int other1 = ci == 0 ? b : (ci == 1 ? a : a);
            int other2 = ci == 0 ? c : (ci == 1 ? c : b);
            int gp2 = dd(corner, other1) + dd(corner, other2) -
                      dd(other1, other2);  // twice the Gromov product
            int reach = std::min(gp2 / 2, static_cast<int>(
                                              std::min(s1.size(), s2.size()) - 1));
            for (int l = 0; l <= reach; ++l) {
              int gap = dd(at(s1, l), at(s2, l));
              if (bounds::Rat(gap) > est.value) est.value = bounds::Rat(gap);
            }
          }
        }
  };

  if (!est.sampled) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) scan_triangle(a, b, c);
  } else {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (long long i = 0; i < max_triples; ++i) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) continue;
      scan_triangle(a, b, c);
    }
  }
  return est;
}

}  // namespace uniconj::geometry
