#pragma once

// Metric-space layer over the word metric: c-product calculus, norms and
// axes, thin-polygon checkers, and the cancellation decompositions. The
// checkers evaluate their inequalities exactly (integer word lengths against
// rational constants); precondition violations are reported distinctly from
// inequality failures.

#include <optional>
#include <vector>

#include "uniconj/bounds.hpp"
#include "uniconj/word.hpp"

namespace uniconj::geometry {

using bounds::Rat;

enum class CheckStatus { pass, fail, precondition };

struct CheckOutcome {
  CheckStatus status;
  std::string detail;

  bool passed() const { return status == CheckStatus::pass; }
};

inline int distance(const Word& u, const Word& v) {
  return multiply(u.inverse(), v).size();
}

// Twice the cancellation in the product uv: |u| + |v| - |uv|.
inline int cancellation2(const Word& u, const Word& v) {
  return u.size() + v.size() - multiply(u, v).size();
}

// uv = u ._c v : strictly less than c cancels.
inline bool c_product_check(const Word& u, const Word& v, const Rat& c) {
  return Rat(cancellation2(u, v)) < 2 * c;
}

// Boundary-inclusive variant used when verifying decompositions whose
// source derivation only gives <=.
inline bool c_product_leq(const Word& u, const Word& v, const Rat& c) {
  return Rat(cancellation2(u, v)) <= 2 * c;
}

// |u ._c v ._c w| > |u| + |v| + |w| - (4c + 2 delta), provided both adjacent
// c-products hold and |v| > 2c + delta.
inline CheckOutcome triple_length_bound_check(const Word& u, const Word& v,
                                              const Word& w, const Rat& c,
                                              const Rat& delta) {
  if (!c_product_check(u, v, c) || !c_product_check(v, w, c))
    return {CheckStatus::precondition, "adjacent c-products do not hold"};
  if (!(Rat(v.size()) > 2 * c + delta))
    return {CheckStatus::precondition, "|v| <= 2c + delta"};
  int len = multiply(u, v, w).size();
  bool ok = Rat(len) >
            Rat(u.size() + v.size() + w.size()) - (4 * c + 2 * delta);
  return {ok ? CheckStatus::pass : CheckStatus::fail,
          ok ? "" : "length inequality fails"};
}

// |A1 An| >= sum |Ai Ai+1| - (4n-10) delta under the two chain conditions.
inline CheckOutcome chain_bound_check(const std::vector<Word>& points,
                                      const Rat& delta) {
  const int n = static_cast<int>(points.size());
  if (n < 3) return {CheckStatus::precondition, "need at least 3 points"};
  auto d = [&](int i, int j) { return distance(points[i], points[j]); };
  for (int i = 1; i + 1 < n; ++i) {  // condition (i), middle points
    if (!(Rat(d(i - 1, i + 1)) >=
          Rat(d(i - 1, i) + d(i, i + 1)) - 2 * delta))
      return {CheckStatus::precondition, "condition (i) fails"};
  }
  for (int i = 2; i + 1 < n; ++i) {  // condition (ii)
    if (!(Rat(d(i - 1, i)) > Rat(2 * n - 3) * delta))
      return {CheckStatus::precondition, "condition (ii) fails"};
  }
  long long sum = 0;
  for (int i = 0; i + 1 < n; ++i) sum += d(i, i + 1);
  bool ok = Rat(d(0, n - 1)) >= Rat(sum) - Rat(4 * n - 10) * delta;
  return {ok ? CheckStatus::pass : CheckStatus::fail,
          ok ? "" : "chain inequality fails"};
}

// |AC| + |BD| <= max{|BC| + |AD|, |AB| + |CD|} + 2 delta.
inline bool rectangle_check(const Word& a, const Word& b, const Word& c,
                            const Word& d, const Rat& delta) {
  int ac = distance(a, c), bd = distance(b, d);
  int bc = distance(b, c), ad = distance(a, d);
  int ab = distance(a, b), cd = distance(c, d);
  return Rat(ac + bd) <= Rat(std::max(bc + ad, ab + cd)) + 2 * delta;
}

// ||g|| = min displacement; at delta = 0 this is the cyclic length.
inline int norm(const Word& g) { return cyclic_length(g); }

inline bool is_on_axis(const Word& g, const Word& x) {
  return conjugate(g, x).size() == norm(g);
}

// Witness length: the exact tree mu of a concrete word (set-to-geodesic
// direction).
inline int mu_word_tree(const Word& g) {
  return cyclic_reduce(g).witness.size();
}

// |g^{s+t}| >= |g^s| + |g^t| - 2 mu.
inline bool power_defect_check(const Word& g, int s, int t, const Rat& mu) {
  if (g.empty()) throw std::invalid_argument("power_defect_check: g = 1");
  if (s < 1 || t < 1) throw std::invalid_argument("exponents must be >= 1");
  return Rat(pow(g, s + t).size()) >=
         Rat(pow(g, s).size() + pow(g, t).size()) - 2 * mu;
}

// Vertices of the axis of g within the ball of the given radius. In a tree
// the axis is the core line through the witness basepoint; both walks are
// cancellation-free, so vertex lengths grow monotonically.
struct AxisWalk {
  std::vector<Word> points;
  // index into points of the walk ends (length-clipped); everything else is
  // interior
  std::vector<bool> clipped;
};

inline AxisWalk axis_vertices(const Word& g, int radius) {
  if (g.empty()) throw std::invalid_argument("axis of the identity");
  CyclicWord c = cyclic_reduce(g);
  const auto& core = c.core.letters();
  // Distance to the origin is convex along the line, each step changes it
  // by exactly 1, so each direction is walked until the length grows past
  // the radius.
  auto collect = [&](bool fwd) {
    std::vector<Word> out;
    Word cur = c.witness;
    const std::size_t guard =
        2 * static_cast<std::size_t>(radius + g.size() + core.size()) + 8;
    for (std::size_t i = 0; i < guard; ++i) {
      Letter l = fwd ? core[i % core.size()]
                     : -core[core.size() - 1 - (i % core.size())];
      Word nxt = multiply(cur, Word::generator(l, g.rank()));
      if (nxt.size() <= radius) out.push_back(nxt);
      if (nxt.size() > radius && nxt.size() > cur.size()) break;
      cur = std::move(nxt);
    }
    return out;
  };
  std::vector<Word> forward = collect(true);
  std::vector<Word> backward = collect(false);
  AxisWalk walk;
  walk.points.reserve(forward.size() + backward.size() + 1);
  for (auto it = backward.rbegin(); it != backward.rend(); ++it)
    walk.points.push_back(std::move(*it));
  if (c.witness.size() <= radius) walk.points.push_back(c.witness);
  for (auto& p : forward) walk.points.push_back(std::move(p));
  walk.clipped.assign(walk.points.size(), false);
  if (!walk.points.empty()) {
    walk.clipped.front() = true;
    walk.clipped.back() = true;
  }
  return walk;
}

struct AxesDistanceResult {
  int distance = -1;   // min vertex distance between the axes in the ball
  bool certified = false;  // min attained away from the clipped walk ends
};

// Exact min distance between the vertex sets of the two axes intersected
// with the ball of the given radius. Distance-to-a-line is convex along a
// line in a tree, so a minimum attained at interior walk points certifies
// the global value; otherwise the radius was too small and the result says
// so rather than guessing.
inline AxesDistanceResult axes_distance(const Word& g, const Word& h,
                                        int radius) {
  if (g.empty() || h.empty())
    throw std::invalid_argument("axes_distance needs nontrivial elements");
  AxisWalk wg = axis_vertices(g, radius);
  AxisWalk wh = axis_vertices(h, radius);
  AxesDistanceResult out;
  if (wg.points.empty() || wh.points.empty()) return out;
  int best = -1;
  bool best_interior = false;
  for (std::size_t i = 0; i < wg.points.size(); ++i) {
    int row_best = -1;
    bool row_interior = false;
    for (std::size_t j = 0; j < wh.points.size(); ++j) {
      int d = distance(wg.points[i], wh.points[j]);
      if (row_best < 0 || d < row_best) {
        row_best = d;
        row_interior = !wh.clipped[j];
      } else if (d == row_best && !wh.clipped[j]) {
        row_interior = true;
      }
    }
    if (best < 0 || row_best < best) {
      best = row_best;
      best_interior = row_interior && !wg.clipped[i];
    } else if (row_best == best && row_interior && !wg.clipped[i]) {
      best_interior = true;
    }
  }
  out.distance = best;
  out.certified = best_interior || best == 0;
  return out;
}

// x with z^-1 b^k z = x^-1 b^k x for every k, where x^-1 is a shortest
// element of {z^-1 b^n}. Deterministic: smallest length, then smallest |n|,
// then positive n.
inline Word conjugate_power_decompose(const Word& z, const Word& b) {
  if (b.empty())
    throw std::invalid_argument("conjugate_power_decompose: b = 1");
  const int range = 2 * z.size() + 2;
  Word zinv = z.inverse();
  Word best = zinv;
  int best_n = 0;
  for (int n = -range; n <= range; ++n) {
    Word cand = multiply(zinv, pow(b, n));
    bool better = cand.size() < best.size() ||
                  (cand.size() == best.size() &&
                   (std::abs(n) < std::abs(best_n) ||
                    (std::abs(n) == std::abs(best_n) && n > best_n)));
    if (better) {
      best = cand;
      best_n = n;
    }
  }
  return best.inverse();
}

struct ShiftDecomposition {
  Word x;
  int l = 0;
};

// (x, l) with z^-1 w b^k z = x^-1 (b^{k-l} w b^l) x and |x| minimal over all
// such pairs; ties resolved by smallest l.
inline ShiftDecomposition conjugate_shift_decompose(const Word& z,
                                                    const Word& w,
                                                    const Word& b, int k) {
  if (b.empty())
    throw std::invalid_argument("conjugate_shift_decompose: b = 1");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  Word target = conjugate(multiply(w, pow(b, k)), z);
  std::optional<ShiftDecomposition> best;
  for (int l = 0; l <= k; ++l) {
    Word mid = multiply(pow(b, k - l), w, pow(b, l));
    if (mid.empty()) {
      if (target.empty() && !best) best = ShiftDecomposition{Word::identity(z.rank()), l};
      continue;
    }
    auto z0 = is_conjugate(mid, target);
    if (!z0) continue;
    Word root = primitive_root(mid).root;
    const int range = 2 * z0->size() / std::max(1, norm(root)) + 2;
    for (int m = -range; m <= range; ++m) {
      Word x = multiply(pow(root, m), *z0);
      if (!(conjugate(mid, x) == target)) continue;
      if (!best || x.size() < best->x.size()) best = ShiftDecomposition{x, l};
    }
  }
  if (!best) throw std::logic_error("shift decomposition must exist");
  return *best;
}

}  // namespace uniconj::geometry
