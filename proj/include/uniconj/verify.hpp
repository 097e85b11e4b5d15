#pragma once

// Seeded verification suites: the property batteries behind the `verify`
// subcommand and the acceptance gate. Every suite reports its check count,
// first failure, and runtime; randomized suites are fully determined by the
// caller's seed.

#include <chrono>
#include <functional>
#include <set>

#include "uniconj/bounds.hpp"
#include "uniconj/conjugacy.hpp"
#include "uniconj/enumerate.hpp"
#include "uniconj/geometry.hpp"
#include "uniconj/presentation.hpp"
#include "uniconj/random.hpp"
#include "uniconj/whitehead.hpp"

namespace uniconj::verify {

struct SuiteResult {
  std::string name;
  bool pass = true;
  long long checks = 0;
  long long failures = 0;
  std::string detail;
  double seconds = 0;

  void fail(const std::string& what) {
    ++failures;
    pass = false;
    if (detail.empty()) detail = what;
  }
};

namespace detail {

template <class Fn>
SuiteResult timed(const std::string& name, Fn&& body) {
  SuiteResult res;
  res.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    body(res);
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

// Exhaustive conjugator scan, independent of the solver it checks.
inline std::optional<Word> exhaustive_uniform_conjugator(
    const conjugacy::TuplePair& tp, int max_len) {
  auto works = [&](const Word& z) {
    for (int i = 0; i < tp.size(); ++i)
      if (!(conjugate(tp.left()[static_cast<std::size_t>(i)], z) ==
            tp.right()[static_cast<std::size_t>(i)]))
        return false;
    return true;
  };
  std::optional<Word> found;
  for_each_reduced_word(tp.rank(), 0, max_len, [&](const Word& z) {
    if (works(z)) {
      found = z;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace detail

// Forward direction of the tuple criterion: instances built with a uniform
// conjugator pass at every L.
inline SuiteResult criterion_forward(std::uint64_t seed, int pairs = 1000,
                                     int l_max = 4, int max_word_len = 6,
                                     int max_conj_len = 4) {
  return detail::timed("criterion-forward", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < pairs; ++i) {
      int rank = 2 + static_cast<int>(rng() % 2);
      int n = 1 + static_cast<int>(rng() % 3);
      rnd::SeededPair sp =
          rnd::uniform_pair(rng, rank, n, max_word_len, max_conj_len);
      conjugacy::TuplePair tp(sp.left, sp.right, rank);
      for (int L = 1; L <= l_max; ++L) {
        ++res.checks;
        auto out = conjugacy::word_criterion(tp, L);
        if (!out.pass)
          res.fail("criterion failed on a uniformly conjugate pair, L=" +
                   std::to_string(L));
      }
    }
  });
}

// The solver against the exhaustive conjugator scan: same yes/no answer, and
// yes-certificates verify by multiplication.
inline SuiteResult oracle_agreement(std::uint64_t seed, int instances = 500,
                                    int scan_len = 8) {
  return detail::timed("oracle-agreement", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    int done = 0;
    while (done < instances) {
      int n = 1 + static_cast<int>(rng() % 3);
      rnd::SeededPair sp = (done % 2 == 0)
                               ? rnd::uniform_pair(rng, 2, n, 6, 4)
                               : rnd::componentwise_pair(rng, 2, n, 5, 3);
      conjugacy::TuplePair tp(sp.left, sp.right, 2);
      auto fast = conjugacy::uniform_conjugator(tp);
      if (fast && fast->size() > scan_len) continue;  // outside oracle reach
      ++done;
      ++res.checks;
      auto brute = detail::exhaustive_uniform_conjugator(tp, scan_len);
      if (fast.has_value() != brute.has_value()) {
        res.fail("solver and exhaustive scan disagree");
        continue;
      }
      if (fast) {
        for (int i = 0; i < tp.size(); ++i)
          if (!(conjugate(tp.left()[static_cast<std::size_t>(i)], *fast) ==
                tp.right()[static_cast<std::size_t>(i)]))
            res.fail("yes-certificate failed verification");
      }
    }
  });
}

// The conjugated-generator family: whenever no uniform conjugator exists the
// criterion detects it at some L <= l_max, including the pinned instance
// w = bab failing at L = 2 with witness x1 x2.
inline SuiteResult nonuniform_family(int w_len = 4, int l_max = 4) {
  return detail::timed("nonuniform-family", [&](SuiteResult& res) {
    Word a = Word::parse("a", 2), b = Word::parse("b", 2);
    for_each_reduced_word(2, 0, w_len, [&](const Word& w) {
      conjugacy::TuplePair tp({a, b}, {a, conjugate(b, w)}, 2);
      auto oracle = conjugacy::uniform_conjugator(tp);
      auto brute = detail::exhaustive_uniform_conjugator(tp, 6);
      ++res.checks;
      if (oracle.has_value() != brute.has_value())
        res.fail("solver disagrees with scan at w=" + w.str());
      if (oracle) return true;
      auto rep = conjugacy::equivalence_probe(tp, l_max);
      ++res.checks;
      if (!rep.least_fail_L)
        res.fail("criterion missed the non-uniform instance w=" + w.str());
      return true;
    });
    conjugacy::TuplePair pinned({a, b},
                                {a, conjugate(b, Word::parse("bab", 2))}, 2);
    auto rep = conjugacy::equivalence_probe(pinned, l_max);
    ++res.checks;
    if (!rep.least_fail_L || *rep.least_fail_L != 2)
      res.fail("w=bab did not fail at L=2");
    auto out = conjugacy::word_criterion(pinned, 2);
    ++res.checks;
    if (out.pass || !out.witness ||
        !(out.witness->letters() == std::vector<Letter>{1, 2}))
      res.fail("w=bab witness is not x1 x2");
  });
}

// Tree-mode checker battery at delta = 0 plus the exhaustive norm and axis
// invariants.
inline SuiteResult geometry_suite(std::uint64_t seed, int samples = 10000,
                                  int exhaustive_len = 4, int power_cap = 10) {
  using namespace uniconj::geometry;
  return detail::timed("geometry-delta0", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    bounds::BoundContext ctx(bounds::Rat(0), 2);

    for (int i = 0; i < samples; ++i) {
      // rectangle inequality on arbitrary 4-tuples
      ++res.checks;
      if (!rectangle_check(rnd::reduced_word_up_to(rng, 2, 6),
                           rnd::reduced_word_up_to(rng, 2, 6),
                           rnd::reduced_word_up_to(rng, 2, 6),
                           rnd::reduced_word_up_to(rng, 2, 6), 0))
        res.fail("rectangle inequality failed at delta=0");
      // power defect with the word-exact mu
      Word g = rnd::reduced_word_up_to(rng, 2, 6, 1);
      int s = 1 + static_cast<int>(rng() % power_cap);
      int t = 1 + static_cast<int>(rng() % power_cap);
      ++res.checks;
      if (!power_defect_check(g, s, t, mu_word_tree(g)))
        res.fail("power defect failed");
    }

    // precondition-satisfying c-product triples
    int done = 0;
    while (done < samples) {
      Word u = rnd::reduced_word_up_to(rng, 2, 6, 1);
      Word v = rnd::reduced_word_up_to(rng, 2, 6, 1);
      Word w = rnd::reduced_word_up_to(rng, 2, 6, 1);
      bounds::Rat c(1 + static_cast<int>(rng() % 3));
      auto out = triple_length_bound_check(u, v, w, c, 0);
      if (out.status == CheckStatus::precondition) continue;
      ++done;
      ++res.checks;
      if (out.status == CheckStatus::fail)
        res.fail("triple length bound failed");
    }

    // aligned chains satisfy the chain inequality
    for (int i = 0; i < samples; ++i) {
      int n = 3 + static_cast<int>(rng() % 4);
      std::vector<Word> pts{rnd::reduced_word_up_to(rng, 2, 4)};
      while (static_cast<int>(pts.size()) < n) {
        Word step = rnd::reduced_word_up_to(rng, 2, 4, 1);
        Word nxt = multiply(pts.back(), step);
        if (nxt.size() != pts.back().size() + step.size()) continue;
        pts.push_back(nxt);
      }
      auto out = chain_bound_check(pts, 0);
      ++res.checks;
      if (out.status == CheckStatus::fail) res.fail("chain bound failed");
    }

    // exhaustive invariants over short elements
    std::vector<Word> shorts;
    for_each_reduced_word(2, 1, exhaustive_len, [&](const Word& w) {
      shorts.push_back(w);
      return true;
    });
    std::vector<Word> conjs;
    for_each_reduced_word(2, 0, 3, [&](const Word& w) {
      conjs.push_back(w);
      return true;
    });
    for (const Word& g : shorts) {
      for (const Word& h : conjs) {
        ++res.checks;
        if (norm(multiply(h, multiply(g, h.inverse()))) != norm(g))
          res.fail("norm is not conjugation invariant");
      }
      // axis is centralizer invariant
      Word root = primitive_root(g).root;
      for (const Word& x : axis_vertices(g, exhaustive_len + 1).points) {
        ++res.checks;
        if (!is_on_axis(g, x) || !is_on_axis(g, multiply(root, x)))
          res.fail("axis is not centralizer invariant");
      }
      // translated axis equals the axis of the conjugate inside a ball
      Word h = conjs[7 % conjs.size()];
      Word ghg = multiply(h, multiply(g, h.inverse()));
      int radius = g.size() + h.size() + 2;
      std::set<std::string> lhs, rhs;
      for (const Word& x : axis_vertices(ghg, radius).points)
        lhs.insert(x.str());
      for (const Word& x : axis_vertices(g, radius + h.size()).points) {
        Word hx = multiply(h, x);
        if (hx.size() <= radius) rhs.insert(hx.str());
      }
      ++res.checks;
      if (lhs != rhs) res.fail("translated axis mismatch for g=" + g.str());
      // norm growth: ||g^k|| >= |g^k| - 2 r(|g|)
      bounds::Frac r2 = (bounds::from_int(2) *
                         bounds::r_const(ctx, g.size()))
                            .v;
      for (int k = 1; k <= power_cap; ++k) {
        ++res.checks;
        if (bounds::Frac(norm(pow(g, k))) <
            bounds::Frac(pow(g, k).size()) - r2)
          res.fail("norm lower bound failed");
      }
      // translation quasi-additivity with f1, f2
      bounds::Frac fone = bounds::f1(ctx, g.size()).v;
      bounds::Frac ftwo = bounds::f2(ctx, g.size()).v;
      for (int s = 1; s <= power_cap; ++s)
        for (int t = 1; t <= power_cap; ++t) {
          int lhs_norm = norm(pow(g, s + t));
          int mid = norm(pow(g, s)) + norm(pow(g, t));
          ++res.checks;
          if (bounds::Frac(lhs_norm) - fone > bounds::Frac(mid) ||
              bounds::Frac(mid) > bounds::Frac(lhs_norm) + ftwo)
            res.fail("translation length bounds failed");
        }
    }
  });
}

// Exact axes-distance bound at delta = 0 over all short pairs.
inline SuiteResult axes_bound_suite(int max_len = 4) {
  using namespace uniconj::geometry;
  return detail::timed("axes-bound", [&](SuiteResult& res) {
    std::vector<Word> words;
    for_each_reduced_word(2, 1, max_len, [&](const Word& w) {
      words.push_back(w);
      return true;
    });
    for (const Word& g : words)
      for (const Word& h : words) {
        auto out = axes_distance(g, h, g.size() + h.size() + 2);
        ++res.checks;
        if (!out.certified) {
          res.fail("axes distance not certified for g=" + g.str() +
                   " h=" + h.str());
          continue;
        }
        bounds::Rat bound =
            bounds::Rat(norm(multiply(g, h)) - norm(g) - norm(h)) / 2;
        if (bound < 0) bound = 0;
        if (bounds::Rat(out.distance) > bound)
          res.fail("axes distance bound violated for g=" + g.str() +
                   " h=" + h.str());
      }
  });
}

// Cancellation decompositions re-verify by multiplication with the tree
// constants.
inline SuiteResult decomposition_suite(std::uint64_t seed,
                                       int instances = 200, int k_cap = 6) {
  using namespace uniconj::geometry;
  return detail::timed("decompositions", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    bounds::BoundContext ctx(bounds::Rat(0), 2);
    for (int i = 0; i < instances; ++i) {
      Word z = rnd::reduced_word_up_to(rng, 2, 6);
      Word w = rnd::reduced_word_up_to(rng, 2, 4);
      Word b = rnd::reduced_word_up_to(rng, 2, 4, 1);
      int k = static_cast<int>(rng() % (k_cap + 1));

      Word x = conjugate_power_decompose(z, b);
      bounds::Rat ce = bounds::cancellation_c(ctx, bounds::CancellationMode::easy1,
                                              b.size())
                           .v.to_rat();
      for (int e = -k_cap; e <= k_cap; ++e) {
        ++res.checks;
        if (!(conjugate(pow(b, e), z) == conjugate(pow(b, e), x)))
          res.fail("power decomposition equality failed");
        if (!c_product_leq(x.inverse(), pow(b, e), ce) ||
            !c_product_leq(pow(b, e), x, ce))
          res.fail("power decomposition c-product failed");
      }

      auto sd = conjugate_shift_decompose(z, w, b, k);
      Word lhs = conjugate(multiply(w, pow(b, k)), z);
      Word mid = multiply(pow(b, k - sd.l), multiply(w, pow(b, sd.l)));
      bounds::Rat cc = bounds::cancellation_c(ctx, bounds::CancellationMode::circ,
                                              b.size(),
                                              static_cast<long long>(w.size()))
                           .v.to_rat();
      ++res.checks;
      if (!(conjugate(mid, sd.x) == lhs))
        res.fail("shift decomposition equality failed");
      if (!c_product_leq(sd.x.inverse(), mid, cc) ||
          !c_product_leq(mid, sd.x, cc))
        res.fail("shift decomposition c-product failed");
    }
  });
}

// Whitehead minimization against the orbit BFS oracle, plus the classical
// decision on seeded pairs.
inline SuiteResult whitehead_suite(std::uint64_t seed, int max_len = 5,
                                   int pairs = 200) {
  using namespace uniconj::whitehead;
  return detail::timed("whitehead-orbit", [&](SuiteResult& res) {
    auto auts = all_whitehead_auts(2);
    auto oracle_min = [&](const CyclicWord& start, int cap) {
      std::set<std::string> seen{start.core.str()};
      std::vector<Word> frontier{start.core};
      int best = start.core.size();
      while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier)
          for (const auto& a : auts) {
            CyclicWord img = cyclic_reduce(a.apply(w));
            if (img.core.size() > cap) continue;
            if (seen.insert(img.core.str()).second) {
              best = std::min(best, img.core.size());
              next.push_back(img.core);
            }
          }
        frontier = std::move(next);
      }
      return best;
    };

    // every rank-2 cyclic word of length <= max_len reaches the true
    // minimum
    std::set<std::string> cores;
    for_each_reduced_word(2, 1, max_len, [&](const Word& w) {
      CyclicWord c = cyclic_reduce(w);
      if (c.core.size() != w.size()) return true;
      if (!cores.insert(c.core.str()).second) return true;
      MinimizeResult r = minimize({c}, 2);
      ++res.checks;
      if (r.total != oracle_min(c, w.size()))
        res.fail("minimize missed the orbit minimum on " + w.str());
      return true;
    });

    // pinned facts
    ++res.checks;
    if (minimize({cyclic_reduce(Word::parse("aab", 2))}, 2).total != 1)
      res.fail("minimize(aab) != 1");
    ++res.checks;
    if (orbit_decide_classical({cyclic_reduce(Word::parse("abAB", 2))},
                               {cyclic_reduce(Word::parse("aabb", 2))}, 2)
            .has_value())
      res.fail("abAB vs aabb decided yes");

    // seeded pairs against the bounded automorphism search
    std::mt19937_64 rng(seed);
    for (int i = 0; i < pairs; ++i) {
      int n = 1 + static_cast<int>(rng() % 2);
      std::vector<Word> s, t;
      for (int j = 0; j < n; ++j) {
        s.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
        t.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
      }
      std::vector<CyclicWord> cs, ct;
      for (const Word& w : s) cs.push_back(cyclic_reduce(w));
      for (const Word& w : t) ct.push_back(cyclic_reduce(w));
      bool fast = orbit_decide_classical(cs, ct, 2).has_value();
      std::vector<std::vector<Word>> bs, bt;
      for (const Word& w : s) bs.push_back({w});
      for (const Word& w : t) bt.push_back({w});
      bool oracle =
          bounded_aut_search(BlockSystem(bs, 2), BlockSystem(bt, 2), 6, 24)
              .has_value();
      ++res.checks;
      if (fast != oracle) res.fail("orbit decision disagrees with the oracle");
    }
  });
}

// Mixed decision against the bounded automorphism search on seeded block
// systems.
inline SuiteResult mixed_suite(std::uint64_t seed, int systems = 100,
                               int total_len = 8, long long C = 3,
                               int oracle_depth = 6) {
  using namespace uniconj::whitehead;
  return detail::timed("mixed-cross-validation", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    long long fallbacks = 0;
    for (int i = 0; i < systems; ++i) {
      int nblocks = 1 + static_cast<int>(rng() % 2);
      auto gen_blocks = [&]() {
        std::vector<std::vector<Word>> blocks;
        int budget = total_len;
        for (int b = 0; b < nblocks; ++b) {
          int m = 1 + static_cast<int>(rng() % 2);
          std::vector<Word> blk;
          for (int j = 0; j < m; ++j) {
            int len = 1 + static_cast<int>(rng() % 3);
            len = std::min(len, std::max(1, budget));
            budget -= len;
            blk.push_back(rnd::reduced_word(rng, 2, len));
          }
          blocks.push_back(blk);
        }
        return blocks;
      };
      BlockSystem u(gen_blocks(), 2);
      BlockSystem v = u;
      if (rng() % 2 == 0) {
        auto auts = all_whitehead_auts(2);
        std::vector<std::vector<Word>> blocks;
        for (const auto& blk : u.blocks) {
          std::vector<Word> nb;
          Word z = rnd::reduced_word_up_to(rng, 2, 2);
          for (const Word& w : blk) {
            Word img = w;
            for (int d = 0; d < 3; ++d)
              img = auts[(static_cast<std::size_t>(i) + d) % auts.size()]
                        .apply(img);
            nb.push_back(conjugate(img, z));
          }
          blocks.push_back(nb);
        }
        v = BlockSystem(blocks, 2);
      } else {
        BlockSystem w(gen_blocks(), 2);
        if (w.same_shape(u)) v = w;
      }
      auto mixed = mixed_decide_uniform_C(u, v, C);
      auto oracle = bounded_aut_search(u, v, oracle_depth, 24);
      ++res.checks;
      if (mixed.has_value() != oracle.has_value()) {
        res.fail("mixed decision disagrees with the bounded search");
        continue;
      }
      if (mixed) {
        if (mixed->via_fallback) ++fallbacks;
        for (std::size_t b = 0; b < u.blocks.size(); ++b)
          for (std::size_t j = 0; j < u.blocks[b].size(); ++j) {
            ++res.checks;
            if (!(conjugate(v.blocks[b][j], mixed->conjugators[b]) ==
                  mixed->aut.apply(u.blocks[b][j])))
              res.fail("mixed certificate failed re-verification");
          }
      }
    }
    if (fallbacks > 0)
      res.detail += " (fallback engaged on " + std::to_string(fallbacks) +
                    " instances)";
  });
}

// Inner endomorphisms: recovery of the conjugator and the pointwise scan,
// plus the pinned non-inner examples.
inline SuiteResult inner_suite(std::uint64_t seed, int count = 100,
                               int radius = 3) {
  using namespace uniconj::whitehead;
  return detail::timed("inner-endomorphisms", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
      Word z = rnd::reduced_word_up_to(rng, 2, 4);
      Endomorphism phi({conjugate(Word::parse("a", 2), z),
                        conjugate(Word::parse("b", 2), z)},
                       2);
      auto rec = inner_check(phi);
      ++res.checks;
      if (!rec)
        res.fail("inner_check missed a conjugation");
      else {
        for (int gidx = 1; gidx <= 2; ++gidx)
          if (!(conjugate(Word::generator(gidx, 2), *rec) ==
                phi.images[static_cast<std::size_t>(gidx - 1)]))
            res.fail("recovered conjugator does not certify");
      }
      ++res.checks;
      if (!pointwise_inner_on_ball(phi, radius).all_conjugate)
        res.fail("pointwise scan failed on an inner endomorphism");
    }
    Endomorphism sq({Word::parse("a", 2), Word::parse("bb", 2)}, 2);
    ++res.checks;
    auto v1 = pointwise_inner_on_ball(sq, 1);
    if (v1.all_conjugate || !v1.witness)
      res.fail("b -> b^2 has no witness at radius 1");
    Endomorphism tr({Word::parse("a", 2), Word::parse("ba", 2)}, 2);
    ++res.checks;
    auto v2 = pointwise_inner_on_ball(tr, 1);
    if (v2.all_conjugate || !v2.witness)
      res.fail("transvection has no witness at radius 1");
  });
}

// Constants engine: exact ball formula, the published identities, grid
// monotonicity, and materialization of the inner constant.
inline SuiteResult bounds_suite(std::uint64_t seed, int grids = 100) {
  using namespace uniconj::bounds;
  return detail::timed("constants-engine", [&](SuiteResult& res) {
    std::mt19937_64 rng(seed);
    BoundContext f2ctx(Rat(0), 2);
    ++res.checks;
    if (!(ball_size_bound(f2ctx, 1).v == Frac(6)) ||
        !(ball_size_bound(f2ctx, 2).v == Frac(18)))
      res.fail("ball size bound formula");
    BoundContext f5(Rat(0), 5);
    ++res.checks;
    if (!(ball_size_bound(f5, 0).v == Frac(2))) res.fail("ball at radius 0");

    for (int i = 0; i < grids; ++i) {
      Rat delta(static_cast<long>(rng() % 4), static_cast<long>(1 + rng() % 3));
      int sharp = 2 + static_cast<int>(rng() % 4);
      long long n = 1 + static_cast<long long>(rng() % 10);
      BoundContext ctx(delta, sharp);
      Bound r = r_const(ctx, n), m = mu(ctx, n);
      ++res.checks;
      if (!(f1(ctx, n) == from_int(4) * r)) res.fail("f1 identity");
      ++res.checks;
      if (!(f2(ctx, n) == from_int(2) * r + from_int(2) * m))
        res.fail("f2 identity");
      ++res.checks;
      Bound expect = f1(ctx, n) / Frac(2) + f2(ctx, n) / Frac(2) +
                     from_int(2) * r + from_rat(Rat(21) * delta) + from_int(1);
      if (!(hbar(ctx, n) == expect)) res.fail("hbar identity");
    }

    // monotone on within-branch grids
    BoundContext g1(Rat(0), 2), g2(Rat(1, 100), 3);
    for (const BoundContext* pc : {&g1, &g2}) {
      for (long long n = 1; n < 8; ++n) {
        ++res.checks;
        if (!(mu(*pc, n) <= mu(*pc, n + 1)) ||
            !(r_const(*pc, n) <= r_const(*pc, n + 1)) ||
            !(hbar(*pc, n) <= hbar(*pc, n + 1)) ||
            !(C_cyclic(*pc, n) <= C_cyclic(*pc, n + 1)) ||
            !(M_const(*pc, n, 3LL) <= M_const(*pc, n + 1, 3LL)) ||
            !(M_const(*pc, n, 3LL) <= M_const(*pc, n, 4LL)))
          res.fail("monotonicity failed at n=" + std::to_string(n));
      }
    }

    // the inner constant materializes as an explicit integer
    ++res.checks;
    Bound ci = C_inner(f2ctx);
    if (ci.sat || !ci.v.is_integer() || !(ci.v >= Frac(1)))
      res.fail("C_inner(delta=0, #S=2) did not materialize");
  });
}

// Dehn and ball backend: free balls are exactly 0-thin with exact counts;
// the surface relator and all its rotations normalize to the identity.
inline SuiteResult dehn_suite(int free_radius = 4) {
  using namespace uniconj::geometry;
  return detail::timed("dehn-ball", [&](SuiteResult& res) {
    for (int r = 1; r <= free_radius; ++r) {
      BallGraph ball = BallGraph::free_ball(2, r);
      ++res.checks;
      if (static_cast<std::uint64_t>(ball.size()) !=
          reduced_word_count_up_to(2, r) + 1)
        res.fail("free ball count mismatch at radius " + std::to_string(r));
      ++res.checks;
      if (!ball.edges_consistent()) res.fail("free ball edges inconsistent");
      DeltaEstimate est = delta_estimate(ball, 1000000);
      ++res.checks;
      if (est.sampled || !(est.value == 0))
        res.fail("free ball is not exactly 0-thin at radius " +
                 std::to_string(r));
    }
    Presentation p = Presentation::genus2_surface();
    Word rel = Word::parse("abABcdCD", 4);
    for (const Word& base : {rel, rel.inverse()}) {
      const auto& L = base.letters();
      for (std::size_t k = 0; k < L.size(); ++k) {
        std::vector<Letter> rot(L.begin() + static_cast<long>(k), L.end());
        rot.insert(rot.end(), L.begin(), L.begin() + static_cast<long>(k));
        ++res.checks;
        if (!p.dehn_normal_form(Word::from_reduced(rot, 4)).empty())
          res.fail("relator rotation did not normalize to the identity");
      }
    }
    BallGraph b2 = BallGraph::presented_ball(p, 2);
    ++res.checks;
    if (b2.size() != 65) res.fail("surface ball radius 2 count");
  });
}

inline std::vector<SuiteResult> run_suite(const std::string& which,
                                          std::uint64_t seed, int samples) {
  std::vector<SuiteResult> out;
  auto want = [&](const char* name) {
    return which == "all" || which == name;
  };
  if (want("conjugacy")) {
    out.push_back(criterion_forward(seed, std::max(1, samples / 10)));
    out.push_back(oracle_agreement(seed + 1, std::max(1, samples / 20)));
    out.push_back(nonuniform_family());
  }
  if (want("geometry")) {
    out.push_back(geometry_suite(seed, samples));
    out.push_back(axes_bound_suite());
    out.push_back(decomposition_suite(seed + 2, std::max(1, samples / 50)));
  }
  if (want("whitehead")) {
    out.push_back(whitehead_suite(seed + 3, 4, std::max(1, samples / 100)));
    out.push_back(mixed_suite(seed + 4, std::max(1, samples / 200)));
    out.push_back(inner_suite(seed + 5, std::max(1, samples / 100)));
  }
  if (want("bounds")) out.push_back(bounds_suite(seed + 6));
  if (want("dehn")) out.push_back(dehn_suite());
  if (out.empty()) throw std::invalid_argument("unknown suite: " + which);
  return out;
}

}  // namespace uniconj::verify
