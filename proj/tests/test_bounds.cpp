#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uniconj/bounds.hpp"
#include "uniconj/word.hpp"

using namespace uniconj;
using namespace uniconj::bounds;

TEST_CASE("rational helpers") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_ceil(Rat(-7, 2)) == -3);
  CHECK(parse_rat("3/2") == Rat(3, 2));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(rat_str(Rat(3, 2)) == "3/2");
  CHECK(rat_str(Rat(4)) == "4");
}

TEST_CASE("ball size bound formula") {
  BoundContext f2(Rat(0), 2);
  CHECK(ball_size_bound(f2, 1).v == 6);
  CHECK(ball_size_bound(f2, 2).v == 18);
  BoundContext f5(Rat(0), 5);
  CHECK(ball_size_bound(f5, 0).v == 2);
  // saturation beyond the exponent guard
  BoundContext small(Rat(0), 2);
  small.set_max_ball_exponent(10);
  CHECK(ball_size_bound(small, 11).sat);
  CHECK_FALSE(ball_size_bound(small, 10).sat);
}

TEST_CASE("tree specializations at length 1") {
  BoundContext ctx(Rat(0), 2);
  CHECK(mu(ctx, 1).v == 0);
  CHECK(r_const(ctx, 1).v == 0);
  CHECK(f1(ctx, 1).v == 0);
  CHECK(f2(ctx, 1).v == 0);
  CHECK(hbar(ctx, 1).v == 1);
  CHECK(cancellation_c(ctx, CancellationMode::easy1, 1).v == 0);
  CHECK(cancellation_c(ctx, CancellationMode::circ, 1, 2LL).v == 3);
}

TEST_CASE("paper identities hold symbolically") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    Rat delta(static_cast<long>(rng() % 5), static_cast<long>(1 + rng() % 3));
    int sharp = 2 + static_cast<int>(rng() % 4);
    long long n = 1 + static_cast<long long>(rng() % 12);
    BoundContext ctx(delta, sharp);
    Bound r = r_const(ctx, n), m = mu(ctx, n);
    CHECK(f1(ctx, n) == from_int(4) * r);
    CHECK(f2(ctx, n) == from_int(2) * r + from_int(2) * m);
    Bound h = hbar(ctx, n);
    Bound expect = f1(ctx, n) / Frac(2) + f2(ctx, n) / Frac(2) +
                   from_int(2) * r + from_rat(Rat(21) * delta) + from_int(1);
    CHECK(h == expect);
    // delta=0 algebraic collapse: hbar = 5r + mu + 1
    if (delta == 0) CHECK(h == from_int(5) * r + m + from_int(1));
    // circ dominates easy1
    Bound easy = cancellation_c(ctx, CancellationMode::easy1, n);
    Bound circ = cancellation_c(ctx, CancellationMode::circ, n,
                                static_cast<long long>(rng() % 6));
    CHECK(easy <= circ);
  }
}

TEST_CASE("quasigeodesic params branches") {
  BoundContext tree(Rat(0), 2);
  auto p = quasigeodesic_params(tree, 4);
  CHECK(p.lambda.v == 1);
  CHECK(p.epsilon.v == 4);
  p = quasigeodesic_params(tree, 1);
  CHECK(p.epsilon.v == 0);

  BoundContext gen(Rat(1, 2), 2);  // 8 delta = 4
  p = quasigeodesic_params(gen, 5);
  CHECK(p.lambda.v == 15);  // 3k
  CHECK(p.epsilon.v == 1);  // 2 delta
}

TEST_CASE("tree values never exceed the general formulas") {
  BoundContext ctx(Rat(0), 2);
  for (long long n = 1; n <= 10; ++n) {
    CHECK(mu(ctx, n) <= mu_general(ctx, n));
    CHECK(r_const(ctx, n) <= r_const_general(ctx, n));
  }
}

TEST_CASE("monotonicity on sampled grids") {
  // sample within a single quasi-geodesic branch: delta = 0 everywhere, and
  // a small positive delta with lengths > 8 delta
  BoundContext c0(Rat(0), 2), c1(Rat(0), 3), c2(Rat(1, 100), 2),
      c3(Rat(1, 9), 3);
  for (const BoundContext* pctx : {&c0, &c1, &c2, &c3}) {
    const BoundContext& ctx = *pctx;
    for (long long n = 1; n < 8; ++n) {
      CHECK(mu(ctx, n) <= mu(ctx, n + 1));
      CHECK(r_const(ctx, n) <= r_const(ctx, n + 1));
      CHECK(f1(ctx, n) <= f1(ctx, n + 1));
      CHECK(f2(ctx, n) <= f2(ctx, n + 1));
      CHECK(hbar(ctx, n) <= hbar(ctx, n + 1));
      CHECK(C_cyclic(ctx, n) <= C_cyclic(ctx, n + 1));
      CHECK(M_const(ctx, n, 3LL) <= M_const(ctx, n + 1, 3LL));
      CHECK(M_const(ctx, n, 3LL) <= M_const(ctx, n, 4LL));
    }
    CHECK(C_main(ctx, 2, 2) <= C_main(ctx, 3, 2));
  }
}

TEST_CASE("M assembly at the smallest tree case") {
  BoundContext ctx(Rat(0), 2);
  MConstParts parts = M_const_parts(ctx, 1, from_int(2));
  // frozen regression of the assembled chain: c=3, f=6, k0=13, rho=84
  CHECK(parts.k0.v == 13);
  CHECK(parts.rho.v == 84);
  CHECK(parts.m.v == 183);
}

TEST_CASE("tree cor_length_f bound is valid on words") {
  std::mt19937_64 rng(202);
  BoundContext ctx(Rat(0), 2);
  auto random_reduced = [&](int len) {
    std::vector<Letter> ls;
    while (static_cast<int>(ls.size()) < len) {
      Letter l = letter_from_key(static_cast<int>(rng() % 4));
      if (!ls.empty() && ls.back() == -l) continue;
      ls.push_back(l);
    }
    return Word::from_reduced(std::move(ls), 2);
  };
  for (int i = 0; i < 3000; ++i) {
    Word g = random_reduced(1 + static_cast<int>(rng() % 5));
    Word v = random_reduced(static_cast<int>(rng() % 5));
    int p = static_cast<int>(rng() % 7);
    int q = static_cast<int>(rng() % 7);
    Word lhs = multiply(pow(g, p), multiply(v, pow(g, q)));
    Bound f = cor_length_f(ctx, g.size(), from_int(v.size()));
    CHECK(Frac(lhs.size()) > Frac(pow(g, p + q).size()) - f.v);
  }
}

TEST_CASE("overrides flow through dependents") {
  BoundContext plain(Rat(0), 2);
  BoundContext tweaked(Rat(0), 2, {{"hbar", Rat(2)}});
  CHECK(hbar(tweaked, 5).v == Frac(2));
  // N = #B(hbar) changes, so L_two changes
  LTwoParts a = L_two_parts(plain, 1, 1);
  LTwoParts b = L_two_parts(tweaked, 1, 1);
  CHECK(a.n_ball.v == Frac(6));
  CHECK(b.n_ball.v == Frac(18));
  CHECK_FALSE(a.value == b.value);
  // and an M override short-circuits the assembly
  BoundContext withm(Rat(0), 2, {{"M", Rat(7)}});
  CHECK(M_const(withm, 3, 100LL).v == Frac(7));
}

TEST_CASE("minasyan k0 requires override away from the tree") {
  BoundContext tree(Rat(0), 2);
  CHECK(minasyan_k0(tree, from_int(1), from_int(1)).v == Frac(4));
  BoundContext gen(Rat(1), 2);
  CHECK_THROWS_AS(minasyan_k0(gen, from_int(1), from_int(1)),
                  std::invalid_argument);
  BoundContext genov(Rat(1), 2, {{"minasyan_k0", Rat(9)}});
  CHECK(minasyan_k0(genov, from_int(1), from_int(1)).v == Frac(9));
}

TEST_CASE("C_inner at delta 0, rank 2 materializes") {
  BoundContext ctx(Rat(0), 2);
  Bound c = C_inner(ctx);
  REQUIRE_FALSE(c.sat);
  CHECK(c.v >= Frac(1));
  CHECK(c.v.is_integer());
  // astronomically large but explicit
  CHECK(c.v.floor() > boost::multiprecision::pow(BigInt(10), 1000));
}

TEST_CASE("trace records the formula tree") {
  BoundContext ctx(Rat(0), 2);
  Trace t{"hbar", "n=1", "", "", {}};
  hbar(ctx, 1, &t);
  CHECK(t.value == "1");
  REQUIRE(t.children.size() >= 3);
  CHECK(t.children[0].name == "f1");
  CHECK_FALSE(t.formula.empty());
}
