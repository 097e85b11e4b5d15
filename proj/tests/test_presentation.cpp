#include <catch2/catch_amalgamated.hpp>

#include "uniconj/presentation.hpp"

using namespace uniconj;
using namespace uniconj::geometry;

TEST_CASE("small cancellation ratio") {
  Presentation g2 = Presentation::genus2_surface();
  CHECK(g2.cancellation_ratio() == bounds::Rat(1, 8));
  CHECK(g2.is_c_sixth());

  // proper-power relator: coinciding rotations are full-length pieces
  Presentation z6(2, {Word::parse("aaaaaa", 2)});
  CHECK(z6.cancellation_ratio() == 1);
  CHECK_FALSE(z6.is_c_sixth());
  CHECK_THROWS_AS(z6.dehn_normal_form(Word::parse("a", 2)),
                  std::invalid_argument);

  // commutator relator (torus): ratio 1/4
  Presentation torus(2, {Word::parse("abAB", 2)});
  CHECK(torus.cancellation_ratio() == bounds::Rat(1, 4));
  CHECK_FALSE(torus.is_c_sixth());
}

TEST_CASE("dehn normal form on the surface group") {
  Presentation p = Presentation::genus2_surface();
  Word rel = Word::parse("abABcdCD", 4);
  CHECK(p.dehn_normal_form(rel).empty());
  CHECK(p.dehn_normal_form(Word::parse("a", 4)) == Word::parse("a", 4));

  // every cyclic permutation of the relator and of its inverse is trivial
  for (const Word& base : {rel, rel.inverse()}) {
    const auto& L = base.letters();
    for (std::size_t k = 0; k < L.size(); ++k) {
      std::vector<Letter> rot(L.begin() + static_cast<long>(k), L.end());
      rot.insert(rot.end(), L.begin(), L.begin() + static_cast<long>(k));
      CHECK(p.dehn_normal_form(Word::from_reduced(rot, 4)).empty());
    }
  }

  // length-nonincreasing and idempotent
  std::mt19937_64 rng(71);
  for (int i = 0; i < 300; ++i) {
    std::vector<Letter> ls;
    int len = static_cast<int>(rng() % 12);
    while (static_cast<int>(ls.size()) < len) {
      Letter l = letter_from_key(static_cast<int>(rng() % 8));
      if (!ls.empty() && ls.back() == -l) continue;
      ls.push_back(l);
    }
    Word w = Word::from_reduced(std::move(ls), 4);
    Word n1 = p.dehn_normal_form(w);
    CHECK(n1.size() <= w.size());
    CHECK(p.dehn_normal_form(n1) == n1);
    CHECK(p.equal(w, n1));
  }
}

TEST_CASE("presentation parsing") {
  Presentation p = Presentation::parse("4\nabABcdCD\n");
  CHECK(p.rank() == 4);
  CHECK(p.relators().size() == 1);
  CHECK(p.cancellation_ratio() == bounds::Rat(1, 8));
}

TEST_CASE("free ball counts and delta") {
  for (int r = 1; r <= 3; ++r) {
    BallGraph ball = BallGraph::free_ball(2, r);
    CHECK(static_cast<std::uint64_t>(ball.size()) ==
          reduced_word_count_up_to(2, r) + 1);
    CHECK(ball.edges_consistent());
    DeltaEstimate est = delta_estimate(ball);
    CHECK_FALSE(est.sampled);
    CHECK(est.value == 0);
  }
}

TEST_CASE("surface ball layers and identifications") {
  Presentation p = Presentation::genus2_surface();
  BallGraph b2 = BallGraph::presented_ball(p, 2);
  // no relator of length 8 is visible at radius 2: free-like counts
  CHECK(b2.size() == 1 + 8 + 8 * 7);
  CHECK(b2.edges_consistent());

  BallGraph b3 = BallGraph::presented_ball(p, 3);
  CHECK(b3.size() == 1 + 8 + 56 + 56 * 7);
  CHECK(b3.edges_consistent());

  // distinct canonical keys really are distinct group elements
  for (int i = 0; i < b3.size(); ++i)
    for (int j = i + 1; j < b3.size(); ++j) {
      if (b3.origin_distance(i) != b3.origin_distance(j)) continue;
      if (b3.origin_distance(i) < 3) {
        REQUIRE_FALSE(
            p.equal(b3.vertices()[static_cast<std::size_t>(i)],
                    b3.vertices()[static_cast<std::size_t>(j)]));
      }
    }

  // normal-form length agrees with the BFS layer by construction; spot-check
  // the metric against definitions
  CHECK(p.distance(Word::parse("a", 4), Word::parse("ab", 4)) == 1);
  CHECK(p.distance(Word::parse("abABc", 4), Word::parse("abABc", 4)) == 0);
  // the relator makes a 5-letter prefix equal to a 3-letter complement
  CHECK(p.dehn_normal_form(Word::parse("abABc", 4)).size() == 3);
}

TEST_CASE("surface ball radius 4 has identifications") {
  Presentation p = Presentation::genus2_surface();
  BallGraph b4 = BallGraph::presented_ball(p, 4);
  // strictly fewer vertices than the free ball on 4 generators
  CHECK(b4.size() < 1 + 8 + 56 + 392 + 392 * 7);
  CHECK(b4.size() > 1 + 8 + 56 + 392);
  CHECK(b4.edges_consistent());
  // frozen: the octagon halves meet at distance 4
  CHECK(b4.size() == 3193);
}

TEST_CASE("surface ball delta estimate") {
  Presentation p = Presentation::genus2_surface();
  // radius 3 sees no relator yet: no defect found
  BallGraph b3 = BallGraph::presented_ball(p, 3);
  DeltaEstimate e3 = delta_estimate(b3, 400000, 16, 7);
  CHECK(e3.value == 0);

  // radius 4: curvature shows; seeded sampled scan, frozen regression value
  BallGraph b4 = BallGraph::presented_ball(p, 4);
  DeltaEstimate e4 = delta_estimate(b4, 30000, 8, 7);
  CHECK(e4.sampled);
  CHECK(e4.value == bounds::Rat(4));
}
