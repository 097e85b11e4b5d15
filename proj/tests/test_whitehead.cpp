#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "uniconj/random.hpp"
#include "uniconj/whitehead.hpp"

using namespace uniconj;
using namespace uniconj::whitehead;

namespace {

std::vector<CyclicWord> cyc(std::initializer_list<const char*> words,
                            int rank = 2) {
  std::vector<CyclicWord> out;
  for (const char* w : words) out.push_back(cyclic_reduce(Word::parse(w, rank)));
  return out;
}

// Independent oracle: BFS over automorphism images of the tuple with a core
// length cap, returning the least total length seen.
int orbit_min_oracle(const std::vector<CyclicWord>& tuple, int rank,
                     int cap) {
  auto auts = all_whitehead_auts(rank);
  std::set<std::string> seen;
  std::vector<std::vector<CyclicWord>> frontier{tuple};
  auto key = [](const std::vector<CyclicWord>& t) {
    std::string k;
    for (const auto& c : t) {
      k += c.core.str();
      k.push_back('|');
    }
    return k;
  };
  seen.insert(key(tuple));
  int best = 0;
  for (const auto& c : tuple) best += c.core.size();
  while (!frontier.empty()) {
    std::vector<std::vector<CyclicWord>> next;
    for (const auto& t : frontier) {
      for (const auto& a : auts) {
        std::vector<CyclicWord> img;
        int total = 0;
        bool ok = true;
        for (const auto& c : t) {
          CyclicWord ic = cyclic_reduce(a.apply(c.core));
          total += ic.core.size();
          if (ic.core.size() > cap) {
            ok = false;
            break;
          }
          img.push_back(std::move(ic));
        }
        if (!ok) continue;
        if (seen.insert(key(img)).second) {
          best = std::min(best, total);
          next.push_back(std::move(img));
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace

TEST_CASE("whitehead aut enumeration counts") {
  auto r1 = all_whitehead_auts(1);
  CHECK(r1.size() == 2);  // identity and inversion, no nontrivial type II
  CHECK(whitehead_count_formula(1) == 2);

  auto r2 = all_whitehead_auts(2);
  int type1 = 0, type2 = 0;
  for (const auto& a : r2)
    (a.kind() == WhiteheadAut::Kind::type1 ? type1 : type2)++;
  CHECK(type1 == 8);
  CHECK(type2 == 12);
  CHECK(r2.size() == whitehead_count_formula(2));

  CHECK(all_whitehead_auts(3).size() == whitehead_count_formula(3));
  CHECK_THROWS_AS(all_whitehead_auts(7), std::invalid_argument);
}

TEST_CASE("whitehead aut action") {
  auto swap_ab = WhiteheadAut::type1({2, 1}, 2);
  CHECK(swap_ab.apply(Word::parse("ab", 2)).str() == "ba");

  auto invert_a = WhiteheadAut::type1({-1, 2}, 2);
  CHECK(invert_a.apply(Word::parse("a", 2)).str() == "A");

  // multiplier a, set {a, b}: b -> ba
  std::uint32_t mask = (1u << letter_key(1)) | (1u << letter_key(2));
  auto t2 = WhiteheadAut::type2(1, mask, 2);
  CHECK(t2.apply(Word::parse("b", 2)).str() == "ba");
  CHECK(t2.apply(Word::parse("a", 2)).str() == "a");

  // inverse round trip across every automorphism, random words
  std::mt19937_64 rng(404);
  auto auts = all_whitehead_auts(2);
  for (int i = 0; i < 500; ++i) {
    Word w = rnd::reduced_word_up_to(rng, 2, 10);
    for (const auto& a : auts) {
      CHECK(a.inverse().apply(a.apply(w)) == w);
      CHECK(a.apply(a.inverse().apply(w)) == w);
    }
  }
  // homomorphic: aut(uv) = aut(u) aut(v)
  for (int i = 0; i < 300; ++i) {
    Word u = rnd::reduced_word_up_to(rng, 2, 6);
    Word v = rnd::reduced_word_up_to(rng, 2, 6);
    const auto& a = auts[rng() % auts.size()];
    CHECK(a.apply(multiply(u, v)) == multiply(a.apply(u), a.apply(v)));
  }
}

TEST_CASE("minimize") {
  MinimizeResult r = minimize(cyc({"aab"}), 2);
  CHECK(r.total == 1);
  CHECK(orbit_min_oracle(cyc({"aab"}), 2, 3) == 1);

  r = minimize(cyc({"abAB"}), 2);
  CHECK(r.total == 4);
  CHECK(orbit_min_oracle(cyc({"abAB"}), 2, 4) == 4);

  r = minimize(cyc({"a"}), 2);
  CHECK(r.total == 1);
  CHECK(r.sequence.empty());

  // replay determinism and never-increasing totals
  std::mt19937_64 rng(505);
  for (int i = 0; i < 100; ++i) {
    auto tuple = cyc({}, 2);
    int n = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < n; ++j)
      tuple.push_back(cyclic_reduce(rnd::reduced_word_up_to(rng, 2, 5, 1)));
    MinimizeResult a = minimize(tuple, 2);
    MinimizeResult b = minimize(tuple, 2);
    CHECK(a.total == b.total);
    REQUIRE(a.sequence.size() == b.sequence.size());
    // replaying the sequence reproduces the minimal tuple
    std::vector<CyclicWord> replay = tuple;
    for (const auto& aut : a.sequence) {
      std::vector<CyclicWord> nxt;
      for (const auto& c : replay) nxt.push_back(cyclic_reduce(aut.apply(c.core)));
      replay = std::move(nxt);
    }
    for (std::size_t j = 0; j < replay.size(); ++j)
      CHECK(replay[j].core == a.tuple[j].core);
  }
}

TEST_CASE("minimize reaches the oracle minimum on short words") {
  for_each_reduced_word(2, 1, 4, [&](const Word& w) {
    auto tuple = std::vector<CyclicWord>{cyclic_reduce(w)};
    if (tuple[0].core.size() != w.size()) return true;  // skip non-cyclic
    MinimizeResult r = minimize(tuple, 2);
    CHECK(r.total == orbit_min_oracle(tuple, 2, w.size()));
    return true;
  });
}

TEST_CASE("classical orbit decision") {
  auto yes = orbit_decide_classical(cyc({"a"}), cyc({"b"}), 2);
  REQUIRE(yes.has_value());

  CHECK_FALSE(
      orbit_decide_classical(cyc({"abAB"}), cyc({"aabb"}), 2).has_value());

  auto eq = orbit_decide_classical(cyc({"ab"}), cyc({"ba"}), 2);
  REQUIRE(eq.has_value());
  CHECK(eq->empty());

  // symmetry and conjugation invariance on seeded pairs
  std::mt19937_64 rng(606);
  for (int i = 0; i < 40; ++i) {
    std::vector<CyclicWord> s, t;
    int n = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < n; ++j) {
      s.push_back(cyclic_reduce(rnd::reduced_word_up_to(rng, 2, 4, 1)));
      t.push_back(cyclic_reduce(rnd::reduced_word_up_to(rng, 2, 4, 1)));
    }
    bool st = orbit_decide_classical(s, t, 2).has_value();
    CHECK(orbit_decide_classical(t, s, 2).has_value() == st);
    std::vector<CyclicWord> s2;
    for (const auto& c : s)
      s2.push_back(
          cyclic_reduce(conjugate(c.core, rnd::reduced_word_up_to(rng, 2, 3))));
    CHECK(orbit_decide_classical(s2, t, 2).has_value() == st);
  }
}

TEST_CASE("classical orbit matches the bounded automorphism oracle") {
  std::mt19937_64 rng(707);
  int agree_yes = 0, agree_no = 0;
  for (int i = 0; i < 60; ++i) {
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
    // singleton blocks = one conjugator per element
    std::vector<std::vector<Word>> bs, bt;
    for (const Word& w : s) bs.push_back({w});
    for (const Word& w : t) bt.push_back({w});
    bool oracle = bounded_aut_search(BlockSystem(bs, 2), BlockSystem(bt, 2), 6,
                                     24)
                      .has_value();
    if (fast) {
      CHECK(oracle);
      ++agree_yes;
    } else {
      CHECK_FALSE(oracle);
      ++agree_no;
    }
  }
  CHECK(agree_yes > 0);
  CHECK(agree_no > 0);
}

TEST_CASE("mixed whitehead decision") {
  // swap the two singleton blocks
  BlockSystem u({{Word::parse("a", 2)}, {Word::parse("b", 2)}}, 2);
  BlockSystem v({{Word::parse("b", 2)}, {Word::parse("a", 2)}}, 2);
  auto cert = mixed_decide_uniform_C(u, v, 2);
  REQUIRE(cert.has_value());
  CHECK_FALSE(cert->via_fallback);

  // a and a^-1 are not conjugate: no automorphism fixes the forced pair
  BlockSystem u2({{Word::parse("a", 2), Word::parse("a", 2)}}, 2);
  BlockSystem v2({{Word::parse("a", 2), Word::parse("A", 2)}}, 2);
  CHECK_FALSE(mixed_decide_uniform_C(u2, v2, 2).has_value());

  // exact/McCool identity instance through the single-block case
  auto psi = exact_decide({Word::parse("ab", 2), Word::parse("ba", 2)},
                          {Word::parse("ab", 2), Word::parse("ba", 2)}, 2, 2);
  REQUIRE(psi.has_value());

  // an exact instance needing a genuine automorphism and conjugator
  auto tau = exact_decide({Word::parse("a", 2)}, {Word::parse("bAB", 2)}, 2, 2);
  REQUIRE(tau.has_value());
  CHECK(tau->apply(Word::parse("a", 2)) == Word::parse("bAB", 2));

  // shape mismatch is an input error
  CHECK_THROWS_AS(mixed_decide_uniform_C(u, v2, 2), std::invalid_argument);
}

TEST_CASE("mixed decision agrees with the direct search on seeded systems") {
  std::mt19937_64 rng(808);
  int yes = 0, no = 0, fallbacks = 0;
  for (int i = 0; i < 40; ++i) {
    int nblocks = 1 + static_cast<int>(rng() % 2);
    auto make = [&](bool related, const BlockSystem* base) {
      std::vector<std::vector<Word>> blocks;
      for (int b = 0; b < nblocks; ++b) {
        int m = 1 + static_cast<int>(rng() % 2);
        std::vector<Word> blk;
        for (int j = 0; j < m; ++j)
          blk.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
        blocks.push_back(blk);
      }
      (void)related;
      (void)base;
      return BlockSystem(blocks, 2);
    };
    BlockSystem u = make(false, nullptr);
    BlockSystem v = u;
    if (rng() % 2 == 0) {
      // genuinely related: apply a short automorphism word and per-block
      // conjugators
      auto auts = all_whitehead_auts(2);
      std::vector<std::vector<Word>> blocks;
      for (const auto& blk : u.blocks) {
        std::vector<Word> nb;
        Word z = rnd::reduced_word_up_to(rng, 2, 2);
        for (const Word& w : blk) {
          Word img = w;
          for (int d = 0; d < 3; ++d) img = auts[(i + d) % auts.size()].apply(img);
          nb.push_back(conjugate(img, z));
        }
        blocks.push_back(nb);
      }
      v = BlockSystem(blocks, 2);
    } else {
      std::vector<std::vector<Word>> blocks;
      for (const auto& blk : u.blocks) {
        std::vector<Word> nb;
        for (std::size_t j = 0; j < blk.size(); ++j)
          nb.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
        blocks.push_back(nb);
      }
      v = BlockSystem(blocks, 2);
    }
    auto mixed = mixed_decide_uniform_C(u, v, 3);
    auto oracle = bounded_aut_search(u, v, 6, 24);
    CHECK(mixed.has_value() == oracle.has_value());
    if (mixed) {
      ++yes;
      if (mixed->via_fallback) ++fallbacks;
      // certificate re-verifies
      for (std::size_t b = 0; b < u.blocks.size(); ++b)
        for (std::size_t j = 0; j < u.blocks[b].size(); ++j)
          CHECK(conjugate(v.blocks[b][j], mixed->conjugators[b]) ==
                mixed->aut.apply(u.blocks[b][j]));
    } else {
      ++no;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
  INFO("fallbacks used: " << fallbacks);
}

TEST_CASE("inner check") {
  // conjugation by ab
  Endomorphism phi({Word::parse("Bab", 2), Word::parse("BAbab", 2)}, 2);
  auto z = inner_check(phi);
  REQUIRE(z.has_value());
  CHECK(z->str() == "ab");

  auto id = inner_check(Endomorphism::identity(2));
  REQUIRE(id.has_value());
  CHECK(id->empty());

  // b -> b^2 is not even pointwise inner
  Endomorphism sq({Word::parse("a", 2), Word::parse("bb", 2)}, 2);
  CHECK_FALSE(inner_check(sq).has_value());
}

TEST_CASE("pointwise inner on a ball") {
  Endomorphism phi({Word::parse("Bab", 2), Word::parse("BAbab", 2)}, 2);
  auto verdict = pointwise_inner_on_ball(phi, 3);
  CHECK(verdict.all_conjugate);

  Endomorphism sq({Word::parse("a", 2), Word::parse("bb", 2)}, 2);
  verdict = pointwise_inner_on_ball(sq, 1);
  REQUIRE_FALSE(verdict.all_conjugate);
  CHECK(verdict.witness->str() == "b");

  // the transvection b -> ba fails already on the generator ball
  Endomorphism tr({Word::parse("a", 2), Word::parse("ba", 2)}, 2);
  verdict = pointwise_inner_on_ball(tr, 1);
  REQUIRE_FALSE(verdict.all_conjugate);
  CHECK(verdict.witness->str() == "b");

  // inner implies all-conjugate at every tested radius
  std::mt19937_64 rng(909);
  for (int i = 0; i < 10; ++i) {
    Word zz = rnd::reduced_word_up_to(rng, 2, 3);
    Endomorphism inner({conjugate(Word::parse("a", 2), zz),
                        conjugate(Word::parse("b", 2), zz)},
                       2);
    CHECK(pointwise_inner_on_ball(inner, 3).all_conjugate);
  }
}

TEST_CASE("mixed decision is invariant under per-block uniform conjugation") {
  std::mt19937_64 rng(1001);
  for (int i = 0; i < 15; ++i) {
    std::vector<std::vector<Word>> lu, lv;
    int nblocks = 1 + static_cast<int>(rng() % 2);
    for (int b = 0; b < nblocks; ++b) {
      int m = 1 + static_cast<int>(rng() % 2);
      std::vector<Word> bu, bv;
      for (int j = 0; j < m; ++j) {
        bu.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
        bv.push_back(rnd::reduced_word_up_to(rng, 2, 3, 1));
      }
      lu.push_back(bu);
      lv.push_back(bv);
    }
    BlockSystem u(lu, 2), v(lv, 2);
    bool base = mixed_decide_uniform_C(u, v, 2).has_value();
    // conjugating each right block uniformly changes nothing
    std::vector<std::vector<Word>> shifted;
    for (const auto& blk : v.blocks) {
      Word z = rnd::reduced_word_up_to(rng, 2, 2);
      std::vector<Word> nb;
      for (const Word& w : blk) nb.push_back(conjugate(w, z));
      shifted.push_back(nb);
    }
    CHECK(mixed_decide_uniform_C(u, BlockSystem(shifted, 2), 2).has_value() ==
          base);
  }
}
