#include <doctest.h>

#include <bit>
#include <cstdlib>
#include <set>
#include <vector>

#include "smis/rng.hpp"

using namespace smis;

TEST_CASE("identical inputs give identical streams") {
  auto a = derive_rng(42, 7, StreamTag::Tape);
  auto b = derive_rng(42, 7, StreamTag::Tape);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("stream draws are indexable") {
  auto s = derive_rng(3, 1, StreamTag::Luby);
  const auto copy = s;
  for (std::uint64_t i = 0; i < 50; ++i) CHECK(s.next() == copy.at(i));
}

TEST_CASE("node streams are distinct") {
  // 10^4 adjacent node pairs; a shared first draw would mean correlated streams.
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    std::set<std::uint64_t> first;
    for (NodeId v = 0; v <= 10000; ++v) first.insert(derive_rng(seed, v, StreamTag::Tape).at(0));
    CHECK(first.size() == 10001);
  }
}

TEST_CASE("seeds and tags separate streams") {
  std::size_t equal_seed = 0, equal_tag = 0;
  for (NodeId v = 0; v < 10000; ++v) {
    equal_seed += derive_rng(5, v, StreamTag::Rank).at(0) == derive_rng(6, v, StreamTag::Rank).at(0);
    equal_tag += derive_rng(5, v, StreamTag::Rank).at(0) == derive_rng(5, v, StreamTag::Tape).at(0);
  }
  CHECK(equal_seed == 0);
  CHECK(equal_tag == 0);
}

TEST_CASE("uniform_below stays in range and covers it") {
  auto s = derive_rng(1, 0, StreamTag::Rank);
  std::vector<int> hist(7);
  for (int i = 0; i < 70000; ++i) {
    const auto x = s.uniform_below(7);
    REQUIRE(x < 7);
    ++hist[x];
  }
  // Each bucket expects 10000 with SD about 93.
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(s.uniform_below(1) == 0);
}

TEST_CASE("tape bits are balanced") {
  // 64 * 2000 fair bits: mean 64000, SD about 179.
  std::uint64_t ones = 0;
  for (NodeId v = 0; v < 2000; ++v) ones += std::popcount(derive_rng(9, v, StreamTag::Tape).at(0));
  CHECK(ones > 64000 - 900);
  CHECK(ones < 64000 + 900);
}

TEST_CASE("bernoulli boundaries") {
  CHECK_FALSE(bernoulli(0, 0.0));
  CHECK_FALSE(bernoulli(~0ULL, 0.0));
  CHECK(bernoulli(0, 1.0));
  CHECK(bernoulli(~0ULL, 1.0));
  CHECK(bernoulli(0, 0.5));
  CHECK_FALSE(bernoulli(~0ULL, 0.5));
}

TEST_CASE("unit draws lie in [0,1)") {
  auto s = derive_rng(11, 2, StreamTag::Graph);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
