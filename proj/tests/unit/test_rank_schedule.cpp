#include <doctest.h>

#include <cmath>

#include "smis/errors.hpp"
#include "smis/rank.hpp"

using namespace smis;

namespace {

// Recurrence evaluated directly rather than through the closed form.
Round unrolled(int k, Round leaf) {
  Round t = leaf;
  for (int i = 1; i <= k; ++i) t = 2 * t + 3;
  return t;
}

int ceil_log2_ref(std::size_t n) {
  int r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

}  // namespace

TEST_CASE("sleeping schedule") {
  CHECK(t_schedule(0) == 0);
  CHECK(t_schedule(1) == 3);
  CHECK(t_schedule(5) == 93);
  for (int k = 0; k <= 40; ++k) CHECK(t_schedule(k) == unrolled(k, 0));
  CHECK_THROWS_AS(t_schedule(-1), ParameterError);
  CHECK_THROWS_AS(t_schedule(63), ParameterError);
}

TEST_CASE("truncated schedule") {
  CHECK(fast_schedule(1, 256, 6) == 99);
  for (std::size_t n : {4u, 100u, 256u, 1000u}) {
    const Round w = 6 * ceil_log2_ref(n);
    CHECK(fast_schedule(0, n, 6) == w);
    for (int k = 1; k <= 20; ++k) CHECK(fast_schedule(k, n, 6) == unrolled(k, w));
  }
}

TEST_CASE("depths") {
  CHECK(sleeping_depth(1) == 0);
  CHECK(sleeping_depth(2) == 3);
  CHECK(sleeping_depth(64) == 18);
  CHECK(sleeping_depth(256) == 24);
  CHECK(sleeping_depth(1024) == 30);
  // Non powers of two: ceil(3 log2 n) computed in floating point.
  for (std::size_t n = 2; n < 3000; ++n) {
    CHECK(sleeping_depth(n) == static_cast<int>(std::ceil(3 * std::log2(static_cast<double>(n)) - 1e-12)));
  }
  CHECK(kEll == doctest::Approx(1.0 / std::log2(4.0 / 3.0)).epsilon(1e-15));
  CHECK(fast_depth(2) == 1);
  CHECK(fast_depth(3) == 1);
  CHECK(fast_depth(4) == 3);   // ceil(2.409 * 1)
  CHECK(fast_depth(65536) == 10);  // ceil(2.409 * 4) = ceil(9.64)
  CHECK(fast_depth(256) == 8);     // ceil(2.409 * 3) = ceil(7.23)
}

TEST_CASE("k-ranks") {
  const BitTape tape(0b10, 2);  // X2 = 1, X1 = 0
  CHECK(k_rank(tape, 2).elements() == std::vector<int>{1, 0, -1});
  CHECK(k_rank(tape, 0).elements() == std::vector<int>{-1});
  CHECK(k_rank(tape, 1).elements() == std::vector<int>{0, -1});
  CHECK_THROWS_AS(k_rank(tape, 3), ParameterError);

  const BitTape a(0b011, 3), b(0b101, 3);
  CHECK(k_rank(a, 3) < k_rank(b, 3));   // X3: 0 < 1
  CHECK(k_rank(a, 2) > k_rank(b, 2));   // X2: 1 > 0
  CHECK(k_rank(a, 1) == k_rank(b, 1));
}

TEST_CASE("prefix order agrees with k-rank order") {
  for (std::uint64_t x = 0; x < 64; ++x) {
    for (std::uint64_t y = 0; y < 64; ++y) {
      const BitTape a(x, 6), b(y, 6);
      for (int k = 0; k <= 6; ++k) {
        const bool same = (a.prefix(k) <=> b.prefix(k)) == (k_rank(a, k) <=> k_rank(b, k));
        CHECK(same);
      }
    }
  }
}

TEST_CASE("tape drawing") {
  const auto t = BitTape::draw(5, 3, 30);
  CHECK(t.length() == 30);
  CHECK(t == BitTape::draw(5, 3, 30));
  CHECK((t.bits() >> 30) == 0);
  // Shorter tapes are prefixes of longer ones.
  const auto longer = BitTape::draw(5, 3, 40);
  for (int i = 1; i <= 30; ++i) CHECK(t.bit(i) == longer.bit(i));
}
