#include <doctest.h>

#include <cstdint>
#include <limits>

#include "twintree/multiplicity.hpp"

using twintree::BadParams;
using twintree::Error;
using twintree::Multiplicity;

namespace {
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
}

TEST_CASE("default multiplicity is one") {
  Multiplicity m;
  CHECK(!m.is_omega());
  CHECK(m.count() == 1);
  CHECK(m.str() == "1");
}

TEST_CASE("finite constructor validates its argument") {
  CHECK(Multiplicity::finite(1).count() == 1);
  CHECK(Multiplicity::finite(7).count() == 7);
  CHECK(Multiplicity::finite(kMax - 1).count() == kMax - 1);
  CHECK_THROWS_AS(Multiplicity::finite(0), BadParams);
  CHECK_THROWS_AS(Multiplicity::finite(kMax), BadParams);
}

TEST_CASE("omega basics") {
  Multiplicity w = Multiplicity::omega();
  CHECK(w.is_omega());
  CHECK(w.str() == "w");
  CHECK_THROWS_AS(w.count(), Error);
}

TEST_CASE("omega is the maximum of the order") {
  Multiplicity w = Multiplicity::omega();
  CHECK(Multiplicity::finite(1) < Multiplicity::finite(2));
  CHECK(Multiplicity::finite(2) < w);
  CHECK(Multiplicity::finite(kMax - 1) < w);
  CHECK(w <= w);
  CHECK(w == Multiplicity::omega());
  CHECK(Multiplicity::finite(3) != w);
  CHECK(w > Multiplicity::finite(1000));
}

TEST_CASE("addition is saturating and absorbs omega") {
  auto f = [](std::uint64_t k) { return Multiplicity::finite(k); };
  Multiplicity w = Multiplicity::omega();

  CHECK(f(2) + f(3) == f(5));
  CHECK(f(1) + w == w);
  CHECK(w + f(1) == w);
  CHECK(w + w == w);

  // finite sums never spill into the omega sentinel
  Multiplicity near = f(kMax - 1);
  CHECK(near + f(1) == near);
  CHECK(near + near == near);
  CHECK(!(near + f(12345)).is_omega());
}

TEST_CASE("multiplication is saturating and absorbs omega") {
  auto f = [](std::uint64_t k) { return Multiplicity::finite(k); };
  Multiplicity w = Multiplicity::omega();

  CHECK(f(3) * f(4) == f(12));
  CHECK(f(1) * f(1) == f(1));
  CHECK(w * f(2) == w);
  CHECK(f(2) * w == w);
  CHECK(w * w == w);

  Multiplicity near = f(kMax - 1);
  CHECK(near * f(2) == near);
  CHECK(f(kMax / 2) * f(3) == near);  // overflowing product saturates
}

TEST_CASE("clamp maps omega to the cap and leaves small values alone") {
  CHECK(Multiplicity::omega().clamp(17) == 17);
  CHECK(Multiplicity::finite(4).clamp(17) == 4);
  CHECK(Multiplicity::finite(20).clamp(17) == 17);
  CHECK(Multiplicity::finite(17).clamp(17) == 17);
  CHECK(Multiplicity::omega().clamp(0) == 0);
}

TEST_CASE("using one copy decrements finite counts and keeps omega") {
  bool still_omega = false;
  CHECK(Multiplicity::finite(3).decremented_count_or_omega(&still_omega) == 2);
  CHECK(!still_omega);
  CHECK(Multiplicity::finite(1).decremented_count_or_omega(&still_omega) == 0);
  CHECK(!still_omega);
  Multiplicity::omega().decremented_count_or_omega(&still_omega);
  CHECK(still_omega);
}

TEST_CASE("str renders digits for finite values") {
  CHECK(Multiplicity::finite(42).str() == "42");
  CHECK(Multiplicity::finite(1).str() == "1");
}
