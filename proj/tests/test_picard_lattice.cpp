#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "phantom/notation.hpp"
#include "phantom/picard_lattice.hpp"

using namespace phantom;

namespace {

DivisorClass random_class(std::mt19937_64& rng, int bound = 30) {
  std::uniform_int_distribution<std::int64_t> u(-bound, bound);
  DivisorClass::Coeffs e;
  for (auto& v : e) v = u(rng);
  return {u(rng), e};
}

// Independent oracle: the bilinear form written out term by term in (d; m) notation.
std::int64_t dm_dot(std::int64_t d1, const DivisorClass::Coeffs& m1, std::int64_t d2, const DivisorClass::Coeffs& m2) {
  std::int64_t r = d1 * d2;
  for (int i = 0; i < kNumPoints; ++i) r -= m1[i] * m2[i];
  return r;
}

const DivisorClass F = DivisorClass::reflected_hyperplane();
const DivisorClass K = DivisorClass::canonical();

}  // namespace

TEST_CASE("named constants") {
  CHECK(K == DivisorClass::homogeneous(-3, -1));
  CHECK(F == DivisorClass::homogeneous(-19, -6));
  DivisorClass d3 = DivisorClass::reflected_exceptional(3);
  CHECK(d3.h() == -6);
  CHECK(d3.e(3) == 1);
  CHECK(d3.e(1) == 2);
  CHECK(d3 == -6 * DivisorClass::hyperplane() + 2 * DivisorClass::sum_exceptional() - DivisorClass::exceptional(3));
}

TEST_CASE("intersection values") {
  CHECK(intersect(DivisorClass::hyperplane(), DivisorClass::hyperplane()) == 1);
  CHECK(intersect(F, F) == 1);  // 361 - 360
  for (int i = 1; i <= kNumPoints; ++i) {
    CHECK(intersect(-F, DivisorClass::exceptional(i)) == 6);
    CHECK(intersect(DivisorClass::reflected_exceptional(i), DivisorClass::reflected_exceptional(i)) == -1);
    CHECK(intersect(DivisorClass::reflected_exceptional(i), F) == 0);
  }
  CHECK(intersect(K, F) == -3);
}

TEST_CASE("intersect matches the (d;m) oracle and is bilinear") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    auto a = random_class(rng), b = random_class(rng), c = random_class(rng);
    CHECK(intersect(a, b) == dm_dot(a.degree(), a.mults(), b.degree(), b.mults()));
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(a + b, c) == intersect(a, c) + intersect(b, c));
    CHECK(intersect(3 * a, c) == 3 * intersect(a, c));
  }
}

TEST_CASE("Euler characteristic table") {
  auto D = [](int i) { return DivisorClass::reflected_exceptional(i); };
  for (int i = 1; i <= kNumPoints; ++i) {
    CHECK(euler_char(D(i)) == 1);
    CHECK(euler_char(F - D(i)) == 2);
    CHECK(euler_char(2 * F - D(i)) == 5);
    CHECK(euler_char(-K + DivisorClass::exceptional(i)) == 1);
  }
  CHECK(euler_char(F) == 3);
  CHECK(euler_char(2 * F) == 6);
  CHECK(euler_char(DivisorClass{}) == 1);
  CHECK(euler_char(-3 * F) == 1);
  // binom(59,2) - 10 binom(19,2)
  CHECK(euler_char(DivisorClass::homogeneous(57, 18)) == 59 * 58 / 2 - 10 * 19 * 18 / 2);
}

TEST_CASE("reflection") {
  CHECK(reflection_r(DivisorClass::hyperplane()) == F);
  CHECK(reflection_r(F) == DivisorClass::hyperplane());
  CHECK(reflection_r(K) == K);
  for (int i = 1; i <= kNumPoints; ++i)
    CHECK(reflection_r(DivisorClass::exceptional(i)) == DivisorClass::reflected_exceptional(i));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto a = random_class(rng), b = random_class(rng);
    CHECK(intersect(reflection_r(a), reflection_r(b)) == intersect(a, b));
    CHECK(reflection_r(reflection_r(a)) == a);
    CHECK(euler_char(reflection_r(a)) == euler_char(a));
  }
}

TEST_CASE("permutations") {
  std::mt19937_64 rng(13);
  auto t12 = Permutation::transposition(1, 2);
  CHECK(permute(t12, DivisorClass::exceptional(1)) == DivisorClass::exceptional(2));
  CHECK(permute(Permutation{}, F) == F);
  CHECK_THROWS(Permutation({1, 1, 3, 4, 5, 6, 7, 8, 9, 10}));
  for (int t = 0; t < 200; ++t) {
    std::array<int, kNumPoints> img;
    std::iota(img.begin(), img.end(), 1);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation s(img);
    auto a = random_class(rng), b = random_class(rng);
    CHECK(intersect(permute(s, a), permute(s, b)) == intersect(a, b));
    CHECK(euler_char(permute(s, a)) == euler_char(a));
    CHECK(permute(s, DivisorClass::homogeneous(5, 2)) == DivisorClass::homogeneous(5, 2));
  }
}

TEST_CASE("Cremona step") {
  auto c = parse_divisor_class("7H-4E1-2E2-2E3-2E4-2E5-2E6-2E7-2E8-2E9-2E10");
  CHECK(cremona_step(c, 1, 2, 3) == parse_divisor_class("6H-3E1-E2-E3-2E4-2E5-2E6-2E7-2E8-2E9-2E10"));
  CHECK(canonical_form(cremona_step(c, 1, 2, 3)) == parse_divisor_class("6H-3E1-2E2-2E3-2E4-2E5-2E6-2E7-2E8-E9-E10"));
  auto q = parse_divisor_class("2H-E1-E2-E3-E4-E5-E6-E7");
  CHECK(cremona_step(q, 1, 2, 3) == parse_divisor_class("H-E4-E5-E6-E7"));
  CHECK(cremona_step(K, 4, 8, 2) == K);
  CHECK_THROWS(cremona_step(K, 1, 1, 2));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    auto a = random_class(rng), b = random_class(rng);
    CHECK(intersect(cremona_step(a, 1, 5, 9), cremona_step(b, 1, 5, 9)) == intersect(a, b));
    CHECK(euler_char(cremona_step(a, 2, 3, 10)) == euler_char(a));
  }
}

TEST_CASE("Cremona reduction chain") {
  auto c = parse_divisor_class("7H-2E-2E1");
  auto red = cremona_reduce(c);
  std::vector<std::string> steps;
  for (const auto& e : red.log)
    if (e.kind == CremonaLogEntry::Kind::Step) steps.push_back(e.after.to_string());
  std::vector<std::string> expected = {
      "6H-3E1-2E2-2E3-2E4-2E5-2E6-2E7-2E8-E9-E10",
      "5H-2E1-2E2-2E3-2E4-2E5-2E6-E7-E8-E9-E10",
      "4H-2E1-2E2-2E3-E4-E5-E6-E7-E8-E9-E10",
      "2H-E1-E2-E3-E4-E5-E6-E7",
      "H-E1-E2-E3-E4",
  };
  CHECK(steps == expected);
  CHECK(red.reduced == parse_divisor_class("H-E1-E2-E3-E4"));
  CHECK(red.next_step_negative);

  auto plain = cremona_reduce(parse_divisor_class("5H"));
  CHECK(plain.log.empty());
  CHECK(plain.reduced == parse_divisor_class("5H"));
}

TEST_CASE("Cremona reduction terminates with decreasing degree") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::int64_t> ud(0, 40), um(0, 15);
  for (int t = 0; t < 300; ++t) {
    DivisorClass::Coeffs m;
    for (auto& v : m) v = um(rng);
    auto red = cremona_reduce(DivisorClass::from_degree_mults(ud(rng), m));
    for (const auto& e : red.log)
      if (e.kind == CremonaLogEntry::Kind::Step) CHECK(e.after.degree() < e.before.degree());
  }
}

TEST_CASE("symmetrize_full") {
  auto a = parse_divisor_class("3H-2E1-E4");
  auto s = symmetrize_full(a);
  CHECK(s.h() == 3628800LL * 3);
  CHECK(s.e(7) == -362880LL * 3);
  CHECK(symmetrize_full(DivisorClass::homogeneous(4, 1)) == 3628800 * DivisorClass::homogeneous(4, 1));
  CHECK(symmetrize_full(DivisorClass::exceptional(1)) == 362880 * DivisorClass::sum_exceptional());
}

TEST_CASE("overflow is reported") {
  DivisorClass big = DivisorClass::homogeneous(INT64_MAX / 2, 0);
  CHECK_THROWS_AS(3 * big, std::overflow_error);
  CHECK_THROWS_AS(symmetrize_full(big), std::overflow_error);
}

TEST_CASE("notation") {
  CHECK(parse_divisor_class("57H-18*E") == DivisorClass::homogeneous(57, 18));
  CHECK(parse_divisor_class("-3F") == DivisorClass::homogeneous(57, 18));
  CHECK(parse_divisor_class("K-F+D1") == K - F + DivisorClass::reflected_exceptional(1));
  CHECK(parse_divisor_class("[1,0,0,0,0,0,0,0,0,0,-1]") == DivisorClass::hyperplane() - DivisorClass::exceptional(10));
  CHECK(parse_divisor_class(" 2 H - E3 ").to_string() == "2H-E3");
  CHECK_THROWS_AS(parse_divisor_class("2Q"), std::invalid_argument);
  CHECK_THROWS_AS(parse_divisor_class("E11"), std::out_of_range);
  CHECK_THROWS(parse_divisor_class("[1,2]"));
}

TEST_CASE("genus of curves in |-nF|") {
  for (int n = 1; n <= 8; ++n) CHECK(arithmetic_genus(-n * F) == (n * n + 3 * n + 2) / 2);
  CHECK(arithmetic_genus(-3 * F) == 10);
}
