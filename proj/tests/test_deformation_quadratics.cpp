#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "phantom/deformation_quadratics.hpp"
#include "phantom/notation.hpp"

using namespace phantom;

namespace {

const DivisorClass F = DivisorClass::reflected_hyperplane();
const DivisorClass K = DivisorClass::canonical();

T2Vector xi(int i, int j, std::int64_t c = 1) {
  T2Vector v(kT2Dim, 0);
  v[static_cast<std::size_t>(xi_pair_index(i, j))] = c;
  return v;
}

T2Vector plus(T2Vector a, const T2Vector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

}  // namespace

TEST_CASE("labels") {
  CHECK(t1_label(0) == "s1");
  CHECK(t1_label(b_index(12)) == "b12");
  CHECK(parse_t1_label("b7") == b_index(7));
  CHECK_THROWS(parse_t1_label("b13"));
  CHECK(xi_pair_index(1, 2) == 0);
  CHECK(xi_pair_index(12, 13) == kT2Dim - 1);
  for (int k = 0; k < kT2Dim; ++k) {
    auto [i, j] = xi_pair(k);
    CHECK(xi_pair_index(i, j) == k);
  }
  CHECK(t2_label(xi_pair_index(3, 13)) == "xi3xi13");
}

TEST_CASE("product table") {
  CHECK(product(b_index(1), b_index(2)) == plus(xi(1, 2), xi(1, 13, -1)));
  CHECK(product(b_index(2), b_index(1)) == xi(2, 13, -1));
  CHECK(product(b_index(5), b_index(5)) == xi(5, 13, -1));
  T2Vector zero(kT2Dim, 0);
  CHECK(product(s_index(1), b_index(3)) == zero);
  CHECK(product(b_index(3), s_index(1)) == zero);
  CHECK(product(s_index(1), s_index(2)) == zero);
  for (int i = 1; i <= kNumB; ++i)
    for (int j = i + 1; j <= kNumB; ++j) CHECK(product(b_index(j), b_index(i)) == product(b_index(j), b_index(j)));
  CHECK(to_string(product(b_index(1), b_index(2))) == "xi1xi2-xi1xi13");
}

TEST_CASE("product is bilinear") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    T1Vector u(kT1Dim), v(kT1Dim), w(kT1Dim);
    for (int k = 0; k < kT1Dim; ++k) {
      u[static_cast<std::size_t>(k)] = c(rng);
      v[static_cast<std::size_t>(k)] = c(rng);
      w[static_cast<std::size_t>(k)] = c(rng);
    }
    T1Vector vw(kT1Dim);
    for (std::size_t k = 0; k < vw.size(); ++k) vw[k] = v[k] + w[k];
    CHECK(product(u, vw) == plus(product(u, v), product(u, w)));
    CHECK(product(vw, u) == plus(product(v, u), product(w, u)));
  }
  CHECK(product(t1_basis(b_index(4)), t1_basis(b_index(9))) == product(b_index(4), b_index(9)));
}

TEST_CASE("b products are independent") {
  CHECK(b_product_rank() == 78);
  // Oracle: b_i^2 is the only product touching xi_i xi_13 alone, b_i b_j the
  // only one touching xi_i xi_j, so the 78 vectors are unitriangular.
  for (int i = 1; i <= kNumB; ++i)
    for (int j = i + 1; j <= kNumB; ++j)
      for (int a = 1; a <= kNumB; ++a)
        for (int b = a; b <= kNumB; ++b)
          if (a != i || b != j) CHECK(product(b_index(a), b_index(b))[static_cast<std::size_t>(xi_pair_index(i, j))] == 0);
}

TEST_CASE("symmetrized map") {
  CHECK(symmetrized(b_index(1), b_index(2)) == plus(product(b_index(2), b_index(2)), product(b_index(1), b_index(2))));
  CHECK(symmetrized(b_index(3), b_index(8)) == symmetrized(b_index(8), b_index(3)));
}

TEST_CASE("hull quadrics") {
  QuadricIdeal q = hull_quadrics();
  CHECK(q.size() == 78);
  CHECK(q[0].at(x_var(1), x_var(1)) == 2);
  for (int j = 2; j <= kNumB; ++j) CHECK(q[0].at(x_var(1), x_var(j)) == 1);
  CHECK(q[0].to_string().rfind("2x1^2+x1x2+", 0) == 0);
  CHECK(q[kNumB].to_string() == "x1x2");
  CHECK(q[kNumB - 1].to_string() == "2x12^2");
  for (const auto& f : q) {
    CHECK_FALSE(f.involves(y_var(0)));
    CHECK_FALSE(f.involves(y_var(1)));
  }
  QuadricIdeal a = hull_quadrics_assembled();
  CHECK(a.size() == 78);
  CHECK(a[static_cast<std::size_t>(xi_pair_index(1, 2))] == Quadric::monomial(x_var(1), x_var(2)));
  CHECK(same_span(q, a));
  CHECK(quadric_rank(a) == 78);
}

TEST_CASE("quadratic dimension bound") {
  QuadricIdeal q = hull_quadrics();
  CHECK(quadric_rank(q) == 78);
  CHECK(in_span(q, Quadric::monomial(x_var(5), x_var(7))));
  CHECK(in_span(q, Quadric::monomial(x_var(12), x_var(12))));
  CHECK_FALSE(in_span(q, Quadric::monomial(y_var(0), y_var(1))));
  CHECK_FALSE(in_span(q, Quadric::monomial(y_var(0), x_var(1))));
  HullReport r = quadratic_dimension_bound();
  CHECK(r.rank == 78);
  CHECK(r.b_product_rank == 78);
  CHECK(r.all_x_monomials_in_span);
  CHECK_FALSE(r.y0y1_in_span);
  CHECK(r.surviving_directions == std::vector<std::string>{"y0", "y1"});
  CHECK(r.statement == "x-directions obstructed at order 2, surviving tangent directions = {y0, y1}");
  CHECK(r.pass);
}

TEST_CASE("special locus") {
  SpecialLocusReport r = special_locus_report();
  CHECK(r.unknowns.empty());
  CHECK(r.pass);
  CHECK(r.divisorial.size() == 10);
  for (const auto& s : r.systems) {
    CAPTURE(s.name);
    CHECK(s.all_refuted);
    if (s.name.rfind("-K+E", 0) == 0) {
      CHECK(s.divisorial);
      CHECK(to_string(s.verdict) == "Dim(0)");
    } else {
      CHECK_FALSE(s.divisorial);
    }
    if (s.name == "K-2F") {
      REQUIRE(s.splits.size() == 2);
      CHECK(s.splits[1].c == SplitCase{19, 6, 0});
      CHECK(s.splits[1].component_verdict.is_empty());
    }
    if (s.name == "K-F+D1") {
      REQUIRE(s.splits.size() == 2);
      const auto& c = s.splits[1];
      CHECK(c.c == SplitCase{3, 1, -1});
      // The residual reduces through the line through four general points.
      const auto& v = c.component_verdict.is_empty() ? c.component_verdict : c.residual_verdict;
      bool saw_line = false;
      for (const auto& t : v.trace) saw_line |= t.cls == parse_divisor_class("H-E1-E2-E3-E4");
      CHECK(saw_line);
    }
    if (s.name.rfind("K-2F+D", 0) == 0) CHECK(s.splits.size() == 12);
  }
}

TEST_CASE("composition criterion") {
  // standard collection: 1 = O(-2F), 2 = O(-F), 3..12 = O(-D_k), 13 = O
  auto a = composition_criterion(2, 3);
  CHECK(a.cls == K - F + DivisorClass::reflected_exceptional(1));
  auto b = composition_criterion(1, 13);
  CHECK(b.cls == K - 2 * F);
  CHECK_FALSE(b.verdict.is_unknown());
  auto c = composition_criterion(3, 13);
  CHECK(c.cls == K - DivisorClass::reflected_exceptional(1));
  CHECK(to_string(c.verdict) == "Dim(0)");
  CHECK_THROWS(composition_criterion(3, 3));
  CHECK_THROWS(composition_criterion(0, 3));
  CHECK_THROWS(composition_criterion(4, 14));
}
