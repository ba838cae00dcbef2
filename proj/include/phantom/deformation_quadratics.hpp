#pragma once

// First-order deformations of i^* k(x) and the quadratic part of their hull.
//
// T1 = Hom^1(i^* k(x), i^* k(x)) has basis s_1, s_2, b_1..b_12 and
// T2 = Hom^2 has basis xi_i xi_j for 1 <= i < j <= 13. Composition:
//   s . b = b . s = 0
//   b_i b_j = xi_i xi_j - xi_i xi_13   (i < j)
//   b_i^2   = -xi_i xi_13
//   b_j b_i = -xi_j xi_13              (i < j), so b_j b_i = b_j^2
//   s_i s_j = 0                        (not determined; never read by the hull)
//
// Hull variables y_0, y_1 (dual to s) and x_1..x_12 (dual to b).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phantom/linear_systems.hpp"

namespace phantom {

inline constexpr int kT1Dim = 14;
inline constexpr int kNumB = 12;
inline constexpr int kXiCount = 13;
inline constexpr int kT2Dim = kXiCount * (kXiCount - 1) / 2;  // 78

// T1 index: 0 = s_1, 1 = s_2, 2..13 = b_1..b_12.
int s_index(int i);  // i in 1..2
int b_index(int i);  // i in 1..12
std::string t1_label(int idx);
int parse_t1_label(const std::string& label);

// T2 index of xi_i xi_j, 1 <= i < j <= 13.
int xi_pair_index(int i, int j);
std::pair<int, int> xi_pair(int idx);
std::string t2_label(int idx);

using T1Vector = std::vector<std::int64_t>;  // length kT1Dim
using T2Vector = std::vector<std::int64_t>;  // length kT2Dim

T1Vector t1_basis(int idx);
T2Vector product(int u, int v);
// Bilinear extension to integer combinations.
T2Vector product(const T1Vector& u, const T1Vector& v);
// t.t' -> t o t' + t' o t
T2Vector symmetrized(int u, int v);
std::string to_string(const T2Vector& v);

// Quadratic form in the hull variables; keys (a, b) with a <= b, variable
// index 0 = y_0, 1 = y_1, 2..13 = x_1..x_12.
struct Quadric {
  std::map<std::pair<int, int>, std::int64_t> coeffs;

  static Quadric monomial(int a, int b);
  std::int64_t at(int a, int b) const;
  bool involves(int var) const;
  std::string to_string() const;
  bool operator==(const Quadric&) const = default;
};

std::string variable_label(int var);
int x_var(int i);  // i in 1..12
int y_var(int i);  // i in 0..1

using QuadricIdeal = std::vector<Quadric>;

// f_i = 2x_i^2 + sum_{j>i} x_i x_j and f_{i,j} = x_i x_j, in that order.
QuadricIdeal hull_quadrics();
// Images of the dual basis of T2 under the transpose of the symmetrized
// product, read off the product table.
QuadricIdeal hull_quadrics_assembled();

// Exact rank over Q of the generators' coefficient vectors.
std::int64_t quadric_rank(const QuadricIdeal& q);
bool in_span(const QuadricIdeal& q, const Quadric& f);
bool same_span(const QuadricIdeal& a, const QuadricIdeal& b);

// Rank of {b_i^2, b_i b_j : i < j} in T2.
std::int64_t b_product_rank();

struct HullReport {
  std::size_t generators = 0;
  std::int64_t rank = 0;
  std::int64_t b_product_rank = 0;
  bool all_x_monomials_in_span = false;
  bool y0y1_in_span = false;
  bool assembled_span_equal = false;
  bool x_only = false;  // no generator involves a y-variable
  std::vector<std::string> surviving_directions;
  std::string statement;
  bool pass = false;
};

HullReport quadratic_dimension_bound();

// -- special locus -----------------------------------------------------------

struct SplitRefutation {
  SplitCase c;
  DivisorClass component;
  DivisorClass residual;
  SystemVerdict component_verdict;
  SystemVerdict residual_verdict;
  bool refuted = false;
  std::string refuted_by;  // "component" or "residual"
};

struct LocusSystem {
  std::string name;
  DivisorClass cls;
  SystemVerdict verdict;
  bool enumerated = false;
  std::vector<SplitRefutation> splits;
  bool divisorial = false;  // unique effective divisor: Dim(0) and chi = 1
  bool all_refuted = true;
};

struct SpecialLocusReport {
  std::vector<LocusSystem> systems;
  std::vector<DivisorClass> divisorial;
  std::vector<std::string> unknowns;  // sub-decisions no rule settled
  bool pass = false;
};

// |-K+E_i|, |K-F|, |K-2F|, |K-F+D_i|, |K-2F+D_i| for i = 1..10.
SpecialLocusReport special_locus_report();

struct CompositionVerdict {
  DivisorClass cls;  // E_i - E_j + K, the class of E_j^v (x) E_i (x) w
  SystemVerdict verdict;
};

// i < j are 1-based positions in the standard collection.
CompositionVerdict composition_criterion(std::size_t i, std::size_t j);

}  // namespace phantom
