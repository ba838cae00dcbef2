#pragma once

// Sound decision procedures for |dH - sum m_i E_i| at general points.
//
// decide() never answers Empty or Dim(k) unless one of its named rules
// certifies the answer; everything else is Unknown. Rules, in cascade order:
//
//   clamp_exceptional        drop +kE_i summands (E_i is then a fixed component)
//   negative_degree          H-coefficient < 0 with no +E_i summands
//   cremona                  quadratic transformation (dimension preserving)
//   cremona_negative_degree  the next quadratic transformation has negative degree
//   slope_empty              homogeneous, d/m < 2280/721
//   orbit_slope_empty        sum over the S_10-orbit is homogeneous and empty by slope
//   slope_nonspecial         homogeneous, d/m >= 174/55
//   standard_form            d >= m1+m2+m3 and every m_i <= 11
//
// The three literature rules (slope_empty, slope_nonspecial, standard_form)
// hold for general points; interpolation_oracle re-checks them a posteriori.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phantom/picard_lattice.hpp"

namespace phantom {

enum class VerdictKind { Empty, Dim, Unknown };

struct TraceStep {
  std::string rule;
  DivisorClass cls;
  std::string note;
};

struct SystemVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::int64_t dim = -1;  // meaningful for Dim only
  std::vector<TraceStep> trace;

  bool is_empty() const { return kind == VerdictKind::Empty; }
  bool is_unknown() const { return kind == VerdictKind::Unknown; }
  // h^0 when decided: 0 for Empty, dim + 1 for Dim.
  std::optional<std::int64_t> h0() const;
  // Projective dimension when decided (-1 for Empty).
  std::optional<std::int64_t> projective_dim() const;
  // Rule that certified the verdict (last trace entry).
  const std::string& certifying_rule() const { return trace.back().rule; }

  bool same_answer(const SystemVerdict& o) const { return kind == o.kind && dim == o.dim; }
};

std::string to_string(VerdictKind k);
std::string to_string(const SystemVerdict& v);

// Exact rational thresholds.
struct Ratio {
  std::int64_t num;
  std::int64_t den;
};
inline constexpr Ratio kEmptySlope{2280, 721};
inline constexpr Ratio kNonspecialSlope{174, 55};

// Serre duality: h^2(D) = h^0(K - D), and a class with negative H-coefficient
// and no +E_i summands is not effective.
bool h2_vanishes(const DivisorClass& d);

bool empty_by_slope(std::int64_t d, std::int64_t m);
bool nonspecial_by_slope(std::int64_t d, std::int64_t m);
bool nonspecial_standard_form(const DivisorClass& d);

SystemVerdict decide(const DivisorClass& d);

// -- case enumeration --------------------------------------------------------

// a*d + b*m + c*mp + k
struct LinearForm3 {
  std::int64_t cd = 0, cm = 0, cmp = 0, c0 = 0;
  std::int64_t operator()(std::int64_t d, std::int64_t m, std::int64_t mp) const;
};

// num/den >= threshold. den == 0 reads as +infinity (passes iff num >= 0);
// den < 0 anywhere in the box is a constraint error.
struct RatioConstraint {
  Ratio threshold;
  LinearForm3 num;
  LinearForm3 den;
  bool holds(std::int64_t d, std::int64_t m, std::int64_t mp) const;
};

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

// Candidate component B = dH - m*sum E - mp*E_special.
struct CaseConstraint {
  Interval d;
  Interval m;
  Interval mp;        // bounds on m'
  Interval mult_at;   // bounds on m + m' (multiplicity at the special point)
  int special_index = 1;
  std::vector<RatioConstraint> ratios;
};

struct SplitCase {
  std::int64_t d;
  std::int64_t m;
  std::int64_t mp;
  auto operator<=>(const SplitCase&) const = default;
};

DivisorClass split_component(const SplitCase& c, int special_index);

// Every integer triple in the box passing all ratio constraints, excluding the
// trivial splits B = 0 and B = total. Sorted lexicographically.
std::vector<SplitCase> enumerate_split_cases(const DivisorClass& total, const CaseConstraint& constraint);

// Homogeneous total (D; M^10): B and total-B both pass d/m >= 2280/721.
CaseConstraint homogeneous_split_constraint(const DivisorClass& total);

// Total with one distinguished point (D; M^9, M_i): both orbit sums
// 10dH - (10m+m') sum E and its complement in 10D H - (9M+M_i) sum E pass the
// slope test. The box is supplied by the caller (half the degree is the natural bound).
CaseConstraint orbit_split_constraint(const DivisorClass& total, int special_index, Interval d, Interval m,
                                      Interval mult_at);

// -- symmetry arguments ------------------------------------------------------

struct OrbitReport {
  std::uint64_t orbit_size = 0;
  DivisorClass union_class;
  std::int64_t union_degree = 0;  // orbit_size * d
  std::int64_t total_degree = 0;
  bool size_divides_total_degree = false;
  bool union_equals_total = false;
  bool consistent = false;
  // Divisors of the total degree that occur as S_10-orbit sizes of some
  // multiplicity multiset (the argument needs this to be {1}).
  std::vector<std::int64_t> achievable_divisor_sizes;
};

std::uint64_t orbit_size(const DivisorClass& b);
OrbitReport orbit_divisor_argument(const DivisorClass& b, const DivisorClass& total);

struct AmpleReport {
  // 10a / sum b >= 2280/721  =>  sum b / a <= 7210/2280
  std::int64_t bound_num = 7210;
  std::int64_t bound_den = 2280;
  bool bound_below_19_over_6 = false;  // 7210*6 < 2280*19
  std::int64_t lhs = 0;                 // 7210*6
  std::int64_t rhs = 0;                 // 2280*19
  std::int64_t self_intersection = 0;   // (-F)^2
  std::vector<std::int64_t> dot_exceptional;  // -F.E_i, i = 1..10
  bool symmetrized_ratio_matches = false;   // 10!a / (9! sum b) = 10a / sum b on a sample
  bool all_pass = false;
};

AmpleReport ample_slope_check();

}  // namespace phantom
