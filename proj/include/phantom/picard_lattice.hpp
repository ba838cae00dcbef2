#pragma once

// Picard lattice of the blowup of P^2 at ten points.
//
// A class is stored as h*H + sum_i e[i]*E_i with the intersection form
// diag(1, -1, ..., -1). The classical "(d; m_1..m_10)" notation for
// dH - sum m_i E_i is only a view: d = h, m_i = -e[i].

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace phantom {

inline constexpr int kNumPoints = 10;

class DivisorClass {
 public:
  using Coeffs = std::array<std::int64_t, kNumPoints>;

  DivisorClass() = default;
  DivisorClass(std::int64_t h, const Coeffs& e) : h_(h), e_(e) {}

  // dH - sum m_i E_i
  static DivisorClass from_degree_mults(std::int64_t d, const Coeffs& m);
  // dH - m * sum E_i
  static DivisorClass homogeneous(std::int64_t d, std::int64_t m);

  static DivisorClass hyperplane();
  static DivisorClass exceptional(int i);  // 1-based
  static DivisorClass sum_exceptional();
  static DivisorClass canonical();         // K = -3H + sum E_i
  static DivisorClass reflected_exceptional(int i);  // D_i = -6H + 2 sum E_j - E_i
  static DivisorClass reflected_hyperplane();        // F = -19H + 6 sum E_i

  std::int64_t h() const { return h_; }
  const Coeffs& e() const { return e_; }
  std::int64_t e(int i) const { return e_.at(static_cast<std::size_t>(i - 1)); }  // 1-based

  std::int64_t degree() const { return h_; }
  std::int64_t mult(int i) const;  // m_i = -e_i, 1-based
  Coeffs mults() const;

  bool is_homogeneous() const;

  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass operator-() const;
  friend DivisorClass operator*(std::int64_t k, const DivisorClass& d);

  bool operator==(const DivisorClass&) const = default;
  auto operator<=>(const DivisorClass&) const = default;

  // Classical rendering, e.g. "7H-4E1-2E2-...".
  std::string to_string() const;
  std::array<std::int64_t, kNumPoints + 1> to_array() const;
  static DivisorClass from_array(const std::vector<std::int64_t>& v);

 private:
  std::int64_t h_ = 0;
  Coeffs e_{};
};

// Bijection of {1..10}; stored 0-based.
class Permutation {
 public:
  Permutation();  // identity
  explicit Permutation(const std::array<int, kNumPoints>& images_one_based);
  static Permutation transposition(int i, int j);

  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)] + 1; }

 private:
  std::array<int, kNumPoints> images_{};
};

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b);

// chi(O(D)) = 1 + (D.D - D.K)/2
std::int64_t euler_char(const DivisorClass& d);

// The isometry H -> F, E_i -> D_i.
DivisorClass reflection_r(const DivisorClass& d);

// sigma acts by E_i -> E_sigma(i), fixing H.
DivisorClass permute(const Permutation& s, const DivisorClass& d);

// Quadratic transformation centred at the three (distinct, 1-based) points.
DivisorClass cremona_step(const DivisorClass& d, int i, int j, int k);

// Multiplicities sorted descending; ties keep the lower index first.
DivisorClass canonical_form(const DivisorClass& d);

// Replace every positive e-coordinate (a +kE_i summand) by zero.
DivisorClass clamp_exceptional(const DivisorClass& d);

struct CremonaLogEntry {
  enum class Kind { Clamp, Step };
  Kind kind;
  DivisorClass before;
  DivisorClass after;  // canonical form
};

struct CremonaReduction {
  DivisorClass reduced;  // canonical form
  std::vector<CremonaLogEntry> log;
  // True when reduction stopped because the next step would reach negative degree.
  bool next_step_negative = false;
};

// Sort, clamp, and apply cremona_step on the three largest multiplicities
// while their sum exceeds the degree. Stops at negative degree, or before a
// step whose image would have negative degree (flagged in the result).
CremonaReduction cremona_reduce(const DivisorClass& d);

// Sum over all of S_10: (10! h; 9! * sum e on every coordinate).
DivisorClass symmetrize_full(const DivisorClass& d);

// Arithmetic genus of a curve in class c: 1 + (c.c + c.K)/2.
std::int64_t arithmetic_genus(const DivisorClass& c);

}  // namespace phantom
