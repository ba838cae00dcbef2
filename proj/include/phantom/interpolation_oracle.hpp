#pragma once

// dim |dH - sum m_i E_i| at random points of the plane over F_p, by exact rank
// of the fat-point interpolation matrix. A Monte Carlo certificate: the rank
// at random points over a large prime equals the generic rank with high
// probability, and can only fall short of it.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phantom/linear_systems.hpp"

namespace phantom {

inline constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 - 1
inline constexpr std::uint64_t kSecondPrime = 4294967291;   // largest prime below 2^32
inline constexpr std::uint64_t kDefaultSeed = 42;

bool is_prime_u64(std::uint64_t n);

struct FatPointProblem {
  std::int64_t d = 0;
  std::array<std::int64_t, kNumPoints> m{};
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = kDefaultSeed;

  // d = h and m_i = -e_i; throws unless d >= 0 and every m_i >= 0.
  static FatPointProblem from_class(const DivisorClass& c, std::uint64_t prime = kDefaultPrime,
                                    std::uint64_t seed = kDefaultSeed);
};

struct RankResult {
  std::int64_t columns = 0;  // C(d+2, 2)
  std::int64_t rows = 0;     // sum C(m_i+1, 2)
  std::int64_t rank = 0;
  std::int64_t projective_dim = 0;  // columns - 1 - rank
  bool operator==(const RankResult&) const = default;
};

// Row-major matrix over F_p with entries in [0, p).
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t prime = 0;
  std::vector<std::uint32_t> data;

  std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Points (u_i, v_i, 1) with u_i, v_i nonzero and pairwise distinct across
// points. Throws after a bounded number of rejected samples.
std::vector<std::array<std::uint32_t, 2>> sample_points(std::uint64_t prime, std::uint64_t seed, std::size_t count);

// Rows: Taylor coefficients of f(u+s, v+t, 1) at s^a t^b, a+b < m_i.
// Columns: x^i y^j z^(d-i-j), ordered by i then j.
ModMatrix interpolation_matrix(const FatPointProblem& p);

// Rank by dense Gaussian elimination; destroys the matrix. Requires p < 2^32.
std::int64_t rank_mod_p(ModMatrix& a);

RankResult interp_dim(const FatPointProblem& p);

// -- generality batch --------------------------------------------------------

struct GeneralityRecord {
  std::string name;
  DivisorClass cls;
  SystemVerdict expected;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> seeds;
  std::vector<std::int64_t> oracle_dims;  // one per (prime, seed), primes outer
  std::int64_t largest_rows = 0;
  std::int64_t largest_cols = 0;
  double max_seconds = 0;
  bool match = false;
  std::string error;
};

struct GeneralityReport {
  std::vector<GeneralityRecord> records;
  bool all_match = false;
};

struct NamedClass {
  std::string name;
  DivisorClass cls;
};

// |-F|, |-2F|, |-D_i|, |D_i - F| for i = 1..10.
std::vector<NamedClass> generality_classes();
// The classes whose emptiness or uniqueness the special-locus and orbit
// arguments rely on.
std::vector<NamedClass> concordance_classes();
// "krah" (generality_classes), "special-locus" (the remainder of
// concordance_classes) or "all"; throws on other names.
std::vector<NamedClass> named_class_list(const std::string& name);

// Errors are recorded per class, never thrown.
GeneralityReport verify_generality(const std::vector<NamedClass>& classes, const std::vector<std::uint64_t>& primes,
                                   const std::vector<std::uint64_t>& seeds);

}  // namespace phantom
