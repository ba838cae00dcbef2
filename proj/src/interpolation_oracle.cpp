#include "phantom/interpolation_oracle.hpp"

#include <chrono>
#include <random>
#include <set>
#include <stdexcept>

#include "phantom/checked.hpp"

namespace phantom {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod64(r, a, n);
    a = mulmod64(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FatPointProblem FatPointProblem::from_class(const DivisorClass& c, std::uint64_t prime, std::uint64_t seed) {
  FatPointProblem p;
  p.d = c.h();
  if (p.d < 0) throw std::invalid_argument("interpolation needs degree >= 0: " + c.to_string());
  for (int i = 1; i <= kNumPoints; ++i) {
    p.m[static_cast<std::size_t>(i - 1)] = -c.e(i);
    if (c.e(i) > 0) throw std::invalid_argument("interpolation needs multiplicities >= 0: " + c.to_string());
  }
  p.prime = prime;
  p.seed = seed;
  return p;
}

namespace {

void validate(const FatPointProblem& p) {
  if (p.d < 0) throw std::invalid_argument("degree must be nonnegative");
  for (auto m : p.m)
    if (m < 0) throw std::invalid_argument("multiplicities must be nonnegative");
  if (p.prime >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime must be below 2^32");
  if (!is_prime_u64(p.prime)) throw std::invalid_argument(std::to_string(p.prime) + " is not prime");
  if (p.prime <= static_cast<std::uint64_t>(p.d)) throw std::invalid_argument("prime too small: need p > d");
}

std::int64_t binom2(std::int64_t n) { return checked_mul(n, n - 1) / 2; }

}  // namespace

std::vector<std::array<std::uint32_t, 2>> sample_points(std::uint64_t prime, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coord(1, prime - 1);
  std::vector<std::array<std::uint32_t, 2>> pts;
  std::set<std::uint32_t> used_u, used_v;
  constexpr int kMaxRejections = 1000;
  int rejected = 0;
  while (pts.size() < count) {
    auto u = static_cast<std::uint32_t>(coord(rng));
    auto v = static_cast<std::uint32_t>(coord(rng));
    if (used_u.count(u) || used_v.count(v)) {
      if (++rejected > kMaxRejections) throw std::runtime_error("degenerate point sample after bounded retries");
      continue;
    }
    used_u.insert(u);
    used_v.insert(v);
    pts.push_back({u, v});
  }
  return pts;
}

ModMatrix interpolation_matrix(const FatPointProblem& prob) {
  validate(prob);
  const std::uint64_t p = prob.prime;
  const auto d = static_cast<std::size_t>(prob.d);
  ModMatrix a;
  a.prime = p;
  a.cols = static_cast<std::size_t>(binom2(prob.d + 2));
  std::int64_t rows = 0;
  for (auto m : prob.m) rows = checked_add(rows, binom2(m + 1));
  a.rows = static_cast<std::size_t>(rows);
  a.data.assign(a.rows * a.cols, 0);

  // C(n, k) mod p for n <= d
  std::vector<std::vector<std::uint64_t>> binom(d + 1);
  for (std::size_t n = 0; n <= d; ++n) {
    binom[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) binom[n][k] = (binom[n - 1][k - 1] + binom[n - 1][k]) % p;
  }
  std::vector<std::pair<std::size_t, std::size_t>> monomials;  // (i, j)
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; i + j <= d; ++j) monomials.emplace_back(i, j);

  auto pts = sample_points(p, prob.seed, kNumPoints);
  std::size_t row = 0;
  std::vector<std::uint64_t> upow(d + 1), vpow(d + 1);
  for (std::size_t pt = 0; pt < pts.size(); ++pt) {
    upow[0] = vpow[0] = 1;
    for (std::size_t k = 1; k <= d; ++k) {
      upow[k] = upow[k - 1] * pts[pt][0] % p;
      vpow[k] = vpow[k - 1] * pts[pt][1] % p;
    }
    auto mult = static_cast<std::size_t>(prob.m[pt]);
    for (std::size_t sa = 0; sa < mult; ++sa) {
      for (std::size_t sb = 0; sa + sb < mult; ++sb, ++row) {
        std::uint32_t* out = a.data.data() + row * a.cols;
        for (std::size_t c = 0; c < monomials.size(); ++c) {
          auto [i, j] = monomials[c];
          if (i < sa || j < sb) continue;
          std::uint64_t x = binom[i][sa] * binom[j][sb] % p;
          x = x * upow[i - sa] % p;
          out[c] = static_cast<std::uint32_t>(x * vpow[j - sb] % p);
        }
      }
    }
  }
  return a;
}

namespace {

// r[k] = r[k] + g * s[k] mod p, with gs = floor(g 2^32 / p) (Shoup).
// All products are 32x32 -> 64 bits, which vectorizes to vpmuludq.
__attribute__((target_clones("avx512f", "avx2", "default"))) void axpy_mod(std::uint32_t* __restrict r,
                                                                          const std::uint32_t* __restrict s,
                                                                          std::size_t n, std::uint32_t g,
                                                                          std::uint32_t gs, std::uint32_t p) {
  const std::uint64_t p64 = p;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t x = s[k];
    std::uint64_t q = (x * gs) >> 32;
    std::uint64_t t = x * g - q * p64;  // in [0, 2p)
    t = t >= p64 ? t - p64 : t;
    std::uint64_t y = r[k] + t;
    y = y >= p64 ? y - p64 : y;
    r[k] = static_cast<std::uint32_t>(y);
  }
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return powmod64(a, p - 2, p); }

}  // namespace

std::int64_t rank_mod_p(ModMatrix& a) {
  const std::uint64_t p = a.prime;
  if (p >= (std::uint64_t{1} << 32) || !is_prime_u64(p)) throw std::invalid_argument("rank_mod_p needs a prime below 2^32");
  std::vector<std::uint32_t*> rows(a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) rows[r] = a.data.data() + r * a.cols;
  const std::size_t limit = std::min(a.rows, a.cols);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols && rank < limit; ++c) {
    std::size_t piv = rank;
    while (piv < a.rows && rows[piv][c] == 0) ++piv;
    if (piv == a.rows) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint32_t* prow = rows[rank];
    // Pivot rows are never normalized; each update folds in the inverse.
    const std::uint64_t inv = inverse_mod(prow[c], p);
    for (std::size_t r = rank + 1; r < a.rows; ++r) {
      std::uint32_t* row = rows[r];
      if (row[c] == 0) continue;
      std::uint64_t f = row[c] * inv % p;
      auto g = static_cast<std::uint32_t>(f == 0 ? 0 : p - f);
      auto gs = static_cast<std::uint32_t>((static_cast<std::uint64_t>(g) << 32) / p);
      row[c] = 0;
      axpy_mod(row + c + 1, prow + c + 1, a.cols - c - 1, g, gs, static_cast<std::uint32_t>(p));
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

RankResult interp_dim(const FatPointProblem& p) {
  ModMatrix a = interpolation_matrix(p);
  RankResult r;
  r.columns = static_cast<std::int64_t>(a.cols);
  r.rows = static_cast<std::int64_t>(a.rows);
  r.rank = rank_mod_p(a);
  r.projective_dim = r.columns - 1 - r.rank;
  return r;
}

// -- generality batch --------------------------------------------------------

std::vector<NamedClass> generality_classes() {
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  std::vector<NamedClass> out{{"-F", -f}, {"-2F", -2 * f}};
  for (int i = 1; i <= kNumPoints; ++i)
    out.push_back({"-D" + std::to_string(i), -DivisorClass::reflected_exceptional(i)});
  for (int i = 1; i <= kNumPoints; ++i)
    out.push_back({"D" + std::to_string(i) + "-F", DivisorClass::reflected_exceptional(i) - f});
  return out;
}

std::vector<NamedClass> concordance_classes() {
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  std::vector<NamedClass> out = generality_classes();
  out.push_back({"-3F", -3 * f});
  out.push_back({"57H-19E", DivisorClass::homogeneous(57, 19)});
  out.push_back({"57H-18E-E1", DivisorClass::homogeneous(57, 18) - DivisorClass::exceptional(1)});
  DivisorClass line4{1, {-1, -1, -1, -1, 0, 0, 0, 0, 0, 0}};
  DivisorClass conic6{2, {-1, -1, -1, -1, -1, -1, 0, 0, 0, 0}};
  out.push_back({"H-E1-E2-E3-E4", line4});
  out.push_back({"2H-E1-..-E6", conic6});
  for (int i : {1, 10})
    out.push_back({"26H-8E-2E" + std::to_string(i), DivisorClass::homogeneous(26, 8) - 2 * DivisorClass::exceptional(i)});
  return out;
}

std::vector<NamedClass> named_class_list(const std::string& name) {
  if (name == "krah") return generality_classes();
  if (name == "all") return concordance_classes();
  if (name == "special-locus") {
    auto all = concordance_classes();
    return {all.begin() + static_cast<long>(generality_classes().size()), all.end()};
  }
  throw std::invalid_argument("unknown class list '" + name + "' (krah|special-locus|all)");
}

GeneralityReport verify_generality(const std::vector<NamedClass>& classes, const std::vector<std::uint64_t>& primes,
                                   const std::vector<std::uint64_t>& seeds) {
  GeneralityReport rep;
  rep.all_match = true;
  for (const auto& nc : classes) {
    GeneralityRecord rec;
    rec.name = nc.name;
    rec.cls = nc.cls;
    rec.primes = primes;
    rec.seeds = seeds;
    try {
      rec.expected = decide(nc.cls);
      for (auto p : primes) {
        for (auto s : seeds) {
          auto t0 = std::chrono::steady_clock::now();
          RankResult r = interp_dim(FatPointProblem::from_class(nc.cls, p, s));
          double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          rec.max_seconds = std::max(rec.max_seconds, secs);
          rec.largest_rows = std::max(rec.largest_rows, r.rows);
          rec.largest_cols = std::max(rec.largest_cols, r.columns);
          rec.oracle_dims.push_back(r.projective_dim);
        }
      }
      auto want = rec.expected.projective_dim();
      rec.match = want.has_value() && !rec.oracle_dims.empty();
      for (auto dim : rec.oracle_dims) rec.match = rec.match && dim == *want;
      if (!want) rec.error = "decide returned Unknown";
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.match = false;
    }
    rep.all_match = rep.all_match && rec.match;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace phantom
