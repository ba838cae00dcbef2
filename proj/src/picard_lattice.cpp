#include "phantom/picard_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "phantom/checked.hpp"

namespace phantom {

namespace {

DivisorClass::Coeffs filled(std::int64_t v) {
  DivisorClass::Coeffs c;
  c.fill(v);
  return c;
}

void check_index(int i) {
  if (i < 1 || i > kNumPoints) throw std::out_of_range("exceptional index out of range: " + std::to_string(i));
}

}  // namespace

DivisorClass DivisorClass::from_degree_mults(std::int64_t d, const Coeffs& m) {
  Coeffs e;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_neg(m[i]);
  return {d, e};
}

DivisorClass DivisorClass::homogeneous(std::int64_t d, std::int64_t m) { return {d, filled(checked_neg(m))}; }

DivisorClass DivisorClass::hyperplane() { return {1, filled(0)}; }

DivisorClass DivisorClass::exceptional(int i) {
  check_index(i);
  Coeffs e = filled(0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return {0, e};
}

DivisorClass DivisorClass::sum_exceptional() { return {0, filled(1)}; }

DivisorClass DivisorClass::canonical() { return {-3, filled(1)}; }

DivisorClass DivisorClass::reflected_exceptional(int i) {
  check_index(i);
  Coeffs e = filled(2);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return {-6, e};
}

DivisorClass DivisorClass::reflected_hyperplane() { return {-19, filled(6)}; }

std::int64_t DivisorClass::mult(int i) const {
  check_index(i);
  return checked_neg(e_[static_cast<std::size_t>(i - 1)]);
}

DivisorClass::Coeffs DivisorClass::mults() const {
  Coeffs m;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked_neg(e_[i]);
  return m;
}

bool DivisorClass::is_homogeneous() const {
  return std::all_of(e_.begin(), e_.end(), [&](std::int64_t v) { return v == e_[0]; });
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  Coeffs e;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(e_[i], o.e_[i]);
  return {checked_add(h_, o.h_), e};
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
  Coeffs e;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_sub(e_[i], o.e_[i]);
  return {checked_sub(h_, o.h_), e};
}

DivisorClass DivisorClass::operator-() const { return DivisorClass{} - *this; }

DivisorClass operator*(std::int64_t k, const DivisorClass& d) {
  DivisorClass::Coeffs e;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_mul(k, d.e_[i]);
  return {checked_mul(k, d.h_), e};
}

std::string DivisorClass::to_string() const {
  std::string s;
  if (h_ != 0) s = (h_ == 1 ? "" : h_ == -1 ? "-" : std::to_string(h_)) + "H";
  for (int i = 1; i <= kNumPoints; ++i) {
    std::int64_t c = e(i);
    if (c == 0) continue;
    std::string mag = (c == 1 || c == -1) ? "" : std::to_string(c > 0 ? c : -c);
    if (c < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    s += mag + "E" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

std::array<std::int64_t, kNumPoints + 1> DivisorClass::to_array() const {
  std::array<std::int64_t, kNumPoints + 1> a{};
  a[0] = h_;
  std::copy(e_.begin(), e_.end(), a.begin() + 1);
  return a;
}

DivisorClass DivisorClass::from_array(const std::vector<std::int64_t>& v) {
  if (v.size() != kNumPoints + 1)
    throw std::invalid_argument("divisor class needs exactly 11 coordinates, got " + std::to_string(v.size()));
  Coeffs e;
  std::copy(v.begin() + 1, v.end(), e.begin());
  return {v[0], e};
}

Permutation::Permutation() { std::iota(images_.begin(), images_.end(), 0); }

Permutation::Permutation(const std::array<int, kNumPoints>& images_one_based) {
  std::array<bool, kNumPoints> seen{};
  for (std::size_t i = 0; i < images_.size(); ++i) {
    int v = images_one_based[i];
    if (v < 1 || v > kNumPoints || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("not a bijection of {1..10}");
    seen[static_cast<std::size_t>(v - 1)] = true;
    images_[i] = v - 1;
  }
}

Permutation Permutation::transposition(int i, int j) {
  check_index(i);
  check_index(j);
  std::array<int, kNumPoints> img;
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[static_cast<std::size_t>(i - 1)], img[static_cast<std::size_t>(j - 1)]);
  return Permutation(img);
}

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) {
  std::int64_t r = checked_mul(a.h(), b.h());
  for (std::size_t i = 0; i < a.e().size(); ++i) r = checked_sub(r, checked_mul(a.e()[i], b.e()[i]));
  return r;
}

std::int64_t euler_char(const DivisorClass& d) {
  std::int64_t twice = checked_sub(intersect(d, d), intersect(d, DivisorClass::canonical()));
  // D.D - D.K = D.(D - K) is even on any surface (Wu's formula).
  if (twice % 2 != 0) throw std::logic_error("D.D - D.K odd for " + d.to_string());
  return checked_add(1, twice / 2);
}

DivisorClass reflection_r(const DivisorClass& d) {
  DivisorClass r = d.h() * DivisorClass::reflected_hyperplane();
  for (int i = 1; i <= kNumPoints; ++i) r = r + d.e(i) * DivisorClass::reflected_exceptional(i);
  return r;
}

DivisorClass permute(const Permutation& s, const DivisorClass& d) {
  DivisorClass::Coeffs e{};
  for (int i = 1; i <= kNumPoints; ++i) e[static_cast<std::size_t>(s(i) - 1)] = d.e(i);
  return {d.h(), e};
}

DivisorClass cremona_step(const DivisorClass& d, int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j || j == k || i == k) throw std::invalid_argument("cremona_step needs three distinct indices");
  // d' = 2d - (m_i+m_j+m_k), m'_t = d - (m_i+m_j+m_k) + m_t on the chosen indices.
  std::int64_t s = checked_add(checked_add(d.mult(i), d.mult(j)), d.mult(k));
  DivisorClass::Coeffs m = d.mults();
  for (int t : {i, j, k}) {
    auto& mt = m[static_cast<std::size_t>(t - 1)];
    mt = checked_add(checked_sub(d.degree(), s), mt);
  }
  return DivisorClass::from_degree_mults(checked_sub(checked_mul(2, d.degree()), s), m);
}

DivisorClass canonical_form(const DivisorClass& d) {
  DivisorClass::Coeffs m = d.mults();
  std::stable_sort(m.begin(), m.end(), std::greater<>());
  return DivisorClass::from_degree_mults(d.degree(), m);
}

DivisorClass clamp_exceptional(const DivisorClass& d) {
  DivisorClass::Coeffs e = d.e();
  for (auto& v : e) v = std::min<std::int64_t>(v, 0);
  return {d.h(), e};
}

CremonaReduction cremona_reduce(const DivisorClass& d) {
  CremonaReduction out;
  DivisorClass c = canonical_form(d);
  for (;;) {
    DivisorClass clamped = clamp_exceptional(c);
    if (clamped != c) {
      DivisorClass after = canonical_form(clamped);
      out.log.push_back({CremonaLogEntry::Kind::Clamp, c, after});
      c = after;
    }
    if (c.degree() < 0) break;
    std::int64_t s = checked_add(checked_add(c.mult(1), c.mult(2)), c.mult(3));
    if (s <= c.degree()) break;
    if (s > checked_mul(2, c.degree())) {
      out.next_step_negative = true;
      break;
    }
    DivisorClass after = canonical_form(cremona_step(c, 1, 2, 3));
    out.log.push_back({CremonaLogEntry::Kind::Step, c, after});
    c = after;
  }
  out.reduced = c;
  return out;
}

DivisorClass symmetrize_full(const DivisorClass& d) {
  constexpr std::int64_t kFact9 = 362880;
  constexpr std::int64_t kFact10 = 3628800;
  std::int64_t sum = 0;
  for (auto v : d.e()) sum = checked_add(sum, v);
  DivisorClass::Coeffs e;
  e.fill(checked_mul(kFact9, sum));
  return {checked_mul(kFact10, d.h()), e};
}

std::int64_t arithmetic_genus(const DivisorClass& c) {
  std::int64_t twice = checked_add(intersect(c, c), intersect(c, DivisorClass::canonical()));
  if (twice % 2 != 0) throw std::logic_error("C.C + C.K odd for " + c.to_string());
  return checked_add(1, twice / 2);
}

}  // namespace phantom
