#include "phantom/linear_systems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "phantom/checked.hpp"

namespace phantom {

std::optional<std::int64_t> SystemVerdict::h0() const {
  switch (kind) {
    case VerdictKind::Empty:
      return 0;
    case VerdictKind::Dim:
      return dim + 1;
    default:
      return std::nullopt;
  }
}

std::optional<std::int64_t> SystemVerdict::projective_dim() const {
  auto h = h0();
  if (!h) return std::nullopt;
  return *h - 1;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Empty:
      return "Empty";
    case VerdictKind::Dim:
      return "Dim";
    default:
      return "Unknown";
  }
}

std::string to_string(const SystemVerdict& v) {
  if (v.kind == VerdictKind::Dim) return "Dim(" + std::to_string(v.dim) + ")";
  return to_string(v.kind);
}

bool h2_vanishes(const DivisorClass& d) { return (DivisorClass::canonical() - d).h() < 0; }

bool empty_by_slope(std::int64_t d, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("empty_by_slope needs m > 0");
  if (d < 0) throw std::invalid_argument("empty_by_slope needs d >= 0");
  return checked_mul(kEmptySlope.den, d) < checked_mul(kEmptySlope.num, m);
}

bool nonspecial_by_slope(std::int64_t d, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("nonspecial_by_slope needs m > 0");
  return checked_mul(kNonspecialSlope.den, d) >= checked_mul(kNonspecialSlope.num, m);
}

bool nonspecial_standard_form(const DivisorClass& d) {
  auto m = d.mults();
  if (std::any_of(m.begin(), m.end(), [](std::int64_t v) { return v < 0; }))
    throw std::invalid_argument("standard-form test needs nonnegative multiplicities");
  std::sort(m.begin(), m.end(), std::greater<>());
  std::int64_t top3 = checked_add(checked_add(m[0], m[1]), m[2]);
  return d.degree() >= top3 && m[0] <= 11;
}

namespace {

struct Cascade {
  std::vector<TraceStep> trace;

  SystemVerdict finish(VerdictKind kind, std::int64_t dim = -1) {
    return SystemVerdict{kind, dim, std::move(trace)};
  }

  // Non-special and h^2 = 0, so h^0 = max(chi, 0).
  SystemVerdict from_chi(const DivisorClass& c) {
    std::int64_t chi = euler_char(c);
    return chi >= 1 ? finish(VerdictKind::Dim, chi - 1) : finish(VerdictKind::Empty);
  }

  std::optional<SystemVerdict> slope_rules(const DivisorClass& c) {
    auto m = c.mults();
    std::int64_t sum = 0;
    for (auto v : m) sum = checked_add(sum, v);
    if (sum == 0) return std::nullopt;
    if (c.is_homogeneous()) {
      std::int64_t mm = m[0];
      if (empty_by_slope(c.degree(), mm)) {
        trace.push_back({"slope_empty", c, "d/m < 2280/721"});
        return finish(VerdictKind::Empty);
      }
      if (nonspecial_by_slope(c.degree(), mm) && h2_vanishes(c)) {
        trace.push_back({"slope_nonspecial", c, "d/m >= 174/55, chi = " + std::to_string(euler_char(c))});
        return from_chi(c);
      }
      return std::nullopt;
    }
    // Every permuted system is nonempty together with |c|, so the orbit sum
    // 10!d H - 9! (sum m) sum E is effective; its slope is 10d / sum m.
    if (checked_mul(kEmptySlope.den, checked_mul(10, c.degree())) < checked_mul(kEmptySlope.num, sum)) {
      trace.push_back({"orbit_slope_empty", c, "10d/sum(m) < 2280/721"});
      return finish(VerdictKind::Empty);
    }
    return std::nullopt;
  }
};

}  // namespace

SystemVerdict decide(const DivisorClass& d) {
  Cascade run;
  run.trace.push_back({"input", d, ""});

  DivisorClass c = clamp_exceptional(d);
  if (c != d) run.trace.push_back({"clamp_exceptional", c, "+kE_i summands are fixed components"});
  if (c.degree() < 0) {
    run.trace.push_back({"negative_degree", c, "pushforward would be a plane curve of negative degree"});
    return run.finish(VerdictKind::Empty);
  }

  DivisorClass unreduced = c;
  CremonaReduction red = cremona_reduce(c);
  for (const auto& entry : red.log) {
    run.trace.push_back({entry.kind == CremonaLogEntry::Kind::Step ? "cremona" : "clamp_exceptional", entry.after,
                         entry.kind == CremonaLogEntry::Kind::Step ? "quadratic transformation on m1,m2,m3" : ""});
  }
  c = red.reduced;
  if (c.degree() < 0) {
    run.trace.push_back({"negative_degree", c, "after Cremona reduction"});
    return run.finish(VerdictKind::Empty);
  }
  if (red.next_step_negative) {
    run.trace.push_back({"cremona_negative_degree", c, "m1+m2+m3 > 2d: the next transformation has negative degree"});
    return run.finish(VerdictKind::Empty);
  }

  if (auto v = run.slope_rules(c)) return *std::move(v);
  if (unreduced != c && canonical_form(unreduced) != c) {
    if (auto v = run.slope_rules(unreduced)) return *std::move(v);
  }

  if (h2_vanishes(c) && nonspecial_standard_form(c)) {
    run.trace.push_back({"standard_form", c, "d >= m1+m2+m3, m_i <= 11, chi = " + std::to_string(euler_char(c))});
    return run.from_chi(c);
  }

  run.trace.push_back({"unknown", c, "no rule certifies this system"});
  return run.finish(VerdictKind::Unknown);
}

// -- case enumeration --------------------------------------------------------

std::int64_t LinearForm3::operator()(std::int64_t d, std::int64_t m, std::int64_t mp) const {
  return checked_add(checked_add(checked_mul(cd, d), checked_mul(cm, m)), checked_add(checked_mul(cmp, mp), c0));
}

bool RatioConstraint::holds(std::int64_t d, std::int64_t m, std::int64_t mp) const {
  std::int64_t n = num(d, m, mp);
  std::int64_t q = den(d, m, mp);
  if (q < 0) throw std::domain_error("ratio denominator negative inside the searched box");
  if (q == 0) return n >= 0;
  return checked_mul(n, threshold.den) >= checked_mul(threshold.num, q);
}

DivisorClass split_component(const SplitCase& c, int special_index) {
  DivisorClass b = DivisorClass::homogeneous(c.d, c.m);
  return b - c.mp * DivisorClass::exceptional(special_index);
}

std::vector<SplitCase> enumerate_split_cases(const DivisorClass& total, const CaseConstraint& k) {
  for (const Interval* iv : {&k.d, &k.m, &k.mp, &k.mult_at})
    if (iv->lo > iv->hi) throw std::invalid_argument("empty search box");
  std::vector<SplitCase> out;
  for (std::int64_t d = k.d.lo; d <= k.d.hi; ++d) {
    for (std::int64_t m = k.m.lo; m <= k.m.hi; ++m) {
      for (std::int64_t mp = k.mp.lo; mp <= k.mp.hi; ++mp) {
        if (!k.mult_at.contains(m + mp)) continue;
        SplitCase sc{d, m, mp};
        DivisorClass b = split_component(sc, k.special_index);
        if (b == DivisorClass{} || b == total) continue;
        if (std::all_of(k.ratios.begin(), k.ratios.end(), [&](const RatioConstraint& r) { return r.holds(d, m, mp); }))
          out.push_back(sc);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CaseConstraint homogeneous_split_constraint(const DivisorClass& total) {
  if (!total.is_homogeneous()) throw std::invalid_argument("homogeneous split needs a homogeneous total");
  std::int64_t big_d = total.degree();
  std::int64_t big_m = total.mult(1);
  CaseConstraint k;
  k.d = {0, big_d};
  k.m = {0, big_m};
  k.mp = {0, 0};
  k.mult_at = {0, big_m};
  k.ratios.push_back({kEmptySlope, {1, 0, 0, 0}, {0, 1, 0, 0}});
  k.ratios.push_back({kEmptySlope, {-1, 0, 0, big_d}, {0, -1, 0, big_m}});
  return k;
}

CaseConstraint orbit_split_constraint(const DivisorClass& total, int special_index, Interval d, Interval m,
                                      Interval mult_at) {
  std::int64_t other = total.mult(special_index == 1 ? 2 : 1);
  for (int i = 1; i <= kNumPoints; ++i)
    if (i != special_index && total.mult(i) != other)
      throw std::invalid_argument("orbit split needs equal multiplicities away from the special point");
  std::int64_t orbit_deg = checked_mul(10, total.degree());
  std::int64_t orbit_mult = checked_add(checked_mul(9, other), total.mult(special_index));
  CaseConstraint k;
  k.d = d;
  k.m = m;
  k.mp = {mult_at.lo - m.hi, mult_at.hi - m.lo};
  k.mult_at = mult_at;
  k.special_index = special_index;
  // 10d / (10m + m') and (10D - 10d) / ((9M + M_i) - (10m + m'))
  k.ratios.push_back({kEmptySlope, {10, 0, 0, 0}, {0, 10, 1, 0}});
  k.ratios.push_back({kEmptySlope, {-10, 0, 0, orbit_deg}, {0, -10, -1, orbit_mult}});
  return k;
}

// -- symmetry arguments ------------------------------------------------------

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multinomial(const std::vector<int>& counts) {
  std::uint64_t r = factorial(kNumPoints);
  for (int c : counts) r /= factorial(c);
  return r;
}

void partitions(int n, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (n == 0) {
    f(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, f);
    cur.pop_back();
  }
}

}  // namespace

std::uint64_t orbit_size(const DivisorClass& b) {
  std::map<std::int64_t, int> counts;
  for (auto v : b.e()) ++counts[v];
  std::vector<int> c;
  for (const auto& [value, n] : counts) c.push_back(n);
  return multinomial(c);
}

OrbitReport orbit_divisor_argument(const DivisorClass& b, const DivisorClass& total) {
  OrbitReport r;
  r.orbit_size = orbit_size(b);
  auto size = static_cast<std::int64_t>(r.orbit_size);
  // Each coordinate receives every value equally often across the orbit.
  std::int64_t esum = 0;
  for (auto v : b.e()) esum = checked_add(esum, v);
  DivisorClass::Coeffs e;
  e.fill(checked_mul(size, esum) / kNumPoints);
  r.union_class = DivisorClass(checked_mul(size, b.h()), e);
  r.union_degree = r.union_class.h();
  r.total_degree = total.h();
  r.size_divides_total_degree = r.total_degree != 0 && r.total_degree % size == 0;
  r.union_equals_total = r.union_class == total;
  r.consistent = r.size_divides_total_degree && r.union_equals_total;

  std::set<std::uint64_t> sizes;
  std::vector<int> cur;
  partitions(kNumPoints, kNumPoints, cur, [&](const std::vector<int>& p) { sizes.insert(multinomial(p)); });
  std::int64_t t = r.total_degree < 0 ? -r.total_degree : r.total_degree;
  for (std::int64_t k = 1; k <= t; ++k)
    if (t % k == 0 && sizes.count(static_cast<std::uint64_t>(k))) r.achievable_divisor_sizes.push_back(k);
  return r;
}

AmpleReport ample_slope_check() {
  AmpleReport r;
  DivisorClass neg_f = -DivisorClass::reflected_hyperplane();
  r.bound_num = checked_mul(10, kEmptySlope.den);
  r.bound_den = kEmptySlope.num;
  r.lhs = checked_mul(r.bound_num, 6);
  r.rhs = checked_mul(r.bound_den, 19);
  r.bound_below_19_over_6 = r.lhs < r.rhs;
  r.self_intersection = intersect(neg_f, neg_f);
  for (int i = 1; i <= kNumPoints; ++i) r.dot_exceptional.push_back(intersect(neg_f, DivisorClass::exceptional(i)));

  // symmetrize_full turns aH - sum b_i E_i into 10!a H - 9!(sum b) sum E.
  DivisorClass sample = DivisorClass::from_degree_mults(7, {3, 2, 2, 2, 1, 1, 1, 0, 0, 0});
  DivisorClass sym = symmetrize_full(sample);
  std::int64_t sum_b = 12;
  // sym.h / sym.mult == 10 a / sum b  <=>  sym.h * sum_b == 10 a * sym.mult
  r.symmetrized_ratio_matches = checked_mul(sym.h(), sum_b) == checked_mul(checked_mul(10, sample.h()), sym.mult(1));

  bool dots = std::all_of(r.dot_exceptional.begin(), r.dot_exceptional.end(), [](std::int64_t v) { return v == 6; });
  r.all_pass = r.bound_below_19_over_6 && r.self_intersection == 1 && dots && r.symmetrized_ratio_matches;
  return r;
}

}  // namespace phantom
