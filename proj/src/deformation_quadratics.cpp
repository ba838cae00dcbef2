#include "phantom/deformation_quadratics.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "phantom/checked.hpp"
#include "phantom/projection_engine.hpp"

namespace phantom {

using Rational = boost::multiprecision::cpp_rational;

int s_index(int i) {
  if (i < 1 || i > 2) throw std::out_of_range("s index out of range");
  return i - 1;
}

int b_index(int i) {
  if (i < 1 || i > kNumB) throw std::out_of_range("b index out of range");
  return i + 1;
}

std::string t1_label(int idx) {
  if (idx < 0 || idx >= kT1Dim) throw std::out_of_range("T1 index out of range");
  return idx < 2 ? "s" + std::to_string(idx + 1) : "b" + std::to_string(idx - 1);
}

int parse_t1_label(const std::string& label) {
  for (int i = 0; i < kT1Dim; ++i)
    if (t1_label(i) == label) return i;
  throw std::invalid_argument("unknown T1 label '" + label + "'");
}

int xi_pair_index(int i, int j) {
  if (i < 1 || i >= j || j > kXiCount) throw std::out_of_range("xi pair needs 1 <= i < j <= 13");
  // rows i = 1..i-1 hold 13-1, 13-2, ... pairs
  return (i - 1) * (2 * kXiCount - i) / 2 + (j - i - 1);
}

std::pair<int, int> xi_pair(int idx) {
  for (int i = 1; i < kXiCount; ++i) {
    int start = xi_pair_index(i, i + 1);
    int count = kXiCount - i;
    if (idx >= start && idx < start + count) return {i, i + 1 + (idx - start)};
  }
  throw std::out_of_range("T2 index out of range");
}

std::string t2_label(int idx) {
  auto [i, j] = xi_pair(idx);
  return "xi" + std::to_string(i) + "xi" + std::to_string(j);
}

T1Vector t1_basis(int idx) {
  T1Vector v(kT1Dim, 0);
  v.at(static_cast<std::size_t>(idx)) = 1;
  return v;
}

T2Vector product(int u, int v) {
  if (u < 0 || u >= kT1Dim || v < 0 || v >= kT1Dim) throw std::out_of_range("T1 index out of range");
  T2Vector r(kT2Dim, 0);
  if (u < 2 || v < 2) return r;
  int i = u - 1, j = v - 1;  // b-labels
  auto put = [&r](int a, int b, std::int64_t c) { r[static_cast<std::size_t>(xi_pair_index(a, b))] += c; };
  if (i < j) {
    put(i, j, 1);
    put(i, kXiCount, -1);
  } else {
    put(i, kXiCount, -1);
  }
  return r;
}

T2Vector product(const T1Vector& u, const T1Vector& v) {
  if (u.size() != kT1Dim || v.size() != kT1Dim) throw std::invalid_argument("T1 vectors have length 14");
  T2Vector r(kT2Dim, 0);
  for (int a = 0; a < kT1Dim; ++a) {
    if (u[static_cast<std::size_t>(a)] == 0) continue;
    for (int b = 0; b < kT1Dim; ++b) {
      std::int64_t c = checked_mul(u[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]);
      if (c == 0) continue;
      T2Vector p = product(a, b);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] = checked_add(r[k], checked_mul(c, p[k]));
    }
  }
  return r;
}

T2Vector symmetrized(int u, int v) {
  T2Vector a = product(u, v), b = product(v, u);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = checked_add(a[k], b[k]);
  return a;
}

std::string to_string(const T2Vector& v) {
  std::string s;
  for (int k = 0; k < kT2Dim; ++k) {
    std::int64_t c = v[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? "+" : "-";
    else if (c < 0) s += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a);
    s += t2_label(k);
  }
  return s.empty() ? "0" : s;
}

// -- quadrics ----------------------------------------------------------------

std::string variable_label(int var) {
  if (var < 0 || var >= kT1Dim) throw std::out_of_range("variable index out of range");
  return var < 2 ? "y" + std::to_string(var) : "x" + std::to_string(var - 1);
}

int x_var(int i) { return b_index(i); }
int y_var(int i) { return s_index(i + 1); }

Quadric Quadric::monomial(int a, int b) {
  Quadric q;
  q.coeffs[{std::min(a, b), std::max(a, b)}] = 1;
  return q;
}

std::int64_t Quadric::at(int a, int b) const {
  auto it = coeffs.find({std::min(a, b), std::max(a, b)});
  return it == coeffs.end() ? 0 : it->second;
}

bool Quadric::involves(int var) const {
  for (const auto& [k, c] : coeffs)
    if (c != 0 && (k.first == var || k.second == var)) return true;
  return false;
}

std::string Quadric::to_string() const {
  std::string s;
  for (const auto& [k, c] : coeffs) {
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? "+" : "-";
    else if (c < 0) s += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a);
    s += k.first == k.second ? variable_label(k.first) + "^2" : variable_label(k.first) + variable_label(k.second);
  }
  return s.empty() ? "0" : s;
}

QuadricIdeal hull_quadrics() {
  QuadricIdeal q;
  for (int i = 1; i <= kNumB; ++i) {
    Quadric f;
    f.coeffs[{x_var(i), x_var(i)}] = 2;
    for (int j = i + 1; j <= kNumB; ++j) f.coeffs[{x_var(i), x_var(j)}] = 1;
    q.push_back(f);
  }
  for (int i = 1; i <= kNumB; ++i)
    for (int j = i + 1; j <= kNumB; ++j) q.push_back(Quadric::monomial(x_var(i), x_var(j)));
  return q;
}

QuadricIdeal hull_quadrics_assembled() {
  // The monomial v_a v_b (a <= b) pairs with t_a t_b; sym(t_a, t_a) = 2 t_a^2.
  QuadricIdeal q(kT2Dim);
  for (int a = 0; a < kT1Dim; ++a) {
    for (int b = a; b < kT1Dim; ++b) {
      T2Vector img = a == b ? product(a, a) : symmetrized(a, b);
      if (a == b)
        for (auto& c : img) c = checked_mul(2, c);
      for (int e = 0; e < kT2Dim; ++e)
        if (img[static_cast<std::size_t>(e)] != 0) q[static_cast<std::size_t>(e)].coeffs[{a, b}] = img[static_cast<std::size_t>(e)];
    }
  }
  return q;
}

namespace {

std::int64_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::int64_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[row][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    ++row;
    ++rank;
  }
  return rank;
}

constexpr std::size_t kMonomials = kT1Dim * (kT1Dim + 1) / 2;

std::size_t monomial_column(int a, int b) {
  if (a > b) std::swap(a, b);
  // columns ordered (0,0), (0,1), ..., (0,13), (1,1), ...
  return static_cast<std::size_t>(a * kT1Dim - a * (a - 1) / 2 + (b - a));
}

std::vector<Rational> row_of(const Quadric& f) {
  std::vector<Rational> r(kMonomials, 0);
  for (const auto& [k, c] : f.coeffs) r[monomial_column(k.first, k.second)] += c;
  return r;
}

std::vector<std::vector<Rational>> matrix_of(const QuadricIdeal& q) {
  std::vector<std::vector<Rational>> m;
  for (const auto& f : q) m.push_back(row_of(f));
  return m;
}

}  // namespace

std::int64_t quadric_rank(const QuadricIdeal& q) { return rational_rank(matrix_of(q)); }

bool in_span(const QuadricIdeal& q, const Quadric& f) {
  auto m = matrix_of(q);
  std::int64_t r = rational_rank(m);
  m.push_back(row_of(f));
  return rational_rank(m) == r;
}

bool same_span(const QuadricIdeal& a, const QuadricIdeal& b) {
  QuadricIdeal u = a;
  u.insert(u.end(), b.begin(), b.end());
  std::int64_t ru = quadric_rank(u);
  return ru == quadric_rank(a) && ru == quadric_rank(b);
}

std::int64_t b_product_rank() {
  std::vector<std::vector<Rational>> m;
  for (int i = 1; i <= kNumB; ++i)
    for (int j = i; j <= kNumB; ++j) {
      T2Vector p = product(b_index(i), b_index(j));
      m.emplace_back(p.begin(), p.end());
    }
  return rational_rank(m);
}

HullReport quadratic_dimension_bound() {
  HullReport r;
  QuadricIdeal q = hull_quadrics();
  r.generators = q.size();
  r.rank = quadric_rank(q);
  r.b_product_rank = b_product_rank();
  r.all_x_monomials_in_span = true;
  for (int i = 1; i <= kNumB; ++i)
    for (int j = i; j <= kNumB; ++j)
      r.all_x_monomials_in_span = r.all_x_monomials_in_span && in_span(q, Quadric::monomial(x_var(i), x_var(j)));
  r.y0y1_in_span = in_span(q, Quadric::monomial(y_var(0), y_var(1)));
  r.assembled_span_equal = same_span(q, hull_quadrics_assembled());
  r.x_only = true;
  for (const auto& f : q)
    for (int i = 0; i < 2; ++i) r.x_only = r.x_only && !f.involves(y_var(i));
  // A direction survives to second order iff its square is not a relation.
  for (int v = 0; v < kT1Dim; ++v)
    if (!in_span(q, Quadric::monomial(v, v))) r.surviving_directions.push_back(variable_label(v));
  r.statement = "x-directions obstructed at order 2, surviving tangent directions = {";
  for (std::size_t k = 0; k < r.surviving_directions.size(); ++k)
    r.statement += (k ? ", " : "") + r.surviving_directions[k];
  r.statement += "}";
  r.pass = r.rank == kT2Dim && r.b_product_rank == kT2Dim && r.all_x_monomials_in_span && !r.y0y1_in_span &&
           r.assembled_span_equal && r.x_only &&
           r.surviving_directions == std::vector<std::string>{"y0", "y1"};
  return r;
}

// -- special locus -----------------------------------------------------------

namespace {

void refute_splits(LocusSystem& s, const std::vector<SplitCase>& cases, int special, SpecialLocusReport& rep) {
  s.enumerated = true;
  for (const auto& c : cases) {
    SplitRefutation f;
    f.c = c;
    f.component = split_component(c, special);
    f.residual = s.cls - f.component;
    f.component_verdict = decide(f.component);
    f.residual_verdict = decide(f.residual);
    if (f.component_verdict.is_empty()) {
      f.refuted = true;
      f.refuted_by = "component";
    } else if (f.residual_verdict.is_empty()) {
      f.refuted = true;
      f.refuted_by = "residual";
    } else {
      s.all_refuted = false;
      for (const auto* v : {&f.component_verdict, &f.residual_verdict})
        if (v->is_unknown()) rep.unknowns.push_back(s.name + ": |" + v->trace.front().cls.to_string() + "|");
    }
    s.splits.push_back(std::move(f));
  }
}

LocusSystem make_system(std::string name, const DivisorClass& cls, SpecialLocusReport& rep) {
  LocusSystem s;
  s.name = std::move(name);
  s.cls = cls;
  s.verdict = decide(cls);
  if (s.verdict.is_unknown()) rep.unknowns.push_back(s.name + ": |" + cls.to_string() + "|");
  s.divisorial = s.verdict.kind == VerdictKind::Dim && s.verdict.dim == 0 && euler_char(cls) == 1;
  return s;
}

}  // namespace

SpecialLocusReport special_locus_report() {
  SpecialLocusReport rep;
  const DivisorClass k = DivisorClass::canonical();
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  for (int i = 1; i <= kNumPoints; ++i)
    rep.systems.push_back(make_system("-K+E" + std::to_string(i), -k + DivisorClass::exceptional(i), rep));
  for (int a = 1; a <= 2; ++a) {
    DivisorClass t = k - a * f;
    LocusSystem s = make_system(a == 1 ? "K-F" : "K-2F", t, rep);
    refute_splits(s, enumerate_split_cases(t, homogeneous_split_constraint(t)), 1, rep);
    rep.systems.push_back(std::move(s));
  }
  for (int a = 1; a <= 2; ++a) {
    for (int i = 1; i <= kNumPoints; ++i) {
      DivisorClass t = k - a * f + DivisorClass::reflected_exceptional(i);
      std::string name = (a == 1 ? "K-F+D" : "K-2F+D") + std::to_string(i);
      LocusSystem s = make_system(name, t, rep);
      // Half of the degree bounds d, with the multiplicity box of the total.
      CaseConstraint c = a == 1 ? orbit_split_constraint(t, i, {0, 5}, {0, 3}, {0, 4})
                                : orbit_split_constraint(t, i, {0, 14}, {0, 9}, {0, 10});
      refute_splits(s, enumerate_split_cases(t, c), i, rep);
      rep.systems.push_back(std::move(s));
    }
  }
  bool ok = rep.unknowns.empty();
  for (const auto& s : rep.systems) {
    if (s.divisorial) rep.divisorial.push_back(s.cls);
    ok = ok && s.all_refuted;
  }
  ok = ok && rep.divisorial.size() == static_cast<std::size_t>(kNumPoints);
  for (const auto& d : rep.divisorial) {
    bool anticanonical_plus_e = false;
    for (int i = 1; i <= kNumPoints; ++i) anticanonical_plus_e |= d == -k + DivisorClass::exceptional(i);
    ok = ok && anticanonical_plus_e;
  }
  rep.pass = ok;
  return rep;
}

CompositionVerdict composition_criterion(std::size_t i, std::size_t j) {
  ExceptionalCollection coll = ExceptionalCollection::standard();
  if (i < 1 || i >= j || j > coll.size()) throw std::invalid_argument("composition_criterion needs 1 <= i < j <= 13");
  CompositionVerdict v;
  v.cls = coll[i - 1] - coll[j - 1] + DivisorClass::canonical();
  v.verdict = decide(v.cls);
  return v;
}

}  // namespace phantom
