#include "phantom/projection_engine.hpp"

#include <functional>
#include <optional>

#include "phantom/checked.hpp"

namespace phantom {

NumClass NumClass::operator+(const NumClass& o) const {
  return {checked_add(rank, o.rank), c1 + o.c1, checked_add(chi, o.chi)};
}

NumClass NumClass::operator-(const NumClass& o) const {
  return {checked_sub(rank, o.rank), c1 - o.c1, checked_sub(chi, o.chi)};
}

NumClass operator*(std::int64_t k, const NumClass& v) { return {checked_mul(k, v.rank), k * v.c1, checked_mul(k, v.chi)}; }

std::string NumClass::to_string() const {
  return "(" + std::to_string(rank) + ", " + c1.to_string() + ", " + std::to_string(chi) + ")";
}

NumClass num_class(const ObjectSpec& o) {
  if (const auto* l = std::get_if<LineBundle>(&o)) return {1, l->cls, euler_char(l->cls)};
  if (std::holds_alternative<Skyscraper>(o)) return {0, DivisorClass{}, 1};
  const auto& c = std::get<CurveSheaf>(o);
  return {0, -c.n * DivisorClass::reflected_hyperplane(), checked_sub(checked_add(c.degree, 1), c.genus)};
}

std::int64_t euler_pairing(const NumClass& v, const NumClass& w) {
  std::int64_t s = checked_add(checked_mul(v.rank, w.chi), checked_mul(w.rank, v.chi));
  s = checked_sub(s, checked_mul(v.rank, w.rank));
  s = checked_sub(s, intersect(v.c1, w.c1));
  return checked_add(s, checked_mul(w.rank, intersect(v.c1, DivisorClass::canonical())));
}

// -- collections -------------------------------------------------------------

ExceptionalCollection::ExceptionalCollection(std::vector<DivisorClass> classes) : classes_(std::move(classes)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    GradedDim self = hom(line(classes_[i]), line(classes_[i]));
    if (self.entries.size() != 1 || !(self.at(0) == DimExpr::constant(1)))
      throw std::invalid_argument("O(" + classes_[i].to_string() + ") is not exceptional: " + self.to_string());
    for (std::size_t j = i + 1; j < classes_.size(); ++j) {
      GradedDim back = hom(line(classes_[j]), line(classes_[i]));
      if (!back.is_zero())
        throw std::invalid_argument("backward hom from position " + std::to_string(j + 1) + " to " +
                                    std::to_string(i + 1) + " is " + back.to_string());
    }
  }
}

ExceptionalCollection ExceptionalCollection::standard() {
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  std::vector<DivisorClass> c{-2 * f, -f};
  for (int i = 1; i <= kNumPoints; ++i) c.push_back(-DivisorClass::reflected_exceptional(i));
  c.push_back(DivisorClass{});
  return ExceptionalCollection(std::move(c));
}

std::vector<DivisorClass> generator_sheaves() {
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  std::vector<DivisorClass> c{DivisorClass{}};
  for (int i = 1; i <= kNumPoints; ++i) c.push_back(DivisorClass::exceptional(i));
  c.push_back(f);
  c.push_back(2 * f);
  return c;
}

ExceptionalCollection ExceptionalCollection::prefix(std::size_t k) const {
  if (k > classes_.size()) throw std::out_of_range("prefix longer than the collection");
  return ExceptionalCollection(std::vector<DivisorClass>(classes_.begin(), classes_.begin() + static_cast<long>(k)),
                               Unchecked{});
}

NumClass project_numclass(const NumClass& k, const ExceptionalCollection& coll) {
  NumClass v = k;
  for (std::size_t j = coll.size(); j-- > 0;) {
    NumClass e = num_class(line(coll[j]));
    v = v - euler_pairing(e, v) * e;
  }
  return v;
}

// -- E1 pages ----------------------------------------------------------------

DimExpr E1Page::at(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? DimExpr{} : it->second;
}

void E1Page::add(int p, int q, const DimExpr& v) {
  DimExpr s = at(p, q) + v;
  if (s.is_zero())
    entries.erase({p, q});
  else
    entries[{p, q}] = s;
}

namespace {

using HomFn = std::function<GradedDim(std::size_t)>;

class LazyHoms {
 public:
  LazyHoms(std::size_t n, HomFn f) : f_(std::move(f)), cache_(n) {}
  const GradedDim& operator()(std::size_t i) {
    if (!cache_[i]) cache_[i] = f_(i);
    return *cache_[i];
  }

 private:
  HomFn f_;
  std::vector<std::optional<GradedDim>> cache_;
};

void absorb(E1Page& page, const GradedDim& g, int p) {
  page.generic = page.generic || g.generic;
  for (const auto& r : g.relations) page.relations.push_back(r);
  for (const auto& [q, v] : g.entries) page.add(p, q, v);
}

// Chains a_0 < ... < a_p in lexicographic order; column = column_of(p + 1).
E1Page chain_page(const GradedDim& column0, std::size_t n, LazyHoms& first, LazyHoms& last,
                  const ExceptionalCollection& coll, const std::function<int(int)>& column_of) {
  E1Page page;
  absorb(page, column0, 0);
  std::vector<std::vector<std::optional<GradedDim>>> mid(n, std::vector<std::optional<GradedDim>>(n));
  auto between = [&](std::size_t a, std::size_t b) -> const GradedDim& {
    if (!mid[a][b]) mid[a][b] = hom(line(coll[a]), line(coll[b]));
    return *mid[a][b];
  };
  std::function<void(std::size_t, int, const GradedDim&)> extend = [&](std::size_t a, int len, const GradedDim& acc) {
    if (acc.is_zero()) return;
    absorb(page, tensor(acc, last(a)), column_of(len));
    for (std::size_t b = a + 1; b < n; ++b) extend(b, len + 1, tensor(acc, between(a, b)));
  };
  for (std::size_t a = 0; a < n; ++a) extend(a, 1, first(a));
  return page;
}

}  // namespace

E1Page e1_page(const ObjectSpec& kprime, const ObjectSpec& k, const ExceptionalCollection& coll) {
  LazyHoms first(coll.size(), [&](std::size_t a) { return hom(kprime, line(coll[a])); });
  LazyHoms last(coll.size(), [&](std::size_t a) { return hom(line(coll[a]), k); });
  return chain_page(hom(kprime, k), coll.size(), first, last, coll, [](int len) { return -len; });
}

E1Page e1_page_right_adjoint(const ObjectSpec& k, const ObjectSpec& kprime, const ExceptionalCollection& coll) {
  LazyHoms first(coll.size(), [&](std::size_t a) { return hom(k, twist_canonical(line(coll[a]))); });
  LazyHoms last(coll.size(), [&](std::size_t a) { return hom(twist_canonical(line(coll[a])), kprime); });
  return chain_page(hom(k, kprime), coll.size(), first, last, coll, [](int len) { return len; });
}

DegeneracyUnprovable::DegeneracyUnprovable(PQ s, PQ t, int r_)
    : std::runtime_error("d_" + std::to_string(r_) + " from (" + std::to_string(s.first) + "," +
                         std::to_string(s.second) + ") to (" + std::to_string(t.first) + "," +
                         std::to_string(t.second) + ") joins two surviving entries"),
      source(s),
      target(t),
      r(r_) {}

GradedDim einfty_total(const E1Page& page, const std::map<PQ, std::int64_t>& d1_ranks) {
  E1Page e2 = page;
  for (const auto& [src, rank] : d1_ranks) {
    PQ tgt{src.first + 1, src.second};
    DimExpr s = page.at(src.first, src.second), t = page.at(tgt.first, tgt.second);
    if (rank < 0) throw std::invalid_argument("negative d1 rank");
    if (rank == 0) continue;
    if (!s.is_numeric() || !t.is_numeric()) throw std::invalid_argument("d1 rank declared on a parametric entry");
    if (rank > s.value() || rank > t.value()) throw std::invalid_argument("d1 rank exceeds an endpoint dimension");
    e2.add(src.first, src.second, DimExpr::constant(-rank));
    e2.add(tgt.first, tgt.second, DimExpr::constant(-rank));
  }
  for (const auto& [src, v] : e2.entries) {
    for (const auto& [tgt, w] : e2.entries) {
      int r = tgt.first - src.first;
      if (r < 1 || tgt.second != src.second - r + 1) continue;
      if (r == 1 && d1_ranks.count(src)) continue;
      throw DegeneracyUnprovable(src, tgt, r);
    }
  }
  GradedDim total;
  total.generic = page.generic;
  total.relations = page.relations;
  for (const auto& [pq, v] : e2.entries) total.add(pq.first + pq.second, v);
  return total;
}

std::int64_t d1_rank_skyscraper(bool same_point, std::size_t collection_size) {
  // The target Hom^2(k(x), k(x)) = C is hit as soon as one evaluation map is nonzero.
  return (same_point && collection_size > 0) ? 1 : 0;
}

NegativeHomReport negative_hom_check(const ObjectSpec& fprime, const ObjectSpec& f, const ExceptionalCollection& coll) {
  NegativeHomReport r;
  std::size_t nonzero = 0, last_nonzero = 0;
  try {
    for (std::size_t i = 0; i < coll.size(); ++i) {
      std::int64_t a = hom0(fprime, line(coll[i]));
      std::int64_t t = a == 0 ? 0 : checked_mul(a, hom0(line(coll[i]), f));
      r.term_dims.push_back(t);
      if (t != 0) {
        ++nonzero;
        last_nonzero = i;
      }
    }
  } catch (const Undecidable& u) {
    r.reason = u.what();
    return r;
  }
  auto is_line = [](const ObjectSpec& o, const DivisorClass& d) {
    const auto* l = std::get_if<LineBundle>(&o);
    return l && l->cls == d;
  };
  if (nonzero == 0) {
    r.certified = true;
    r.reason = "every term hom^0(F', E_i) (x) hom^0(E_i, F) vanishes";
  } else if (nonzero == 1 && (is_line(fprime, coll[last_nonzero]) || is_line(f, coll[last_nonzero]))) {
    // One factor is Hom(E_i, E_i) = C.id, so the composition map is injective.
    r.certified = true;
    r.reason = "single term with an identity factor; composition is injective";
  } else {
    r.reason = "nonzero terms whose composition kernel is not modelled";
  }
  return r;
}

CurveProjectionReport curve_projection_report(std::int64_t n) {
  CurveProjectionReport r;
  CurveSheaf g = CurveSheaf::standard(n);
  r.n = n;
  r.genus = g.genus;
  const DivisorClass f = DivisorClass::reflected_hyperplane();
  ExceptionalCollection coll = ExceptionalCollection::standard();
  r.concentrated = true;
  for (std::size_t i = 0; i < coll.size(); ++i) {
    GradedDim h = hom(line(coll[i]), g);
    r.concentrated = r.concentrated && (i < 2 ? (h.entries.size() == 1 && h.entries.count(1)) : h.is_zero());
    r.hom_e_to_g.push_back(std::move(h));
  }
  r.h2_of_F = line_cohomology(f)[2];
  std::int64_t h1_gf = hom(line(-f), g).at(1).value();
  std::int64_t h1_g2f = hom(line(-2 * f), g).at(1).value();
  r.h1_multiplicity = checked_mul(r.h2_of_F, h1_gf);
  r.h0_mult_f = h1_gf;
  r.h0_mult_2f = h1_g2f;

  NumClass cg = num_class(g), c1 = num_class(line(-f)), c2 = num_class(line(-2 * f));
  r.identity_class = cg + n * c1 - n * c2;
  r.h0_minus_h1 = cg + r.h0_mult_f * c1 + r.h0_mult_2f * c2 - r.h1_multiplicity * c2;
  r.projected = project_numclass(cg, coll);
  r.class_check = r.identity_class.is_zero() && r.h0_minus_h1 == r.identity_class && r.projected.is_zero();
  return r;
}

}  // namespace phantom
