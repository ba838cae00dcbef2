#include "phantom/hom_oracle.hpp"

#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "phantom/checked.hpp"
#include "phantom/linear_systems.hpp"
#include "phantom/notation.hpp"

namespace phantom {

CurveSheaf CurveSheaf::standard(std::int64_t n, std::string label) {
  if (n < 3) throw std::invalid_argument("curve sheaves need n >= 3");
  std::int64_t g = checked_add(checked_add(checked_mul(n, n), checked_mul(3, n)), 2) / 2;
  return CurveSheaf{n, g, g - 1, std::move(label)};
}

ObjectSpec line(const DivisorClass& d) { return LineBundle{d}; }

std::string to_string(const ObjectSpec& o) {
  struct V {
    std::string operator()(const LineBundle& l) const { return "O(" + l.cls.to_string() + ")"; }
    std::string operator()(const Skyscraper& s) const { return "k(" + s.label + ")"; }
    std::string operator()(const CurveSheaf& c) const {
      return "G[" + c.label + ",n=" + std::to_string(c.n) + ",g=" + std::to_string(c.genus) +
             ",deg=" + std::to_string(c.degree) + "]";
    }
  };
  return std::visit(V{}, o);
}

ObjectSpec parse_object(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("object needs a kind prefix: " + text);
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "line") return LineBundle{parse_divisor_class(rest)};
  if (kind == "sky") {
    if (rest.empty()) throw std::invalid_argument("skyscraper needs a label");
    return Skyscraper{rest};
  }
  if (kind == "curve") {
    std::map<std::string, std::string> kv;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("curve option needs key=value: " + item);
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (!kv.count("n")) throw std::invalid_argument("curve needs n=<n>");
    CurveSheaf c = CurveSheaf::standard(std::stoll(kv["n"]), kv.count("label") ? kv["label"] : "C");
    if (kv.count("g")) c.genus = std::stoll(kv["g"]);
    c.degree = kv.count("deg") ? std::stoll(kv["deg"]) : c.genus - 1;
    return c;
  }
  throw std::invalid_argument("unknown object kind '" + kind + "'");
}

ObjectSpec twist_canonical(const ObjectSpec& o) {
  if (auto* l = std::get_if<LineBundle>(&o)) return LineBundle{l->cls + DivisorClass::canonical()};
  if (auto* c = std::get_if<CurveSheaf>(&o)) {
    CurveSheaf t = *c;
    t.degree = checked_add(t.degree, curve_intersection_degree(DivisorClass::canonical(), c->n));
    return t;
  }
  return o;
}

// -- DimExpr / GradedDim -----------------------------------------------------

std::int64_t DimExpr::value() const {
  if (!is_numeric()) throw std::logic_error("dimension " + to_string() + " is parametric");
  return c;
}

DimExpr DimExpr::operator+(const DimExpr& o) const {
  return {checked_add(c, o.c), checked_add(ext1, o.ext1), checked_add(ext2, o.ext2)};
}

DimExpr DimExpr::operator-(const DimExpr& o) const {
  return {checked_sub(c, o.c), checked_sub(ext1, o.ext1), checked_sub(ext2, o.ext2)};
}

DimExpr DimExpr::operator*(const DimExpr& o) const {
  if (!is_numeric() && !o.is_numeric()) throw std::logic_error("product of two parametric dimensions");
  const DimExpr& k = is_numeric() ? *this : o;
  const DimExpr& v = is_numeric() ? o : *this;
  return {checked_mul(k.c, v.c), checked_mul(k.c, v.ext1), checked_mul(k.c, v.ext2)};
}

std::string DimExpr::to_string() const {
  std::string s;
  auto term = [&s](std::int64_t k, const std::string& name) {
    if (k == 0) return;
    if (!s.empty()) s += k > 0 ? "+" : "-";
    else if (k < 0) s += "-";
    std::int64_t a = k < 0 ? -k : k;
    if (a != 1 || name.empty()) s += std::to_string(a);
    s += name;
  };
  term(c, "");
  term(ext1, "ext1");
  term(ext2, "ext2");
  return s.empty() ? "0" : s;
}

std::string ParamRelation::to_string() const { return expr.to_string() + " = " + std::to_string(rhs); }

DimExpr GradedDim::at(int k) const {
  auto it = entries.find(k);
  return it == entries.end() ? DimExpr{} : it->second;
}

void GradedDim::add(int k, const DimExpr& v) {
  DimExpr s = at(k) + v;
  if (s.is_zero())
    entries.erase(k);
  else
    entries[k] = s;
}

DimExpr GradedDim::euler() const {
  DimExpr s;
  for (const auto& [k, v] : entries) s = (k % 2 == 0) ? s + v : s - v;
  return s;
}

std::string GradedDim::to_string() const {
  std::string s = "{";
  for (const auto& [k, v] : entries) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(k) + ": " + v.to_string();
  }
  return s + "}";
}

GradedDim tensor(const GradedDim& a, const GradedDim& b) {
  GradedDim r;
  r.generic = a.generic || b.generic;
  r.relations = a.relations;
  r.relations.insert(r.relations.end(), b.relations.begin(), b.relations.end());
  for (const auto& [i, x] : a.entries)
    for (const auto& [j, y] : b.entries) r.add(i + j, x * y);
  return r;
}

Undecidable::Undecidable(const DivisorClass& c, const std::string& why)
    : std::runtime_error("undecidable: |" + c.to_string() + "| " + why), cls_(c) {}

// -- cohomology --------------------------------------------------------------

namespace {

std::shared_mutex memo_mutex;
std::map<DivisorClass, std::array<std::int64_t, 3>> memo;

std::int64_t decided_h0(const DivisorClass& d) {
  SystemVerdict v = decide(d);
  if (v.is_unknown()) throw Undecidable(d, "has no certifying rule");
  return *v.h0();
}

GradedDim concentrated(int degree, std::int64_t dim) {
  GradedDim g;
  if (dim != 0) g.add(degree, DimExpr::constant(dim));
  return g;
}

}  // namespace

std::array<std::int64_t, 3> line_cohomology(const DivisorClass& d) {
  {
    std::shared_lock lock(memo_mutex);
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
  }
  std::int64_t h0 = decided_h0(d);
  // Serre duality: h^2(D) = h^0(K - D).
  std::int64_t h2 = h2_vanishes(d) ? 0 : decided_h0(DivisorClass::canonical() - d);
  std::int64_t h1 = checked_sub(checked_add(h0, h2), euler_char(d));
  if (h1 < 0) throw std::logic_error("negative h^1 for " + d.to_string());
  std::array<std::int64_t, 3> h{h0, h1, h2};
  std::unique_lock lock(memo_mutex);
  memo.emplace(d, h);
  return h;
}

std::int64_t line_h0(const DivisorClass& d) {
  {
    std::shared_lock lock(memo_mutex);
    auto it = memo.find(d);
    if (it != memo.end()) return it->second[0];
  }
  return decided_h0(d);
}

std::int64_t hom0(const ObjectSpec& a, const ObjectSpec& b) {
  const auto* la = std::get_if<LineBundle>(&a);
  const auto* lb = std::get_if<LineBundle>(&b);
  if (la && lb) return line_h0(lb->cls - la->cls);
  return hom(a, b).at(0).value();
}

CurveCohomology generic_line_bundle_h(std::int64_t g, std::int64_t e) {
  if (g < 0) throw std::invalid_argument("genus must be nonnegative");
  // A generic bundle of degree e has h^0 = 0 for e <= g-1 and h^1 = 0 for e >= g-1.
  std::int64_t chi = checked_sub(checked_add(e, 1), g);
  std::int64_t h0 = chi > 0 ? chi : 0;
  return {h0, h0 - chi};
}

std::int64_t curve_intersection_degree(const DivisorClass& d, std::int64_t n) {
  return checked_mul(-n, intersect(d, DivisorClass::reflected_hyperplane()));
}

namespace {

GradedDim line_line(const DivisorClass& a, const DivisorClass& b) {
  auto h = line_cohomology(b - a);
  GradedDim g;
  for (int k = 0; k < 3; ++k)
    if (h[static_cast<std::size_t>(k)] != 0) g.add(k, DimExpr::constant(h[static_cast<std::size_t>(k)]));
  return g;
}

// Hom*(O(D), iota_* L) = H*(C, L(-D.C)).
GradedDim line_curve(const DivisorClass& d, const CurveSheaf& c) {
  auto h = generic_line_bundle_h(c.genus, checked_sub(c.degree, curve_intersection_degree(d, c.n)));
  GradedDim g;
  g.generic = true;
  if (h.h0) g.add(0, DimExpr::constant(h.h0));
  if (h.h1) g.add(1, DimExpr::constant(h.h1));
  return g;
}

// Hom^k(iota_* L, O(D)) = Hom^{2-k}(O(D), iota_* L (x) omega)^v.
GradedDim curve_line(const CurveSheaf& c, const DivisorClass& d) {
  GradedDim dual = line_curve(d, std::get<CurveSheaf>(twist_canonical(c)));
  GradedDim g;
  g.generic = true;
  for (const auto& [k, v] : dual.entries) g.add(2 - k, v);
  return g;
}

GradedDim curve_curve(const CurveSheaf& a, const CurveSheaf& b) {
  GradedDim g;
  g.generic = true;
  // chi(G, G') = -(C.C') = -n n'; Hom^0 is C for the same (C, L) and 0 otherwise.
  std::int64_t hom0 = (a == b) ? 1 : 0;
  if (hom0) g.add(0, DimExpr::constant(1));
  g.add(1, DimExpr{0, 1, 0});
  g.add(2, DimExpr{0, 0, 1});
  g.relations.push_back({DimExpr{0, 1, -1}, checked_add(hom0, checked_mul(a.n, b.n))});
  return g;
}

}  // namespace

GradedDim hom(const ObjectSpec& a, const ObjectSpec& b) {
  if (auto* la = std::get_if<LineBundle>(&a)) {
    if (auto* lb = std::get_if<LineBundle>(&b)) return line_line(la->cls, lb->cls);
    if (std::holds_alternative<Skyscraper>(b)) return concentrated(0, 1);
    return line_curve(la->cls, std::get<CurveSheaf>(b));
  }
  if (auto* sa = std::get_if<Skyscraper>(&a)) {
    if (std::holds_alternative<LineBundle>(b)) return concentrated(2, 1);
    if (auto* sb = std::get_if<Skyscraper>(&b)) {
      GradedDim g;
      if (sa->label == sb->label) {
        // Koszul resolution of k(x)
        g.add(0, DimExpr::constant(1));
        g.add(1, DimExpr::constant(2));
        g.add(2, DimExpr::constant(1));
      }
      return g;
    }
    throw std::invalid_argument("Hom between a skyscraper and a curve sheaf depends on x in C; not modelled");
  }
  const auto& ca = std::get<CurveSheaf>(a);
  if (auto* lb = std::get_if<LineBundle>(&b)) return curve_line(ca, lb->cls);
  if (auto* cb = std::get_if<CurveSheaf>(&b)) return curve_curve(ca, *cb);
  throw std::invalid_argument("Hom between a curve sheaf and a skyscraper depends on x in C; not modelled");
}

}  // namespace phantom
