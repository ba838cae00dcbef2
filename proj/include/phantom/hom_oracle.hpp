#pragma once

// Graded Hom dimensions between line bundles, skyscrapers and pushforwards of
// generic line bundles on curves in |-nF|.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "phantom/picard_lattice.hpp"

namespace phantom {

struct LineBundle {
  DivisorClass cls;
};

struct Skyscraper {
  std::string label = "x";
};

// iota_* L for C -> X with image in |-nF| and L of degree deg on C.
struct CurveSheaf {
  std::int64_t n = 3;
  std::int64_t genus = 0;
  std::int64_t degree = 0;
  std::string label = "C";

  // genus = (n^2+3n+2)/2, degree = genus - 1
  static CurveSheaf standard(std::int64_t n, std::string label = "C");
  bool operator==(const CurveSheaf&) const = default;
};

using ObjectSpec = std::variant<LineBundle, Skyscraper, CurveSheaf>;

ObjectSpec line(const DivisorClass& d);
std::string to_string(const ObjectSpec& o);
// "line:<class>", "sky:<label>", "curve:n=<n>[,g=<g>][,deg=<e>][,label=<s>]"
ObjectSpec parse_object(const std::string& text);
// Tensor with omega_X: line bundles shift by K, skyscrapers are fixed, curve
// sheaves shift degree by K.C = 3n.
ObjectSpec twist_canonical(const ObjectSpec& o);

// c + a*ext1 + b*ext2
struct DimExpr {
  std::int64_t c = 0;
  std::int64_t ext1 = 0;
  std::int64_t ext2 = 0;

  static DimExpr constant(std::int64_t v) { return {v, 0, 0}; }
  bool is_zero() const { return c == 0 && ext1 == 0 && ext2 == 0; }
  bool is_numeric() const { return ext1 == 0 && ext2 == 0; }
  std::int64_t value() const;  // throws unless numeric

  DimExpr operator+(const DimExpr& o) const;
  DimExpr operator-(const DimExpr& o) const;
  DimExpr operator*(const DimExpr& o) const;  // one side must be numeric
  bool operator==(const DimExpr&) const = default;
  std::string to_string() const;
};

// expr == rhs
struct ParamRelation {
  DimExpr expr;
  std::int64_t rhs = 0;
  std::string to_string() const;
};

struct GradedDim {
  std::map<int, DimExpr> entries;  // zero entries are never stored
  bool generic = false;            // true when the value holds for generic L only
  std::vector<ParamRelation> relations;

  DimExpr at(int k) const;
  void add(int k, const DimExpr& v);
  bool is_zero() const { return entries.empty(); }
  // sum (-1)^k entries
  DimExpr euler() const;
  // (0:1, 1:2) style rendering
  std::string to_string() const;
  bool same_dims(const GradedDim& o) const { return entries == o.entries; }
};

// Tensor product of graded spaces (degrees add).
GradedDim tensor(const GradedDim& a, const GradedDim& b);

class Undecidable : public std::runtime_error {
 public:
  explicit Undecidable(const DivisorClass& c, const std::string& why);
  const DivisorClass& cls() const { return cls_; }

 private:
  DivisorClass cls_;
};

// (h0, h1, h2) of O_X(D); throws Undecidable. Memoized.
std::array<std::int64_t, 3> line_cohomology(const DivisorClass& d);

// h^0(O(D)) alone; throws Undecidable.
std::int64_t line_h0(const DivisorClass& d);

// Degree-0 part of hom(a, b), computing only what that part needs.
std::int64_t hom0(const ObjectSpec& a, const ObjectSpec& b);

// Generic degree-e line bundle on a genus-g curve.
struct CurveCohomology {
  std::int64_t h0 = 0;
  std::int64_t h1 = 0;
};
CurveCohomology generic_line_bundle_h(std::int64_t g, std::int64_t e);

// D.C for C in |-nF|, i.e. -n (D.F).
std::int64_t curve_intersection_degree(const DivisorClass& d, std::int64_t n);

GradedDim hom(const ObjectSpec& a, const ObjectSpec& b);

}  // namespace phantom
