#pragma once

// The projection spectral sequence at the level of graded dimensions, and the
// numerical Grothendieck group shadow of the projection.
//
// E1 page for Hom(i^* K', i^* K) against a collection <E_1..E_N>:
//   E1^{0,q}      = hom^q(K', K)
//   E1^{-p-1,q}   = sum over a_0 < ... < a_p and degree splits summing to q of
//                   hom(K', E_{a_0}) (x) hom(E_{a_0}, E_{a_1}) (x) ... (x) hom(E_{a_p}, K)
// d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phantom/hom_oracle.hpp"

namespace phantom {

struct NumClass {
  std::int64_t rank = 0;
  DivisorClass c1;
  std::int64_t chi = 0;

  NumClass operator+(const NumClass& o) const;
  NumClass operator-(const NumClass& o) const;
  friend NumClass operator*(std::int64_t k, const NumClass& v);
  bool operator==(const NumClass&) const = default;
  bool is_zero() const { return *this == NumClass{}; }
  std::string to_string() const;
};

NumClass num_class(const ObjectSpec& o);

// chi(v, w) = r chi_w + r' chi_v - r r' - c.c' + r' (c.K)
std::int64_t euler_pairing(const NumClass& v, const NumClass& w);

class ExceptionalCollection {
 public:
  // Each object is checked: hom(E_i, E_i) = C[0] and hom(E_j, E_i) = 0 for i < j.
  // Throws std::invalid_argument otherwise (Undecidable propagates).
  explicit ExceptionalCollection(std::vector<DivisorClass> classes);

  // <O(-2F), O(-F), O(-D_1), ..., O(-D_10), O>
  static ExceptionalCollection standard();

  std::size_t size() const { return classes_.size(); }
  const DivisorClass& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<DivisorClass>& classes() const { return classes_; }
  ExceptionalCollection prefix(std::size_t k) const;

 private:
  struct Unchecked {};
  ExceptionalCollection(std::vector<DivisorClass> classes, Unchecked) : classes_(std::move(classes)) {}
  std::vector<DivisorClass> classes_;
};

// The sheaves L_1..L_13 = O, O(E_1), ..., O(E_10), O(F), O(2F) whose
// projections form the generator. Not exceptional in this order:
// Hom(O(F), O(E_i)) = H^0(19H - 5E_i - 6 sum_{j != i} E_j) has dimension 6.
std::vector<DivisorClass> generator_sheaves();

// Sequential left mutation: for j from last to first, v -= chi(E_j, v) [E_j].
NumClass project_numclass(const NumClass& k, const ExceptionalCollection& coll);

using PQ = std::pair<int, int>;

struct E1Page {
  std::map<PQ, DimExpr> entries;  // nonzero entries only
  bool generic = false;
  std::vector<ParamRelation> relations;

  DimExpr at(int p, int q) const;
  void add(int p, int q, const DimExpr& v);
};

E1Page e1_page(const ObjectSpec& kprime, const ObjectSpec& k, const ExceptionalCollection& coll);

// Mirrored page for the right adjoint: E1^{0,q} = hom^q(K, K'), and a chain
// a_0 < ... < a_p contributes hom(K, E_{a_0} (x) w) (x) hom(E_{a_0}, E_{a_1}) (x) ...
// (x) hom(E_{a_p} (x) w, K') in column p+1.
E1Page e1_page_right_adjoint(const ObjectSpec& k, const ObjectSpec& kprime, const ExceptionalCollection& coll);

class DegeneracyUnprovable : public std::runtime_error {
 public:
  DegeneracyUnprovable(PQ source, PQ target, int r);
  PQ source;
  PQ target;
  int r;
};

// d1 ranks are keyed by source position. Surviving entries must be pairwise
// disconnected by every d_r except the declared d_1 edges.
GradedDim einfty_total(const E1Page& page, const std::map<PQ, std::int64_t>& d1_ranks);

// The evaluation d1 : E1^{-1,2} -> E1^{0,2} for Hom(i^* k(x), i^* k(y)).
std::int64_t d1_rank_skyscraper(bool same_point, std::size_t collection_size = 13);

struct NegativeHomReport {
  bool certified = false;
  std::vector<std::int64_t> term_dims;  // hom^0(F', E_i) * hom^0(E_i, F)
  GradedDim negative;                   // degrees < 0 when certified
  std::string reason;
};

NegativeHomReport negative_hom_check(const ObjectSpec& fprime, const ObjectSpec& f, const ExceptionalCollection& coll);

struct CurveProjectionReport {
  std::int64_t n = 0;
  std::int64_t genus = 0;
  std::int64_t h2_of_F = 0;           // h^2(O(F))
  std::vector<GradedDim> hom_e_to_g;  // hom(E_i, G) for the standard collection
  bool concentrated = false;          // zero for i > 2, degree 1 only for i = 1, 2
  std::int64_t h1_multiplicity = 0;   // copies of O(-2F) in H^1(P)
  std::int64_t h0_mult_f = 0;         // copies of O(-F) in the H^0(P) quotient
  std::int64_t h0_mult_2f = 0;        // copies of O(-2F) in the H^0(P) quotient
  NumClass identity_class;            // [G] + n[O(-F)] - n[O(-2F)]
  NumClass h0_minus_h1;               // [H^0(P)] - [H^1(P)]
  NumClass projected;                 // project_numclass([G])
  bool class_check = false;
};

CurveProjectionReport curve_projection_report(std::int64_t n);

}  // namespace phantom
