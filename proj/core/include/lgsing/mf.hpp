#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lgsing/complex.hpp"
#include "lgsing/koszul.hpp"

namespace lgsing {

/// Matrix factorization (E0, E1, phi0: E0 -> E1, phi1: E1 -> E0) of f.
class MFObject {
 public:
  MFObject(Poly potential, PolyMatrix phi0, PolyMatrix phi1);

  const Ring& ring() const { return potential_.ring(); }
  const Poly& potential() const { return potential_; }
  std::size_t r0() const { return phi0_.cols(); }
  std::size_t r1() const { return phi0_.rows(); }
  const PolyMatrix& phi0() const { return phi0_; }
  const PolyMatrix& phi1() const { return phi1_; }

  bool operator==(const MFObject& other) const {
    return potential_ == other.potential_ && phi0_ == other.phi0_ && phi1_ == other.phi1_;
  }
  bool operator!=(const MFObject& other) const { return !(*this == other); }

 private:
  Poly potential_;
  PolyMatrix phi0_;
  PolyMatrix phi1_;
};

/// Degree-0 morphism (alpha0: E0 -> E0', alpha1: E1 -> E1').
class MFMorphism {
 public:
  MFMorphism(MFObject source, MFObject target, PolyMatrix alpha0, PolyMatrix alpha1);
  static MFMorphism identity(const MFObject& m);

  const MFObject& source() const { return source_; }
  const MFObject& target() const { return target_; }
  const PolyMatrix& alpha0() const { return alpha0_; }
  const PolyMatrix& alpha1() const { return alpha1_; }

  bool operator==(const MFMorphism& other) const {
    return source_ == other.source_ && target_ == other.target_ && alpha0_ == other.alpha0_ && alpha1_ == other.alpha1_;
  }

 private:
  MFObject source_;
  MFObject target_;
  PolyMatrix alpha0_;
  PolyMatrix alpha1_;
};

struct HomologyDims {
  std::size_t even = 0;
  std::size_t odd = 0;

  bool operator==(const HomologyDims& other) const { return even == other.even && odd == other.odd; }
  bool operator!=(const HomologyDims& other) const { return !(*this == other); }
  std::string to_string() const { return "even=" + std::to_string(even) + " odd=" + std::to_string(odd); }
};

ValidationReport validate_mf(const MFObject& m);
ValidationReport validate_mf_morphism(const MFMorphism& f);

MFMorphism compose(const MFMorphism& g, const MFMorphism& f);

/// (E1, E0, -phi1, -phi0).
MFObject mf_shift(const MFObject& m);
/// C0 = F0 (+) E1, C1 = F1 (+) E0 with phi0 = [[q0, a1], [0, -p1]], phi1 = [[q1, a0], [0, -p0]].
MFObject mf_cone(const MFMorphism& f);
/// Tensor product over the merged ring, potential f + g.
/// C0 = E0F0 (+) E1F1, C1 = E0F1 (+) E1F0; the sign sits on 1 (x) q for the odd part of E.
MFObject mf_tensor(const MFObject& a, const MFObject& b);
MFObject mf_direct_sum(const MFObject& a, const MFObject& b);

enum class FoldOrder { Ascending, Descending };

/// Odd degrees form E1, even degrees form E0 (ascending by default); both maps are d + h.
MFObject orlov_fold(const KoszulModule& m, FoldOrder order = FoldOrder::Ascending);
/// E1 in degree -1, E0 in degree 0, d = phi1, h = phi0.
KoszulModule orlov_unfold(const MFObject& m);
MFMorphism fold_morphism(const KoszulMorphism& f);

/// d + h on the direct sum of all degrees (ascending), for n = 1.
PolyMatrix total_operator(const KoszulModule& m);

/// Homology of the 2-periodic complex after evaluation at a point with f(pt) = 0.
HomologyDims residue_homology(const MFObject& m, const Point& pt);
std::vector<HomologyDims> residue_homology(const MFObject& m, const std::vector<Point>& pts);

}  // namespace lgsing
