#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lgsing/complex.hpp"

namespace lgsing {

/// A complex (E, d) with n degree -1 operators h_i subject to
/// h_i h_i = 0, d h_i + h_i d = f_i, h_i h_j + h_j h_i = 0.
class KoszulModule {
 public:
  /// `h[i][m - lo]` is h_i leaving degree m, of shape rank(m-1) x rank(m).
  KoszulModule(std::vector<Poly> potential, FreeComplex underlying, std::vector<std::vector<PolyMatrix>> h);
  /// All operators zero; valid only when every f_i is zero.
  static KoszulModule with_zero_operators(std::vector<Poly> potential, FreeComplex underlying);

  const Ring& ring() const { return underlying_.ring(); }
  const std::vector<Poly>& potential() const { return potential_; }
  std::size_t n() const { return potential_.size(); }
  const FreeComplex& underlying() const { return underlying_; }
  int lo() const { return underlying_.lo(); }
  int hi() const { return underlying_.hi(); }
  std::size_t rank(int m) const { return underlying_.rank(m); }
  PolyMatrix d(int m) const { return underlying_.diff(m); }
  /// Zero matrix of the right shape outside [lo, hi].
  PolyMatrix h(std::size_t i, int m) const;

  bool operator==(const KoszulModule& other) const;
  bool operator!=(const KoszulModule& other) const { return !(*this == other); }

 private:
  std::vector<Poly> potential_;
  FreeComplex underlying_;
  std::vector<std::vector<PolyMatrix>> h_;
};

/// Degree-0 map commuting with d and every h_i.
class KoszulMorphism {
 public:
  KoszulMorphism(KoszulModule source, KoszulModule target, std::map<int, PolyMatrix> components);
  static KoszulMorphism identity(const KoszulModule& m);
  static KoszulMorphism zero(const KoszulModule& source, const KoszulModule& target);

  const KoszulModule& source() const { return source_; }
  const KoszulModule& target() const { return target_; }
  PolyMatrix component(int m) const;
  ChainMap chain_map() const;

  bool operator==(const KoszulMorphism& other) const;

 private:
  KoszulModule source_;
  KoszulModule target_;
  std::map<int, PolyMatrix> components_;
};

ValidationReport validate_koszul(const KoszulModule& m);
ValidationReport validate_koszul_morphism(const KoszulMorphism& f);
KoszulMorphism compose(const KoszulMorphism& g, const KoszulMorphism& f);

/// One summand x (x) e_I of a free module: |I| = k, x ranges over E_edeg.
struct FreeBlock {
  int k = 0;
  std::vector<int> subset;
  int edeg = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// Block structure of free_koszul(E): in each degree, k descending, then
/// subsets lexicographically, then the basis of E.
class FreeLayout {
 public:
  FreeLayout(const FreeComplex& e, std::size_t n);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const std::vector<FreeBlock>& blocks(int m) const;
  /// Index of the block (k, subset) in degree m, or -1 if absent.
  int find(int m, const std::vector<int>& subset) const;
  std::size_t rank(int m) const;

 private:
  int lo_;
  int hi_;
  std::vector<std::vector<FreeBlock>> blocks_;
};

/// (E, d) tensored with the Koszul algebra, with the induced d and operators.
KoszulModule free_koszul(const FreeComplex& e, const std::vector<Poly>& potential);
/// phi(x (x) e_I) = h^{i_1} ... h^{i_k}(x).
KoszulMorphism counit_map(const KoszulModule& m);
/// cone_m = source_{m+1} (+) target_m, d = [[-d, 0], [phi, d']], h_i = [[-h_i, 0], [0, h'_i]].
KoszulModule cone_koszul(const KoszulMorphism& f);
/// External product over the ring with a's variables followed by b's.
KoszulModule box_tensor(const KoszulModule& a, const KoszulModule& b);
KoszulModule direct_sum(const KoszulModule& a, const KoszulModule& b);
/// Shifts by k with differentials and operators multiplied by (-1)^k.
KoszulModule shift_koszul(const KoszulModule& m, int k);
/// Drops zero-rank degrees at both ends.
KoszulModule trim(const KoszulModule& m);

/// Ring with the variables of a followed by those of b; rejects collisions
/// and mismatched base fields. `b_map` receives the new indices of b's variables.
Ring merge_rings(const Ring& a, const Ring& b, std::vector<std::size_t>& a_map, std::vector<std::size_t>& b_map);

}  // namespace lgsing
