#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lgsing/matrix.hpp"
#include "lgsing/ring.hpp"

namespace lgsing {

/// One failed identity: which identity, where, and the first offending entry.
struct Failure {
  std::string identity;
  int degree = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string value;

  std::string to_string() const;
};

struct ValidationReport {
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
  explicit operator bool() const { return ok(); }
  void merge(const ValidationReport& other);
  /// Records a failure if `m` is not the zero matrix.
  void expect_zero(const PolyMatrix& m, const std::string& identity, int degree);
  std::string to_string() const;
};

/// Bounded cochain complex of finite free modules: d_m maps degree m to m+1.
class FreeComplex {
 public:
  /// `diffs[i]` is the differential leaving degree lo+i; there are ranks.size()-1 of them.
  FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<PolyMatrix> diffs);
  /// The zero complex in the single degree `degree`.
  static FreeComplex zero(Ring ring, int degree = 0);
  /// A single free module of the given rank placed in one degree.
  static FreeComplex concentrated(Ring ring, int degree, std::size_t rank);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int m) const;
  std::size_t total_rank() const;
  /// Zero matrix of the right shape outside [lo, hi-1].
  PolyMatrix diff(int m) const;
  /// Number of degrees between the first and last nonzero rank (0 for the zero complex).
  int amplitude() const;

  bool operator==(const FreeComplex& other) const;
  bool operator!=(const FreeComplex& other) const { return !(*this == other); }

 private:
  Ring ring_;
  int lo_;
  std::vector<std::size_t> ranks_;
  std::vector<PolyMatrix> diffs_;
};

/// Degree-0 map of complexes; components outside the stored range are zero.
class ChainMap {
 public:
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, PolyMatrix> components);
  static ChainMap identity(const FreeComplex& c);

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }
  PolyMatrix component(int m) const;

 private:
  FreeComplex source_;
  FreeComplex target_;
  std::map<int, PolyMatrix> components_;
};

ValidationReport validate_complex(const FreeComplex& c);
ValidationReport validate_chain_map(const ChainMap& f);

FreeComplex koszul_complex(const Ring& ring, const std::vector<Poly>& potential);
/// Output rank_m equals input rank_{m+k}; differentials are multiplied by (-1)^k.
FreeComplex shift_complex(const FreeComplex& c, int k);
/// cone_m = source_{m+1} (+) target_m with d = [[-d_s, 0], [f, d_t]].
FreeComplex cone_chain(const ChainMap& f);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
/// Drops zero-rank degrees at both ends (keeps one degree for the zero complex).
FreeComplex trim(const FreeComplex& c);

/// Dimensions of the cohomology after specializing at `pt`, by degree.
std::map<int, std::size_t> homology_at(const FreeComplex& c, const Point& pt);
bool is_acyclic_at(const FreeComplex& c, const Point& pt);

std::size_t binomial(std::size_t n, std::size_t k);
/// All k-element subsets of {0..n-1}, each sorted, in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

}  // namespace lgsing
