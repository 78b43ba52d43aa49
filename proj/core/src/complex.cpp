#include "lgsing/complex.hpp"

#include <algorithm>
#include <sstream>

#include "lgsing/error.hpp"

namespace lgsing {

std::string Failure::to_string() const {
  std::ostringstream os;
  os << identity << " fails in degree " << degree << " at entry (" << row << "," << col << "): " << value;
  return os.str();
}

void ValidationReport::merge(const ValidationReport& other) {
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

void ValidationReport::expect_zero(const PolyMatrix& m, const std::string& identity, int degree) {
  std::size_t r = 0;
  std::size_t c = 0;
  if (m.first_nonzero(r, c)) failures.push_back({identity, degree, r, c, m.at(r, c).to_string()});
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i) os << "\n";
    os << failures[i].to_string();
  }
  return os.str();
}

FreeComplex::FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<PolyMatrix> diffs)
    : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
  if (ranks_.empty()) throw PreconditionError("complex needs at least one degree");
  if (diffs_.size() + 1 != ranks_.size()) throw PreconditionError("complex needs one differential per adjacent pair of degrees");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    const PolyMatrix& d = diffs_[i];
    if (!same_ring(d.ring(), ring_)) throw PreconditionError("differential over a different ring");
    if (d.rows() != ranks_[i + 1] || d.cols() != ranks_[i]) {
      throw PreconditionError("differential in degree " + std::to_string(lo_ + static_cast<int>(i)) + " has shape " +
                              std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                              std::to_string(ranks_[i + 1]) + "x" + std::to_string(ranks_[i]));
    }
  }
}

FreeComplex FreeComplex::zero(Ring ring, int degree) { return concentrated(std::move(ring), degree, 0); }

FreeComplex FreeComplex::concentrated(Ring ring, int degree, std::size_t rank) {
  return FreeComplex(std::move(ring), degree, {rank}, {});
}

std::size_t FreeComplex::rank(int m) const {
  if (m < lo_ || m > hi()) return 0;
  return ranks_[static_cast<std::size_t>(m - lo_)];
}

std::size_t FreeComplex::total_rank() const {
  std::size_t total = 0;
  for (auto r : ranks_) total += r;
  return total;
}

PolyMatrix FreeComplex::diff(int m) const {
  if (m < lo_ || m >= hi()) return PolyMatrix(ring_, rank(m + 1), rank(m));
  return diffs_[static_cast<std::size_t>(m - lo_)];
}

int FreeComplex::amplitude() const {
  int first = hi() + 1;
  int last = lo_ - 1;
  for (int m = lo_; m <= hi(); ++m) {
    if (rank(m) > 0) {
      first = std::min(first, m);
      last = m;
    }
  }
  return last < first ? 0 : last - first + 1;
}

bool FreeComplex::operator==(const FreeComplex& other) const {
  return same_ring(ring_, other.ring_) && lo_ == other.lo_ && ranks_ == other.ranks_ && diffs_ == other.diffs_;
}

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::map<int, PolyMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!same_ring(source_.ring(), target_.ring())) throw PreconditionError("chain map between complexes over different rings");
  for (const auto& [m, c] : components_) {
    if (c.rows() != target_.rank(m) || c.cols() != source_.rank(m)) {
      throw PreconditionError("chain map component in degree " + std::to_string(m) + " has the wrong shape");
    }
  }
}

ChainMap ChainMap::identity(const FreeComplex& c) {
  std::map<int, PolyMatrix> comps;
  for (int m = c.lo(); m <= c.hi(); ++m) comps.emplace(m, PolyMatrix::identity(c.ring(), c.rank(m)));
  return ChainMap(c, c, std::move(comps));
}

PolyMatrix ChainMap::component(int m) const {
  auto it = components_.find(m);
  if (it != components_.end()) return it->second;
  return PolyMatrix(source_.ring(), target_.rank(m), source_.rank(m));
}

ValidationReport validate_complex(const FreeComplex& c) {
  ValidationReport report;
  for (int m = c.lo(); m + 1 < c.hi(); ++m) report.expect_zero(c.diff(m + 1) * c.diff(m), "d*d = 0", m);
  return report;
}

ValidationReport validate_chain_map(const ChainMap& f) {
  ValidationReport report;
  const FreeComplex& s = f.source();
  const FreeComplex& t = f.target();
  int lo = std::min(s.lo(), t.lo());
  int hi = std::max(s.hi(), t.hi());
  for (int m = lo; m < hi; ++m) {
    report.expect_zero(t.diff(m) * f.component(m) - f.component(m + 1) * s.diff(m), "d*f = f*d", m);
  }
  return report;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

FreeComplex koszul_complex(const Ring& ring, const std::vector<Poly>& potential) {
  if (potential.empty()) throw PreconditionError("koszul_complex needs a nonempty potential");
  for (const auto& f : potential) {
    if (!same_ring(f.ring(), ring)) throw PreconditionError("potential entry over a different ring");
  }
  const int n = static_cast<int>(potential.size());
  // Degree -k holds the exterior power of rank k.
  std::vector<std::vector<std::vector<int>>> basis(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) basis[static_cast<std::size_t>(k)] = subsets(n, k);
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int k = n; k >= 0; --k) ranks.push_back(basis[static_cast<std::size_t>(k)].size());
  for (int k = n; k >= 1; --k) {
    const auto& src = basis[static_cast<std::size_t>(k)];
    const auto& dst = basis[static_cast<std::size_t>(k - 1)];
    PolyMatrix d(ring, dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& subset = src[c];
      for (std::size_t pos = 0; pos < subset.size(); ++pos) {
        std::vector<int> rest = subset;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
        auto r = static_cast<std::size_t>(std::lower_bound(dst.begin(), dst.end(), rest) - dst.begin());
        const Poly& f = potential[static_cast<std::size_t>(subset[pos])];
        d.set(r, c, pos % 2 == 0 ? f : -f);
      }
    }
    diffs.push_back(std::move(d));
  }
  return FreeComplex(ring, -n, std::move(ranks), std::move(diffs));
}

FreeComplex shift_complex(const FreeComplex& c, int k) {
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int m = c.lo(); m <= c.hi(); ++m) ranks.push_back(c.rank(m));
  for (int m = c.lo(); m < c.hi(); ++m) diffs.push_back(k % 2 == 0 ? c.diff(m) : -c.diff(m));
  return FreeComplex(c.ring(), c.lo() - k, std::move(ranks), std::move(diffs));
}

FreeComplex cone_chain(const ChainMap& f) {
  ValidationReport report = validate_chain_map(f);
  if (!report) throw PreconditionError("cone of an invalid chain map: " + report.to_string());
  const FreeComplex& a = f.source();
  const FreeComplex& b = f.target();
  const int lo = std::min(a.lo() - 1, b.lo());
  const int hi = std::max(a.hi() - 1, b.hi());
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int m = lo; m <= hi; ++m) ranks.push_back(a.rank(m + 1) + b.rank(m));
  for (int m = lo; m < hi; ++m) {
    PolyMatrix d(a.ring(), a.rank(m + 2) + b.rank(m + 1), a.rank(m + 1) + b.rank(m));
    d.set_block(0, 0, -a.diff(m + 1));
    d.set_block(a.rank(m + 2), 0, f.component(m + 1));
    d.set_block(a.rank(m + 2), a.rank(m + 1), b.diff(m));
    diffs.push_back(std::move(d));
  }
  return FreeComplex(a.ring(), lo, std::move(ranks), std::move(diffs));
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  if (!same_ring(a.ring(), b.ring())) throw PreconditionError("direct sum over different rings");
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int m = lo; m <= hi; ++m) ranks.push_back(a.rank(m) + b.rank(m));
  for (int m = lo; m < hi; ++m) {
    PolyMatrix d(a.ring(), ranks[static_cast<std::size_t>(m + 1 - lo)], ranks[static_cast<std::size_t>(m - lo)]);
    d.set_block(0, 0, a.diff(m));
    d.set_block(a.rank(m + 1), a.rank(m), b.diff(m));
    diffs.push_back(std::move(d));
  }
  return FreeComplex(a.ring(), lo, std::move(ranks), std::move(diffs));
}

FreeComplex trim(const FreeComplex& c) {
  int lo = c.lo();
  int hi = c.hi();
  while (lo < hi && c.rank(lo) == 0) ++lo;
  while (hi > lo && c.rank(hi) == 0) --hi;
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int m = lo; m <= hi; ++m) ranks.push_back(c.rank(m));
  for (int m = lo; m < hi; ++m) diffs.push_back(c.diff(m));
  return FreeComplex(c.ring(), lo, std::move(ranks), std::move(diffs));
}

std::map<int, std::size_t> homology_at(const FreeComplex& c, const Point& pt) {
  if (!same_ring(pt.ring(), c.ring())) throw PreconditionError("point is not over the complex's ring");
  std::map<int, std::size_t> ranks_of_d;
  for (int m = c.lo(); m < c.hi(); ++m) ranks_of_d[m] = rank(c.diff(m).evaluate(pt));
  std::map<int, std::size_t> out;
  for (int m = c.lo(); m <= c.hi(); ++m) {
    std::size_t outgoing = ranks_of_d.count(m) ? ranks_of_d[m] : 0;
    std::size_t incoming = ranks_of_d.count(m - 1) ? ranks_of_d[m - 1] : 0;
    out[m] = c.rank(m) - outgoing - incoming;
  }
  return out;
}

bool is_acyclic_at(const FreeComplex& c, const Point& pt) {
  for (const auto& [m, dim] : homology_at(c, pt)) {
    if (dim != 0) return false;
  }
  return true;
}

}  // namespace lgsing
