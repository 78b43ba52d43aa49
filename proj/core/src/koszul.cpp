#include "lgsing/koszul.hpp"

#include <algorithm>

#include "lgsing/error.hpp"

namespace lgsing {

namespace {

std::size_t idx(int m, int lo) { return static_cast<std::size_t>(m - lo); }

}  // namespace

KoszulModule::KoszulModule(std::vector<Poly> potential, FreeComplex underlying, std::vector<std::vector<PolyMatrix>> h)
    : potential_(std::move(potential)), underlying_(std::move(underlying)), h_(std::move(h)) {
  if (potential_.empty()) throw PreconditionError("Koszul module needs a nonempty potential");
  for (const auto& f : potential_) {
    if (!same_ring(f.ring(), underlying_.ring())) throw PreconditionError("potential over a different ring than the module");
  }
  if (h_.size() != potential_.size()) {
    throw PreconditionError("expected " + std::to_string(potential_.size()) + " operator families, got " +
                            std::to_string(h_.size()));
  }
  const std::size_t degrees = static_cast<std::size_t>(hi() - lo() + 1);
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (h_[i].size() != degrees) throw PreconditionError("operator family " + std::to_string(i + 1) + " needs one matrix per degree");
    for (int m = lo(); m <= hi(); ++m) {
      const PolyMatrix& a = h_[i][idx(m, lo())];
      if (!same_ring(a.ring(), ring())) throw PreconditionError("operator over a different ring");
      if (a.rows() != rank(m - 1) || a.cols() != rank(m)) {
        throw PreconditionError("operator h" + std::to_string(i + 1) + " in degree " + std::to_string(m) +
                                " has shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                ", expected " + std::to_string(rank(m - 1)) + "x" + std::to_string(rank(m)));
      }
    }
  }
}

KoszulModule KoszulModule::with_zero_operators(std::vector<Poly> potential, FreeComplex underlying) {
  std::vector<std::vector<PolyMatrix>> h(potential.size());
  for (auto& family : h) {
    for (int m = underlying.lo(); m <= underlying.hi(); ++m) {
      family.emplace_back(underlying.ring(), underlying.rank(m - 1), underlying.rank(m));
    }
  }
  return KoszulModule(std::move(potential), std::move(underlying), std::move(h));
}

PolyMatrix KoszulModule::h(std::size_t i, int m) const {
  if (i >= h_.size()) throw PreconditionError("operator index out of range");
  if (m < lo() || m > hi()) return PolyMatrix(ring(), rank(m - 1), rank(m));
  return h_[i][idx(m, lo())];
}

bool KoszulModule::operator==(const KoszulModule& other) const {
  return potential_ == other.potential_ && underlying_ == other.underlying_ && h_ == other.h_;
}

KoszulMorphism::KoszulMorphism(KoszulModule source, KoszulModule target, std::map<int, PolyMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (source_.potential() != target_.potential()) throw PreconditionError("morphism between modules with different potentials");
  for (const auto& [m, c] : components_) {
    if (!same_ring(c.ring(), source_.ring()) || c.rows() != target_.rank(m) || c.cols() != source_.rank(m)) {
      throw PreconditionError("morphism component in degree " + std::to_string(m) + " has the wrong shape");
    }
  }
}

KoszulMorphism KoszulMorphism::identity(const KoszulModule& m) {
  std::map<int, PolyMatrix> comps;
  for (int s = m.lo(); s <= m.hi(); ++s) comps.emplace(s, PolyMatrix::identity(m.ring(), m.rank(s)));
  return KoszulMorphism(m, m, std::move(comps));
}

KoszulMorphism KoszulMorphism::zero(const KoszulModule& source, const KoszulModule& target) {
  return KoszulMorphism(source, target, {});
}

PolyMatrix KoszulMorphism::component(int m) const {
  auto it = components_.find(m);
  if (it != components_.end()) return it->second;
  return PolyMatrix(source_.ring(), target_.rank(m), source_.rank(m));
}

ChainMap KoszulMorphism::chain_map() const {
  return ChainMap(source_.underlying(), target_.underlying(), components_);
}

bool KoszulMorphism::operator==(const KoszulMorphism& other) const {
  if (source_ != other.source_ || target_ != other.target_) return false;
  const int lo = std::min(source_.lo(), target_.lo());
  const int hi = std::max(source_.hi(), target_.hi());
  for (int m = lo; m <= hi; ++m) {
    if (component(m) != other.component(m)) return false;
  }
  return true;
}

ValidationReport validate_koszul(const KoszulModule& m) {
  ValidationReport report = validate_complex(m.underlying());
  for (std::size_t i = 0; i < m.n(); ++i) {
    const std::string hi = "h" + std::to_string(i + 1);
    for (int s = m.lo(); s <= m.hi(); ++s) {
      report.expect_zero(m.h(i, s - 1) * m.h(i, s), hi + "*" + hi + " = 0", s);
    }
    for (int s = m.lo(); s <= m.hi(); ++s) {
      PolyMatrix comm = m.d(s - 1) * m.h(i, s) + m.h(i, s + 1) * m.d(s);
      PolyMatrix f = PolyMatrix::scalar(m.potential()[i], m.rank(s));
      report.expect_zero(comm - f, "[d," + hi + "] - f" + std::to_string(i + 1) + "*id = 0", s);
    }
    for (std::size_t j = i + 1; j < m.n(); ++j) {
      const std::string hj = "h" + std::to_string(j + 1);
      for (int s = m.lo(); s <= m.hi(); ++s) {
        report.expect_zero(m.h(i, s - 1) * m.h(j, s) + m.h(j, s - 1) * m.h(i, s), "[" + hi + "," + hj + "] = 0", s);
      }
    }
  }
  return report;
}

ValidationReport validate_koszul_morphism(const KoszulMorphism& f) {
  ValidationReport report = validate_chain_map(f.chain_map());
  const KoszulModule& s = f.source();
  const KoszulModule& t = f.target();
  const int lo = std::min(s.lo(), t.lo());
  const int hi = std::max(s.hi(), t.hi());
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (int m = lo; m <= hi; ++m) {
      report.expect_zero(t.h(i, m) * f.component(m) - f.component(m - 1) * s.h(i, m),
                         "h" + std::to_string(i + 1) + "*f = f*h" + std::to_string(i + 1), m);
    }
  }
  return report;
}

KoszulMorphism compose(const KoszulMorphism& g, const KoszulMorphism& f) {
  if (f.target() != g.source()) throw PreconditionError("composition of non-composable morphisms");
  std::map<int, PolyMatrix> comps;
  const int lo = std::min(f.source().lo(), g.target().lo());
  const int hi = std::max(f.source().hi(), g.target().hi());
  for (int m = lo; m <= hi; ++m) comps.emplace(m, g.component(m) * f.component(m));
  return KoszulMorphism(f.source(), g.target(), std::move(comps));
}

FreeLayout::FreeLayout(const FreeComplex& e, std::size_t n)
    : lo_(e.lo() - static_cast<int>(n)), hi_(e.hi()) {
  const int nn = static_cast<int>(n);
  for (int s = lo_; s <= hi_; ++s) {
    std::vector<FreeBlock> row;
    std::size_t offset = 0;
    for (int k = nn; k >= 0; --k) {
      const int edeg = s + k;
      if (edeg < e.lo() || edeg > e.hi()) continue;
      for (auto& subset : subsets(nn, k)) {
        FreeBlock b{k, std::move(subset), edeg, offset, e.rank(edeg)};
        offset += b.size;
        row.push_back(std::move(b));
      }
    }
    blocks_.push_back(std::move(row));
  }
}

const std::vector<FreeBlock>& FreeLayout::blocks(int m) const {
  static const std::vector<FreeBlock> empty;
  if (m < lo_ || m > hi_) return empty;
  return blocks_[idx(m, lo_)];
}

int FreeLayout::find(int m, const std::vector<int>& subset) const {
  const auto& row = blocks(m);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].subset == subset) return static_cast<int>(i);
  }
  return -1;
}

std::size_t FreeLayout::rank(int m) const {
  std::size_t total = 0;
  for (const auto& b : blocks(m)) total += b.size;
  return total;
}

KoszulModule free_koszul(const FreeComplex& e, const std::vector<Poly>& potential) {
  ValidationReport report = validate_complex(e);
  if (!report) throw PreconditionError("free_koszul of an invalid complex: " + report.to_string());
  if (potential.empty()) throw PreconditionError("free_koszul needs a nonempty potential");
  const Ring& ring = e.ring();
  const std::size_t n = potential.size();
  FreeLayout layout(e, n);
  const int lo = layout.lo();
  const int hi = layout.hi();

  std::vector<std::size_t> ranks;
  for (int s = lo; s <= hi; ++s) ranks.push_back(layout.rank(s));

  std::vector<PolyMatrix> diffs;
  for (int s = lo; s < hi; ++s) {
    PolyMatrix d(ring, layout.rank(s + 1), layout.rank(s));
    for (const auto& b : layout.blocks(s)) {
      if (b.size == 0) continue;
      if (b.edeg + 1 <= e.hi()) {
        int t = layout.find(s + 1, b.subset);
        const FreeBlock& tb = layout.blocks(s + 1)[static_cast<std::size_t>(t)];
        d.set_block(tb.offset, b.offset, b.k % 2 == 0 ? e.diff(b.edeg) : -e.diff(b.edeg));
      }
      for (std::size_t pos = 0; pos < b.subset.size(); ++pos) {
        std::vector<int> rest = b.subset;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
        int t = layout.find(s + 1, rest);
        const FreeBlock& tb = layout.blocks(s + 1)[static_cast<std::size_t>(t)];
        const Poly& f = potential[static_cast<std::size_t>(b.subset[pos])];
        d.set_block(tb.offset, b.offset, PolyMatrix::scalar(pos % 2 == 0 ? f : -f, b.size));
      }
    }
    diffs.push_back(std::move(d));
  }

  std::vector<std::vector<PolyMatrix>> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int jj = static_cast<int>(j);
    for (int s = lo; s <= hi; ++s) {
      PolyMatrix eta(ring, layout.rank(s - 1), layout.rank(s));
      for (const auto& b : layout.blocks(s)) {
        if (b.size == 0 || std::binary_search(b.subset.begin(), b.subset.end(), jj)) continue;
        std::vector<int> bigger = b.subset;
        auto where = std::lower_bound(bigger.begin(), bigger.end(), jj);
        const auto before = where - bigger.begin();
        bigger.insert(where, jj);
        int t = layout.find(s - 1, bigger);
        const FreeBlock& tb = layout.blocks(s - 1)[static_cast<std::size_t>(t)];
        Poly sign = Poly::constant(ring, before % 2 == 0 ? 1 : -1);
        eta.set_block(tb.offset, b.offset, PolyMatrix::scalar(sign, b.size));
      }
      h[j].push_back(std::move(eta));
    }
  }
  return KoszulModule(potential, FreeComplex(ring, lo, std::move(ranks), std::move(diffs)), std::move(h));
}

KoszulMorphism counit_map(const KoszulModule& m) {
  ValidationReport report = validate_koszul(m);
  if (!report) throw PreconditionError("counit of an invalid module: " + report.to_string());
  KoszulModule source = free_koszul(m.underlying(), m.potential());
  FreeLayout layout(m.underlying(), m.n());
  std::map<int, PolyMatrix> comps;
  for (int s = layout.lo(); s <= layout.hi(); ++s) {
    PolyMatrix phi(m.ring(), m.rank(s), layout.rank(s));
    for (const auto& b : layout.blocks(s)) {
      if (b.size == 0) continue;
      PolyMatrix composite = PolyMatrix::identity(m.ring(), m.rank(s));
      for (int pos = 0; pos < b.k; ++pos) {
        composite = composite * m.h(static_cast<std::size_t>(b.subset[static_cast<std::size_t>(pos)]), s + pos + 1);
      }
      phi.set_block(0, b.offset, composite);
    }
    comps.emplace(s, std::move(phi));
  }
  return KoszulMorphism(std::move(source), m, std::move(comps));
}

KoszulModule cone_koszul(const KoszulMorphism& f) {
  ValidationReport report = validate_koszul_morphism(f);
  if (!report) throw PreconditionError("cone of an invalid morphism: " + report.to_string());
  const KoszulModule& a = f.source();
  const KoszulModule& b = f.target();
  FreeComplex under = cone_chain(f.chain_map());
  const Ring& ring = a.ring();
  std::vector<std::vector<PolyMatrix>> h(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (int m = under.lo(); m <= under.hi(); ++m) {
      PolyMatrix op(ring, under.rank(m - 1), under.rank(m));
      op.set_block(0, 0, -a.h(i, m + 1));
      op.set_block(a.rank(m), a.rank(m + 1), b.h(i, m));
      h[i].push_back(std::move(op));
    }
  }
  return KoszulModule(a.potential(), std::move(under), std::move(h));
}

Ring merge_rings(const Ring& a, const Ring& b, std::vector<std::size_t>& a_map, std::vector<std::size_t>& b_map) {
  if (!(a->base() == b->base())) {
    throw PreconditionError("rings have different base fields: " + a->to_string() + " and " + b->to_string());
  }
  std::vector<std::string> vars = a->vars();
  a_map.clear();
  b_map.clear();
  for (std::size_t i = 0; i < a->num_vars(); ++i) a_map.push_back(i);
  for (const auto& v : b->vars()) {
    if (a->var_index(v)) throw PreconditionError("variable name collision: " + v);
    b_map.push_back(vars.size());
    vars.push_back(v);
  }
  if (a->kind() != RingSpec::Kind::Polynomial && b->kind() != RingSpec::Kind::Polynomial) return a;
  if (b->kind() != RingSpec::Kind::Polynomial) return a;
  if (a->kind() != RingSpec::Kind::Polynomial && vars == b->vars()) return b;
  return RingSpec::polynomial(a->base(), std::move(vars));
}

KoszulModule box_tensor(const KoszulModule& a, const KoszulModule& b) {
  if (a.n() != b.n()) throw PreconditionError("box_tensor needs potentials of the same length");
  std::vector<std::size_t> amap;
  std::vector<std::size_t> bmap;
  Ring ring = merge_rings(a.ring(), b.ring(), amap, bmap);
  auto lift_a = [&](const PolyMatrix& x) { return x.lift(ring, amap); };
  auto lift_b = [&](const PolyMatrix& x) { return x.lift(ring, bmap); };
  auto id = [&](std::size_t r) { return PolyMatrix::identity(ring, r); };

  const int lo = a.lo() + b.lo();
  const int hi = a.hi() + b.hi();
  // Offset of the a_p (x) b_{m-p} summand in degree m; summands ordered by p ascending.
  auto offset = [&](int m, int p) {
    std::size_t off = 0;
    for (int q = a.lo(); q < p; ++q) off += a.rank(q) * b.rank(m - q);
    return off;
  };
  auto total = [&](int m) { return offset(m, a.hi() + 1); };

  std::vector<std::size_t> ranks;
  for (int m = lo; m <= hi; ++m) ranks.push_back(total(m));

  std::vector<PolyMatrix> diffs;
  for (int m = lo; m < hi; ++m) {
    PolyMatrix d(ring, total(m + 1), total(m));
    for (int p = a.lo(); p <= a.hi(); ++p) {
      const int q = m - p;
      if (a.rank(p) * b.rank(q) == 0) continue;
      if (p + 1 <= a.hi()) d.set_block(offset(m + 1, p + 1), offset(m, p), kron(lift_a(a.d(p)), id(b.rank(q))));
      PolyMatrix right = kron(id(a.rank(p)), lift_b(b.d(q)));
      d.set_block(offset(m + 1, p), offset(m, p), p % 2 == 0 ? right : -right);
    }
    diffs.push_back(std::move(d));
  }

  std::vector<std::vector<PolyMatrix>> h(a.n());
  std::vector<Poly> potential;
  for (std::size_t i = 0; i < a.n(); ++i) {
    potential.push_back(a.potential()[i].lift(ring, amap) + b.potential()[i].lift(ring, bmap));
    for (int m = lo; m <= hi; ++m) {
      PolyMatrix op(ring, total(m - 1), total(m));
      for (int p = a.lo(); p <= a.hi(); ++p) {
        const int q = m - p;
        if (a.rank(p) * b.rank(q) == 0) continue;
        if (p - 1 >= a.lo()) op.set_block(offset(m - 1, p - 1), offset(m, p), kron(lift_a(a.h(i, p)), id(b.rank(q))));
        PolyMatrix right = kron(id(a.rank(p)), lift_b(b.h(i, q)));
        op.set_block(offset(m - 1, p), offset(m, p), p % 2 == 0 ? right : -right);
      }
      h[i].push_back(std::move(op));
    }
  }
  return KoszulModule(std::move(potential), FreeComplex(ring, lo, std::move(ranks), std::move(diffs)), std::move(h));
}

KoszulModule direct_sum(const KoszulModule& a, const KoszulModule& b) {
  if (a.potential() != b.potential()) throw PreconditionError("direct sum of modules with different potentials");
  FreeComplex under = direct_sum(a.underlying(), b.underlying());
  std::vector<std::vector<PolyMatrix>> h(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (int m = under.lo(); m <= under.hi(); ++m) {
      PolyMatrix op(a.ring(), under.rank(m - 1), under.rank(m));
      op.set_block(0, 0, a.h(i, m));
      op.set_block(a.rank(m - 1), a.rank(m), b.h(i, m));
      h[i].push_back(std::move(op));
    }
  }
  return KoszulModule(a.potential(), std::move(under), std::move(h));
}

KoszulModule shift_koszul(const KoszulModule& m, int k) {
  FreeComplex under = shift_complex(m.underlying(), k);
  std::vector<std::vector<PolyMatrix>> h(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (int s = m.lo(); s <= m.hi(); ++s) h[i].push_back(k % 2 == 0 ? m.h(i, s) : -m.h(i, s));
  }
  return KoszulModule(m.potential(), std::move(under), std::move(h));
}

KoszulModule trim(const KoszulModule& m) {
  FreeComplex under = trim(m.underlying());
  std::vector<std::vector<PolyMatrix>> h(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (int s = under.lo(); s <= under.hi(); ++s) h[i].push_back(m.h(i, s));
  }
  return KoszulModule(m.potential(), std::move(under), std::move(h));
}

}  // namespace lgsing
