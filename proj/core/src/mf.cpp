#include "lgsing/mf.hpp"

#include <algorithm>

#include "lgsing/error.hpp"

namespace lgsing {

MFObject::MFObject(Poly potential, PolyMatrix phi0, PolyMatrix phi1)
    : potential_(std::move(potential)), phi0_(std::move(phi0)), phi1_(std::move(phi1)) {
  if (!same_ring(phi0_.ring(), ring()) || !same_ring(phi1_.ring(), ring())) {
    throw PreconditionError("matrix factorization maps over a different ring than the potential");
  }
  if (phi1_.rows() != phi0_.cols() || phi1_.cols() != phi0_.rows()) {
    throw PreconditionError("phi1 must have shape r0 x r1 when phi0 has shape r1 x r0");
  }
}

MFMorphism::MFMorphism(MFObject source, MFObject target, PolyMatrix alpha0, PolyMatrix alpha1)
    : source_(std::move(source)), target_(std::move(target)), alpha0_(std::move(alpha0)), alpha1_(std::move(alpha1)) {
  if (source_.potential() != target_.potential()) throw PreconditionError("morphism between factorizations of different potentials");
  if (alpha0_.rows() != target_.r0() || alpha0_.cols() != source_.r0() || alpha1_.rows() != target_.r1() ||
      alpha1_.cols() != source_.r1()) {
    throw PreconditionError("morphism components have the wrong shape");
  }
}

MFMorphism MFMorphism::identity(const MFObject& m) {
  return MFMorphism(m, m, PolyMatrix::identity(m.ring(), m.r0()), PolyMatrix::identity(m.ring(), m.r1()));
}

ValidationReport validate_mf(const MFObject& m) {
  ValidationReport report;
  report.expect_zero(m.phi1() * m.phi0() - PolyMatrix::scalar(m.potential(), m.r0()), "phi1*phi0 = f*id", 0);
  report.expect_zero(m.phi0() * m.phi1() - PolyMatrix::scalar(m.potential(), m.r1()), "phi0*phi1 = f*id", 1);
  return report;
}

ValidationReport validate_mf_morphism(const MFMorphism& f) {
  ValidationReport report;
  const MFObject& s = f.source();
  const MFObject& t = f.target();
  report.expect_zero(t.phi0() * f.alpha0() - f.alpha1() * s.phi0(), "q0*a0 = a1*p0", 0);
  report.expect_zero(t.phi1() * f.alpha1() - f.alpha0() * s.phi1(), "q1*a1 = a0*p1", 1);
  return report;
}

MFMorphism compose(const MFMorphism& g, const MFMorphism& f) {
  if (f.target() != g.source()) throw PreconditionError("composition of non-composable morphisms");
  return MFMorphism(f.source(), g.target(), g.alpha0() * f.alpha0(), g.alpha1() * f.alpha1());
}

MFObject mf_shift(const MFObject& m) { return MFObject(m.potential(), -m.phi1(), -m.phi0()); }

MFObject mf_cone(const MFMorphism& f) {
  ValidationReport report = validate_mf_morphism(f);
  if (!report) throw PreconditionError("cone of an invalid morphism: " + report.to_string());
  const MFObject& e = f.source();
  const MFObject& t = f.target();
  const Ring& ring = e.ring();
  // C0 = F0 (+) E1, C1 = F1 (+) E0.
  PolyMatrix phi0(ring, t.r1() + e.r0(), t.r0() + e.r1());
  phi0.set_block(0, 0, t.phi0());
  phi0.set_block(0, t.r0(), f.alpha1());
  phi0.set_block(t.r1(), t.r0(), -e.phi1());
  PolyMatrix phi1(ring, t.r0() + e.r1(), t.r1() + e.r0());
  phi1.set_block(0, 0, t.phi1());
  phi1.set_block(0, t.r1(), f.alpha0());
  phi1.set_block(t.r0(), t.r1(), -e.phi0());
  return MFObject(e.potential(), std::move(phi0), std::move(phi1));
}

MFObject mf_tensor(const MFObject& a, const MFObject& b) {
  std::vector<std::size_t> amap;
  std::vector<std::size_t> bmap;
  Ring ring = merge_rings(a.ring(), b.ring(), amap, bmap);
  const PolyMatrix p0 = a.phi0().lift(ring, amap);
  const PolyMatrix p1 = a.phi1().lift(ring, amap);
  const PolyMatrix q0 = b.phi0().lift(ring, bmap);
  const PolyMatrix q1 = b.phi1().lift(ring, bmap);
  const PolyMatrix ia0 = PolyMatrix::identity(ring, a.r0());
  const PolyMatrix ia1 = PolyMatrix::identity(ring, a.r1());
  const PolyMatrix ib0 = PolyMatrix::identity(ring, b.r0());
  const PolyMatrix ib1 = PolyMatrix::identity(ring, b.r1());

  const std::size_t e0f0 = a.r0() * b.r0();
  const std::size_t e1f1 = a.r1() * b.r1();
  const std::size_t e0f1 = a.r0() * b.r1();
  const std::size_t e1f0 = a.r1() * b.r0();

  // Columns (E0F0, E1F1) -> rows (E0F1, E1F0).
  PolyMatrix phi0(ring, e0f1 + e1f0, e0f0 + e1f1);
  phi0.set_block(0, 0, kron(ia0, q0));
  phi0.set_block(0, e0f0, kron(p1, ib1));
  phi0.set_block(e0f1, 0, kron(p0, ib0));
  phi0.set_block(e0f1, e0f0, -kron(ia1, q1));
  // Columns (E0F1, E1F0) -> rows (E0F0, E1F1).
  PolyMatrix phi1(ring, e0f0 + e1f1, e0f1 + e1f0);
  phi1.set_block(0, 0, kron(ia0, q1));
  phi1.set_block(0, e0f1, kron(p1, ib0));
  phi1.set_block(e0f0, 0, kron(p0, ib1));
  phi1.set_block(e0f0, e0f1, -kron(ia1, q0));

  Poly f = a.potential().lift(ring, amap) + b.potential().lift(ring, bmap);
  return MFObject(std::move(f), std::move(phi0), std::move(phi1));
}

MFObject mf_direct_sum(const MFObject& a, const MFObject& b) {
  if (a.potential() != b.potential()) throw PreconditionError("direct sum of factorizations of different potentials");
  PolyMatrix phi0(a.ring(), a.r1() + b.r1(), a.r0() + b.r0());
  phi0.set_block(0, 0, a.phi0());
  phi0.set_block(a.r1(), a.r0(), b.phi0());
  PolyMatrix phi1(a.ring(), a.r0() + b.r0(), a.r1() + b.r1());
  phi1.set_block(0, 0, a.phi1());
  phi1.set_block(a.r0(), a.r1(), b.phi1());
  return MFObject(a.potential(), std::move(phi0), std::move(phi1));
}

namespace {

bool is_even(int m) { return m % 2 == 0; }

/// Offsets of each degree of the given parity inside its folded summand.
std::vector<std::size_t> parity_offsets(const FreeComplex& c, bool even, std::size_t& total,
                                       FoldOrder order = FoldOrder::Ascending) {
  std::vector<std::size_t> offsets(static_cast<std::size_t>(c.hi() - c.lo() + 1), 0);
  total = 0;
  for (int i = 0; i <= c.hi() - c.lo(); ++i) {
    const int m = order == FoldOrder::Ascending ? c.lo() + i : c.hi() - i;
    if (is_even(m) != even) continue;
    offsets[static_cast<std::size_t>(m - c.lo())] = total;
    total += c.rank(m);
  }
  return offsets;
}

void require_n1(const KoszulModule& m, const char* op) {
  if (m.n() != 1) throw PreconditionError(std::string(op) + " needs a module over a single potential (n = 1)");
}

}  // namespace

MFObject orlov_fold(const KoszulModule& m, FoldOrder order) {
  require_n1(m, "orlov_fold");
  ValidationReport report = validate_koszul(m);
  if (!report) throw PreconditionError("fold of an invalid module: " + report.to_string());
  const FreeComplex& c = m.underlying();
  std::size_t r0 = 0;
  std::size_t r1 = 0;
  const auto even_off = parity_offsets(c, true, r0, order);
  const auto odd_off = parity_offsets(c, false, r1, order);
  auto off = [&](int deg) {
    const auto i = static_cast<std::size_t>(deg - c.lo());
    return is_even(deg) ? even_off[i] : odd_off[i];
  };
  PolyMatrix phi0(m.ring(), r1, r0);
  PolyMatrix phi1(m.ring(), r0, r1);
  for (int s = c.lo(); s <= c.hi(); ++s) {
    PolyMatrix& target = is_even(s) ? phi0 : phi1;
    if (s + 1 <= c.hi()) target.set_block(off(s + 1), off(s), m.d(s));
    if (s - 1 >= c.lo()) target.set_block(off(s - 1), off(s), m.h(0, s));
  }
  return MFObject(m.potential()[0], std::move(phi0), std::move(phi1));
}

KoszulModule orlov_unfold(const MFObject& m) {
  ValidationReport report = validate_mf(m);
  if (!report) throw PreconditionError("unfold of an invalid factorization: " + report.to_string());
  FreeComplex under(m.ring(), -1, {m.r1(), m.r0()}, {m.phi1()});
  std::vector<std::vector<PolyMatrix>> h(1);
  h[0].emplace_back(m.ring(), 0, m.r1());
  h[0].push_back(m.phi0());
  return KoszulModule({m.potential()}, std::move(under), std::move(h));
}

MFMorphism fold_morphism(const KoszulMorphism& f) {
  ValidationReport report = validate_koszul_morphism(f);
  if (!report) throw PreconditionError("fold of an invalid morphism: " + report.to_string());
  MFObject source = orlov_fold(f.source());
  MFObject target = orlov_fold(f.target());
  const FreeComplex& s = f.source().underlying();
  const FreeComplex& t = f.target().underlying();
  std::size_t unused = 0;
  const auto s_even = parity_offsets(s, true, unused);
  const auto s_odd = parity_offsets(s, false, unused);
  const auto t_even = parity_offsets(t, true, unused);
  const auto t_odd = parity_offsets(t, false, unused);
  PolyMatrix alpha0(source.ring(), target.r0(), source.r0());
  PolyMatrix alpha1(source.ring(), target.r1(), source.r1());
  for (int m = std::max(s.lo(), t.lo()); m <= std::min(s.hi(), t.hi()); ++m) {
    const auto si = static_cast<std::size_t>(m - s.lo());
    const auto ti = static_cast<std::size_t>(m - t.lo());
    if (is_even(m)) {
      alpha0.set_block(t_even[ti], s_even[si], f.component(m));
    } else {
      alpha1.set_block(t_odd[ti], s_odd[si], f.component(m));
    }
  }
  return MFMorphism(std::move(source), std::move(target), std::move(alpha0), std::move(alpha1));
}

PolyMatrix total_operator(const KoszulModule& m) {
  require_n1(m, "total_operator");
  const FreeComplex& c = m.underlying();
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (int s = c.lo(); s <= c.hi(); ++s) {
    offsets.push_back(total);
    total += c.rank(s);
  }
  auto off = [&](int s) { return offsets[static_cast<std::size_t>(s - c.lo())]; };
  PolyMatrix out(m.ring(), total, total);
  for (int s = c.lo(); s <= c.hi(); ++s) {
    if (s + 1 <= c.hi()) out.set_block(off(s + 1), off(s), m.d(s));
    if (s - 1 >= c.lo()) out.set_block(off(s - 1), off(s), m.h(0, s));
  }
  return out;
}

HomologyDims residue_homology(const MFObject& m, const Point& pt) {
  if (!same_ring(pt.ring(), m.ring())) throw PreconditionError("point is not over the factorization's ring");
  Scalar value = evaluate(m.potential(), pt);
  if (value != 0) {
    throw PreconditionError("point " + pt.to_string() + " is off the hypersurface: f = " +
                            m.ring()->base().to_string(value));
  }
  const std::size_t rank0 = rank(m.phi0().evaluate(pt));
  const std::size_t rank1 = rank(m.phi1().evaluate(pt));
  return HomologyDims{m.r0() - rank0 - rank1, m.r1() - rank1 - rank0};
}

std::vector<HomologyDims> residue_homology(const MFObject& m, const std::vector<Point>& pts) {
  std::vector<HomologyDims> out;
  out.reserve(pts.size());
  for (const auto& pt : pts) out.push_back(residue_homology(m, pt));
  return out;
}

}  // namespace lgsing
