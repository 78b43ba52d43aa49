#include "lgsing/reduce.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>

#include "lgsing/error.hpp"

namespace lgsing {

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::ConeOffFree:
      return "cone_off_free";
    case StepKind::ExplicitQuasiIso:
      return "explicit_quasi_iso";
    case StepKind::ShiftByTwo:
      return "shift_by_two";
  }
  return "unknown";
}

std::string to_string(Direction dir) { return dir == Direction::Forward ? "forward" : "backward"; }

WitnessStep WitnessStep::cone_off_free(FreeComplex base, KoszulMorphism mu, Direction dir) {
  KoszulModule cone = cone_koszul(mu);
  KoszulModule x = mu.target();
  WitnessStep step = dir == Direction::Forward ? WitnessStep(StepKind::ConeOffFree, dir, std::move(x), std::move(cone))
                                               : WitnessStep(StepKind::ConeOffFree, dir, std::move(cone), std::move(x));
  step.base_ = std::move(base);
  step.morphism_ = std::move(mu);
  return step;
}

WitnessStep WitnessStep::quasi_iso(KoszulMorphism f, Direction dir) {
  WitnessStep step = dir == Direction::Forward ? WitnessStep(StepKind::ExplicitQuasiIso, dir, f.source(), f.target())
                                               : WitnessStep(StepKind::ExplicitQuasiIso, dir, f.target(), f.source());
  step.morphism_ = std::move(f);
  return step;
}

WitnessStep WitnessStep::shift_by_two(KoszulModule input, int offset) {
  if (offset % 2 != 0) throw PreconditionError("shift_by_two needs an even offset, got " + std::to_string(offset));
  KoszulModule output = shift_koszul(input, -offset);
  WitnessStep step(StepKind::ShiftByTwo, Direction::Forward, std::move(input), std::move(output));
  step.offset_ = offset;
  return step;
}

ValidationReport WitnessStep::validate(const std::vector<Point>& points) const {
  ValidationReport report;
  switch (kind_) {
    case StepKind::ConeOffFree: {
      report.merge(validate_koszul_morphism(*morphism_));
      if (morphism_->source() != free_koszul(*base_, morphism_->source().potential())) {
        report.failures.push_back({"source is free_koszul(base)", 0, 0, 0, "mismatch"});
      }
      break;
    }
    case StepKind::ExplicitQuasiIso: {
      ValidationReport symbolic = validate_koszul_morphism(*morphism_);
      report.merge(symbolic);
      if (!symbolic) break;
      FreeComplex cone = cone_chain(morphism_->chain_map());
      for (const auto& pt : points) {
        for (const auto& [m, dim] : homology_at(cone, pt)) {
          if (dim != 0) {
            report.failures.push_back({"cone acyclic at " + pt.to_string(), m, 0, 0, std::to_string(dim)});
          }
        }
      }
      break;
    }
    case StepKind::ShiftByTwo:
      if (offset_ % 2 != 0) report.failures.push_back({"offset is even", 0, 0, 0, std::to_string(offset_)});
      break;
  }
  return report;
}

void WitnessLog::append(const WitnessLog& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  end = other.end;
}

std::vector<ValidationReport> validate_steps(const WitnessLog& log) {
  std::vector<ValidationReport> out;
  out.reserve(log.steps.size());
  for (const auto& step : log.steps) out.push_back(step.validate(log.points));
  return out;
}

ValidationReport validate_witness(const WitnessLog& log) {
  ValidationReport report;
  const KoszulModule* current = &log.start;
  const auto per_step = validate_steps(log);
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const WitnessStep& step = log.steps[i];
    const std::string label = "step " + std::to_string(i + 1) + " (" + to_string(step.kind()) + "): ";
    if (step.input() != *current) report.failures.push_back({label + "input equals previous output", 0, 0, 0, "mismatch"});
    for (Failure f : per_step[i].failures) {
      f.identity = label + f.identity;
      report.failures.push_back(std::move(f));
    }
    current = &step.output();
  }
  if (*current != log.end) report.failures.push_back({"last output equals end", 0, 0, 0, "mismatch"});
  return report;
}

std::vector<Point> default_points(const KoszulModule& m) {
  Point origin = Point::origin(m.ring());
  for (const auto& f : m.potential()) {
    if (evaluate(f, origin) != 0) return {};
  }
  return {origin};
}

namespace {

/// A labelled summand of one degree of an intermediate module: either a
/// free block x (x) e_I with x in E_edeg, or a copy of E_edeg itself.
struct Block {
  bool free = false;
  int k = 0;
  std::vector<int> subset;
  int edeg = 0;
  std::size_t size = 0;
};

using Layout = std::map<int, std::vector<Block>>;

struct Stage {
  KoszulModule module;
  Layout layout;
};

void require(const ValidationReport& report, const std::string& what) {
  if (!report) throw InternalError(what + ": " + report.to_string());
}

Block base_block(int edeg, std::size_t size) { return Block{false, 0, {}, edeg, size}; }

FreeComplex restrict_complex(const FreeComplex& e, int lo, int hi) {
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  for (int s = lo; s <= hi; ++s) ranks.push_back(e.rank(s));
  for (int s = lo; s < hi; ++s) diffs.push_back(e.diff(s));
  return FreeComplex(e.ring(), lo, std::move(ranks), std::move(diffs));
}

/// The same module stored over a different degree range; dropped degrees must be zero.
KoszulModule over_range(const KoszulModule& m, int lo, int hi) {
  for (int s = m.lo(); s <= m.hi(); ++s) {
    if ((s < lo || s > hi) && m.rank(s) != 0) throw InternalError("over_range would drop a nonzero degree");
  }
  FreeComplex under = restrict_complex(m.underlying(), lo, hi);
  std::vector<std::vector<PolyMatrix>> h(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (int s = lo; s <= hi; ++s) h[i].push_back(m.h(i, s));
  }
  return KoszulModule(m.potential(), std::move(under), std::move(h));
}

/// Identity components between two storages of the same module.
KoszulMorphism identity_between(const KoszulModule& a, const KoszulModule& b) {
  std::map<int, PolyMatrix> comps;
  for (int s = std::max(a.lo(), b.lo()); s <= std::min(a.hi(), b.hi()); ++s) {
    comps.emplace(s, PolyMatrix::identity(a.ring(), a.rank(s)));
  }
  return KoszulMorphism(a, b, std::move(comps));
}

/// Cone of the counit of m, whose degree s is free_koszul(m)_{s+1} (+) m_s.
Stage cone_off_counit(const KoszulModule& m, WitnessLog& log) {
  KoszulMorphism phi = counit_map(m);
  WitnessStep step = WitnessStep::cone_off_free(m.underlying(), phi, Direction::Forward);
  const KoszulModule& c = step.output();
  FreeLayout free_layout(m.underlying(), m.n());
  Layout layout;
  for (int s = c.lo(); s <= c.hi(); ++s) {
    auto& row = layout[s];
    for (const auto& b : free_layout.blocks(s + 1)) row.push_back(Block{true, b.k, b.subset, b.edeg, b.size});
    if (s >= m.lo() && s <= m.hi()) row.push_back(base_block(s, m.rank(s)));
  }
  Stage out{c, std::move(layout)};
  log.steps.push_back(std::move(step));
  return out;
}

/// Splits off the free summand Q selected by `in_q`, which must be a copy of
/// free_koszul(base) shifted by one with the complement T a sub-module. Records
/// the permutation X -> cone(mu) and the cone-off of mu : free_koszul(base) -> T.
Stage split_free(const Stage& x, const std::function<bool(const Block&)>& in_q, const FreeComplex& base, WitnessLog& log) {
  const KoszulModule& X = x.module;
  const Ring& ring = X.ring();
  KoszulModule s = free_koszul(base, X.potential());

  std::map<int, std::vector<std::size_t>> q_idx;
  std::map<int, std::vector<std::size_t>> a_idx;
  Layout t_layout;
  int t_lo = INT_MAX;
  for (int deg = X.lo(); deg <= X.hi(); ++deg) {
    std::size_t offset = 0;
    auto it = x.layout.find(deg);
    if (it == x.layout.end()) continue;
    for (const auto& b : it->second) {
      auto& dst = in_q(b) ? q_idx[deg] : a_idx[deg];
      for (std::size_t i = 0; i < b.size; ++i) dst.push_back(offset + i);
      offset += b.size;
      if (!in_q(b)) {
        t_layout[deg].push_back(b);
        t_lo = std::min(t_lo, deg);
      }
    }
    if (offset != X.rank(deg)) throw InternalError("layout does not cover degree " + std::to_string(deg));
    if (q_idx[deg].size() != s.rank(deg + 1)) {
      throw InternalError("free summand in degree " + std::to_string(deg) + " does not match free_koszul(base)");
    }
  }
  if (t_lo == INT_MAX) throw InternalError("split_free would leave nothing");
  const int t_hi = X.hi();
  auto a_at = [&](int deg) -> std::vector<std::size_t> {
    if (deg < t_lo || deg > t_hi) return {};
    return a_idx[deg];
  };

  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  std::vector<std::vector<PolyMatrix>> h(X.n());
  for (int deg = t_lo; deg <= t_hi; ++deg) {
    ranks.push_back(a_at(deg).size());
    if (deg < t_hi) diffs.push_back(X.d(deg).select(a_at(deg + 1), a_at(deg)));
    for (std::size_t i = 0; i < X.n(); ++i) h[i].push_back(X.h(i, deg).select(a_at(deg - 1), a_at(deg)));
  }
  KoszulModule t(X.potential(), FreeComplex(ring, t_lo, std::move(ranks), std::move(diffs)), std::move(h));

  std::map<int, PolyMatrix> mu_comps;
  for (int deg = std::max(s.lo(), t_lo); deg <= std::min(s.hi(), t_hi); ++deg) {
    mu_comps.emplace(deg, X.d(deg - 1).select(a_at(deg), q_idx[deg - 1]));
  }
  KoszulMorphism mu(s, t, std::move(mu_comps));
  require(validate_koszul_morphism(mu), "split-off map is not a morphism");
  WitnessStep cone_step = WitnessStep::cone_off_free(base, mu, Direction::Backward);
  const KoszulModule& cone = cone_step.input();
  if (cone.lo() != X.lo() || cone.hi() != X.hi()) throw InternalError("cone of the split-off map has the wrong range");

  std::map<int, PolyMatrix> perm;
  for (int deg = X.lo(); deg <= X.hi(); ++deg) {
    PolyMatrix p(ring, cone.rank(deg), X.rank(deg));
    const Poly one = Poly::constant(ring, 1);
    const auto& q = q_idx[deg];
    const auto a = a_at(deg);
    for (std::size_t j = 0; j < q.size(); ++j) p.set(j, q[j], one);
    for (std::size_t j = 0; j < a.size(); ++j) p.set(q.size() + j, a[j], one);
    perm.emplace(deg, std::move(p));
  }
  KoszulMorphism pi(X, cone, std::move(perm));
  require(validate_koszul_morphism(pi), "summand permutation is not an isomorphism of modules");

  log.steps.push_back(WitnessStep::quasi_iso(std::move(pi), Direction::Forward));
  log.steps.push_back(std::move(cone_step));
  return Stage{std::move(t), std::move(t_layout)};
}

/// Replaces degrees top..hi by the kernel of d_top, realized by the section
/// sigma with left inverse rho; records the inclusion as a quasi-isomorphism.
Stage truncate_top(const Stage& x, int top, const PolyMatrix& sigma, const PolyMatrix& rho, std::vector<Block> top_blocks,
                   WitnessLog& log) {
  const KoszulModule& X = x.module;
  if (top <= X.lo() || top > X.hi()) throw InternalError("truncation degree out of range");
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  std::vector<std::vector<PolyMatrix>> h(X.n());
  for (int s = X.lo(); s <= top; ++s) {
    ranks.push_back(s < top ? X.rank(s) : sigma.cols());
    if (s < top - 1) diffs.push_back(X.d(s));
    if (s == top - 1) diffs.push_back(rho * X.d(s));
    for (std::size_t i = 0; i < X.n(); ++i) h[i].push_back(s < top ? X.h(i, s) : X.h(i, s) * sigma);
  }
  KoszulModule y(X.potential(), FreeComplex(X.ring(), X.lo(), std::move(ranks), std::move(diffs)), std::move(h));
  require(validate_koszul(y), "truncated module");

  std::map<int, PolyMatrix> comps;
  for (int s = X.lo(); s < top; ++s) comps.emplace(s, PolyMatrix::identity(X.ring(), X.rank(s)));
  comps.emplace(top, sigma);
  KoszulMorphism iota(y, X, std::move(comps));
  require(validate_koszul_morphism(iota), "kernel inclusion");

  Layout layout;
  for (int s = X.lo(); s < top; ++s) layout[s] = x.layout.at(s);
  layout[top] = std::move(top_blocks);
  log.steps.push_back(WitnessStep::quasi_iso(std::move(iota), Direction::Backward));
  return Stage{std::move(y), std::move(layout)};
}

/// Top degrees [P0 (x) E_hi, E_{hi-1}] -> [E_hi] with d = [1, d]: keep only E_{hi-1}.
Stage top_kernel(const Stage& x, WitnessLog& log) {
  const KoszulModule& X = x.module;
  const int hi = X.hi();
  const auto& row = x.layout.at(hi - 1);
  if (row.empty() || !row[0].free || row[0].k != 0 || row[0].edeg != hi || row[0].size != X.rank(hi)) {
    throw InternalError("unexpected summands below the top degree");
  }
  const std::size_t r = row[0].size;
  const std::size_t z = X.rank(hi - 1) - r;
  const PolyMatrix d = X.d(hi - 1);
  if (d.block(0, 0, r, r) != PolyMatrix::identity(X.ring(), r)) throw InternalError("top differential is not [1, d]");
  PolyMatrix sigma(X.ring(), r + z, z);
  sigma.set_block(0, 0, -d.block(0, r, r, z));
  sigma.set_block(r, 0, PolyMatrix::identity(X.ring(), z));
  PolyMatrix rho(X.ring(), z, r + z);
  rho.set_block(0, r, PolyMatrix::identity(X.ring(), z));
  return truncate_top(x, hi - 1, sigma, rho, std::vector<Block>(row.begin() + 1, row.end()), log);
}

/// Moves a two-term n = 1 module in [t-1, t] down to [t-2, t-1]
/// with the roles of d and h exchanged.
KoszulModule drop_two_term(const KoszulModule& m, WitnessLog& log) {
  const int t = m.hi();
  Stage c = cone_off_counit(m, log);
  Stage split = split_free(c, [&](const Block& b) { return b.free && b.edeg <= t - 1; },
                           restrict_complex(m.underlying(), t - 1, t - 1), log);
  return top_kernel(split, log).module;
}

/// One n = 1 reduction round on [lo, hi] with hi - lo >= 3:
/// the result lives in [lo, hi - 2] and folds to the same factorization.
KoszulModule fold_round(const KoszulModule& e, WitnessLog& log) {
  const int lo = e.lo();
  const int hi = e.hi();
  const Ring& ring = e.ring();
  Stage c = cone_off_counit(e, log);
  Stage t = split_free(c, [&](const Block& b) { return b.free && b.edeg <= lo + 1; },
                       restrict_complex(e.underlying(), lo, lo + 1), log);

  // Kernel of d in degree hi - 2 on [P1 (x) E_hi, P0 (x) E_{hi-1}, E_{hi-2}]: (a, -h a - d b, b).
  const std::size_t a = e.rank(hi);
  const std::size_t bp = e.rank(hi - 1);
  const std::size_t b = e.rank(hi - 2);
  PolyMatrix sigma(ring, a + bp + b, a + b);
  sigma.set_block(0, 0, PolyMatrix::identity(ring, a));
  sigma.set_block(a, 0, -e.h(0, hi));
  sigma.set_block(a, a, -e.d(hi - 2));
  sigma.set_block(a + bp, a, PolyMatrix::identity(ring, b));
  PolyMatrix rho(ring, a + b, a + bp + b);
  rho.set_block(0, 0, PolyMatrix::identity(ring, a));
  rho.set_block(a, a + bp, PolyMatrix::identity(ring, b));
  Stage k = truncate_top(t, hi - 2, sigma, rho, {base_block(hi, a), base_block(hi - 2, b)}, log);

  for (int kk = lo + 2; kk <= hi - 2; ++kk) {
    k = split_free(k, [&](const Block& blk) { return blk.free && blk.edeg == kk; },
                   FreeComplex::concentrated(ring, kk, e.rank(kk)), log);
  }
  return k.module;
}

void require_valid_input(const KoszulModule& m) {
  ValidationReport report = validate_koszul(m);
  if (!report) throw PreconditionError("invalid Koszul module: " + report.to_string());
}

}  // namespace

Reduction amplitude_reduce_step(const KoszulModule& m, const std::vector<Point>& points) {
  require_valid_input(m);
  const int n = static_cast<int>(m.n());
  const int lo = m.lo();
  const int hi = m.hi();
  if (hi - lo < n + 1) {
    throw PreconditionError("amplitude minimal: module occupies " + std::to_string(hi - lo + 1) +
                            " degrees, at most n + 1 = " + std::to_string(n + 1));
  }
  WitnessLog log{m, m, {}, points};
  Stage c = cone_off_counit(m, log);
  const int cut = lo + n;
  Stage t = split_free(c, [&](const Block& b) { return b.free && b.edeg <= cut; }, restrict_complex(m.underlying(), lo, cut),
                       log);
  Stage r = top_kernel(t, log);
  log.end = r.module;
  require(validate_witness(log), "amplitude reduction witness");
  return Reduction{r.module, std::move(log), 1};
}

Reduction amplitude_reduce(const KoszulModule& m, const std::vector<Point>& points) {
  require_valid_input(m);
  Reduction out{m, WitnessLog{m, m, {}, points}, 0};
  while (out.module.hi() - out.module.lo() + 1 > static_cast<int>(m.n()) + 1) {
    Reduction step = amplitude_reduce_step(out.module, points);
    out.log.append(step.log);
    out.module = step.module;
    ++out.rounds;
  }
  return out;
}

WitnessFold fold_with_witness(const KoszulModule& m, const std::vector<Point>& points) {
  if (m.n() != 1) throw PreconditionError("fold_with_witness needs n = 1");
  require_valid_input(m);
  WitnessLog log{m, m, {}, points};
  KoszulModule cur = m;

  const int amplitude = cur.hi() - cur.lo() + 1;
  if (amplitude % 2 == 1) {
    KoszulModule padded = over_range(cur, cur.lo() - 1, cur.hi());
    log.steps.push_back(WitnessStep::quasi_iso(identity_between(cur, padded), Direction::Forward));
    cur = padded;
  }
  while (cur.hi() - cur.lo() + 1 >= 4) cur = fold_round(cur, log);

  const int t = cur.hi();
  if (t % 2 != 0) {
    cur = drop_two_term(cur, log);
  }
  if (cur.hi() != 0) {
    log.steps.push_back(WitnessStep::shift_by_two(cur, -cur.hi()));
    cur = log.steps.back().output();
  }
  if (log.steps.empty()) log.steps.push_back(WitnessStep::quasi_iso(KoszulMorphism::identity(cur), Direction::Forward));
  log.end = cur;

  MFObject mf = orlov_fold(cur);
  if (mf != orlov_fold(m, FoldOrder::Descending)) throw InternalError("witness fold differs from the closed-form fold");
  require(validate_witness(log), "fold witness");
  return WitnessFold{std::move(mf), std::move(cur), std::move(log)};
}

KoszulModule codim_reduce_chart(const KoszulModule& m) {
  require_valid_input(m);
  const std::size_t n = m.n();
  if (n == 1) return m;
  const Ring& ring = m.ring();
  std::vector<std::string> vars = ring->vars();
  std::vector<std::size_t> var_map;
  for (std::size_t i = 0; i < vars.size(); ++i) var_map.push_back(i);
  for (std::size_t s = 1; s < n; ++s) {
    std::string name = "t" + std::to_string(s);
    if (ring->var_index(name)) throw PreconditionError("chart variable name collision: " + name);
    vars.push_back(std::move(name));
  }
  Ring chart = RingSpec::polynomial(ring->base(), std::move(vars));
  std::vector<Poly> t;
  for (std::size_t s = 1; s < n; ++s) t.push_back(Poly::variable(chart, ring->num_vars() + s - 1));

  Poly f = m.potential()[n - 1].lift(chart, var_map);
  for (std::size_t s = 0; s + 1 < n; ++s) f += m.potential()[s].lift(chart, var_map) * t[s];

  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> diffs;
  std::vector<std::vector<PolyMatrix>> h(1);
  for (int deg = m.lo(); deg <= m.hi(); ++deg) {
    ranks.push_back(m.rank(deg));
    if (deg < m.hi()) diffs.push_back(m.d(deg).lift(chart, var_map));
    PolyMatrix op = m.h(n - 1, deg).lift(chart, var_map);
    for (std::size_t s = 0; s + 1 < n; ++s) op = op + m.h(s, deg).lift(chart, var_map).times(t[s]);
    h[0].push_back(std::move(op));
  }
  return KoszulModule({f}, FreeComplex(chart, m.lo(), std::move(ranks), std::move(diffs)), std::move(h));
}

MFMorphism eisenbud_operator(const MFObject& m, int k) {
  if (k < 1) throw PreconditionError("Eisenbud operator index must be at least 1, got " + std::to_string(k));
  const std::string name = "t" + std::to_string(k);
  auto index = m.ring()->var_index(name);
  if (!index) throw PreconditionError("ring " + m.ring()->to_string() + " has no chart variable " + name);
  Poly t = Poly::variable(m.ring(), *index);
  return MFMorphism(m, m, PolyMatrix::scalar(t, m.r0()), PolyMatrix::scalar(t, m.r1()));
}

}  // namespace lgsing
