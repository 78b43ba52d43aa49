#pragma once

#include "lgsing/koszul.hpp"
#include "lgsing/mf.hpp"

namespace fixtures {

using namespace lgsing;

/// Q[x,y] with f = xy: B --[y;-x]--> B^2 --[x y]--> B in degrees [-2,0].
inline KoszulModule m3() {
  Ring r = RingSpec::polynomial(Field::rationals(), {"x", "y"});
  auto p = [&](const char* s) { return parse_poly(s, r); };
  FreeComplex c(r, -2, {1, 2, 1},
                {PolyMatrix::from_rows(r, {{p("y")}, {p("-x")}}), PolyMatrix::from_rows(r, {{p("x"), p("y")}})});
  std::vector<std::vector<PolyMatrix>> h(1);
  h[0].push_back(PolyMatrix(r, 0, 1));
  h[0].push_back(PolyMatrix::from_rows(r, {{p("0"), p("-y")}}));
  h[0].push_back(PolyMatrix::from_rows(r, {{p("y")}, {p("0")}}));
  return KoszulModule({p("x*y")}, c, h);
}

/// Rank-one factorization (a, b) of f = a*b over Q[x].
inline MFObject rank_one(const char* a, const char* b, const char* f) {
  Ring r = RingSpec::polynomial(Field::rationals(), {"x"});
  return MFObject(parse_poly(f, r), PolyMatrix::scalar(parse_poly(a, r), 1), PolyMatrix::scalar(parse_poly(b, r), 1));
}

/// The Koszul algebra of (u, v) over Q[u,v], as a module over itself.
inline KoszulModule koszul_uv() {
  Ring r = RingSpec::polynomial(Field::rationals(), {"u", "v"});
  return free_koszul(FreeComplex::concentrated(r, 0, 1), {parse_poly("u", r), parse_poly("v", r)});
}

}  // namespace fixtures
