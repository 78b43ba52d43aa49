#include "lgsing/serialize.hpp"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lgsing/error.hpp"

namespace lgsing {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing key '" + key + "'");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

std::string scalar_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(where + ": expected a string or integer");
}

// ---------------------------------------------------------------------------
// Rings, polynomials, matrices

Ring parse_ring(const json& j) {
  const std::string where = "ring";
  const std::string kind = need(j, "kind", where).get<std::string>();
  auto field_of = [&](const std::string& name) {
    if (name == "rationals") return Field::rationals();
    if (name == "prime_field") {
      mpz_class p;
      if (p.set_str(scalar_text(need(j, "p", where), where + ".p"), 10) != 0) fail("ring.p: not an integer");
      try {
        return Field::prime(p);
      } catch (const PreconditionError& e) {
        fail(std::string("ring.p: ") + e.what());
      }
    }
    fail("ring: unknown field kind '" + name + "'");
  };
  if (kind == "polynomial") {
    Field base = field_of(need(j, "base", where).get<std::string>());
    std::vector<std::string> vars;
    for (const auto& v : need(j, "vars", where)) vars.push_back(v.get<std::string>());
    return RingSpec::polynomial(base, std::move(vars));
  }
  return RingSpec::field(field_of(kind));
}

json dump_ring(const Ring& r) {
  json j;
  const Field& f = r->base();
  auto field_name = f.is_prime_field() ? "prime_field" : "rationals";
  if (r->kind() == RingSpec::Kind::Polynomial) {
    j["kind"] = "polynomial";
    j["base"] = field_name;
  } else {
    j["kind"] = field_name;
  }
  if (f.is_prime_field()) j["p"] = f.characteristic().get_str();
  if (r->kind() == RingSpec::Kind::Polynomial) j["vars"] = r->vars();
  return j;
}

Poly parse_entry(const json& j, const Ring& ring, const std::string& where) {
  std::string text = scalar_text(j, where);
  try {
    return parse_poly(text, ring);
  } catch (const ParseError& e) {
    fail(where + ": " + e.what());
  }
}

PolyMatrix parse_matrix(const json& j, const Ring& ring, std::size_t rows, std::size_t cols, const std::string& where) {
  PolyMatrix m(ring, rows, cols);
  if (!j.is_array()) fail(where + ": expected an array of rows");
  if (j.empty() && (rows == 0 || cols == 0)) return m;
  if (j.size() != rows) {
    fail(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      fail(where + ": row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, parse_entry(row[c], ring, where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    }
  }
  return m;
}

json dump_matrix(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Matrices keyed by degree; absent degrees are zero.
std::map<int, const json*> degree_map(const json& j, const std::string& where) {
  std::map<int, const json*> out;
  if (!j.is_object()) fail(where + ": expected an object keyed by degree");
  for (auto it = j.begin(); it != j.end(); ++it) {
    try {
      std::size_t used = 0;
      int deg = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("");
      out[deg] = &it.value();
    } catch (const std::logic_error&) {
      fail(where + ": '" + it.key() + "' is not a degree");
    }
  }
  return out;
}

std::vector<Poly> parse_potential(const json& j, const Ring& ring, const std::string& where) {
  std::vector<Poly> out;
  if (!j.is_array()) fail(where + ": expected an array of polynomials");
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_entry(j[i], ring, where + "[" + std::to_string(i) + "]"));
  return out;
}

json dump_potential(const std::vector<Poly>& f) {
  json j = json::array();
  for (const auto& p : f) j.push_back(p.to_string());
  return j;
}

// ---------------------------------------------------------------------------
// Objects

FreeComplex parse_complex(const json& j, const Ring& ring, const std::string& where) {
  const json& degrees = need(j, "degrees", where);
  if (!degrees.is_array() || degrees.size() != 2) fail(where + ".degrees: expected [lo, hi]");
  const int lo = as_int(degrees[0], where + ".degrees");
  const int hi = as_int(degrees[1], where + ".degrees");
  if (hi < lo) fail(where + ".degrees: hi < lo");
  const json& rj = need(j, "ranks", where);
  if (!rj.is_array() || rj.size() != static_cast<std::size_t>(hi - lo + 1)) {
    fail(where + ".ranks: expected one rank per degree");
  }
  std::vector<std::size_t> ranks;
  for (const auto& r : rj) {
    if (!r.is_number_unsigned()) fail(where + ".ranks: expected nonnegative integers");
    ranks.push_back(r.get<std::size_t>());
  }
  auto rank = [&](int m) { return m < lo || m > hi ? 0 : ranks[static_cast<std::size_t>(m - lo)]; };
  std::map<int, const json*> given;
  if (j.contains("differentials")) given = degree_map(j.at("differentials"), where + ".differentials");
  std::vector<PolyMatrix> diffs;
  for (int m = lo; m < hi; ++m) {
    auto it = given.find(m);
    if (it == given.end()) {
      diffs.emplace_back(ring, rank(m + 1), rank(m));
    } else {
      diffs.push_back(parse_matrix(*it->second, ring, rank(m + 1), rank(m), where + ".differentials." + std::to_string(m)));
      given.erase(it);
    }
  }
  if (!given.empty()) fail(where + ".differentials: degree " + std::to_string(given.begin()->first) + " out of range");
  return FreeComplex(ring, lo, std::move(ranks), std::move(diffs));
}

json dump_complex(const FreeComplex& c) {
  json j;
  j["type"] = "complex";
  j["degrees"] = {c.lo(), c.hi()};
  json ranks = json::array();
  for (int m = c.lo(); m <= c.hi(); ++m) ranks.push_back(c.rank(m));
  j["ranks"] = ranks;
  json diffs = json::object();
  for (int m = c.lo(); m < c.hi(); ++m) diffs[std::to_string(m)] = dump_matrix(c.diff(m));
  j["differentials"] = diffs;
  return j;
}

KoszulModule parse_koszul(const json& j, const Ring& ring, const std::vector<Poly>& default_potential,
                          const std::string& where) {
  FreeComplex under = parse_complex(j, ring, where);
  std::vector<Poly> potential =
      j.contains("potential") ? parse_potential(j.at("potential"), ring, where + ".potential") : default_potential;
  if (potential.empty()) fail(where + ": no potential given");
  const json& ops = need(j, "operators", where);
  if (!ops.is_array() || ops.size() != potential.size()) {
    fail(where + ".operators: expected " + std::to_string(potential.size()) + " operator families");
  }
  std::vector<std::vector<PolyMatrix>> h(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) {
    const std::string w = where + ".operators[" + std::to_string(i) + "]";
    auto given = degree_map(ops[i], w);
    for (int m = under.lo(); m <= under.hi(); ++m) {
      auto it = given.find(m);
      if (it == given.end()) {
        h[i].emplace_back(ring, under.rank(m - 1), under.rank(m));
      } else {
        h[i].push_back(parse_matrix(*it->second, ring, under.rank(m - 1), under.rank(m), w + "." + std::to_string(m)));
        given.erase(it);
      }
    }
    if (!given.empty()) fail(w + ": degree " + std::to_string(given.begin()->first) + " out of range");
  }
  return KoszulModule(std::move(potential), std::move(under), std::move(h));
}

json dump_koszul(const KoszulModule& m) {
  json j = dump_complex(m.underlying());
  j["type"] = "koszul_module";
  j["potential"] = dump_potential(m.potential());
  json ops = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json family = json::object();
    for (int s = m.lo(); s <= m.hi(); ++s) family[std::to_string(s)] = dump_matrix(m.h(i, s));
    ops.push_back(std::move(family));
  }
  j["operators"] = ops;
  return j;
}

std::size_t parse_rank(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_unsigned()) fail(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

MFObject parse_mf(const json& j, const Ring& ring, const std::vector<Poly>& default_potential, const std::string& where) {
  Poly f = j.contains("potential") ? parse_entry(j.at("potential"), ring, where + ".potential")
           : default_potential.empty() ? (fail(where + ": no potential given"), Poly(ring))
                                       : default_potential.front();
  const std::size_t r0 = parse_rank(j, "r0", where);
  const std::size_t r1 = parse_rank(j, "r1", where);
  PolyMatrix phi0 = parse_matrix(need(j, "phi0", where), ring, r1, r0, where + ".phi0");
  PolyMatrix phi1 = parse_matrix(need(j, "phi1", where), ring, r0, r1, where + ".phi1");
  return MFObject(std::move(f), std::move(phi0), std::move(phi1));
}

json dump_mf(const MFObject& m) {
  json j;
  j["type"] = "mf";
  j["potential"] = m.potential().to_string();
  j["r0"] = m.r0();
  j["r1"] = m.r1();
  j["phi0"] = dump_matrix(m.phi0());
  j["phi1"] = dump_matrix(m.phi1());
  return j;
}

KoszulMorphism parse_koszul_morphism_body(const json& j, const KoszulModule& s, const KoszulModule& t,
                                         const std::string& where) {
  std::map<int, PolyMatrix> comps;
  if (j.contains("components")) {
    for (const auto& [m, mj] : degree_map(j.at("components"), where + ".components")) {
      comps.emplace(m, parse_matrix(*mj, s.ring(), t.rank(m), s.rank(m), where + ".components." + std::to_string(m)));
    }
  }
  return KoszulMorphism(s, t, std::move(comps));
}

json dump_koszul_components(const KoszulMorphism& f) {
  json comps = json::object();
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int m = lo; m <= hi; ++m) {
    PolyMatrix c = f.component(m);
    if (c.rows() == 0 || c.cols() == 0) continue;
    comps[std::to_string(m)] = dump_matrix(c);
  }
  return comps;
}

/// Morphism with inline source and target modules (witness logs).
json dump_inline_morphism(const KoszulMorphism& f) {
  json j;
  j["source"] = dump_koszul(f.source());
  j["target"] = dump_koszul(f.target());
  j["components"] = dump_koszul_components(f);
  return j;
}

KoszulMorphism parse_inline_morphism(const json& j, const Ring& ring, const std::string& where) {
  KoszulModule s = parse_koszul(need(j, "source", where), ring, {}, where + ".source");
  KoszulModule t = parse_koszul(need(j, "target", where), ring, {}, where + ".target");
  return parse_koszul_morphism_body(j, s, t, where);
}

json dump_points(const std::vector<std::pair<std::string, Point>>& points) {
  json j = json::object();
  for (const auto& [name, pt] : points) {
    json values = json::object();
    const Ring& ring = pt.ring();
    for (std::size_t i = 0; i < ring->num_vars(); ++i) values[ring->vars()[i]] = ring->base().to_string(pt.values()[i]);
    j[name] = values;
  }
  return j;
}

std::vector<std::pair<std::string, Point>> parse_points(const json& j, const Ring& ring) {
  std::vector<std::pair<std::string, Point>> out;
  if (!j.is_object()) fail("points: expected an object of named points");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::map<std::string, std::string> values;
    if (!it.value().is_object()) fail("points." + it.key() + ": expected {var: value}");
    for (auto v = it.value().begin(); v != it.value().end(); ++v) {
      values[v.key()] = scalar_text(v.value(), "points." + it.key() + "." + v.key());
    }
    try {
      out.emplace_back(it.key(), Point::from_map(ring, values));
    } catch (const Error& e) {
      fail("points." + it.key() + ": " + e.what());
    }
  }
  return out;
}

template <typename F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    fail(where + ": " + e.what());
  } catch (const json::exception& e) {
    fail(where + ": " + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

}  // namespace

const Object* Document::find(const std::string& name) const {
  for (const auto& [n, obj] : objects) {
    if (n == name) return &obj;
  }
  return nullptr;
}

const Point* Document::find_point(const std::string& name) const {
  for (const auto& [n, pt] : points) {
    if (n == name) return &pt;
  }
  return nullptr;
}

std::string object_type(const Object& obj) {
  switch (obj.index()) {
    case 0:
      return "complex";
    case 1:
      return "koszul_module";
    case 2:
      return "mf";
    default:
      return "morphism";
  }
}

Document parse_document(const std::string& text) {
  json j = parse_json(text);
  return wrap("document", [&]() -> Document {
    if (!j.is_object()) fail("document: expected a JSON object");
    Ring ring = parse_ring(need(j, "ring", "document"));
    Document doc{ring, {}, {}, {}};
    if (j.contains("potential")) doc.potential = parse_potential(j.at("potential"), ring, "potential");
    if (j.contains("points")) doc.points = parse_points(j.at("points"), ring);
    if (!j.contains("objects")) return doc;
    const json& objs = j.at("objects");
    if (!objs.is_object()) fail("objects: expected an object of named objects");
    // Morphisms refer to other objects by name, so read them last.
    for (int pass = 0; pass < 2; ++pass) {
      for (auto it = objs.begin(); it != objs.end(); ++it) {
        const std::string where = "objects." + it.key();
        const std::string type = need(it.value(), "type", where).get<std::string>();
        if ((type == "morphism") != (pass == 1)) continue;
        if (doc.find(it.key())) fail(where + ": duplicate name");
        if (type == "complex") {
          doc.objects.emplace_back(it.key(), wrap(where, [&] { return parse_complex(it.value(), ring, where); }));
        } else if (type == "koszul_module") {
          doc.objects.emplace_back(it.key(),
                                   wrap(where, [&] { return parse_koszul(it.value(), ring, doc.potential, where); }));
        } else if (type == "mf") {
          doc.objects.emplace_back(it.key(), wrap(where, [&] { return parse_mf(it.value(), ring, doc.potential, where); }));
        } else if (type == "morphism") {
          const std::string sname = need(it.value(), "source", where).get<std::string>();
          const std::string tname = need(it.value(), "target", where).get<std::string>();
          const Object* s = doc.find(sname);
          const Object* t = doc.find(tname);
          if (!s || !t) fail(where + ": unknown source or target");
          if (s->index() != t->index()) fail(where + ": source and target have different types");
          if (const auto* sk = std::get_if<KoszulModule>(s)) {
            const auto& tk = std::get<KoszulModule>(*t);
            doc.objects.emplace_back(it.key(),
                                     wrap(where, [&] { return parse_koszul_morphism_body(it.value(), *sk, tk, where); }));
          } else if (const auto* sm = std::get_if<MFObject>(s)) {
            const auto& tm = std::get<MFObject>(*t);
            doc.objects.emplace_back(it.key(), wrap(where, [&] {
              PolyMatrix a0 = parse_matrix(need(it.value(), "alpha0", where), ring, tm.r0(), sm->r0(), where + ".alpha0");
              PolyMatrix a1 = parse_matrix(need(it.value(), "alpha1", where), ring, tm.r1(), sm->r1(), where + ".alpha1");
              return MFMorphism(*sm, tm, std::move(a0), std::move(a1));
            }));
          } else {
            fail(where + ": morphisms are supported between Koszul modules or factorizations");
          }
        } else {
          fail(where + ": unknown type '" + type + "'");
        }
      }
    }
    return doc;
  });
}

std::string dump_document(const Document& doc) {
  json j;
  j["ring"] = dump_ring(doc.ring);
  j["potential"] = dump_potential(doc.potential);
  json objs = json::object();
  auto name_of = [&](const auto& target) -> std::string {
    for (const auto& [n, obj] : doc.objects) {
      if (std::visit([&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            using U = std::decay_t<decltype(target)>;
            if constexpr (std::is_same_v<T, U>) return o == target;
            else return false;
          }, obj)) {
        return n;
      }
    }
    throw PreconditionError("morphism endpoint is not a named object of the document");
  };
  for (const auto& [name, obj] : doc.objects) {
    json o;
    if (const auto* c = std::get_if<FreeComplex>(&obj)) o = dump_complex(*c);
    if (const auto* k = std::get_if<KoszulModule>(&obj)) o = dump_koszul(*k);
    if (const auto* m = std::get_if<MFObject>(&obj)) o = dump_mf(*m);
    if (const auto* f = std::get_if<KoszulMorphism>(&obj)) {
      o["type"] = "morphism";
      o["source"] = name_of(f->source());
      o["target"] = name_of(f->target());
      o["components"] = dump_koszul_components(*f);
    }
    if (const auto* f = std::get_if<MFMorphism>(&obj)) {
      o["type"] = "morphism";
      o["source"] = name_of(f->source());
      o["target"] = name_of(f->target());
      o["alpha0"] = dump_matrix(f->alpha0());
      o["alpha1"] = dump_matrix(f->alpha1());
    }
    objs[name] = std::move(o);
  }
  j["objects"] = objs;
  j["points"] = dump_points(doc.points);
  return j.dump(2) + "\n";
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::string dump_witness(const WitnessLog& log) {
  json j;
  j["ring"] = dump_ring(log.start.ring());
  std::vector<std::pair<std::string, Point>> named;
  for (std::size_t i = 0; i < log.points.size(); ++i) named.emplace_back("p" + std::to_string(i), log.points[i]);
  j["points"] = dump_points(named);
  j["start"] = dump_koszul(log.start);
  j["end"] = dump_koszul(log.end);
  json steps = json::array();
  for (const auto& step : log.steps) {
    json s;
    s["kind"] = to_string(step.kind());
    switch (step.kind()) {
      case StepKind::ConeOffFree:
        s["direction"] = to_string(step.direction());
        s["base"] = dump_complex(*step.base());
        s["morphism"] = dump_inline_morphism(*step.morphism());
        break;
      case StepKind::ExplicitQuasiIso:
        s["direction"] = to_string(step.direction());
        s["morphism"] = dump_inline_morphism(*step.morphism());
        break;
      case StepKind::ShiftByTwo:
        s["offset"] = step.offset();
        s["input"] = dump_koszul(step.input());
        break;
    }
    steps.push_back(std::move(s));
  }
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

WitnessLog parse_witness(const std::string& text) {
  json j = parse_json(text);
  return wrap("witness", [&]() -> WitnessLog {
    Ring ring = parse_ring(need(j, "ring", "witness"));
    WitnessLog log{parse_koszul(need(j, "start", "witness"), ring, {}, "witness.start"),
                   parse_koszul(need(j, "end", "witness"), ring, {}, "witness.end"), {}, {}};
    if (j.contains("points")) {
      for (auto& [name, pt] : parse_points(j.at("points"), ring)) log.points.push_back(pt);
    }
    const json& steps = need(j, "steps", "witness");
    if (!steps.is_array()) fail("witness.steps: expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string where = "witness.steps[" + std::to_string(i) + "]";
      const json& s = steps[i];
      const std::string kind = need(s, "kind", where).get<std::string>();
      auto direction = [&] {
        const std::string d = need(s, "direction", where).get<std::string>();
        if (d == "forward") return Direction::Forward;
        if (d == "backward") return Direction::Backward;
        fail(where + ".direction: expected forward or backward");
      };
      if (kind == "cone_off_free") {
        FreeComplex base = parse_complex(need(s, "base", where), ring, where + ".base");
        KoszulMorphism mu = parse_inline_morphism(need(s, "morphism", where), ring, where + ".morphism");
        const Direction dir = direction();
        try {
          log.steps.push_back(WitnessStep::cone_off_free(std::move(base), std::move(mu), dir));
        } catch (const PreconditionError& e) {
          // The payload parsed but is not a morphism, so its cone cannot be formed.
          throw ValidationError(where + ": " + e.what());
        }
      } else if (kind == "explicit_quasi_iso") {
        KoszulMorphism f = parse_inline_morphism(need(s, "morphism", where), ring, where + ".morphism");
        log.steps.push_back(WitnessStep::quasi_iso(std::move(f), direction()));
      } else if (kind == "shift_by_two") {
        KoszulModule input = parse_koszul(need(s, "input", where), ring, {}, where + ".input");
        log.steps.push_back(WitnessStep::shift_by_two(std::move(input), as_int(need(s, "offset", where), where)));
      } else {
        fail(where + ": unknown step kind '" + kind + "'");
      }
    }
    return log;
  });
}

}  // namespace lgsing
