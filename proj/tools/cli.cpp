#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "lgsing/error.hpp"
#include "lgsing/serialize.hpp"

namespace lgsing::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string witness;
  std::string other;
  std::string object;
  std::string then;
  std::vector<std::string> points;
  std::vector<std::string> point_specs;
  int by = 1;
  int k = 1;
  long long seed = 0;
};

using NamedPoints = std::vector<std::pair<std::string, Point>>;

/// Re-expresses a document point over `ring`, assigning 0 to variables the
/// document ring does not have (the chart variables t1, t2, ...).
Point extend_point(const Point& pt, const Ring& ring) {
  if (same_ring(pt.ring(), ring)) return pt;
  const Ring& from = pt.ring();
  std::map<std::string, std::string> values;
  for (const auto& v : ring->vars()) values[v] = "0";
  for (std::size_t i = 0; i < from->num_vars(); ++i) {
    if (!ring->var_index(from->vars()[i])) throw PreconditionError("point variable " + from->vars()[i] + " not in " + ring->to_string());
    values[from->vars()[i]] = from->base().to_string(pt.values()[i]);
  }
  return Point::from_map(ring, values);
}

NamedPoints resolve_points(const Document& doc, const Options& o, const Ring& ring, const std::vector<Poly>& potential) {
  NamedPoints out;
  for (const auto& name : o.points) {
    const Point* pt = doc.find_point(name);
    if (!pt) throw ParseError("unknown point '" + name + "'");
    out.emplace_back(name, extend_point(*pt, ring));
  }
  for (const auto& spec : o.point_specs) out.emplace_back(spec, Point::parse(spec, ring));
  if (out.empty() && !o.points.empty()) return out;
  if (out.empty()) {
    Point origin = Point::origin(ring);
    bool on = std::all_of(potential.begin(), potential.end(), [&](const Poly& f) { return evaluate(f, origin) == 0; });
    if (on) out.emplace_back("origin", origin);
  }
  return out;
}

std::vector<Point> just_points(const NamedPoints& pts) {
  std::vector<Point> out;
  for (const auto& [name, pt] : pts) out.push_back(pt);
  return out;
}

/// The object named by --object, or the first object whose type is among Ts.
template <typename... Ts>
std::pair<std::string, const Object*> pick(const Document& doc, const Options& o, const std::string& what) {
  auto accepted = [](const Object& obj) { return (std::holds_alternative<Ts>(obj) || ...); };
  if (!o.object.empty()) {
    const Object* obj = doc.find(o.object);
    if (!obj) throw ParseError("no object named '" + o.object + "'");
    if (!accepted(*obj)) throw PreconditionError("object '" + o.object + "' is a " + object_type(*obj) + ", expected " + what);
    return {o.object, obj};
  }
  for (const auto& [name, obj] : doc.objects) {
    if (accepted(obj)) return {name, &obj};
  }
  throw PreconditionError("document contains no " + what);
}

void print_report(std::ostream& out, const std::string& name, const std::string& type, const ValidationReport& report) {
  out << "object=" << name << " type=" << type << " status=" << (report.ok() ? "valid" : "invalid") << "\n";
  for (const auto& f : report.failures) out << "failure=\"" << f.to_string() << "\"\n";
}

ValidationReport validate_object(const Object& obj) {
  return std::visit(
      [](const auto& o) -> ValidationReport {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FreeComplex>) return validate_complex(o);
        if constexpr (std::is_same_v<T, KoszulModule>) return validate_koszul(o);
        if constexpr (std::is_same_v<T, MFObject>) return validate_mf(o);
        if constexpr (std::is_same_v<T, KoszulMorphism>) return validate_koszul_morphism(o);
        if constexpr (std::is_same_v<T, MFMorphism>) return validate_mf_morphism(o);
      },
      obj);
}

/// Fails with exit code 1 when the input object does not satisfy its identities.
bool require_valid(std::ostream& out, const std::string& name, const Object& obj) {
  ValidationReport report = validate_object(obj);
  if (report.ok()) return true;
  print_report(out, name, object_type(obj), report);
  return false;
}

void print_homology(std::ostream& out, const MFObject& mf, const NamedPoints& pts) {
  std::ostringstream lines;
  for (const auto& [name, pt] : pts) lines << "point=" << name << " " << residue_homology(mf, pt).to_string() << "\n";
  out << lines.str();
}

void print_log(std::ostream& out, const WitnessLog& log) {
  const auto reports = validate_steps(log);
  out << "witness_steps=" << log.steps.size() << "\n";
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const WitnessStep& s = log.steps[i];
    out << "step=" << i + 1 << " kind=" << to_string(s.kind());
    if (s.kind() == StepKind::ShiftByTwo) {
      out << " offset=" << s.offset();
    } else {
      out << " direction=" << to_string(s.direction());
    }
    out << " status=" << (reports[i].ok() ? "ok" : "failed") << "\n";
    for (const auto& f : reports[i].failures) out << "failure=\"" << f.to_string() << "\"\n";
  }
}

void write_output(const Options& o, Document doc) {
  if (o.output.empty()) return;
  save_text(o.output, dump_document(doc));
}

Document single(const Document& base, Ring ring, std::vector<Poly> potential, const std::string& name, Object obj) {
  Document doc{std::move(ring), std::move(potential), {}, {}};
  for (const auto& [n, pt] : base.points) {
    try {
      doc.points.emplace_back(n, extend_point(pt, doc.ring));
    } catch (const Error&) {
      // Points that do not live over the new ring are dropped.
    }
  }
  doc.objects.emplace_back(name, std::move(obj));
  return doc;
}

std::string degrees_of(const KoszulModule& m) {
  std::ostringstream os;
  os << "degrees=[" << m.lo() << "," << m.hi() << "] ranks=";
  for (int s = m.lo(); s <= m.hi(); ++s) os << (s == m.lo() ? "" : ",") << m.rank(s);
  return os.str();
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  bool ok = true;
  for (const auto& [name, obj] : doc.objects) {
    if (!o.object.empty() && name != o.object) continue;
    ValidationReport report = validate_object(obj);
    print_report(out, name, object_type(obj), report);
    ok = ok && report.ok();
  }
  out << "status=" << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kValidationFailure;
}

int fold_and_report(const Options& o, std::ostream& out, const Document& doc, const std::string& name,
                    const KoszulModule& m) {
  NamedPoints pts = resolve_points(doc, o, m.ring(), m.potential());
  WitnessFold result = fold_with_witness(m, just_points(pts));
  out << "object=" << name << " r0=" << result.mf.r0() << " r1=" << result.mf.r1() << "\n";
  print_log(out, result.log);
  print_homology(out, result.mf, pts);
  if (!o.witness.empty()) save_text(o.witness, dump_witness(result.log));
  write_output(o, single(doc, m.ring(), m.potential(), name + "_fold", result.mf));
  return validate_witness(result.log).ok() ? kOk : kValidationFailure;
}

int cmd_fold(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<KoszulModule>(doc, o, "koszul_module");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  return fold_and_report(o, out, doc, name, std::get<KoszulModule>(*obj));
}

int cmd_unfold(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<MFObject>(doc, o, "mf");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  KoszulModule m = orlov_unfold(std::get<MFObject>(*obj));
  out << "object=" << name << " " << degrees_of(m) << " status=valid\n";
  write_output(o, single(doc, m.ring(), m.potential(), name + "_unfold", m));
  return kOk;
}

int cmd_cone(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<KoszulMorphism, MFMorphism>(doc, o, "morphism");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  if (const auto* f = std::get_if<KoszulMorphism>(obj)) {
    KoszulModule c = cone_koszul(*f);
    ValidationReport report = validate_koszul(c);
    out << "object=" << name << "_cone type=koszul_module " << degrees_of(c) << " status=" << (report ? "valid" : "invalid") << "\n";
    write_output(o, single(doc, c.ring(), c.potential(), name + "_cone", c));
    return report ? kOk : kValidationFailure;
  }
  MFObject c = mf_cone(std::get<MFMorphism>(*obj));
  ValidationReport report = validate_mf(c);
  out << "object=" << name << "_cone type=mf r0=" << c.r0() << " r1=" << c.r1() << " status=" << (report ? "valid" : "invalid") << "\n";
  NamedPoints pts = resolve_points(doc, o, c.ring(), {c.potential()});
  print_homology(out, c, pts);
  write_output(o, single(doc, c.ring(), {c.potential()}, name + "_cone", c));
  return report ? kOk : kValidationFailure;
}

int cmd_shift(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<FreeComplex, KoszulModule, MFObject>(doc, o, "complex, koszul_module or mf");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  const std::string shifted = name + "_shift";
  if (const auto* c = std::get_if<FreeComplex>(obj)) {
    FreeComplex s = shift_complex(*c, o.by);
    out << "object=" << shifted << " type=complex degrees=[" << s.lo() << "," << s.hi() << "]\n";
    write_output(o, single(doc, doc.ring, doc.potential, shifted, s));
  } else if (const auto* k = std::get_if<KoszulModule>(obj)) {
    KoszulModule s = shift_koszul(*k, o.by);
    out << "object=" << shifted << " type=koszul_module " << degrees_of(s) << "\n";
    write_output(o, single(doc, doc.ring, s.potential(), shifted, s));
  } else {
    MFObject s = std::get<MFObject>(*obj);
    const int times = ((o.by % 2) + 2) % 2;
    if (times == 1) s = mf_shift(s);
    out << "object=" << shifted << " type=mf r0=" << s.r0() << " r1=" << s.r1() << "\n";
    write_output(o, single(doc, doc.ring, {s.potential()}, shifted, s));
  }
  return kOk;
}

int cmd_tensor(const Options& o, std::ostream& out) {
  if (o.other.empty()) throw ParseError("tensor needs --other PATH");
  Document a = load_document(o.input);
  Document b = load_document(o.other);
  Options ob = o;
  ob.object.clear();
  auto [an, ao] = pick<KoszulModule, MFObject>(a, o, "koszul_module or mf");
  auto [bn, bo] = pick<KoszulModule, MFObject>(b, ob, "koszul_module or mf");
  if (!require_valid(out, an, *ao) || !require_valid(out, bn, *bo)) return kValidationFailure;
  const std::string name = an + "_" + bn;
  if (ao->index() != bo->index()) throw PreconditionError("tensor needs two objects of the same type");
  Options merged = o;
  merged.points.clear();
  if (const auto* ka = std::get_if<KoszulModule>(ao)) {
    KoszulModule t = box_tensor(*ka, std::get<KoszulModule>(*bo));
    ValidationReport report = validate_koszul(t);
    out << "object=" << name << " type=koszul_module ring=" << t.ring()->to_string() << " " << degrees_of(t)
        << " status=" << (report ? "valid" : "invalid") << "\n";
    write_output(o, single(Document{t.ring(), {}, {}, {}}, t.ring(), t.potential(), name, t));
    return report ? kOk : kValidationFailure;
  }
  MFObject t = mf_tensor(std::get<MFObject>(*ao), std::get<MFObject>(*bo));
  ValidationReport report = validate_mf(t);
  out << "object=" << name << " type=mf ring=" << t.ring()->to_string() << " potential=\"" << t.potential().to_string()
      << "\" r0=" << t.r0() << " r1=" << t.r1() << " status=" << (report ? "valid" : "invalid") << "\n";
  print_homology(out, t, resolve_points(Document{t.ring(), {}, {}, {}}, merged, t.ring(), {t.potential()}));
  write_output(o, single(Document{t.ring(), {}, {}, {}}, t.ring(), {t.potential()}, name, t));
  return report ? kOk : kValidationFailure;
}

int cmd_reduce_amplitude(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<KoszulModule>(doc, o, "koszul_module");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  const auto& m = std::get<KoszulModule>(*obj);
  NamedPoints pts = resolve_points(doc, o, m.ring(), m.potential());
  Reduction r = amplitude_reduce(m, just_points(pts));
  out << "object=" << name << " rounds=" << r.rounds << " " << degrees_of(r.module) << "\n";
  print_log(out, r.log);
  if (r.module.n() == 1) print_homology(out, orlov_fold(r.module), pts);
  if (!o.witness.empty()) save_text(o.witness, dump_witness(r.log));
  write_output(o, single(doc, m.ring(), m.potential(), name + "_reduced", r.module));
  return validate_witness(r.log).ok() ? kOk : kValidationFailure;
}

int cmd_reduce_codim(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<KoszulModule>(doc, o, "koszul_module");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  KoszulModule chart = codim_reduce_chart(std::get<KoszulModule>(*obj));
  ValidationReport report = validate_koszul(chart);
  out << "object=" << name << "_chart ring=" << chart.ring()->to_string() << " potential=\""
      << chart.potential()[0].to_string() << "\" " << degrees_of(chart) << " status=" << (report ? "valid" : "invalid")
      << "\n";
  if (!report) return kValidationFailure;
  if (o.then.empty()) {
    write_output(o, single(doc, chart.ring(), chart.potential(), name + "_chart", chart));
    return kOk;
  }
  if (o.then != "fold") throw ParseError("--then accepts only 'fold'");
  return fold_and_report(o, out, single(doc, chart.ring(), chart.potential(), name + "_chart", chart), name + "_chart",
                         chart);
}

int cmd_residue_homology(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<MFObject, KoszulModule>(doc, o, "mf or koszul_module");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  MFObject mf = std::holds_alternative<MFObject>(*obj) ? std::get<MFObject>(*obj) : orlov_fold(std::get<KoszulModule>(*obj));
  NamedPoints pts = resolve_points(doc, o, mf.ring(), {mf.potential()});
  if (pts.empty()) throw PreconditionError("no points given and the origin is off the hypersurface");
  std::ostringstream report;
  print_homology(report, mf, pts);
  out << "object=" << name << "\n" << report.str();
  return kOk;
}

int cmd_witness_check(const Options& o, std::ostream& out) {
  const std::string path = o.witness.empty() ? o.input : o.witness;
  if (path.empty()) throw ParseError("witness-check needs --witness PATH");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  WitnessLog log = parse_witness(buf.str());
  print_log(out, log);
  ValidationReport report = validate_witness(log);
  for (const auto& f : report.failures) {
    if (f.identity.rfind("step ", 0) != 0) out << "failure=\"" << f.to_string() << "\"\n";
  }
  out << "status=" << (report ? "ok" : "failed") << "\n";
  return report ? kOk : kValidationFailure;
}

int cmd_eisenbud(const Options& o, std::ostream& out) {
  Document doc = load_document(o.input);
  auto [name, obj] = pick<MFObject, KoszulModule>(doc, o, "mf or koszul_module");
  if (!require_valid(out, name, *obj)) return kValidationFailure;
  MFObject mf = std::holds_alternative<MFObject>(*obj) ? std::get<MFObject>(*obj)
                                                       : orlov_fold(codim_reduce_chart(std::get<KoszulModule>(*obj)));
  MFMorphism chi = eisenbud_operator(mf, o.k);
  ValidationReport report = validate_mf_morphism(chi);
  out << "object=" << name << " operator=t" << o.k << " status=" << (report ? "valid" : "invalid") << "\n";
  if (!report) return kValidationFailure;
  MFObject cone = mf_cone(chi);
  NamedPoints pts = resolve_points(doc, o, mf.ring(), {mf.potential()});
  out << "cone r0=" << cone.r0() << " r1=" << cone.r1() << "\n";
  print_homology(out, cone, pts);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul modules, matrix factorizations and witnessed reductions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool needs_input = true) {
    auto* in = sub->add_option("--input", o.input, "Input document (JSON)");
    if (needs_input) in->required();
    sub->add_option("--object", o.object, "Name of the object to use (default: first of the right type)");
    sub->add_option("--output", o.output, "Write the resulting document here");
    sub->add_option("--points", o.points, "Named points of the document")->delimiter(',');
    sub->add_option("--point", o.point_specs, "Explicit point, e.g. \"x=0,y=1\"");
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const std::vector<Command> commands = {
      {"validate", "Check the defining identities of every object", cmd_validate},
      {"fold", "Fold an n = 1 Koszul module through the witnessed reduction", cmd_fold},
      {"unfold", "Unfold a matrix factorization into a two-term Koszul module", cmd_unfold},
      {"cone", "Cone of a morphism", cmd_cone},
      {"shift", "Shift a complex, Koszul module or factorization", cmd_shift},
      {"tensor", "External tensor product with the object of --other", cmd_tensor},
      {"reduce-amplitude", "Reduce a Koszul module to n + 1 degrees", cmd_reduce_amplitude},
      {"reduce-codim", "Chart-level reduction to a single potential", cmd_reduce_codim},
      {"residue-homology", "Residue homology at points of the hypersurface", cmd_residue_homology},
      {"witness-check", "Re-validate a witness log", cmd_witness_check},
      {"eisenbud", "Eisenbud operator t_k on a chart factorization", cmd_eisenbud},
  };
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    const std::string name = c.name;
    common(sub, name != "witness-check");
    if (name == "fold" || name == "reduce-amplitude" || name == "witness-check" || name == "reduce-codim") {
      sub->add_option("--witness", o.witness, "Witness log path");
    }
    if (name == "shift") sub->add_option("--by", o.by, "Shift amount (default 1)");
    if (name == "tensor") sub->add_option("--other", o.other, "Second input document")->required();
    if (name == "reduce-codim") sub->add_option("--then", o.then, "Follow-up pipeline (fold)");
    if (name == "eisenbud") sub->add_option("--k", o.k, "Chart variable index (t1, t2, ...)");
    by_app[sub] = &c;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    for (auto* sub : app.get_subcommands()) return by_app.at(sub)->fn(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const InternalError& e) {
    err << "witness failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const PreconditionError& e) {
    err << "precondition violation: " << e.what() << "\n";
    return kPreconditionViolation;
  }
  return kOk;
}

}  // namespace lgsing::cli
