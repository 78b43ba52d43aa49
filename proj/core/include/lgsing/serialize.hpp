#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lgsing/complex.hpp"
#include "lgsing/koszul.hpp"
#include "lgsing/mf.hpp"
#include "lgsing/reduce.hpp"

namespace lgsing {

using Object = std::variant<FreeComplex, KoszulModule, MFObject, KoszulMorphism, MFMorphism>;

/// A JSON input/output document. Every object lives over `ring`; Koszul modules
/// and factorizations default to `potential` (a factorization uses its first entry).
struct Document {
  Ring ring;
  std::vector<Poly> potential;
  std::vector<std::pair<std::string, Object>> objects;
  std::vector<std::pair<std::string, Point>> points;

  const Object* find(const std::string& name) const;
  const Point* find_point(const std::string& name) const;
};

std::string object_type(const Object& obj);

/// Throws ParseError on malformed JSON, unknown keys' types, or shape mismatches.
Document parse_document(const std::string& text);
std::string dump_document(const Document& doc);

Document load_document(const std::string& path);
void save_text(const std::string& path, const std::string& text);

/// Full matrices for every step, so a log can be re-validated independently.
std::string dump_witness(const WitnessLog& log);
/// Rebuilds every step from its payload; inputs and outputs are recomputed.
WitnessLog parse_witness(const std::string& text);

}  // namespace lgsing
