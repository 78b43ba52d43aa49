#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgsing/koszul.hpp"
#include "lgsing/mf.hpp"

namespace lgsing {

enum class StepKind { ConeOffFree, ExplicitQuasiIso, ShiftByTwo };
/// Forward: the step maps its payload's "from" side to its "to" side; backward reverses it.
enum class Direction { Forward, Backward };

std::string to_string(StepKind kind);
std::string to_string(Direction dir);

/// One elementary move between Koszul modules.
///
/// cone_off_free: mu : free_koszul(base) -> X. Forward takes X to cone(mu),
///   backward takes cone(mu) to X.
/// explicit_quasi_iso: f : A -> B. Forward takes A to B, backward takes B to A.
/// shift_by_two: translates every degree by an even offset; matrices unchanged.
class WitnessStep {
 public:
  static WitnessStep cone_off_free(FreeComplex base, KoszulMorphism mu, Direction dir);
  static WitnessStep quasi_iso(KoszulMorphism f, Direction dir);
  static WitnessStep shift_by_two(KoszulModule input, int offset);

  StepKind kind() const { return kind_; }
  Direction direction() const { return direction_; }
  /// Present for cone_off_free.
  const std::optional<FreeComplex>& base() const { return base_; }
  /// Present for cone_off_free and explicit_quasi_iso.
  const std::optional<KoszulMorphism>& morphism() const { return morphism_; }
  int offset() const { return offset_; }

  const KoszulModule& input() const { return input_; }
  const KoszulModule& output() const { return output_; }

  /// Symbolic checks on the payload, plus acyclicity of the evaluated cone
  /// at every point for explicit quasi-isomorphisms.
  ValidationReport validate(const std::vector<Point>& points) const;

 private:
  WitnessStep(StepKind kind, Direction dir, KoszulModule input, KoszulModule output)
      : kind_(kind), direction_(dir), input_(std::move(input)), output_(std::move(output)) {}

  StepKind kind_;
  Direction direction_;
  std::optional<FreeComplex> base_;
  std::optional<KoszulMorphism> morphism_;
  int offset_ = 0;
  KoszulModule input_;
  KoszulModule output_;
};

struct WitnessLog {
  KoszulModule start;
  KoszulModule end;
  std::vector<WitnessStep> steps;
  /// Specialization points used to check quasi-isomorphisms.
  std::vector<Point> points;

  void append(const WitnessLog& other);
};

/// Per-step reports (index-aligned with log.steps).
std::vector<ValidationReport> validate_steps(const WitnessLog& log);
/// Step reports plus strict composability of start, steps and end.
ValidationReport validate_witness(const WitnessLog& log);

struct Reduction {
  KoszulModule module;
  WitnessLog log;
  /// Number of amplitude-reducing steps applied.
  std::size_t rounds = 0;
};

/// Origin of the ring if every f_i vanishes there; otherwise empty.
std::vector<Point> default_points(const KoszulModule& m);

/// Reduces the stored degree range [lo, hi] to [lo, hi - 1]; needs hi - lo >= n + 1.
Reduction amplitude_reduce_step(const KoszulModule& m, const std::vector<Point>& points = {});
/// Iterates the step until the module occupies n + 1 degrees.
Reduction amplitude_reduce(const KoszulModule& m, const std::vector<Point>& points = {});

struct WitnessFold {
  MFObject mf;
  /// The two-term module in degrees [-1, 0] whose fold is `mf`.
  KoszulModule module;
  WitnessLog log;
};

/// n = 1: reduces to two degrees by witnessed quasi-isomorphisms, lands in
/// [-1, 0], and folds. The result equals orlov_fold(m, Descending).
WitnessFold fold_with_witness(const KoszulModule& m, const std::vector<Point>& points);

/// Affine chart t_n = 1: adds t1..t_{n-1}, f~ = sum f_s t_s + f_n, h~ = sum h^s t_s + h^n.
KoszulModule codim_reduce_chart(const KoszulModule& m);
/// Multiplication by the chart variable t<k>.
MFMorphism eisenbud_operator(const MFObject& m, int k);

}  // namespace lgsing
