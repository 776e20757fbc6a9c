#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setpack/exact.hpp"
#include "setpack/instance.hpp"
#include "setpack/rational.hpp"

namespace setpack {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

/// Where a row came from: an element's degree, a maximal clique of the
/// conflict graph, a variable bound, or anything else.
enum class RowLabel { kDegree, kClique, kBox, kOther };

struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rational>> coefficients;  // sparse row
  Relation relation = Relation::kLessEqual;
  Rational rhs;
  RowLabel label = RowLabel::kOther;
};

/// max objective . x subject to constraints and lower <= x <= upper.
/// A missing upper bound means unbounded above; lower bounds are finite.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;

  explicit LinearProgram(std::size_t vars = 0)
      : num_vars(vars), objective(vars), lower(vars), upper(vars) {}

  /// Throws InputError when an index is out of range or a bound is inverted.
  void check() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> values;
  Rational objective_value;
  /// Dual value per constraint, and per variable for its upper bound.
  std::vector<Rational> duals;
  std::vector<Rational> bound_duals;
};

/// Exact two-phase primal simplex with Bland's rule. An optimal answer is
/// certified before returning: primal feasibility, dual feasibility and equal
/// objectives are rechecked in exact arithmetic (std::logic_error otherwise).
LpSolution solve_lp(const LinearProgram& lp);

/// True iff the values satisfy every constraint and bound exactly.
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& values);

enum class Objective { kCardinality, kWeight };

/// One variable per set in [0, 1]; x(delta(e)) <= 1 per element of positive degree.
LinearProgram build_standard_lp(const Instance& instance,
                                Objective objective = Objective::kCardinality);

/// All maximal cliques (Bron-Kerbosch with pivoting), each sorted, listed in
/// lexicographic order. Throws CapExceeded past `cap` cliques.
inline constexpr std::size_t kDefaultCliqueCap = 100'000;
std::vector<std::vector<Vertex>> enumerate_maximal_cliques(const ConflictGraph& graph,
                                                           std::size_t cap = kDefaultCliqueCap);

/// Standard LP plus x(K) <= 1 for every maximal clique K of the conflict graph.
LinearProgram build_intersecting_family_lp(const Instance& instance,
                                           std::size_t cap = kDefaultCliqueCap,
                                           Objective objective = Objective::kCardinality);

enum class LpVariant { kStandard, kIntersecting };

struct GapReport {
  Rational lp_value;
  Rational ilp_value;
  Rational gap;
};

/// LP optimum over the exact integral optimum (cardinality objective).
GapReport integrality_gap(const Instance& instance, LpVariant variant,
                          std::size_t exact_cap = kDefaultExactCap,
                          std::size_t clique_cap = kDefaultCliqueCap);

/// Plain-text LP dump with one labelled row per line, for debugging.
std::string format_lp(const LinearProgram& lp);

/// Theta SDP of the graph in SDPA sparse format: maximize <J, X> subject to
/// X_ij = 0 on every edge, trace(X) = 1, X psd.
std::string export_theta3_sdp(const ConflictGraph& graph);

/// Minimal SDPA sparse reader used to check exported files.
struct SdpaProblem {
  struct Entry {
    std::size_t matrix;
    std::size_t block;
    std::size_t row;
    std::size_t col;
    Rational value;
  };
  std::size_t constraint_count = 0;
  std::vector<long> block_sizes;
  std::vector<Rational> rhs;
  std::vector<Entry> entries;
  std::vector<std::string> comments;
};
SdpaProblem parse_sdpa(std::string_view text);

std::string to_string(LpStatus status);
std::string to_string(RowLabel label);

}  // namespace setpack
