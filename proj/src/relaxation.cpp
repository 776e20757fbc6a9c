#include "setpack/relaxation.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "setpack/errors.hpp"

namespace setpack {

void LinearProgram::check() const {
  if (objective.size() != num_vars || lower.size() != num_vars || upper.size() != num_vars) {
    throw InputError("LP vectors do not match the variable count");
  }
  for (const auto& row : constraints) {
    for (const auto& [j, a] : row.coefficients) {
      if (j >= num_vars) throw InputError("LP coefficient index out of range");
    }
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (upper[j] && *upper[j] < lower[j]) throw InputError("LP variable bound inverted");
  }
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Rational row_activity(const LinearConstraint& row, const std::vector<Rational>& x) {
  Rational total(0);
  for (const auto& [j, a] : row.coefficients) total += a * x[j];
  return total;
}

bool satisfied(Relation rel, const Rational& lhs, const Rational& rhs) {
  switch (rel) {
    case Relation::kLessEqual:
      return lhs <= rhs;
    case Relation::kEqual:
      return lhs == rhs;
    case Relation::kGreaterEqual:
      return lhs >= rhs;
  }
  return false;
}

// Dense simplex tableau over exact rationals; the last column is the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), a_(rows, std::vector<Rational>(cols + 1)), basis_(rows, kNone),
        allowed_(cols, 1), z_(cols + 1) {}

  Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  Rational& rhs(std::size_t i) { return a_[i][cols_]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t rows() const { return a_.size(); }
  void forbid(std::size_t j) { allowed_[j] = 0; }
  const Rational& reduced_cost(std::size_t j) const { return z_[j]; }
  const Rational& value() const { return z_[cols_]; }

  // Maximises cost . columns from the current basis. False when unbounded.
  bool maximize(const std::vector<Rational>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      Rational r = j < cols_ ? Rational(-cost[j]) : Rational(0);
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(cost[basis_[i]]) != 0 && sgn(a_[i][j]) != 0) r += cost[basis_[i]] * a_[i][j];
      }
      z_[j] = r;
    }
    while (true) {
      // Bland: lowest-index improving column, lowest-index basic variable on ratio ties.
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_ && enter == kNone; ++j) {
        if (allowed_[j] && sgn(z_[j]) < 0) enter = j;
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = a_[r][c];
    for (auto& x : a_[r]) {
      if (sgn(x) != 0) x /= p;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(a_[i][c]) == 0) continue;
      const Rational f = a_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(a_[r][j]) != 0) a_[i][j] -= f * a_[r][j];
      }
    }
    if (sgn(z_[c]) != 0) {
      const Rational f = z_[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(a_[r][j]) != 0) z_[j] -= f * a_[r][j];
      }
    }
    basis_[r] = c;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<std::uint8_t> allowed_;
  std::vector<Rational> z_;
};

struct StandardRow {
  std::vector<std::pair<std::size_t, Rational>> coefficients;
  Relation relation;
  Rational rhs;
  int sign = 1;                  // -1 when the row was negated to make rhs >= 0
  std::size_t constraint = kNone;  // originating constraint, or kNone for a bound row
  std::size_t bound_var = kNone;
};

void certify(const LinearProgram& lp, const LpSolution& sol) {
  if (!is_feasible(lp, sol.values)) throw std::logic_error("simplex returned an infeasible point");
  Rational primal(0);
  for (std::size_t j = 0; j < lp.num_vars; ++j) primal += lp.objective[j] * sol.values[j];
  if (primal != sol.objective_value) throw std::logic_error("simplex objective mismatch");

  std::vector<Rational> reduced = lp.objective;
  Rational dual(0);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& row = lp.constraints[i];
    const Rational& y = sol.duals[i];
    if ((row.relation == Relation::kLessEqual && sgn(y) < 0) ||
        (row.relation == Relation::kGreaterEqual && sgn(y) > 0)) {
      throw std::logic_error("dual sign violated");
    }
    for (const auto& [j, a] : row.coefficients) reduced[j] -= y * a;
    dual += y * row.rhs;
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const Rational& z = sol.bound_duals[j];
    if (sgn(z) < 0 || (sgn(z) != 0 && !lp.upper[j])) throw std::logic_error("bound dual invalid");
    reduced[j] -= z;
    if (lp.upper[j]) dual += z * *lp.upper[j];
    if (sgn(reduced[j]) > 0) throw std::logic_error("dual infeasible reduced cost");
    dual += reduced[j] * lp.lower[j];
  }
  if (dual != primal) throw std::logic_error("duality gap in simplex certificate");
}

}  // namespace

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& values) {
  if (values.size() != lp.num_vars) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (values[j] < lp.lower[j]) return false;
    if (lp.upper[j] && values[j] > *lp.upper[j]) return false;
  }
  for (const auto& row : lp.constraints) {
    if (!satisfied(row.relation, row_activity(row, values), row.rhs)) return false;
  }
  return true;
}

LpSolution solve_lp(const LinearProgram& lp) {
  lp.check();
  const std::size_t n = lp.num_vars;

  // Shift x = lower + y with y >= 0; upper bounds become rows.
  std::vector<StandardRow> rows;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    StandardRow row{c.coefficients, c.relation, c.rhs - row_activity(c, lp.lower)};
    row.constraint = i;
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    StandardRow row{{{j, Rational(1)}}, Relation::kLessEqual, *lp.upper[j] - lp.lower[j]};
    row.bound_var = j;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (sgn(row.rhs) >= 0) continue;
    row.sign = -1;
    row.rhs = -row.rhs;
    for (auto& [j, a] : row.coefficients) a = -a;
    if (row.relation == Relation::kLessEqual) {
      row.relation = Relation::kGreaterEqual;
    } else if (row.relation == Relation::kGreaterEqual) {
      row.relation = Relation::kLessEqual;
    }
  }

  // Columns: structural, then per row a slack/surplus (if inequality), then artificials.
  const std::size_t m = rows.size();
  std::vector<std::size_t> slack(m, kNone), artificial(m, kNone), identity(m, kNone);
  std::size_t cols = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].relation != Relation::kEqual) slack[i] = cols++;
  }
  const std::size_t first_artificial = cols;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].relation != Relation::kLessEqual) artificial[i] = cols++;
  }

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [j, a] : rows[i].coefficients) t.at(i, j) += a;
    t.rhs(i) = rows[i].rhs;
    if (rows[i].relation == Relation::kLessEqual) {
      t.at(i, slack[i]) = 1;
      t.basic(i) = identity[i] = slack[i];
    } else {
      if (slack[i] != kNone) t.at(i, slack[i]) = -1;
      t.at(i, artificial[i]) = 1;
      t.basic(i) = identity[i] = artificial[i];
    }
  }

  LpSolution sol;
  if (first_artificial < cols) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = -1;
    t.maximize(phase1);
    if (sgn(t.value()) < 0) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // where that fails are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basic(i) < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.at(i, j)) != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) t.forbid(j);
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  if (!t.maximize(phase2)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.values = lp.lower;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basic(i) < n) sol.values[t.basic(i)] += t.rhs(i);
  }
  sol.objective_value = 0;
  for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.values[j];
  sol.duals.assign(lp.constraints.size(), Rational(0));
  sol.bound_duals.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    const Rational y = rows[i].sign * t.reduced_cost(identity[i]);
    if (rows[i].constraint != kNone) {
      sol.duals[rows[i].constraint] = y;
    } else {
      sol.bound_duals[rows[i].bound_var] = y;
    }
  }
  certify(lp, sol);
  return sol;
}

LinearProgram build_standard_lp(const Instance& instance, Objective objective) {
  require_valid(instance);
  LinearProgram lp(instance.size());
  for (SetId s = 0; s < instance.size(); ++s) {
    lp.objective[s] = objective == Objective::kWeight ? instance.weight(s) : Rational(1);
    lp.lower[s] = 0;
    lp.upper[s] = Rational(1);
  }
  std::vector<std::vector<SetId>> containing(instance.universe_size);
  for (SetId s = 0; s < instance.size(); ++s) {
    for (Element e : instance.sets[s]) containing[e].push_back(s);
  }
  for (const auto& group : containing) {
    if (group.empty()) continue;
    LinearConstraint row;
    for (SetId s : group) row.coefficients.emplace_back(s, Rational(1));
    row.relation = Relation::kLessEqual;
    row.rhs = 1;
    row.label = RowLabel::kDegree;
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

std::vector<std::vector<Vertex>> enumerate_maximal_cliques(const ConflictGraph& graph,
                                                           std::size_t cap) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> clique;
  auto intersect = [&](const std::vector<Vertex>& set, Vertex v) {
    std::vector<Vertex> r;
    const auto& nb = graph.neighbors(v);
    std::set_intersection(set.begin(), set.end(), nb.begin(), nb.end(), std::back_inserter(r));
    return r;
  };
  std::function<void(std::vector<Vertex>, std::vector<Vertex>)> expand =
      [&](std::vector<Vertex> p, std::vector<Vertex> x) {
        if (p.empty() && x.empty()) {
          if (out.size() == cap) {
            throw CapExceeded("more than " + std::to_string(cap) + " maximal cliques");
          }
          auto sorted = clique;
          std::sort(sorted.begin(), sorted.end());
          out.push_back(std::move(sorted));
          return;
        }
        // Pivot: vertex of P ∪ X with the most neighbours in P.
        Vertex pivot = p.empty() ? x.front() : p.front();
        std::size_t best = 0;
        for (const auto* group : {&p, &x}) {
          for (Vertex u : *group) {
            const std::size_t c = intersect(p, u).size();
            if (c > best) {
              best = c;
              pivot = u;
            }
          }
        }
        std::vector<Vertex> branch;
        for (Vertex v : p) {
          if (!graph.adjacent(pivot, v)) branch.push_back(v);
        }
        for (Vertex v : branch) {
          clique.push_back(v);
          expand(intersect(p, v), intersect(x, v));
          clique.pop_back();
          p.erase(std::find(p.begin(), p.end(), v));
          x.insert(std::upper_bound(x.begin(), x.end(), v), v);
        }
      };
  std::vector<Vertex> all(graph.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  if (!all.empty()) expand(all, {});
  std::sort(out.begin(), out.end());
  return out;
}

LinearProgram build_intersecting_family_lp(const Instance& instance, std::size_t cap,
                                           Objective objective) {
  LinearProgram lp = build_standard_lp(instance, objective);
  for (const auto& clique : enumerate_maximal_cliques(conflict_graph(instance), cap)) {
    LinearConstraint row;
    for (Vertex v : clique) row.coefficients.emplace_back(v, Rational(1));
    row.relation = Relation::kLessEqual;
    row.rhs = 1;
    row.label = RowLabel::kClique;
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

GapReport integrality_gap(const Instance& instance, LpVariant variant, std::size_t exact_cap,
                          std::size_t clique_cap) {
  require_valid(instance);
  GapReport report;
  report.ilp_value = static_cast<unsigned long>(max_packing_exact(instance, exact_cap).size());
  const LinearProgram lp = variant == LpVariant::kStandard
                               ? build_standard_lp(instance)
                               : build_intersecting_family_lp(instance, clique_cap);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("packing LP not optimal");
  report.lp_value = sol.objective_value;
  report.gap = report.lp_value / report.ilp_value;
  report.gap.canonicalize();
  return report;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

std::string to_string(RowLabel label) {
  switch (label) {
    case RowLabel::kDegree:
      return "degree";
    case RowLabel::kClique:
      return "clique";
    case RowLabel::kBox:
      return "box";
    case RowLabel::kOther:
      return "other";
  }
  return "other";
}

std::string format_lp(const LinearProgram& lp) {
  std::ostringstream out;
  auto terms = [&](const std::vector<std::pair<std::size_t, Rational>>& coeffs) {
    if (coeffs.empty()) out << " 0";
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
      out << (p ? " + " : " ") << to_string(coeffs[p].second) << " x" << coeffs[p].first;
    }
  };
  out << "maximize:";
  std::vector<std::pair<std::size_t, Rational>> obj;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (sgn(lp.objective[j]) != 0) obj.emplace_back(j, lp.objective[j]);
  }
  terms(obj);
  out << '\n';
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& row = lp.constraints[i];
    out << to_string(row.label) << ' ' << i << ':';
    terms(row.coefficients);
    out << (row.relation == Relation::kLessEqual  ? " <= "
            : row.relation == Relation::kEqual    ? " = "
                                                  : " >= ")
        << to_string(row.rhs) << '\n';
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    out << "box x" << j << ": " << to_string(lp.lower[j]) << " <= x" << j;
    if (lp.upper[j]) out << " <= " << to_string(*lp.upper[j]);
    out << '\n';
  }
  return out.str();
}

std::string export_theta3_sdp(const ConflictGraph& graph) {
  const std::size_t n = graph.vertex_count();
  const auto edges = graph.edges();
  const std::size_t m = edges.size() + 1;
  std::ostringstream out;
  out << "* Lovasz theta SDP: maximize <J,X> s.t. X_ij = 0 for every edge ij, trace(X) = 1, "
         "X psd\n";
  out << "* vertices " << n << ", edges " << edges.size() << '\n';
  out << m << '\n' << 1 << '\n' << n << '\n';
  for (std::size_t i = 0; i < m; ++i) out << (i ? " " : "") << (i + 1 == m ? 1 : 0);
  out << '\n';
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) out << "0 1 " << i << ' ' << j << " 1\n";
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out << e + 1 << " 1 " << edges[e].first + 1 << ' ' << edges[e].second + 1 << " 1\n";
  }
  for (std::size_t i = 1; i <= n; ++i) out << m << " 1 " << i << ' ' << i << " 1\n";
  return out.str();
}

SdpaProblem parse_sdpa(std::string_view text) {
  SdpaProblem problem;
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (!header_done && (line[first] == '*' || line[first] == '"')) {
      problem.comments.push_back(line.substr(first));
      continue;
    }
    header_done = true;
    std::string cleaned;
    for (char c : line) cleaned += (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') ? ' ' : c;
    std::istringstream words(cleaned);
    std::string w;
    while (words >> w) tokens.push_back(w);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw InputError("SDPA file truncated");
    return tokens[pos++];
  };
  auto integer = [&](const std::string& s) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("SDPA: bad integer '" + s + "'");
    return v;
  };
  problem.constraint_count = static_cast<std::size_t>(integer(next()));
  const long blocks = integer(next());
  for (long b = 0; b < blocks; ++b) problem.block_sizes.push_back(integer(next()));
  for (std::size_t i = 0; i < problem.constraint_count; ++i) problem.rhs.push_back(parse_rational(next()));
  while (pos < tokens.size()) {
    SdpaProblem::Entry e;
    e.matrix = static_cast<std::size_t>(integer(next()));
    e.block = static_cast<std::size_t>(integer(next()));
    e.row = static_cast<std::size_t>(integer(next()));
    e.col = static_cast<std::size_t>(integer(next()));
    e.value = parse_rational(next());
    if (e.matrix > problem.constraint_count || e.block == 0 ||
        e.block > problem.block_sizes.size() || e.row == 0 || e.row > e.col ||
        static_cast<long>(e.col) > std::labs(problem.block_sizes[e.block - 1])) {
      throw InputError("SDPA: entry out of range");
    }
    problem.entries.push_back(std::move(e));
  }
  return problem;
}

}  // namespace setpack
