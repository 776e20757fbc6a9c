#include "setpack/instance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "setpack/errors.hpp"

namespace setpack {

std::vector<Rational> Instance::weight_vector() const {
  if (weights) return *weights;
  return std::vector<Rational>(sets.size(), Rational(1));
}

Packing::Packing(std::vector<SetId> ids) : members(std::move(ids)) {
  std::sort(members.begin(), members.end());
}

bool Packing::contains(SetId id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

std::optional<Violation> validate(const Instance& instance) {
  using Kind = Violation::Kind;
  if (instance.universe_size == 0) return Violation{Kind::kEmptyUniverse, 0, "universe is empty"};
  if (instance.sets.empty()) return Violation{Kind::kNoSets, 0, "instance has no sets"};
  if (instance.k == 0) return Violation{Kind::kZeroK, 0, "k must be at least 1"};
  for (std::size_t i = 0; i < instance.sets.size(); ++i) {
    const auto& s = instance.sets[i];
    const std::string where = "set " + std::to_string(i);
    if (s.empty()) return Violation{Kind::kEmptySet, i, where + " is empty"};
    if (s.size() > instance.k) {
      return Violation{Kind::kSetTooLarge, i, where + " has more than k elements"};
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] >= instance.universe_size) {
        return Violation{Kind::kElementOutOfRange, i,
                         where + ": element " + std::to_string(s[j]) + " out of range"};
      }
      if (j > 0 && s[j] == s[j - 1]) {
        return Violation{Kind::kDuplicateElement, i,
                         where + ": duplicate element " + std::to_string(s[j])};
      }
      if (j > 0 && s[j] < s[j - 1]) {
        return Violation{Kind::kUnsortedSet, i, where + " is not sorted"};
      }
    }
  }
  if (instance.weights) {
    if (instance.weights->size() != instance.sets.size()) {
      return Violation{Kind::kWeightCount, instance.weights->size(),
                       "weight count does not match set count"};
    }
    for (std::size_t i = 0; i < instance.weights->size(); ++i) {
      if (sgn((*instance.weights)[i]) <= 0) {
        return Violation{Kind::kNonPositiveWeight, i,
                         "weight " + std::to_string(i) + " is not positive"};
      }
    }
  }
  return std::nullopt;
}

void require_valid(const Instance& instance) {
  if (auto v = validate(instance)) throw InputError("invalid instance: " + v->message);
}

// ---------------------------------------------------------------------------
// ConflictGraph

void ConflictGraph::init(std::size_t n) {
  adjacency_.assign(n, {});
  matrix_.assign(n * n, 0);
  weights_.assign(n, Rational(1));
}

void ConflictGraph::add_edge(Vertex u, Vertex v) {
  const std::size_t n = vertex_count();
  if (matrix_[u * n + v]) return;
  matrix_[u * n + v] = matrix_[v * n + u] = 1;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
}

void ConflictGraph::finalize() {
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

std::vector<std::pair<Vertex, Vertex>> ConflictGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

ConflictGraph ConflictGraph::from_edges(std::size_t vertex_count,
                                        std::span<const std::pair<Vertex, Vertex>> edges,
                                        std::vector<Rational> weights) {
  ConflictGraph g;
  g.init(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop in conflict graph");
    g.add_edge(u, v);
  }
  g.finalize();
  if (!weights.empty()) {
    if (weights.size() != vertex_count) throw InputError("weight count does not match vertex count");
    for (const auto& w : weights) {
      if (sgn(w) <= 0) throw InputError("vertex weights must be positive");
    }
    g.weights_ = std::move(weights);
  }
  return g;
}

ConflictGraph ConflictGraph::reweighted(std::vector<Rational> weights) const {
  if (weights.size() != vertex_count()) throw InputError("weight count does not match vertex count");
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw InputError("vertex weights must be non-negative");
  }
  ConflictGraph g = *this;
  g.weights_ = std::move(weights);
  return g;
}

ConflictGraph conflict_graph(const Instance& instance) {
  ConflictGraph g;
  const std::size_t n = instance.size();
  g.init(n);
  std::vector<std::vector<SetId>> containing(instance.universe_size);
  for (SetId i = 0; i < n; ++i) {
    for (Element e : instance.sets[i]) containing[e].push_back(i);
  }
  for (const auto& group : containing) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) g.add_edge(group[a], group[b]);
    }
  }
  g.finalize();
  g.weights_ = instance.weight_vector();
  return g;
}

bool is_packing(const Instance& instance, std::span<const SetId> indices) {
  std::vector<std::uint8_t> used(instance.universe_size, 0);
  std::vector<std::uint8_t> seen(instance.size(), 0);
  for (SetId i : indices) {
    if (i >= instance.size()) throw InputError("set index " + std::to_string(i) + " out of range");
    if (seen[i]) return false;
    seen[i] = 1;
    for (Element e : instance.sets[i]) {
      if (used[e]) return false;
      used[e] = 1;
    }
  }
  return true;
}

Rational packing_value(const Instance& instance, const Packing& packing) {
  if (!is_packing(instance, packing.members)) throw InputError("not a packing");
  Rational total(0);
  for (SetId i : packing.members) total += instance.weight(i);
  return total;
}

std::size_t max_independent_in_neighborhood(const ConflictGraph& graph, Vertex v) {
  const auto& nbrs = graph.neighbors(v);
  const std::size_t d = nbrs.size();
  if (d > kMaxNeighborhoodForClawCheck) {
    throw CapExceeded("neighbourhood of vertex " + std::to_string(v) + " has " +
                      std::to_string(d) + " vertices, exhaustive limit is " +
                      std::to_string(kMaxNeighborhoodForClawCheck));
  }
  std::vector<std::uint32_t> conflicts(d, 0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a != b && graph.adjacent(nbrs[a], nbrs[b])) conflicts[a] |= 1u << b;
    }
  }
  std::size_t best = 0;
  std::function<void(std::uint32_t, std::size_t)> search = [&](std::uint32_t candidates,
                                                               std::size_t chosen) {
    if (chosen + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    if (candidates == 0) {
      best = chosen;
      return;
    }
    const int a = std::countr_zero(candidates);
    const std::uint32_t rest = candidates & ~(1u << a);
    search(rest & ~conflicts[a], chosen + 1);
    search(rest, chosen);
  };
  const std::uint32_t all = d == 32 ? ~0u : ((1u << d) - 1u);
  search(all, 0);
  return best;
}

std::optional<std::size_t> max_claw_size(const ConflictGraph& graph) {
  std::size_t best = 0;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (graph.neighbors(v).size() > kMaxNeighborhoodForClawCheck) return std::nullopt;
    best = std::max(best, max_independent_in_neighborhood(graph, v));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

// Uniform draw in [0, bound) by rejection; identical on every standard library.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// min(C(n, k), cap) without overflow.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  mpz_class c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c >= cap) return cap;
  }
  return c.get_ui();
}

}  // namespace

Instance gen_projective_plane(std::uint64_t q) {
  if (!is_prime(q)) throw InputError("projective plane order " + std::to_string(q) + " is not prime");
  // Normalised representatives of the 1-dimensional subspaces of F_q^3: the
  // first non-zero coordinate is 1.
  std::vector<std::array<std::uint64_t, 3>> points;
  for (std::uint64_t b = 0; b < q; ++b) {
    for (std::uint64_t c = 0; c < q; ++c) points.push_back({1, b, c});
  }
  for (std::uint64_t c = 0; c < q; ++c) points.push_back({0, 1, c});
  points.push_back({0, 0, 1});

  Instance inst;
  inst.universe_size = points.size();
  inst.k = q + 1;
  // Lines are indexed by the same representatives; point p lies on line l iff p.l = 0.
  for (const auto& line : points) {
    std::vector<Element> members;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const auto& pt = points[p];
      if ((pt[0] * line[0] + pt[1] * line[1] + pt[2] * line[2]) % q == 0) members.push_back(p);
    }
    inst.sets.push_back(std::move(members));
  }
  return inst;
}

Instance gen_random(std::size_t universe_size, std::size_t n, std::size_t k,
                    const std::optional<WeightRange>& weight_range, std::uint64_t seed) {
  if (k == 0 || n == 0) throw InputError("n and k must be positive");
  if (universe_size < k) throw InputError("universe smaller than k");
  if (binomial_capped(universe_size, k, n) < n) {
    throw InputError("fewer than " + std::to_string(n) + " distinct " + std::to_string(k) +
                     "-subsets of a universe of size " + std::to_string(universe_size));
  }
  if (weight_range) {
    if (sgn(weight_range->low) <= 0 || weight_range->high < weight_range->low ||
        weight_range->steps == 0) {
      throw InputError("weight range must satisfy 0 < low <= high and steps > 0");
    }
  }

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.universe_size = universe_size;
  inst.k = k;
  std::set<std::vector<Element>> seen;
  std::size_t failures = 0;
  while (inst.sets.size() < n) {
    // Floyd's sampling of a k-subset.
    std::set<Element> chosen;
    for (std::size_t j = universe_size - k; j < universe_size; ++j) {
      const Element t = draw_below(rng, j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<Element> s(chosen.begin(), chosen.end());
    if (!seen.insert(s).second) {
      if (++failures > 100 * n) throw InputError("too many duplicate samples");
      continue;
    }
    inst.sets.push_back(std::move(s));
  }
  if (weight_range) {
    std::vector<Rational> weights;
    const Rational span = weight_range->high - weight_range->low;
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = draw_below(rng, std::uint64_t{weight_range->steps} + 1);
      Rational w = weight_range->low + span * Rational(static_cast<unsigned long>(j),
                                                       static_cast<unsigned long>(weight_range->steps));
      w.canonicalize();
      weights.push_back(w);
    }
    inst.weights = std::move(weights);
  }
  return inst;
}

Instance instance_from_graph(const ConflictGraph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) throw InputError("graph has no vertices");
  Instance inst;
  inst.sets.assign(n, {});
  Element next = 0;
  for (auto [u, v] : graph.edges()) {
    inst.sets[u].push_back(next);
    inst.sets[v].push_back(next);
    ++next;
  }
  for (auto& s : inst.sets) {
    if (s.empty()) s.push_back(next++);
  }
  inst.universe_size = next;
  inst.k = 1;
  for (const auto& s : inst.sets) inst.k = std::max(inst.k, s.size());
  bool unit = true;
  for (const auto& w : graph.weights()) unit = unit && w == 1;
  if (!unit) inst.weights = graph.weights();
  return inst;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    auto tokens = tokenize(text.substr(pos, end - pos));
    if (!tokens.empty() && tokens[0] != "c") out.push_back({number, std::move(tokens)});
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    syntax_error(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<Rational> parse_weights(const Line& line, std::size_t expected) {
  if (line.tokens.size() != expected + 1) {
    syntax_error(line.number, "expected " + std::to_string(expected) + " weights");
  }
  std::vector<Rational> weights;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    try {
      weights.push_back(parse_rational(line.tokens[i]));
    } catch (const InputError& e) {
      syntax_error(line.number, e.what());
    }
  }
  return weights;
}

void append_weights(std::ostringstream& out, const std::vector<Rational>& weights) {
  out << 'w';
  for (const auto& w : weights) out << ' ' << to_string(w);
  out << '\n';
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw InputError("empty instance file");
  const Line& header = lines[0];
  if (header.tokens.size() != 5 || header.tokens[0] != "p" || header.tokens[1] != "setpack") {
    syntax_error(header.number, "expected header 'p setpack N n k'");
  }
  Instance inst;
  inst.universe_size = parse_count(header.tokens[2], header.number);
  const std::size_t n = parse_count(header.tokens[3], header.number);
  inst.k = parse_count(header.tokens[4], header.number);

  std::size_t next = 1;
  if (next < lines.size() && lines[next].tokens[0] == "w") {
    inst.weights = parse_weights(lines[next], n);
    ++next;
  }
  for (; next < lines.size(); ++next) {
    const Line& line = lines[next];
    if (inst.sets.size() == n) {
      syntax_error(line.number, "count mismatch: header declares " + std::to_string(n) + " sets");
    }
    std::vector<Element> s;
    for (auto token : line.tokens) {
      const std::size_t id = parse_count(token, line.number);
      if (id == 0 || id > inst.universe_size) {
        syntax_error(line.number, "element id " + std::to_string(id) + " outside [1, N]");
      }
      s.push_back(id - 1);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      syntax_error(line.number, "duplicate element in set");
    }
    if (s.size() > inst.k) syntax_error(line.number, "set has more than k elements");
    inst.sets.push_back(std::move(s));
  }
  if (inst.sets.size() != n) {
    throw InputError("count mismatch: header declares " + std::to_string(n) + " sets, found " +
                     std::to_string(inst.sets.size()));
  }
  require_valid(inst);
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "p setpack " << instance.universe_size << ' ' << instance.size() << ' ' << instance.k
      << '\n';
  if (instance.weights) append_weights(out, *instance.weights);
  for (const auto& s : instance.sets) {
    for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j] + 1;
    out << '\n';
  }
  return out.str();
}

ConflictGraph parse_graph(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw InputError("empty graph file");
  const Line& header = lines[0];
  if (header.tokens.size() != 4 || header.tokens[0] != "p" || header.tokens[1] != "graph") {
    syntax_error(header.number, "expected header 'p graph n m'");
  }
  const std::size_t n = parse_count(header.tokens[2], header.number);
  const std::size_t m = parse_count(header.tokens[3], header.number);
  std::vector<Rational> weights;
  std::size_t next = 1;
  if (next < lines.size() && lines[next].tokens[0] == "w") {
    weights = parse_weights(lines[next], n);
    ++next;
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (; next < lines.size(); ++next) {
    const Line& line = lines[next];
    if (line.tokens.size() != 2) syntax_error(line.number, "expected an edge 'u v'");
    const std::size_t u = parse_count(line.tokens[0], line.number);
    const std::size_t v = parse_count(line.tokens[1], line.number);
    if (u == 0 || v == 0 || u > n || v > n) syntax_error(line.number, "vertex id outside [1, n]");
    edges.emplace_back(u - 1, v - 1);
  }
  if (edges.size() != m) {
    throw InputError("count mismatch: header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return ConflictGraph::from_edges(n, edges, std::move(weights));
}

std::string serialize_graph(const ConflictGraph& graph) {
  std::ostringstream out;
  const auto edges = graph.edges();
  out << "p graph " << graph.vertex_count() << ' ' << edges.size() << '\n';
  append_weights(out, graph.weights());
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace setpack
