#include "setpack/local_search.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "setpack/errors.hpp"

namespace setpack {

void WorkBudget::charge(std::uint64_t steps) {
  spent += steps;
  if (spent > limit) {
    throw CapExceeded("work budget of " + std::to_string(limit) + " steps exceeded");
  }
}

namespace {

bool disjoint(const std::vector<Element>& a, const std::vector<Element>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

void require_packing(const Instance& instance, const Packing& packing) {
  if (!is_packing(instance, packing.members)) throw InputError("packing sets are not disjoint");
}

// Packing member owning each element, or -1.
std::vector<std::ptrdiff_t> element_owner(const Instance& instance, const Packing& packing) {
  std::vector<std::ptrdiff_t> owner(instance.universe_size, -1);
  for (SetId m : packing.members) {
    for (Element e : instance.sets[m]) owner[e] = static_cast<std::ptrdiff_t>(m);
  }
  return owner;
}

std::vector<SetId> owners_of(const Instance& instance, const std::vector<std::ptrdiff_t>& owner,
                             SetId s) {
  std::vector<SetId> out;
  for (Element e : instance.sets[s]) {
    if (owner[e] >= 0) out.push_back(static_cast<SetId>(owner[e]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<SetId> packing_neighbors(const Instance& instance, const Packing& packing,
                                     std::span<const SetId> sets) {
  const auto owner = element_owner(instance, packing);
  std::vector<SetId> out;
  for (SetId s : sets) {
    const auto part = owners_of(instance, owner, s);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_improving_set(const Instance& instance, const Packing& packing, const ImprovingSet& imp) {
  if (imp.incoming.size() <= imp.outgoing.size()) return false;
  if (!std::is_sorted(imp.incoming.begin(), imp.incoming.end())) return false;
  for (SetId s : imp.incoming) {
    if (s >= instance.size() || packing.contains(s)) return false;
  }
  if (!is_packing(instance, imp.incoming)) return false;
  return packing_neighbors(instance, packing, imp.incoming) == imp.outgoing;
}

std::optional<ImprovingSet> find_improving_set(const Instance& instance, const Packing& packing,
                                               std::size_t t, WorkBudget& budget) {
  require_packing(instance, packing);
  if (t == 0) throw InputError("t must be at least 1");
  const auto owner = element_owner(instance, packing);
  std::vector<SetId> outside;
  std::vector<std::vector<SetId>> hits;  // packing neighbours per outside set
  for (SetId s = 0; s < instance.size(); ++s) {
    if (packing.contains(s)) continue;
    outside.push_back(s);
    hits.push_back(owners_of(instance, owner, s));
  }

  std::vector<std::size_t> chosen;  // positions into `outside`
  std::vector<std::size_t> removed_count(instance.size(), 0);
  std::size_t removed = 0;

  // Depth-first over lexicographic combinations of exactly `size` sets. A
  // prefix is abandoned once it is not disjoint or already removes `size`
  // members, since extending it can only make both worse.
  std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t next, std::size_t size) {
    if (chosen.size() == size) return removed < size;
    for (std::size_t p = next; p + (size - chosen.size()) <= outside.size(); ++p) {
      budget.charge();
      const auto& set = instance.sets[outside[p]];
      bool ok = true;
      for (auto q : chosen) {
        if (!disjoint(instance.sets[outside[q]], set)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::size_t added = 0;
      for (SetId m : hits[p]) added += removed_count[m]++ == 0 ? 1 : 0;
      removed += added;
      chosen.push_back(p);
      if (removed < size && extend(p + 1, size)) return true;
      chosen.pop_back();
      removed -= added;
      for (SetId m : hits[p]) --removed_count[m];
    }
    return false;
  };

  for (std::size_t size = 1; size <= std::min(t, outside.size()); ++size) {
    chosen.clear();
    if (extend(0, size)) {
      ImprovingSet imp;
      for (auto p : chosen) imp.incoming.push_back(outside[p]);
      imp.outgoing = packing_neighbors(instance, packing, imp.incoming);
      return imp;
    }
  }
  return std::nullopt;
}

std::optional<ImprovingSet> find_improving_set(const Instance& instance, const Packing& packing,
                                               std::size_t t) {
  WorkBudget budget;
  return find_improving_set(instance, packing, t, budget);
}

Packing apply_improving_set(const Instance& instance, const Packing& packing,
                            const ImprovingSet& imp) {
  if (!is_improving_set(instance, packing, imp)) {
    throw InputError("improving set does not match the packing");
  }
  std::vector<SetId> members;
  for (SetId m : packing.members) {
    if (!std::binary_search(imp.outgoing.begin(), imp.outgoing.end(), m)) members.push_back(m);
  }
  members.insert(members.end(), imp.incoming.begin(), imp.incoming.end());
  return Packing(std::move(members));
}

SearchResult t_local_search(const Instance& instance, std::size_t t, WorkBudget& budget) {
  SearchResult result;
  while (auto imp = find_improving_set(instance, result.packing, t, budget)) {
    result.packing = apply_improving_set(instance, result.packing, *imp);
    ++result.iterations;
  }
  return result;
}

SearchResult t_local_search(const Instance& instance, std::size_t t) {
  WorkBudget budget;
  return t_local_search(instance, t, budget);
}

Rational hs_bound(std::size_t k, std::size_t t) {
  if (k < 3 || t < 2) throw InputError("hs_bound requires k >= 3 and t >= 2");
  const std::size_t r = (t + 1) / 2;
  const Rational base = pow(Rational(static_cast<unsigned long>(k - 1)), r);
  const Rational kk(static_cast<unsigned long>(k));
  const Rational offset = t % 2 == 1 ? kk : Rational(2);
  Rational out = (kk * base - offset) / (2 * base - offset);
  out.canonicalize();
  return out;
}

AuxiliaryGraph build_auxiliary_multigraph(const Instance& instance, const Packing& packing,
                                          bool include_loops) {
  require_packing(instance, packing);
  const auto owner = element_owner(instance, packing);
  std::vector<std::size_t> position(instance.size(), 0);
  for (std::size_t p = 0; p < packing.members.size(); ++p) position[packing.members[p]] = p;
  AuxiliaryGraph aux{Multigraph(packing.size()), {}};
  for (SetId s = 0; s < instance.size(); ++s) {
    if (packing.contains(s)) continue;
    const auto hit = owners_of(instance, owner, s);
    if (hit.size() == 2) {
      aux.graph.add_edge(position[hit[0]], position[hit[1]]);
      aux.edge_set.push_back(s);
    } else if (hit.size() == 1 && include_loops) {
      aux.graph.add_edge(position[hit[0]], position[hit[0]]);
      aux.edge_set.push_back(s);
    }
  }
  return aux;
}

std::optional<ImprovingSet> log_improvement_search(const Instance& instance,
                                                   const Packing& packing,
                                                   const Rational& epsilon, WorkBudget& budget,
                                                   LogSearchStats* stats) {
  require_packing(instance, packing);
  if (sgn(epsilon) <= 0) throw InputError("epsilon must be positive");
  LogSearchStats local;
  LogSearchStats& st = stats ? *stats : local;
  st = {};

  const auto owner = element_owner(instance, packing);
  for (SetId s = 0; s < instance.size(); ++s) {
    if (!packing.contains(s) && owners_of(instance, owner, s).empty()) {
      return ImprovingSet{{s}, {}};
    }
  }

  st.size_bound = dense_size_bound(instance.size(), epsilon.get_d());
  const auto aux = build_auxiliary_multigraph(instance, packing, false);
  const Multigraph& h = aux.graph;
  const auto& edges = h.edges();

  auto evaluate = [&](const std::vector<std::size_t>& vertices) -> std::optional<ImprovingSet> {
    ++st.candidates;
    std::vector<std::uint8_t> in(h.vertex_count(), 0);
    for (auto v : vertices) in[v] = 1;
    std::vector<SetId> incoming;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      budget.charge();
      if (!in[edges[e].first] || !in[edges[e].second]) continue;
      const auto& candidate = instance.sets[aux.edge_set[e]];
      bool ok = true;
      for (SetId s : incoming) ok = ok && disjoint(instance.sets[s], candidate);
      if (ok) incoming.push_back(aux.edge_set[e]);
    }
    std::sort(incoming.begin(), incoming.end());
    ImprovingSet imp{incoming, packing_neighbors(instance, packing, incoming)};
    if (is_improving_set(instance, packing, imp)) return imp;
    ++st.rejected;
    return std::nullopt;
  };

  // Constructive route when the auxiliary graph is dense enough.
  const std::size_t nv = h.vertex_count();
  const std::size_t ne = h.edge_count();
  if (nv > 0 && ne > nv) {
    const std::size_t level = (nv + (ne - nv) - 1) / (ne - nv);  // least h with h*E >= (h+1)*V
    const auto dense = find_dense_subgraph(h, level);
    if (dense.size() <= st.size_bound) {
      if (auto imp = evaluate(dense)) return imp;
    }
  }

  // Exhaustive route over vertex sets up to the size bound.
  std::vector<std::vector<std::size_t>> between(nv, std::vector<std::size_t>(nv, 0));
  for (auto [a, b] : edges) {
    between[a][b] += 1;
    if (a != b) between[b][a] += 1;
  }
  std::vector<std::size_t> active;  // vertices touched by at least one edge
  for (std::size_t v = 0; v < nv; ++v) {
    if (h.degree(v) > 0) active.push_back(v);
  }
  std::vector<std::size_t> current;
  std::optional<ImprovingSet> found;
  std::function<bool(std::size_t, std::size_t, std::size_t)> extend =
      [&](std::size_t next, std::size_t target, std::size_t induced) {
        if (current.size() == target) {
          if (induced > target) found = evaluate(current);
          return found.has_value();
        }
        for (std::size_t p = next; p + (target - current.size()) <= active.size(); ++p) {
          budget.charge();
          const auto x = active[p];
          std::size_t added = between[x][x];
          for (auto y : current) added += between[x][y];
          current.push_back(x);
          if (extend(p + 1, target, induced + added)) return true;
          current.pop_back();
        }
        return false;
      };
  for (std::size_t size = 1; size <= std::min(st.size_bound, active.size()); ++size) {
    current.clear();
    if (extend(0, size, 0)) return found;
  }
  return std::nullopt;
}

SearchResult log_local_search(const Instance& instance, const Rational& epsilon,
                              WorkBudget& budget) {
  SearchResult result = t_local_search(instance, 2, budget);
  while (auto imp = log_improvement_search(instance, result.packing, epsilon, budget)) {
    result.packing = apply_improving_set(instance, result.packing, *imp);
    ++result.iterations;
  }
  return result;
}

}  // namespace setpack
