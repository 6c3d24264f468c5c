#include "pmt/homomorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "pmt/error.hpp"

namespace pmt::semantics {

bool is_homomorphism(const FiniteStructure &m, const FiniteStructure &n, const Homomorphism &h) {
  if (!(m.signature() == n.signature()) || h.image.size() != m.size()) return false;
  for (Element e : h.image)
    if (e >= n.size()) return false;
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (const auto &t : m.tuples(s)) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = h(t[i]);
      if (!n.holds(s, u)) return false;
    }
  return true;
}

Homomorphism compose(const Homomorphism &g, const Homomorphism &f) {
  Homomorphism out;
  for (Element e : f.image) out.image.push_back(g(e));
  return out;
}

namespace {

struct Constraint {
  std::size_t symbol;
  Tuple args;  // source elements
};

class Search {
 public:
  Search(const FiniteStructure &m, const FiniteStructure &n, std::optional<std::size_t> limit)
      : m_(m), n_(n), limit_(limit) {}

  std::vector<Homomorphism> run() {
    if (!(m_.signature() == n_.signature())) throw Error("homomorphisms: signatures differ");
    const auto &syms = m_.signature().symbols();
    touching_.assign(m_.size(), {});
    std::vector<std::size_t> degree(m_.size(), 0);
    for (std::size_t s = 0; s < syms.size(); ++s) {
      target_tuples_.push_back(n_.tuples(s));
      for (const auto &t : m_.tuples(s)) {
        if (t.empty() && target_tuples_.back().empty()) return {};  // a true 0-ary fact cannot be preserved
        std::size_t c = constraints_.size();
        constraints_.push_back({s, t});
        std::set<Element> distinct(t.begin(), t.end());
        for (Element e : distinct) {
          touching_[e].push_back(c);
          ++degree[e];
        }
      }
    }

    std::vector<Bitset> domains(m_.size(), Bitset::full(n_.size()));
    // unary projections: an element at position i of an R-tuple can only go
    // to elements at position i of some target R-tuple
    for (const auto &c : constraints_) {
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        Bitset allowed(n_.size());
        for (const auto &u : target_tuples_[c.symbol]) allowed.set(u[i]);
        domains[c.args[i]] &= allowed;
      }
    }
    for (const auto &d : domains)
      if (d.none()) return {};

    order_.resize(m_.size());
    std::iota(order_.begin(), order_.end(), Element{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Element a, Element b) { return degree[a] < degree[b]; });

    assignment_.assign(m_.size(), 0);
    assigned_.assign(m_.size(), false);
    recurse(0, domains);
    std::sort(results_.begin(), results_.end());
    return results_;
  }

 private:
  bool done() const { return limit_ && results_.size() >= *limit_; }

  // Restrict the unassigned positions of constraint c to values supported by
  // some target tuple consistent with the current assignment and domains.
  bool revise(const Constraint &c, std::vector<Bitset> &domains) {
    const auto &targets = target_tuples_[c.symbol];
    std::vector<Bitset> support;
    std::vector<Element> free_elems;
    for (Element e : c.args)
      if (!assigned_[e] && std::find(free_elems.begin(), free_elems.end(), e) == free_elems.end())
        free_elems.push_back(e);
    for (std::size_t i = 0; i < free_elems.size(); ++i) support.emplace_back(n_.size());
    bool any = false;
    for (const auto &u : targets) {
      bool ok = true;
      std::vector<std::optional<Element>> chosen(free_elems.size());
      for (std::size_t i = 0; i < c.args.size() && ok; ++i) {
        Element e = c.args[i];
        if (assigned_[e]) {
          ok = assignment_[e] == u[i];
        } else {
          std::size_t k = static_cast<std::size_t>(std::find(free_elems.begin(), free_elems.end(), e) - free_elems.begin());
          if (!domains[e].test(u[i]) || (chosen[k] && *chosen[k] != u[i]))
            ok = false;
          else
            chosen[k] = u[i];
        }
      }
      if (!ok) continue;
      any = true;
      for (std::size_t k = 0; k < free_elems.size(); ++k) support[k].set(*chosen[k]);
    }
    if (!any) return false;
    for (std::size_t k = 0; k < free_elems.size(); ++k) {
      domains[free_elems[k]] &= support[k];
      if (domains[free_elems[k]].none()) return false;
    }
    return true;
  }

  void recurse(std::size_t depth, const std::vector<Bitset> &domains) {
    if (done()) return;
    if (depth == order_.size()) {
      results_.push_back(Homomorphism{assignment_});
      return;
    }
    Element e = order_[depth];
    for (std::size_t v : domains[e].indices()) {
      assignment_[e] = static_cast<Element>(v);
      assigned_[e] = true;
      std::vector<Bitset> next = domains;
      next[e] = Bitset(n_.size());
      next[e].set(v);
      bool ok = true;
      for (std::size_t c : touching_[e])
        if (!revise(constraints_[c], next)) {
          ok = false;
          break;
        }
      if (ok) recurse(depth + 1, next);
      assigned_[e] = false;
      if (done()) return;
    }
  }

  const FiniteStructure &m_;
  const FiniteStructure &n_;
  std::optional<std::size_t> limit_;
  std::vector<std::vector<Tuple>> target_tuples_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<Element> order_;
  std::vector<Element> assignment_;
  std::vector<bool> assigned_;
  std::vector<Homomorphism> results_;
};

}  // namespace

std::vector<Homomorphism> homomorphisms(const FiniteStructure &m, const FiniteStructure &n,
                                        std::optional<std::size_t> limit) {
  return Search(m, n, limit).run();
}

bool exists_homomorphism(const FiniteStructure &m, const FiniteStructure &n) {
  return !homomorphisms(m, n, 1).empty();
}

FiniteStructure induced_substructure(const FiniteStructure &m, const std::vector<Element> &elements) {
  std::vector<std::optional<Element>> back(m.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] >= m.size()) throw Error("induced_substructure: element outside universe");
    if (back[elements[i]]) throw Error("induced_substructure: repeated element");
    back[elements[i]] = static_cast<Element>(i);
  }
  FiniteStructure out(m.signature(), elements.size(), m.name());
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (const auto &t : m.tuples(s)) {
      Tuple u;
      bool inside = true;
      for (Element e : t) {
        if (!back[e]) {
          inside = false;
          break;
        }
        u.push_back(*back[e]);
      }
      if (inside) out.add_tuple(s, u);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration condition

namespace {

struct QfAtom {
  std::size_t symbol;  // signature index, or npos for equality
  std::vector<std::size_t> vars;  // < n: x_i ; >= n: y_{i-n}
};
constexpr std::size_t kEquality = static_cast<std::size_t>(-1);

// Does some assignment of the y variables, drawn from `pool`, satisfy every
// atom in structure s with x fixed to xs?
bool satisfiable(const FiniteStructure &s, const std::vector<QfAtom> &atoms, const Tuple &xs, std::size_t ny,
                 const std::vector<Element> &pool) {
  std::size_t n = xs.size();
  Tuple vals(n + ny);
  for (std::size_t i = 0; i < n; ++i) vals[i] = xs[i];
  std::vector<std::size_t> choice(ny, 0);
  if (ny > 0 && pool.empty()) return false;
  while (true) {
    for (std::size_t j = 0; j < ny; ++j) vals[n + j] = pool[choice[j]];
    bool ok = true;
    for (const auto &a : atoms) {
      if (a.symbol == kEquality) {
        ok = vals[a.vars[0]] == vals[a.vars[1]];
      } else {
        Tuple t;
        for (auto v : a.vars) t.push_back(vals[v]);
        ok = s.holds(a.symbol, t);
      }
      if (!ok) break;
    }
    if (ok) return true;
    std::size_t j = ny;
    while (j > 0) {
      --j;
      if (++choice[j] < pool.size()) break;
      choice[j] = 0;
      if (j == 0) return false;
    }
    if (ny == 0) return false;
  }
}

// Enumerate conjunctions of up to `budget` atoms over x_0..x_{n-1} and
// y variables introduced in order of first use.
void enumerate_conjunctions(const Signature &sig, std::size_t n, std::size_t budget, std::vector<QfAtom> &current,
                            std::size_t ny, std::set<std::string> &seen,
                            const std::function<bool(const std::vector<QfAtom> &, std::size_t)> &visit,
                            bool &stop) {
  if (stop) return;
  if (!current.empty()) {
    std::string key;
    for (const auto &a : current) {
      key += std::to_string(a.symbol) + ":";
      for (auto v : a.vars) key += std::to_string(v) + ",";
      key += ";";
    }
    if (seen.insert(key).second && !visit(current, ny)) {
      stop = true;
      return;
    }
  }
  if (current.size() == budget) return;
  auto extend_with = [&](std::size_t symbol, std::size_t arity) {
    std::vector<std::size_t> args(arity, 0);
    // each argument ranges over x's, existing y's, or one new y
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t pos, std::size_t ycount) {
      if (stop) return;
      if (pos == arity) {
        current.push_back({symbol, args});
        enumerate_conjunctions(sig, n, budget, current, ycount, seen, visit, stop);
        current.pop_back();
        return;
      }
      for (std::size_t v = 0; v < n + ycount + 1; ++v) {
        args[pos] = v;
        pick(pos + 1, v == n + ycount ? ycount + 1 : ycount);
      }
    };
    pick(0, ny);
  };
  for (std::size_t s = 0; s < sig.size(); ++s) extend_with(s, sig.symbols()[s].arity);
  extend_with(kEquality, 2);
}

}  // namespace

bool check_enumeration_condition(const std::vector<Element> &elements, const FiniteStructure &m,
                                 const ModelClass &cls, std::size_t qf_budget, std::size_t arity_bound) {
  if (elements.empty()) throw Error("enumeration condition: the subset must be nonempty");
  FiniteStructure sub = induced_substructure(m, elements);
  std::vector<std::pair<const FiniteStructure *, std::vector<Homomorphism>>> maps;
  for (const auto &nmodel : cls.models) maps.emplace_back(&nmodel, homomorphisms(sub, nmodel));

  for (std::size_t n = 0; n <= arity_bound; ++n) {
    std::size_t count = tuple_count(elements.size(), n);
    for (std::size_t idx = 0; idx < count; ++idx) {
      Tuple local = tuple_at(idx, n, elements.size());
      Tuple in_m;
      for (Element e : local) in_m.push_back(elements[e]);
      std::vector<QfAtom> current;
      std::set<std::string> seen;
      bool stop = false;
      bool holds = true;
      enumerate_conjunctions(
          m.signature(), n, qf_budget, current, 0, seen,
          [&](const std::vector<QfAtom> &atoms, std::size_t ny) {
            if (satisfiable(m, atoms, in_m, ny, elements)) return true;
            for (const auto &[target, homs] : maps) {
              std::vector<Element> all(target->size());
              std::iota(all.begin(), all.end(), Element{0});
              for (const auto &g : homs) {
                Tuple image;
                for (Element e : local) image.push_back(g(e));
                if (satisfiable(*target, atoms, image, ny, all)) {
                  holds = false;
                  return false;
                }
              }
            }
            return true;
          },
          stop);
      if (!holds) return false;
    }
  }
  return true;
}

}  // namespace pmt::semantics
