#include "pmt/dlattice.hpp"

#include <algorithm>
#include <numeric>

namespace pmt::lattice {

namespace {

std::string idx(Index i) { return std::to_string(i); }

}  // namespace

DLattice DLattice::validate(std::vector<std::vector<Index>> meet, std::vector<std::vector<Index>> join,
                            Index bottom, Index top, std::vector<std::string> labels) {
  std::size_t n = meet.size();
  if (n == 0) throw LatticeError("shape", {}, "lattice has no elements");
  if (join.size() != n) throw LatticeError("shape", {}, "meet and join tables differ in size");
  for (std::size_t i = 0; i < n; ++i) {
    if (meet[i].size() != n || join[i].size() != n)
      throw LatticeError("shape", {static_cast<Index>(i)}, "table row " + std::to_string(i) + " is not of length " +
                                                                std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      if (meet[i][j] >= n || join[i][j] >= n)
        throw LatticeError("shape", {static_cast<Index>(i), static_cast<Index>(j)}, "table entry out of range");
  }
  if (bottom >= n || top >= n) throw LatticeError("shape", {}, "bottom or top out of range");
  if (!labels.empty() && labels.size() != n) throw LatticeError("shape", {}, "label count differs from size");

  auto m = [&](Index a, Index b) { return meet[a][b]; };
  auto j = [&](Index a, Index b) { return join[a][b]; };
  auto fail = [](const std::string &law, std::vector<Index> w) -> void {
    std::string s = law + " fails at (";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + idx(w[i]);
    throw LatticeError(law, w, s + ")");
  };
  Index N = static_cast<Index>(n);
  for (Index a = 0; a < N; ++a) {
    if (m(a, a) != a) fail("meet idempotence", {a});
    if (j(a, a) != a) fail("join idempotence", {a});
  }
  for (Index a = 0; a < N; ++a)
    for (Index b = 0; b < N; ++b) {
      if (m(a, b) != m(b, a)) fail("meet commutativity", {a, b});
      if (j(a, b) != j(b, a)) fail("join commutativity", {a, b});
      if (m(a, j(a, b)) != a) fail("absorption", {a, b});
      if (j(a, m(a, b)) != a) fail("absorption", {a, b});
    }
  for (Index a = 0; a < N; ++a)
    for (Index b = 0; b < N; ++b)
      for (Index c = 0; c < N; ++c) {
        if (m(a, m(b, c)) != m(m(a, b), c)) fail("meet associativity", {a, b, c});
        if (j(a, j(b, c)) != j(j(a, b), c)) fail("join associativity", {a, b, c});
      }
  for (Index a = 0; a < N; ++a) {
    if (m(bottom, a) != bottom) fail("bottom", {a});
    if (j(top, a) != top) fail("top", {a});
  }
  for (Index a = 0; a < N; ++a)
    for (Index b = 0; b < N; ++b)
      for (Index c = 0; c < N; ++c)
        if (m(a, j(b, c)) != j(m(a, b), m(a, c))) fail("distributivity", {a, b, c});

  DLattice L;
  L.n_ = n;
  L.bottom_ = bottom;
  L.top_ = top;
  L.meet_.resize(n * n);
  L.join_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      L.meet_[a * n + b] = meet[a][b];
      L.join_[a * n + b] = join[a][b];
    }
  L.witnesses_.resize(n);
  L.labels_ = std::move(labels);
  return L;
}

DLattice DLattice::from_closed_family(std::vector<std::size_t> carriers, std::vector<Bitset> sets,
                                      std::vector<std::optional<Formula>> witnesses) {
  std::size_t total = std::accumulate(carriers.begin(), carriers.end(), std::size_t{0});
  if (witnesses.empty()) witnesses.resize(sets.size());
  if (witnesses.size() != sets.size()) throw Error("from_closed_family: witness count differs");
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (const auto &s : sets)
    if (s.size() != total) throw Error("from_closed_family: carrier mismatch");
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sets[a].lex_compare(sets[b]) < 0; });

  DLattice L;
  L.carriers_ = std::move(carriers);
  for (std::size_t i : order) {
    if (!L.sets_.empty() && L.sets_.back() == sets[i]) continue;
    L.index_.emplace(sets[i], static_cast<Index>(L.sets_.size()));
    L.sets_.push_back(sets[i]);
    L.witnesses_.push_back(witnesses[i]);
  }
  L.n_ = L.sets_.size();
  auto b = L.find(Bitset(total));
  auto t = L.find(Bitset::full(total));
  if (!b || !t) throw Error("from_closed_family: empty or full vector missing");
  L.bottom_ = *b;
  L.top_ = *t;
  for (Index a = 0; a < L.n_; ++a)
    for (Index c = a + 1; c < L.n_; ++c)
      if (!L.find(L.sets_[a] & L.sets_[c]) || !L.find(L.sets_[a] | L.sets_[c]))
        throw Error("from_closed_family: family is not closed");
  return L;
}

Index DLattice::meet(Index a, Index b) const {
  if (!has_sets()) return meet_[a * n_ + b];
  return index_.at(sets_[a] & sets_[b]);
}

Index DLattice::join(Index a, Index b) const {
  if (!has_sets()) return join_[a * n_ + b];
  return index_.at(sets_[a] | sets_[b]);
}

bool DLattice::leq(Index a, Index b) const {
  if (has_sets()) return sets_[a].is_subset_of(sets_[b]);
  return meet_[a * n_ + b] == a;
}

std::optional<Index> DLattice::find(const Bitset &s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string DLattice::label(Index a) const {
  if (witnesses_[a]) return syntax::to_string(syntax::tidy_bound(*witnesses_[a]));
  if (!labels_.empty()) return labels_[a];
  return "e" + std::to_string(a);
}

std::vector<Index> DLattice::join_irreducibles() const {
  // In a finite lattice j is join-irreducible iff the join of everything
  // strictly below it is strictly below it.
  std::vector<Index> out;
  for (Index j = 0; j < n_; ++j) {
    if (j == bottom_) continue;
    Index acc = bottom_;
    for (Index a = 0; a < n_; ++a)
      if (a != j && leq(a, j)) acc = join(acc, a);
    if (acc != j) out.push_back(j);
  }
  return out;
}

std::vector<Bitset> DLattice::prime_filters() const {
  std::vector<Bitset> out;
  for (Index j : join_irreducibles()) {
    Bitset f(n_);
    for (Index a = 0; a < n_; ++a)
      if (leq(j, a)) f.set(a);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), BitsetLexLess{});
  return out;
}

bool DLattice::is_prime_filter(const Bitset &f) const {
  if (f.size() != n_ || !f.test(top_) || f.test(bottom_)) return false;
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) {
      if (f.test(a) && leq(a, b) && !f.test(b)) return false;
      if (f.test(a) && f.test(b) && !f.test(meet(a, b))) return false;
      if (f.test(join(a, b)) && !f.test(a) && !f.test(b)) return false;
    }
  return true;
}

std::optional<Index> DLattice::complement(Index a) const {
  for (Index b = 0; b < n_; ++b)
    if (meet(a, b) == bottom_ && join(a, b) == top_) return b;
  return std::nullopt;
}

DLattice DLattice::opposite() const {
  DLattice L;
  L.n_ = n_;
  L.bottom_ = top_;
  L.top_ = bottom_;
  L.meet_ = join_;
  L.join_ = meet_;
  L.carriers_ = carriers_;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    L.sets_.push_back(~sets_[i]);
    L.index_.emplace(L.sets_.back(), static_cast<Index>(i));
  }
  L.witnesses_.assign(n_, std::nullopt);
  L.labels_.clear();
  for (Index a = 0; a < n_; ++a) L.labels_.push_back(label(a));
  return L;
}

std::vector<std::vector<Index>> DLattice::meet_table() const {
  std::vector<std::vector<Index>> t(n_, std::vector<Index>(n_));
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) t[a][b] = meet(a, b);
  return t;
}

std::vector<std::vector<Index>> DLattice::join_table() const {
  std::vector<std::vector<Index>> t(n_, std::vector<Index>(n_));
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) t[a][b] = join(a, b);
  return t;
}

DLattice from_set_family(const std::vector<std::size_t> &carriers, const std::vector<Bitset> &generators,
                         const std::vector<std::optional<Formula>> &witnesses, std::size_t cap,
                         std::size_t arity_tag) {
  std::size_t total = std::accumulate(carriers.begin(), carriers.end(), std::size_t{0});
  if (!witnesses.empty() && witnesses.size() != generators.size())
    throw Error("from_set_family: witness count differs from generator count");
  std::vector<Bitset> sets;
  std::vector<std::optional<Formula>> wit;
  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  auto add = [&](const Bitset &s, std::optional<Formula> w) {
    if (seen.count(s)) return;
    if (sets.size() >= cap) throw CapExceeded(arity_tag, cap);
    seen.emplace(s, sets.size());
    sets.push_back(s);
    wit.push_back(std::move(w));
  };
  add(Bitset(total), Formula::bottom());
  add(Bitset::full(total), Formula::top());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != total) throw Error("from_set_family: carrier mismatch");
    add(generators[i], witnesses.empty() ? std::nullopt : witnesses[i]);
  }
  for (std::size_t next = 0; next < sets.size(); ++next)
    for (std::size_t k = 0; k < next; ++k) {
      auto combine = [&](bool is_meet) {
        std::optional<Formula> w;
        if (wit[k] && wit[next])
          w = is_meet ? Formula::conj({*wit[k], *wit[next]}) : Formula::disj({*wit[k], *wit[next]});
        add(is_meet ? (sets[k] & sets[next]) : (sets[k] | sets[next]), w);
      };
      combine(true);
      combine(false);
    }
  return DLattice::from_closed_family(carriers, std::move(sets), std::move(wit));
}

bool is_lattice_hom(const LatticeHom &h) {
  const auto &S = *h.source;
  const auto &T = *h.target;
  if (h.map.size() != S.size()) return false;
  for (Index x : h.map)
    if (x >= T.size()) return false;
  if (h.map[S.bottom()] != T.bottom() || h.map[S.top()] != T.top()) return false;
  for (Index a = 0; a < S.size(); ++a)
    for (Index b = 0; b < S.size(); ++b) {
      if (h.map[S.meet(a, b)] != T.meet(h.map[a], h.map[b])) return false;
      if (h.map[S.join(a, b)] != T.join(h.map[a], h.map[b])) return false;
    }
  return true;
}

LatticeHom compose(const LatticeHom &g, const LatticeHom &f) {
  LatticeHom out{f.source, g.target, {}};
  for (Index x : f.map) out.map.push_back(g.map[x]);
  return out;
}

}  // namespace pmt::lattice
