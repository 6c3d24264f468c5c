#include "pmt/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <functional>
#include <unordered_map>

#include "pmt/error.hpp"

namespace pmt::syntax {

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::initializer_list<Symbol> symbols) {
  for (const auto &s : symbols) add(s.name, s.arity);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

void Signature::add(std::string name, std::size_t arity) {
  if (!is_identifier(name)) throw ParseError("invalid relation symbol name '" + name + "'");
  if (contains(name)) throw ParseError("duplicate relation symbol '" + name + "'");
  symbols_.push_back({std::move(name), arity});
}

bool Signature::contains(std::string_view name) const { return arity_of(name).has_value(); }

std::optional<std::size_t> Signature::arity_of(std::string_view name) const {
  for (const auto &s : symbols_)
    if (s.name == name) return s.arity;
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  throw ParseError("unknown relation symbol '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Formula construction

namespace {

void append_unique(std::vector<std::string> &out, const std::vector<std::string> &in) {
  for (const auto &v : in)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

Formula Formula::make(Node n) {
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Equal:
      append_unique(n.free, n.vars);
      break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      for (const auto &c : n.children) append_unique(n.free, c.free_vars());
      break;
    case Kind::Exists:
      for (const auto &v : n.children.front().free_vars())
        if (v != n.vars.front()) n.free.push_back(v);
      break;
    case Kind::Bottom:
    case Kind::Top:
      break;
  }
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::bottom() {
  static const Formula f = make(Node{Kind::Bottom, {}, {}, {}, {}});
  return f;
}

Formula Formula::top() {
  static const Formula f = make(Node{Kind::Top, {}, {}, {}, {}});
  return f;
}

Formula Formula::atom(std::string symbol, std::vector<std::string> args) {
  return make(Node{Kind::Atom, std::move(symbol), std::move(args), {}, {}});
}

Formula Formula::equal(std::string lhs, std::string rhs) {
  return make(Node{Kind::Equal, {}, {std::move(lhs), std::move(rhs)}, {}, {}});
}

Formula Formula::negation(Formula body) { return make(Node{Kind::Not, {}, {}, {std::move(body)}, {}}); }

Formula Formula::conj(std::vector<Formula> operands) {
  if (operands.empty()) throw std::invalid_argument("conjunction needs at least one operand");
  if (operands.size() == 1) return operands.front();
  return make(Node{Kind::And, {}, {}, std::move(operands), {}});
}

Formula Formula::disj(std::vector<Formula> operands) {
  if (operands.empty()) throw std::invalid_argument("disjunction needs at least one operand");
  if (operands.size() == 1) return operands.front();
  return make(Node{Kind::Or, {}, {}, std::move(operands), {}});
}

Formula Formula::exists(std::string var, Formula body) {
  return make(Node{Kind::Exists, {}, {std::move(var)}, {std::move(body)}, {}});
}

bool Formula::has_free(std::string_view v) const {
  return std::find(free_vars().begin(), free_vars().end(), v) != free_vars().end();
}

bool Formula::is_positive() const {
  if (kind() == Kind::Not) return false;
  return std::all_of(children().begin(), children().end(), [](const Formula &c) { return c.is_positive(); });
}

bool Formula::is_quantifier_free() const {
  if (kind() == Kind::Exists) return false;
  return std::all_of(children().begin(), children().end(),
                     [](const Formula &c) { return c.is_quantifier_free(); });
}

std::set<std::string> Formula::all_vars() const {
  std::set<std::string> out;
  std::set<const Node *> seen;
  std::function<void(const Formula &)> walk = [&](const Formula &f) {
    if (!seen.insert(f.id()).second) return;
    out.insert(f.args().begin(), f.args().end());
    for (const auto &c : f.children()) walk(c);
  };
  walk(*this);
  return out;
}

std::size_t Formula::size() const {
  std::size_t s = 1;
  for (const auto &c : children()) s += c.size();
  return s;
}

bool Formula::operator==(const Formula &o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || symbol() != o.symbol() || args() != o.args() ||
      children().size() != o.children().size())
    return false;
  for (std::size_t i = 0; i < children().size(); ++i)
    if (!(children()[i] == o.children()[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Variables

std::string var_name(std::size_t i) { return "x" + std::to_string(i); }

std::optional<std::size_t> var_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return v;
}

void check_well_formed(const Formula &phi, const Signature &sig) {
  switch (phi.kind()) {
    case Kind::Atom: {
      auto ar = sig.arity_of(phi.symbol());
      if (!ar) throw ParseError("unknown relation symbol '" + phi.symbol() + "'");
      if (*ar != phi.args().size())
        throw ParseError("arity mismatch for '" + phi.symbol() + "': expected " + std::to_string(*ar) +
                         " arguments, got " + std::to_string(phi.args().size()));
      break;
    }
    default:
      for (const auto &c : phi.children()) check_well_formed(c, sig);
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const Formula &f, std::string &out);

void print_operand(const Formula &f, std::string &out) {
  bool wrap = f.kind() == Kind::And || f.kind() == Kind::Or || f.kind() == Kind::Exists;
  if (wrap) out += '(';
  print(f, out);
  if (wrap) out += ')';
}

void print(const Formula &f, std::string &out) {
  switch (f.kind()) {
    case Kind::Bottom: out += "false"; break;
    case Kind::Top: out += "true"; break;
    case Kind::Atom:
      out += f.symbol();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i];
        }
        out += ')';
      }
      break;
    case Kind::Equal: out += f.args()[0] + " = " + f.args()[1]; break;
    case Kind::Not: {
      out += '~';
      Kind k = f.body().kind();
      bool bare = k == Kind::Atom || k == Kind::Top || k == Kind::Bottom || k == Kind::Not;
      if (!bare) out += '(';
      print(f.body(), out);
      if (!bare) out += ')';
      break;
    }
    case Kind::And:
    case Kind::Or: {
      const char *op = f.kind() == Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += op;
        print_operand(f.children()[i], out);
      }
      break;
    }
    case Kind::Exists:
      out += "exists " + f.bound_var() + ". ";
      print(f.body(), out);
      break;
  }
}

}  // namespace

std::string to_string(const Formula &phi) {
  std::string out;
  print(phi, out);
  return out;
}

std::string to_string(const HInductiveSentence &ax) {
  std::string out = "forall";
  for (const auto &v : ax.vars) out += " " + v;
  out += ". " + to_string(ax.antecedent) + " -> " + to_string(ax.consequent);
  return out;
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
  std::string stem = base;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
  if (stem.empty()) stem = "v";
  for (std::size_t k = 1;; ++k) {
    std::string c = stem + std::to_string(k);
    if (!avoid.count(c)) return c;
  }
}

// env maps variable names (free at this point) to their replacements.
Formula rename_rec(const Formula &f, const std::map<std::string, std::string> &env,
                   const std::set<std::string> &targets) {
  auto lookup = [&](const std::string &v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  switch (f.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Atom: {
      std::vector<std::string> args;
      for (const auto &a : f.args()) args.push_back(lookup(a));
      return args == f.args() ? f : Formula::atom(f.symbol(), std::move(args));
    }
    case Kind::Equal: {
      auto l = lookup(f.args()[0]), r = lookup(f.args()[1]);
      return (l == f.args()[0] && r == f.args()[1]) ? f : Formula::equal(l, r);
    }
    case Kind::Not:
      return Formula::negation(rename_rec(f.body(), env, targets));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto &c : f.children()) cs.push_back(rename_rec(c, env, targets));
      return f.kind() == Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case Kind::Exists: {
      const std::string &y = f.bound_var();
      std::map<std::string, std::string> inner = env;
      inner.erase(y);
      // Only variables actually free in the body can be captured.
      bool clash = false;
      for (const auto &v : f.body().free_vars()) {
        if (v == y) continue;
        if (lookup(v) == y) clash = true;
      }
      if (!clash) return Formula::exists(y, rename_rec(f.body(), inner, targets));
      std::set<std::string> avoid = f.body().all_vars();
      avoid.insert(targets.begin(), targets.end());
      for (const auto &[k, v] : env) {
        avoid.insert(k);
        avoid.insert(v);
      }
      std::string y2 = fresh_name(y, avoid);
      inner[y] = y2;
      std::set<std::string> targets2 = targets;
      targets2.insert(y2);
      return Formula::exists(y2, rename_rec(f.body(), inner, targets2));
    }
  }
  return f;
}

}  // namespace

Formula rename_free(const Formula &phi, const std::map<std::string, std::string> &renaming) {
  std::set<std::string> targets;
  for (const auto &[k, v] : renaming) targets.insert(v);
  return rename_rec(phi, renaming, targets);
}

namespace {

Formula rebind(const Formula &f, std::map<std::string, std::string> &env,
               const std::function<std::string()> &next_name) {
  auto lookup = [&](const std::string &v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  switch (f.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Atom: {
      std::vector<std::string> args;
      for (const auto &a : f.args()) args.push_back(lookup(a));
      return Formula::atom(f.symbol(), std::move(args));
    }
    case Kind::Equal:
      return Formula::equal(lookup(f.args()[0]), lookup(f.args()[1]));
    case Kind::Not:
      return Formula::negation(rebind(f.body(), env, next_name));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto &c : f.children()) cs.push_back(rebind(c, env, next_name));
      return f.kind() == Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case Kind::Exists: {
      const std::string &y = f.bound_var();
      std::string fresh = next_name();
      auto saved = env.find(y) == env.end() ? std::optional<std::string>{} : std::optional{env[y]};
      env[y] = fresh;
      Formula body = rebind(f.body(), env, next_name);
      if (saved)
        env[y] = *saved;
      else
        env.erase(y);
      return Formula::exists(fresh, body);
    }
  }
  return f;
}

}  // namespace

Formula canonical_bound(const Formula &phi) {
  std::size_t k = 0;
  std::map<std::string, std::string> env;
  // '%' never appears in identifiers, so these names cannot collide.
  return rebind(phi, env, [&] { return "%" + std::to_string(k++); });
}

bool alpha_equal(const Formula &a, const Formula &b) { return canonical_bound(a) == canonical_bound(b); }

Formula tidy_bound(const Formula &phi) {
  std::set<std::string> free(phi.free_vars().begin(), phi.free_vars().end());
  std::size_t k = 0;
  std::map<std::string, std::string> env;
  return rebind(phi, env, [&] {
    std::string n;
    do n = "y" + std::to_string(k++);
    while (free.count(n));
    return n;
  });
}

// ---------------------------------------------------------------------------
// Ordinal maps and substitution

OrdinalMap::OrdinalMap(std::size_t src, std::size_t tgt, std::vector<std::size_t> img)
    : source(src), target(tgt), image(std::move(img)) {
  if (image.size() != source) throw std::invalid_argument("ordinal map: image length differs from source");
  for (auto v : image)
    if (v >= target) throw std::invalid_argument("ordinal map: value out of range");
}

OrdinalMap OrdinalMap::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = i;
  return OrdinalMap(n, n, std::move(img));
}

OrdinalMap compose(const OrdinalMap &g, const OrdinalMap &f) {
  if (f.target != g.source) throw std::invalid_argument("compose: arities do not match");
  std::vector<std::size_t> img(f.source);
  for (std::size_t i = 0; i < f.source; ++i) img[i] = g(f(i));
  return OrdinalMap(f.source, g.target, std::move(img));
}

std::vector<OrdinalMap> all_maps(std::size_t source, std::size_t target) {
  std::vector<OrdinalMap> out;
  if (target == 0 && source > 0) return out;
  std::vector<std::size_t> img(source, 0);
  while (true) {
    out.emplace_back(source, target, img);
    std::size_t i = source;
    while (i > 0) {
      --i;
      if (++img[i] < target) break;
      img[i] = 0;
      if (i == 0) return out;
    }
    if (source == 0) return out;
  }
}

Formula substitute(const Formula &phi, const OrdinalMap &f) {
  std::map<std::string, std::string> ren;
  for (const auto &v : phi.free_vars()) {
    auto idx = var_index(v);
    if (!idx || *idx >= f.source)
      throw std::invalid_argument("substitute: free variable '" + v + "' outside x0..x" +
                                  std::to_string(f.source) + "-1");
    ren[v] = var_name(f(*idx));
  }
  return rename_free(phi, ren);
}

HInductiveSentence HInductiveSentence::closure(Formula antecedent, Formula consequent) {
  std::vector<std::string> vars = antecedent.free_vars();
  append_unique(vars, consequent.free_vars());
  return HInductiveSentence{std::move(vars), std::move(antecedent), std::move(consequent)};
}

// ---------------------------------------------------------------------------
// pp normal form

Formula PpFormula::to_formula() const {
  Formula f = atoms.empty() ? Formula::top() : Formula::conj(atoms);
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

namespace {

// Renames binders so that no two binders share a name and no binder
// shadows a free variable.
Formula rename_apart(const Formula &f, std::set<std::string> &used, std::set<std::string> &avoid,
                     const std::map<std::string, std::string> &env) {
  auto lookup = [&](const std::string &v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  switch (f.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Atom: {
      std::vector<std::string> args;
      for (const auto &a : f.args()) args.push_back(lookup(a));
      return Formula::atom(f.symbol(), std::move(args));
    }
    case Kind::Equal:
      return Formula::equal(lookup(f.args()[0]), lookup(f.args()[1]));
    case Kind::Not:
      return Formula::negation(rename_apart(f.body(), used, avoid, env));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto &c : f.children()) cs.push_back(rename_apart(c, used, avoid, env));
      return f.kind() == Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case Kind::Exists: {
      std::string y = f.bound_var();
      std::string y2 = used.count(y) ? fresh_name(y, avoid) : y;
      used.insert(y2);
      avoid.insert(y2);
      auto inner = env;
      inner[y] = y2;
      return Formula::exists(y2, rename_apart(f.body(), used, avoid, inner));
    }
  }
  return f;
}

bool occurs_in(const PpFormula &d, const std::string &v) {
  return std::any_of(d.atoms.begin(), d.atoms.end(), [&](const Formula &a) { return a.has_free(v); });
}

std::vector<PpFormula> nf(const Formula &f) {
  switch (f.kind()) {
    case Kind::Bottom:
      return {};
    case Kind::Top:
      return {PpFormula{}};
    case Kind::Atom:
    case Kind::Equal:
      return {PpFormula{{}, {f}}};
    case Kind::Or: {
      std::vector<PpFormula> out;
      for (const auto &c : f.children()) {
        auto part = nf(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case Kind::And: {
      std::vector<PpFormula> acc{PpFormula{}};
      for (const auto &c : f.children()) {
        auto part = nf(c);
        std::vector<PpFormula> next;
        for (const auto &a : acc)
          for (const auto &b : part) {
            PpFormula m = a;
            m.bound.insert(m.bound.end(), b.bound.begin(), b.bound.end());
            m.atoms.insert(m.atoms.end(), b.atoms.begin(), b.atoms.end());
            next.push_back(std::move(m));
          }
        acc = std::move(next);
      }
      return acc;
    }
    case Kind::Exists: {
      auto part = nf(f.body());
      for (auto &d : part)
        if (occurs_in(d, f.bound_var())) d.bound.insert(d.bound.begin(), f.bound_var());
      return part;
    }
    case Kind::Not:
      throw std::invalid_argument("pp_normal_form: negation is not positive");
  }
  return {};
}

}  // namespace

std::vector<PpFormula> pp_normal_form(const Formula &phi) {
  std::set<std::string> used(phi.free_vars().begin(), phi.free_vars().end());
  std::set<std::string> avoid = phi.all_vars();
  return nf(rename_apart(phi, used, avoid, {}));
}

}  // namespace pmt::syntax
