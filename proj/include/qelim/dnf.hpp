// qelim :: Literal, Product, Dnf, and conversion of quantifier-free formulas to DNF

#ifndef QELIM_DNF_HPP_
#define QELIM_DNF_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qelim/formula.hpp"

namespace qelim {

template <AtomTheory T>
struct Literal {
  bool positive = true;
  typename T::Atom atom;

  static Literal pos(typename T::Atom a) { return Literal{true, std::move(a)}; }
  static Literal neg(typename T::Atom a) { return Literal{false, std::move(a)}; }

  Literal negated() const { return Literal{!positive, atom}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Conjunction of literals.
template <AtomTheory T>
class Product {
public:
  explicit Product(std::size_t arity, std::vector<Literal<T>> literals = {})
      : arity_(arity), literals_(std::move(literals)) {
    for (const Literal<T>& l : literals_) {
      if (T::min_arity(l.atom) > arity_) throw std::invalid_argument("literal exceeds product arity");
    }
  }

  std::size_t arity() const { return arity_; }
  const std::vector<Literal<T>>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

  friend bool operator==(const Product&, const Product&) = default;

private:
  std::size_t arity_;
  std::vector<Literal<T>> literals_;
};

// Disjunction of products.
template <AtomTheory T>
class Dnf {
public:
  explicit Dnf(std::size_t arity, std::vector<Product<T>> products = {})
      : arity_(arity), products_(std::move(products)) {
    for (const Product<T>& p : products_) {
      if (p.arity() != arity_) throw std::invalid_argument("product arity differs from DNF arity");
    }
  }

  std::size_t arity() const { return arity_; }
  const std::vector<Product<T>>& products() const { return products_; }
  bool empty() const { return products_.empty(); }
  std::size_t size() const { return products_.size(); }

  friend bool operator==(const Dnf&, const Dnf&) = default;

private:
  std::size_t arity_;
  std::vector<Product<T>> products_;
};

enum class LiteralTruth : unsigned char { True, False, Unknown };

// Optional theory hooks used while building products: canonical atom forms
// (for deduplication) and recognition of literals true or false everywhere.
template <class S, class T>
concept LiteralSimplifier = AtomTheory<T> && requires(const S& s, const Literal<T>& l, const typename T::Atom& a) {
  { s.literal_truth(l) } -> std::same_as<LiteralTruth>;
  { s.canonicalize(a) } -> std::same_as<typename T::Atom>;
};

template <AtomTheory T>
struct NoSimplification {
  LiteralTruth literal_truth(const Literal<T>&) const { return LiteralTruth::Unknown; }
  typename T::Atom canonicalize(const typename T::Atom& a) const { return a; }
};

class DnfLimitExceeded : public std::runtime_error {
public:
  explicit DnfLimitExceeded(std::size_t limit)
      : std::runtime_error("DNF size limit exceeded (" + std::to_string(limit) + " products)"), limit_(limit) {}
  std::size_t limit() const { return limit_; }

private:
  std::size_t limit_;
};

inline constexpr std::size_t kNoDnfLimit = std::numeric_limits<std::size_t>::max();

template <AtomTheory T>
Formula<T> interpret_literal(const Literal<T>& l, std::size_t arity) {
  Formula<T> a = Formula<T>::make_atom(l.atom, arity);
  return l.positive ? a : mk_not(a);
}

// Right fold of And; the empty product is truth.
template <AtomTheory T>
Formula<T> interpret_product(const Product<T>& p) {
  const auto& ls = p.literals();
  if (ls.empty()) return mk_true<T>(p.arity());
  Formula<T> acc = interpret_literal(ls.back(), p.arity());
  for (auto it = ls.rbegin() + 1; it != ls.rend(); ++it) {
    acc = Formula<T>::make_and(interpret_literal(*it, p.arity()), acc);
  }
  return acc;
}

// Right fold of Or; the empty DNF is falsity.
template <AtomTheory T>
Formula<T> interpret_dnf(const Dnf<T>& d) {
  const auto& ps = d.products();
  if (ps.empty()) return Formula<T>::make_false(d.arity());
  Formula<T> acc = interpret_product(ps.back());
  for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) {
    acc = Formula<T>::make_or(interpret_product(*it), acc);
  }
  return acc;
}

// Literal-list helpers parameterized by a simplifier.
template <AtomTheory T, LiteralSimplifier<T> S>
class ProductBuilder {
public:
  using Lits = std::vector<Literal<T>>;

  explicit ProductBuilder(const S& simp): simp_(simp) {}

  // Canonical form of a single literal; nullopt if it is false everywhere,
  // an empty list if it is true everywhere.
  std::optional<Lits> literal(const Literal<T>& l) const {
    Literal<T> c{l.positive, simp_.canonicalize(l.atom)};
    switch (simp_.literal_truth(c)) {
      case LiteralTruth::True: return Lits{};
      case LiteralTruth::False: return std::nullopt;
      case LiteralTruth::Unknown: break;
    }
    return Lits{std::move(c)};
  }

  // Conjunction of two canonical literal lists; nullopt if contradictory.
  std::optional<Lits> conjoin(const Lits& a, const Lits& b) const {
    Lits out = a;
    for (const Literal<T>& l : b) {
      if (std::find(out.begin(), out.end(), l) != out.end()) continue;
      if (std::find(out.begin(), out.end(), l.negated()) != out.end()) return std::nullopt;
      out.push_back(l);
    }
    return out;
  }

  // Re-simplify an arbitrary literal list.
  std::optional<Lits> simplify(const Lits& in) const {
    Lits out;
    for (const Literal<T>& l : in) {
      std::optional<Lits> one = literal(l);
      if (!one) return std::nullopt;
      std::optional<Lits> merged = conjoin(out, *one);
      if (!merged) return std::nullopt;
      out = std::move(*merged);
    }
    return out;
  }

private:
  const S& simp_;
};

namespace detail {

// DNFs of a formula and of its negation. Each side is built only when a
// parent asks for it, so a negation track that nothing uses (the cross
// product under a big disjunction, say) is never expanded.
template <AtomTheory T, LiteralSimplifier<T> S>
class DnfConverter {
public:
  using Lits = std::vector<Literal<T>>;
  using Products = std::vector<Lits>;

  DnfConverter(const S& simp, std::size_t limit): builder_(simp), limit_(limit) {}

  // DNF of f when positive, of ~f otherwise.
  Products convert(const Formula<T>& f, bool positive) const {
    using K = typename Formula<T>::Kind;
    switch (f.kind()) {
      case K::Atom: return single(positive ? Literal<T>::pos(f.atom()) : Literal<T>::neg(f.atom()));
      case K::False: return positive ? Products{} : Products{Lits{}};
      case K::Or:
        // ~(a | b)  is  ~a & ~b
        if (positive) return unite(convert(f.lhs(), true), convert(f.rhs(), true));
        return cross(convert(f.lhs(), false), convert(f.rhs(), false));
      case K::And:
        if (positive) return cross(convert(f.lhs(), true), convert(f.rhs(), true));
        return unite(convert(f.lhs(), false), convert(f.rhs(), false));
      case K::Implies:
        // a -> b  is  ~a | b;  ~(a -> b)  is  a & ~b
        if (positive) return unite(convert(f.lhs(), false), convert(f.rhs(), true));
        return cross(convert(f.lhs(), true), convert(f.rhs(), false));
      case K::Exists:
      case K::Forall: break;
    }
    throw std::invalid_argument("to_dnf: formula contains a quantifier");
  }

private:
  Products single(const Literal<T>& l) const {
    std::optional<Lits> one = builder_.literal(l);
    if (!one) return {};
    return {std::move(*one)};
  }

  Products unite(Products a, Products b) const {
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    return absorb(std::move(a));
  }

  Products cross(const Products& a, const Products& b) const {
    Products out;
    for (const Lits& x : a) {
      for (const Lits& y : b) {
        std::optional<Lits> z = builder_.conjoin(x, y);
        if (!z) continue;
        out.push_back(std::move(*z));
        guard(out.size());
      }
    }
    return absorb(std::move(out));
  }

  static bool subset(const Lits& small, const Lits& big) {
    return std::all_of(small.begin(), small.end(),
                       [&](const Literal<T>& l) { return std::find(big.begin(), big.end(), l) != big.end(); });
  }

  // p | (p & q) is p: drop every product that contains another one, keeping
  // the survivors in their original order.
  Products absorb(Products ps) const {
    std::vector<std::size_t> by_size(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) by_size[i] = i;
    std::stable_sort(by_size.begin(), by_size.end(),
                     [&](std::size_t a, std::size_t b) { return ps[a].size() < ps[b].size(); });
    std::vector<std::size_t> kept;
    std::vector<bool> keep(ps.size(), false);
    for (std::size_t i : by_size) {
      if (std::none_of(kept.begin(), kept.end(), [&](std::size_t k) { return subset(ps[k], ps[i]); })) {
        kept.push_back(i);
        keep[i] = true;
      }
    }
    Products out;
    out.reserve(kept.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (keep[i]) out.push_back(std::move(ps[i]));
    }
    guard(out.size());
    return out;
  }

  void guard(std::size_t n) const {
    if (n > limit_) throw DnfLimitExceeded(limit_);
  }

  ProductBuilder<T, S> builder_;
  std::size_t limit_;
};

}  // namespace detail

template <AtomTheory T, LiteralSimplifier<T> S>
Dnf<T> to_dnf(const Formula<T>& f, const S& simp, std::size_t max_products = kNoDnfLimit) {
  if (!is_qfree(f)) throw std::invalid_argument("to_dnf: formula contains a quantifier");
  detail::DnfConverter<T, S> conv(simp, max_products);
  std::vector<Product<T>> products;
  for (auto& lits : conv.convert(f, true)) products.emplace_back(f.arity(), std::move(lits));
  return Dnf<T>(f.arity(), std::move(products));
}

template <AtomTheory T>
Dnf<T> to_dnf(const Formula<T>& f) {
  return to_dnf(f, NoSimplification<T>{});
}

}  // namespace qelim

#endif  // QELIM_DNF_HPP_
