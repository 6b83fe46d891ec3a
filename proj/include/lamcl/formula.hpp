#pragma once

// Formulas (the types of the calculus): atoms, bottom, top, implication,
// conjunction.  Negation is not a node: ~A is parsed as A -> bot and the
// printer sugars it back.  Formulas are immutable and shared; equality is
// syntactic.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"

namespace lamcl {

enum class FormulaKind { Atom, Bot, Top, Arrow, And };

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

class Formula {
public:
    Formula() = default;
    explicit Formula(FormulaPtr p) : node_(std::move(p)) {}

    static Formula atom(const std::string& name);
    static Formula bot();
    static Formula top();
    static Formula arrow(Formula lhs, Formula rhs);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula neg(Formula a) { return arrow(std::move(a), bot()); }

    bool valid() const { return node_ != nullptr; }
    FormulaKind kind() const;
    const std::string& atom_name() const;
    const Formula& left() const;
    const Formula& right() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }
    bool operator<(const Formula& other) const; // structural total order

private:
    FormulaPtr node_;
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;  // Atom only
    Formula left, right;
};

inline Formula Formula::atom(const std::string& name) {
    return Formula(std::make_shared<FormulaNode>(FormulaNode{FormulaKind::Atom, name, {}, {}}));
}
inline Formula Formula::bot() {
    static const Formula b(std::make_shared<FormulaNode>(FormulaNode{FormulaKind::Bot, "", {}, {}}));
    return b;
}
inline Formula Formula::top() {
    static const Formula t(std::make_shared<FormulaNode>(FormulaNode{FormulaKind::Top, "", {}, {}}));
    return t;
}
inline Formula Formula::arrow(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<FormulaNode>(
        FormulaNode{FormulaKind::Arrow, "", std::move(lhs), std::move(rhs)}));
}
inline Formula Formula::conj(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<FormulaNode>(
        FormulaNode{FormulaKind::And, "", std::move(lhs), std::move(rhs)}));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::atom_name() const { return node_->name; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }

inline int formula_cmp(const Formula& a, const Formula& b) {
    if (int k = static_cast<int>(a.kind()) - static_cast<int>(b.kind()); k != 0) return k < 0 ? -1 : 1;
    switch (a.kind()) {
    case FormulaKind::Atom:
        return a.atom_name().compare(b.atom_name());
    case FormulaKind::Bot:
    case FormulaKind::Top:
        return 0;
    case FormulaKind::Arrow:
    case FormulaKind::And:
        if (int c = formula_cmp(a.left(), b.left()); c != 0) return c;
        return formula_cmp(a.right(), b.right());
    }
    return 0;
}

inline bool Formula::operator==(const Formula& other) const { return formula_cmp(*this, other) == 0; }
inline bool Formula::operator<(const Formula& other) const { return formula_cmp(*this, other) < 0; }

using FormulaSet = std::set<Formula>;

// Symbol count: each leaf and each connective counts 1.
inline size_t formula_size(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot:
    case FormulaKind::Top:
        return 1;
    case FormulaKind::Arrow:
    case FormulaKind::And:
        return 1 + formula_size(f.left()) + formula_size(f.right());
    }
    return 0;
}

// Prime = not a conjunction.
inline bool is_prime(const Formula& f) { return f.kind() != FormulaKind::And; }

// Leaves of the maximal conjunction tree, left to right.  Top is its own
// (prime) factor.
inline void prime_factors_into(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == FormulaKind::And) {
        prime_factors_into(f.left(), out);
        prime_factors_into(f.right(), out);
    } else {
        out.push_back(f);
    }
}

inline std::vector<Formula> prime_factors(const Formula& f) {
    std::vector<Formula> out;
    prime_factors_into(f, out);
    return out;
}

inline void proper_subformulas_into(const Formula& f, FormulaSet& out) {
    if (f.kind() == FormulaKind::Arrow || f.kind() == FormulaKind::And) {
        out.insert(f.left());
        out.insert(f.right());
        proper_subformulas_into(f.left(), out);
        proper_subformulas_into(f.right(), out);
    }
}

inline FormulaSet proper_subformulas(const Formula& f) {
    FormulaSet out;
    proper_subformulas_into(f, out);
    return out;
}

inline FormulaSet subformulas(const Formula& f) {
    FormulaSet out = proper_subformulas(f);
    out.insert(f);
    return out;
}

inline bool is_proper_subformula(const Formula& b, const Formula& a) {
    if (a.kind() == FormulaKind::Arrow || a.kind() == FormulaKind::And)
        return b == a.left() || b == a.right() ||
               is_proper_subformula(b, a.left()) || is_proper_subformula(b, a.right());
    return false;
}

inline bool is_subformula(const Formula& b, const Formula& a) {
    return b == a || is_proper_subformula(b, a);
}

// Strong subformula: proper subformula of some prime proper subformula.
inline bool is_strong_subformula(const Formula& b, const Formula& a) {
    for (const Formula& x : proper_subformulas(a))
        if (is_prime(x) && is_proper_subformula(b, x)) return true;
    return false;
}

inline FormulaSet strong_subformulas(const Formula& a) {
    FormulaSet out;
    for (const Formula& x : proper_subformulas(a))
        if (is_prime(x)) proper_subformulas_into(x, out);
    return out;
}

inline std::string formula_to_string(const Formula& f, int prec = 0);

// Precedence: -> is 1 (right), & is 2 (right), ~ is 3.  A -> bot prints as ~A.
inline std::string formula_to_string(const Formula& f, int prec) {
    switch (f.kind()) {
    case FormulaKind::Atom: return f.atom_name();
    case FormulaKind::Bot: return "bot";
    case FormulaKind::Top: return "top";
    case FormulaKind::Arrow: {
        if (f.right().kind() == FormulaKind::Bot) {
            std::string s = "~" + formula_to_string(f.left(), 3);
            return s;
        }
        std::string s = formula_to_string(f.left(), 2) + " -> " + formula_to_string(f.right(), 1);
        return prec > 1 ? "(" + s + ")" : s;
    }
    case FormulaKind::And: {
        std::string s = formula_to_string(f.left(), 3) + " & " + formula_to_string(f.right(), 2);
        return prec > 2 ? "(" + s + ")" : s;
    }
    }
    return "?";
}

} // namespace lamcl
