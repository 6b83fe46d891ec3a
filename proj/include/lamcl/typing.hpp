#pragma once

// Type assignment for the calculus: simply typed rules plus the contraction
// rule (u || v, both sides the same type) and the excluded-middle rule
// (u |a:A| v, where a is used at ~A in u and at A in v).  The communication
// guards of the reduction rules live here too: the communication kind of a
// channel binder and its communication complexity, the symbol count of the
// kind's prime factors that escape the subformula property.

#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/formula.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing_context.hpp"

namespace lamcl {

struct TypecheckOptions {
    bool bool_extension = false;
};

inline Formula bool_formula() { return Formula::atom("Bool"); }

namespace detail {

inline Formula typecheck_rec(const TypingContext& env, const Term& t, Path& here,
                             const TypecheckOptions& opts) {
    auto fail = [&](const std::string& rule, const std::string& msg) -> Formula {
        throw TypeError(here, rule, msg);
    };
    auto check_child = [&](int i, const TypingContext& e) {
        here.push_back(i);
        Formula f = typecheck_rec(e, t.child(i), here, opts);
        here.pop_back();
        return f;
    };
    switch (t.kind()) {
    case TermKind::Var: {
        auto f = env.lookup(t.name());
        if (!f) return fail("var", "unbound variable '" + t.name() + "'");
        return *f;
    }
    case TermKind::Lam: {
        Formula body = check_child(0, env.extended(t.name(), t.ann()));
        return Formula::arrow(t.ann(), body);
    }
    case TermKind::App: {
        Formula fun = check_child(0, env);
        Formula arg = check_child(1, env);
        if (fun.kind() != FormulaKind::Arrow)
            return fail("app", "applied term has non-arrow type " + formula_to_string(fun));
        if (!(fun.left() == arg))
            return fail("app", "argument type " + formula_to_string(arg) +
                                   " does not match expected " + formula_to_string(fun.left()));
        return fun.right();
    }
    case TermKind::Pair:
        return Formula::conj(check_child(0, env), check_child(1, env));
    case TermKind::Proj: {
        Formula of = check_child(0, env);
        if (of.kind() != FormulaKind::And)
            return fail("proj", "projection from non-conjunction type " + formula_to_string(of));
        return t.idx() == 0 ? of.left() : of.right();
    }
    case TermKind::Efq: {
        if (t.ann().kind() != FormulaKind::Atom)
            return fail("efq", "efq target must be an atom distinct from bot, got " +
                                   formula_to_string(t.ann()));
        Formula of = check_child(0, env);
        if (of.kind() != FormulaKind::Bot)
            return fail("efq", "efq argument has type " + formula_to_string(of) + ", expected bot");
        return t.ann();
    }
    case TermKind::Unit:
        return Formula::top();
    case TermKind::ParPlain: {
        Formula l = check_child(0, env);
        Formula r = check_child(1, env);
        if (!(l == r))
            return fail("contraction", "sides have different types " + formula_to_string(l) +
                                           " and " + formula_to_string(r));
        return l;
    }
    case TermKind::ParCh: {
        Formula l = check_child(0, env.extended(t.name(), Formula::neg(t.ann())));
        Formula r = check_child(1, env.extended(t.name(), t.ann()));
        if (!(l == r))
            return fail("em", "sides of channel '" + t.name() + "' have different types " +
                                  formula_to_string(l) + " and " + formula_to_string(r));
        return l;
    }
    case TermKind::BoolTrue:
    case TermKind::BoolFalse:
        if (!opts.bool_extension) return fail("bool", "boolean literal requires the bool extension");
        return bool_formula();
    case TermKind::If: {
        if (!opts.bool_extension) return fail("bool", "'if' requires the bool extension");
        Formula c = check_child(0, env);
        if (!(c == bool_formula()))
            return fail("if", "condition has type " + formula_to_string(c) + ", expected Bool");
        Formula a = check_child(1, env);
        Formula b = check_child(2, env);
        if (!(a == b))
            return fail("if", "branches have different types " + formula_to_string(a) + " and " +
                                  formula_to_string(b));
        return a;
    }
    }
    throw TypeError(here, "internal", "unknown term kind");
}

} // namespace detail

inline Formula typecheck(const TypingContext& ctx, const Term& t, const TypecheckOptions& opts = {}) {
    Path here;
    return detail::typecheck_rec(ctx, t, here, opts);
}

// Typing context at a path: root assumptions plus every binder in scope.
// Inside the left side of a channel binder the channel is at ~A, inside the
// right side at A.
inline TypingContext context_at(const TypingContext& ctx, const Term& t, const Path& p) {
    TypingContext env = ctx;
    Term cur = t;
    for (int i : p) {
        if (i < 0 || i >= cur.arity()) throw PathError("path " + path_to_string(p) + " does not resolve");
        if (cur.kind() == TermKind::Lam) {
            env.push(cur.name(), cur.ann());
        } else if (cur.kind() == TermKind::ParCh) {
            env.push(cur.name(), i == 0 ? Formula::neg(cur.ann()) : cur.ann());
        }
        cur = cur.child(i);
    }
    return env;
}

inline Formula type_at(const TypingContext& ctx, const Term& t, const Path& p,
                       const TypecheckOptions& opts = {}) {
    return typecheck(context_at(ctx, t, p), subterm_at(t, p), opts);
}

// Declared kind of the channel bound at p.
inline Formula communication_kind(const Term& t, const Path& p) {
    Term node = subterm_at(t, p);
    if (node.kind() != TermKind::ParCh)
        throw PathError("path " + path_to_string(p) + " does not address a channel binder");
    return node.ann();
}

// Communication complexity of the channel bound at p: the symbol count of
// the prime factors of the kind that are neither proper subformulas of the
// subterm's type nor strong subformulas of the type of any of its free
// variables (binders in scope included).
inline size_t communication_complexity(const TypingContext& root_ctx, const Term& t, const Path& p,
                                       const TypecheckOptions& opts = {}) {
    Term node = subterm_at(t, p);
    if (node.kind() != TermKind::ParCh)
        throw PathError("path " + path_to_string(p) + " does not address a channel binder");
    TypingContext env = context_at(root_ctx, t, p);
    Formula type = typecheck(env, node, opts);

    std::vector<Formula> fv_types;
    for (const std::string& x : free_vars(node)) {
        auto f = env.lookup(x);
        if (!f) throw TypeError(p, "var", "unbound variable '" + x + "'");
        fv_types.push_back(*f);
    }

    size_t total = 0;
    for (const Formula& pf : prime_factors(node.ann())) {
        if (is_proper_subformula(pf, type)) continue;
        bool strong = false;
        for (const Formula& a : fv_types)
            if (is_strong_subformula(pf, a)) { strong = true; break; }
        if (!strong) total += formula_size(pf);
    }
    return total;
}

// The safe-formula set of the strategy: proper subformulas of the goal plus
// strong subformulas of every hypothesis.  Closed under subformulas by
// construction (asserted in tests, not enforced here).
inline FormulaSet a_set(const TypingContext& ctx, const Formula& goal) {
    FormulaSet out = proper_subformulas(goal);
    for (const auto& [name, f] : ctx.entries()) {
        (void)name;
        FormulaSet s = strong_subformulas(f);
        out.insert(s.begin(), s.end());
    }
    return out;
}

inline bool subformula_of_some(const Formula& f, const FormulaSet& set) {
    for (const Formula& a : set)
        if (is_subformula(f, a)) return true;
    return false;
}

} // namespace lamcl
