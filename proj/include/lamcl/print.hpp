#pragma once

// Concrete syntax, shared by the parser and the trace format:
//   \x:A. t     application by juxtaposition      <t, u>    t p0 / t p1
//   efq[P] t    tt       t |a:A| u      t || u    T / F / if-then-else
// Parallel operators bind loosest (left-associative); a lambda body stops at
// them, so `\y:B. a y |a:B| x a` is a parallel composition of two terms.

#include <string>

#include "lamcl/formula.hpp"
#include "lamcl/term.hpp"

namespace lamcl {

// Precedence: 0 parallel, 1 lambda/if, 2 application/projection/efq, 3 atom.
inline std::string term_to_string(const Term& t, int prec = 0) {
    auto wrap = [&](int node_prec, std::string s) {
        return node_prec < prec ? "(" + std::move(s) + ")" : std::move(s);
    };
    switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Unit: return "tt";
    case TermKind::BoolTrue: return "T";
    case TermKind::BoolFalse: return "F";
    case TermKind::Pair:
        return "<" + term_to_string(t.child(0), 0) + ", " + term_to_string(t.child(1), 0) + ">";
    case TermKind::Lam:
        return wrap(1, "\\" + t.name() + ":" + formula_to_string(t.ann()) + ". " +
                           term_to_string(t.child(0), 1));
    case TermKind::If:
        return wrap(1, "if " + term_to_string(t.child(0), 1) + " then " +
                           term_to_string(t.child(1), 1) + " else " +
                           term_to_string(t.child(2), 1));
    case TermKind::App:
        return wrap(2, term_to_string(t.child(0), 2) + " " + term_to_string(t.child(1), 3));
    case TermKind::Proj:
        return wrap(2, term_to_string(t.child(0), 2) + " p" + std::to_string(t.idx()));
    case TermKind::Efq:
        return wrap(2, "efq[" + formula_to_string(t.ann()) + "] " + term_to_string(t.child(0), 3));
    case TermKind::ParCh:
        return wrap(0, term_to_string(t.child(0), 0) + " |" + t.name() + ":" +
                           formula_to_string(t.ann()) + "| " + term_to_string(t.child(1), 1));
    case TermKind::ParPlain:
        return wrap(0, term_to_string(t.child(0), 0) + " || " + term_to_string(t.child(1), 1));
    }
    return "?";
}

// Canonical alpha-invariant key (binders numbered by de Bruijn level); used
// for memo tables and state dedup.
inline void alpha_key_into(const Term& t, std::vector<std::string>& env, std::string& out) {
    switch (t.kind()) {
    case TermKind::Var: {
        for (size_t i = env.size(); i-- > 0;) {
            if (env[i] == t.name()) {
                out += "#" + std::to_string(env.size() - 1 - i) + ";";
                return;
            }
        }
        out += "$" + t.name() + ";";
        return;
    }
    case TermKind::Lam:
        out += "L" + formula_to_string(t.ann()) + ".";
        env.push_back(t.name());
        alpha_key_into(t.child(0), env, out);
        env.pop_back();
        return;
    case TermKind::ParCh:
        out += "C" + formula_to_string(t.ann()) + ".";
        env.push_back(t.name());
        alpha_key_into(t.child(0), env, out);
        out += "|";
        alpha_key_into(t.child(1), env, out);
        env.pop_back();
        return;
    case TermKind::App: out += "A("; break;
    case TermKind::Pair: out += "P("; break;
    case TermKind::Proj: out += "j" + std::to_string(t.idx()) + "("; break;
    case TermKind::Efq: out += "E" + formula_to_string(t.ann()) + "("; break;
    case TermKind::Unit: out += "U;"; return;
    case TermKind::ParPlain: out += "Q("; break;
    case TermKind::BoolTrue: out += "T;"; return;
    case TermKind::BoolFalse: out += "F;"; return;
    case TermKind::If: out += "I("; break;
    }
    for (int i = 0; i < t.arity(); ++i) {
        if (i) out += ",";
        alpha_key_into(t.child(i), env, out);
    }
    out += ")";
}

inline std::string alpha_key(const Term& t) {
    std::vector<std::string> env;
    std::string out;
    alpha_key_into(t, env, out);
    return out;
}

} // namespace lamcl
