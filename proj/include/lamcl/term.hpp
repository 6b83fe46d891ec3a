#pragma once

// Proof-term AST.  Channels and lambda variables share one name space; a
// channel occurrence is a plain Var whose binder is a ParCh node, and its
// polarity (send or receive endpoint) is the side of that binder it sits on.
// Terms are immutable and shared.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/formula.hpp"

namespace lamcl {

enum class TermKind {
    Var,       // name
    Lam,       // binder name, annot, child 0 = body
    App,       // child 0 = fun, child 1 = arg
    Pair,      // child 0, child 1
    Proj,      // idx in {0,1}, child 0
    Efq,       // target formula, child 0
    Unit,      // tt : top
    ParCh,     // channel name, kind formula, child 0 = left, child 1 = right
    ParPlain,  // child 0, child 1
    BoolTrue,  // extension
    BoolFalse, // extension
    If,        // extension; children cond, then, else
};

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

class Term {
public:
    Term() = default;
    explicit Term(TermPtr p) : node_(std::move(p)) {}

    static Term var(const std::string& name);
    static Term lam(const std::string& binder, Formula annot, Term body);
    static Term app(Term fun, Term arg);
    static Term pair(Term fst, Term snd);
    static Term proj(Term of, int idx);
    static Term efq(Formula target, Term of);
    static Term unit();
    static Term par_ch(const std::string& chan, Formula kind, Term lhs, Term rhs);
    static Term par_plain(Term lhs, Term rhs);
    static Term btrue();
    static Term bfalse();
    static Term ite(Term cond, Term then_branch, Term else_branch);

    bool valid() const { return node_ != nullptr; }
    const void* id() const { return node_.get(); } // node identity, for caches
    TermKind kind() const;
    const std::string& name() const;     // Var / Lam / ParCh
    const Formula& ann() const;          // Lam / ParCh / Efq
    int idx() const;                     // Proj
    const Term& child(int i) const;
    int arity() const;

private:
    TermPtr node_;
};

struct TermNode {
    TermKind kind;
    std::string name;
    Formula ann;
    int idx = 0;
    std::vector<Term> kids;
};

inline Term Term::var(const std::string& n) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::Var, n, {}, 0, {}}));
}
inline Term Term::lam(const std::string& b, Formula a, Term body) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::Lam, b, std::move(a), 0, {std::move(body)}}));
}
inline Term Term::app(Term f, Term x) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::App, "", {}, 0, {std::move(f), std::move(x)}}));
}
inline Term Term::pair(Term a, Term b) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::Pair, "", {}, 0, {std::move(a), std::move(b)}}));
}
inline Term Term::proj(Term of, int i) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::Proj, "", {}, i, {std::move(of)}}));
}
inline Term Term::efq(Formula target, Term of) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::Efq, "", std::move(target), 0, {std::move(of)}}));
}
inline Term Term::unit() {
    static const Term u(std::make_shared<TermNode>(TermNode{TermKind::Unit, "", {}, 0, {}}));
    return u;
}
inline Term Term::par_ch(const std::string& c, Formula k, Term l, Term r) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::ParCh, c, std::move(k), 0, {std::move(l), std::move(r)}}));
}
inline Term Term::par_plain(Term l, Term r) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::ParPlain, "", {}, 0, {std::move(l), std::move(r)}}));
}
inline Term Term::btrue() {
    static const Term t(std::make_shared<TermNode>(TermNode{TermKind::BoolTrue, "", {}, 0, {}}));
    return t;
}
inline Term Term::bfalse() {
    static const Term f(std::make_shared<TermNode>(TermNode{TermKind::BoolFalse, "", {}, 0, {}}));
    return f;
}
inline Term Term::ite(Term c, Term t, Term e) {
    return Term(std::make_shared<TermNode>(TermNode{TermKind::If, "", {}, 0, {std::move(c), std::move(t), std::move(e)}}));
}

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Formula& Term::ann() const { return node_->ann; }
inline int Term::idx() const { return node_->idx; }
inline const Term& Term::child(int i) const { return node_->kids[static_cast<size_t>(i)]; }
inline int Term::arity() const { return static_cast<int>(node_->kids.size()); }

inline bool is_par(const Term& t) {
    return t.kind() == TermKind::ParCh || t.kind() == TermKind::ParPlain;
}

// Rebuild a node with new children, keeping the head.
inline Term with_children(const Term& t, std::vector<Term> kids) {
    switch (t.kind()) {
    case TermKind::Var: case TermKind::Unit:
    case TermKind::BoolTrue: case TermKind::BoolFalse:
        return t;
    case TermKind::Lam: return Term::lam(t.name(), t.ann(), std::move(kids[0]));
    case TermKind::App: return Term::app(std::move(kids[0]), std::move(kids[1]));
    case TermKind::Pair: return Term::pair(std::move(kids[0]), std::move(kids[1]));
    case TermKind::Proj: return Term::proj(std::move(kids[0]), t.idx());
    case TermKind::Efq: return Term::efq(t.ann(), std::move(kids[0]));
    case TermKind::ParCh: return Term::par_ch(t.name(), t.ann(), std::move(kids[0]), std::move(kids[1]));
    case TermKind::ParPlain: return Term::par_plain(std::move(kids[0]), std::move(kids[1]));
    case TermKind::If: return Term::ite(std::move(kids[0]), std::move(kids[1]), std::move(kids[2]));
    }
    return t;
}

inline size_t term_size(const Term& t) {
    size_t n = 1;
    for (int i = 0; i < t.arity(); ++i) n += term_size(t.child(i));
    return n;
}

// Binder introduced for child i, if any.
inline std::optional<std::string> binder_for_child(const Term& t, int i) {
    if (t.kind() == TermKind::Lam && i == 0) return t.name();
    if (t.kind() == TermKind::ParCh) return t.name(); // binds in both sides
    return std::nullopt;
}

inline void free_vars_into(const Term& t, std::set<std::string>& bound,
                           std::vector<std::string>& order, std::set<std::string>& seen) {
    switch (t.kind()) {
    case TermKind::Var:
        if (!bound.count(t.name()) && seen.insert(t.name()).second) order.push_back(t.name());
        return;
    case TermKind::Lam: {
        bool added = bound.insert(t.name()).second;
        free_vars_into(t.child(0), bound, order, seen);
        if (added) bound.erase(t.name());
        return;
    }
    case TermKind::ParCh: {
        bool added = bound.insert(t.name()).second;
        free_vars_into(t.child(0), bound, order, seen);
        free_vars_into(t.child(1), bound, order, seen);
        if (added) bound.erase(t.name());
        return;
    }
    default:
        for (int i = 0; i < t.arity(); ++i) free_vars_into(t.child(i), bound, order, seen);
    }
}

// Free variables in first-occurrence, left-to-right order.
inline std::vector<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, seen;
    std::vector<std::string> order;
    free_vars_into(t, bound, order, seen);
    return order;
}

inline std::set<std::string> free_var_set(const Term& t) {
    auto v = free_vars(t);
    return std::set<std::string>(v.begin(), v.end());
}

inline bool occurs_free(const std::string& x, const Term& t) {
    return free_var_set(t).count(x) > 0;
}

inline void all_names_into(const Term& t, std::set<std::string>& out) {
    if (!t.name().empty()) out.insert(t.name());
    for (int i = 0; i < t.arity(); ++i) all_names_into(t.child(i), out);
}

inline std::set<std::string> all_names(const Term& t) {
    std::set<std::string> out;
    all_names_into(t, out);
    return out;
}

// hint plus the lowest unused numeric suffix; (∅, "b") gives "b0".
inline std::string fresh_name(const std::set<std::string>& avoid, const std::string& hint) {
    for (size_t i = 0;; ++i) {
        std::string cand = hint + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

// --- substitution ---------------------------------------------------------

using Subst = std::map<std::string, Term>;

inline Term substitute_parallel(const Term& t, const Subst& sub);

inline Term subst_under_binder(const Term& t, const std::string& binder, Subst sub) {
    sub.erase(binder);
    if (sub.empty()) return t;

    // Capture check: some replacement mentions the binder free.
    bool capture = false;
    for (const auto& [x, u] : sub) {
        (void)x;
        if (occurs_free(binder, u)) { capture = true; break; }
    }
    if (!capture) return with_children(t, [&] {
        std::vector<Term> kids;
        for (int i = 0; i < t.arity(); ++i) kids.push_back(substitute_parallel(t.child(i), sub));
        return kids;
    }());

    std::set<std::string> avoid;
    for (const auto& [x, u] : sub) {
        avoid.insert(x);
        all_names_into(u, avoid);
    }
    for (int i = 0; i < t.arity(); ++i) all_names_into(t.child(i), avoid);
    avoid.insert(binder);
    std::string renamed = fresh_name(avoid, binder);

    Subst rename;
    rename[binder] = Term::var(renamed);
    std::vector<Term> kids;
    for (int i = 0; i < t.arity(); ++i)
        kids.push_back(substitute_parallel(substitute_parallel(t.child(i), rename), sub));
    Term rebuilt = with_children(t, std::move(kids));
    // Patch the binder name on the rebuilt node.
    if (t.kind() == TermKind::Lam) return Term::lam(renamed, t.ann(), rebuilt.child(0));
    return Term::par_ch(renamed, t.ann(), rebuilt.child(0), rebuilt.child(1));
}

// Simultaneous capture-avoiding substitution.
inline Term substitute_parallel(const Term& t, const Subst& sub) {
    if (sub.empty()) return t;
    switch (t.kind()) {
    case TermKind::Var: {
        auto it = sub.find(t.name());
        return it == sub.end() ? t : it->second;
    }
    case TermKind::Lam:
    case TermKind::ParCh:
        return subst_under_binder(t, t.name(), sub);
    default: {
        std::vector<Term> kids;
        for (int i = 0; i < t.arity(); ++i) kids.push_back(substitute_parallel(t.child(i), sub));
        return with_children(t, std::move(kids));
    }
    }
}

inline Term substitute(const Term& t, const std::string& x, const Term& u) {
    Subst sub;
    sub[x] = u;
    return substitute_parallel(t, sub);
}

// All occurrences of a receiver channel replaced at once; plain alias, the
// rule-level meaning lives in the reduction module.
inline Term channel_substitute(const Term& d, const std::string& a, const Term& u) {
    return substitute(d, a, u);
}

// --- stacks (Def: argument, projection, or efq applied postfix) -----------

struct StackElem {
    enum class Tag { Arg, Projection, EfqTo } tag;
    Term arg;            // Arg
    int proj_idx = 0;    // Projection
    Formula efq_target;  // EfqTo

    static StackElem argument(Term t) { return {Tag::Arg, std::move(t), 0, {}}; }
    static StackElem projection(int i) { return {Tag::Projection, {}, i, {}}; }
    static StackElem efq_to(Formula p) { return {Tag::EfqTo, {}, 0, std::move(p)}; }
};

using Stack = std::vector<StackElem>;

inline Term apply_stack_elem(const Term& t, const StackElem& e) {
    switch (e.tag) {
    case StackElem::Tag::Arg: return Term::app(t, e.arg);
    case StackElem::Tag::Projection: return Term::proj(t, e.proj_idx);
    case StackElem::Tag::EfqTo: return Term::efq(e.efq_target, t);
    }
    return t;
}

inline Term apply_stack(Term t, const Stack& s) {
    for (const auto& e : s) t = apply_stack_elem(t, e);
    return t;
}

// Projection stack selecting element i of the right-nested tuple of n
// elements: pi1^i pi0 for i < n-1, pi1^(n-1) for the last, empty for n = 1.
inline Stack tuple_projection(size_t i, size_t n) {
    Stack s;
    if (n <= 1) return s;
    if (i + 1 < n) {
        for (size_t k = 0; k < i; ++k) s.push_back(StackElem::projection(1));
        s.push_back(StackElem::projection(0));
    } else {
        for (size_t k = 0; k + 1 < n; ++k) s.push_back(StackElem::projection(1));
    }
    return s;
}

// Right-nested tuple of terms; tt when empty.
inline Term tuple_term(const std::vector<Term>& elems) {
    if (elems.empty()) return Term::unit();
    Term t = elems.back();
    for (size_t i = elems.size() - 1; i-- > 0;) t = Term::pair(elems[i], t);
    return t;
}

// Each free y_i replaced by the i-th projection of b (Def of multiple
// substitution, with the channel variable as the tuple source).
inline Term multiple_substitute(const Term& u, const std::vector<std::string>& ys, const std::string& b) {
    Subst sub;
    for (size_t i = 0; i < ys.size(); ++i)
        sub[ys[i]] = apply_stack(Term::var(b), tuple_projection(i, ys.size()));
    return substitute_parallel(u, sub);
}

// --- paths -----------------------------------------------------------------

inline Term subterm_at(const Term& t, const Path& p) {
    Term cur = t;
    for (int i : p) {
        if (i < 0 || i >= cur.arity())
            throw PathError("path " + path_to_string(p) + " does not resolve");
        cur = cur.child(i);
    }
    return cur;
}

// Literal grafting: binders are never renamed, capture is intentional.
inline Term replace_at(const Term& t, const Path& p, const Term& s, size_t from = 0) {
    if (from == p.size()) return s;
    int i = p[from];
    if (i < 0 || i >= t.arity())
        throw PathError("path " + path_to_string(p) + " does not resolve");
    std::vector<Term> kids;
    for (int k = 0; k < t.arity(); ++k)
        kids.push_back(k == i ? replace_at(t.child(i), p, s, from + 1) : t.child(k));
    return with_children(t, std::move(kids));
}

// --- alpha equivalence ------------------------------------------------------

inline bool alpha_eq_rec(const Term& a, const Term& b,
                         std::vector<std::pair<std::string, std::string>>& env) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case TermKind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
            bool la = it->first == a.name(), lb = it->second == b.name();
            if (la || lb) return la && lb;
        }
        return a.name() == b.name();
    }
    case TermKind::Lam: {
        if (a.ann() != b.ann()) return false;
        env.emplace_back(a.name(), b.name());
        bool ok = alpha_eq_rec(a.child(0), b.child(0), env);
        env.pop_back();
        return ok;
    }
    case TermKind::ParCh: {
        if (a.ann() != b.ann()) return false;
        env.emplace_back(a.name(), b.name());
        bool ok = alpha_eq_rec(a.child(0), b.child(0), env) &&
                  alpha_eq_rec(a.child(1), b.child(1), env);
        env.pop_back();
        return ok;
    }
    case TermKind::Proj:
        if (a.idx() != b.idx()) return false;
        break;
    case TermKind::Efq:
        if (a.ann() != b.ann()) return false;
        break;
    default:
        break;
    }
    for (int i = 0; i < a.arity(); ++i)
        if (!alpha_eq_rec(a.child(i), b.child(i), env)) return false;
    return true;
}

inline bool alpha_eq(const Term& a, const Term& b) {
    std::vector<std::pair<std::string, std::string>> env;
    return alpha_eq_rec(a, b, env);
}

// --- structural classification ---------------------------------------------

enum class TermClass { SimplyTyped, SimpleParallel, ParallelForm, Other };

inline bool contains_par(const Term& t) {
    if (is_par(t)) return true;
    for (int i = 0; i < t.arity(); ++i)
        if (contains_par(t.child(i))) return true;
    return false;
}

// All parallel operators on the outer spine, components simply typed.
inline bool spine_over_simply_typed(const Term& t) {
    if (is_par(t))
        return spine_over_simply_typed(t.child(0)) && spine_over_simply_typed(t.child(1));
    return !contains_par(t);
}

inline TermClass classify(const Term& t) {
    if (!contains_par(t)) return TermClass::SimplyTyped;
    if (spine_over_simply_typed(t)) return TermClass::SimpleParallel;
    return TermClass::Other;
}

inline bool is_parallel_form(const Term& t) {
    TermClass c = classify(t);
    return c != TermClass::Other;
}

// Spine components of a parallel form (the maximal non-parallel subtrees),
// with their paths.
inline void spine_components_into(const Term& t, Path& here, std::vector<std::pair<Path, Term>>& out) {
    if (is_par(t)) {
        for (int i = 0; i < 2; ++i) {
            here.push_back(i);
            spine_components_into(t.child(i), here, out);
            here.pop_back();
        }
    } else {
        out.emplace_back(here, t);
    }
}

inline std::vector<std::pair<Path, Term>> spine_components(const Term& t) {
    std::vector<std::pair<Path, Term>> out;
    Path here;
    spine_components_into(t, here, out);
    return out;
}

} // namespace lamcl
