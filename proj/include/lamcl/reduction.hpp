#pragma once

// The reduction rules: intuitionistic (beta, projection, if), the parallel
// operator permutations, and the communication reductions (basic cross,
// cross, drop), each with its side conditions evaluated exactly.
//
// Discovery (find_redexes) returns every rule instance whose guard holds, in
// leftmost-innermost order; all nondeterminism (races) lives in the choice
// among the returned redexes.  Side conditions of the shape "a does not
// occur free in w" are met by on-the-fly alpha-renaming of the bound
// channel, so they never block a permutation.

#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/formula.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing.hpp"

namespace lamcl {

enum class RuleId {
    Beta, ProjPair, IfTrue, IfFalse,
    PermAppLeft, PermAppLeftPlain,
    PermStack, PermStackPlain,
    PermLam, PermLamPlain,
    PermPairLeft, PermPairLeftPlain,
    PermPairRight, PermPairRightPlain,
    PermParOverParLeft, PermParOverParLeftPlain,
    PermParOverParRight, PermParOverParRightPlain,
    BasicCross, Cross, DropLeft, DropRight,
};

inline const char* rule_name(RuleId r) {
    switch (r) {
    case RuleId::Beta: return "Beta";
    case RuleId::ProjPair: return "ProjPair";
    case RuleId::IfTrue: return "IfTrue";
    case RuleId::IfFalse: return "IfFalse";
    case RuleId::PermAppLeft: return "PermAppLeft";
    case RuleId::PermAppLeftPlain: return "PermAppLeftPlain";
    case RuleId::PermStack: return "PermStack";
    case RuleId::PermStackPlain: return "PermStackPlain";
    case RuleId::PermLam: return "PermLam";
    case RuleId::PermLamPlain: return "PermLamPlain";
    case RuleId::PermPairLeft: return "PermPairLeft";
    case RuleId::PermPairLeftPlain: return "PermPairLeftPlain";
    case RuleId::PermPairRight: return "PermPairRight";
    case RuleId::PermPairRightPlain: return "PermPairRightPlain";
    case RuleId::PermParOverParLeft: return "PermParOverParLeft";
    case RuleId::PermParOverParLeftPlain: return "PermParOverParLeftPlain";
    case RuleId::PermParOverParRight: return "PermParOverParRight";
    case RuleId::PermParOverParRightPlain: return "PermParOverParRightPlain";
    case RuleId::BasicCross: return "BasicCross";
    case RuleId::Cross: return "Cross";
    case RuleId::DropLeft: return "DropLeft";
    case RuleId::DropRight: return "DropRight";
    }
    return "?";
}

inline bool is_intuitionistic(RuleId r) {
    return r == RuleId::Beta || r == RuleId::ProjPair || r == RuleId::IfTrue || r == RuleId::IfFalse;
}

struct Redex {
    Path path;                    // root of the rule instance
    RuleId rule;
    Path sender;                  // BasicCross / Cross: the chosen `a u` occurrence (absolute)
    std::vector<std::string> ys;  // Cross: message variables bound in the sender component
    std::string fresh_hint = "b"; // Cross: hint for the new channel
};

namespace detail {

// Occurrences of channel `a` below t that are bound by the enclosing binder,
// i.e. not shadowed by an inner Lam/ParCh of the same name.  In-order.
inline void channel_occurrences_into(const Term& t, const std::string& a, Path& here,
                                     std::vector<Path>& out) {
    if (t.kind() == TermKind::Var) {
        if (t.name() == a) out.push_back(here);
        return;
    }
    if ((t.kind() == TermKind::Lam || t.kind() == TermKind::ParCh) && t.name() == a) return;
    for (int i = 0; i < t.arity(); ++i) {
        here.push_back(i);
        channel_occurrences_into(t.child(i), a, here, out);
        here.pop_back();
    }
}

inline std::vector<Path> channel_occurrences(const Term& t, const std::string& a) {
    std::vector<Path> out;
    Path here;
    channel_occurrences_into(t, a, here, out);
    return out;
}

inline size_t count_channel_occurrences(const Term& t, const std::string& a) {
    return channel_occurrences(t, a).size();
}

// Binder names introduced strictly between `root` and the node at relative
// path `rel` (the binder of the node itself not included).
inline std::set<std::string> binders_on_path(const Term& root, const Path& rel) {
    std::set<std::string> out;
    Term cur = root;
    for (int i : rel) {
        if (cur.kind() == TermKind::Lam || cur.kind() == TermKind::ParCh) out.insert(cur.name());
        cur = cur.child(i);
    }
    return out;
}

struct SenderInfo {
    Path occurrence;  // relative to the left side: path of the App node
    Term message;
    std::vector<std::string> bound_vars;  // FV(message) bound on the path considered
    bool free_vars_ok = false;            // remaining FV(message) free in the left side
};

// Analyze the `a u` occurrence whose Var sits at var_rel inside `scope`
// (the term the path is relative to).  Returns nothing if the occurrence is
// not in application position.
inline std::optional<SenderInfo> analyze_sender(const Term& scope, const Path& var_rel,
                                                const std::string& a) {
    if (var_rel.empty() || var_rel.back() != 0) return std::nullopt;
    Path app_rel(var_rel.begin(), var_rel.end() - 1);
    Term app = subterm_at(scope, app_rel);
    if (app.kind() != TermKind::App) return std::nullopt;
    SenderInfo info;
    info.occurrence = app_rel;
    info.message = app.child(1);
    if (occurs_free(a, info.message)) return std::nullopt; // send endpoint may not occur in the message
    std::set<std::string> path_binders = binders_on_path(scope, app_rel);
    info.free_vars_ok = true;
    for (const std::string& y : free_vars(info.message))
        if (path_binders.count(y)) info.bound_vars.push_back(y);
    return info;
}

} // namespace detail

inline std::vector<Redex> find_redexes(const TypingContext& ctx, const Term& t,
                                       const TypecheckOptions& opts = {});

namespace detail {

// All rule instances rooted at the channel node `here`.  `lhs_normal` tells
// whether the left side is known normal (needed by the Cross guard); when
// unknown, it is computed on demand.
inline void channel_node_redexes(const TypingContext& ctx, const Term& root, const Path& here,
                                 const TypecheckOptions& opts, std::optional<bool> lhs_normal,
                                 std::vector<Redex>& out) {
    Term t = subterm_at(root, here);
    const std::string& a = t.name();
    const Term& lhs = t.child(0);
    const Term& rhs = t.child(1);

    size_t cc = 0;
    bool cc_known = false;
    auto complexity_positive = [&] {
        if (!cc_known) {
            cc = communication_complexity(ctx, root, here, opts);
            cc_known = true;
        }
        return cc > 0;
    };
    auto flavored = [&](const Term& par, RuleId chan_rule, RuleId plain_rule) {
        out.push_back({here, par.kind() == TermKind::ParCh ? chan_rule : plain_rule, {}, {}, "b"});
    };

    if (is_par(lhs) && complexity_positive())
        flavored(lhs, RuleId::PermParOverParLeft, RuleId::PermParOverParLeftPlain);
    if (is_par(rhs) && complexity_positive())
        flavored(rhs, RuleId::PermParOverParRight, RuleId::PermParOverParRightPlain);

    // Basic cross: one redex per sender occurrence `a u` in the left side
    // whose message is closed under the left side's binders.
    for (const Path& var_rel : channel_occurrences(lhs, a)) {
        auto info = analyze_sender(lhs, var_rel, a);
        if (!info || !info->bound_vars.empty()) continue;
        if (!complexity_positive()) break;
        Path abs = here;
        abs.push_back(0);
        abs.insert(abs.end(), info->occurrence.begin(), info->occurrence.end());
        out.push_back({here, RuleId::BasicCross, abs, {}, "b"});
    }

    // Cross: the left side must be a normal simple parallel term; the
    // candidate is the rightmost occurrence of `a` within a component, with
    // a nonempty sequence of component-bound message variables.
    TermClass lclass = classify(lhs);
    if (lclass == TermClass::SimplyTyped || lclass == TermClass::SimpleParallel) {
        Path lhs_path = here;
        lhs_path.push_back(0);
        struct Candidate {
            Path abs;
            std::vector<std::string> ys;
        };
        std::vector<Candidate> candidates;
        for (const auto& [comp_rel, comp] : spine_components(lhs)) {
            auto occs = channel_occurrences(comp, a);
            if (occs.empty()) continue;
            auto info = analyze_sender(comp, occs.back(), a);
            if (!info || info->bound_vars.empty()) continue;
            // Message variables not bound in the component must be free in
            // the whole left side (spine binders capture).
            std::set<std::string> spine_binders = binders_on_path(lhs, comp_rel);
            std::set<std::string> ybound(info->bound_vars.begin(), info->bound_vars.end());
            bool escapes = false;
            for (const std::string& y : free_vars(info->message))
                if (!ybound.count(y) && spine_binders.count(y)) { escapes = true; break; }
            if (escapes || !complexity_positive()) continue;
            Path abs = lhs_path;
            abs.insert(abs.end(), comp_rel.begin(), comp_rel.end());
            abs.insert(abs.end(), info->occurrence.begin(), info->occurrence.end());
            candidates.push_back({abs, info->bound_vars});
        }
        if (!candidates.empty()) {
            if (!lhs_normal)
                lhs_normal = find_redexes(context_at(ctx, root, lhs_path), lhs, opts).empty();
            if (*lhs_normal)
                for (auto& c : candidates)
                    out.push_back({here, RuleId::Cross, std::move(c.abs), std::move(c.ys), "b"});
        }
    }

    if (!occurs_free(a, lhs)) out.push_back({here, RuleId::DropLeft, {}, {}, "b"});
    if (!occurs_free(a, rhs)) out.push_back({here, RuleId::DropRight, {}, {}, "b"});
}

inline void collect_redexes(const TypingContext& ctx, const Term& root, const Term& t, Path& here,
                            const TypecheckOptions& opts, std::vector<Redex>& out) {
    size_t before_children = out.size();
    Path lhs_path;
    if (t.kind() == TermKind::ParCh) {
        lhs_path = here;
        lhs_path.push_back(0);
    }
    size_t lhs_redexes = 0;
    for (int i = 0; i < t.arity(); ++i) {
        here.push_back(i);
        size_t mark = out.size();
        collect_redexes(ctx, root, t.child(i), here, opts, out);
        if (t.kind() == TermKind::ParCh && i == 0) lhs_redexes = out.size() - mark;
        here.pop_back();
    }
    (void)before_children;

    auto emit = [&](RuleId r) { out.push_back({here, r, {}, {}, "b"}); };
    auto flavored = [&](const Term& par, RuleId chan_rule, RuleId plain_rule) {
        emit(par.kind() == TermKind::ParCh ? chan_rule : plain_rule);
    };

    switch (t.kind()) {
    case TermKind::App:
        if (t.child(0).kind() == TermKind::Lam) emit(RuleId::Beta);
        if (is_par(t.child(1))) flavored(t.child(1), RuleId::PermAppLeft, RuleId::PermAppLeftPlain);
        if (is_par(t.child(0))) flavored(t.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::Proj:
        if (t.child(0).kind() == TermKind::Pair) emit(RuleId::ProjPair);
        if (is_par(t.child(0))) flavored(t.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::Efq:
        if (is_par(t.child(0))) flavored(t.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::If:
        if (t.child(0).kind() == TermKind::BoolTrue) emit(RuleId::IfTrue);
        if (t.child(0).kind() == TermKind::BoolFalse) emit(RuleId::IfFalse);
        break;
    case TermKind::Lam:
        if (is_par(t.child(0))) flavored(t.child(0), RuleId::PermLam, RuleId::PermLamPlain);
        break;
    case TermKind::Pair:
        if (is_par(t.child(0))) flavored(t.child(0), RuleId::PermPairLeft, RuleId::PermPairLeftPlain);
        if (is_par(t.child(1))) flavored(t.child(1), RuleId::PermPairRight, RuleId::PermPairRightPlain);
        break;
    case TermKind::ParCh:
        channel_node_redexes(ctx, root, here, opts, lhs_redexes == 0, out);
        break;
    default:
        break;
    }
}

} // namespace detail

inline std::vector<Redex> find_redexes(const TypingContext& ctx, const Term& t,
                                       const TypecheckOptions& opts) {
    typecheck(ctx, t, opts); // precondition; throws with rule and path
    std::vector<Redex> out;
    Path here;
    detail::collect_redexes(ctx, t, t, here, opts, out);
    return out;
}

// Rule instances rooted at `p` only.  `assume_sides_normal` lets callers
// that just normalized the subtrees skip the Cross rule's normality rescan.
inline std::vector<Redex> redexes_at(const TypingContext& ctx, const Term& t, const Path& p,
                                     const TypecheckOptions& opts = {},
                                     std::optional<bool> assume_sides_normal = std::nullopt) {
    Term node = subterm_at(t, p);
    std::vector<Redex> out;
    if (node.kind() == TermKind::ParCh) {
        detail::channel_node_redexes(ctx, t, p, opts, assume_sides_normal, out);
        return out;
    }
    auto emit = [&](RuleId r) { out.push_back({p, r, {}, {}, "b"}); };
    auto flavored = [&](const Term& par, RuleId chan_rule, RuleId plain_rule) {
        emit(par.kind() == TermKind::ParCh ? chan_rule : plain_rule);
    };
    switch (node.kind()) {
    case TermKind::App:
        if (node.child(0).kind() == TermKind::Lam) emit(RuleId::Beta);
        if (is_par(node.child(1))) flavored(node.child(1), RuleId::PermAppLeft, RuleId::PermAppLeftPlain);
        if (is_par(node.child(0))) flavored(node.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::Proj:
        if (node.child(0).kind() == TermKind::Pair) emit(RuleId::ProjPair);
        if (is_par(node.child(0))) flavored(node.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::Efq:
        if (is_par(node.child(0))) flavored(node.child(0), RuleId::PermStack, RuleId::PermStackPlain);
        break;
    case TermKind::If:
        if (node.child(0).kind() == TermKind::BoolTrue) emit(RuleId::IfTrue);
        if (node.child(0).kind() == TermKind::BoolFalse) emit(RuleId::IfFalse);
        break;
    case TermKind::Lam:
        if (is_par(node.child(0))) flavored(node.child(0), RuleId::PermLam, RuleId::PermLamPlain);
        break;
    case TermKind::Pair:
        if (is_par(node.child(0))) flavored(node.child(0), RuleId::PermPairLeft, RuleId::PermPairLeftPlain);
        if (is_par(node.child(1))) flavored(node.child(1), RuleId::PermPairRight, RuleId::PermPairRightPlain);
        break;
    default:
        break;
    }
    return out;
}

// --- applying a rule --------------------------------------------------------

namespace detail {

// Rename the bound channel of `par` when `clash` holds for its name, so
// that material with free occurrences of that name can move into its scope.
inline Term rename_channel_if(const Term& par, bool clash, const std::set<std::string>& avoid_extra) {
    if (par.kind() != TermKind::ParCh || !clash) return par;
    std::set<std::string> avoid = all_names(par);
    avoid.insert(avoid_extra.begin(), avoid_extra.end());
    std::string fresh = fresh_name(avoid, par.name());
    return Term::par_ch(fresh, par.ann(),
                        substitute(par.child(0), par.name(), Term::var(fresh)),
                        substitute(par.child(1), par.name(), Term::var(fresh)));
}

inline Term rename_channel_for(const Term& par, const Term& moving) {
    bool clash = par.kind() == TermKind::ParCh && occurs_free(par.name(), moving);
    return rename_channel_if(par, clash, free_var_set(moving));
}

inline Term apply_at(const Term& node, const Redex& r, const TypingContext& ctx, const Term& whole);

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

inline Term apply_perm(const Term& node, const Redex& r) {
    switch (r.rule) {
    case RuleId::PermAppLeft:
    case RuleId::PermAppLeftPlain: {
        require(node.kind() == TermKind::App && is_par(node.child(1)), "stale PermAppLeft redex");
        Term w = node.child(0);
        Term par = rename_channel_for(node.child(1), w);
        return with_children(par, {Term::app(w, par.child(0)), Term::app(w, par.child(1))});
    }
    case RuleId::PermStack:
    case RuleId::PermStackPlain: {
        require(node.arity() >= 1 && is_par(node.child(0)), "stale PermStack redex");
        if (node.kind() == TermKind::App) {
            Term x = node.child(1);
            Term par = rename_channel_for(node.child(0), x);
            return with_children(par, {Term::app(par.child(0), x), Term::app(par.child(1), x)});
        }
        if (node.kind() == TermKind::Proj) {
            Term par = node.child(0);
            return with_children(par, {Term::proj(par.child(0), node.idx()),
                                       Term::proj(par.child(1), node.idx())});
        }
        require(node.kind() == TermKind::Efq, "stale PermStack redex");
        Term par = node.child(0);
        return with_children(par, {Term::efq(node.ann(), par.child(0)),
                                   Term::efq(node.ann(), par.child(1))});
    }
    case RuleId::PermLam:
    case RuleId::PermLamPlain: {
        require(node.kind() == TermKind::Lam && is_par(node.child(0)), "stale PermLam redex");
        Term par = node.child(0);
        par = rename_channel_if(par, par.kind() == TermKind::ParCh && par.name() == node.name(), {node.name()});
        return with_children(par, {Term::lam(node.name(), node.ann(), par.child(0)),
                                   Term::lam(node.name(), node.ann(), par.child(1))});
    }
    case RuleId::PermPairLeft:
    case RuleId::PermPairLeftPlain: {
        require(node.kind() == TermKind::Pair && is_par(node.child(0)), "stale PermPairLeft redex");
        Term w = node.child(1);
        Term par = rename_channel_for(node.child(0), w);
        return with_children(par, {Term::pair(par.child(0), w), Term::pair(par.child(1), w)});
    }
    case RuleId::PermPairRight:
    case RuleId::PermPairRightPlain: {
        require(node.kind() == TermKind::Pair && is_par(node.child(1)), "stale PermPairRight redex");
        Term w = node.child(0);
        Term par = rename_channel_for(node.child(1), w);
        return with_children(par, {Term::pair(w, par.child(0)), Term::pair(w, par.child(1))});
    }
    case RuleId::PermParOverParLeft:
    case RuleId::PermParOverParLeftPlain: {
        require(node.kind() == TermKind::ParCh && is_par(node.child(0)), "stale PermParOverPar redex");
        Term w = node.child(1);
        Term inner = node.child(0);
        bool clash = inner.kind() == TermKind::ParCh &&
                     (occurs_free(inner.name(), w) || inner.name() == node.name());
        std::set<std::string> avoid = free_var_set(w);
        avoid.insert(node.name());
        inner = rename_channel_if(inner, clash, avoid);
        return with_children(inner, {Term::par_ch(node.name(), node.ann(), inner.child(0), w),
                                     Term::par_ch(node.name(), node.ann(), inner.child(1), w)});
    }
    case RuleId::PermParOverParRight:
    case RuleId::PermParOverParRightPlain: {
        require(node.kind() == TermKind::ParCh && is_par(node.child(1)), "stale PermParOverPar redex");
        Term w = node.child(0);
        Term inner = node.child(1);
        bool clash = inner.kind() == TermKind::ParCh &&
                     (occurs_free(inner.name(), w) || inner.name() == node.name());
        std::set<std::string> avoid = free_var_set(w);
        avoid.insert(node.name());
        inner = rename_channel_if(inner, clash, avoid);
        return with_children(inner, {Term::par_ch(node.name(), node.ann(), w, inner.child(0)),
                                     Term::par_ch(node.name(), node.ann(), w, inner.child(1))});
    }
    default:
        throw PreconditionError("not a permutation rule");
    }
}

inline Term apply_at(const Term& node, const Redex& r, const TypingContext& ctx, const Term& whole) {
    switch (r.rule) {
    case RuleId::Beta: {
        require(node.kind() == TermKind::App && node.child(0).kind() == TermKind::Lam,
                "stale Beta redex");
        const Term& lam = node.child(0);
        return substitute(lam.child(0), lam.name(), node.child(1));
    }
    case RuleId::ProjPair:
        require(node.kind() == TermKind::Proj && node.child(0).kind() == TermKind::Pair,
                "stale ProjPair redex");
        return node.child(0).child(node.idx());
    case RuleId::IfTrue:
        require(node.kind() == TermKind::If && node.child(0).kind() == TermKind::BoolTrue,
                "stale IfTrue redex");
        return node.child(1);
    case RuleId::IfFalse:
        require(node.kind() == TermKind::If && node.child(0).kind() == TermKind::BoolFalse,
                "stale IfFalse redex");
        return node.child(2);
    case RuleId::DropLeft:
        require(node.kind() == TermKind::ParCh && !occurs_free(node.name(), node.child(0)),
                "stale DropLeft redex");
        return node.child(0);
    case RuleId::DropRight:
        require(node.kind() == TermKind::ParCh && !occurs_free(node.name(), node.child(1)),
                "stale DropRight redex");
        return node.child(1);
    case RuleId::BasicCross: {
        require(node.kind() == TermKind::ParCh, "stale BasicCross redex");
        require(r.sender.size() > r.path.size() && r.sender[r.path.size()] == 0,
                "BasicCross sender must sit in the left side");
        Path rel(r.sender.begin() + static_cast<long>(r.path.size() + 1), r.sender.end());
        const Term& lhs = node.child(0);
        Term app = subterm_at(lhs, rel);
        require(app.kind() == TermKind::App && app.child(0).kind() == TermKind::Var &&
                    app.child(0).name() == node.name(),
                "BasicCross sender is not an application of the channel");
        auto info = analyze_sender(lhs, [&] { Path v = rel; v.push_back(0); return v; }(), node.name());
        require(info.has_value() && info->bound_vars.empty(),
                "BasicCross message captures bound variables");
        return channel_substitute(node.child(1), node.name(), app.child(1));
    }
    case RuleId::Cross: {
        require(node.kind() == TermKind::ParCh, "stale Cross redex");
        require(r.sender.size() > r.path.size() && r.sender[r.path.size()] == 0,
                "Cross sender must sit in the left side");
        const std::string& a = node.name();
        const Term& lhs = node.child(0);
        const Term& rhs = node.child(1);
        Path rel(r.sender.begin() + static_cast<long>(r.path.size() + 1), r.sender.end());

        // Locate the sender's component on the spine.
        Path comp_rel, in_comp;
        {
            Term cur = lhs;
            size_t k = 0;
            while (is_par(cur) && k < rel.size()) {
                comp_rel.push_back(rel[k]);
                cur = cur.child(rel[k]);
                ++k;
            }
            in_comp.assign(rel.begin() + static_cast<long>(k), rel.end());
        }
        Term comp = subterm_at(lhs, comp_rel);
        Term app = subterm_at(comp, in_comp);
        require(app.kind() == TermKind::App && app.child(0).kind() == TermKind::Var &&
                    app.child(0).name() == a,
                "Cross sender is not an application of the channel");
        auto occs = channel_occurrences(comp, a);
        Path var_rel = in_comp;
        var_rel.push_back(0);
        require(!occs.empty() && occs.back() == var_rel,
                "Cross sender must be the rightmost channel occurrence of its component");
        auto info = analyze_sender(comp, var_rel, a);
        require(info.has_value() && !info->bound_vars.empty(), "Cross needs captured message variables");
        require(info->bound_vars == r.ys, "Cross redex variable list is stale");

        // Types of the captured variables, from the binders in scope at the
        // sender; kind of the new channel is their right-nested conjunction.
        TypingContext env = context_at(ctx, whole, r.sender);
        std::vector<Formula> ytypes;
        for (const std::string& y : r.ys) {
            auto f = env.lookup(y);
            require(f.has_value(), "Cross variable lost its binder");
            ytypes.push_back(*f);
        }
        Formula kind = ytypes.back();
        for (size_t i = ytypes.size() - 1; i-- > 0;) kind = Formula::conj(ytypes[i], kind);

        std::set<std::string> avoid = all_names(whole);
        for (const auto& [n, f] : ctx.entries()) { (void)f; avoid.insert(n); }
        std::string b = fresh_name(avoid, r.fresh_hint);

        // Component keeps the old channel, the send becomes b <ys> (grafted
        // literally: the tuple is meant to be captured by the component's
        // binders).  The other components are consumed by the communication.
        std::vector<Term> yvars;
        for (const std::string& y : r.ys) yvars.push_back(Term::var(y));
        Term new_send = Term::app(Term::var(b), tuple_term(yvars));
        Term comp2 = replace_at(comp, in_comp, new_send);

        Term delivered = multiple_substitute(info->message, r.ys, b);
        Term rhs2 = channel_substitute(rhs, a, delivered);
        return Term::par_ch(b, kind, Term::par_ch(a, node.ann(), comp2, rhs), rhs2);
    }
    default:
        return apply_perm(node, r);
    }
}

} // namespace detail

// Apply one rule instance.  The redex must be current for t (same shape and
// guards at r.path); a stale redex raises a precondition error.
inline Term step(const TypingContext& ctx, const Term& t, const Redex& r,
                 const TypecheckOptions& opts = {}) {
    Term node = subterm_at(t, r.path);
    if (r.rule == RuleId::BasicCross || r.rule == RuleId::Cross ||
        r.rule == RuleId::PermParOverParLeft || r.rule == RuleId::PermParOverParLeftPlain ||
        r.rule == RuleId::PermParOverParRight || r.rule == RuleId::PermParOverParRightPlain) {
        detail::require(communication_complexity(ctx, t, r.path, opts) > 0,
                        std::string(rule_name(r.rule)) + " requires positive communication complexity");
    }
    Term rewritten = detail::apply_at(node, r, ctx, t);
    return replace_at(t, r.path, rewritten);
}

// Convenience wrappers mirroring the rule families.
inline Term basic_cross(const TypingContext& ctx, const Term& t, const Redex& r,
                        const TypecheckOptions& opts = {}) {
    if (r.rule != RuleId::BasicCross) throw PreconditionError("redex is not a BasicCross");
    return step(ctx, t, r, opts);
}

inline Term cross(const TypingContext& ctx, const Term& t, const Redex& r,
                  const TypecheckOptions& opts = {}) {
    if (r.rule != RuleId::Cross) throw PreconditionError("redex is not a Cross");
    return step(ctx, t, r, opts);
}

inline bool is_normal(const TypingContext& ctx, const Term& t, const TypecheckOptions& opts = {}) {
    return find_redexes(ctx, t, opts).empty();
}

} // namespace lamcl
