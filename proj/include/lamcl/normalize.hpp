#pragma once

// The normalization pipeline.
//
//   to_parallel_form      permutations only, until every parallel operator
//                         sits on the outer spine
//   a_complexity          the (c, d, l, o) tuple of a channel node relative
//                         to a safe-formula set
//   side_reduce           one step of the side strategy: pick the smallest
//                         channel node of maximal complexity and act on its
//                         tuple (permute inward / normalize sides / cross /
//                         drop)
//   normalize             the master algorithm: convert to parallel form,
//                         recurse on non-redex spines, and on redexes drive
//                         the side strategy on the smallest subterm of
//                         maximal communication complexity until that
//                         complexity strictly drops
//
// The master measure (|A|, r, k, s) is recorded at every recursion and, by
// default, asserted to decrease lexicographically; a violation aborts with
// an invariant error rather than looping.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/print.hpp"
#include "lamcl/reduction.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing.hpp"

namespace lamcl {

struct AComplexity {
    size_t kind_cost = 0;       // c: symbols of kind prime factors outside the safe set
    size_t par_count = 0;       // d: parallel operators inside the two sides
    size_t reduction_len = 0;   // l: sum of maximal intuitionistic reduction lengths (d = 0 only)
    size_t occurrences = 0;     // o: occurrences of the channel in the sides
};

// Lexicographic; l only participates when both sides have d = 0, which is
// the only situation the strategy consults it in.
inline int a_complexity_cmp(const AComplexity& x, const AComplexity& y) {
    if (x.kind_cost != y.kind_cost) return x.kind_cost < y.kind_cost ? -1 : 1;
    if (x.par_count != y.par_count) return x.par_count < y.par_count ? -1 : 1;
    if (x.par_count == 0 && x.reduction_len != y.reduction_len)
        return x.reduction_len < y.reduction_len ? -1 : 1;
    if (x.occurrences != y.occurrences) return x.occurrences < y.occurrences ? -1 : 1;
    return 0;
}

struct MasterMeasure {
    size_t safe_set_size = 0;  // |A|
    size_t max_complexity = 0; // r
    size_t max_count = 0;      // k
    size_t term_size = 0;      // s
};

inline int master_measure_cmp(const MasterMeasure& x, const MasterMeasure& y) {
    if (x.safe_set_size != y.safe_set_size) return x.safe_set_size < y.safe_set_size ? -1 : 1;
    if (x.max_complexity != y.max_complexity) return x.max_complexity < y.max_complexity ? -1 : 1;
    if (x.max_count != y.max_count) return x.max_count < y.max_count ? -1 : 1;
    if (x.term_size != y.term_size) return x.term_size < y.term_size ? -1 : 1;
    return 0;
}

struct TraceStep {
    size_t index = 0;
    RuleId rule = RuleId::Beta;
    Path path;
    Path sender;
    std::vector<std::string> ys;
    std::string fresh;
    std::optional<MasterMeasure> measure;
    std::optional<AComplexity> complexity;
    Term after;
};

struct NormalizeOptions {
    uint64_t max_steps = 1'000'000;
    uint64_t len_budget = 100'000;
    // Total node visits across the engine's walks.  The permutations
    // duplicate receivers, so terms (and with them the cost of a single
    // step) can grow exponentially; this converts such blowups into a
    // resource error instead of an unbounded stall.
    uint64_t work_budget = 200'000'000;
    bool check_measure = true;
    TypecheckOptions ty;
};

struct NormalizeResult {
    Term term;
    std::vector<TraceStep> steps;
    std::vector<MasterMeasure> measures;
};

// --- longest intuitionistic reduction --------------------------------------

namespace detail {

inline void collect_intuitionistic(const Term& t, Path& here, std::vector<Redex>& out) {
    for (int i = 0; i < t.arity(); ++i) {
        here.push_back(i);
        collect_intuitionistic(t.child(i), here, out);
        here.pop_back();
    }
    if (t.kind() == TermKind::App && t.child(0).kind() == TermKind::Lam)
        out.push_back({here, RuleId::Beta, {}, {}, ""});
    if (t.kind() == TermKind::Proj && t.child(0).kind() == TermKind::Pair)
        out.push_back({here, RuleId::ProjPair, {}, {}, ""});
    if (t.kind() == TermKind::If && t.child(0).kind() == TermKind::BoolTrue)
        out.push_back({here, RuleId::IfTrue, {}, {}, ""});
    if (t.kind() == TermKind::If && t.child(0).kind() == TermKind::BoolFalse)
        out.push_back({here, RuleId::IfFalse, {}, {}, ""});
}

inline std::vector<Redex> intuitionistic_redexes(const Term& t) {
    std::vector<Redex> out;
    Path here;
    collect_intuitionistic(t, here, out);
    return out;
}

// The intuitionistic rules never consult types, so they can be applied
// without a context.
inline Term apply_intuitionistic(const Term& t, const Redex& r) {
    Term node = subterm_at(t, r.path);
    Term rewritten;
    switch (r.rule) {
    case RuleId::Beta:
        rewritten = substitute(node.child(0).child(0), node.child(0).name(), node.child(1));
        break;
    case RuleId::ProjPair: rewritten = node.child(0).child(node.idx()); break;
    case RuleId::IfTrue: rewritten = node.child(1); break;
    case RuleId::IfFalse: rewritten = node.child(2); break;
    default: throw PreconditionError("not an intuitionistic rule");
    }
    return replace_at(t, r.path, rewritten);
}

struct LenOracle {
    uint64_t budget;
    uint64_t used = 0;
    std::map<std::string, size_t> memo;

    size_t longest(const Term& t) {
        std::string key = alpha_key(t);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        if (++used > budget)
            throw BudgetError("intuitionistic reduction-length search exceeded " +
                              std::to_string(budget) + " nodes");
        size_t best = 0;
        for (const Redex& r : intuitionistic_redexes(t)) {
            size_t len = 1 + longest(apply_intuitionistic(t, r));
            if (len > best) best = len;
        }
        memo[key] = best;
        return best;
    }
};

} // namespace detail

// Length of the longest reduction sequence using only the intuitionistic
// rules.  Exhaustive search over the reduction graph, memoized up to alpha;
// aborts with a budget error rather than guessing.
inline size_t longest_intuitionistic_len(const Term& t, uint64_t budget = 100'000,
                                         std::map<std::string, size_t>* memo = nullptr) {
    if (classify(t) != TermClass::SimplyTyped)
        throw PreconditionError("reduction length is defined for simply typed terms only");
    detail::LenOracle oracle{budget, 0, memo ? *memo : std::map<std::string, size_t>{}};
    size_t n = oracle.longest(t);
    if (memo) *memo = std::move(oracle.memo);
    return n;
}

// --- A-complexity ------------------------------------------------------------

namespace detail {

inline size_t count_pars(const Term& t) {
    size_t n = is_par(t) ? 1 : 0;
    for (int i = 0; i < t.arity(); ++i) n += count_pars(t.child(i));
    return n;
}

} // namespace detail

// Complexity c of a channel node's kind against a safe-formula set: total
// size of the kind's prime factors that are not subformulas of any member.
inline size_t kind_cost(const Formula& kind, const FormulaSet& safe) {
    size_t total = 0;
    for (const Formula& pf : prime_factors(kind))
        if (!subformula_of_some(pf, safe)) total += formula_size(pf);
    return total;
}

inline AComplexity a_complexity(const TypingContext& root_ctx, const Term& t, const Path& p,
                                const FormulaSet& safe, uint64_t len_budget = 100'000,
                                std::map<std::string, size_t>* len_memo = nullptr) {
    (void)root_ctx;
    Term node = subterm_at(t, p);
    if (node.kind() != TermKind::ParCh)
        throw PathError("path " + path_to_string(p) + " does not address a channel binder");
    AComplexity out;
    out.kind_cost = kind_cost(node.ann(), safe);
    out.par_count = detail::count_pars(node.child(0)) + detail::count_pars(node.child(1));
    out.occurrences = detail::count_channel_occurrences(node.child(0), node.name()) +
                      detail::count_channel_occurrences(node.child(1), node.name());
    if (out.par_count == 0)
        out.reduction_len = longest_intuitionistic_len(node.child(0), len_budget, len_memo) +
                            longest_intuitionistic_len(node.child(1), len_budget, len_memo);
    return out;
}

// --- the engine --------------------------------------------------------------

namespace detail {

struct Normalizer {
    explicit Normalizer(NormalizeOptions o) : opts(std::move(o)) {}

    NormalizeOptions opts;
    std::vector<TraceStep> steps;
    std::vector<MasterMeasure> measures;
    std::map<std::string, size_t> len_memo;
    std::optional<MasterMeasure> current_measure;

    // Enclosing terms of the active side recursions, so every trace step
    // carries an absolute path and the whole term after the rewrite.
    struct Frame {
        Term parent;
        int child;
    };
    std::vector<Frame> stack;

    // Permutations duplicate subterms by sharing, so size, operator and
    // occurrence counts are cached per node.  Cached Terms anchor the nodes:
    // a live pointer is never reused, so hits stay valid.
    struct NodeStats {
        Term anchor;
        size_t size = 0;
        size_t pars = 0;
    };
    std::unordered_map<const void*, NodeStats> stats_cache;
    std::map<std::pair<const void*, std::string>, std::pair<Term, size_t>> occ_cache;
    uint64_t work_used = 0;

    void charge(uint64_t visits) {
        work_used += visits;
        if (work_used > opts.work_budget)
            throw BudgetError("work budget of " + std::to_string(opts.work_budget) +
                              " node visits exhausted");
    }

    const NodeStats& stats(const Term& t) {
        auto it = stats_cache.find(t.id());
        if (it != stats_cache.end()) return it->second;
        NodeStats s{t, 1, is_par(t) ? size_t{1} : size_t{0}};
        for (int i = 0; i < t.arity(); ++i) {
            const NodeStats& c = stats(t.child(i));
            s.size += c.size;
            s.pars += c.pars;
        }
        return stats_cache.emplace(t.id(), std::move(s)).first->second;
    }

    // Occurrences of channel `name` in t bound by an enclosing binder
    // (inner rebindings shadow).
    size_t occurrences(const Term& t, const std::string& name) {
        if (t.kind() == TermKind::Var) return t.name() == name ? 1 : 0;
        if ((t.kind() == TermKind::Lam || t.kind() == TermKind::ParCh) && t.name() == name)
            return 0;
        auto key = std::make_pair(t.id(), name);
        auto it = occ_cache.find(key);
        if (it != occ_cache.end()) return it->second.second;
        size_t n = 0;
        for (int i = 0; i < t.arity(); ++i) n += occurrences(t.child(i), name);
        occ_cache.emplace(std::move(key), std::make_pair(t, n));
        return n;
    }

    Path absolute(const Path& p) const {
        Path out;
        for (const Frame& f : stack) out.push_back(f.child);
        out.insert(out.end(), p.begin(), p.end());
        return out;
    }

    Term whole_after(Term sub) const {
        for (size_t i = stack.size(); i-- > 0;) {
            std::vector<Term> kids;
            for (int k = 0; k < stack[i].parent.arity(); ++k)
                kids.push_back(k == stack[i].child ? sub : stack[i].parent.child(k));
            sub = with_children(stack[i].parent, std::move(kids));
        }
        return sub;
    }

    void emit(const Redex& r, const Term& after, std::optional<AComplexity> cx = std::nullopt) {
        if (steps.size() >= opts.max_steps)
            throw BudgetError("step budget of " + std::to_string(opts.max_steps) + " exhausted");
        steps.push_back({steps.size(), r.rule, absolute(r.path), absolute_or_empty(r.sender),
                         r.ys, r.fresh_hint, current_measure, std::move(cx), whole_after(after)});
    }

    Path absolute_or_empty(const Path& p) const { return p.empty() ? p : absolute(p); }

    Term apply(const TypingContext& ctx, const Term& t, const Redex& r,
               std::optional<AComplexity> cx = std::nullopt) {
        Term t2 = step(ctx, t, r, opts.ty);
        emit(r, t2, std::move(cx));
        return t2;
    }

    // Context restricted to the variables actually free in t.
    TypingContext fv_context(const TypingContext& ctx, const Term& t) const {
        TypingContext out;
        for (const std::string& x : free_vars(t)) {
            auto f = ctx.lookup(x);
            if (!f) throw TypeError({}, "var", "unbound variable '" + x + "'");
            out.push(x, *f);
        }
        return out;
    }

    std::vector<Path> channel_nodes(const Term& t, const Path& under) {
        Term sub = subterm_at(t, under);
        charge(stats(sub).size);
        std::vector<Path> out;
        Path here = under;
        collect_channel_nodes(sub, here, out);
        return out;
    }

    static void collect_channel_nodes(const Term& t, Path& here, std::vector<Path>& out) {
        if (t.kind() == TermKind::ParCh) out.push_back(here);
        for (int i = 0; i < t.arity(); ++i) {
            here.push_back(i);
            collect_channel_nodes(t.child(i), here, out);
            here.pop_back();
        }
    }

    MasterMeasure measure_of(const TypingContext& ctx, const Term& t, const FormulaSet& safe) {
        MasterMeasure m;
        m.safe_set_size = safe.size();
        m.term_size = stats(t).size;
        for (const Path& p : channel_nodes(t, {})) {
            size_t c = kind_cost(subterm_at(t, p).ann(), safe);
            if (c > m.max_complexity) { m.max_complexity = c; m.max_count = 1; }
            else if (c == m.max_complexity) ++m.max_count;
        }
        (void)ctx;
        return m;
    }

    // ---- parallel-form conversion (permutations only) ----

    // Innermost-leftmost position where a non-parallel node has a parallel
    // child, as the redex lifting that child.
    static std::optional<Redex> find_lift(const Term& t, Path& here) {
        for (int i = 0; i < t.arity(); ++i) {
            here.push_back(i);
            auto r = find_lift(t.child(i), here);
            here.pop_back();
            if (r) return r;
        }
        auto lift = [&](int i, RuleId chan_rule, RuleId plain_rule) -> std::optional<Redex> {
            if (!is_par(t.child(i))) return std::nullopt;
            RuleId rule = t.child(i).kind() == TermKind::ParCh ? chan_rule : plain_rule;
            return Redex{here, rule, {}, {}, ""};
        };
        switch (t.kind()) {
        case TermKind::App:
            if (auto r = lift(0, RuleId::PermStack, RuleId::PermStackPlain)) return r;
            return lift(1, RuleId::PermAppLeft, RuleId::PermAppLeftPlain);
        case TermKind::Proj:
        case TermKind::Efq:
            return lift(0, RuleId::PermStack, RuleId::PermStackPlain);
        case TermKind::Lam:
            return lift(0, RuleId::PermLam, RuleId::PermLamPlain);
        case TermKind::Pair:
            if (auto r = lift(0, RuleId::PermPairLeft, RuleId::PermPairLeftPlain)) return r;
            return lift(1, RuleId::PermPairRight, RuleId::PermPairRightPlain);
        case TermKind::If:
            for (int i = 0; i < 3; ++i)
                if (contains_par(t.child(i)))
                    throw PreconditionError(
                        "parallel operator under 'if' admits no parallel form");
            return std::nullopt;
        default:
            return std::nullopt;
        }
    }

    Term to_parallel_form(const TypingContext& ctx, Term t) {
        while (!is_parallel_form(t)) {
            charge(stats(t).size);
            Path here;
            auto r = find_lift(t, here);
            if (!r) throw InvariantError("no permutation applies but term is not in parallel form");
            t = apply(ctx, t, *r);
        }
        return t;
    }

    // ---- intuitionistic normalization of the subtree at `at` ----

    Term normalize_intuitionistic(const TypingContext& ctx, Term t, const Path& at) {
        for (;;) {
            charge(stats(subterm_at(t, at)).size);
            auto rs = intuitionistic_redexes(subterm_at(t, at));
            if (rs.empty()) return t;
            Redex r = rs.front();
            Path abs = at;
            abs.insert(abs.end(), r.path.begin(), r.path.end());
            r.path = abs;
            t = apply(ctx, t, r);
        }
    }

    // ---- the side strategy ----

    struct Selected {
        Path path;
        AComplexity cx;
    };

    AComplexity node_complexity(const Term& node, const FormulaSet& safe) {
        AComplexity cx;
        cx.kind_cost = kind_cost(node.ann(), safe);
        cx.par_count = stats(node.child(0)).pars + stats(node.child(1)).pars;
        cx.occurrences =
            occurrences(node.child(0), node.name()) + occurrences(node.child(1), node.name());
        if (cx.par_count == 0)
            cx.reduction_len =
                longest_intuitionistic_len(node.child(0), opts.len_budget, &len_memo) +
                longest_intuitionistic_len(node.child(1), opts.len_budget, &len_memo);
        return cx;
    }

    // Smallest channel node of maximal A-complexity under `under`.  The
    // tuple's head is the kind cost, so only nodes maximal in it need the
    // rest of the tuple (the reduction-length search is the dear part).
    std::optional<Selected> select(const TypingContext& ctx, const Term& t, const Path& under,
                                   const FormulaSet& safe) {
        (void)ctx;
        std::vector<Path> nodes = channel_nodes(t, under);
        if (nodes.empty()) return std::nullopt;
        size_t cmax = 0;
        std::vector<std::pair<Path, Term>> top;
        for (const Path& p : nodes) {
            Term node = subterm_at(t, p);
            size_t c = kind_cost(node.ann(), safe);
            if (top.empty() || c > cmax) {
                cmax = c;
                top.clear();
            }
            if (c == cmax) top.emplace_back(p, node);
        }
        std::optional<Selected> best;
        size_t best_size = 0;
        for (const auto& [p, node] : top) {
            AComplexity cx = node_complexity(node, safe);
            size_t sz = stats(node).size;
            if (!best) { best = {p, cx}; best_size = sz; continue; }
            int c = a_complexity_cmp(cx, best->cx);
            if (c > 0 || (c == 0 && (sz < best_size || (sz == best_size && p < best->path)))) {
                best = {p, cx};
                best_size = sz;
            }
        }
        return best;
    }

    // First cross-family redex rooted at `at`, in rule order.
    std::optional<Redex> cross_family_at(const TypingContext& ctx, const Term& t, const Path& at,
                                         std::optional<bool> sides_normal = std::nullopt) {
        for (const Redex& r : redexes_at(ctx, t, at, opts.ty, sides_normal)) {
            if (r.rule == RuleId::BasicCross || r.rule == RuleId::Cross ||
                r.rule == RuleId::DropLeft || r.rule == RuleId::DropRight)
                return r;
        }
        return std::nullopt;
    }

    // First enabled drop under `under`, in the leftmost-innermost order of
    // find_redexes; drops need no typing.
    std::optional<Redex> find_drop(const Term& t, Path& here) {
        for (int i = 0; i < t.arity(); ++i) {
            here.push_back(i);
            auto r = find_drop(t.child(i), here);
            here.pop_back();
            if (r) return r;
        }
        if (t.kind() == TermKind::ParCh) {
            if (occurrences(t.child(0), t.name()) == 0)
                return Redex{here, RuleId::DropLeft, {}, {}, ""};
            if (occurrences(t.child(1), t.name()) == 0)
                return Redex{here, RuleId::DropRight, {}, {}, ""};
        }
        return std::nullopt;
    }

    Term drop_enabled_everywhere(const TypingContext& ctx, Term t, const Path& under) {
        for (;;) {
            charge(stats(subterm_at(t, under)).size);
            Path here = under;
            auto r = find_drop(subterm_at(t, under), here);
            if (!r) return t;
            t = apply(ctx, t, *r);
        }
    }

    // One side-strategy step on the node selected under `under`.
    Term side_step(const TypingContext& ctx, Term t, const Path& under, const FormulaSet& safe) {
        charge(stats(subterm_at(t, under)).size);
        auto sel = select(ctx, t, under, safe);
        if (!sel) throw PreconditionError("no channel node to reduce");
        const Path& p = sel->path;
        const AComplexity& cx = sel->cx;
        Term node = subterm_at(t, p);

        if (cx.par_count > 0) {
            RuleId rule;
            if (is_par(node.child(0)))
                rule = node.child(0).kind() == TermKind::ParCh ? RuleId::PermParOverParLeft
                                                               : RuleId::PermParOverParLeftPlain;
            else if (is_par(node.child(1)))
                rule = node.child(1).kind() == TermKind::ParCh ? RuleId::PermParOverParRight
                                                               : RuleId::PermParOverParRightPlain;
            else
                throw InvariantError("selected node has nested parallelism but no parallel side");
            return apply(ctx, t, {p, rule, {}, {}, ""}, cx);
        }
        if (cx.reduction_len > 0) {
            Path l = p; l.push_back(0);
            Path r = p; r.push_back(1);
            t = normalize_intuitionistic(ctx, t, l);
            t = normalize_intuitionistic(ctx, t, r);
            return t;
        }
        // d = l = 0: the sides are normal simply typed terms by the tuple.
        auto redex = cross_family_at(ctx, t, p, true);
        if (!redex)
            throw InvariantError("side strategy found no cross reduction at the selected node "
                                 "(guard mismatch)");
        if (cx.kind_cost > 0) {
            t = apply(ctx, t, *redex, cx);
            return drop_enabled_everywhere(ctx, t, under);
        }
        // c = 0: only the drops are licensed.
        if (redex->rule != RuleId::DropLeft && redex->rule != RuleId::DropRight)
            throw InvariantError("side strategy at zero complexity expected a drop");
        return apply(ctx, t, *redex, cx);
    }

    // ---- the master algorithm ----

    Term master(TypingContext ctx, Term t, std::optional<MasterMeasure> parent) {
        if (!is_parallel_form(t)) t = to_parallel_form(ctx, t);

        for (;;) {
            charge(stats(t).size);
            Formula type = typecheck(ctx, t, opts.ty);
            TypingContext fv_ctx = fv_context(ctx, t);
            FormulaSet safe = a_set(fv_ctx, type);
            MasterMeasure m = measure_of(fv_ctx, t, safe);
            measures.push_back(m);
            if (opts.check_measure && parent && master_measure_cmp(m, *parent) >= 0)
                throw InvariantError("master measure did not decrease: (" +
                                     std::to_string(m.safe_set_size) + "," +
                                     std::to_string(m.max_complexity) + "," +
                                     std::to_string(m.max_count) + "," +
                                     std::to_string(m.term_size) + ")");
            parent = m;
            current_measure = m;

            if (classify(t) == TermClass::SimplyTyped)
                return normalize_intuitionistic(ctx, t, {});

            bool root_redex = !redexes_at(ctx, t, {}, opts.ty).empty();

            if (!root_redex) {
                TypingContext lctx = ctx, rctx = ctx;
                if (t.kind() == TermKind::ParCh) {
                    lctx = ctx.extended(t.name(), Formula::neg(t.ann()));
                    rctx = ctx.extended(t.name(), t.ann());
                }
                stack.push_back({t, 0});
                Term l = master(lctx, t.child(0), m);
                stack.pop_back();
                current_measure = m;
                t = with_children(t, {l, t.child(1)});
                stack.push_back({t, 1});
                Term r = master(rctx, t.child(1), m);
                stack.pop_back();
                current_measure = m;
                Term t2 = with_children(t, {t.child(0), r});
                // The sides are normal, and every guard is local to its
                // subtree, so only the root can have become a redex.
                if (redexes_at(ctx, t2, {}, opts.ty, true).empty()) return t2;
                t = t2;
                continue;
            }

            if (m.max_complexity == 0) {
                // Only a drop can be a root redex at zero complexity.
                auto redex = cross_family_at(ctx, t, {}, std::nullopt);
                if (!redex || (redex->rule != RuleId::DropLeft && redex->rule != RuleId::DropRight))
                    throw InvariantError("root redex at zero communication complexity is not a drop");
                t = apply(ctx, t, *redex);
                continue;
            }

            // Smallest subterm of maximal communication complexity; iterate
            // the side strategy on it until its complexity strictly drops.
            std::optional<Path> chosen;
            size_t w_size = 0;
            for (const Path& p : channel_nodes(t, {})) {
                Term node = subterm_at(t, p);
                if (kind_cost(node.ann(), safe) != m.max_complexity) continue;
                size_t sz = stats(node).size;
                if (!chosen || sz < w_size || (sz == w_size && p < *chosen)) {
                    chosen = p;
                    w_size = sz;
                }
            }
            if (!chosen) throw InvariantError("redex with positive complexity but no channel node");
            Path w = *chosen;
            for (;;) {
                size_t rmax = 0;
                for (const Path& p : channel_nodes(t, w))
                    rmax = std::max(rmax, kind_cost(subterm_at(t, p).ann(), safe));
                if (rmax < m.max_complexity) break;
                t = side_step(ctx, t, w, safe);
            }
        }
    }
};

} // namespace detail

inline Term to_parallel_form(const TypingContext& ctx, const Term& t,
                             const NormalizeOptions& opts = {}) {
    typecheck(ctx, t, opts.ty);
    detail::Normalizer n(opts);
    return n.to_parallel_form(ctx, t);
}

// One step of the side strategy on the whole term.
inline Term side_reduce(const TypingContext& ctx, const Term& t, const NormalizeOptions& opts = {}) {
    if (!is_parallel_form(t)) throw PreconditionError("side strategy needs a parallel form");
    detail::Normalizer n(opts);
    Formula type = typecheck(ctx, t, opts.ty);
    FormulaSet safe = a_set(n.fv_context(ctx, t), type);
    return n.side_step(ctx, t, {}, safe);
}

inline NormalizeResult normalize(const TypingContext& ctx, const Term& t,
                                 const NormalizeOptions& opts = {}) {
    typecheck(ctx, t, opts.ty);
    detail::Normalizer n(opts);
    NormalizeResult out;
    out.term = n.master(ctx, t, std::nullopt);
    out.steps = std::move(n.steps);
    out.measures = std::move(n.measures);
    return out;
}

} // namespace lamcl
