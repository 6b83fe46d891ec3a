#pragma once

// Executable statements of the metatheory, used as oracles on reduction
// outputs.  A failing check carries a witness: the offending path and
// formula.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/formula.hpp"
#include "lamcl/reduction.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing.hpp"

namespace lamcl {

struct CheckResult {
    std::string name;
    bool passed = true;
    Path witness;
    std::optional<Formula> offender;
    std::string detail;
};

struct VerificationReport {
    std::string subject;
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline bool prime_factors_are_subformulas(const Formula& f, const std::vector<Formula>& pool) {
    for (const Formula& pf : prime_factors(f)) {
        bool ok = false;
        for (const Formula& g : pool)
            if (is_subformula(pf, g)) { ok = true; break; }
        if (!ok) return false;
    }
    return true;
}

struct SubformulaWalk {
    const std::vector<Formula>& root_pool;
    const TypecheckOptions& opts;
    CheckResult* kinds;
    CheckResult* types;

    // Clause (i) is judged against the root hypotheses and goal.  Clause
    // (ii) follows the theorem's induction: under a channel binder the side
    // is typed with the extra hypothesis a:~C (resp. a:C), so the local pool
    // grows by that binder type.
    void walk(const TypingContext& env, const std::set<std::string>& chan_binders,
              std::vector<Formula>& pool, const Term& t, Path& here) {
        if (t.kind() == TermKind::ParCh) {
            if (kinds->passed) {
                for (const Formula& pf : prime_factors(t.ann())) {
                    bool ok = false;
                    for (const Formula& g : root_pool)
                        if (is_proper_subformula(pf, g)) { ok = true; break; }
                    if (!ok) {
                        kinds->passed = false;
                        kinds->witness = here;
                        kinds->offender = pf;
                        kinds->detail = "kind prime factor " + formula_to_string(pf) +
                                        " is not a proper subformula of any hypothesis or the goal";
                        break;
                    }
                }
            }
        }

        bool channel_occurrence =
            t.kind() == TermKind::Var && chan_binders.count(t.name()) > 0;
        if (!channel_occurrence && types->passed) {
            Formula ty = typecheck(env, t, opts);
            if (!prime_factors_are_subformulas(ty, pool)) {
                types->passed = false;
                types->witness = here;
                types->offender = ty;
                types->detail = "subterm type " + formula_to_string(ty) +
                                " is not built from subformulas of the hypotheses and goal";
            }
        }

        auto descend = [&](int i, const TypingContext& e, const std::set<std::string>& cb) {
            here.push_back(i);
            walk(e, cb, pool, t.child(i), here);
            here.pop_back();
        };
        switch (t.kind()) {
        case TermKind::Lam: {
            auto cb = chan_binders;
            cb.erase(t.name());
            descend(0, env.extended(t.name(), t.ann()), cb);
            break;
        }
        case TermKind::ParCh: {
            auto cb = chan_binders;
            cb.insert(t.name());
            pool.push_back(Formula::neg(t.ann()));
            descend(0, env.extended(t.name(), Formula::neg(t.ann())), cb);
            pool.back() = t.ann();
            descend(1, env.extended(t.name(), t.ann()), cb);
            pool.pop_back();
            break;
        }
        default:
            for (int i = 0; i < t.arity(); ++i) descend(i, env, chan_binders);
        }
    }
};

} // namespace detail

// Subformula property of normal terms: (i) every bound channel kind has all
// its prime factors proper subformulas of some hypothesis or the goal;
// (ii) the type of every subterm that is not a bound channel occurrence is a
// subformula, or a conjunction of subformulas, of the hypotheses and goal.
// The normality precondition can be waived for negative tests.
inline VerificationReport check_subformula_property(const TypingContext& ctx, const Term& t,
                                                    const TypecheckOptions& opts = {},
                                                    bool require_normal = true) {
    if (require_normal && !is_normal(ctx, t, opts))
        throw PreconditionError("subformula property is stated for normal terms");
    Formula goal = typecheck(ctx, t, opts);
    std::vector<Formula> pool;
    for (const auto& [n, f] : ctx.entries()) { (void)n; pool.push_back(f); }
    pool.push_back(goal);

    VerificationReport report;
    report.checks.push_back({"channel_kinds", true, {}, std::nullopt, ""});
    report.checks.push_back({"subterm_types", true, {}, std::nullopt, ""});
    detail::SubformulaWalk walk{pool, opts, &report.checks[0], &report.checks[1]};
    Path here;
    std::set<std::string> chan_binders;
    std::vector<Formula> local_pool = pool;
    walk.walk(ctx, chan_binders, local_pool, t, here);
    return report;
}

// Bound hypothesis property of normal simply typed terms: every bound
// variable's annotation is a proper subformula of a prime factor of the
// goal, or a strong subformula of some hypothesis.
inline VerificationReport check_bound_hypothesis(const TypingContext& ctx, const Term& t,
                                                 const TypecheckOptions& opts = {}) {
    if (classify(t) != TermClass::SimplyTyped)
        throw PreconditionError("bound hypothesis property is stated for simply typed terms");
    if (!is_normal(ctx, t, opts))
        throw PreconditionError("bound hypothesis property is stated for normal terms");
    Formula goal = typecheck(ctx, t, opts);

    VerificationReport report;
    CheckResult check{"bound_hypotheses", true, {}, std::nullopt, ""};
    std::function<void(const Term&, Path&)> walk = [&](const Term& u, Path& here) {
        if (u.kind() == TermKind::Lam && check.passed) {
            const Formula& b = u.ann();
            bool ok = false;
            for (const Formula& pf : prime_factors(goal))
                if (is_proper_subformula(b, pf)) { ok = true; break; }
            if (!ok)
                for (const auto& [n, f] : ctx.entries()) {
                    (void)n;
                    if (is_strong_subformula(b, f)) { ok = true; break; }
                }
            if (!ok) {
                check.passed = false;
                check.witness = here;
                check.offender = b;
                check.detail = "bound variable " + u.name() + " : " + formula_to_string(b);
            }
        }
        for (int i = 0; i < u.arity(); ++i) {
            here.push_back(i);
            walk(u.child(i), here);
            here.pop_back();
        }
    };
    Path here;
    walk(t, here);
    report.checks.push_back(std::move(check));
    return report;
}

// Applied-occurrence property: in a normal simply typed term, either every
// occurrence of z is immediately applied (to an argument or a projection),
// or z's type is bot, a subformula of the goal, or a proper subformula of a
// hypothesis.
inline VerificationReport check_applied_occurrences(const TypingContext& ctx, const Term& t,
                                                    const std::string& z,
                                                    const TypecheckOptions& opts = {}) {
    if (classify(t) != TermClass::SimplyTyped)
        throw PreconditionError("applied occurrence property is stated for simply typed terms");
    if (!is_normal(ctx, t, opts))
        throw PreconditionError("applied occurrence property is stated for normal terms");
    auto b = ctx.lookup(z);
    if (!b) throw PreconditionError("variable '" + z + "' is not in the context");
    Formula goal = typecheck(ctx, t, opts);

    VerificationReport report;
    CheckResult check{"applied_occurrences(" + z + ")", true, {}, std::nullopt, ""};

    bool exempt = b->kind() == FormulaKind::Bot || is_subformula(*b, goal);
    if (!exempt)
        for (const auto& [n, f] : ctx.entries()) {
            (void)n;
            if (is_proper_subformula(*b, f)) { exempt = true; break; }
        }

    if (!exempt) {
        std::function<void(const Term&, Path&, bool)> walk = [&](const Term& u, Path& here,
                                                                 bool applied) {
            if (!check.passed) return;
            if (u.kind() == TermKind::Lam && u.name() == z) return; // shadowed below
            if (u.kind() == TermKind::Var && u.name() == z && !applied) {
                check.passed = false;
                check.witness = here;
                check.offender = *b;
                check.detail = "occurrence of " + z + " is not applied to a stack element";
                return;
            }
            for (int i = 0; i < u.arity(); ++i) {
                bool child_applied =
                    (u.kind() == TermKind::App && i == 0) || (u.kind() == TermKind::Proj && i == 0);
                here.push_back(i);
                walk(u.child(i), here, child_applied);
                here.pop_back();
            }
        };
        Path here;
        walk(t, here, false);
    }
    report.checks.push_back(std::move(check));
    return report;
}

} // namespace lamcl
