#pragma once

// Seeded type-directed generation of well-typed terms, used by the
// metatheory fuzz tests.  Small atom alphabet, bounded depth, channel
// insertion with fixed probability; every draw comes from the caller's
// engine so a seed reproduces the exact corpus.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lamcl/formula.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing.hpp"
#include "lamcl/typing_context.hpp"

namespace lamcl {

struct GenOptions {
    int max_depth = 5;
    int atom_count = 3;       // P, Q, R
    double parch_prob = 0.3;
    int context_vars = 3;
};

struct Generated {
    TypingContext ctx;
    Term term;
    Formula type;
};

namespace detail {

class TermGen {
public:
    TermGen(std::mt19937_64& rng, const GenOptions& opts) : rng_(rng), opts_(opts) {}

    Generated generate() {
        for (;;) {
            TypingContext ctx;
            int nvars = 2 + static_cast<int>(rng_() % static_cast<uint64_t>(opts_.context_vars));
            for (int i = 0; i < nvars; ++i)
                ctx.push("x" + std::to_string(i), random_formula(2));
            Formula target = random_formula(2);
            fresh_counter_ = 0;
            if (auto t = gen(ctx, target, opts_.max_depth))
                return {ctx, *t, target};
        }
    }

    Formula random_formula(int depth) {
        uint64_t roll = rng_() % 100;
        if (depth == 0 || roll < 45) {
            uint64_t a = rng_() % static_cast<uint64_t>(opts_.atom_count);
            return Formula::atom(std::string(1, static_cast<char>('P' + a)));
        }
        if (roll < 50) return Formula::top();
        if (roll < 80) return Formula::arrow(random_formula(depth - 1), random_formula(depth - 1));
        return Formula::conj(random_formula(depth - 1), random_formula(depth - 1));
    }

private:
    std::mt19937_64& rng_;
    GenOptions opts_;
    int fresh_counter_ = 0;

    std::string fresh(const char* hint) {
        return std::string(hint) + std::to_string(fresh_counter_++);
    }

    // A variable spine: peel a context variable's type toward the target by
    // applying generated arguments and projections.
    std::optional<Term> spine(const TypingContext& env, const Formula& target, int depth, int fuel) {
        std::vector<std::pair<std::string, Formula>> vars(env.entries());
        if (vars.empty()) return std::nullopt;
        for (int attempt = 0; attempt < 4; ++attempt) {
            const auto& [name, ty] = vars[rng_() % vars.size()];
            if (auto t = peel(env, Term::var(name), ty, target, depth, fuel)) return t;
        }
        return std::nullopt;
    }

    std::optional<Term> peel(const TypingContext& env, Term acc, const Formula& ty,
                             const Formula& target, int depth, int fuel) {
        if (ty == target) return acc;
        if (fuel == 0) return std::nullopt;
        if (ty.kind() == FormulaKind::Arrow) {
            auto arg = gen(env, ty.left(), depth - 1);
            if (!arg) return std::nullopt;
            return peel(env, Term::app(acc, *arg), ty.right(), target, depth, fuel - 1);
        }
        if (ty.kind() == FormulaKind::And) {
            int side = static_cast<int>(rng_() % 2);
            for (int k = 0; k < 2; ++k) {
                int i = (side + k) % 2;
                auto r = peel(env, Term::proj(acc, i), i == 0 ? ty.left() : ty.right(), target,
                              depth, fuel - 1);
                if (r) return r;
            }
        }
        return std::nullopt;
    }

    std::optional<Term> gen(const TypingContext& env, const Formula& target, int depth) {
        if (depth > 0 && (rng_() % 100) < static_cast<uint64_t>(opts_.parch_prob * 100)) {
            Formula kind = random_formula(1);
            std::string a = fresh("a");
            auto lhs = gen(env.extended(a, Formula::neg(kind)), target, depth - 1);
            auto rhs = gen(env.extended(a, kind), target, depth - 1);
            if (lhs && rhs) return Term::par_ch(a, kind, *lhs, *rhs);
        }
        if (depth > 0 && (rng_() % 100) < 10) {
            auto lhs = gen(env, target, depth - 1);
            auto rhs = gen(env, target, depth - 1);
            if (lhs && rhs) return Term::par_plain(*lhs, *rhs);
        }

        switch (target.kind()) {
        case FormulaKind::Top:
            if (rng_() % 2 || depth == 0) return Term::unit();
            break;
        case FormulaKind::Arrow:
            if (depth > 0) {
                std::string x = fresh("y");
                auto body = gen(env.extended(x, target.left()), target.right(), depth - 1);
                if (body) return Term::lam(x, target.left(), *body);
            }
            break;
        case FormulaKind::And:
            if (depth > 0) {
                auto l = gen(env, target.left(), depth - 1);
                auto r = gen(env, target.right(), depth - 1);
                if (l && r) return Term::pair(*l, *r);
            }
            break;
        case FormulaKind::Atom:
            if (depth > 0 && (rng_() % 100) < 15) {
                if (auto f = gen(env, Formula::bot(), depth - 1))
                    return Term::efq(target, *f);
            }
            break;
        default:
            break;
        }
        if (depth > 0)
            if (auto t = spine(env, target, depth, 3)) return t;
        // Leaf fallback: a context variable of exactly the target type.
        std::vector<Term> exact;
        for (const auto& [name, ty] : env.entries())
            if (ty == target) exact.push_back(Term::var(name));
        if (!exact.empty()) return exact[rng_() % exact.size()];
        if (target.kind() == FormulaKind::Top) return Term::unit();
        return std::nullopt;
    }
};

} // namespace detail

inline Generated generate_well_typed(std::mt19937_64& rng, const GenOptions& opts = {}) {
    return detail::TermGen(rng, opts).generate();
}

} // namespace lamcl
