#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lamcl/generator.hpp"
#include "lamcl/typing.hpp"

using namespace lamcl;
using lamcl::testing::F;
using lamcl::testing::T;

static TypingContext ctx_of(std::initializer_list<std::pair<const char*, const char*>> xs) {
    TypingContext c;
    for (auto& [n, f] : xs) c.push(n, F(f));
    return c;
}

TEST_CASE("typing the simply typed fragment") {
    CHECK(typecheck({}, T("\\x:A. x")) == F("A -> A"));
    CHECK(typecheck({}, T("tt")) == Formula::top());
    CHECK(typecheck(ctx_of({{"u", "A"}, {"v", "B"}}), T("<u, v>")) == F("A & B"));
    CHECK(typecheck(ctx_of({{"u", "A & B"}}), T("u p1")) == F("B"));
    CHECK(typecheck(ctx_of({{"u", "bot"}}), T("efq[P] u")) == F("P"));
}

TEST_CASE("the disjunction injection types as in the example") {
    CHECK(typecheck(ctx_of({{"u", "A"}}), T("\\x:~A. \\y:~B. x u")) ==
          F("(A -> bot) -> (B -> bot) -> bot"));
}

TEST_CASE("contraction gives both sides the same type") {
    TypecheckOptions ext{true};
    CHECK(typecheck(ctx_of({{"x", "Bool"}}), parse_term("x || x", true), ext) == bool_formula());
    CHECK_THROWS_AS(typecheck(ctx_of({{"x", "P"}, {"y", "Q"}}), T("x || y")), TypeError);
}

TEST_CASE("the channel rule types the endpoints by side") {
    // left side uses a : ~B, right side a : B
    Formula ty = typecheck(ctx_of({{"x", "B -> ~B"}}), T("\\y:B. a y |a:B| x a"));
    CHECK(ty == F("~B"));
    CHECK_THROWS_AS(typecheck(ctx_of({{"x", "B -> ~B"}}), T("a |a:B| x a")), TypeError);
}

TEST_CASE("typing errors carry rule and path") {
    try {
        typecheck({}, T("\\x:A. y"));
        FAIL("unbound variable accepted");
    } catch (const TypeError& e) {
        CHECK(e.rule == "var");
        CHECK(e.path == Path{0});
    }
    try {
        typecheck(ctx_of({{"u", "bot"}}), T("efq[P & Q] u"));
        FAIL("non-atomic efq target accepted");
    } catch (const TypeError& e) {
        CHECK(e.rule == "efq");
    }
    try {
        typecheck(ctx_of({{"u", "bot"}}), T("efq[bot] u"));
        FAIL("bot efq target accepted");
    } catch (const TypeError& e) {
        CHECK(e.rule == "efq");
    }
    CHECK_THROWS_AS(typecheck({}, Term::btrue()), TypeError); // extension disabled
    try {
        typecheck(ctx_of({{"f", "P -> Q"}, {"x", "R"}}), T("f x"));
        FAIL("ill-typed application accepted");
    } catch (const TypeError& e) {
        CHECK(e.rule == "app");
    }
}

TEST_CASE("typechecking is deterministic") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        Generated g = generate_well_typed(rng);
        CHECK(typecheck(g.ctx, g.term) == typecheck(g.ctx, g.term));
        CHECK(typecheck(g.ctx, g.term) == g.type);
    }
}

TEST_CASE("communication kind reads the binder annotation") {
    Term t = T("u |a:P| v");
    CHECK(communication_kind(t, {}) == F("P"));
    CHECK(communication_kind(T("\\y:B. a y |a:B| x a"), {}) == F("B"));
    Term nested = T("(u |b:Q| w) |a:P| v");
    CHECK(communication_kind(nested, {0}) == F("Q"));
    CHECK_THROWS_AS(communication_kind(t, {0}), PathError);
}

TEST_CASE("communication complexity of the loop guard is zero") {
    TypingContext ctx = ctx_of({{"x", "B -> ~B"}});
    Term t = T("\\y:B. a y |a:B| x a");
    CHECK(communication_complexity(ctx, t, {}) == 0);
}

TEST_CASE("communication complexity counts the escaping prime factors") {
    TypingContext ctx = ctx_of({{"x", "P"}, {"w", "P -> Q"}});
    Term t = T("efq[Q] (a x) |a:P| (w a)");
    CHECK(communication_complexity(ctx, t, {}) == 1);

    // kind a proper subformula of the node type: excluded by the first clause
    TypingContext ctx2 = ctx_of({{"x", "P"}, {"y", "Q"}});
    Term t2 = T("<efq[P] (a x), y> |a:P| <x, y>"); // type P & Q, kind P
    CHECK(communication_complexity(ctx2, t2, {}) == 0);
}

TEST_CASE("complexity is measured against binders in scope") {
    // inside the right side of the outer channel, the node's free variables
    // include that channel at its receive type
    TypingContext ctx = ctx_of({{"s", "S"}, {"t", "T"}});
    Term t = T("(efq[S] (a (\\x:T->bot. x t))) |a:(T->bot)->bot| "
               "((efq[S] (a (\\y:T. b <s, y>))) |b:S&T| (b p0))");
    CHECK(communication_complexity(ctx, t, {}) == 5);   // (T->bot)->bot escapes entirely
    CHECK(communication_complexity(ctx, t, {1}) == 1);  // S escapes, T is strong in a's type
}

TEST_CASE("the safe set joins proper subformulas of the goal with strong subformulas of hypotheses") {
    CHECK(a_set({}, F("P")).empty());
    CHECK(a_set(ctx_of({{"x", "(P -> Q) -> R"}}), F("S")) == FormulaSet{F("P"), F("Q")});
    CHECK(a_set({}, F("P -> Q")) == FormulaSet{F("P"), F("Q")});
}

TEST_CASE("the safe set is closed under subformulas") {
    std::mt19937_64 rng(29);
    GenOptions opts;
    for (int i = 0; i < 40; ++i) {
        Generated g = generate_well_typed(rng);
        FormulaSet safe = a_set(g.ctx, g.type);
        for (const Formula& f : safe)
            for (const Formula& s : proper_subformulas(f)) CHECK(safe.count(s) == 1);
    }
}
