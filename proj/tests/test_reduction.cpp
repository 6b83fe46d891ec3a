#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lamcl/generator.hpp"
#include "lamcl/print.hpp"
#include "lamcl/reduction.hpp"

using namespace lamcl;
using lamcl::testing::F;
using lamcl::testing::T;

static TypingContext ctx_of(std::initializer_list<std::pair<const char*, const char*>> xs) {
    TypingContext c;
    for (auto& [n, f] : xs) c.push(n, F(f));
    return c;
}

static const Redex* find_rule(const std::vector<Redex>& rs, RuleId rule) {
    for (const Redex& r : rs)
        if (r.rule == rule) return &r;
    return nullptr;
}

TEST_CASE("a beta redex is found at the root") {
    auto rs = find_redexes({}, T("(\\x:top. x) tt"));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].rule == RuleId::Beta);
    CHECK(rs[0].path.empty());
}

TEST_CASE("the loop-guard term admits no redex at all") {
    auto rs = find_redexes(ctx_of({{"x", "B -> ~B"}}), T("\\y:B. a y |a:B| x a"));
    CHECK(rs.empty());
}

TEST_CASE("the unfired cross is the only candidate and its guard is complexity") {
    TypingContext ctx = ctx_of({{"x", "P"}, {"w", "P -> Q"}});
    auto rs = find_redexes(ctx, T("efq[Q] (a x) |a:P| (w a)"));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].rule == RuleId::BasicCross);
    CHECK(rs[0].sender == Path{0, 0});
}

TEST_CASE("redexes come out leftmost-innermost") {
    Term t = T("((\\x:P. x) y) ((\\z:Q. z) w)");
    auto rs = find_redexes(ctx_of({{"y", "P"}, {"w", "Q"}}), t);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].path == Path{0});
    CHECK(rs[1].path == Path{1});
}

TEST_CASE("steps of the basic rules") {
    CHECK(alpha_eq(step({}, T("(\\x:top. x) tt"), {{}, RuleId::Beta, {}, {}, ""}), T("tt")));
    TypingContext c = ctx_of({{"u", "P"}, {"v", "Q"}});
    CHECK(alpha_eq(step(c, T("<u, v> p1"), {{}, RuleId::ProjPair, {}, {}, ""}), T("v")));
}

TEST_CASE("scope extrusion permutes and duplicates") {
    // (v |a:A| C[b a]) |b:B| w  ->  (v |b:B| w) |a:A| (C[b a] |b:B| w):
    // after the step, C can ship the private channel a to w.
    TypingContext ctx = ctx_of({{"v", "Q"}, {"w", "Q"}});
    Term t = T("(v |a:P| efq[Q] (b a)) |b:P| w");
    auto rs = find_redexes(ctx, t);
    const Redex* perm = find_rule(rs, RuleId::PermParOverParLeft);
    REQUIRE(perm != nullptr);
    CHECK(alpha_eq(step(ctx, t, *perm), T("(v |b:P| w) |a:P| (efq[Q] (b a) |b:P| w)")));
}

TEST_CASE("pair permutation duplicates the passenger") {
    TypingContext ctx = ctx_of({{"u", "P"}, {"v", "Q"}, {"w", "R"}});
    Term t = T("<efq[Q] (a u) |a:P| v, w>");
    auto rs = find_redexes(ctx, t);
    const Redex* perm = find_rule(rs, RuleId::PermPairLeft);
    REQUIRE(perm != nullptr);
    CHECK(alpha_eq(step(ctx, t, *perm), T("<efq[Q] (a u), w> |a:P| <v, w>")));
}

TEST_CASE("permutations rename the channel rather than block") {
    // the moving material mentions a free variable spelled like the bound
    // channel, which must not be captured
    TypingContext ctx = ctx_of({{"a0", "Q"}});
    Term t = T("((\\q:Q. q) |a0:S| (\\q:Q. q)) a0");
    auto rs = find_redexes(ctx, t);
    const Redex* perm = find_rule(rs, RuleId::PermStack);
    REQUIRE(perm != nullptr);
    Term u = step(ctx, t, *perm);
    REQUIRE(u.kind() == TermKind::ParCh);
    CHECK(u.name() != "a0");
    CHECK(free_var_set(u).count("a0") == 1);
    CHECK(typecheck(ctx, u) == typecheck(ctx, t));

    Term t2 = T("a0 ((\\q:Q. q) |a0:S| (\\q:Q. q))"); // argument side, same clash
    TypingContext ctx2 = ctx_of({{"a0", "(Q -> Q) -> R"}});
    auto rs2 = find_redexes(ctx2, t2);
    const Redex* perm2 = find_rule(rs2, RuleId::PermAppLeft);
    REQUIRE(perm2 != nullptr);
    Term u2 = step(ctx2, t2, *perm2);
    REQUIRE(u2.kind() == TermKind::ParCh);
    CHECK(u2.name() != "a0");
    CHECK(typecheck(ctx2, u2) == typecheck(ctx2, t2));
}

TEST_CASE("efq participates in the stack permutation") {
    TypingContext ctx = ctx_of({{"u", "bot"}, {"v", "bot"}});
    Term t = T("efq[P] (u |a:Q| v)");
    auto rs = find_redexes(ctx, t);
    const Redex* perm = find_rule(rs, RuleId::PermStack);
    REQUIRE(perm != nullptr);
    CHECK(alpha_eq(step(ctx, t, *perm), T("efq[P] u |a:Q| efq[P] v")));
}

TEST_CASE("basic cross sends, broadcasts, and races") {
    TypingContext ctx = ctx_of({{"x", "P"}, {"y", "P"}, {"w", "P -> Q"}, {"w2", "P -> Q"}});

    Term send = T("efq[Q] (a x) |a:P| (w a)");
    auto rs = find_redexes(ctx, send);
    REQUIRE(rs.size() == 1);
    CHECK(alpha_eq(basic_cross(ctx, send, rs[0]), T("w x")));

    Term bcast = T("efq[Q] (a x) |a:P| ((w a) || (w2 a))");
    rs = find_redexes(ctx, bcast);
    const Redex* r = find_rule(rs, RuleId::BasicCross);
    REQUIRE(r != nullptr);
    CHECK(alpha_eq(basic_cross(ctx, bcast, *r), T("(w x) || (w2 x)")));

    Term race = T("(efq[Q] (a x) || efq[Q] (a y)) |a:P| (w a)");
    rs = find_redexes(ctx, race);
    std::vector<Term> outcomes;
    for (const Redex& rr : rs)
        if (rr.rule == RuleId::BasicCross) outcomes.push_back(basic_cross(ctx, race, rr));
    REQUIRE(outcomes.size() == 2);
    CHECK(alpha_eq(outcomes[0], T("w x")));
    CHECK(alpha_eq(outcomes[1], T("w y")));
}

TEST_CASE("the message may not contain its own send endpoint") {
    // rightmost occurrence sits inside the other's message: only the inner fires
    TypingContext ctx = ctx_of({{"x", "P"}, {"w", "P -> Q"}});
    Term t = T("efq[Q] (a (efq[P] (a x))) |a:P| (w a)");
    auto rs = find_redexes(ctx, t);
    size_t crosses = 0;
    for (const Redex& r : rs)
        if (r.rule == RuleId::BasicCross) {
            ++crosses;
            CHECK(alpha_eq(basic_cross(ctx, t, r), T("w x")));
        }
    CHECK(crosses == 1);
}

TEST_CASE("the full cross transmits the closure and opens a fresh channel") {
    // The singleton-environment case: the message <s, y> has one bound
    // variable, the new channel's kind is y's type, and the receiver's copy
    // replaces y by the bare channel.
    TypingContext ctx = ctx_of({{"s", "S"}, {"a2", "(T -> bot) -> bot"}});
    Term t = T("(efq[S] (a2 (\\y:T. b <s, y>))) |b:S&T| (b p0)");
    auto rs = find_redexes(ctx, t);
    // the message has a bound variable, so the basic flavor is off the table
    CHECK(find_rule(rs, RuleId::BasicCross) == nullptr);
    const Redex* r = find_rule(rs, RuleId::Cross);
    REQUIRE(r != nullptr);
    CHECK(r->ys == std::vector<std::string>{"y"});
    Term u = cross(ctx, t, *r);
    CHECK(alpha_eq(u, T("((efq[S] (a2 (\\y:T. c y))) |b:S&T| (b p0)) |c:T| (<s, c> p0)")));
    CHECK(u.ann() == F("T"));
    CHECK(typecheck(ctx, u) == typecheck(ctx, t));
}

TEST_CASE("channel substitution replaces every occurrence at once") {
    CHECK(alpha_eq(channel_substitute(T("a"), "a", Term::unit()), T("tt")));
    CHECK(alpha_eq(channel_substitute(T("a a"), "a", Term::var("w")), T("w w")));
    CHECK(alpha_eq(channel_substitute(T("a || x"), "a", Term::var("w")), T("w || x")));
}

TEST_CASE("drops keep the side that forgot the channel") {
    TypingContext ctx = ctx_of({{"u", "Q"}, {"v", "Q"}});
    Term t = T("u |a:P| v");
    auto rs = find_redexes(ctx, t);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].rule == RuleId::DropLeft);
    CHECK(rs[1].rule == RuleId::DropRight);
    CHECK(alpha_eq(step(ctx, t, rs[0]), T("u")));
    CHECK(alpha_eq(step(ctx, t, rs[1]), T("v")));
    // no drops on the contraction operator
    CHECK(find_redexes(ctx, T("u || v")).empty());
}

TEST_CASE("broadcast is coherent with independent sends") {
    TypingContext ctx = ctx_of({{"x", "P"}, {"w", "P -> Q"}, {"w2", "P -> Q"}});
    Term bcast = T("efq[Q] (a x) |a:P| ((w a) || (w2 a))");
    Term lone1 = T("efq[Q] (a x) |a:P| (w a)");
    Term lone2 = T("efq[Q] (a x) |a:P| (w2 a)");
    auto send = [&](const Term& t) {
        auto rs = find_redexes(ctx, t);
        const Redex* r = find_rule(rs, RuleId::BasicCross);
        REQUIRE(r != nullptr);
        return basic_cross(ctx, t, *r);
    };
    CHECK(alpha_eq(send(bcast), Term::par_plain(send(lone1), send(lone2))));
}

TEST_CASE("stale redexes are rejected") {
    TypingContext ctx = ctx_of({{"x", "P"}, {"w", "P -> Q"}});
    Term t = T("efq[Q] (a x) |a:P| (w a)");
    CHECK_THROWS_AS(step(ctx, t, {{}, RuleId::Beta, {}, {}, ""}), PreconditionError);
    CHECK_THROWS_AS(step(ctx, t, {{}, RuleId::DropLeft, {}, {}, ""}), PreconditionError);
    CHECK_THROWS_AS(step(ctx, t, {{0, 0, 5}, RuleId::Beta, {}, {}, ""}), PathError);
}

TEST_CASE("every step preserves the type and never grows the free variables") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        Generated g = generate_well_typed(rng);
        Formula ty = typecheck(g.ctx, g.term);
        auto fv = free_var_set(g.term);
        for (const Redex& r : find_redexes(g.ctx, g.term)) {
            Term u = step(g.ctx, g.term, r);
            CHECK(typecheck(g.ctx, u) == ty);
            for (const std::string& v : free_var_set(u)) CHECK(fv.count(v) == 1);
        }
    }
}

TEST_CASE("the composed race admits a third normal form through scope extrusion") {
    // Documented behavior: the permutation duplicates the receiver, so both
    // messages can be delivered into separate copies.
    TypingContext ctx = ctx_of({{"x", "P"}, {"y", "P"}, {"w", "P -> Q"}});
    Term race = T("(efq[Q] (a x) || efq[Q] (a y)) |a:P| (w a)");
    auto rs = find_redexes(ctx, race);
    const Redex* perm = find_rule(rs, RuleId::PermParOverParLeftPlain);
    REQUIRE(perm != nullptr);
    Term t = step(ctx, race, *perm);
    CHECK(alpha_eq(t, T("(efq[Q] (a x) |a:P| (w a)) || (efq[Q] (a y) |a:P| (w a))")));
}
