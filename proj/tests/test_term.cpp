#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lamcl/generator.hpp"
#include "lamcl/print.hpp"
#include "lamcl/term.hpp"

using namespace lamcl;
using lamcl::testing::F;
using lamcl::testing::T;

TEST_CASE("free variables in first-occurrence order") {
    CHECK(free_vars(T("x")) == std::vector<std::string>{"x"});
    CHECK(free_vars(T("a x |a:P| a")) == std::vector<std::string>{"x"});
    CHECK(free_vars(T("\\y:Q. a y")) == std::vector<std::string>{"a"});
    CHECK(free_vars(T("z (y x) y")) == std::vector<std::string>{"z", "y", "x"});
}

TEST_CASE("substitution") {
    CHECK(alpha_eq(substitute(T("x"), "x", Term::unit()), T("tt")));
    CHECK(alpha_eq(substitute(T("y"), "x", Term::unit()), T("y")));

    // capture avoidance: the binder y is renamed before y flows under it
    Term r = substitute(T("\\y:Q. x"), "x", Term::var("y"));
    CHECK(r.kind() == TermKind::Lam);
    CHECK(r.name() != "y");
    CHECK(alpha_eq(r.child(0), Term::var("y")));
    CHECK(free_vars(r) == std::vector<std::string>{"y"});

    // channel binders are renamed the same way
    Term rc = substitute(T("x |a:P| a"), "x", Term::var("a"));
    CHECK(rc.kind() == TermKind::ParCh);
    CHECK(rc.name() != "a");
    CHECK(free_vars(rc) == std::vector<std::string>{"a"});

    // the shape arising in the closure-transmission trace
    Term s = substitute(T("a z"), "a", T("\\x:top -> bot. x t0"));
    CHECK(alpha_eq(s, T("(\\x:top -> bot. x t0) z")));
}

TEST_CASE("substitution properties on generated terms") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        Generated g = generate_well_typed(rng);
        for (const std::string& x : free_vars(g.term)) {
            CHECK(alpha_eq(substitute(g.term, x, Term::var(x)), g.term));
            Term u = T("u0 u1");
            Term r = substitute(g.term, x, u);
            auto fv_t = free_var_set(g.term);
            fv_t.erase(x);
            for (const std::string& v : free_var_set(u)) fv_t.insert(v);
            for (const std::string& v : free_var_set(r)) CHECK(fv_t.count(v) == 1);
        }
    }
}

TEST_CASE("multiple substitution builds tuple projections") {
    CHECK(alpha_eq(multiple_substitute(T("y"), {"y"}, "b"), T("b")));
    CHECK(alpha_eq(multiple_substitute(T("y0 y1"), {"y0", "y1"}, "b"), T("(b p0) (b p1)")));
    CHECK(alpha_eq(multiple_substitute(T("tt"), {"y"}, "b"), T("tt")));
    CHECK(alpha_eq(multiple_substitute(T("y0 y1 y2"), {"y0", "y1", "y2"}, "b"),
                   T("(b p0) (b p1 p0) (b p1 p1)")));
}

TEST_CASE("stacks fold left") {
    Term t = Term::var("t");
    CHECK(alpha_eq(apply_stack(t, {StackElem::argument(Term::var("u"))}), T("t u")));
    CHECK(alpha_eq(apply_stack(t, {StackElem::projection(1)}), T("t p1")));
    CHECK(alpha_eq(apply_stack(t, {StackElem::efq_to(F("P"))}), T("efq[P] t")));
    CHECK(alpha_eq(apply_stack(t, {StackElem::argument(Term::var("u")), StackElem::projection(0)}),
                   T("t u p0")));
}

TEST_CASE("classification") {
    CHECK(classify(T("\\x:P. x")) == TermClass::SimplyTyped);
    CHECK(classify(T("(a x) |a:P| x")) == TermClass::SimpleParallel);
    CHECK(classify(T("x || (y |a:P| z)")) == TermClass::SimpleParallel);
    CHECK(classify(T("w (u |a:P| v)")) == TermClass::Other);
    CHECK(classify(T("\\x:P. (u || v)")) == TermClass::Other);
}

TEST_CASE("classification respects the inclusion chain") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        Generated g = generate_well_typed(rng);
        TermClass c = classify(g.term);
        bool simply = c == TermClass::SimplyTyped;
        bool simple_par = simply || c == TermClass::SimpleParallel;
        bool par_form = is_parallel_form(g.term);
        if (simply) CHECK(simple_par);
        if (simple_par) CHECK(par_form);
    }
}

TEST_CASE("paths resolve, replace, and round-trip") {
    Term t = T("u v");
    CHECK(alpha_eq(subterm_at(t, {1}), T("v")));
    CHECK(alpha_eq(replace_at(t, {1}, Term::var("w")), T("u w")));
    CHECK_THROWS_AS(subterm_at(t, {5}), PathError);
    CHECK_THROWS_AS(replace_at(t, {0, 0, 0}, t), PathError);

    // literal grafting captures on purpose
    Term lam = T("\\x:P. hole");
    Term grafted = replace_at(lam, {0}, Term::var("x"));
    CHECK(alpha_eq(grafted, T("\\x:P. x")));
    CHECK(free_vars(grafted).empty());

    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        Generated g = generate_well_typed(rng);
        std::function<void(const Term&, Path&)> walk = [&](const Term& u, Path& here) {
            Term back = subterm_at(replace_at(g.term, here, u), here);
            CHECK(alpha_eq(back, u));
            for (int k = 0; k < u.arity(); ++k) {
                here.push_back(k);
                walk(u.child(k), here);
                here.pop_back();
            }
        };
        Path p;
        walk(g.term, p);
    }
}

TEST_CASE("fresh names take the lowest unused suffix") {
    CHECK(fresh_name({}, "b") == "b0");
    CHECK(fresh_name({"b0"}, "b") == "b1");
    CHECK(fresh_name({"b0", "b1", "x"}, "b") == "b2");
}

TEST_CASE("alpha equivalence") {
    CHECK(alpha_eq(T("\\x:P. x"), T("\\y:P. y")));
    CHECK(alpha_eq(T("a |a:P| a"), T("c |c:P| c")));
    CHECK_FALSE(alpha_eq(T("\\x:P. x"), T("\\x:Q. x")));
    CHECK_FALSE(alpha_eq(T("a |a:P| a"), T("a |a:Q| a")));
    CHECK_FALSE(alpha_eq(T("\\x:P. \\y:P. x"), T("\\x:P. \\y:P. y")));
    CHECK(alpha_eq(T("x"), T("x")));
    CHECK_FALSE(alpha_eq(T("x"), T("y")));
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 80; ++i) {
        Generated g = generate_well_typed(rng);
        Term back = parse_term(term_to_string(g.term));
        CHECK(alpha_eq(back, g.term));
    }
}
