#pragma once

// Hand-written lexer and recursive-descent parser for formulas, terms, and
// source files.  A source file is a sequence of statements:
//
//   assume x : A [.]     extension bool [.]     term <expr> [.]     expect <expr> [.]
//
// Errors carry line and column.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/formula.hpp"
#include "lamcl/term.hpp"
#include "lamcl/typing_context.hpp"

namespace lamcl {

enum class Tok {
    Ident, Lambda, Colon, Dot, Comma, LParen, RParen, LBrack, RBrack,
    Lt, Gt, Pipe, PipePipe, Arrow, Amp, Tilde,
    KwBot, KwTop, KwTt, KwEfq, KwIf, KwThen, KwElse, KwTrue, KwFalse,
    KwP0, KwP1, KwAssume, KwExtension, KwTerm, KwExpect, KwBool,
    End,
};

struct Token {
    Tok tok;
    std::string text;
    int line, col;
};

// T and F are term keywords only under the bool extension; otherwise they
// stay available as formula atoms (the closure-transmission example types
// its messages S and T).
inline std::vector<Token> lex(const std::string& src, bool bool_extension = false) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok t, std::string s, int l, int c) { out.push_back({t, std::move(s), l, c}); };
    while (i < src.size()) {
        char c = src[i];
        int l0 = line, c0 = col;
        auto adv = [&](size_t n) {
            for (size_t k = 0; k < n; ++k) {
                if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
                ++i;
            }
        };
        if (std::isspace(static_cast<unsigned char>(c))) { adv(1); continue; }
        if (c == '#') { // comment to end of line
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string w = src.substr(i, j - i);
            adv(j - i);
            Tok t = Tok::Ident;
            if (w == "bot") t = Tok::KwBot;
            else if (w == "top") t = Tok::KwTop;
            else if (w == "tt") t = Tok::KwTt;
            else if (w == "efq") t = Tok::KwEfq;
            else if (w == "if") t = Tok::KwIf;
            else if (w == "then") t = Tok::KwThen;
            else if (w == "else") t = Tok::KwElse;
            else if (w == "T" && bool_extension) t = Tok::KwTrue;
            else if (w == "F" && bool_extension) t = Tok::KwFalse;
            else if (w == "p0") t = Tok::KwP0;
            else if (w == "p1") t = Tok::KwP1;
            else if (w == "assume") t = Tok::KwAssume;
            else if (w == "extension") t = Tok::KwExtension;
            else if (w == "term") t = Tok::KwTerm;
            else if (w == "expect") t = Tok::KwExpect;
            else if (w == "bool") t = Tok::KwBool;
            push(t, w, l0, c0);
            continue;
        }
        switch (c) {
        case '\\': adv(1); push(Tok::Lambda, "\\", l0, c0); break;
        case ':': adv(1); push(Tok::Colon, ":", l0, c0); break;
        case '.': adv(1); push(Tok::Dot, ".", l0, c0); break;
        case ',': adv(1); push(Tok::Comma, ",", l0, c0); break;
        case '(': adv(1); push(Tok::LParen, "(", l0, c0); break;
        case ')': adv(1); push(Tok::RParen, ")", l0, c0); break;
        case '[': adv(1); push(Tok::LBrack, "[", l0, c0); break;
        case ']': adv(1); push(Tok::RBrack, "]", l0, c0); break;
        case '<': adv(1); push(Tok::Lt, "<", l0, c0); break;
        case '>': adv(1); push(Tok::Gt, ">", l0, c0); break;
        case '&': adv(1); push(Tok::Amp, "&", l0, c0); break;
        case '~': adv(1); push(Tok::Tilde, "~", l0, c0); break;
        case '|':
            if (i + 1 < src.size() && src[i + 1] == '|') { adv(2); push(Tok::PipePipe, "||", l0, c0); }
            else { adv(1); push(Tok::Pipe, "|", l0, c0); }
            break;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') { adv(2); push(Tok::Arrow, "->", l0, c0); }
            else throw ParseError(l0, c0, "stray '-'");
            break;
        default:
            throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src, bool bool_extension = false)
        : toks_(lex(src, bool_extension)), bool_ext_(bool_extension) {}

    // --- formulas: '&' binds tighter than '->', both right-associative ----
    Formula parse_formula() { return parse_arrow(); }

    // --- terms -------------------------------------------------------------
    Term parse_term() { return parse_par(); }

    // --- source files -------------------------------------------------------
    struct Source {
        TypingContext ctx;
        bool bool_extension = false;
        Term term;
        std::optional<Term> expect;
    };

    Source parse_source() {
        Source s;
        bool have_term = false;
        while (peek().tok != Tok::End) {
            const Token& tk = peek();
            switch (tk.tok) {
            case Tok::KwAssume: {
                next();
                Token name = expect_tok(Tok::Ident, "assumption name");
                expect_tok(Tok::Colon, "':'");
                Formula f = parse_formula();
                if (s.ctx.lookup(name.text))
                    throw ParseError(name.line, name.col, "duplicate assumption '" + name.text + "'");
                s.ctx.push(name.text, f);
                eat_optional_dot();
                break;
            }
            case Tok::KwExtension: {
                next();
                expect_tok(Tok::KwBool, "'bool'");
                s.bool_extension = true;
                bool_ext_ = true;
                eat_optional_dot();
                break;
            }
            case Tok::KwTerm: {
                if (have_term) throw ParseError(tk.line, tk.col, "multiple 'term' statements");
                next();
                s.term = parse_term();
                have_term = true;
                eat_optional_dot();
                break;
            }
            case Tok::KwExpect: {
                next();
                s.expect = parse_term();
                eat_optional_dot();
                break;
            }
            default:
                throw ParseError(tk.line, tk.col, "expected a statement, got '" + tk.text + "'");
            }
        }
        if (!have_term) throw ParseError(peek().line, peek().col, "missing 'term' statement");
        return s;
    }

    void expect_end() {
        if (peek().tok != Tok::End)
            throw ParseError(peek().line, peek().col, "trailing input '" + peek().text + "'");
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    bool bool_ext_;

    const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Token expect_tok(Tok t, const std::string& what) {
        if (peek().tok != t)
            throw ParseError(peek().line, peek().col, "expected " + what + ", got '" + peek().text + "'");
        return next();
    }

    void eat_optional_dot() {
        if (peek().tok == Tok::Dot) next();
    }

    Formula parse_arrow() {
        Formula lhs = parse_and();
        if (peek().tok == Tok::Arrow) {
            next();
            return Formula::arrow(lhs, parse_arrow());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_formula_atom();
        if (peek().tok == Tok::Amp) {
            next();
            return Formula::conj(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_formula_atom() {
        const Token& tk = peek();
        switch (tk.tok) {
        case Tok::Ident: next(); return Formula::atom(tk.text);
        case Tok::KwBot: next(); return Formula::bot();
        case Tok::KwTop: next(); return Formula::top();
        case Tok::Tilde: next(); return Formula::neg(parse_formula_atom());
        case Tok::LParen: {
            next();
            Formula f = parse_arrow();
            expect_tok(Tok::RParen, "')'");
            return f;
        }
        default:
            throw ParseError(tk.line, tk.col, "expected a formula, got '" + tk.text + "'");
        }
    }

    Term parse_par() {
        Term acc = parse_lam_level();
        for (;;) {
            if (peek().tok == Tok::PipePipe) {
                next();
                acc = Term::par_plain(acc, parse_lam_level());
            } else if (peek().tok == Tok::Pipe) {
                next();
                Token chan = expect_tok(Tok::Ident, "channel name");
                expect_tok(Tok::Colon, "':'");
                Formula kind = parse_formula();
                expect_tok(Tok::Pipe, "closing '|'");
                acc = Term::par_ch(chan.text, kind, acc, parse_lam_level());
            } else {
                return acc;
            }
        }
    }

    Term parse_lam_level() {
        const Token& tk = peek();
        if (tk.tok == Tok::Lambda) {
            next();
            Token binder = expect_tok(Tok::Ident, "binder name");
            expect_tok(Tok::Colon, "':'");
            Formula ann = parse_formula();
            expect_tok(Tok::Dot, "'.'");
            return Term::lam(binder.text, ann, parse_lam_level());
        }
        if (tk.tok == Tok::KwIf) {
            if (!bool_ext_)
                throw ParseError(tk.line, tk.col, "'if' requires 'extension bool'");
            next();
            Term c = parse_lam_level();
            expect_tok(Tok::KwThen, "'then'");
            Term t = parse_lam_level();
            expect_tok(Tok::KwElse, "'else'");
            Term e = parse_lam_level();
            return Term::ite(c, t, e);
        }
        return parse_app();
    }

    bool starts_primary(Tok t) const {
        switch (t) {
        case Tok::Ident: case Tok::KwTt: case Tok::KwEfq: case Tok::LParen:
        case Tok::Lt: case Tok::KwTrue: case Tok::KwFalse:
            return true;
        default:
            return false;
        }
    }

    Term parse_app() {
        Term acc = parse_primary();
        for (;;) {
            if (peek().tok == Tok::KwP0) { next(); acc = Term::proj(acc, 0); }
            else if (peek().tok == Tok::KwP1) { next(); acc = Term::proj(acc, 1); }
            else if (starts_primary(peek().tok)) acc = Term::app(acc, parse_primary());
            else return acc;
        }
    }

    Term parse_primary() {
        const Token& tk = peek();
        switch (tk.tok) {
        case Tok::Ident: next(); return Term::var(tk.text);
        case Tok::KwTt: next(); return Term::unit();
        case Tok::KwTrue:
            if (!bool_ext_) throw ParseError(tk.line, tk.col, "'T' requires 'extension bool'");
            next(); return Term::btrue();
        case Tok::KwFalse:
            if (!bool_ext_) throw ParseError(tk.line, tk.col, "'F' requires 'extension bool'");
            next(); return Term::bfalse();
        case Tok::KwEfq: {
            next();
            expect_tok(Tok::LBrack, "'['");
            Formula target = parse_formula();
            expect_tok(Tok::RBrack, "']'");
            return Term::efq(target, parse_primary());
        }
        case Tok::Lt: {
            next();
            std::vector<Term> elems;
            elems.push_back(parse_par());
            while (peek().tok == Tok::Comma) { next(); elems.push_back(parse_par()); }
            expect_tok(Tok::Gt, "'>'");
            if (elems.size() < 2)
                throw ParseError(tk.line, tk.col, "pair needs at least two components");
            return tuple_term(elems);
        }
        case Tok::LParen: {
            next();
            Term t = parse_par();
            expect_tok(Tok::RParen, "')'");
            return t;
        }
        default:
            throw ParseError(tk.line, tk.col, "expected a term, got '" + tk.text + "'");
        }
    }
};

inline Formula parse_formula(const std::string& src) {
    Parser p(src);
    Formula f = p.parse_formula();
    p.expect_end();
    return f;
}

inline Term parse_term(const std::string& src, bool bool_extension = false) {
    Parser p(src, bool_extension);
    Term t = p.parse_term();
    p.expect_end();
    return t;
}

inline Parser::Source parse_source(const std::string& src) {
    // The bool extension flag may appear after the terms that need it would
    // be rejected, so pre-scan for it.
    bool ext = src.find("extension") != std::string::npos;
    Parser p(src, ext);
    return p.parse_source();
}

} // namespace lamcl
