#include "uglr/term_io.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "lexer.hpp"
#include "uglr/errors.hpp"

namespace uglr {

namespace detail {

namespace {

Term read_sugared(Lexer& lx, VarScope& scope, const SugarContext* sugar, const Token& cat_tok) {
    if (!sugar)
        throw GrammarError("feature syntax \"" + cat_tok.text + ":[...]\" needs a category context",
                           cat_tok.line, cat_tok.col);
    const std::vector<std::string>* feats = sugar->category_features(cat_tok.text);
    if (!feats)
        throw GrammarError("undeclared category \"" + cat_tok.text + "\"", cat_tok.line,
                           cat_tok.col);
    lx.expect(Tok::LBracket, "\"[\"");
    std::vector<Term> args(feats->size());
    std::vector<bool> seen(feats->size(), false);
    if (!lx.accept(Tok::RBracket)) {
        for (;;) {
            Token ftok = lx.expect(Tok::Ident, "feature name");
            auto it = std::find(feats->begin(), feats->end(), ftok.text);
            if (it == feats->end())
                throw GrammarError("category \"" + cat_tok.text + "\" has no feature \"" +
                                       ftok.text + "\"",
                                   ftok.line, ftok.col);
            std::size_t idx = static_cast<std::size_t>(it - feats->begin());
            if (seen[idx])
                throw GrammarError("feature \"" + ftok.text + "\" set twice", ftok.line, ftok.col);
            seen[idx] = true;
            lx.expect(Tok::Eq, "\"=\"");
            args[idx] = read_term(lx, scope, sugar);
            if (lx.accept(Tok::RBracket)) break;
            lx.expect(Tok::Comma, "\",\" or \"]\"");
        }
    }
    // Unmentioned features are unconstrained.
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!seen[i]) args[i] = fresh_var();
    return Term::compound(cat_tok.text, std::move(args));
}

}  // namespace

Term read_term(Lexer& lx, VarScope& scope, const SugarContext* sugar) {
    Token head = lx.expect(Tok::Ident, "a term");
    if (is_var_name(head.text)) return scope.get(head.text);
    if (lx.peek().kind == Tok::Colon) {
        lx.next();
        return read_sugared(lx, scope, sugar, head);
    }
    if (!lx.accept(Tok::LParen)) return Term::atom(head.text);
    if (lx.accept(Tok::RParen))
        throw GrammarError("empty argument list; write the atom \"" + head.text + "\" instead",
                           head.line, head.col);
    std::vector<Term> args;
    for (;;) {
        args.push_back(read_term(lx, scope, sugar));
        if (lx.accept(Tok::RParen)) break;
        lx.expect(Tok::Comma, "\",\" or \")\"");
    }
    return Term::compound(head.text, std::move(args));
}

}  // namespace detail

Term parse_term(std::string_view text, const SugarContext* sugar) {
    detail::Lexer lx(text);
    detail::VarScope scope;
    Term t = detail::read_term(lx, scope, sugar);
    if (lx.peek().kind != detail::Tok::End)
        lx.fail("trailing input after term: \"" + detail::Lexer::describe(lx.peek()) + "\"");
    return t;
}

namespace {

void render(const Term& t, const SugarContext* sugar, std::string& out) {
    if (t.is_var()) {
        out += t.name();
        return;
    }
    if (sugar && t.arity() > 0) {
        const std::vector<std::string>* feats = sugar->category_features(t.name());
        if (feats && feats->size() == t.arity()) {
            out += t.name();
            out += ":[";
            for (std::size_t i = 0; i < feats->size(); ++i) {
                if (i) out += ',';
                out += (*feats)[i];
                out += '=';
                render(t.args()[i], sugar, out);
            }
            out += ']';
            return;
        }
    }
    out += t.name();
    if (t.arity() == 0) return;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        render(t.args()[i], sugar, out);
    }
    out += ')';
}

}  // namespace

std::string term_to_string(const Term& t, const SugarContext* sugar) {
    std::string out;
    render(t, sugar, out);
    return out;
}

std::string terms_to_string(const std::vector<Term>& ts, const SugarContext* sugar,
                            const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += sep;
        render(ts[i], sugar, out);
    }
    return out;
}

}  // namespace uglr
