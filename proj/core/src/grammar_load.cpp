#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexer.hpp"
#include "uglr/errors.hpp"
#include "uglr/grammar.hpp"

namespace uglr {

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;
using detail::VarScope;

bool accept_kw(Lexer& lx, const char* kw) {
    if (lx.peek().kind != Tok::Ident || lx.peek().text != kw) return false;
    lx.next();
    return true;
}

void check_name(const Token& t, const char* what) {
    if (detail::is_var_name(t.text))
        throw GrammarError(std::string(what) + " \"" + t.text + "\" must start with a lowercase letter",
                           t.line, t.col);
    if (t.text[0] == '$')
        throw GrammarError("names starting with \"$\" are reserved", t.line, t.col);
}

std::vector<std::string> read_name_list(Lexer& lx) {
    lx.expect(Tok::LBracket, "\"[\"");
    std::vector<std::string> out;
    if (lx.accept(Tok::RBracket)) return out;
    for (;;) {
        Token t = lx.expect(Tok::Ident, "a name");
        out.push_back(t.text);
        if (lx.accept(Tok::RBracket)) break;
        lx.expect(Tok::Comma, "\",\" or \"]\"");
    }
    return out;
}

Phrase read_phrase(Lexer& lx, VarScope& scope, const Grammar& g) {
    Token at = lx.peek();
    Term t = detail::read_term(lx, scope, &g);
    if (t.is_var()) throw GrammarError("a phrase cannot be a variable", at.line, at.col);
    const CategoryDecl* c = g.find_category(t.name());
    if (!c) throw GrammarError("undeclared category \"" + t.name() + "\"", at.line, at.col);
    if (t.is_atom() && !c->features.empty()) {
        // Bare category name: all features unconstrained.
        std::vector<Term> args;
        args.reserve(c->features.size());
        for (std::size_t i = 0; i < c->features.size(); ++i) args.push_back(fresh_var());
        t = Term::compound(t.name(), std::move(args));
    }
    if (t.arity() != c->features.size())
        throw GrammarError("category \"" + c->name + "\" has " +
                               std::to_string(c->features.size()) + " feature(s) but the phrase has " +
                               std::to_string(t.arity()) + " argument(s)",
                           at.line, at.col);
    return Phrase{t.name(), t};
}

void check_distinguishing_ground(const Grammar& g, const Phrase& p, const std::string& owner,
                                 std::size_t line) {
    const CategoryDecl* c = g.find_category(p.category);
    for (const std::string& f : c->distinguishing)
        if (!p.term.args()[c->feature_index(f)].ground())
            throw GrammarError("distinguishing feature \"" + f + "\" not ground in " + owner, line);
}

void read_category(Lexer& lx, Grammar& g) {
    Token name = lx.expect(Tok::Ident, "a category name");
    check_name(name, "category");
    if (g.find_category(name.text))
        throw GrammarError("category \"" + name.text + "\" declared twice", name.line, name.col);
    CategoryDecl d;
    d.name = name.text;
    d.line = name.line;
    if (accept_kw(lx, "features")) d.features = read_name_list(lx);
    for (std::size_t i = 0; i < d.features.size(); ++i)
        for (std::size_t j = i + 1; j < d.features.size(); ++j)
            if (d.features[i] == d.features[j])
                throw GrammarError("duplicate feature \"" + d.features[i] + "\"", name.line);
    if (accept_kw(lx, "distinguish")) {
        std::vector<std::string> dist = read_name_list(lx);
        for (const std::string& f : dist) {
            if (d.feature_index(f) == std::string::npos)
                throw GrammarError("distinguishing feature \"" + f + "\" is not a feature of \"" +
                                       d.name + "\"",
                                   name.line);
            if (std::count(dist.begin(), dist.end(), f) != 1)
                throw GrammarError("duplicate distinguishing feature \"" + f + "\"", name.line);
        }
        // keep declared feature order
        for (const std::string& f : d.features)
            if (std::find(dist.begin(), dist.end(), f) != dist.end()) d.distinguishing.push_back(f);
    }
    g.categories.push_back(std::move(d));
}

void read_rule(Lexer& lx, Grammar& g) {
    Token id = lx.expect(Tok::Ident, "a rule id");
    if (g.find_rule(id.text))
        throw GrammarError("rule \"" + id.text + "\" defined twice", id.line, id.col);
    lx.expect(Tok::Colon, "\":\"");
    UGRule r;
    r.id = id.text;
    r.line = id.line;
    VarScope scope;
    r.lhs = read_phrase(lx, scope, g);
    lx.expect(Tok::Arrow, "\"=>\"");
    lx.expect(Tok::LBracket, "\"[\"");
    if (!lx.accept(Tok::RBracket)) {
        for (;;) {
            r.rhs.push_back(read_phrase(lx, scope, g));
            if (lx.accept(Tok::RBracket)) break;
            lx.expect(Tok::Comma, "\",\" or \"]\"");
        }
    }
    if (accept_kw(lx, "adds")) {
        Token tag = lx.expect(Tok::Ident, "a gap list tag");
        if (tag.text != kGapVerb && tag.text != kGapMaxproj)
            throw GrammarError("gap list tag must be \"verb\" or \"maxproj\"", tag.line, tag.col);
        r.gap = GapRole{GapKind::Adds, tag.text, read_phrase(lx, scope, g)};
    } else if (accept_kw(lx, "consumes")) {
        Token tag = lx.expect(Tok::Ident, "a gap list tag");
        if (tag.text != kGapVerb && tag.text != kGapMaxproj)
            throw GrammarError("gap list tag must be \"verb\" or \"maxproj\"", tag.line, tag.col);
        r.gap = GapRole{GapKind::Consumes, tag.text, std::nullopt};
    }
    if (accept_kw(lx, "sem")) r.sem = detail::read_term(lx, scope, &g);

    std::string owner = "rule \"" + r.id + "\"";
    if (r.rhs.empty() && r.gap.kind != GapKind::Consumes)
        throw GrammarError("empty production without a consumes tag in " + owner, r.line);
    if (r.gap.kind == GapKind::Consumes && !r.rhs.empty())
        throw GrammarError("consumes is only valid on an empty production in " + owner, r.line);
    if (r.sem && r.sem->arity() != r.rhs.size() + 1)
        throw GrammarError("sem term in " + owner + " needs arity " +
                               std::to_string(r.rhs.size() + 1) +
                               " (mother slot, then one slot per daughter)",
                           r.line);
    check_distinguishing_ground(g, r.lhs, owner, r.line);
    for (const Phrase& p : r.rhs) check_distinguishing_ground(g, p, owner, r.line);
    if (r.gap.phrase) check_distinguishing_ground(g, *r.gap.phrase, owner, r.line);
    g.rules.push_back(std::move(r));
}

void read_lex(Lexer& lx, Grammar& g) {
    Token word = lx.expect(Tok::String, "a quoted word");
    if (word.text.empty()) throw GrammarError("empty word", word.line, word.col);
    if (word.text.find(' ') != std::string::npos || word.text.find('\t') != std::string::npos)
        throw GrammarError("a word cannot contain whitespace", word.line, word.col);
    lx.expect(Tok::Colon, "\":\"");
    LexEntry e;
    e.word = word.text;
    e.line = word.line;
    VarScope scope;
    e.phrase = read_phrase(lx, scope, g);
    if (accept_kw(lx, "sem")) e.sem = detail::read_term(lx, scope, &g);
    check_distinguishing_ground(g, e.phrase, "lexical entry \"" + e.word + "\"", e.line);
    g.lexicon.push_back(std::move(e));
}

void validate_whole(const Grammar& g, std::size_t top_line) {
    if (g.top.empty()) throw GrammarError("no top declaration");
    const CategoryDecl* top = g.find_category(g.top);
    if (!top) throw GrammarError("top category \"" + g.top + "\" is not declared", top_line);
    if (!top->distinguishing.empty())
        throw GrammarError("the top category cannot have distinguishing features", top_line);

    std::set<CFSymbol> rule_lhs, lexical;
    for (const UGRule& r : g.rules) rule_lhs.insert(map_to_cf(g, r.lhs));
    for (const LexEntry& e : g.lexicon) {
        CFSymbol cf = map_to_cf(g, e.phrase);
        if (rule_lhs.count(cf))
            throw GrammarError("\"" + e.word + "\" maps to \"" + cf.str() +
                                   "\", which is also a rule LHS; lexical and phrasal symbols "
                                   "must not overlap",
                               e.line);
        lexical.insert(cf);
    }
    if (!rule_lhs.count(CFSymbol{Term::atom(g.top)}))
        throw GrammarError("no rule derives the top category \"" + g.top + "\"", top_line);
    for (const UGRule& r : g.rules)
        for (const Phrase& p : r.rhs) {
            CFSymbol cf = map_to_cf(g, p);
            if (!rule_lhs.count(cf) && !lexical.count(cf))
                throw GrammarError("nothing derives \"" + cf.str() + "\" in rule \"" + r.id +
                                       "\" (no rule LHS or lexical entry maps to it)",
                                   r.line);
        }
    // The runtime applies empty productions per CF rule, so all sources of
    // one CF image must agree on which list they consume.
    for (const UGRule& a : g.rules)
        for (const UGRule& b : g.rules)
            if (a.rhs.empty() && b.rhs.empty() && map_to_cf(g, a.lhs) == map_to_cf(g, b.lhs) &&
                a.gap.tag != b.gap.tag)
                throw GrammarError("empty productions \"" + a.id + "\" and \"" + b.id +
                                       "\" share a CF symbol but consume different gap lists",
                                   b.line);
}

}  // namespace

Grammar load_grammar(std::string_view source) {
    Lexer lx(source);
    Grammar g;
    std::size_t top_line = 0;
    while (lx.peek().kind != Tok::End) {
        Token head = lx.expect(Tok::Ident, "a statement (category, top, rule, or lex)");
        if (head.text == "category") {
            read_category(lx, g);
        } else if (head.text == "top") {
            Token name = lx.expect(Tok::Ident, "a category name");
            if (!g.top.empty()) throw GrammarError("top declared twice", name.line, name.col);
            check_name(name, "category");
            g.top = name.text;
            top_line = name.line;
        } else if (head.text == "rule") {
            read_rule(lx, g);
        } else if (head.text == "lex") {
            read_lex(lx, g);
        } else {
            throw GrammarError("expected category, top, rule, or lex, got \"" + head.text + "\"",
                               head.line, head.col);
        }
        lx.expect(Tok::Dot, "\".\" at the end of the statement");
    }
    validate_whole(g, top_line);
    return g;
}

Grammar load_grammar_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GrammarError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_grammar(buf.str());
    } catch (const GrammarError& e) {
        throw GrammarError(path + ": " + e.what());
    }
}

}  // namespace uglr
