#include "uglr/grammar.hpp"

#include <algorithm>
#include <string>

namespace uglr {

std::size_t CategoryDecl::feature_index(const std::string& f) const {
    for (std::size_t i = 0; i < features.size(); ++i)
        if (features[i] == f) return i;
    return std::string::npos;
}

std::string CFSymbol::str() const { return term_to_string(term); }

CFSymbol cf_start() { return CFSymbol{Term::atom("$start")}; }
CFSymbol cf_end() { return CFSymbol{Term::atom("$end")}; }

const CategoryDecl* Grammar::find_category(const std::string& name) const {
    for (const CategoryDecl& c : categories)
        if (c.name == name) return &c;
    return nullptr;
}

const UGRule* Grammar::find_rule(const std::string& id) const {
    for (const UGRule& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

const std::vector<std::string>* Grammar::category_features(const std::string& name) const {
    const CategoryDecl* c = find_category(name);
    return c ? &c->features : nullptr;
}

CFSymbol map_to_cf(const Grammar& g, const Phrase& p) {
    const CategoryDecl* c = g.find_category(p.category);
    if (!c || c->distinguishing.empty()) return CFSymbol{Term::atom(p.category)};
    std::vector<Term> vals;
    vals.reserve(c->distinguishing.size());
    for (const std::string& f : c->distinguishing)
        vals.push_back(p.term.args()[c->feature_index(f)]);
    return CFSymbol{Term::compound(p.category, std::move(vals))};
}

std::vector<CFRule> build_backbone(const Grammar& g) {
    std::vector<CFRule> out;
    out.push_back(CFRule{0, cf_start(), {CFSymbol{Term::atom(g.top)}}, {}});
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const UGRule& r = g.rules[i];
        CFSymbol lhs = map_to_cf(g, r.lhs);
        std::vector<CFSymbol> rhs;
        rhs.reserve(r.rhs.size());
        for (const Phrase& p : r.rhs) rhs.push_back(map_to_cf(g, p));
        auto hit = std::find_if(out.begin(), out.end(), [&](const CFRule& c) {
            return c.lhs == lhs && c.rhs == rhs;
        });
        if (hit != out.end())
            hit->sources.push_back(i);
        else
            out.push_back(CFRule{static_cast<int>(out.size()), lhs, std::move(rhs), {i}});
    }
    return out;
}

Phrase most_general_phrase(const CategoryDecl& c) {
    if (c.features.empty()) return {c.name, Term::atom(c.name)};
    std::vector<Term> args;
    args.reserve(c.features.size());
    for (std::size_t i = 0; i < c.features.size(); ++i) args.push_back(fresh_var());
    return {c.name, Term::compound(c.name, std::move(args))};
}

std::vector<GeneralizedRule> generalize_rules(const Grammar& g,
                                              const std::vector<CFRule>& backbone) {
    std::vector<GeneralizedRule> out;
    out.reserve(backbone.size());
    for (const CFRule& cf : backbone) {
        GeneralizedRule gen;
        gen.cf_rule = cf.id;
        if (cf.sources.empty()) {  // augmented rule
            gen.lhs = Phrase{"$start", Term::atom("$start")};
            gen.rhs = {most_general_phrase(*g.find_category(g.top))};
            out.push_back(std::move(gen));
            continue;
        }
        // One lgg over the whole rule so that variable sharing between
        // positions (e.g. agr on LHS and RHS) survives exactly when all
        // sources share it.
        std::vector<Term> wrapped;
        wrapped.reserve(cf.sources.size());
        for (std::size_t src : cf.sources) {
            const UGRule& r = g.rules[src];
            std::vector<Term> parts{r.lhs.term};
            for (const Phrase& p : r.rhs) parts.push_back(p.term);
            wrapped.push_back(Term::compound("$rule", std::move(parts)));
        }
        Term folded = anti_unify_all(wrapped);
        gen.lhs = Phrase{cf.lhs.term.name(), folded.args()[0]};
        gen.rhs.reserve(cf.rhs.size());
        for (std::size_t i = 0; i < cf.rhs.size(); ++i)
            gen.rhs.push_back(Phrase{cf.rhs[i].term.name(), folded.args()[i + 1]});
        gen.exact = cf.sources.size() == 1;
        out.push_back(std::move(gen));
    }
    return out;
}

std::vector<GeneralizedLexeme> generalize_lexicon(const Grammar& g) {
    std::vector<GeneralizedLexeme> out;
    for (std::size_t i = 0; i < g.lexicon.size(); ++i) {
        const LexEntry& e = g.lexicon[i];
        CFSymbol cf = map_to_cf(g, e.phrase);
        auto hit = std::find_if(out.begin(), out.end(), [&](const GeneralizedLexeme& l) {
            return l.word == e.word && l.cf == cf;
        });
        if (hit != out.end())
            hit->sources.push_back(i);
        else
            out.push_back(GeneralizedLexeme{e.word, std::move(cf), {}, {i}, false});
    }
    for (GeneralizedLexeme& l : out) {
        std::vector<Term> ts;
        ts.reserve(l.sources.size());
        for (std::size_t src : l.sources) ts.push_back(g.lexicon[src].phrase.term);
        l.phrase = Phrase{g.lexicon[l.sources.front()].phrase.category, anti_unify_all(ts)};
        l.exact = l.sources.size() == 1;
    }
    std::sort(out.begin(), out.end(), [](const GeneralizedLexeme& a, const GeneralizedLexeme& b) {
        if (a.word != b.word) return a.word < b.word;
        return a.cf < b.cf;
    });
    return out;
}

}  // namespace uglr
