#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "support/load.hpp"
#include "uglr/errors.hpp"
#include "uglr/grammar.hpp"
#include "uglr/term_io.hpp"

using namespace uglr;
using testsup::load_fixture;

namespace {

void rejects(const std::string& src, const std::string& needle) {
    try {
        load_grammar(src);
        FAIL_CHECK("accepted bad grammar, wanted error containing \"", needle, "\"");
    } catch (const GrammarError& e) {
        std::string what = e.what();
        INFO("error was: ", what);
        CHECK(what.find(needle) != std::string::npos);
    }
}

std::string cf_str(const CFRule& r) {
    std::string out = r.lhs.str() + " ->";
    for (const CFSymbol& s : r.rhs) out += " " + s.str();
    return out;
}

Term wrap_rule(const Phrase& lhs, const std::vector<Phrase>& rhs) {
    std::vector<Term> parts{lhs.term};
    for (const Phrase& p : rhs) parts.push_back(p.term);
    return Term::compound("$rule", std::move(parts));
}

}  // namespace

TEST_CASE("toy grammar loads") {
    Grammar g = load_fixture("toy.ug");
    CHECK(g.top == "s");
    CHECK(g.categories.size() == 9);
    CHECK(g.rules.size() == 9);
    CHECK(g.lexicon.size() == 5);
    CHECK(g.find_rule("r4") != nullptr);
    CHECK(g.find_rule("r10") == nullptr);
    CHECK(g.find_category("pp") != nullptr);
}

TEST_CASE("toy backbone is the nine rules in authored order") {
    Grammar g = load_fixture("toy.ug");
    auto bb = build_backbone(g);
    REQUIRE(bb.size() == 10);
    CHECK(cf_str(bb[0]) == "$start -> s");
    const char* expect[] = {
        "s -> np vp", "np -> det n", "np -> pron", "np -> np pp", "vp -> v",
        "vp -> v np", "vp -> v np np", "vp -> vp pp", "pp -> prep np",
    };
    for (int i = 1; i <= 9; ++i) {
        CHECK(bb[i].id == i);
        CHECK(cf_str(bb[i]) == expect[i - 1]);
        CHECK(bb[i].sources == std::vector<std::size_t>{static_cast<std::size_t>(i - 1)});
    }
}

TEST_CASE("same CF image merges into one backbone rule") {
    Grammar g = load_fixture("agr.ug");
    auto bb = build_backbone(g);
    REQUIRE(bb.size() == 4);
    CHECK(cf_str(bb[2]) == "np -> det n");
    CHECK(bb[2].sources == std::vector<std::size_t>{1, 2});
}

TEST_CASE("source partition property") {
    for (const char* f : {"toy.ug", "agr.ug", "featured.ug", "vsplit.ug"}) {
        Grammar g = load_fixture(f);
        auto bb = build_backbone(g);
        std::set<std::size_t> seen;
        for (const CFRule& r : bb)
            for (std::size_t s : r.sources) CHECK(seen.insert(s).second);
        CHECK(seen.size() == g.rules.size());
    }
}

TEST_CASE("map_to_cf: functor only unless distinguished") {
    Grammar g = load_fixture("featured.ug");
    CHECK(map_to_cf(g, g.rules[4].rhs[0]).str() == "v");  // r5's verb, sub not distinguished

    Grammar d = load_fixture("vsplit.ug");
    CHECK(map_to_cf(d, d.rules[4].rhs[0]).str() == "v(intran)");
    CHECK(map_to_cf(d, d.rules[5].rhs[0]).str() == "v(tran)");
    CHECK(map_to_cf(d, d.rules[6].rhs[0]).str() == "v(ditran)");
    CHECK(map_to_cf(d, d.rules[0].lhs).str() == "s");
}

TEST_CASE("map_to_cf is stable under instantiation") {
    Grammar d = load_fixture("vsplit.ug");
    std::mt19937_64 rng(7);
    const char* pool[] = {"sg3", "pl3", "x", "y"};
    std::uniform_int_distribution<int> pick(0, 3);
    int done = 0;
    for (int round = 0; done < 1000; ++round) {
        const CategoryDecl& c = d.categories[round % d.categories.size()];
        std::vector<Term> args;
        std::vector<std::string> open;
        for (const std::string& f : c.features) {
            bool dist =
                std::find(c.distinguishing.begin(), c.distinguishing.end(), f) != c.distinguishing.end();
            if (!dist && pick(rng) < 2) {
                std::string v = "V" + std::to_string(args.size());
                open.push_back(v);
                args.push_back(Term::var(v));
            } else {
                args.push_back(Term::atom(pool[pick(rng)]));
            }
        }
        Phrase p{c.name, args.empty() ? Term::atom(c.name) : Term::compound(c.name, args)};
        Substitution sigma;
        for (const std::string& v : open) sigma.bind(v, Term::atom(pool[pick(rng)]));
        Phrase q{p.category, sigma(p.term)};
        CHECK(map_to_cf(d, p) == map_to_cf(d, q));
        ++done;
    }
}

TEST_CASE("generalized rule: the lgg keeps sharing exactly where sources agree") {
    // multi.ug: sg/sg, pl/pl, mass/mass disagree identically on the LHS
    // and the noun, so the lgg links them with one variable
    Grammar m = load_fixture("multi.ug");
    auto mbb = build_backbone(m);
    auto mgen = generalize_rules(m, mbb);
    const GeneralizedRule& mnp = mgen[2];  // np -> d n, three sources
    CHECK_FALSE(mnp.exact);
    REQUIRE(mnp.rhs.size() == 2);
    Term shared = mnp.lhs.term.args()[0];
    CHECK(shared.is_var());
    CHECK(shared == mnp.rhs[1].term.args()[0]);

    // agr.ug: sg3/pl3 upstairs but s/p on the noun, different pairs, so
    // the link is severed — that loss is what phase 1 cannot check
    Grammar g = load_fixture("agr.ug");
    auto bb = build_backbone(g);
    auto gen = generalize_rules(g, bb);
    REQUIRE(gen.size() == bb.size());

    const GeneralizedRule& np = gen[2];  // np -> det n, two sources
    CHECK_FALSE(np.exact);
    REQUIRE(np.rhs.size() == 2);
    Term lhs_agr = np.lhs.term.args()[0];
    CHECK(lhs_agr.is_var());
    CHECK(np.rhs[1].term.args()[0].is_var());
    CHECK(lhs_agr != np.rhs[1].term.args()[0]);
    for (std::size_t src : bb[2].sources)
        CHECK(subsumes(wrap_rule(np.lhs, np.rhs),
                       wrap_rule(g.rules[src].lhs, g.rules[src].rhs)));

    const GeneralizedRule& s = gen[1];
    CHECK(s.exact);
    CHECK(variant_equal(wrap_rule(s.lhs, s.rhs), wrap_rule(g.rules[0].lhs, g.rules[0].rhs)));
}

TEST_CASE("generalized rules subsume all their sources") {
    for (const char* f : {"toy.ug", "agr.ug", "featured.ug", "vsplit.ug"}) {
        Grammar g = load_fixture(f);
        auto bb = build_backbone(g);
        auto gen = generalize_rules(g, bb);
        for (const CFRule& cf : bb)
            for (std::size_t src : cf.sources)
                CHECK(subsumes(wrap_rule(gen[cf.id].lhs, gen[cf.id].rhs),
                               wrap_rule(g.rules[src].lhs, g.rules[src].rhs)));
    }
}

TEST_CASE("the three verb frames fold to v:[agr=_,sub=_]") {
    Grammar g = load_fixture("featured.ug");
    Term fold = anti_unify_all({g.rules[4].rhs[0].term,   // v:[agr=A,sub=intran]
                               g.rules[5].rhs[0].term,    // v:[agr=A,sub=tran]
                               g.rules[6].rhs[0].term});  // v:[agr=A,sub=ditran]
    CHECK(variant_equal(fold, parse_term("v:[agr=_,sub=_]", &g)));
    CHECK(term_to_string(canonical_form(fold), &g) == "v:[agr=_0,sub=_1]");
}

TEST_CASE("distinguished verbs give three exact VP rules") {
    Grammar d = load_fixture("vsplit.ug");
    auto bb = build_backbone(d);
    auto gen = generalize_rules(d, bb);
    int vp_rules = 0;
    for (const CFRule& cf : bb)
        if (cf.id != 0 && cf.lhs.str() == "vp" && !cf.rhs.empty() && cf.rhs[0].term.name() == "v") {
            ++vp_rules;
            CHECK(cf.sources.size() == 1);
            CHECK(gen[cf.id].exact);
        }
    CHECK(vp_rules == 3);
}

TEST_CASE("lexicon generalization groups by (word, cf)") {
    Grammar d = load_fixture("vsplit.ug");
    auto lex = generalize_lexicon(d);
    std::vector<const GeneralizedLexeme*> walks;
    for (const GeneralizedLexeme& l : lex)
        if (l.word == "walks") walks.push_back(&l);
    REQUIRE(walks.size() == 2);  // v(intran) and v(tran), distinct CF symbols
    CHECK(walks[0]->cf.str() == "v(intran)");
    CHECK(walks[1]->cf.str() == "v(tran)");
    CHECK(walks[0]->exact);
    CHECK(walks[1]->exact);
}

TEST_CASE("same-CF lexical ambiguity folds into one open lexeme") {
    Grammar g = load_grammar(R"(
        category s.
        category n features [agr].
        top s.
        rule r: s => [n:[agr=A]].
        lex "fish": n:[agr=sg].
        lex "fish": n:[agr=pl].
    )");
    auto lex = generalize_lexicon(g);
    REQUIRE(lex.size() == 1);
    CHECK(lex[0].sources == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(lex[0].exact);
    CHECK(lex[0].phrase.term.args()[0].is_var());
    for (std::size_t src : lex[0].sources)
        CHECK(subsumes(lex[0].phrase.term, g.lexicon[src].phrase.term));
}

TEST_CASE("bare category name means fully unconstrained") {
    Grammar g = load_grammar(R"(
        category s.
        category n features [agr,case].
        top s.
        rule r: s => [n].
        lex "x": n:[agr=sg].
    )");
    const Phrase& p = g.rules[0].rhs[0];
    REQUIRE(p.term.arity() == 2);
    CHECK(p.term.args()[0].is_var());
    CHECK(p.term.args()[1].is_var());
    CHECK(p.term.args()[0] != p.term.args()[1]);
    // lex entry left case open too
    CHECK(g.lexicon[0].phrase.term.args()[1].is_var());
}

TEST_CASE("grammar is its own sugar context") {
    Grammar g = load_fixture("featured.ug");
    CHECK(term_to_string(g.rules[4].rhs[0].term, &g) == "v:[agr=A,sub=intran]");
    CHECK(term_to_string(g.lexicon[0].phrase.term, &g) == "pron:[agr=sg3]");
}

TEST_CASE("gap roles parse") {
    Grammar g = load_grammar(R"(
        category s.
        category np features [agr].
        category wh.
        category v.
        top s.
        rule top1: s => [v].
        rule whq: s => [wh, s] adds maxproj np:[agr=_].
        rule gap_np: np:[agr=A] => [] consumes maxproj.
        lex "what": wh.
        lex "ran": v.
    )");
    const UGRule* whq = g.find_rule("whq");
    REQUIRE(whq);
    CHECK(whq->gap.kind == GapKind::Adds);
    CHECK(whq->gap.tag == "maxproj");
    REQUIRE(whq->gap.phrase);
    CHECK(whq->gap.phrase->category == "np");
    const UGRule* gap = g.find_rule("gap_np");
    REQUIRE(gap);
    CHECK(gap->gap.kind == GapKind::Consumes);
    CHECK(gap->rhs.empty());
}

TEST_CASE("validation rejects bad grammars") {
    const std::string ok =
        "category s. category a. top s. rule r0: s => [a]. lex \"a\": a.\n";

    rejects(ok + "rule bad: s => [b].", "undeclared category");
    rejects(ok + "category v features [sub] distinguish [sub]. rule bad: s => [v:[sub=S]].",
            "not ground");
    rejects(ok + "category np features []. rule bad: np => [].", "empty production without");
    rejects(ok + "rule bad: s => [a] consumes maxproj.", "consumes is only valid");
    rejects(ok + "category np. rule bad: np => [] consumes foo.", "gap list tag");
    rejects(ok + "rule r0: s => [a, a].", "defined twice");
    rejects(ok + "category s.", "declared twice");
    rejects("category s. rule r: s => [s].", "no top declaration");
    rejects("category a. top s. rule r: a => [a]. lex \"a\": a.", "is not declared");
    rejects("category s features [k] distinguish [k]. top s. rule r: s:[k=x] => [s:[k=x]].",
            "cannot have distinguishing");
    rejects(ok + "lex \"s\": s.", "must not overlap");
    rejects("category s. category a. top s. rule r0: s => [a].", "nothing derives");
    rejects(ok + "rule b: s => [a] sem m(X).", "sem term");
    rejects(ok + "category np features [agr]."
                 "rule g1: np:[agr=A] => [] consumes maxproj."
                 "rule g2: np:[agr=pl] => [] consumes verb.",
            "different gap lists");
    rejects(ok + "category n features [agr]. rule b: s => [n(x,y)].", "1 feature(s)");
    rejects("category s. category a. top s. lex \"a\": a.", "no rule derives the top");
    rejects(ok + "rule b: s => [a]", "\".\"");
    rejects(ok + "category n features [a] distinguish [b].", "is not a feature of");
    rejects(ok + "rule b: s => [X].", "cannot be a variable");
    rejects(ok + "category $x.", "reserved");
    rejects(ok + "frobnicate s.", "expected category, top, rule, or lex");
    rejects(ok + "category n features [q,q].", "duplicate feature");
    rejects(ok + "top s.", "top declared twice");
    rejects(ok + "lex \"\": a.", "empty word");
}

TEST_CASE("error locations point at the offending line") {
    try {
        load_grammar("category s.\ncategory a.\ntop s.\nrule r0: s => [zzz].\nlex \"a\": a.");
        FAIL("no throw");
    } catch (const GrammarError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("load_grammar_file names the file in errors") {
    CHECK_THROWS_WITH_AS(load_grammar_file("/nonexistent/x.ug"),
                         doctest::Contains("/nonexistent/x.ug"), GrammarError);
}
