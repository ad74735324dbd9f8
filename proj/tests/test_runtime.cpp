#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "support/load.hpp"
#include "uglr/errors.hpp"
#include "uglr/parser.hpp"
#include "uglr/phases.hpp"
#include "uglr/tables.hpp"

using namespace uglr;
using testsup::load_fixture;

namespace {

ParseTables tables(const char* fx, TableMode mode = TableMode::SLR) {
    return compile_tables(load_fixture(fx), mode);
}

PhaseOneResult run(const ParseTables& t, const std::string& sentence, ParseOptions opts = {}) {
    return parse_phase1(t, split_words(sentence), opts);
}

std::multiset<std::string> renderings(const ParseTables& t, const PhaseOneResult& r) {
    std::multiset<std::string> out;
    for (const auto& tree : r.trees) out.insert(phase1_tree_to_string(t, tree));
    return out;
}

bool same_tree_sets(const PhaseOneResult& a, const PhaseOneResult& b) {
    if (a.trees.size() != b.trees.size()) return false;
    for (const auto& x : a.trees) {
        bool found = false;
        for (const auto& y : b.trees)
            if (same_skeleton(x, y)) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("unambiguous and ambiguous toy sentences") {
    ParseTables t = tables("toy.ug");

    PhaseOneResult r = run(t, "pron v");
    REQUIRE(r.trees.size() == 1);
    CHECK(phase1_tree_to_string(t, r.trees[0]) == "(s (np (pron \"pron\")) (vp (v \"v\")))");
    CHECK(!r.hit_step_limit);
    CHECK(r.stats.steps > 0);
    CHECK(r.stats.gap_pushes == 0);
    CHECK(r.stats.gap_pops == 0);

    // PP attaches to the object np or to the vp
    PhaseOneResult amb = run(t, "pron v det n prep det n");
    REQUIRE(amb.trees.size() == 2);
    CHECK(!same_skeleton(amb.trees[0], amb.trees[1]));
    std::multiset<std::string> want{
        "(s (np (pron \"pron\")) (vp (v \"v\") (np (np (det \"det\") (n \"n\")) "
        "(pp (prep \"prep\") (np (det \"det\") (n \"n\"))))))",
        "(s (np (pron \"pron\")) (vp (vp (v \"v\") (np (det \"det\") (n \"n\"))) "
        "(pp (prep \"prep\") (np (det \"det\") (n \"n\")))))"};
    CHECK(renderings(t, amb) == want);

    CHECK(run(t, "det det").trees.empty());
    CHECK(run(t, "").trees.empty());
    CHECK_THROWS_AS(run(t, "pron zzz v"), UnknownWordError);
    CHECK_THROWS_WITH_AS(run(t, "pron zzz v"), doctest::Contains("zzz"), UnknownWordError);
}

TEST_CASE("phase 1 accepts what only the full constraints reject") {
    ParseTables t = tables("agr.ug");
    CHECK(run(t, "the dog walks").trees.size() == 1);
    CHECK(run(t, "the dogs walk").trees.size() == 1);
    // np generalizes to np:[agr=_] so the mismatch slips through phase 1
    PhaseOneResult r = run(t, "the dogs walks");
    REQUIRE(r.trees.size() == 1);
    CHECK(phase_two(t, r.trees[0]).empty());
    CHECK(r.stats.filter_hits == 0);
}

TEST_CASE("exact rules filter during phase 1") {
    ParseTables t = tables("featured.ug");
    CHECK(run(t, "the dogs see the dog").trees.size() == 1);
    CHECK(run(t, "they sleep").trees.size() == 1);
    // every rule is single-source, so agreement is checked at reduce time
    PhaseOneResult r = run(t, "the dogs sleeps");
    CHECK(r.trees.empty());
    CHECK(r.stats.filter_hits > 0);
    CHECK(run(t, "they give the dog the dog").trees.size() == 1);
    CHECK(run(t, "they see").trees.empty());
}

TEST_CASE("a filler licenses exactly one trace") {
    ParseTables t = tables("movement.ug");

    PhaseOneResult r = run(t, "what does john seek");
    REQUIRE(r.trees.size() == 1);
    // the filler's val reaches the trace through the gap list
    CHECK(phase1_tree_to_string(t, r.trees[0]) ==
          "(q (wh:[val=thing] \"what\") (s (aux \"does\") (np:[val=john] (pn:[val=john] "
          "\"john\")) (vp (v \"seek\") (np:[val=thing] gap:maxproj))))");
    CHECK(r.stats.gap_pushes > 0);
    CHECK(r.stats.gap_pops > 0);

    CHECK(run(t, "does john seek").trees.empty());

    // filler pushed but never consumed: rejected at accept time
    PhaseOneResult leftover = run(t, "what does john seek john");
    CHECK(leftover.trees.empty());
    CHECK(leftover.stats.gap_pushes > 0);
}

TEST_CASE("verb and maxproj lists work independently") {
    ParseTables t = tables("movement2.ug");
    PhaseOneResult r = run(t, "what does john seek");
    REQUIRE(r.trees.size() == 1);
    std::string s = phase1_tree_to_string(t, r.trees[0]);
    CHECK(s.find("(ax:[f=do] gap:verb)") != std::string::npos);
    CHECK(s.find("(np:[val=thing] gap:maxproj)") != std::string::npos);
    CHECK(run(t, "does john seek").trees.empty());
    CHECK(run(t, "what does john seek john").trees.empty());
}

TEST_CASE("back-check modes trade phase-1 precision for work") {
    ParseTables t = tables("bc.ug");

    CHECK(run(t, "u b").trees.size() == 1);
    CHECK(run(t, "w b").trees.empty());

    ParseOptions off;
    off.back_check = BackCheckMode::Off;
    CHECK(run(t, "u b", off).trees.size() == 1);
    // without the prefix check the filler is pushed on the r4 path too
    PhaseOneResult spurious = run(t, "w b", off);
    REQUIRE(spurious.trees.size() == 1);
    CHECK(phase_two(t, spurious.trees[0]).empty());

    ParseOptions all;
    all.back_check = BackCheckMode::All;
    CHECK(run(t, "u b", all).trees.size() == 1);
    CHECK(run(t, "w b", all).trees.empty());
}

TEST_CASE("full back-check agrees with the default everywhere") {
    for (const char* fx : {"toy.ug", "agr.ug", "featured.ug", "movement.ug", "movement2.ug"}) {
        ParseTables t = tables(fx);
        const char* sentence = std::string(fx).front() == 't'   ? "pron v det n prep det n"
                               : std::string(fx).front() == 'a' ? "the dogs walks"
                               : std::string(fx).front() == 'f' ? "the dogs see the dog"
                                                                : "what does john seek";
        ParseOptions all;
        all.back_check = BackCheckMode::All;
        PhaseOneResult base = run(t, sentence);
        PhaseOneResult checked = run(t, sentence, all);
        INFO("fixture: ", fx);
        CHECK(same_tree_sets(base, checked));
    }
}

TEST_CASE("the gap machinery is what keeps the cyclic backbone finite") {
    ParseTables t = tables("cyc.ug");

    PhaseOneResult r = run(t, "z");
    REQUIRE(r.trees.size() == 1);
    CHECK(!r.hit_step_limit);
    CHECK(phase1_tree_to_string(t, r.trees[0]) == "(s (z \"z\") (p (g:[k=1] gap:maxproj)))");

    ParseOptions cf;
    cf.pure_cf = true;
    cf.max_steps = 20000;
    PhaseOneResult diverged = run(t, "z", cf);
    CHECK(diverged.hit_step_limit);
    CHECK(diverged.trees.size() > 1);  // ever-taller trees until the cutoff
    CHECK(diverged.stats.filter_hits == 0);
}

TEST_CASE("lookahead intersection prunes work but not solutions") {
    ParseTables t = tables("toy.ug");
    ParseOptions plain;
    plain.intersect_lookaheads = false;
    for (const char* sentence :
         {"pron v", "pron v det n prep det n", "det n v det n prep det n prep det n"}) {
        PhaseOneResult with = run(t, sentence);
        PhaseOneResult without = run(t, sentence, plain);
        INFO("sentence: ", sentence);
        CHECK(same_tree_sets(with, without));
        CHECK(without.stats.steps >= with.stats.steps);
    }
}

TEST_CASE("sharper lalr lookaheads cut steps on the assignment grammar") {
    ParseTables slr = tables("slrlalr.ug", TableMode::SLR);
    ParseTables lalr = tables("slrlalr.ug", TableMode::LALR);
    PhaseOneResult rs = run(slr, "x = x");
    PhaseOneResult rl = run(lalr, "x = x");
    REQUIRE(rs.trees.size() == 1);
    REQUIRE(rl.trees.size() == 1);
    CHECK(same_tree_sets(rs, rl));
    // SLR also explores the doomed reduce of r => l before the "="
    CHECK(rs.stats.steps > rl.stats.steps);
    CHECK(run(slr, "* x = x").trees.size() == 1);
    CHECK(run(lalr, "* x = x").trees.size() == 1);
}

TEST_CASE("full-source mode finds the same trees with more work") {
    for (const char* fx : {"multi.ug", "agr.ug"}) {
        ParseTables t = tables(fx);
        const char* sentence = std::string(fx) == "multi.ug" ? "the dogs bark" : "the dog walks";
        ParseOptions full;
        full.use_full_ug = true;
        PhaseOneResult gen = run(t, sentence);
        PhaseOneResult src = run(t, sentence, full);
        INFO("fixture: ", fx);
        REQUIRE(gen.trees.size() == 1);
        CHECK(same_tree_sets(gen, src));
        CHECK(src.stats.steps >= gen.stats.steps);
    }

    // source-by-source parsing is the stronger filter: what agr.ug's
    // generalization lets through dies during the parse here
    ParseTables t = tables("agr.ug");
    ParseOptions full;
    full.use_full_ug = true;
    CHECK(run(t, "the dogs walks").trees.size() == 1);
    CHECK(run(t, "the dogs walks", full).trees.empty());
}

TEST_CASE("search caps stop early without lying about it") {
    ParseTables t = tables("toy.ug");

    ParseOptions one;
    one.max_solutions = 1;
    PhaseOneResult first = run(t, "pron v det n prep det n", one);
    CHECK(first.trees.size() == 1);
    CHECK(first.stats.steps < run(t, "pron v det n prep det n").stats.steps);

    ParseOptions tiny;
    tiny.max_steps = 3;
    PhaseOneResult cut = run(t, "pron v det n prep det n", tiny);
    CHECK(cut.hit_step_limit);
    CHECK(cut.trees.empty());
}

TEST_CASE("pure backbone mode ignores every constraint") {
    ParseTables t = tables("agr.ug");
    ParseOptions cf;
    cf.pure_cf = true;
    PhaseOneResult r = run(t, "the dogs walks", cf);
    CHECK(r.trees.size() == 1);
    CHECK(r.stats.filter_hits == 0);
    // the featured grammar's subcategorization frames stop filtering too
    ParseTables t2 = tables("featured.ug");
    CHECK(run(t2, "the dogs sleeps", cf).trees.size() == 1);
    CHECK(run(t2, "they see", cf).trees.size() == 1);
}
