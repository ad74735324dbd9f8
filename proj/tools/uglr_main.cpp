#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uglr/errors.hpp"
#include "uglr/grammar.hpp"
#include "uglr/oracle.hpp"
#include "uglr/parser.hpp"
#include "uglr/phases.hpp"
#include "uglr/tables.hpp"

using namespace uglr;

namespace {

// 0 ok; then one code per failure family so scripts can tell them apart
constexpr int kNoSolution = 1;
constexpr int kLexical = 2;
constexpr int kStepLimit = 3;
constexpr int kBadGrammar = 4;
constexpr int kIo = 5;
constexpr int kBadTables = 6;
constexpr int kUsage = 64;

struct Fail {
    int code;
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Fail{kIo, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Fail{kIo, "cannot read " + path};
    return ss.str();
}

TableMode mode_of(const std::string& name) {
    return name == "lalr" ? TableMode::LALR : TableMode::SLR;
}

// A table file starts with its magic; anything else is grammar source.
ParseTables load_input(const std::string& path, const std::string& mode) {
    std::string text = slurp(path);
    if (text.rfind("uglr-tables", 0) == 0) {
        try {
            return deserialize_tables(text);
        } catch (const TableError& e) {
            throw Fail{kBadTables, path + ": " + e.what()};
        }
    }
    try {
        return compile_tables(load_grammar(text), mode_of(mode));
    } catch (const GrammarError& e) {
        throw Fail{kBadGrammar, path + ": " + e.what()};
    }
}

std::vector<std::string> gather_sentences(const std::vector<std::string>& args) {
    if (!args.empty()) return args;
    std::vector<std::string> out;
    std::string line;
    while (std::getline(std::cin, line)) {
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos || line[a] == '#') continue;
        out.push_back(line);
    }
    return out;
}

void bump(int& worst, int code) {
    if (code > worst) worst = code;
}

struct ParseCmd {
    std::string input;
    std::vector<std::string> sentences;
    std::string mode = "slr";
    std::string back_check = "gaps";
    int phase = 3;
    std::size_t max_steps = 1'000'000;
    std::size_t max_solutions = 0;
    bool no_intersect = false;
    bool full_ug = false;
    bool pure_cf = false;
    bool dedupe = false;
    bool trees = false;

    int run() const {
        ParseTables t = load_input(input, mode);
        ParseOptions opts;
        opts.max_steps = max_steps;
        opts.max_solutions = max_solutions;
        opts.back_check = back_check == "off"   ? BackCheckMode::Off
                          : back_check == "all" ? BackCheckMode::All
                                                : BackCheckMode::Gaps;
        opts.intersect_lookaheads = !no_intersect;
        opts.use_full_ug = full_ug;
        opts.pure_cf = pure_cf;

        int worst = 0;
        for (const std::string& sentence : gather_sentences(sentences)) {
            auto t0 = std::chrono::steady_clock::now();
            PhaseOneResult r;
            try {
                r = parse_phase1(t, split_words(sentence), opts);
            } catch (const UnknownWordError& e) {
                std::cerr << "error: " << e.what() << "\n";
                bump(worst, kLexical);
                continue;
            }
            std::size_t solutions = r.trees.size();
            std::vector<std::string> lines;
            if (phase == 1) {
                if (trees)
                    for (const auto& tree : r.trees) lines.push_back(phase1_tree_to_string(t, tree));
            } else {
                std::vector<Analysis> all;
                for (const auto& tree : r.trees)
                    for (Analysis& a : phase == 2 ? phase_two(t, tree) : phase_three(t, tree))
                        all.push_back(std::move(a));
                if (dedupe) dedupe_analyses(all);
                solutions = all.size();
                if (trees)
                    for (const Analysis& a : all) lines.push_back(analysis_tree_to_string(t, a));
            }
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                            .count();
            for (const std::string& line : lines) std::cout << line << "\n";
            std::printf(
                "# sentence=\"%s\" mode=%s phase=%d solutions=%zu steps=%zu backtracks=%zu "
                "filter_hits=%zu gap_pushes=%zu gap_pops=%zu elapsed_ms=%.3f\n",
                sentence.c_str(), to_string(t.mode).c_str(), phase, solutions, r.stats.steps,
                r.stats.backtracks, r.stats.filter_hits, r.stats.gap_pushes, r.stats.gap_pops, ms);
            if (r.hit_step_limit)
                bump(worst, kStepLimit);
            else if (solutions == 0)
                bump(worst, kNoSolution);
        }
        return worst;
    }
};

struct CompileCmd {
    std::string grammar;
    std::string output;
    std::string mode = "slr";

    int run() const {
        std::string text = slurp(grammar);
        ParseTables t;
        try {
            t = compile_tables(load_grammar(text), mode_of(mode));
        } catch (const GrammarError& e) {
            throw Fail{kBadGrammar, grammar + ": " + e.what()};
        }
        std::string out = output;
        if (out.empty())
            out = std::filesystem::path(grammar).replace_extension(".uglrt").string();
        std::ofstream f(out, std::ios::binary);
        f << serialize_tables(t);
        f.close();
        if (!f) throw Fail{kIo, "cannot write " + out};
        std::printf("%s: %zu states, %zu transitions, %zu reduce entries, %zu gap adds -> %s\n",
                    grammar.c_str(), t.states.size(), t.transitions.size(), t.reduces.size(),
                    t.gap_adds.size(), out.c_str());
        return 0;
    }
};

struct DumpCmd {
    std::string input;
    std::string mode = "slr";

    int run() const {
        std::cout << dump_states(load_input(input, mode));
        return 0;
    }
};

struct OracleCmd {
    std::string input;
    std::vector<std::string> sentences;
    std::string mode = "slr";
    std::size_t node_budget = 0;

    int run() const {
        ParseTables t = load_input(input, mode);
        int worst = 0;
        for (const std::string& sentence : gather_sentences(sentences)) {
            std::vector<std::string> words = split_words(sentence);
            PhaseOneResult pr;
            OracleResult orc;
            try {
                pr = parse_phase1(t, words);
                orc = oracle_parse(t, words, OracleOptions{node_budget});
            } catch (const UnknownWordError& e) {
                std::cerr << "error: " << e.what() << "\n";
                bump(worst, kLexical);
                continue;
            }
            auto keep_valid = [&](const std::vector<PhaseOneNode::Ptr>& in) {
                std::vector<PhaseOneNode::Ptr> out;
                for (const auto& tree : in)
                    if (!phase_two(t, tree).empty()) out.push_back(tree);
                return out;
            };
            std::vector<PhaseOneNode::Ptr> pv = keep_valid(pr.trees);
            std::vector<PhaseOneNode::Ptr> ov = keep_valid(orc.trees);
            bool match = pv.size() == ov.size();
            for (const auto& x : pv) {
                bool found = false;
                for (const auto& y : ov)
                    if (same_skeleton(x, y)) found = true;
                match = match && found;
            }
            std::printf("# sentence=\"%s\" pipeline=%zu oracle=%zu match=%s incomplete=%s\n",
                        sentence.c_str(), pv.size(), ov.size(), match ? "yes" : "no",
                        orc.possibly_incomplete ? "yes" : "no");
            if (!match) bump(worst, kNoSolution);
            if (pr.hit_step_limit) bump(worst, kStepLimit);
        }
        return worst;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LR parsing for unification grammars"};
    app.require_subcommand(1);

    ParseCmd parse;
    CLI::App* p = app.add_subcommand("parse", "parse sentences and print solution counts");
    p->add_option("input", parse.input, "grammar source or compiled table file")->required();
    p->add_option("sentence", parse.sentences, "sentences (read from stdin when omitted)");
    p->add_option("--mode", parse.mode, "lookahead construction for grammar input")
        ->check(CLI::IsMember({"slr", "lalr"}));
    p->add_option("--phase", parse.phase,
                  "1 = backbone trees, 2 = full syntax, 3 = syntax plus semantics")
        ->check(CLI::Range(1, 3));
    p->add_option("--back-check", parse.back_check, "stack prefix checking")
        ->check(CLI::IsMember({"all", "gaps", "off"}));
    p->add_option("--max-steps", parse.max_steps, "abort the search after this many actions");
    p->add_option("--max-solutions", parse.max_solutions, "stop after this many trees (0 = all)");
    p->add_flag("--no-intersect", parse.no_intersect, "do not thread lookahead meets forward");
    p->add_flag("--use-full-ug", parse.full_ug, "branch per source rule instead of the generalization");
    p->add_flag("--pure-cf", parse.pure_cf, "backbone only: no unification, no gap lists");
    p->add_flag("--dedupe", parse.dedupe, "collapse analyses with equal category and sem");
    p->add_flag("--trees", parse.trees, "print one line per solution tree");

    CompileCmd compile;
    CLI::App* c = app.add_subcommand("compile", "compile a grammar into a table file");
    c->add_option("grammar", compile.grammar, "grammar source file")->required();
    c->add_option("-o,--output", compile.output, "table file to write (default: grammar.uglrt)");
    c->add_option("--mode", compile.mode, "lookahead construction")
        ->check(CLI::IsMember({"slr", "lalr"}));

    DumpCmd dump;
    CLI::App* d = app.add_subcommand("dump-states", "print the automaton in readable form");
    d->add_option("input", dump.input, "grammar source or compiled table file")->required();
    d->add_option("--mode", dump.mode, "lookahead construction for grammar input")
        ->check(CLI::IsMember({"slr", "lalr"}));

    OracleCmd oracle;
    CLI::App* o = app.add_subcommand("oracle-compare",
                                     "check the tables against brute-force enumeration");
    o->add_option("input", oracle.input, "grammar source or compiled table file")->required();
    o->add_option("sentence", oracle.sentences, "sentences (read from stdin when omitted)");
    o->add_option("--mode", oracle.mode, "lookahead construction for grammar input")
        ->check(CLI::IsMember({"slr", "lalr"}));
    o->add_option("--node-budget", oracle.node_budget,
                  "per-tree node cap for the oracle (0 = 4x sentence length)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*p) return parse.run();
        if (*c) return compile.run();
        if (*d) return dump.run();
        return oracle.run();
    } catch (const Fail& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
}
