#ifndef UGLR_TESTS_RANDOM_GRAMMAR_HPP
#define UGLR_TESTS_RANDOM_GRAMMAR_HPP

#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "uglr/grammar.hpp"

namespace testsup {

// Random gap-free grammars, emitted as source text and reloaded.
// Guarantees: every rule has a lexical daughter, so a tree over n words
// has at most 2n nodes; every phrasal category also has an all-lexical
// rule, so its language is nonempty; phrasal (p*) and lexical (c*)
// names never collide; no distinguishing features. Shapes are cloned
// with different feature terms so one CF image often has several
// sources.
class GrammarGen {
public:
    explicit GrammarGen(std::mt19937& rng) : rng_(rng) {}

    uglr::Grammar operator()() {
        out_.str("");
        words_.clear();
        arity_.clear();
        phrasal_ = 2 + pick(2);
        lexical_ = 2 + pick(2);
        for (std::size_t i = 0; i < phrasal_ + lexical_; ++i) arity_.push_back(i == 0 ? 0 : pick(3));
        for (std::size_t i = 0; i < phrasal_ + lexical_; ++i) {
            out_ << "category " << name(i);
            if (arity_[i] == 1) out_ << " features [f]";
            if (arity_[i] == 2) out_ << " features [f, g]";
            out_ << ".\n";
        }
        out_ << "top p0.\n";
        std::size_t rule = 0;
        for (std::size_t c = 0; c < phrasal_; ++c) {
            emit(c, all_lexical_shape(), rule);
            if (pick(2) == 0) emit(c, mixed_shape(), rule);
        }
        for (std::size_t c = phrasal_; c < phrasal_ + lexical_; ++c) {
            std::size_t nwords = 1 + pick(2);
            for (std::size_t w = 0; w < nwords; ++w) {
                std::string word = "w" + std::to_string(words_.size());
                words_.push_back(word);
                std::size_t entries = 1 + (pick(3) == 0);
                for (std::size_t e = 0; e < entries; ++e) {
                    vars_ = 0;
                    out_ << "lex \"" << word << "\": " << phrase(c) << ".\n";
                }
            }
        }
        return uglr::load_grammar(out_.str());
    }

private:
    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

    std::string name(std::size_t i) const {
        return i < phrasal_ ? "p" + std::to_string(i) : "c" + std::to_string(i - phrasal_);
    }

    std::vector<std::size_t> all_lexical_shape() {
        std::vector<std::size_t> s;
        for (std::size_t len = 1 + pick(2), i = 0; i < len; ++i) s.push_back(phrasal_ + pick(lexical_));
        return s;
    }

    std::vector<std::size_t> mixed_shape() {
        std::vector<std::size_t> s;
        std::size_t len = 2 + pick(2);
        std::size_t lex_at = pick(len);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(i == lex_at || pick(2) == 0 ? phrasal_ + pick(lexical_) : pick(phrasal_));
        return s;
    }

    void emit(std::size_t c, const std::vector<std::size_t>& shape, std::size_t& rule) {
        std::size_t roll = pick(6);
        std::size_t copies = roll < 3 ? 1 : roll < 5 ? 2 : 3;
        for (std::size_t k = 0; k < copies; ++k) {
            vars_ = 0;
            out_ << "rule r" << rule++ << ": " << phrase(c) << " => [";
            for (std::size_t i = 0; i < shape.size(); ++i)
                out_ << (i ? ", " : "") << phrase(shape[i]);
            out_ << "].\n";
        }
    }

    std::string phrase(std::size_t c) {
        std::string s = name(c);
        if (arity_[c] == 0) return s;
        s += ":[f=" + arg();
        if (arity_[c] == 2) s += ", g=" + arg();
        return s + "]";
    }

    std::string arg() {
        switch (pick(5)) {
            case 0: return "a";
            case 1: return "b";
            case 2: return "k(" + std::string(pick(2) ? "a" : "b") + ")";
            default:
                if (vars_ && pick(2) == 0) return "V" + std::to_string(pick(vars_));
                return "V" + std::to_string(vars_++);
        }
    }

    std::mt19937& rng_;
    std::ostringstream out_;
    std::vector<std::size_t> arity_;
    std::vector<std::string> words_;
    std::size_t phrasal_ = 0, lexical_ = 0, vars_ = 0;
};

// A word string the backbone derives, by top-down expansion; falls back
// to rules without phrasal daughters when the depth runs out. The
// feature constraints may still reject it, which is fine for an
// oracle-comparison input.
inline std::vector<std::string> random_sentence(const uglr::Grammar& g, std::mt19937& rng,
                                                std::size_t max_len = 8) {
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    std::set<std::string> phrasal;
    for (const uglr::UGRule& r : g.rules) phrasal.insert(r.lhs.category);
    std::vector<std::string> best;
    for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<std::string> words;
        bool ok = true;
        std::function<void(const std::string&, std::size_t)> expand =
            [&](const std::string& cat, std::size_t depth) {
                if (!ok || words.size() > max_len) {
                    ok = false;
                    return;
                }
                if (!phrasal.count(cat)) {
                    std::vector<const std::string*> ws;
                    for (const uglr::LexEntry& e : g.lexicon)
                        if (e.phrase.category == cat) ws.push_back(&e.word);
                    words.push_back(*ws[pick(ws.size())]);
                    return;
                }
                std::vector<const uglr::UGRule*> rules;
                for (const uglr::UGRule& r : g.rules) {
                    if (r.lhs.category != cat) continue;
                    if (depth == 0) {
                        bool grounded = true;
                        for (const uglr::Phrase& p : r.rhs)
                            if (phrasal.count(p.category)) grounded = false;
                        if (!grounded) continue;
                    }
                    rules.push_back(&r);
                }
                const uglr::UGRule* r = rules[pick(rules.size())];
                for (const uglr::Phrase& p : r->rhs) expand(p.category, depth ? depth - 1 : 0);
            };
        expand(g.top, 3);
        if (ok && !words.empty() && (best.empty() || words.size() < best.size())) best = words;
        if (!best.empty() && best.size() <= max_len) break;
    }
    return best;
}

}  // namespace testsup

#endif
