#include "uglr/oracle.hpp"

#include <algorithm>
#include <map>

namespace uglr {

namespace {

// Sizes just past the budget are still enumerated (and discarded) to
// detect that bigger trees exist; covers pumping cycles up to this long.
constexpr std::size_t kProbeWindow = 8;

class Enumerator {
public:
    Enumerator(const ParseTables& t, const std::vector<std::string>& words, std::size_t budget)
        : t_(t), words_(words), lex_(lex_all(t, words)), budget_(budget), n_(words.size()) {}

    OracleResult run() {
        for (std::size_t r = 0; r < t_.backbone.size(); ++r) {
            sym_id(t_.backbone[r].lhs);
            for (const CFSymbol& s : t_.backbone[r].rhs) sym_id(s);
        }
        for (const GeneralizedLexeme& lx : t_.lexemes) sym_id(lx.cf);
        std::size_t top = limit();
        memo_.assign(ids_.size(), std::vector<std::vector<std::vector<PhaseOneNode::Ptr>>>(
                                      (n_ + 1) * (n_ + 1),
                                      std::vector<std::vector<PhaseOneNode::Ptr>>(top + 1)));
        seed();
        for (std::size_t s = 2; s <= top; ++s) grow(s);

        OracleResult out;
        std::size_t root = sym_id(t_.backbone[0].rhs[0]);
        const auto& cell = memo_[root][span(0, n_)];
        for (std::size_t s = 1; s <= top; ++s) {
            if (s <= budget_)
                out.trees.insert(out.trees.end(), cell[s].begin(), cell[s].end());
            else if (!cell[s].empty())
                out.possibly_incomplete = true;
        }
        return out;
    }

private:
    std::size_t limit() const { return budget_ + kProbeWindow; }
    std::size_t span(std::size_t i, std::size_t j) const { return i * (n_ + 1) + j; }

    std::size_t sym_id(const CFSymbol& s) {
        auto [it, fresh] = ids_.emplace(s, ids_.size());
        return it->second;
    }

    void seed() {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t lx : lex_[i]) {
                auto n = std::make_shared<PhaseOneNode>();
                n->kind = PhaseOneNode::Kind::Leaf;
                n->phrase = t_.lexemes[lx].phrase.term;
                n->word = words_[i];
                n->lexeme = lx;
                memo_[sym_id(t_.lexemes[lx].cf)][span(i, i + 1)][1].push_back(n);
            }
        for (std::size_t r = 1; r < t_.backbone.size(); ++r) {
            const CFRule& cf = t_.backbone[r];
            if (!cf.rhs.empty()) continue;
            for (std::size_t i = 0; i <= n_; ++i) {
                auto n = std::make_shared<PhaseOneNode>();
                n->kind = PhaseOneNode::Kind::Gap;
                n->phrase = t_.grammar.rules[cf.sources[0]].lhs.term;
                n->rule = static_cast<int>(r);
                n->tag = t_.grammar.rules[cf.sources[0]].gap.tag;
                memo_[sym_id(cf.lhs)][span(i, i)][1].push_back(n);
            }
        }
    }

    // All trees of exactly `size` nodes: one new root over child trees
    // already in the memo (their sizes sum to size-1, so they are done).
    void grow(std::size_t size) {
        for (std::size_t r = 1; r < t_.backbone.size(); ++r) {
            const CFRule& cf = t_.backbone[r];
            if (cf.rhs.empty()) continue;
            std::size_t lhs = sym_id(cf.lhs);
            for (std::size_t i = 0; i <= n_; ++i)
                for (std::size_t j = i; j <= n_; ++j)
                    combine(cf, 0, i, j, size - 1, {}, [&](std::vector<PhaseOneNode::Ptr> kids) {
                        auto n = std::make_shared<PhaseOneNode>();
                        n->kind = PhaseOneNode::Kind::Apply;
                        n->phrase = t_.grammar.rules[cf.sources[0]].lhs.term;
                        n->rule = static_cast<int>(r);
                        n->children = std::move(kids);
                        memo_[lhs][span(i, j)][size].push_back(n);
                    });
        }
    }

    template <class Sink>
    void combine(const CFRule& cf, std::size_t idx, std::size_t pos, std::size_t j,
                 std::size_t rem, const std::vector<PhaseOneNode::Ptr>& acc, const Sink& sink) {
        std::size_t left = cf.rhs.size() - idx;
        if (rem < left) return;  // every child needs at least one node
        if (idx + 1 == cf.rhs.size()) {
            for (const PhaseOneNode::Ptr& tree : memo_[sym_id(cf.rhs[idx])][span(pos, j)][rem]) {
                std::vector<PhaseOneNode::Ptr> acc2 = acc;
                acc2.push_back(tree);
                sink(std::move(acc2));
            }
            return;
        }
        for (std::size_t q = pos; q <= j; ++q)
            for (std::size_t sk = 1; sk + (left - 1) <= rem; ++sk)
                for (const PhaseOneNode::Ptr& tree : memo_[sym_id(cf.rhs[idx])][span(pos, q)][sk]) {
                    std::vector<PhaseOneNode::Ptr> acc2 = acc;
                    acc2.push_back(tree);
                    combine(cf, idx + 1, q, j, rem - sk, acc2, sink);
                }
    }

    const ParseTables& t_;
    const std::vector<std::string>& words_;
    std::vector<std::vector<std::size_t>> lex_;
    std::size_t budget_, n_;
    std::map<CFSymbol, std::size_t> ids_;
    std::vector<std::vector<std::vector<std::vector<PhaseOneNode::Ptr>>>> memo_;
};

}  // namespace

OracleResult oracle_parse(const ParseTables& t, const std::vector<std::string>& words,
                          const OracleOptions& opts) {
    std::size_t budget = opts.node_budget;
    if (budget == 0) budget = 4 * std::max<std::size_t>(1, words.size());
    return Enumerator(t, words, budget).run();
}

}  // namespace uglr
