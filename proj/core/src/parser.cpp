#include "uglr/parser.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "uglr/errors.hpp"
#include "uglr/term_io.hpp"

namespace uglr {

bool same_skeleton(const PhaseOneNode::Ptr& a, const PhaseOneNode::Ptr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case PhaseOneNode::Kind::Leaf: return a->word == b->word && a->lexeme == b->lexeme;
        case PhaseOneNode::Kind::Gap: return a->rule == b->rule && a->tag == b->tag;
        case PhaseOneNode::Kind::Apply: break;
    }
    if (a->rule != b->rule || a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!same_skeleton(a->children[i], b->children[i])) return false;
    return true;
}

std::vector<std::string> split_words(const std::string& sentence) {
    std::istringstream in(sentence);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::vector<std::vector<std::size_t>> lex_all(const ParseTables& t,
                                              const std::vector<std::string>& words) {
    std::vector<std::vector<std::size_t>> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t li = 0; li < t.lexemes.size(); ++li)
            if (t.lexemes[li].word == words[i]) out[i].push_back(li);
        if (out[i].empty()) throw UnknownWordError(words[i], i);
    }
    return out;
}

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Cell {
    using Ptr = std::shared_ptr<const Cell>;
    Ptr below;
    int state = 0;
    Term sym;
    PhaseOneNode::Ptr node;
};

struct GapNode {
    using Ptr = std::shared_ptr<const GapNode>;
    Term phrase;
    Ptr below;
};

struct Cfg {
    Cell::Ptr stack;
    std::size_t pos = 0;
    std::vector<CFSymbol> la;  // possible CF images of the next token, sorted
    GapNode::Ptr verb, maxproj;
};

struct Action {
    enum class Kind { Shift, Reduce, Accept };
    Kind kind = Kind::Accept;
    std::size_t lexeme = 0;       // Shift
    int rule = -1;                // Reduce
    std::size_t source = npos;    // full-ug mode: index into rules/lexicon
    std::vector<CFSymbol> newla;  // Reduce: lookahead set to carry forward
};

class Engine {
public:
    Engine(const ParseTables& t, const std::vector<std::string>& words,
           const ParseOptions& opts)
        : t_(t), words_(words), opts_(opts), lex_(lex_all(t, words)) {
        for (const ReduceEntry& r : t_.reduces) red_by_state_[r.state].push_back(&r);
        for (const GapAddEntry& e : t_.gap_adds) gaps_by_state_[e.state].push_back(&e);
    }

    PhaseOneResult run() {
        struct Frame {
            Cfg cfg;
            std::vector<Action> acts;
            std::size_t next = 0;
        };
        std::vector<Frame> frames;
        {
            Cfg init;
            init.stack = std::make_shared<Cell>(Cell{nullptr, 0, Term::atom("$void"), nullptr});
            init.la = la_at(0);
            if (std::optional<Cfg> start = enter(std::move(init), 0)) {
                std::vector<Action> acts = actions(*start);
                frames.push_back(Frame{std::move(*start), std::move(acts), 0});
            }
        }
        while (!frames.empty()) {
            if (opts_.max_solutions && result_.trees.size() >= opts_.max_solutions) break;
            Frame& f = frames.back();
            if (f.next >= f.acts.size()) {
                ++result_.stats.backtracks;
                frames.pop_back();
                continue;
            }
            if (result_.stats.steps >= opts_.max_steps) {
                result_.hit_step_limit = true;
                break;
            }
            ++result_.stats.steps;
            Action a = f.acts[f.next++];
            std::optional<Cfg> nxt = apply(f.cfg, a);
            if (!nxt) continue;
            if (a.kind == Action::Kind::Accept) {
                PhaseOneNode::Ptr tree = nxt->stack->node;
                bool dup = false;
                for (const PhaseOneNode::Ptr& seen : result_.trees)
                    if (same_skeleton(seen, tree)) dup = true;
                if (!dup) result_.trees.push_back(std::move(tree));
                continue;
            }
            std::vector<Action> acts = actions(*nxt);
            frames.push_back(Frame{std::move(*nxt), std::move(acts), 0});
        }
        return std::move(result_);
    }

private:
    std::vector<CFSymbol> la_at(std::size_t pos) const {
        if (pos >= words_.size()) return {cf_end()};
        std::vector<CFSymbol> out;
        for (std::size_t li : lex_[pos]) out.push_back(t_.lexemes[li].cf);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    static std::vector<CFSymbol> meet(const std::vector<CFSymbol>& a,
                                      const std::vector<CFSymbol>& b) {
        std::vector<CFSymbol> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    std::vector<Action> actions(const Cfg& c) const {
        std::vector<Action> out;
        int s = c.stack->state;
        if (c.pos < words_.size()) {
            for (std::size_t li : lex_[c.pos]) {
                const GeneralizedLexeme& L = t_.lexemes[li];
                if (!std::binary_search(c.la.begin(), c.la.end(), L.cf)) continue;
                if (!t_.find_transition(s, L.cf)) continue;
                if (opts_.use_full_ug) {
                    for (std::size_t src : L.sources)
                        out.push_back(Action{Action::Kind::Shift, li, -1, src, {}});
                } else {
                    out.push_back(Action{Action::Kind::Shift, li, -1, npos, {}});
                }
            }
        }
        auto found = red_by_state_.find(s);
        if (found != red_by_state_.end()) {
            for (const ReduceEntry* r : found->second) {
                std::vector<CFSymbol> m = meet(c.la, r->lookaheads);
                if (m.empty()) continue;
                std::vector<CFSymbol> carry = opts_.intersect_lookaheads ? std::move(m) : c.la;
                if (opts_.use_full_ug && !t_.backbone[r->rule].sources.empty()) {
                    for (std::size_t src : t_.backbone[r->rule].sources)
                        out.push_back(Action{Action::Kind::Reduce, 0, r->rule, src, carry});
                } else {
                    out.push_back(
                        Action{Action::Kind::Reduce, 0, r->rule, npos, std::move(carry)});
                }
            }
        }
        if (s == t_.accept_state && c.pos == words_.size())
            out.push_back(Action{Action::Kind::Accept, 0, -1, npos, {}});
        return out;
    }

    std::optional<Cfg> apply(const Cfg& c, const Action& a) {
        switch (a.kind) {
            case Action::Kind::Shift: return shift(c, a);
            case Action::Kind::Reduce: return reduce(c, a);
            case Action::Kind::Accept: break;
        }
        // a parse is complete only when every pushed filler was consumed
        if (c.verb || c.maxproj) return std::nullopt;
        return c;
    }

    std::optional<Cfg> shift(const Cfg& c, const Action& a) {
        const GeneralizedLexeme& L = t_.lexemes[a.lexeme];
        const Transition* tr = t_.find_transition(c.stack->state, L.cf);
        Term inst;
        if (opts_.pure_cf) {
            inst = rename_apart(tr->gen);
        } else {
            Term phr = a.source == npos
                           ? rename_apart(L.phrase.term)
                           : rename_apart(t_.grammar.lexicon[a.source].phrase.term);
            std::optional<Substitution> u = unify(phr, rename_apart(tr->gen));
            if (!u) {
                ++result_.stats.filter_hits;
                return std::nullopt;
            }
            inst = (*u)(phr);
        }
        auto node = std::make_shared<PhaseOneNode>();
        node->kind = PhaseOneNode::Kind::Leaf;
        node->phrase = inst;
        node->word = words_[c.pos];
        node->lexeme = a.lexeme;
        Cfg n = c;
        n.stack = std::make_shared<Cell>(Cell{c.stack, tr->to, inst, std::move(node)});
        n.pos = c.pos + 1;
        n.la = la_at(n.pos);
        return enter(std::move(n), tr->to);
    }

    std::optional<Cfg> reduce(const Cfg& c, const Action& a) {
        const CFRule& cf = t_.backbone[a.rule];
        std::size_t m = cf.rhs.size();
        std::vector<Cell::Ptr> cells(m);
        Cell::Ptr below = c.stack;
        for (std::size_t i = m; i-- > 0;) {
            if (!below->below) return std::nullopt;  // ran into the stack bottom
            cells[i] = below;
            below = below->below;
        }
        const Transition* tr = t_.find_transition(below->state, cf.lhs);
        if (!tr) return std::nullopt;

        Cfg n = c;
        Term inst;
        auto node = std::make_shared<PhaseOneNode>();
        node->rule = a.rule;

        if (m == 0) {
            // trace: the empty production consumes the top filler of its
            // sources' gap list (in pure-CF mode it reduces freely)
            const UGRule& src0 = t_.grammar.rules[cf.sources[0]];
            node->kind = PhaseOneNode::Kind::Gap;
            node->tag = src0.gap.tag;
            if (opts_.pure_cf) {
                inst = rename_apart(tr->gen);
            } else {
                GapNode::Ptr& list = src0.gap.tag == kGapVerb ? n.verb : n.maxproj;
                if (!list) return std::nullopt;
                Term lhs = a.source == npos
                               ? rename_apart(t_.gen_rules[a.rule].lhs.term)
                               : rename_apart(t_.grammar.rules[a.source].lhs.term);
                std::optional<Substitution> u =
                    unify_seq({lhs, lhs}, {list->phrase, rename_apart(tr->gen)});
                if (!u) {
                    ++result_.stats.filter_hits;
                    return std::nullopt;
                }
                inst = (*u)(lhs);
                list = nullptr;  // one filler licenses one gap
                ++result_.stats.gap_pops;
            }
        } else {
            node->kind = PhaseOneNode::Kind::Apply;
            if (opts_.pure_cf) {
                inst = rename_apart(tr->gen);
            } else {
                std::vector<Term> rule_ts;  // rhs..., lhs — jointly renamed
                if (a.source == npos) {
                    const GeneralizedRule& gr = t_.gen_rules[a.rule];
                    for (const Phrase& p : gr.rhs) rule_ts.push_back(p.term);
                    rule_ts.push_back(gr.lhs.term);
                } else {
                    const UGRule& src = t_.grammar.rules[a.source];
                    for (const Phrase& p : src.rhs) rule_ts.push_back(p.term);
                    rule_ts.push_back(src.lhs.term);
                }
                rule_ts = rename_apart(rule_ts);
                std::vector<Term> as, bs;
                for (std::size_t i = 0; i < m; ++i) {
                    as.push_back(rule_ts[i]);
                    bs.push_back(cells[i]->sym);
                }
                as.push_back(rule_ts[m]);
                bs.push_back(rename_apart(tr->gen));
                std::optional<Substitution> u = unify_seq(as, bs);
                if (!u) {
                    ++result_.stats.filter_hits;
                    return std::nullopt;
                }
                inst = (*u)(rule_ts[m]);
            }
        }
        node->phrase = inst;
        for (const Cell::Ptr& cell : cells) node->children.push_back(cell->node);
        n.stack = std::make_shared<Cell>(Cell{below, tr->to, inst, std::move(node)});
        n.la = a.newla;
        return enter(std::move(n), tr->to);
    }

    /// State-entry machinery: the optional full back-check, then any gap
    /// obligations of the new state.
    std::optional<Cfg> enter(Cfg c, int state) {
        if (opts_.pure_cf) return c;
        if (opts_.back_check == BackCheckMode::All) {
            bool ok = false;
            for (const std::vector<Term>& pre : t_.back_check[state])
                if (match_prefix(pre, c.stack)) {
                    ok = true;
                    break;
                }
            if (!ok) {
                ++result_.stats.filter_hits;
                return std::nullopt;
            }
        }
        auto found = gaps_by_state_.find(state);
        if (found != gaps_by_state_.end()) {
            for (const GapAddEntry* e : found->second) {
                Term filler;
                if (opts_.back_check != BackCheckMode::Off) {
                    std::vector<Term> ts{e->phrase};
                    ts.insert(ts.end(), e->prefix.begin(), e->prefix.end());
                    ts = rename_apart(ts);
                    std::optional<Substitution> u =
                        match_seq({ts.begin() + 1, ts.end()}, c.stack);
                    if (!u) continue;  // this state entry is not the adds rule's
                    filler = (*u)(ts[0]);
                } else {
                    filler = rename_apart(e->phrase);
                }
                GapNode::Ptr& list = e->tag == kGapVerb ? c.verb : c.maxproj;
                list = std::make_shared<GapNode>(GapNode{std::move(filler), list});
                ++result_.stats.gap_pushes;
            }
        }
        return c;
    }

    bool match_prefix(const std::vector<Term>& pre, const Cell::Ptr& stack) {
        if (pre.empty()) return true;
        return match_seq(rename_apart(pre), stack).has_value();
    }

    /// Unifies pre[0..k) against the top k stack phrases (pre[k-1] on top).
    static std::optional<Substitution> match_seq(const std::vector<Term>& pre,
                                                 const Cell::Ptr& stack) {
        std::vector<Term> actual(pre.size());
        Cell::Ptr p = stack;
        for (std::size_t i = pre.size(); i-- > 0;) {
            if (!p || !p->below) return std::nullopt;  // hit the stack bottom
            actual[i] = p->sym;
            p = p->below;
        }
        return unify_seq(pre, actual);
    }

    const ParseTables& t_;
    const std::vector<std::string>& words_;
    ParseOptions opts_;
    std::vector<std::vector<std::size_t>> lex_;
    std::map<int, std::vector<const ReduceEntry*>> red_by_state_;
    std::map<int, std::vector<const GapAddEntry*>> gaps_by_state_;
    PhaseOneResult result_;
};

}  // namespace

PhaseOneResult parse_phase1(const ParseTables& t, const std::vector<std::string>& words,
                            const ParseOptions& opts) {
    return Engine(t, words, opts).run();
}

namespace {

void render(std::string& out, const ParseTables& t, const PhaseOneNode::Ptr& n) {
    out += "(" + term_to_string(n->phrase, &t.grammar);
    switch (n->kind) {
        case PhaseOneNode::Kind::Leaf:
            out += " \"" + n->word + "\"";
            break;
        case PhaseOneNode::Kind::Gap:
            out += " gap:" + n->tag;
            break;
        case PhaseOneNode::Kind::Apply:
            for (const PhaseOneNode::Ptr& ch : n->children) {
                out += " ";
                render(out, t, ch);
            }
            break;
    }
    out += ")";
}

}  // namespace

std::string phase1_tree_to_string(const ParseTables& t, const PhaseOneNode::Ptr& n) {
    std::string out;
    render(out, t, n);
    return out;
}

}  // namespace uglr
