#include "uglr/tables.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace uglr {

std::string to_string(TableMode m) { return m == TableMode::SLR ? "slr" : "lalr"; }

bool check_ug_rules(const Grammar& g, const std::vector<CFRule>& backbone, int r1, int r2,
                    int dot) {
    if (backbone[r1].sources.empty()) return true;  // augmented rule predicts anything
    for (std::size_t u1 : backbone[r1].sources) {
        Term after = rename_apart(g.rules[u1].rhs[dot].term);
        for (std::size_t u2 : backbone[r2].sources)
            if (unify(after, rename_apart(g.rules[u2].lhs.term))) return true;
    }
    return false;
}

std::vector<DottedItem> closure(std::vector<DottedItem> seed, const Grammar& g,
                                const std::vector<CFRule>& backbone) {
    std::set<DottedItem> items(seed.begin(), seed.end());
    std::vector<DottedItem> agenda(items.begin(), items.end());
    while (!agenda.empty()) {
        DottedItem cur = agenda.back();
        agenda.pop_back();
        const CFRule& r = backbone[cur.rule];
        if (cur.dot >= static_cast<int>(r.rhs.size())) continue;
        const CFSymbol& next = r.rhs[cur.dot];
        for (const CFRule& cand : backbone) {
            if (cand.sources.empty() || cand.lhs != next) continue;
            DottedItem ni{cand.id, 0};
            if (items.count(ni)) continue;
            if (!check_ug_rules(g, backbone, cur.rule, cand.id, cur.dot)) continue;
            items.insert(ni);
            agenda.push_back(ni);
        }
    }
    return {items.begin(), items.end()};
}

namespace {

/// lgg of every source phrase after a dot in `items` whose CF image is
/// `sym` — the generalized symbol the runtime unifies against on this
/// shift/goto.
Term transition_symbol(const Grammar& g, const std::vector<CFRule>& backbone,
                       const std::vector<DottedItem>& items, const CFSymbol& sym) {
    std::vector<Term> terms;
    for (DottedItem it : items) {
        const CFRule& r = backbone[it.rule];
        if (it.dot >= static_cast<int>(r.rhs.size()) || r.rhs[it.dot] != sym) continue;
        if (r.sources.empty()) {
            terms.push_back(most_general_phrase(*g.find_category(g.top)).term);
        } else {
            for (std::size_t u : r.sources) terms.push_back(g.rules[u].rhs[it.dot].term);
        }
    }
    return anti_unify_all(terms);
}

}  // namespace

Automaton build_automaton(const Grammar& g, const std::vector<CFRule>& backbone) {
    Automaton a;
    std::map<std::vector<DottedItem>, int> by_kernel;
    std::deque<int> queue;
    auto add_state = [&](std::vector<DottedItem> kernel) {
        auto it = by_kernel.find(kernel);
        if (it != by_kernel.end()) return it->second;
        int id = static_cast<int>(a.states.size());
        by_kernel.emplace(kernel, id);
        a.states.push_back(LRState{id, kernel, closure(std::move(kernel), g, backbone)});
        queue.push_back(id);
        return id;
    };
    add_state({DottedItem{0, 0}});
    while (!queue.empty()) {
        int sid = queue.front();
        queue.pop_front();
        std::vector<DottedItem> items = a.states[sid].items;  // add_state reallocates
        std::map<CFSymbol, std::vector<DottedItem>> advanced;
        for (DottedItem it : items) {
            const CFRule& r = backbone[it.rule];
            if (it.dot < static_cast<int>(r.rhs.size()))
                advanced[r.rhs[it.dot]].push_back(DottedItem{it.rule, it.dot + 1});
        }
        for (auto& [sym, kernel] : advanced) {
            std::sort(kernel.begin(), kernel.end());
            int to = add_state(kernel);
            a.transitions.push_back(
                Transition{sid, sym, to, transition_symbol(g, backbone, items, sym)});
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// FIRST / FOLLOW

namespace {

struct FirstFollow {
    std::set<CFSymbol> nonterminals;
    std::set<CFSymbol> nullable;
    std::map<CFSymbol, std::set<CFSymbol>> first;
    std::map<CFSymbol, std::set<CFSymbol>> follow;

    bool is_nonterminal(const CFSymbol& s) const { return nonterminals.count(s) != 0; }

    /// FIRST of rhs[from..]; appends to `out`, returns true when the
    /// whole tail can derive the empty string.
    bool first_of_tail(const std::vector<CFSymbol>& rhs, std::size_t from,
                       std::set<CFSymbol>& out) const {
        for (std::size_t i = from; i < rhs.size(); ++i) {
            const CFSymbol& s = rhs[i];
            if (!is_nonterminal(s)) {
                out.insert(s);
                return false;
            }
            const auto& f = first.at(s);
            out.insert(f.begin(), f.end());
            if (!nullable.count(s)) return false;
        }
        return true;
    }
};

FirstFollow first_follow(const std::vector<CFRule>& backbone) {
    FirstFollow ff;
    for (const CFRule& r : backbone) ff.nonterminals.insert(r.lhs);
    for (const CFRule& r : backbone) ff.first[r.lhs];  // ensure keys
    bool changed = true;
    while (changed) {
        changed = false;
        for (const CFRule& r : backbone) {
            std::set<CFSymbol>& f = ff.first[r.lhs];
            std::size_t before = f.size();
            bool allnull = ff.first_of_tail(r.rhs, 0, f);
            if (allnull && !ff.nullable.count(r.lhs)) {
                ff.nullable.insert(r.lhs);
                changed = true;
            }
            if (f.size() != before) changed = true;
        }
    }
    ff.follow[cf_start()].insert(cf_end());
    changed = true;
    while (changed) {
        changed = false;
        for (const CFRule& r : backbone) {
            for (std::size_t i = 0; i < r.rhs.size(); ++i) {
                if (!ff.is_nonterminal(r.rhs[i])) continue;
                std::set<CFSymbol>& f = ff.follow[r.rhs[i]];
                std::size_t before = f.size();
                bool tail_null = ff.first_of_tail(r.rhs, i + 1, f);
                if (tail_null) {
                    const auto& lf = ff.follow[r.lhs];
                    f.insert(lf.begin(), lf.end());
                }
                if (f.size() != before) changed = true;
            }
        }
    }
    return ff;
}

}  // namespace

std::vector<std::vector<CFSymbol>> slr_lookaheads(const Grammar&,
                                                  const std::vector<CFRule>& backbone) {
    FirstFollow ff = first_follow(backbone);
    std::vector<std::vector<CFSymbol>> out(backbone.size());
    for (const CFRule& r : backbone) {
        const std::set<CFSymbol>& f = ff.follow[r.lhs];
        out[r.id].assign(f.begin(), f.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// LALR lookaheads: spontaneous generation + propagation over kernel items,
// with the same UG-filtered prediction as the LR(0) closure.

namespace {

using LR1Item = std::pair<DottedItem, CFSymbol>;

CFSymbol sentinel() { return CFSymbol{Term::atom("$#")}; }

std::set<LR1Item> lr1_closure(std::set<LR1Item> items, const Grammar& g,
                              const std::vector<CFRule>& backbone, const FirstFollow& ff) {
    std::vector<LR1Item> agenda(items.begin(), items.end());
    while (!agenda.empty()) {
        auto [cur, la] = agenda.back();
        agenda.pop_back();
        const CFRule& r = backbone[cur.rule];
        if (cur.dot >= static_cast<int>(r.rhs.size())) continue;
        const CFSymbol& next = r.rhs[cur.dot];
        if (!ff.is_nonterminal(next)) continue;
        std::set<CFSymbol> las;
        if (ff.first_of_tail(r.rhs, cur.dot + 1, las)) las.insert(la);
        for (const CFRule& cand : backbone) {
            if (cand.sources.empty() || cand.lhs != next) continue;
            if (!check_ug_rules(g, backbone, cur.rule, cand.id, cur.dot)) continue;
            for (const CFSymbol& f : las) {
                LR1Item ni{DottedItem{cand.id, 0}, f};
                if (items.insert(ni).second) agenda.push_back(ni);
            }
        }
    }
    return items;
}

}  // namespace

std::vector<ReduceEntry> lalr_lookaheads(const Automaton& a, const Grammar& g,
                                         const std::vector<CFRule>& backbone) {
    FirstFollow ff = first_follow(backbone);
    std::map<std::pair<int, CFSymbol>, int> goto_to;
    for (const Transition& t : a.transitions) goto_to[{t.from, t.sym}] = t.to;

    using Key = std::pair<int, DottedItem>;  // (state, kernel item)
    std::map<Key, std::set<CFSymbol>> la;
    std::map<Key, std::set<Key>> prop;
    la[{0, DottedItem{0, 0}}].insert(cf_end());

    for (const LRState& st : a.states) {
        for (DottedItem k : st.kernel) {
            auto j = lr1_closure({{k, sentinel()}}, g, backbone, ff);
            for (const auto& [it, sym] : j) {
                const CFRule& r = backbone[it.rule];
                if (it.dot >= static_cast<int>(r.rhs.size())) continue;
                Key succ{goto_to.at({st.id, r.rhs[it.dot]}), DottedItem{it.rule, it.dot + 1}};
                if (sym == sentinel())
                    prop[{st.id, k}].insert(succ);
                else
                    la[succ].insert(sym);
            }
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [from, succs] : prop) {
            const std::set<CFSymbol>& src = la[from];
            for (const Key& to : succs) {
                std::set<CFSymbol>& dst = la[to];
                std::size_t before = dst.size();
                dst.insert(src.begin(), src.end());
                if (dst.size() != before) changed = true;
            }
        }
    }

    std::map<std::pair<int, int>, std::set<CFSymbol>> red;  // (state, rule) -> las
    for (const LRState& st : a.states) {
        std::set<LR1Item> seed;
        for (DottedItem k : st.kernel)
            for (const CFSymbol& s : la[{st.id, k}]) seed.insert({k, s});
        for (const auto& [it, sym] : lr1_closure(std::move(seed), g, backbone, ff))
            if (it.rule != 0 && it.dot == static_cast<int>(backbone[it.rule].rhs.size()))
                red[{st.id, it.rule}].insert(sym);
    }
    std::vector<ReduceEntry> out;
    for (const auto& [key, las] : red)
        out.push_back(ReduceEntry{key.first, key.second, {las.begin(), las.end()}});
    return out;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

Grammar canonical_grammar(const Grammar& g) {
    Grammar out = g;
    for (CategoryDecl& c : out.categories) c.line = 0;
    for (UGRule& r : out.rules) {
        std::vector<Term> ts{r.lhs.term};
        for (const Phrase& p : r.rhs) ts.push_back(p.term);
        if (r.gap.phrase) ts.push_back(r.gap.phrase->term);
        if (r.sem) ts.push_back(*r.sem);
        ts = canonical_form(ts);
        std::size_t i = 0;
        r.lhs.term = ts[i++];
        for (Phrase& p : r.rhs) p.term = ts[i++];
        if (r.gap.phrase) r.gap.phrase->term = ts[i++];
        if (r.sem) *r.sem = ts[i++];
        r.line = 0;
    }
    for (LexEntry& e : out.lexicon) {
        std::vector<Term> ts{e.phrase.term};
        if (e.sem) ts.push_back(*e.sem);
        ts = canonical_form(ts);
        e.phrase.term = ts[0];
        if (e.sem) *e.sem = ts[1];
        e.line = 0;
    }
    return out;
}

void canonicalize_gen_rule(GeneralizedRule& r) {
    std::vector<Term> ts{r.lhs.term};
    for (const Phrase& p : r.rhs) ts.push_back(p.term);
    ts = canonical_form(ts);
    r.lhs.term = ts[0];
    for (std::size_t i = 0; i < r.rhs.size(); ++i) r.rhs[i].term = ts[i + 1];
}

int compare_term_seq(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = Term::compare(a[i], b[i]); c != 0) return c;
    return 0;
}

}  // namespace

ParseTables assemble_tables(const Automaton& a, const Grammar& g,
                            const std::vector<CFRule>& backbone, TableMode mode) {
    ParseTables t;
    t.mode = mode;
    t.grammar = canonical_grammar(g);
    t.backbone = backbone;
    t.gen_rules = generalize_rules(g, backbone);
    for (GeneralizedRule& r : t.gen_rules) canonicalize_gen_rule(r);
    t.lexemes = generalize_lexicon(g);
    for (GeneralizedLexeme& l : t.lexemes) l.phrase.term = canonical_form(l.phrase.term);
    t.states = a.states;
    t.transitions = a.transitions;
    for (Transition& tr : t.transitions) tr.gen = canonical_form(tr.gen);
    std::sort(t.transitions.begin(), t.transitions.end(),
              [](const Transition& x, const Transition& y) {
                  if (x.from != y.from) return x.from < y.from;
                  return x.sym < y.sym;
              });

    if (mode == TableMode::SLR) {
        auto follow = slr_lookaheads(g, backbone);
        for (const LRState& st : a.states)
            for (DottedItem it : st.items)
                if (it.rule != 0 && it.dot == static_cast<int>(backbone[it.rule].rhs.size()))
                    t.reduces.push_back(ReduceEntry{st.id, it.rule, follow[it.rule]});
    } else {
        t.reduces = lalr_lookaheads(a, g, backbone);
    }
    std::sort(t.reduces.begin(), t.reduces.end(), [](const ReduceEntry& x, const ReduceEntry& y) {
        if (x.state != y.state) return x.state < y.state;
        return x.rule < y.rule;
    });

    for (const LRState& st : a.states)
        for (DottedItem k : st.kernel)
            if (k.rule == 0 && k.dot == 1) t.accept_state = st.id;

    // Back-check prefixes: per kernel item, the joint lgg of its sources'
    // consumed RHS phrases.
    t.back_check.resize(a.states.size());
    for (const LRState& st : a.states) {
        std::set<std::vector<Term>, decltype([](const std::vector<Term>& x,
                                                const std::vector<Term>& y) {
            return compare_term_seq(x, y) < 0;
        })> prefixes;
        for (DottedItem k : st.kernel) {
            const CFRule& r = backbone[k.rule];
            if (k.dot == 0) {
                prefixes.insert(std::vector<Term>{});
                continue;
            }
            std::vector<Term> wrapped;
            if (r.sources.empty()) {
                wrapped.push_back(Term::compound(
                    "$pfx", {most_general_phrase(*g.find_category(g.top)).term}));
            } else {
                for (std::size_t u : r.sources) {
                    std::vector<Term> parts;
                    for (int i = 0; i < k.dot; ++i) parts.push_back(g.rules[u].rhs[i].term);
                    wrapped.push_back(Term::compound("$pfx", std::move(parts)));
                }
            }
            Term folded = anti_unify_all(wrapped);
            prefixes.insert(canonical_form(folded.args()));
        }
        t.back_check[st.id].assign(prefixes.begin(), prefixes.end());
    }

    // Gap obligations: the dot right before an adds-rule's final phrase,
    // gated by that source's own prefix.
    std::vector<GapAddEntry> adds;
    for (const LRState& st : a.states)
        for (DottedItem it : st.items) {
            const CFRule& r = backbone[it.rule];
            if (it.dot != static_cast<int>(r.rhs.size()) - 1) continue;
            for (std::size_t u : r.sources) {
                const UGRule& src = g.rules[u];
                if (src.gap.kind != GapKind::Adds) continue;
                GapAddEntry e;
                e.state = st.id;
                e.tag = src.gap.tag;
                e.cf = map_to_cf(g, *src.gap.phrase);
                std::vector<Term> ts{src.gap.phrase->term};
                for (int i = 0; i < it.dot; ++i) ts.push_back(src.rhs[i].term);
                ts = canonical_form(ts);
                e.phrase = ts[0];
                e.prefix.assign(ts.begin() + 1, ts.end());
                adds.push_back(std::move(e));
            }
        }
    std::sort(adds.begin(), adds.end(), [](const GapAddEntry& x, const GapAddEntry& y) {
        if (x.state != y.state) return x.state < y.state;
        if (x.tag != y.tag) return x.tag < y.tag;
        if (x.cf != y.cf) return x.cf < y.cf;
        if (int c = Term::compare(x.phrase, y.phrase); c != 0) return c < 0;
        return compare_term_seq(x.prefix, y.prefix) < 0;
    });
    adds.erase(std::unique(adds.begin(), adds.end()), adds.end());
    t.gap_adds = std::move(adds);
    return t;
}

ParseTables compile_tables(const Grammar& g, TableMode mode) {
    std::vector<CFRule> backbone = build_backbone(g);
    Automaton a = build_automaton(g, backbone);
    return assemble_tables(a, g, backbone, mode);
}

const Transition* ParseTables::find_transition(int from, const CFSymbol& sym) const {
    auto it = std::lower_bound(transitions.begin(), transitions.end(), std::pair(from, sym),
                               [](const Transition& t, const std::pair<int, CFSymbol>& key) {
                                   if (t.from != key.first) return t.from < key.first;
                                   return t.sym < key.second;
                               });
    if (it == transitions.end() || it->from != from || it->sym != sym) return nullptr;
    return &*it;
}

const ReduceEntry* ParseTables::find_reduce(int state, int rule) const {
    auto it = std::lower_bound(reduces.begin(), reduces.end(), std::pair(state, rule),
                               [](const ReduceEntry& r, const std::pair<int, int>& key) {
                                   if (r.state != key.first) return r.state < key.first;
                                   return r.rule < key.second;
                               });
    if (it == reduces.end() || it->state != state || it->rule != rule) return nullptr;
    return &*it;
}

bool ParseTables::operator==(const ParseTables& o) const {
    return mode == o.mode && grammar == o.grammar && backbone == o.backbone &&
           gen_rules == o.gen_rules && lexemes == o.lexemes && states == o.states &&
           transitions == o.transitions && reduces == o.reduces &&
           accept_state == o.accept_state && back_check == o.back_check &&
           gap_adds == o.gap_adds;
}

}  // namespace uglr
