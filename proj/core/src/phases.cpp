#include "uglr/phases.hpp"

#include <functional>
#include <utility>

#include "uglr/term_io.hpp"

namespace uglr {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct GapItem {
    using Ptr = std::shared_ptr<const GapItem>;
    Term phrase;  // instance term; the global substitution applies lazily
    Ptr below;
};

struct Env {
    GapItem::Ptr verb, maxproj;
};

GapItem::Ptr& list_for(Env& e, const std::string& tag) {
    return tag == kGapVerb ? e.verb : e.maxproj;
}

/// Extends s with the mgu of s(a) and s(b). The result stays idempotent
/// because the new bindings only mention variables outside s's domain.
bool unify_into(Substitution& s, const Term& a, const Term& b) {
    std::optional<Substitution> u = unify(s(a), s(b));
    if (!u) return false;
    if (u->empty()) return true;
    Substitution out;
    for (const auto& [v, t] : s.bindings()) out.bind(v, u->apply(t));
    for (const auto& [v, t] : u->bindings())
        if (!out.lookup(v)) out.bind(v, t);
    s = std::move(out);
    return true;
}

struct Work {
    Term phrase;
    std::optional<Term> sem;
    std::size_t source = 0;
    const PhaseOneNode* from = nullptr;
    std::vector<Work> children;
};

class Deriver {
public:
    Deriver(const ParseTables& t, bool want_sem) : t_(t), want_sem_(want_sem) {}

    std::vector<Analysis> run(const PhaseOneNode::Ptr& tree) {
        derive(tree.get(), Env{}, Substitution{},
               [&](const Work& w, const Env& env, const Substitution& sigma) {
                   if (env.verb || env.maxproj) return;  // unconsumed filler
                   out_.push_back(Analysis{tree, finish(w, sigma)});
               });
        return std::move(out_);
    }

private:
    using K = std::function<void(const Work&, const Env&, const Substitution&)>;

    void derive(const PhaseOneNode* n, const Env& env, const Substitution& sigma, const K& k) {
        switch (n->kind) {
            case PhaseOneNode::Kind::Leaf: leaf(n, env, sigma, k); return;
            case PhaseOneNode::Kind::Gap: gap(n, env, sigma, k); return;
            case PhaseOneNode::Kind::Apply: break;
        }
        const CFRule& cf = t_.backbone[n->rule];
        for (std::size_t src : cf.sources) {
            const UGRule& r = t_.grammar.rules[src];
            std::vector<Term> ts{r.lhs.term};
            for (const Phrase& p : r.rhs) ts.push_back(p.term);
            std::size_t gap_at = npos, sem_at = npos;
            if (r.gap.kind == GapKind::Adds) {
                gap_at = ts.size();
                ts.push_back(r.gap.phrase->term);
            }
            if (r.sem) {
                sem_at = ts.size();
                ts.push_back(*r.sem);
            }
            ts = rename_apart(ts);
            daughters(n, r, ts, gap_at, sem_at, src, 0, {}, env, sigma, k);
        }
    }

    void leaf(const PhaseOneNode* n, const Env& env, const Substitution& sigma, const K& k) {
        for (std::size_t src : t_.lexemes[n->lexeme].sources) {
            const LexEntry& e = t_.grammar.lexicon[src];
            std::vector<Term> ts{e.phrase.term};
            if (e.sem) ts.push_back(*e.sem);
            ts = rename_apart(ts);
            Work w;
            w.phrase = ts[0];
            if (want_sem_ && e.sem) w.sem = ts[1];
            w.source = src;
            w.from = n;
            k(w, env, sigma);
        }
    }

    void gap(const PhaseOneNode* n, const Env& env, const Substitution& sigma, const K& k) {
        for (std::size_t src : t_.backbone[n->rule].sources) {
            const UGRule& r = t_.grammar.rules[src];
            Env env2 = env;
            GapItem::Ptr& list = list_for(env2, r.gap.tag);
            if (!list) continue;  // no filler pending for this tag
            std::vector<Term> ts{r.lhs.term};
            if (r.sem) ts.push_back(*r.sem);
            ts = rename_apart(ts);
            Substitution s2 = sigma;
            if (!unify_into(s2, ts[0], list->phrase)) continue;
            list = nullptr;  // one filler licenses one gap
            Work w;
            w.phrase = ts[0];
            if (want_sem_ && r.sem) w.sem = ts[1].args()[0];
            w.source = src;
            w.from = n;
            k(w, env2, s2);
        }
    }

    void daughters(const PhaseOneNode* n, const UGRule& r, const std::vector<Term>& ts,
                   std::size_t gap_at, std::size_t sem_at, std::size_t src, std::size_t i,
                   const std::vector<Work>& acc, const Env& env, const Substitution& sigma,
                   const K& k) {
        std::size_t m = n->children.size();
        if (i == m) {
            Work w;
            w.phrase = ts[0];
            w.source = src;
            w.from = n;
            w.children = acc;
            if (want_sem_ && sem_at != npos) {
                bool all = true;
                for (const Work& c : acc)
                    if (!c.sem) all = false;
                if (all) {
                    Substitution s2 = sigma;
                    for (std::size_t j = 0; j < m; ++j)
                        if (!unify_into(s2, ts[sem_at].args()[j + 1], *acc[j].sem))
                            return;  // sem clash rejects the reading
                    w.sem = ts[sem_at].args()[0];
                    k(w, env, s2);
                    return;
                }
            }
            k(w, env, sigma);
            return;
        }
        Env child_env = env;
        if (i + 1 == m && gap_at != npos) {
            GapItem::Ptr& list = list_for(child_env, r.gap.tag);
            list = std::make_shared<GapItem>(GapItem{ts[gap_at], list});
        }
        derive(n->children[i].get(), child_env, sigma,
               [&](const Work& cw, const Env& e2, const Substitution& s2) {
                   Substitution s3 = s2;
                   if (!unify_into(s3, ts[1 + i], cw.phrase)) return;
                   std::vector<Work> acc2 = acc;
                   acc2.push_back(cw);
                   daughters(n, r, ts, gap_at, sem_at, src, i + 1, acc2, e2, s3, k);
               });
    }

    AnalysisNode::Ptr finish(const Work& w, const Substitution& s) {
        auto node = std::make_shared<AnalysisNode>();
        node->phrase = s(w.phrase);
        if (w.sem) node->sem = s(*w.sem);
        node->source = w.source;
        node->from = w.from;
        for (const Work& c : w.children) node->children.push_back(finish(c, s));
        return node;
    }

    const ParseTables& t_;
    bool want_sem_;
    std::vector<Analysis> out_;
};

}  // namespace

std::vector<Analysis> phase_two(const ParseTables& t, const PhaseOneNode::Ptr& tree) {
    return Deriver(t, false).run(tree);
}

std::vector<Analysis> phase_three(const ParseTables& t, const PhaseOneNode::Ptr& tree) {
    return Deriver(t, true).run(tree);
}

void dedupe_analyses(std::vector<Analysis>& as) {
    std::vector<std::vector<Term>> seen;
    std::vector<Analysis> kept;
    for (Analysis& a : as) {
        std::vector<Term> key{a.root->phrase,
                              a.root->sem ? *a.root->sem : Term::atom("$nosem")};
        key = canonical_form(key);
        bool dup = false;
        for (const std::vector<Term>& s : seen)
            if (s == key) dup = true;
        if (!dup) {
            seen.push_back(std::move(key));
            kept.push_back(std::move(a));
        }
    }
    as = std::move(kept);
}

namespace {

void render(std::string& out, const ParseTables& t, const AnalysisNode::Ptr& n) {
    out += "(" + term_to_string(n->phrase, &t.grammar);
    if (n->sem) out += " {" + term_to_string(*n->sem, &t.grammar) + "}";
    switch (n->from->kind) {
        case PhaseOneNode::Kind::Leaf:
            out += " \"" + t.grammar.lexicon[n->source].word + "\"";
            break;
        case PhaseOneNode::Kind::Gap:
            out += " " + t.grammar.rules[n->source].id + " gap:" + n->from->tag;
            break;
        case PhaseOneNode::Kind::Apply:
            out += " " + t.grammar.rules[n->source].id;
            for (const AnalysisNode::Ptr& c : n->children) {
                out += " ";
                render(out, t, c);
            }
            break;
    }
    out += ")";
}

}  // namespace

std::string analysis_tree_to_string(const ParseTables& t, const Analysis& a) {
    std::string out;
    render(out, t, a.root);
    return out;
}

}  // namespace uglr
