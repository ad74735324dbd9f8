#include "uglr/term.hpp"

#include <atomic>
#include <cassert>
#include <utility>

namespace uglr {

Term::Term() : Term(atom("$void")) {}

Term Term::var(std::string name) {
    return Term(std::make_shared<const Rep>(Rep{true, std::move(name), {}}));
}

Term Term::atom(std::string functor) {
    return Term(std::make_shared<const Rep>(Rep{false, std::move(functor), {}}));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    return Term(std::make_shared<const Rep>(Rep{false, std::move(functor), std::move(args)}));
}

bool Term::ground() const {
    if (is_var()) return false;
    for (const Term& a : args())
        if (!a.ground()) return false;
    return true;
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        for (const std::string& v : out)
            if (v == t.name()) return;
        out.push_back(t.name());
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::vector<std::string> Term::vars() const {
    std::vector<std::string> out;
    collect_vars(*this, out);
    return out;
}

int Term::compare(const Term& a, const Term& b) {
    if (a.rep_ == b.rep_) return 0;
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

const Term* Substitution::lookup(const std::string& var) const {
    auto it = bind_.find(var);
    return it == bind_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
    if (t.is_var()) {
        if (const Term* b = lookup(t.name())) return *b;
        return t;
    }
    if (t.ground() || t.is_atom()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(apply(a));
    return Term::compound(t.name(), std::move(args));
}

void Substitution::bind(std::string var, Term value) {
    bind_.insert_or_assign(std::move(var), std::move(value));
}

// ---------------------------------------------------------------------------
// Unification

namespace {

using Bindings = std::map<std::string, Term>;

const Term& walk(const Term& t, const Bindings& b) {
    const Term* cur = &t;
    while (cur->is_var()) {
        auto it = b.find(cur->name());
        if (it == b.end()) break;
        cur = &it->second;
    }
    return *cur;
}

bool occurs(const std::string& var, const Term& t, const Bindings& b) {
    const Term& w = walk(t, b);
    if (w.is_var()) return w.name() == var;
    for (const Term& a : w.args())
        if (occurs(var, a, b)) return true;
    return false;
}

bool unify_into(const Term& a, const Term& b, Bindings& binds) {
    const Term& wa = walk(a, binds);
    const Term& wb = walk(b, binds);
    if (wa.is_var() && wb.is_var() && wa.name() == wb.name()) return true;
    if (wa.is_var()) {
        if (occurs(wa.name(), wb, binds)) return false;
        binds.emplace(wa.name(), wb);
        return true;
    }
    if (wb.is_var()) {
        if (occurs(wb.name(), wa, binds)) return false;
        binds.emplace(wb.name(), wa);
        return true;
    }
    if (wa.name() != wb.name() || wa.arity() != wb.arity()) return false;
    for (std::size_t i = 0; i < wa.arity(); ++i)
        if (!unify_into(wa.args()[i], wb.args()[i], binds)) return false;
    return true;
}

Term resolve(const Term& t, const Bindings& b) {
    const Term& w = walk(t, b);
    if (w.is_var() || w.is_atom()) return w;
    std::vector<Term> args;
    args.reserve(w.arity());
    for (const Term& a : w.args()) args.push_back(resolve(a, b));
    return Term::compound(w.name(), std::move(args));
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    Bindings binds;
    if (!unify_into(a, b, binds)) return std::nullopt;
    // Flatten the triangular bindings into an idempotent substitution.
    Substitution s;
    for (const auto& [var, val] : binds) s.bind(var, resolve(val, binds));
    return s;
}

std::optional<Substitution> unify_seq(const std::vector<Term>& as, const std::vector<Term>& bs) {
    if (as.size() != bs.size()) return std::nullopt;
    Bindings binds;
    for (std::size_t i = 0; i < as.size(); ++i)
        if (!unify_into(as[i], bs[i], binds)) return std::nullopt;
    Substitution s;
    for (const auto& [var, val] : binds) s.bind(var, resolve(val, binds));
    return s;
}

// ---------------------------------------------------------------------------
// Anti-unification (least general generalization)

namespace {

struct PairKey {
    Term a, b;
    bool operator<(const PairKey& o) const {
        if (int c = Term::compare(a, o.a); c != 0) return c < 0;
        return Term::compare(b, o.b) < 0;
    }
};

Term lgg(const Term& a, const Term& b, std::map<PairKey, Term>& seen) {
    if (a.is_compound() && b.is_compound() && a.name() == b.name() && a.arity() == b.arity()) {
        if (a.arity() == 0) return a;
        std::vector<Term> args;
        args.reserve(a.arity());
        for (std::size_t i = 0; i < a.arity(); ++i) args.push_back(lgg(a.args()[i], b.args()[i], seen));
        return Term::compound(a.name(), std::move(args));
    }
    // Disagreement pair (or a pair involving variables): one shared fresh
    // variable per distinct pair.
    PairKey key{a, b};
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    Term v = fresh_var();
    seen.emplace(std::move(key), v);
    return v;
}

}  // namespace

Term anti_unify(const Term& a, const Term& b) {
    std::map<PairKey, Term> seen;
    return lgg(a, b, seen);
}

Term anti_unify_all(const std::vector<Term>& terms) {
    assert(!terms.empty());
    if (terms.size() == 1) return rename_apart(terms.front());
    Term acc = anti_unify(terms[0], terms[1]);
    for (std::size_t i = 2; i < terms.size(); ++i) acc = anti_unify(acc, terms[i]);
    return acc;
}

// ---------------------------------------------------------------------------
// Subsumption: one-way matching, variables of `specific` act as constants.

namespace {

bool match_into(const Term& gen, const Term& spec, Bindings& binds) {
    if (gen.is_var()) {
        auto it = binds.find(gen.name());
        if (it != binds.end()) return it->second == spec;
        binds.emplace(gen.name(), spec);
        return true;
    }
    if (spec.is_var()) return false;
    if (gen.name() != spec.name() || gen.arity() != spec.arity()) return false;
    for (std::size_t i = 0; i < gen.arity(); ++i)
        if (!match_into(gen.args()[i], spec.args()[i], binds)) return false;
    return true;
}

}  // namespace

bool subsumes(const Term& general, const Term& specific) {
    Bindings binds;
    return match_into(general, specific, binds);
}

namespace {

bool variant_walk(const Term& a, const Term& b, std::map<std::string, std::string>& ab,
                  std::map<std::string, std::string>& ba) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) {
        auto it = ab.find(a.name());
        if (it != ab.end()) return it->second == b.name();
        auto it2 = ba.find(b.name());
        if (it2 != ba.end()) return false;
        ab.emplace(a.name(), b.name());
        ba.emplace(b.name(), a.name());
        return true;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (!variant_walk(a.args()[i], b.args()[i], ab, ba)) return false;
    return true;
}

}  // namespace

bool variant_equal(const Term& a, const Term& b) {
    std::map<std::string, std::string> ab, ba;
    return variant_walk(a, b, ab, ba);
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

std::atomic<std::uint64_t> g_var_counter{0};

Term rename_with(const Term& t, std::map<std::string, Term>& map) {
    if (t.is_var()) {
        auto it = map.find(t.name());
        if (it != map.end()) return it->second;
        Term v = fresh_var();
        map.emplace(t.name(), v);
        return v;
    }
    if (t.ground()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(rename_with(a, map));
    return Term::compound(t.name(), std::move(args));
}

Term canonical_with(const Term& t, std::map<std::string, Term>& map, std::size_t& next) {
    if (t.is_var()) {
        auto it = map.find(t.name());
        if (it != map.end()) return it->second;
        Term v = Term::var("_" + std::to_string(next++));
        map.emplace(t.name(), v);
        return v;
    }
    if (t.ground()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(canonical_with(a, map, next));
    return Term::compound(t.name(), std::move(args));
}

}  // namespace

std::string fresh_var_name() {
    return "_G" + std::to_string(g_var_counter.fetch_add(1, std::memory_order_relaxed));
}

Term fresh_var() { return Term::var(fresh_var_name()); }

Term rename_apart(const Term& t) {
    std::map<std::string, Term> map;
    return rename_with(t, map);
}

std::vector<Term> rename_apart(const std::vector<Term>& ts) {
    std::map<std::string, Term> map;
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const Term& t : ts) out.push_back(rename_with(t, map));
    return out;
}

Term canonical_form(const Term& t) {
    std::map<std::string, Term> map;
    std::size_t next = 0;
    return canonical_with(t, map, next);
}

std::vector<Term> canonical_form(const std::vector<Term>& ts) {
    std::map<std::string, Term> map;
    std::size_t next = 0;
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const Term& t : ts) out.push_back(canonical_with(t, map, next));
    return out;
}

}  // namespace uglr
