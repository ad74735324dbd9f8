#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "uglr/errors.hpp"
#include "uglr/tables.hpp"
#include "uglr/term_io.hpp"

namespace uglr {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::string grammar_text(const Grammar& g) {
    std::string out;
    for (const CategoryDecl& c : g.categories) {
        out += "category " + c.name;
        if (!c.features.empty()) out += " features [" + join(c.features) + "]";
        if (!c.distinguishing.empty()) out += " distinguish [" + join(c.distinguishing) + "]";
        out += ".\n";
    }
    out += "top " + g.top + ".\n";
    for (const UGRule& r : g.rules) {
        out += "rule " + r.id + ": " + term_to_string(r.lhs.term) + " => [";
        for (std::size_t i = 0; i < r.rhs.size(); ++i) {
            if (i) out += ",";
            out += term_to_string(r.rhs[i].term);
        }
        out += "]";
        if (r.gap.kind == GapKind::Adds)
            out += " adds " + r.gap.tag + " " + term_to_string(r.gap.phrase->term);
        else if (r.gap.kind == GapKind::Consumes)
            out += " consumes " + r.gap.tag;
        if (r.sem) out += " sem " + term_to_string(*r.sem);
        out += ".\n";
    }
    for (const LexEntry& e : g.lexicon) {
        out += "lex \"" + e.word + "\": " + term_to_string(e.phrase.term);
        if (e.sem) out += " sem " + term_to_string(*e.sem);
        out += ".\n";
    }
    return out;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

std::string serialize_tables(const ParseTables& t) {
    std::string b;
    std::string gtext = grammar_text(t.grammar);
    b += "grammar " + std::to_string(count_lines(gtext)) + "\n" + gtext;

    b += "backbone " + std::to_string(t.backbone.size()) + "\n";
    for (const CFRule& r : t.backbone) {
        b += std::to_string(r.id) + " " + r.lhs.str() + " " + std::to_string(r.rhs.size());
        for (const CFSymbol& s : r.rhs) b += " " + s.str();
        b += " " + std::to_string(r.sources.size());
        for (std::size_t s : r.sources) b += " " + std::to_string(s);
        b += "\n";
    }

    b += "genrules " + std::to_string(t.gen_rules.size()) + "\n";
    for (const GeneralizedRule& r : t.gen_rules) {
        b += std::to_string(r.cf_rule) + " " + (r.exact ? "1" : "0") + " " +
             term_to_string(r.lhs.term) + " " + std::to_string(r.rhs.size());
        for (const Phrase& p : r.rhs) b += " " + term_to_string(p.term);
        b += "\n";
    }

    b += "genlex " + std::to_string(t.lexemes.size()) + "\n";
    for (const GeneralizedLexeme& l : t.lexemes) {
        b += l.word + " " + l.cf.str() + " " + (l.exact ? "1" : "0") + " " +
             term_to_string(l.phrase.term) + " " + std::to_string(l.sources.size());
        for (std::size_t s : l.sources) b += " " + std::to_string(s);
        b += "\n";
    }

    b += "states " + std::to_string(t.states.size()) + "\n";
    for (const LRState& st : t.states) {
        b += std::to_string(st.id) + " " + std::to_string(st.kernel.size());
        for (DottedItem it : st.kernel)
            b += " " + std::to_string(it.rule) + " " + std::to_string(it.dot);
        b += " " + std::to_string(st.items.size());
        for (DottedItem it : st.items)
            b += " " + std::to_string(it.rule) + " " + std::to_string(it.dot);
        b += "\n";
    }

    b += "trans " + std::to_string(t.transitions.size()) + "\n";
    for (const Transition& tr : t.transitions)
        b += std::to_string(tr.from) + " " + tr.sym.str() + " " + std::to_string(tr.to) + " " +
             term_to_string(tr.gen) + "\n";

    b += "reduce " + std::to_string(t.reduces.size()) + "\n";
    for (const ReduceEntry& r : t.reduces) {
        b += std::to_string(r.state) + " " + std::to_string(r.rule) + " " +
             std::to_string(r.lookaheads.size());
        for (const CFSymbol& s : r.lookaheads) b += " " + s.str();
        b += "\n";
    }

    b += "accept " + std::to_string(t.accept_state) + "\n";

    b += "backcheck " + std::to_string(t.back_check.size()) + "\n";
    for (std::size_t s = 0; s < t.back_check.size(); ++s) {
        b += std::to_string(s) + " " + std::to_string(t.back_check[s].size());
        for (const std::vector<Term>& pre : t.back_check[s]) {
            b += " " + std::to_string(pre.size());
            for (const Term& p : pre) b += " " + term_to_string(p);
        }
        b += "\n";
    }

    b += "gapadd " + std::to_string(t.gap_adds.size()) + "\n";
    for (const GapAddEntry& e : t.gap_adds) {
        b += std::to_string(e.state) + " " + e.tag + " " + e.cf.str() + " " +
             term_to_string(e.phrase) + " " + std::to_string(e.prefix.size());
        for (const Term& p : e.prefix) b += " " + term_to_string(p);
        b += "\n";
    }
    b += "end\n";

    return "uglr-tables v1 mode=" + to_string(t.mode) + " checksum=fnv1a:" + hex16(fnv1a(b)) +
           "\n" + b;
}

namespace {

/// Line/word cursor over the serialized body.
class BodyReader {
public:
    explicit BodyReader(std::string_view body) : body_(body) {}

    std::vector<std::string> line() {
        if (pos_ >= body_.size()) throw TableError("table file truncated");
        std::size_t nl = body_.find('\n', pos_);
        if (nl == std::string_view::npos) throw TableError("table file truncated");
        std::string_view ln = body_.substr(pos_, nl - pos_);
        pos_ = nl + 1;
        std::vector<std::string> words;
        std::size_t i = 0;
        while (i < ln.size()) {
            std::size_t sp = ln.find(' ', i);
            if (sp == std::string_view::npos) sp = ln.size();
            if (sp > i) words.emplace_back(ln.substr(i, sp - i));
            i = sp + 1;
        }
        return words;
    }

    std::string raw_line() {
        std::size_t nl = body_.find('\n', pos_);
        if (nl == std::string_view::npos) throw TableError("table file truncated");
        std::string out(body_.substr(pos_, nl - pos_));
        pos_ = nl + 1;
        return out;
    }

    bool done() const { return pos_ >= body_.size(); }

private:
    std::string_view body_;
    std::size_t pos_ = 0;
};

long to_int(const std::string& s) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw TableError("bad integer \"" + s + "\"");
        return v;
    } catch (const TableError&) {
        throw;
    } catch (...) {
        throw TableError("bad integer \"" + s + "\"");
    }
}

std::vector<std::string> section(BodyReader& r, const std::string& name, std::size_t* count) {
    std::vector<std::string> w = r.line();
    if (w.size() != 2 || w[0] != name)
        throw TableError("expected section \"" + name + "\"");
    *count = static_cast<std::size_t>(to_int(w[1]));
    return w;
}

Term read_term_str(const std::string& s) {
    try {
        return parse_term(s);
    } catch (const GrammarError& e) {
        throw TableError(std::string("bad term in table file: ") + e.what());
    }
}

/// A word cursor over one line, validating counts.
class Words {
public:
    explicit Words(std::vector<std::string> w) : w_(std::move(w)) {}
    const std::string& str() {
        if (i_ >= w_.size()) throw TableError("short line in table file");
        return w_[i_++];
    }
    long num() { return to_int(str()); }
    Term term() { return read_term_str(str()); }
    CFSymbol cf() { return CFSymbol{term()}; }
    void finish() const {
        if (i_ != w_.size()) throw TableError("trailing fields in table file line");
    }

private:
    std::vector<std::string> w_;
    std::size_t i_ = 0;
};

}  // namespace

ParseTables deserialize_tables(const std::string& bytes) {
    std::size_t nl = bytes.find('\n');
    if (nl == std::string::npos) throw TableError("not a table file");
    std::string header = bytes.substr(0, nl);
    std::string body = bytes.substr(nl + 1);

    std::istringstream hs(header);
    std::string magic, version, modefield, sumfield;
    hs >> magic >> version >> modefield >> sumfield;
    if (magic != "uglr-tables") throw TableError("not a table file (bad magic)");
    if (version != "v1") throw TableError("unsupported table file version \"" + version + "\"");
    if (modefield.rfind("mode=", 0) != 0 || sumfield.rfind("checksum=fnv1a:", 0) != 0)
        throw TableError("malformed table file header");
    ParseTables t;
    std::string mode = modefield.substr(5);
    if (mode == "slr")
        t.mode = TableMode::SLR;
    else if (mode == "lalr")
        t.mode = TableMode::LALR;
    else
        throw TableError("unknown mode \"" + mode + "\"");
    if (sumfield.substr(15) != hex16(fnv1a(body)))
        throw TableError("checksum mismatch: table file is corrupted");

    BodyReader r(body);
    std::size_t n = 0;

    section(r, "grammar", &n);
    std::string gtext;
    for (std::size_t i = 0; i < n; ++i) gtext += r.raw_line() + "\n";
    try {
        t.grammar = load_grammar(gtext);
    } catch (const GrammarError& e) {
        throw TableError(std::string("embedded grammar does not load: ") + e.what());
    }
    for (CategoryDecl& c : t.grammar.categories) c.line = 0;
    for (UGRule& g : t.grammar.rules) g.line = 0;
    for (LexEntry& e : t.grammar.lexicon) e.line = 0;

    section(r, "backbone", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        CFRule cf;
        cf.id = static_cast<int>(w.num());
        cf.lhs = w.cf();
        for (long k = w.num(); k > 0; --k) cf.rhs.push_back(w.cf());
        for (long k = w.num(); k > 0; --k) cf.sources.push_back(static_cast<std::size_t>(w.num()));
        w.finish();
        t.backbone.push_back(std::move(cf));
    }

    section(r, "genrules", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        GeneralizedRule gr;
        gr.cf_rule = static_cast<int>(w.num());
        gr.exact = w.num() != 0;
        Term lhs = w.term();
        gr.lhs = Phrase{lhs.name(), lhs};
        for (long k = w.num(); k > 0; --k) {
            Term p = w.term();
            gr.rhs.push_back(Phrase{p.name(), p});
        }
        w.finish();
        t.gen_rules.push_back(std::move(gr));
    }

    section(r, "genlex", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        GeneralizedLexeme l;
        l.word = w.str();
        l.cf = w.cf();
        l.exact = w.num() != 0;
        Term p = w.term();
        l.phrase = Phrase{p.name(), p};
        for (long k = w.num(); k > 0; --k) l.sources.push_back(static_cast<std::size_t>(w.num()));
        w.finish();
        t.lexemes.push_back(std::move(l));
    }

    section(r, "states", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        LRState st;
        st.id = static_cast<int>(w.num());
        for (long k = w.num(); k > 0; --k) {
            int rule = static_cast<int>(w.num());
            st.kernel.push_back(DottedItem{rule, static_cast<int>(w.num())});
        }
        for (long k = w.num(); k > 0; --k) {
            int rule = static_cast<int>(w.num());
            st.items.push_back(DottedItem{rule, static_cast<int>(w.num())});
        }
        w.finish();
        t.states.push_back(std::move(st));
    }

    section(r, "trans", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        Transition tr;
        tr.from = static_cast<int>(w.num());
        tr.sym = w.cf();
        tr.to = static_cast<int>(w.num());
        tr.gen = w.term();
        w.finish();
        t.transitions.push_back(std::move(tr));
    }

    section(r, "reduce", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        ReduceEntry re;
        re.state = static_cast<int>(w.num());
        re.rule = static_cast<int>(w.num());
        for (long k = w.num(); k > 0; --k) re.lookaheads.push_back(w.cf());
        w.finish();
        t.reduces.push_back(std::move(re));
    }

    {
        Words w(r.line());
        if (w.str() != "accept") throw TableError("expected section \"accept\"");
        t.accept_state = static_cast<int>(w.num());
        w.finish();
    }

    section(r, "backcheck", &n);
    t.back_check.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        std::size_t state = static_cast<std::size_t>(w.num());
        if (state >= t.back_check.size()) throw TableError("back-check state out of range");
        for (long k = w.num(); k > 0; --k) {
            std::vector<Term> pre;
            for (long j = w.num(); j > 0; --j) pre.push_back(w.term());
            t.back_check[state].push_back(std::move(pre));
        }
        w.finish();
    }

    section(r, "gapadd", &n);
    for (std::size_t i = 0; i < n; ++i) {
        Words w(r.line());
        GapAddEntry e;
        e.state = static_cast<int>(w.num());
        e.tag = w.str();
        e.cf = w.cf();
        e.phrase = w.term();
        for (long k = w.num(); k > 0; --k) e.prefix.push_back(w.term());
        w.finish();
        t.gap_adds.push_back(std::move(e));
    }

    {
        Words w(r.line());
        if (w.str() != "end") throw TableError("expected \"end\"");
        w.finish();
    }
    if (!r.done()) throw TableError("trailing bytes after \"end\"");
    return t;
}

// ---------------------------------------------------------------------------
// dump-states

namespace {

/// Textbook styling: nonterminals in caps, terminals capitalized, the
/// augmented symbol as Top', end marker as $.
struct Styler {
    const ParseTables& t;
    std::set<CFSymbol> nonterminal;

    explicit Styler(const ParseTables& tables) : t(tables) {
        for (const CFRule& r : t.backbone) nonterminal.insert(r.lhs);
    }

    std::string operator()(const CFSymbol& s) const {
        if (s == cf_end()) return "$";
        if (s == cf_start()) {
            std::string top = g_upper(t.grammar.top);
            return top + "'";
        }
        std::string name = s.term.name();
        std::string args;
        if (s.term.arity() > 0) {
            args = "(";
            for (std::size_t i = 0; i < s.term.arity(); ++i) {
                if (i) args += ",";
                args += term_to_string(s.term.args()[i]);
            }
            args += ")";
        }
        if (nonterminal.count(s)) return g_upper(name) + args;
        std::string cap = name;
        cap[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap[0])));
        return cap + args;
    }

    static std::string g_upper(std::string s) {
        for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return s;
    }
};

}  // namespace

std::string dump_states(const ParseTables& t) {
    Styler style(t);
    std::string out;
    for (const LRState& st : t.states) {
        if (st.id) out += "\n";
        out += "State " + std::to_string(st.id) + "\n";
        auto render_item = [&](DottedItem it) {
            const CFRule& r = t.backbone[it.rule];
            std::string line = "  " + style(r.lhs) + " →";
            for (std::size_t i = 0; i <= r.rhs.size(); ++i) {
                if (static_cast<int>(i) == it.dot) line += " ·";
                if (i < r.rhs.size()) line += " " + style(r.rhs[i]);
            }
            out += line + "\n";
        };
        for (DottedItem it : st.kernel) render_item(it);
        for (DottedItem it : st.items)
            if (std::find(st.kernel.begin(), st.kernel.end(), it) == st.kernel.end())
                render_item(it);
        for (const Transition& tr : t.transitions) {
            if (tr.from != st.id) continue;
            bool isgoto = style.nonterminal.count(tr.sym) != 0;
            out += std::string("  ") + (isgoto ? "goto " : "shift ") + style(tr.sym) +
                   " → state " + std::to_string(tr.to) + "  [" +
                   term_to_string(tr.gen, &t.grammar) + "]\n";
        }
        for (const ReduceEntry& re : t.reduces) {
            if (re.state != st.id) continue;
            const CFRule& r = t.backbone[re.rule];
            std::string line = "  reduce " + style(r.lhs) + " →";
            if (r.rhs.empty()) line += " ε";
            for (const CFSymbol& s : r.rhs) line += " " + style(s);
            line += "  on";
            for (const CFSymbol& s : re.lookaheads) line += " " + style(s);
            out += line + "\n";
        }
        if (st.id == t.accept_state) out += "  accept on $\n";
        for (const GapAddEntry& e : t.gap_adds) {
            if (e.state != st.id) continue;
            out += "  gap-add " + e.tag + " " + e.cf.str() + " [" +
                   term_to_string(e.phrase, &t.grammar) + "]\n";
        }
    }
    return out;
}

}  // namespace uglr
