#ifndef UGLR_TABLES_HPP
#define UGLR_TABLES_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "uglr/grammar.hpp"
#include "uglr/term.hpp"

namespace uglr {

struct DottedItem {
    int rule = 0;  // CFRule id
    int dot = 0;   // 0..len(rhs)
    friend auto operator<=>(const DottedItem&, const DottedItem&) = default;
};

struct LRState {
    int id = 0;
    std::vector<DottedItem> kernel;  // sorted, unique
    std::vector<DottedItem> items;   // closure of the kernel, sorted, unique
    friend bool operator==(const LRState&, const LRState&) = default;
};

/// Shift (terminal sym) or goto (nonterminal sym) edge. `gen` is the
/// anti-unification of every source-rule phrase that sits after a dot in
/// `from` and maps to `sym` — the generalized symbol the runtime unifies
/// against.
struct Transition {
    int from = 0;
    CFSymbol sym;
    int to = 0;
    Term gen = Term::atom("$void");
    friend bool operator==(const Transition&, const Transition&) = default;
};

struct ReduceEntry {
    int state = 0;
    int rule = 0;                       // CFRule id
    std::vector<CFSymbol> lookaheads;   // sorted ground terminals
    friend bool operator==(const ReduceEntry&, const ReduceEntry&) = default;
};

/// Obligation to push a gap when the state is entered and the gating
/// prefix (the adds-rule's already-consumed RHS phrases) matches the
/// stack.
struct GapAddEntry {
    int state = 0;
    std::string tag;
    CFSymbol cf;                     // list element: the filler's CF image
    Term phrase = Term::atom("$void");
    std::vector<Term> prefix;
    friend bool operator==(const GapAddEntry&, const GapAddEntry&) = default;
};

enum class TableMode { SLR, LALR };

std::string to_string(TableMode m);

struct ParseTables {
    TableMode mode = TableMode::SLR;
    Grammar grammar;  // canonicalized copy
    std::vector<CFRule> backbone;
    std::vector<GeneralizedRule> gen_rules;  // parallel to backbone
    std::vector<GeneralizedLexeme> lexemes;  // sorted by (word, cf)
    std::vector<LRState> states;
    std::vector<Transition> transitions;     // sorted by (from, sym)
    std::vector<ReduceEntry> reduces;        // sorted by (state, rule)
    int accept_state = -1;                   // the state holding $start -> top ·
    std::vector<std::vector<std::vector<Term>>> back_check;  // state -> prefixes
    std::vector<GapAddEntry> gap_adds;       // sorted by state

    const Transition* find_transition(int from, const CFSymbol& sym) const;
    const ReduceEntry* find_reduce(int state, int rule) const;

    bool operator==(const ParseTables&) const;
};

struct Automaton {
    std::vector<LRState> states;
    std::vector<Transition> transitions;
};

/// True iff some source of r1 has, after `dot`, a phrase unifying with
/// some source LHS of r2 (both renamed apart). The augmented rule filters
/// nothing.
bool check_ug_rules(const Grammar& g, const std::vector<CFRule>& backbone, int r1, int r2,
                    int dot);

/// Smallest UG-filtered superset of `seed` closed under prediction:
/// non-kernel items are added uninstantiated, so the fixpoint is finite.
std::vector<DottedItem> closure(std::vector<DottedItem> seed, const Grammar& g,
                                const std::vector<CFRule>& backbone);

/// BFS induction from the augmented start item; states deduplicated by
/// kernel; numbering deterministic (BFS order, symbols in term order).
Automaton build_automaton(const Grammar& g, const std::vector<CFRule>& backbone);

/// FOLLOW sets over the backbone, indexed by CF rule id (= FOLLOW of the
/// rule's LHS). Index 0 carries FOLLOW($start) = {$end}.
std::vector<std::vector<CFSymbol>> slr_lookaheads(const Grammar& g,
                                                  const std::vector<CFRule>& backbone);

/// Per-state reduce lookaheads by spontaneous generation and propagation
/// over kernel items; empty productions get theirs from the LR(1) closure
/// of the stabilized kernel lookaheads.
/// Result is keyed like ReduceEntry: one entry per (state, completable
/// rule), sorted.
std::vector<ReduceEntry> lalr_lookaheads(const Automaton& a, const Grammar& g,
                                         const std::vector<CFRule>& backbone);

ParseTables assemble_tables(const Automaton& a, const Grammar& g,
                            const std::vector<CFRule>& backbone, TableMode mode);

/// load -> backbone -> automaton -> lookaheads -> tables.
ParseTables compile_tables(const Grammar& g, TableMode mode);

/// Versioned, checksummed, byte-stable text container.
std::string serialize_tables(const ParseTables& t);
/// Throws TableError on version mismatch, checksum failure, or malformed
/// content.
ParseTables deserialize_tables(const std::string& bytes);

/// Item sets and actions, one block per state, in the classical
/// `LHS → α · β` rendering (nonterminals upper-cased, terminals
/// capitalized, end marker `$`).
std::string dump_states(const ParseTables& t);

}  // namespace uglr

#endif
