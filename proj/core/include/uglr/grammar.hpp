#ifndef UGLR_GRAMMAR_HPP
#define UGLR_GRAMMAR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uglr/term.hpp"
#include "uglr/term_io.hpp"

namespace uglr {

/// `category np features [agr,case] distinguish [case].`
/// Distinguishing features split the category into one context-free
/// symbol per ground value combination.
struct CategoryDecl {
    std::string name;
    std::vector<std::string> features;
    std::vector<std::string> distinguishing;  // subset of features, in feature order
    std::size_t line = 0;

    std::size_t feature_index(const std::string& f) const;  // npos when absent

    friend bool operator==(const CategoryDecl&, const CategoryDecl&) = default;
};

/// A categorized term: `term` is the desugared `cat:[...]` compound whose
/// argument positions follow the category's declared feature order.
struct Phrase {
    std::string category;
    Term term;

    friend bool operator==(const Phrase& a, const Phrase& b) {
        return a.category == b.category && a.term == b.term;
    }
};

enum class GapKind { None, Adds, Consumes };

inline constexpr const char* kGapVerb = "verb";
inline constexpr const char* kGapMaxproj = "maxproj";

struct GapRole {
    GapKind kind = GapKind::None;
    std::string tag;                // "verb" or "maxproj"
    std::optional<Phrase> phrase;   // the filler placed on the list (Adds only)

    friend bool operator==(const GapRole&, const GapRole&) = default;
};

struct UGRule {
    std::string id;
    Phrase lhs;
    std::vector<Phrase> rhs;        // empty for gap-consuming productions
    std::optional<Term> sem;        // arity 1+len(rhs): sem slots (mother, d1..dn)
    GapRole gap;
    std::size_t line = 0;

    friend bool operator==(const UGRule&, const UGRule&) = default;
};

struct LexEntry {
    std::string word;
    Phrase phrase;
    std::optional<Term> sem;
    std::size_t line = 0;

    friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

/// Context-free image of a phrase: the category functor applied to the
/// ground distinguishing values. Always ground, so instantiating the
/// source phrase never changes it.
struct CFSymbol {
    Term term = Term::atom("$void");

    std::string str() const;

    friend bool operator==(const CFSymbol& a, const CFSymbol& b) { return a.term == b.term; }
    friend bool operator!=(const CFSymbol& a, const CFSymbol& b) { return a.term != b.term; }
    friend bool operator<(const CFSymbol& a, const CFSymbol& b) { return a.term < b.term; }
};

CFSymbol cf_start();  // augmented start symbol $start
CFSymbol cf_end();    // end-of-input marker $end

/// Backbone rule: one per distinct CF image of the UG rules. Rule 0 is
/// always the augmented `$start -> top`; authored rules are numbered from
/// 1 by first appearance in the grammar.
struct CFRule {
    int id = 0;
    CFSymbol lhs;
    std::vector<CFSymbol> rhs;
    std::vector<std::size_t> sources;  // indices into Grammar::rules, ascending; empty for rule 0

    friend bool operator==(const CFRule&, const CFRule&) = default;
};

/// Anti-unification fold over all sources of one CF rule, taken over the
/// whole rule (LHS and RHS wrapped in a single term) so that variable
/// sharing between positions survives exactly when all sources agree on
/// it.
struct GeneralizedRule {
    int cf_rule = 0;
    Phrase lhs;
    std::vector<Phrase> rhs;
    bool exact = false;  // single source: phase 1 already applies the full constraints

    friend bool operator==(const GeneralizedRule&, const GeneralizedRule&) = default;
};

/// Per (word, CF symbol): the fold over every lexicon entry of that word
/// with that image.
struct GeneralizedLexeme {
    std::string word;
    CFSymbol cf;
    Phrase phrase;
    std::vector<std::size_t> sources;  // indices into Grammar::lexicon, ascending
    bool exact = false;

    friend bool operator==(const GeneralizedLexeme&, const GeneralizedLexeme&) = default;
};

class Grammar : public SugarContext {
public:
    std::vector<CategoryDecl> categories;  // declaration order
    std::vector<UGRule> rules;             // declaration order, ids unique
    std::vector<LexEntry> lexicon;         // declaration order
    std::string top;

    const CategoryDecl* find_category(const std::string& name) const;
    const UGRule* find_rule(const std::string& id) const;

    const std::vector<std::string>* category_features(const std::string& name) const override;

    friend bool operator==(const Grammar& a, const Grammar& b) {
        return a.categories == b.categories && a.rules == b.rules && a.lexicon == b.lexicon &&
               a.top == b.top;
    }
};

/// Parses and validates grammar source text. Throws GrammarError with a
/// source location on syntax or validation failures.
Grammar load_grammar(std::string_view source);
Grammar load_grammar_file(const std::string& path);  // adds the path to error messages

CFSymbol map_to_cf(const Grammar& g, const Phrase& p);

/// Category with every feature position a fresh variable.
Phrase most_general_phrase(const CategoryDecl& c);

std::vector<CFRule> build_backbone(const Grammar& g);

/// Parallel to the backbone (index = CFRule id).
std::vector<GeneralizedRule> generalize_rules(const Grammar& g,
                                              const std::vector<CFRule>& backbone);

/// Sorted by (word, cf).
std::vector<GeneralizedLexeme> generalize_lexicon(const Grammar& g);

}  // namespace uglr

#endif
