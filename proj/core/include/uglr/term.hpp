#ifndef UGLR_TERM_HPP
#define UGLR_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace uglr {

/// First-order term: a variable or a compound `functor(arg1,...,argN)`.
/// An atom is a compound of arity zero. Terms are immutable values;
/// copies share structure, so passing them around is cheap.
class Term {
public:
    /// Default-constructs the atom `$void`. Exists for containers only.
    Term();

    static Term var(std::string name);
    static Term atom(std::string functor);
    static Term compound(std::string functor, std::vector<Term> args);

    bool is_var() const noexcept { return rep_->var; }
    bool is_compound() const noexcept { return !rep_->var; }
    bool is_atom() const noexcept { return !rep_->var && rep_->args.empty(); }

    /// Variable name, or the functor for compounds.
    const std::string& name() const noexcept { return rep_->name; }
    const std::vector<Term>& args() const noexcept { return rep_->args; }
    std::size_t arity() const noexcept { return rep_->args.size(); }

    bool ground() const;

    /// Variable names in depth-first left-to-right first-occurrence order.
    std::vector<std::string> vars() const;

    /// Total order: variables sort before compounds and by name among
    /// themselves; compounds by functor, then arity, then arguments left
    /// to right. Consistent with syntactic equality and stable across
    /// runs and platforms.
    static int compare(const Term& a, const Term& b);

    friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
    friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

private:
    struct Rep {
        bool var;
        std::string name;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

/// Idempotent map from variable names to terms. Applying it twice gives
/// the same result as applying it once; no binding is cyclic.
class Substitution {
public:
    Substitution() = default;

    bool empty() const noexcept { return bind_.empty(); }
    std::size_t size() const noexcept { return bind_.size(); }

    /// nullptr when the variable is unbound.
    const Term* lookup(const std::string& var) const;

    /// Applies the substitution to every variable occurrence in t.
    Term apply(const Term& t) const;
    Term operator()(const Term& t) const { return apply(t); }

    const std::map<std::string, Term>& bindings() const noexcept { return bind_; }

    /// Used by the unifier; callers normally never build substitutions by hand.
    void bind(std::string var, Term value);

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<std::string, Term> bind_;
};

/// Most general unifier of a and b, or nullopt when none exists.
/// Occurs check is on: unify(X, f(X)) fails rather than building a cycle.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Element-wise unification of two equal-length sequences under one
/// substitution.
std::optional<Substitution> unify_seq(const std::vector<Term>& as, const std::vector<Term>& bs);

/// Least general generalization (Plotkin): the most specific term that
/// subsumes both inputs. Identical disagreement pairs at different
/// positions reuse the same variable, and all variables in the result are
/// fresh, so the result never shares variables with the inputs.
Term anti_unify(const Term& a, const Term& b);

/// Left fold of anti_unify over a nonempty sequence. The fold order does
/// not matter up to variable renaming. A singleton folds to a fresh
/// variant of its element.
Term anti_unify_all(const std::vector<Term>& terms);

/// True iff some substitution binding only variables of `general` maps it
/// syntactically onto `specific`.
bool subsumes(const Term& general, const Term& specific);

/// Equality up to a bijective variable renaming.
bool variant_equal(const Term& a, const Term& b);

/// Fresh variable with a process-unique name (`_G<n>`).
Term fresh_var();
std::string fresh_var_name();

/// Copy of t with every variable consistently replaced by a fresh one.
Term rename_apart(const Term& t);
/// Joint renaming: shared variables stay shared across the sequence.
std::vector<Term> rename_apart(const std::vector<Term>& ts);

/// Canonical variable numbering: variables renamed to `_0`, `_1`, ... in
/// depth-first left-to-right first-occurrence order. Makes serialized
/// terms byte-stable. Idempotent.
Term canonical_form(const Term& t);
/// Joint canonical renaming across a sequence.
std::vector<Term> canonical_form(const std::vector<Term>& ts);

}  // namespace uglr

#endif
