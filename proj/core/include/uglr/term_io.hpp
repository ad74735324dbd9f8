#ifndef UGLR_TERM_IO_HPP
#define UGLR_TERM_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "uglr/term.hpp"

namespace uglr {

/// Resolves category names to their declared feature lists, so that the
/// reader can desugar `cat:[f=V,...]` and the writer can sugar it back.
class SugarContext {
public:
    virtual ~SugarContext() = default;
    /// nullptr when `name` is not a declared category.
    virtual const std::vector<std::string>* category_features(const std::string& name) const = 0;
};

/// Renders a term. With a sugar context, compounds whose functor is a
/// declared category of matching arity print as `cat:[f1=...,f2=...]`
/// (zero-feature categories print bare).
std::string term_to_string(const Term& t, const SugarContext* sugar = nullptr);

std::string terms_to_string(const std::vector<Term>& ts, const SugarContext* sugar = nullptr,
                            const std::string& sep = ",");

/// Parses the textual term syntax: `functor(arg1,...)`, variables start
/// with an uppercase letter or `_`, `_` alone is a fresh anonymous
/// variable, and `cat:[f=V,...]` desugars against the sugar context.
/// Named variables are shared within a single call. Throws GrammarError
/// on syntax errors.
Term parse_term(std::string_view text, const SugarContext* sugar = nullptr);

}  // namespace uglr

#endif
