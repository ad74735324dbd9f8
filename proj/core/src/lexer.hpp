#ifndef UGLR_SRC_LEXER_HPP
#define UGLR_SRC_LEXER_HPP

// Internal tokenizer shared by the term reader, the grammar loader and the
// table-file reader. Not installed.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "uglr/errors.hpp"
#include "uglr/term.hpp"

namespace uglr::detail {

enum class Tok {
    End,
    Ident,    // bare word: letters, digits, _, $, starting char decides var/atom
    String,   // "..." (lexicon words)
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Arrow,    // =>
    Colon,
    Dot,
    Bar,      // |
    At,       // @
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind)
            throw GrammarError("expected " + what + ", got \"" + describe(cur_) + "\"", cur_.line,
                               cur_.col);
        return next();
    }

    bool accept(Tok kind) {
        if (cur_.kind != kind) return false;
        advance();
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw GrammarError(msg, cur_.line, cur_.col);
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::End: return "<end of input>";
            case Tok::String: return "\"" + t.text + "\"";
            default: return t.text;
        }
    }

private:
    void advance() {
        skip_space();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            cur_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (is_ident_char(c)) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) bump();
            cur_.kind = Tok::Ident;
            cur_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (c == '"') {
            bump();
            std::size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') bump();
            if (pos_ >= src_.size() || src_[pos_] != '"')
                throw GrammarError("unterminated string", cur_.line, cur_.col);
            cur_.kind = Tok::String;
            cur_.text = std::string(src_.substr(start, pos_ - start));
            bump();
            return;
        }
        if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            bump();
            bump();
            cur_.kind = Tok::Arrow;
            cur_.text = "=>";
            return;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case '=': kind = Tok::Eq; break;
            case ':': kind = Tok::Colon; break;
            case '.': kind = Tok::Dot; break;
            case '|': kind = Tok::Bar; break;
            case '@': kind = Tok::At; break;
            default:
                throw GrammarError(std::string("unexpected character \"") + c + "\"", line_, col_);
        }
        cur_.kind = kind;
        cur_.text = std::string(1, c);
        bump();
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    static bool is_ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '$' || c == '\'';
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token cur_;
};

/// Named-variable scope for one statement; `_` is always fresh.
struct VarScope {
    std::map<std::string, Term> named;

    Term get(const std::string& name) {
        if (name == "_") return fresh_var();
        auto it = named.find(name);
        if (it != named.end()) return it->second;
        Term v = Term::var(name);
        named.emplace(name, v);
        return v;
    }
};

inline bool is_var_name(const std::string& s) {
    return !s.empty() && ((s[0] >= 'A' && s[0] <= 'Z') || s[0] == '_');
}

}  // namespace uglr::detail

namespace uglr {
class SugarContext;
}

namespace uglr::detail {

/// Reads one term at the lexer's current position (shared with the
/// grammar loader, which parses terms embedded in larger statements).
/// Defined in term_io.cpp.
Term read_term(Lexer& lx, VarScope& scope, const SugarContext* sugar);

}  // namespace uglr::detail

#endif
