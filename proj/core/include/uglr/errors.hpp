#ifndef UGLR_ERRORS_HPP
#define UGLR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uglr {

/// Grammar file syntax or validation failure, with 1-based source location.
class GrammarError : public std::runtime_error {
public:
    GrammarError(const std::string& msg, std::size_t line = 0, std::size_t col = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ", column " +
                                        std::to_string(col) + ")"
                                  : msg),
          line(line),
          col(col) {}

    std::size_t line;
    std::size_t col;
};

/// Malformed, corrupted, or version-incompatible table file.
class TableError : public std::runtime_error {
public:
    explicit TableError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A sentence word with no lexicon entry.
class UnknownWordError : public std::runtime_error {
public:
    UnknownWordError(std::string word, std::size_t position)
        : std::runtime_error("unknown word \"" + word + "\" at position " +
                             std::to_string(position + 1)),
          word(std::move(word)),
          position(position) {}

    std::string word;
    std::size_t position;  // 0-based token index
};

}  // namespace uglr

#endif
