#pragma once

// Text forms accepted on the command line.
//
//   position:  "1,2,5,6"  (whitespace ignored)
//   game:      "exact:K" | "atleast:K" | "atmost:K" | "set:K1,K2,..."
//              where each K may also be "n", "n-1", "n-2", ... resolved
//              against the stack count.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slowsetnim/core.hpp"

namespace slowsetnim {

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t column)
      : std::invalid_argument(what + " (at column " + std::to_string(column + 1) + ")"),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

std::vector<Height> parse_heights(std::string_view text);
Position parse_position(std::string_view text);

GameSpec parse_game(std::string_view text, int n);

// Inverse of parse_game for the explicit form: "set:3,4".
std::string format_game(const GameSpec& spec);

// "1,2,5,6"
std::string format_heights(const Position& p);

}  // namespace slowsetnim
