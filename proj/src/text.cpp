#include "slowsetnim/text.hpp"

#include <cctype>
#include <charconv>

namespace slowsetnim {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

// Splits on commas, dropping whitespace; records the column of each token.
std::vector<Token> split_csv(std::string_view text, std::size_t offset) {
  std::vector<Token> out;
  Token cur{"", offset};
  bool started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ',') {
      out.push_back(cur);
      cur = {"", offset + i + 1};
      started = false;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      if (!started) cur.column = offset + i;
      started = true;
      cur.text += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_unsigned(const Token& t, const char* what) {
  if (t.text.empty()) throw ParseError(std::string("empty ") + what, t.column);
  std::uint64_t v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string(what) + " '" + t.text + "' does not fit 64 bits", t.column);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(std::string("invalid ") + what + " '" + t.text + "'", t.column);
  return v;
}

int parse_size(const Token& t, int n) {
  if (!t.text.empty() && t.text[0] == 'n') {
    if (t.text == "n") return n;
    if (t.text.size() < 3 || t.text[1] != '-')
      throw ParseError("invalid symbolic size '" + t.text + "'", t.column);
    const Token rest{t.text.substr(2), t.column + 2};
    const auto d = parse_unsigned(rest, "size offset");
    return n - static_cast<int>(d);
  }
  const auto v = parse_unsigned(t, "move size");
  if (v > 1'000'000) throw ParseError("move size '" + t.text + "' too large", t.column);
  return static_cast<int>(v);
}

}  // namespace

// Accepts "1,2,5,6" and the printed form "(1,2,5,6)".
std::vector<Height> parse_heights(std::string_view text) {
  std::vector<Height> out;
  std::size_t offset = 0;
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos) return out;
  if (text[first] == '(' && text[last] == ')' && last > first) {
    offset = first + 1;
    text = text.substr(offset, last - offset);
    if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  }
  for (const Token& t : split_csv(text, offset)) out.push_back(parse_unsigned(t, "stack height"));
  return out;
}

Position parse_position(std::string_view text) { return canonicalize(parse_heights(text)); }

GameSpec parse_game(std::string_view text, int n) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("game must look like exact:K, atleast:K, atmost:K or set:K,...", 0);
  std::string kind;
  for (char c : text.substr(0, colon))
    if (!std::isspace(static_cast<unsigned char>(c)))
      kind += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto tokens = split_csv(text.substr(colon + 1), colon + 1);

  std::vector<int> sizes;
  for (const Token& t : tokens) {
    const int k = parse_size(t, n);
    if (k < 1 || k > n)
      throw ParseError("move size " + std::to_string(k) + " outside 1.." + std::to_string(n),
                       t.column);
    sizes.push_back(k);
  }

  if (kind == "set") return GameSpec(n, sizes);
  if (tokens.size() != 1)
    throw ParseError("'" + kind + "' takes exactly one size", tokens.size() > 1 ? tokens[1].column : colon);
  if (kind == "exact") return GameSpec::exact(n, sizes[0]);
  if (kind == "atleast") return GameSpec::at_least(n, sizes[0]);
  if (kind == "atmost") return GameSpec::at_most(n, sizes[0]);
  throw ParseError("unknown game kind '" + kind + "'", 0);
}

std::string format_game(const GameSpec& spec) {
  std::string out = "set:";
  for (std::size_t i = 0; i < spec.moves().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(spec.moves()[i]);
  }
  return out;
}

std::string format_heights(const Position& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace slowsetnim
