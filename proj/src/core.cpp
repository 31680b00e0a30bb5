#include "slowsetnim/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace slowsetnim {

Position::Position(std::vector<Height> heights) : heights_(std::move(heights)) {
  std::sort(heights_.begin(), heights_.end());
}

Position::Position(std::initializer_list<Height> heights)
    : Position(std::vector<Height>(heights)) {}

std::size_t Position::nonzero_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(heights_.begin(), heights_.end(), [](Height h) { return h != 0; }));
}

std::string Position::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(heights_[i]);
  }
  out += ')';
  return out;
}

std::size_t PositionHash::operator()(const Position& p) const noexcept {
  // FNV-1a over the heights.
  std::uint64_t h = 1469598103934665603ULL;
  for (Height v : p) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

GameSpec::GameSpec(int n, std::vector<int> moves) : n_(n), moves_(std::move(moves)) {
  if (n_ < 1) throw std::invalid_argument("game needs at least one stack");
  std::sort(moves_.begin(), moves_.end());
  moves_.erase(std::unique(moves_.begin(), moves_.end()), moves_.end());
  if (moves_.empty()) throw std::invalid_argument("move set A must not be empty");
  if (moves_.front() < 1 || moves_.back() > n_)
    throw std::invalid_argument("move set A must be a subset of {1.." + std::to_string(n_) + "}");
}

bool GameSpec::allows(std::size_t count) const noexcept {
  return std::binary_search(moves_.begin(), moves_.end(), static_cast<int>(count));
}

GameSpec GameSpec::exact(int n, int k) { return GameSpec(n, {k}); }

GameSpec GameSpec::at_least(int n, int k) {
  std::vector<int> a;
  for (int i = k; i <= n; ++i) a.push_back(i);
  return GameSpec(n, std::move(a));
}

GameSpec GameSpec::at_most(int n, int k) {
  std::vector<int> a;
  for (int i = 1; i <= k; ++i) a.push_back(i);
  return GameSpec(n, std::move(a));
}

std::string GameSpec::to_string() const {
  std::ostringstream os;
  os << "SN(" << n_ << ",{";
  for (std::size_t i = 0; i < moves_.size(); ++i) os << (i ? "," : "") << moves_[i];
  os << "})";
  return os.str();
}

std::string MoveSelection::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  out += '}';
  return out;
}

char to_char(Outcome o) noexcept { return o == Outcome::P ? 'P' : 'N'; }

Position canonicalize(std::vector<Height> heights) { return Position(std::move(heights)); }

Height sigma(std::span<const Height> heights) {
  Height total = 0;
  for (Height h : heights) {
    if (__builtin_add_overflow(total, h, &total))
      throw std::overflow_error("sum of stack heights exceeds 64 bits");
  }
  return total;
}

Height sigma(const Position& p) { return sigma(p.heights()); }

int odd_count(const Position& p) noexcept {
  return static_cast<int>(std::count_if(p.begin(), p.end(), [](Height h) { return h & 1; }));
}

PositionType position_type(const Position& p, const GameSpec& spec) {
  const std::uint64_t modulus = 2 * static_cast<std::uint64_t>(spec.min_move());
  return {sigma(p) % modulus, odd_count(p)};
}

Height nirb_value(const Position& p, const GameSpec& spec) {
  return sigma(p) / static_cast<Height>(spec.min_move());
}

bool is_reduced(const Position& p, const GameSpec& spec) {
  const auto lhs = static_cast<unsigned __int128>(spec.min_move()) * p.max();
  return lhs <= static_cast<unsigned __int128>(sigma(p));
}

Position ctt(const Position& p, Height m) {
  std::vector<Height> out(p.begin(), p.end());
  for (Height& h : out) h = std::min(h, m);
  return Position(std::move(out));
}

bool is_terminal(const Position& p, const GameSpec& spec) noexcept {
  return p.nonzero_count() < static_cast<std::size_t>(spec.min_move());
}

namespace {

// Calls fn for every k-subset of `pool` in lexicographic order.
template <class Fn>
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::size_t> chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[pick[i]];
    fn(chosen);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<MoveSelection> legal_moves(const Position& p, const GameSpec& spec) {
  return legal_selections(p.heights(), spec);
}

std::vector<MoveSelection> legal_selections(std::span<const Height> heights, const GameSpec& spec) {
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < heights.size(); ++i)
    if (heights[i] != 0) nonzero.push_back(i);

  std::vector<MoveSelection> out;
  for (int k : spec.moves()) {
    for_each_subset(nonzero, static_cast<std::size_t>(k),
                    [&](const std::vector<std::size_t>& s) { out.push_back({s}); });
  }
  return out;
}

Position apply_move(const Position& p, const MoveSelection& mv, const GameSpec& spec) {
  if (p.size() != static_cast<std::size_t>(spec.n()))
    throw std::invalid_argument("position has " + std::to_string(p.size()) + " stacks, game has " +
                                std::to_string(spec.n()));
  if (!spec.allows(mv.size()))
    throw std::invalid_argument("selection of " + std::to_string(mv.size()) +
                                " stacks is not allowed in " + spec.to_string());
  std::vector<Height> out(p.begin(), p.end());
  for (std::size_t i = 0; i < mv.indices.size(); ++i) {
    const std::size_t idx = mv.indices[i];
    if (i > 0 && idx <= mv.indices[i - 1])
      throw std::invalid_argument("selection indices must be strictly increasing");
    if (idx >= out.size()) throw std::invalid_argument("stack index out of range");
    if (out[idx] == 0) throw std::invalid_argument("cannot play on an empty stack");
    --out[idx];
  }
  return Position(std::move(out));
}

std::vector<Position> distinct_options(const Position& p, const GameSpec& spec) {
  // Stacks of equal height are interchangeable: an option is fixed by how
  // many stacks of each nonzero height are played.
  struct Group {
    std::size_t first;
    std::size_t count;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    if (p[i] != 0) groups.push_back({i, j - i});
    i = j;
  }

  std::set<Position> out;
  std::vector<std::size_t> take(groups.size(), 0);
  std::vector<Height> work;
  auto emit = [&] {
    work.assign(p.begin(), p.end());
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (std::size_t t = 0; t < take[g]; ++t) --work[groups[g].first + t];
    out.insert(Position(work));
  };
  const auto recurse = [&](auto&& self, std::size_t g, std::size_t used) -> void {
    if (used > static_cast<std::size_t>(spec.max_move())) return;
    if (g == groups.size()) {
      if (used > 0 && spec.allows(used)) emit();
      return;
    }
    for (std::size_t t = 0; t <= groups[g].count; ++t) {
      take[g] = t;
      self(self, g + 1, used + t);
    }
    take[g] = 0;
  };
  recurse(recurse, 0, 0);
  return {out.begin(), out.end()};
}

bool omits_max(const Position& p, const MoveSelection& mv) noexcept {
  if (p.empty()) return false;
  const Height top = p.max();
  std::size_t played = 0;
  for (std::size_t idx : mv.indices)
    if (idx < p.size() && p[idx] == top) ++played;
  return played < static_cast<std::size_t>(max_multiplicity(p));
}

int max_multiplicity(const Position& p) noexcept {
  if (p.empty()) return 0;
  return static_cast<int>(std::count(p.begin(), p.end(), p.max()));
}

}  // namespace slowsetnim
