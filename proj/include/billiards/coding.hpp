#pragma once

// Finite prefixes of symbol sequences and the alphabet-independent
// operations on them.

#include <cstddef>
#include <optional>
#include <vector>

#include "billiards/error.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

template <class Symbol>
struct Coding {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  const Symbol& operator[](std::size_t k) const { return symbols[k]; }
  bool operator==(const Coding&) const = default;
};

/// Coding over the edge alphabet.
using EdgeCoding = Coding<EdgeId>;

/// Left shift by k symbols. Throws Error(KTooLarge) when k > size.
template <class Symbol>
Coding<Symbol> shift(const Coding<Symbol>& c, std::size_t k) {
  if (k > c.size()) throw Error(ErrorCode::KTooLarge, "shift exceeds coding length");
  return {std::vector<Symbol>(c.symbols.begin() + static_cast<std::ptrdiff_t>(k), c.symbols.end())};
}

/// Number of repetitions a finite prefix must show before a period is
/// reported as a candidate.
inline constexpr std::size_t kPeriodWitnessRepeats = 3;

/// Smallest p with c[k + p] == c[k] for every valid k and size >= 3p. A
/// finite prefix only witnesses consistency with period p, so the result is a
/// candidate, not a proof of periodicity.
template <class Symbol>
std::optional<std::size_t> detect_period(const Coding<Symbol>& c) {
  for (std::size_t p = 1; kPeriodWitnessRepeats * p <= c.size(); ++p) {
    bool consistent = true;
    for (std::size_t k = 0; k + p < c.size() && consistent; ++k) consistent = c[k] == c[k + p];
    if (consistent) return p;
  }
  return std::nullopt;
}

struct Recurrence {
  std::vector<std::size_t> positions;
  /// Largest gap between consecutive occurrences; empty with a single occurrence.
  std::optional<std::size_t> max_gap;
};

/// Start positions at which the leading block c[0, block) reappears.
/// Throws Error(KTooLarge) when block > size.
template <class Symbol>
Recurrence recurrence_gaps(const Coding<Symbol>& c, std::size_t block) {
  if (block > c.size()) throw Error(ErrorCode::KTooLarge, "block longer than coding");
  Recurrence r;
  for (std::size_t start = 0; start + block <= c.size(); ++start) {
    bool match = true;
    for (std::size_t k = 0; k < block && match; ++k) match = c[start + k] == c[k];
    if (match) r.positions.push_back(start);
  }
  for (std::size_t k = 1; k < r.positions.size(); ++k) {
    const std::size_t gap = r.positions[k] - r.positions[k - 1];
    if (!r.max_gap || gap > *r.max_gap) r.max_gap = gap;
  }
  return r;
}

/// Occurrences of an arbitrary block anywhere in c.
template <class Symbol>
std::vector<std::size_t> occurrences(const Coding<Symbol>& c, const Coding<Symbol>& block) {
  std::vector<std::size_t> found;
  if (block.size() > c.size()) return found;
  for (std::size_t start = 0; start + block.size() <= c.size(); ++start) {
    bool match = true;
    for (std::size_t k = 0; k < block.size() && match; ++k) match = c[start + k] == block[k];
    if (match) found.push_back(start);
  }
  return found;
}

}  // namespace billiards
