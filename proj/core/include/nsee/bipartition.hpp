#pragma once

#include <cstddef>
#include <vector>

namespace nsee {

/// Split of sites into A (listed) and B (the rest).
struct Bipartition {
  std::vector<std::size_t> side_a;  // sorted, unique

  static Bipartition prefix(std::size_t k);
  static Bipartition of(std::vector<std::size_t> sites);

  /// Throws ArgumentError unless A is a nonempty proper subset of [0, n).
  void validate(std::size_t n) const;
  /// Complement within [0, n).
  Bipartition complement(std::size_t n) const;
  /// True when A = {0, ..., |A|-1}.
  bool is_prefix() const;
  /// True when A = {n-|A|, ..., n-1}.
  bool is_suffix(std::size_t n) const;

  bool operator==(const Bipartition&) const = default;
};

using CutSet = std::vector<Bipartition>;

/// Throws ArgumentError on an empty set, an invalid cut or a duplicate.
void validate_cut_set(const CutSet& cuts, std::size_t n);

/// All single-bond cuts {0..k-1 | k..n-1} of an n-site chain.
CutSet chain_cuts(std::size_t n);

}  // namespace nsee
