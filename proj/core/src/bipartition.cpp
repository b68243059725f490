#include "nsee/bipartition.hpp"

#include <algorithm>
#include <string>

#include "nsee/errors.hpp"

namespace nsee {

Bipartition Bipartition::prefix(std::size_t k) {
  Bipartition b;
  for (std::size_t i = 0; i < k; ++i) b.side_a.push_back(i);
  return b;
}

Bipartition Bipartition::of(std::vector<std::size_t> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return Bipartition{std::move(sites)};
}

void Bipartition::validate(std::size_t n) const {
  if (side_a.empty()) throw ArgumentError("bipartition side A is empty");
  if (side_a.size() >= n) throw ArgumentError("bipartition side B is empty");
  for (std::size_t i = 0; i < side_a.size(); ++i) {
    if (side_a[i] >= n) throw ArgumentError("bipartition site " + std::to_string(side_a[i]) + " out of range");
    if (i > 0 && side_a[i] <= side_a[i - 1]) throw ArgumentError("bipartition sites must be sorted and unique");
  }
}

Bipartition Bipartition::complement(std::size_t n) const {
  Bipartition out;
  std::size_t j = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (j < side_a.size() && side_a[j] == q) {
      ++j;
      continue;
    }
    out.side_a.push_back(q);
  }
  return out;
}

bool Bipartition::is_prefix() const {
  for (std::size_t i = 0; i < side_a.size(); ++i)
    if (side_a[i] != i) return false;
  return true;
}

bool Bipartition::is_suffix(std::size_t n) const {
  const std::size_t k = side_a.size();
  for (std::size_t i = 0; i < k; ++i)
    if (side_a[i] != n - k + i) return false;
  return true;
}

void validate_cut_set(const CutSet& cuts, std::size_t n) {
  if (cuts.empty()) throw ArgumentError("cut set is empty");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    cuts[i].validate(n);
    for (std::size_t j = 0; j < i; ++j)
      if (cuts[j] == cuts[i] || cuts[j] == cuts[i].complement(n)) throw ArgumentError("duplicate cut in cut set");
  }
}

CutSet chain_cuts(std::size_t n) {
  CutSet cuts;
  for (std::size_t k = 1; k < n; ++k) cuts.push_back(Bipartition::prefix(k));
  return cuts;
}

}  // namespace nsee
