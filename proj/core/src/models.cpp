#include "nsee/models.hpp"

#include <algorithm>
#include <set>

#include "nsee/errors.hpp"

namespace nsee {

void LatticeSpec::validate() const {
  if (lx == 0 || ly == 0) throw ArgumentError("lattice extents must be positive");
}

std::size_t LatticeSpec::snake_position(std::size_t row, std::size_t col) const {
  if (row >= lx || col >= ly) throw IndexError("lattice site out of range");
  return col * lx + (col % 2 == 0 ? row : lx - 1 - row);
}

std::vector<std::size_t> snake_order(const LatticeSpec& spec) {
  spec.validate();
  std::vector<std::size_t> order(spec.n_sites());
  for (std::size_t c = 0; c < spec.ly; ++c)
    for (std::size_t r = 0; r < spec.lx; ++r) order[spec.snake_position(r, c)] = c * spec.lx + r;
  return order;
}

std::vector<std::size_t> snake_positions(const LatticeSpec& spec) {
  const auto order = snake_order(spec);
  std::vector<std::size_t> pos(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
  return pos;
}

std::vector<std::pair<std::size_t, std::size_t>> lattice_bonds(const LatticeSpec& spec) {
  spec.validate();
  std::set<std::pair<std::size_t, std::size_t>> bonds;
  auto add = [&](std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    const auto a = spec.snake_position(r1, c1), b = spec.snake_position(r2, c2);
    if (a != b) bonds.insert({std::min(a, b), std::max(a, b)});
  };
  const bool pbc = spec.boundary == Boundary::Periodic;
  for (std::size_t c = 0; c < spec.ly; ++c)
    for (std::size_t r = 0; r < spec.lx; ++r) {
      if (r + 1 < spec.lx)
        add(r, c, r + 1, c);
      else if (pbc && spec.lx > 2)
        add(r, c, 0, c);
      if (c + 1 < spec.ly)
        add(r, c, r, c + 1);
      else if (pbc && spec.ly > 2)
        add(r, c, r, 0);
    }
  return {bonds.begin(), bonds.end()};
}

namespace {

PauliString two_body(std::size_t n, std::size_t a, std::size_t b, char letter) {
  PauliString p = PauliString::single(n, a, letter);
  p.set_letter(b, letter);
  return p;
}

void require_open(const LatticeSpec& spec, const char* model) {
  spec.validate();
  if (spec.boundary != Boundary::Open) throw UnsupportedError(std::string(model) + " is defined on open lattices");
}

}  // namespace

PauliSum transverse_ising(const LatticeSpec& spec, double j, double h) {
  require_open(spec, "transverse_ising");
  const std::size_t n = spec.n_sites();
  PauliSum out(n);
  for (const auto& [a, b] : lattice_bonds(spec)) out.add(-j, two_body(n, a, b, 'Z'));
  for (std::size_t q = 0; q < n; ++q) out.add(-h, PauliString::single(n, q, 'X'));
  return out;
}

PauliSum xxz(const LatticeSpec& spec, double j, double delta) {
  require_open(spec, "xxz");
  const std::size_t n = spec.n_sites();
  PauliSum out(n);
  for (const auto& [a, b] : lattice_bonds(spec)) {
    out.add(j / 4, two_body(n, a, b, 'X'));
    out.add(j / 4, two_body(n, a, b, 'Y'));
    out.add(j * delta / 4, two_body(n, a, b, 'Z'));
  }
  return out;
}

std::size_t toric_qubit(const LatticeSpec& spec, std::size_t row, std::size_t col, int bond) {
  if (bond != 0 && bond != 1) throw IndexError("toric bond must be 0 (right) or 1 (down)");
  return 2 * spec.snake_position(row % spec.lx, col % spec.ly) + std::size_t(bond);
}

PauliSum toric_code(const LatticeSpec& spec) {
  spec.validate();
  if (spec.boundary != Boundary::Periodic) throw UnsupportedError("toric code requires periodic boundaries");
  if (spec.lx < 2 || spec.ly < 2) throw ArgumentError("toric code needs extents of at least 2");
  const std::size_t lx = spec.lx, ly = spec.ly, n = 2 * lx * ly;
  PauliSum out(n);
  for (std::size_t c = 0; c < ly; ++c)
    for (std::size_t r = 0; r < lx; ++r) {
      PauliString star(n), plaq(n);
      for (auto q : {toric_qubit(spec, r, c, 0), toric_qubit(spec, r, c, 1), toric_qubit(spec, r, c + ly - 1, 0),
                     toric_qubit(spec, r + lx - 1, c, 1)})
        star.set_letter(q, 'X');
      for (auto q : {toric_qubit(spec, r, c, 0), toric_qubit(spec, r, c, 1), toric_qubit(spec, r, c + 1, 1),
                     toric_qubit(spec, r + 1, c, 0)})
        plaq.set_letter(q, 'Z');
      out.add(-1.0, star);
      out.add(-1.0, plaq);
    }
  return out;
}

CutSet cut_set(const LatticeSpec& spec) {
  spec.validate();
  CutSet cuts;
  for (std::size_t c = 1; c < spec.ly; ++c) cuts.push_back(Bipartition::prefix(c * spec.lx));
  for (std::size_t r = 1; r < spec.lx; ++r) {
    std::vector<std::size_t> side;
    for (std::size_t c = 0; c < spec.ly; ++c)
      for (std::size_t rr = 0; rr < r; ++rr) side.push_back(spec.snake_position(rr, c));
    cuts.push_back(Bipartition::of(std::move(side)));
  }
  return cuts;
}

CutSet toric_cut_set(const LatticeSpec& spec) {
  CutSet cuts;
  for (const auto& cut : cut_set(spec)) {
    std::vector<std::size_t> side;
    for (auto v : cut.side_a) {
      side.push_back(2 * v);
      side.push_back(2 * v + 1);
    }
    cuts.push_back(Bipartition::of(std::move(side)));
  }
  return cuts;
}

nlohmann::json model_json(const std::string& model, const LatticeSpec& spec, const nlohmann::json& params) {
  return {{"model", model},
          {"lx", spec.lx},
          {"ly", spec.ly},
          {"boundary", spec.boundary == Boundary::Open ? "open" : "periodic"},
          {"params", params}};
}

}  // namespace nsee
