#include "nsee/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "linalg.hpp"

#include "nsee/errors.hpp"

namespace nsee {

namespace {

using Mat = Eigen::MatrixXcd;

struct Svd {
  Mat u;
  Eigen::VectorXd s;
  Mat v;
};

Svd thin_svd(const Mat& m) {
  auto r = detail::thin_svd(m);
  return {std::move(r.u), std::move(r.s), std::move(r.v)};
}

// Single-qubit letter action: sigma |t> = value * |t ^ flip>.
struct LetterAction {
  int flip;
  cplx value[2];
};

LetterAction letter_action(bool x, bool z) {
  if (!x && !z) return {0, {1.0, 1.0}};
  if (x && !z) return {1, {1.0, 1.0}};
  if (!x && z) return {0, {1.0, -1.0}};
  return {1, {cplx(0, 1), cplx(0, -1)}};
}

}  // namespace

void apply_gate(TwoSite& theta, const Eigen::Matrix4cd& u) {
  std::array<Mat, 4> in;
  for (int t = 0; t < 4; ++t) in[t] = theta.block(t >> 1, t & 1);
  for (int s = 0; s < 4; ++s) {
    auto out = theta.block(s >> 1, s & 1);
    out.setZero();
    for (int t = 0; t < 4; ++t)
      if (u(s, t) != cplx(0)) out += u(s, t) * in[t];
  }
}

std::size_t kept_count(std::span<const double> sv, const Truncation& tr) {
  std::size_t k = 0;
  while (k < sv.size() && sv[k] > kSingularFloor && sv[k] >= tr.threshold) ++k;
  if (tr.max_bond > 0) k = std::min(k, tr.max_bond);
  return std::max<std::size_t>(k, 1);
}

double entropy_from_spectrum(std::span<const double> sv) {
  double total = 0;
  for (double v : sv) total += v * v;
  if (total <= 0) return 0.0;
  double s = 0;
  for (double v : sv) {
    const double p = v * v / total;
    if (p > 0) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

Mps Mps::product_state(std::span<const int> bits) {
  std::vector<Eigen::Vector2cd> states;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ArgumentError("product_state bits must be 0 or 1");
    states.push_back(b ? Eigen::Vector2cd(0, 1) : Eigen::Vector2cd(1, 0));
  }
  return product_state(states);
}

Mps Mps::product_state(const std::vector<Eigen::Vector2cd>& local_states) {
  if (local_states.empty()) throw ArgumentError("MPS needs at least one site");
  Mps s;
  for (const auto& v : local_states) {
    const double nrm = v.norm();
    if (nrm < 1e-300) throw ArgumentError("product_state local vector is zero");
    Tensor t;
    t[0] = Mat::Constant(1, 1, v(0) / nrm);
    t[1] = Mat::Constant(1, 1, v(1) / nrm);
    s.a_.push_back(std::move(t));
  }
  return s;
}

Mps Mps::from_statevector(const Eigen::VectorXcd& psi, std::size_t n, const Truncation& tr) {
  if (n == 0 || n > 30 || std::size_t(psi.size()) != (std::size_t{1} << n))
    throw DimensionError("from_statevector: vector length must be 2^n");
  Mps s;
  s.a_.resize(n);
  Mat c = psi.transpose() / psi.norm();  // 1 x 2^n
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Eigen::Index d = c.rows();
    const Eigen::Index rest = c.cols() / 2;
    Mat m(2 * d, rest);
    for (int bit = 0; bit < 2; ++bit) m.middleRows(bit * d, d) = c.middleCols(bit * rest, rest);
    Svd svd = thin_svd(m);
    std::vector<double> sv(svd.s.data(), svd.s.data() + svd.s.size());
    const std::size_t k = kept_count(sv, tr);
    for (int bit = 0; bit < 2; ++bit) s.a_[i][bit] = svd.u.block(bit * d, 0, d, k);
    c = svd.s.head(k).cast<cplx>().asDiagonal() * svd.v.leftCols(k).adjoint();
  }
  for (int bit = 0; bit < 2; ++bit) s.a_[n - 1][bit] = c.col(bit);
  s.center_ = n - 1;
  s.normalize();
  return s;
}

std::size_t Mps::bond_dim(std::size_t bond) const {
  if (bond > a_.size()) throw IndexError("bond index out of range");
  if (bond == a_.size()) return std::size_t(a_.back()[0].cols());
  return std::size_t(a_[bond][0].rows());
}

std::size_t Mps::max_bond_dim() const {
  std::size_t d = 1;
  for (std::size_t b = 1; b < a_.size(); ++b) d = std::max(d, bond_dim(b));
  return d;
}

void Mps::check_site(std::size_t site) const {
  if (site >= a_.size())
    throw IndexError("site " + std::to_string(site) + " out of range for " + std::to_string(a_.size()) + " sites");
}

void Mps::move_center(std::size_t site) {
  check_site(site);
  while (center_ < site) {
    auto& t = a_[center_];
    const Eigen::Index dl = t[0].rows(), dr = t[0].cols();
    Mat m(2 * dl, dr);
    m << t[0], t[1];
    Eigen::HouseholderQR<Mat> qr(m);
    const Eigen::Index k = std::min(2 * dl, dr);
    Mat q = qr.householderQ() * Mat::Identity(2 * dl, k);
    Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    t[0] = q.topRows(dl);
    t[1] = q.bottomRows(dl);
    auto& next = a_[center_ + 1];
    next[0] = r * next[0];
    next[1] = r * next[1];
    ++center_;
  }
  while (center_ > site) {
    auto& t = a_[center_];
    const Eigen::Index dl = t[0].rows(), dr = t[0].cols();
    Mat m(dl, 2 * dr);
    m << t[0], t[1];
    // m = L Q with Q having orthonormal rows, from the QR of m^dagger.
    Mat mh = m.adjoint();
    Eigen::HouseholderQR<Mat> qr(mh);
    const Eigen::Index k = std::min(dl, 2 * dr);
    Mat q = qr.householderQ() * Mat::Identity(2 * dr, k);
    Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Mat qh = q.adjoint();
    t[0] = qh.leftCols(dr);
    t[1] = qh.rightCols(dr);
    Mat l = r.adjoint();
    auto& prev = a_[center_ - 1];
    prev[0] = prev[0] * l;
    prev[1] = prev[1] * l;
    --center_;
  }
}

double Mps::norm() const {
  const auto& t = a_[center_];
  return std::sqrt(t[0].squaredNorm() + t[1].squaredNorm());
}

void Mps::normalize() {
  const double nrm = norm();
  if (nrm < 1e-300) throw ArgumentError("cannot normalize a zero MPS");
  a_[center_][0] /= nrm;
  a_[center_][1] /= nrm;
}

TwoSite Mps::two_site(std::size_t site) const {
  check_site(site + 1);
  const auto& a = a_[site];
  const auto& b = a_[site + 1];
  TwoSite th;
  th.dl = std::size_t(a[0].rows());
  th.dr = std::size_t(b[0].cols());
  th.m.resize(2 * th.dl, 2 * th.dr);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) th.block(s1, s2).noalias() = a[s1] * b[s2];
  return th;
}

SplitInfo Mps::set_two_site(std::size_t site, const TwoSite& theta, const Truncation& tr, Direction dir) {
  check_site(site + 1);
  if (center_ != site && center_ != site + 1) throw ArgumentError("set_two_site: centre must be on the pair");
  if (theta.dl != bond_dim(site) || theta.dr != bond_dim(site + 2))
    throw DimensionError("set_two_site: outer bond dimensions do not match");
  Svd svd = thin_svd(theta.m);
  std::vector<double> sv(svd.s.data(), svd.s.data() + svd.s.size());
  const std::size_t k = kept_count(sv, tr);
  SplitInfo info;
  double kept = 0;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    if (i < k)
      kept += sv[i] * sv[i];
    else
      info.discarded_weight += sv[i] * sv[i];
  }
  const double scale = kept > 0 ? 1.0 / std::sqrt(kept) : 1.0;
  Eigen::VectorXd s = svd.s.head(k) * scale;
  info.singular_values.assign(s.data(), s.data() + k);

  const Eigen::Index dl = theta.dl, dr = theta.dr;
  Mat left = svd.u.leftCols(k);
  Mat right = svd.v.leftCols(k).adjoint();
  if (dir == Direction::Right)
    right = s.cast<cplx>().asDiagonal() * right;
  else
    left = left * s.cast<cplx>().asDiagonal();
  for (int bit = 0; bit < 2; ++bit) {
    a_[site][bit] = left.middleRows(bit * dl, dl);
    a_[site + 1][bit] = right.middleCols(bit * dr, dr);
  }
  center_ = dir == Direction::Right ? site + 1 : site;
  return info;
}

double Mps::apply_two_site_gate(const Eigen::Matrix4cd& u, std::size_t site, const Truncation& tr, Direction dir) {
  check_site(site + 1);
  if ((u * u.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw ArgumentError("apply_two_site_gate: gate is not unitary");
  if (center_ != site && center_ != site + 1) move_center(site);
  TwoSite th = two_site(site);
  apply_gate(th, u);
  return set_two_site(site, th, tr, dir).discarded_weight;
}

void Mps::apply_single_site_gate(const Eigen::Matrix2cd& u, std::size_t site) {
  check_site(site);
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw ArgumentError("apply_single_site_gate: gate is not unitary");
  auto& t = a_[site];
  Mat n0 = u(0, 0) * t[0] + u(0, 1) * t[1];
  Mat n1 = u(1, 0) * t[0] + u(1, 1) * t[1];
  t[0] = std::move(n0);
  t[1] = std::move(n1);
}

std::vector<double> Mps::bond_spectrum(std::size_t bond) {
  if (bond == 0 || bond >= a_.size()) throw IndexError("bond_spectrum: bond must be in 1..N-1");
  move_center(bond);
  const auto& t = a_[bond];
  Mat m(t[0].rows(), 2 * t[0].cols());
  m << t[0], t[1];
  const Eigen::VectorXd s = detail::singular_values(m);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kSingularFloor) out.push_back(s(i));
  if (out.empty()) out.push_back(0.0);
  double total = 0;
  for (double v : out) total += v * v;
  if (total > 0)
    for (auto& v : out) v /= std::sqrt(total);
  return out;
}

double Mps::entanglement_entropy_at(std::size_t bond) {
  const auto sv = bond_spectrum(bond);
  return entropy_from_spectrum(sv);
}

Eigen::VectorXcd Mps::to_statevector(std::size_t cap) const {
  const std::size_t n = a_.size();
  if (n > cap || n > 30) throw CapacityError("to_statevector: " + std::to_string(n) + " sites exceeds cap");
  Mat m = Mat::Ones(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Mat p0 = m * a_[i][0];
    Mat p1 = m * a_[i][1];
    Mat next(2 * m.rows(), p0.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      next.row(2 * r) = p0.row(r);
      next.row(2 * r + 1) = p1.row(r);
    }
    m = std::move(next);
  }
  return m.col(0);
}

Eigen::Matrix4cd swap_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

namespace {

std::size_t swap_cost(const std::vector<std::size_t>& sites) {
  std::size_t cost = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) cost += sites[k] - k;
  return cost;
}

double entropy_via_swaps(Mps s, const std::vector<std::size_t>& side, double swap_threshold) {
  const std::size_t n = s.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  const Truncation tr{0, swap_threshold};
  const Eigen::Matrix4cd sw = swap_matrix();
  for (std::size_t k = 0; k < side.size(); ++k) {
    std::size_t p = std::size_t(std::find(label.begin(), label.end(), side[k]) - label.begin());
    while (p > k) {
      s.apply_two_site_gate(sw, p - 1, tr, Direction::Left);
      std::swap(label[p - 1], label[p]);
      --p;
    }
  }
  return s.entanglement_entropy_at(side.size());
}

}  // namespace

double entropy_of_bipartition(const Mps& s, const Bipartition& cut, double swap_threshold) {
  const std::size_t n = s.size();
  cut.validate(n);
  Mps work = s;
  if (cut.is_prefix()) return work.entanglement_entropy_at(cut.side_a.size());
  if (cut.is_suffix(n)) return work.entanglement_entropy_at(n - cut.side_a.size());
  const auto other = cut.complement(n);
  const auto& side = swap_cost(other.side_a) < swap_cost(cut.side_a) ? other.side_a : cut.side_a;
  return entropy_via_swaps(std::move(work), side, swap_threshold);
}

std::vector<double> cut_entropies(const Mps& s, const CutSet& cuts, double swap_threshold) {
  const std::size_t n = s.size();
  std::vector<double> out(cuts.size(), 0.0);
  Mps work = s;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const auto& cut = cuts[i];
    cut.validate(n);
    if (cut.is_prefix())
      out[i] = work.entanglement_entropy_at(cut.side_a.size());
    else if (cut.is_suffix(n))
      out[i] = work.entanglement_entropy_at(n - cut.side_a.size());
    else
      out[i] = entropy_of_bipartition(s, cut, swap_threshold);
  }
  return out;
}

cplx expectation(const Mps& s, const PauliString& p) {
  const std::size_t n = s.size();
  if (p.size() != n) throw DimensionError("expectation: Pauli string and MPS sizes differ");
  const std::size_t c = s.center();
  std::size_t lo = c, hi = c;
  if (!p.is_identity()) {
    const auto [l, r] = p.support_range();
    lo = std::min(lo, l);
    hi = std::max(hi, r);
  }
  Mat e = Mat::Identity(s.bond_dim(lo), s.bond_dim(lo));
  for (std::size_t i = lo; i <= hi; ++i) {
    const auto& t = s.tensor(i);
    const auto act = letter_action(p.x(i), p.z(i));
    Mat next = Mat::Zero(t[0].cols(), t[0].cols());
    for (int k = 0; k < 2; ++k) {
      const int out = k ^ act.flip;
      next.noalias() += act.value[k] * (t[out].adjoint() * (e * t[k]));
    }
    e = std::move(next);
  }
  return p.phase().value() * e.trace();
}

double expectation_pauli_sum(const Mps& s, const PauliSum& h) {
  if (h.n_qubits() != s.size()) throw DimensionError("expectation_pauli_sum: sizes differ");
  double acc = 0;
  for (const auto& t : h.terms()) acc += t.coeff * expectation(s, t.string).real();
  return acc;
}

cplx inner_product(const Mps& a, const Mps& b) {
  if (a.size() != b.size()) throw DimensionError("inner_product: sizes differ");
  Mat e = Mat::Ones(1, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ta = a.tensor(i);
    const auto& tb = b.tensor(i);
    Mat next = ta[0].adjoint() * (e * tb[0]);
    next.noalias() += ta[1].adjoint() * (e * tb[1]);
    e = std::move(next);
  }
  return e(0, 0);
}

double overlap(const Mps& a, const Mps& b) { return std::abs(inner_product(a, b)); }

}  // namespace nsee
