#include "nsee/dmrg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "linalg.hpp"

#include "nsee/errors.hpp"

namespace nsee {

namespace {

using Mat = Eigen::MatrixXcd;
using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Eigen::Index;

Eigen::Map<Mat> row_block(RowMat& m, Index row, Index rows, Index cols) {
  return Eigen::Map<Mat>(m.data() + row * m.cols(), rows, cols);
}

Eigen::Matrix2cd letter_op(bool x, bool z) {
  Eigen::Matrix2cd m;
  if (!x && !z)
    m << 1, 0, 0, 1;
  else if (x && !z)
    m << 0, 1, 1, 0;
  else if (!x && z)
    m << 1, 0, 0, -1;
  else
    m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

// L'[w'] = sum_{s,t,w} W_st(w,w') A[s]^dagger L[w] A[t].
Mat update_left(const Mat& ls, const Mps::Tensor& a, const Mpo::Tensor& w) {
  const Index dl = a[0].rows(), dr = a[0].cols();
  const Index wl = w[0].rows(), wr = w[0].cols();
  Mat ah(dl, 2 * dr);
  ah << a[0], a[1];
  const Mat t = ls * ah;
  RowMat tm(2 * wl, dl * dr);
  for (Index k = 0; k < wl; ++k)
    for (int tt = 0; tt < 2; ++tt) row_block(tm, k * 2 + tt, dl, dr) = t.block(k * dl, tt * dr, dl, dr);
  RowMat c = RowMat::Zero(2 * wr, 2 * wl);
  for (int s = 0; s < 2; ++s)
    for (int tt = 0; tt < 2; ++tt) {
      const auto& op = w[2 * s + tt];
      for (Index k = 0; k < wl; ++k)
        for (Index kp = 0; kp < wr; ++kp) c(s * wr + kp, k * 2 + tt) = op(k, kp);
    }
  RowMat mm = c * tm;
  Mat out = Mat::Zero(wr * dr, dr);
  Mat q(dl, wr * dr);
  for (int s = 0; s < 2; ++s) {
    for (Index kp = 0; kp < wr; ++kp) q.middleCols(kp * dr, dr) = row_block(mm, s * wr + kp, dl, dr);
    const Mat p = a[s].adjoint() * q;
    for (Index kp = 0; kp < wr; ++kp) out.middleRows(kp * dr, dr) += p.middleCols(kp * dr, dr);
  }
  return out;
}

// R'[w] = sum_{s,t,w'} W_st(w,w') A[t] R[w'] A[s]^dagger.
Mat update_right(const Mat& rs, const Mps::Tensor& a, const Mpo::Tensor& w) {
  const Index dl = a[0].rows(), dr = a[0].cols();
  const Index wl = w[0].rows(), wr = w[0].cols();
  Mat av(2 * dl, dr);
  av << a[0], a[1];
  Mat rh(dr, wr * dr);
  for (Index kp = 0; kp < wr; ++kp) rh.middleCols(kp * dr, dr) = rs.middleRows(kp * dr, dr);
  const Mat t = av * rh;
  RowMat tm(2 * wr, dl * dr);
  for (int tt = 0; tt < 2; ++tt)
    for (Index kp = 0; kp < wr; ++kp) row_block(tm, tt * wr + kp, dl, dr) = t.block(tt * dl, kp * dr, dl, dr);
  RowMat c = RowMat::Zero(2 * wl, 2 * wr);
  for (int s = 0; s < 2; ++s)
    for (int tt = 0; tt < 2; ++tt) {
      const auto& op = w[2 * s + tt];
      for (Index k = 0; k < wl; ++k)
        for (Index kp = 0; kp < wr; ++kp) c(k * 2 + s, tt * wr + kp) = op(k, kp);
    }
  RowMat mm = c * tm;
  Mat p(wl * dl, 2 * dr);
  for (Index k = 0; k < wl; ++k)
    for (int s = 0; s < 2; ++s) p.block(k * dl, s * dr, dl, dr) = row_block(mm, k * 2 + s, dl, dr);
  Mat ah(dl, 2 * dr);
  ah << a[0], a[1];
  return p * ah.adjoint();
}

// Two-site operator as a (4 wr) x (4 wl) coefficient matrix acting on (w, t) blocks.
RowMat two_site_coefficients(const Mpo::Tensor& w1, const Mpo::Tensor& w2) {
  const Index wl = w1[0].rows(), wr = w2[0].cols();
  RowMat c = RowMat::Zero(4 * wr, 4 * wl);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2) {
          const auto& a = w1[2 * s1 + t1];
          const auto& b = w2[2 * s2 + t2];
          if (a.isZero(0) || b.isZero(0)) continue;
          const Mat v = a * b;
          const int s = 2 * s1 + s2, t = 2 * t1 + t2;
          for (Index k = 0; k < wl; ++k)
            for (Index kp = 0; kp < wr; ++kp) c(kp * 4 + s, k * 4 + t) = v(k, kp);
        }
  return c;
}

struct EffectiveOperator {
  const Mat& ls;
  const Mat& rs;
  RowMat coeff;
  Index dl, dr, wl, wr;

  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    Eigen::Map<const Mat> th(x.data(), 2 * dl, 2 * dr);
    Mat big(dl, 4 * dr);
    for (int t = 0; t < 4; ++t) big.middleCols(t * dr, dr) = th.block((t >> 1) * dl, (t & 1) * dr, dl, dr);
    const Mat xl = ls * big;
    RowMat xm(4 * wl, dl * dr);
    for (Index k = 0; k < wl; ++k)
      for (int t = 0; t < 4; ++t) row_block(xm, k * 4 + t, dl, dr) = xl.block(k * dl, t * dr, dl, dr);
    RowMat zm = coeff * xm;
    Mat zr(4 * dl, wr * dr);
    for (Index kp = 0; kp < wr; ++kp)
      for (int s = 0; s < 4; ++s) zr.block(s * dl, kp * dr, dl, dr) = row_block(zm, kp * 4 + s, dl, dr);
    const Mat phi = zr * rs;
    y.resize(x.size());
    Eigen::Map<Mat> out(y.data(), 2 * dl, 2 * dr);
    for (int s = 0; s < 4; ++s) out.block((s >> 1) * dl, (s & 1) * dr, dl, dr) = phi.middleRows(s * dl, dl);
  }
};

}  // namespace

// ---------------------------------------------------------------- Mpo

Mpo Mpo::from_pauli_sum(const PauliSum& h, double compress_tol) {
  const std::size_t n = h.n_qubits();
  if (n == 0 || h.empty()) throw ArgumentError("mpo_from_pauli_sum: empty Hamiltonian");

  // Channels per bond b: start (b < n), done (b > 0), then open prefixes.
  std::vector<std::map<std::string, Index>> prefix(n + 1);
  auto start_idx = [n](std::size_t b) -> Index { return b < n ? 0 : -1; };
  auto done_idx = [n](std::size_t b) -> Index { return b == 0 ? -1 : (b == n ? 0 : 1); };
  auto base = [n](std::size_t b) -> Index { return (b == 0 || b == n) ? 1 : 2; };

  struct Span {
    std::size_t lo, hi;
  };
  std::vector<Span> spans;
  for (const auto& t : h.terms()) {
    Span sp{0, 0};
    if (!t.string.is_identity()) {
      const auto [l, r] = t.string.support_range();
      sp = {l, r};
    }
    spans.push_back(sp);
    std::string key;
    for (std::size_t b = sp.lo + 1; b <= sp.hi; ++b) {
      key.push_back(t.string.letter(b - 1));
      auto& m = prefix[b];
      if (!m.count(key)) {
        const Index idx = base(b) + Index(m.size());
        m.emplace(key, idx);
      }
    }
  }

  Mpo mpo;
  mpo.w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Index dl = base(i) + Index(prefix[i].size());
    const Index dr = base(i + 1) + Index(prefix[i + 1].size());
    for (auto& m : mpo.w_[i]) m = Mat::Zero(dl, dr);
  }
  auto put = [&](std::size_t i, Index a, Index b, const Eigen::Matrix2cd& op, bool accumulate) {
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        auto& dst = mpo.w_[i][2 * s + t](a, b);
        dst = accumulate ? dst + op(s, t) : op(s, t);
      }
  };
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (std::size_t i = 0; i < n; ++i) {
    if (start_idx(i) >= 0 && start_idx(i + 1) >= 0) put(i, start_idx(i), start_idx(i + 1), id, false);
    if (done_idx(i) >= 0 && done_idx(i + 1) >= 0) put(i, done_idx(i), done_idx(i + 1), id, false);
  }
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    const auto& p = h.terms()[k].string;
    const double c = h.terms()[k].coeff;
    const auto sp = spans[k];
    std::string key;
    Index from = start_idx(sp.lo);
    for (std::size_t i = sp.lo; i <= sp.hi; ++i) {
      const Eigen::Matrix2cd op = letter_op(p.x(i), p.z(i));
      if (i == sp.hi) {
        put(i, from, done_idx(i + 1), c * op, true);
      } else {
        key.push_back(p.letter(i));
        const Index to = prefix[i + 1].at(key);
        put(i, from, to, op, false);
        from = to;
      }
    }
  }
  if (compress_tol > 0) mpo.compress(compress_tol);
  return mpo;
}

std::size_t Mpo::bond_dim(std::size_t bond) const {
  if (bond > w_.size()) throw IndexError("MPO bond index out of range");
  if (bond == w_.size()) return std::size_t(w_.back()[0].cols());
  return std::size_t(w_[bond][0].rows());
}

std::size_t Mpo::max_bond_dim() const {
  std::size_t d = 1;
  for (std::size_t b = 0; b <= w_.size(); ++b) d = std::max(d, bond_dim(b));
  return d;
}

void Mpo::compress(double rel_tol) {
  const std::size_t n = w_.size();
  if (n < 2) return;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Index dl = w_[i][0].rows(), dr = w_[i][0].cols();
    Mat m(4 * dl, dr);
    for (int st = 0; st < 4; ++st) m.middleRows(st * dl, dl) = w_[i][st];
    Eigen::HouseholderQR<Mat> qr(m);
    const Index k = std::min(4 * dl, dr);
    const Mat q = qr.householderQ() * Mat::Identity(4 * dl, k);
    const Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (int st = 0; st < 4; ++st) {
      w_[i][st] = q.middleRows(st * dl, dl);
      w_[i + 1][st] = r * w_[i + 1][st];
    }
  }
  for (std::size_t i = n - 1; i >= 1; --i) {
    const Index dl = w_[i][0].rows(), dr = w_[i][0].cols();
    Mat m(dl, 4 * dr);
    for (int st = 0; st < 4; ++st) m.middleCols(st * dr, dr) = w_[i][st];
    const auto svd = detail::thin_svd(m);
    const auto& s = svd.s;
    Index k = 0;
    while (k < s.size() && s(k) > rel_tol * s(0)) ++k;
    k = std::max<Index>(k, 1);
    const Mat vh = svd.v.leftCols(k).adjoint();
    const Mat us = svd.u.leftCols(k) * s.head(k).cast<cplx>().asDiagonal();
    for (int st = 0; st < 4; ++st) {
      w_[i][st] = vh.middleCols(st * dr, dr);
      w_[i - 1][st] = w_[i - 1][st] * us;
    }
  }
}

void Mpo::conjugate_two_site(const Eigen::Matrix4cd& u, std::size_t site, double rel_tol) {
  if (site + 1 >= w_.size()) throw IndexError("conjugate_two_site: site out of range");
  const auto& w1 = w_[site];
  const auto& w2 = w_[site + 1];
  const Index dl = w1[0].rows(), dr = w2[0].cols();
  // V[(s1 s2),(t1 t2)] = W1[s1 t1] W2[s2 t2].
  std::array<Mat, 16> v;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) v[4 * s + t] = w1[2 * (s >> 1) + (t >> 1)] * w2[2 * (s & 1) + (t & 1)];
  std::array<Mat, 16> vu;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      Mat acc = Mat::Zero(dl, dr);
      for (int p = 0; p < 4; ++p) {
        if (u(s, p) == cplx(0)) continue;
        for (int q = 0; q < 4; ++q) {
          const cplx f = u(s, p) * std::conj(u(t, q));
          if (f != cplx(0)) acc += f * v[4 * p + q];
        }
      }
      vu[4 * s + t] = std::move(acc);
    }
  Mat m(4 * dl, 4 * dr);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      const int s1 = s >> 1, s2 = s & 1, t1 = t >> 1, t2 = t & 1;
      m.block((2 * s1 + t1) * dl, (2 * s2 + t2) * dr, dl, dr) = vu[4 * s + t];
    }
  const auto svd = detail::thin_svd(m);
  const auto& sv = svd.s;
  Index k = 0;
  while (k < sv.size() && sv(k) > rel_tol * sv(0)) ++k;
  k = std::max<Index>(k, 1);
  const Mat left = svd.u.leftCols(k) * sv.head(k).cast<cplx>().asDiagonal();
  const Mat right = svd.v.leftCols(k).adjoint();
  for (int st = 0; st < 4; ++st) {
    w_[site][st] = left.middleRows(st * dl, dl);
    w_[site + 1][st] = right.middleCols(st * dr, dr);
  }
}

Eigen::MatrixXcd Mpo::to_dense(std::size_t cap) const {
  const std::size_t n = w_.size();
  if (n > cap || n > 14) throw CapacityError("Mpo::to_dense: too many sites");
  std::vector<Mat> cur{Mat::Ones(1, 1)};
  for (std::size_t i = 0; i < n; ++i) {
    const Index dl = w_[i][0].rows(), dr = w_[i][0].cols();
    const Index dim = cur[0].rows();
    std::vector<Mat> next(dr, Mat::Zero(2 * dim, 2 * dim));
    for (Index a = 0; a < dl; ++a)
      for (Index b = 0; b < dr; ++b)
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) {
            const cplx c = w_[i][2 * s + t](a, b);
            if (c == cplx(0)) continue;
            // New qubit is the least significant index.
            for (Index r = 0; r < dim; ++r)
              for (Index q = 0; q < dim; ++q) next[b](2 * r + s, 2 * q + t) += c * cur[a](r, q);
          }
    cur = std::move(next);
  }
  return cur[0];
}

double mpo_expectation(const Mps& s, const Mpo& w) {
  if (s.size() != w.size()) throw DimensionError("mpo_expectation: sizes differ");
  Mat ls = Mat::Ones(1, 1);
  for (std::size_t i = 0; i < s.size(); ++i) ls = update_left(ls, s.tensor(i), w.tensor(i));
  return ls(0, 0).real() / inner_product(s, s).real();
}

// ---------------------------------------------------------------- solver

void DmrgConfig::validate() const {
  if (max_bond == 0) throw ArgumentError("max_bond must be positive");
  if (!(truncation_threshold >= 0)) throw ArgumentError("truncation_threshold must be nonnegative");
  if (max_sweeps <= 0) throw ArgumentError("max_sweeps must be positive");
  if (!(energy_tol > 0)) throw ArgumentError("energy_tol must be positive");
  if (!(eigensolver_tol > 0)) throw ArgumentError("eigensolver_tol must be positive");
  if (eigensolver_max_iter <= 0) throw ArgumentError("eigensolver_max_iter must be positive");
  if (!(noise >= 0)) throw ArgumentError("noise must be nonnegative");
  if (noise_sweeps < 0) throw ArgumentError("noise_sweeps must be nonnegative");
}

LanczosResult lowest_eigenpair(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                               Eigen::VectorXcd& v, double tol, int max_matvecs, int krylov) {
  const Index dim = v.size();
  LanczosResult res;
  if (dim == 0) throw ArgumentError("lowest_eigenpair: empty vector");
  double nv = v.norm();
  if (nv < 1e-14) {
    v = Eigen::VectorXcd::Ones(dim);
    nv = v.norm();
  }
  v /= nv;
  Eigen::VectorXcd w;
  std::mt19937_64 rng{std::uint64_t(dim)};
  std::normal_distribution<double> g;
  while (res.matvecs < max_matvecs) {
    const int m_max = int(std::min<Index>({Index(krylov), dim, Index(max_matvecs - res.matvecs)}));
    std::vector<Eigen::VectorXcd> basis{v};
    std::vector<double> alpha, beta;
    bool invariant = false;
    for (int j = 0; j < m_max; ++j) {
      apply(basis[j], w);
      ++res.matvecs;
      const double a = basis[j].dot(w).real();
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) w -= b * b.dot(w);
      const double bn = w.norm();
      if (bn < 1e-13 * std::max(1.0, std::abs(a))) {
        // Invariant subspace: continue in a fresh random direction so that a
        // start vector on an excited eigenvector cannot hide lower states.
        beta.push_back(0.0);
        if (Index(basis.size()) == dim) {
          invariant = true;
          break;
        }
        if (j + 1 == m_max) break;
        Eigen::VectorXcd r(dim);
        for (Index i = 0; i < dim; ++i) r(i) = cplx(g(rng), g(rng));
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) r -= b * b.dot(r);
        basis.push_back(r.normalized());
        continue;
      }
      beta.push_back(bn);
      if (j + 1 == m_max) break;
      basis.push_back(w / bn);
    }
    const int m = int(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < m; ++i) x += y(i) * basis[i];
    v = x.normalized();
    res.value = es.eigenvalues()(0);
    const double resid = std::abs(beta[m - 1] * y(m - 1));
    if (invariant || resid < tol || m == dim) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Mps random_product_state(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<Eigen::Vector2cd> states(n);
  for (auto& v : states) v = Eigen::Vector2cd(cplx(g(rng), g(rng)), cplx(g(rng), g(rng))).normalized();
  return Mps::product_state(states);
}

Mps random_mps(std::size_t n, std::size_t bond, Rng& rng) {
  Mps s = random_product_state(n, rng);
  if (bond <= 1 || n < 2) return s;
  std::normal_distribution<double> g;
  const Truncation tr{bond, 0.0};
  std::size_t layers = 1;
  while ((std::size_t(1) << (2 * layers)) < bond && layers < n) ++layers;
  for (std::size_t l = 0; l < 2 * layers; ++l)
    for (std::size_t i = l % 2; i + 1 < n; i += 2) {
      Eigen::Matrix4cd z;
      for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 4; ++c) z(r, c) = cplx(g(rng), g(rng));
      const Eigen::Matrix4cd q = Eigen::HouseholderQR<Eigen::Matrix4cd>(z).householderQ();
      s.apply_two_site_gate(q, i, tr);
    }
  s.normalize();
  return s;
}

DmrgEngine::DmrgEngine(Mpo mpo, Mps state, DmrgConfig cfg)
    : mpo_(std::move(mpo)), state_(std::move(state)), cfg_(cfg), noise_rng_(derive_seed(cfg.rng_seed, 0x6e6f697365)) {
  cfg_.validate();
  if (state_.size() < 2) throw ArgumentError("DMRG needs at least two sites");
  if (state_.size() != mpo_.size()) throw DimensionError("DMRG: MPS and MPO sizes differ");
  build_environments();
}

void DmrgEngine::set_mpo(Mpo mpo) {
  if (mpo.size() != state_.size()) throw DimensionError("DMRG: MPS and MPO sizes differ");
  mpo_ = std::move(mpo);
  build_environments();
}

void DmrgEngine::build_environments() {
  const std::size_t n = state_.size();
  state_.move_center(0);
  left_.assign(n + 1, Mat());
  right_.assign(n + 1, Mat());
  left_[0] = Mat::Ones(1, 1);
  right_[n] = Mat::Ones(1, 1);
  for (std::size_t b = n - 1; b >= 1; --b) right_[b] = update_right(right_[b + 1], state_.tensor(b), mpo_.tensor(b));
}

TwoSite DmrgEngine::solve(std::size_t site, LanczosResult* info) {
  if (site + 1 >= state_.size()) throw IndexError("DMRG solve: site out of range");
  if (state_.center() != site && state_.center() != site + 1)
    throw ArgumentError("DMRG solve: centre must be on the pair");
  TwoSite theta = state_.two_site(site);
  EffectiveOperator op{left_[site],
                       right_[site + 2],
                       two_site_coefficients(mpo_.tensor(site), mpo_.tensor(site + 1)),
                       Index(theta.dl),
                       Index(theta.dr),
                       Index(mpo_.bond_dim(site)),
                       Index(mpo_.bond_dim(site + 2))};
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(theta.m.data(), theta.m.size());
  const auto res = lowest_eigenpair([&op](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { op.apply(x, y); }, v,
                                    cfg_.eigensolver_tol, cfg_.eigensolver_max_iter);
  theta.m = Eigen::Map<const Mat>(v.data(), theta.m.rows(), theta.m.cols());
  if (info) *info = res;
  return theta;
}

void DmrgEngine::conjugate_mpo(const Eigen::Matrix4cd& u, std::size_t site) { mpo_.conjugate_two_site(u, site); }

SplitInfo DmrgEngine::commit(std::size_t site, const TwoSite& theta, Direction dir) {
  auto info = state_.set_two_site(site, theta, cfg_.truncation(), dir);
  if (dir == Direction::Right)
    left_[site + 1] = update_left(left_[site], state_.tensor(site), mpo_.tensor(site));
  else
    right_[site + 1] = update_right(right_[site + 2], state_.tensor(site + 1), mpo_.tensor(site + 1));
  return info;
}

DmrgSweep DmrgEngine::sweep() {
  const std::size_t n = state_.size();
  DmrgSweep rec;
  rec.sweep = ++sweeps_done_;
  const bool noisy = cfg_.noise > 0 && rec.sweep <= cfg_.noise_sweeps;
  std::normal_distribution<double> g;
  if (state_.center() != 0) build_environments();
  auto step = [&](std::size_t i, Direction dir) {
    LanczosResult lr;
    TwoSite theta = solve(i, &lr);
    if (noisy) {
      Eigen::MatrixXcd z(theta.m.rows(), theta.m.cols());
      for (Index r = 0; r < z.rows(); ++r)
        for (Index c = 0; c < z.cols(); ++c) z(r, c) = cplx(g(noise_rng_), g(noise_rng_));
      theta.m += (cfg_.noise / z.norm()) * z;
      theta.m.normalize();
    }
    const auto info = commit(i, theta, dir);
    rec.energy = lr.value;
    rec.max_bond_used = std::max(rec.max_bond_used, info.singular_values.size());
    rec.max_entropy = std::max(rec.max_entropy, entropy_from_spectrum(info.singular_values));
    rec.max_discarded = std::max(rec.max_discarded, info.discarded_weight);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) step(i, Direction::Right);
  for (std::size_t i = n - 1; i-- > 0;) step(i, Direction::Left);
  return rec;
}

DmrgResult ground_state(const PauliSum& h, const DmrgConfig& cfg) {
  cfg.validate();
  if (h.n_qubits() < 2) throw ArgumentError("DMRG needs at least two sites");
  Rng rng(cfg.rng_seed);
  DmrgEngine engine(Mpo::from_pauli_sum(h), random_product_state(h.n_qubits(), rng), cfg);
  DmrgResult out;
  double prev = 0;
  for (int s = 0; s < cfg.max_sweeps; ++s) {
    const auto rec = engine.sweep();
    out.trace.push_back(rec);
    if (s > cfg.noise_sweeps && std::abs(rec.energy - prev) < cfg.energy_tol) {
      out.converged = true;
      break;
    }
    prev = rec.energy;
  }
  out.energy = out.trace.back().energy;
  out.state = engine.state();
  return out;
}

}  // namespace nsee
