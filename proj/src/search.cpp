#include "erpg2/search.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <future>
#include <mutex>
#include <random>
#include <thread>

namespace erpg2 {

namespace {

const std::array<unsigned, 6>& g1_2form_masks() {
  // 2-form slots supported on indices {1,2,5,6}
  static const std::array<unsigned, 6> masks = [] {
    std::array<unsigned, 6> m{};
    int t = 0;
    for (unsigned mask : mindex::masks(2))
      if ((mask & ~0x33u) == 0) m[t++] = mask;
    return m;
  }();
  return masks;
}

struct ChartPieces {
  double a, b, c, d;
  Matrix<double> A{4, 4}, B{4, 4}, C{4, 4}; // full ad blocks (T included)
};

ChartPieces split_chart(const std::vector<double>& x, bool with_T) {
  ChartPieces p;
  p.a = x[0];
  p.b = x[1];
  p.c = x[2];
  p.d = x[3];
  std::vector<double> e(x.begin() + 4, x.begin() + 14);
  std::vector<double> f(x.begin() + 14, x.begin() + 24);
  std::vector<double> g(x.begin() + 24, x.begin() + 34);
  p.A = sp_from_coords(e);
  p.B = sp_from_coords(f);
  p.C = sp_from_coords(g);
  if (with_T) {
    p.A = p.A + matrix_cast_from_exact<double>(fixtures::T7<Exact>().mat);
    p.B = p.B + matrix_cast_from_exact<double>(fixtures::T3<Exact>().mat);
    p.C = p.C + matrix_cast_from_exact<double>(fixtures::T4<Exact>().mat);
  }
  return p;
}

void emit(const Matrix<double>& m, std::vector<double>& out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.push_back(m(i, j));
}

// direction = unit chart vector (without T offsets); base = chart point
std::vector<double> residual_or_directional(const std::vector<double>& x,
                                            const std::vector<double>* dir) {
  ChartPieces p = split_chart(x, true);
  std::vector<double> out;
  out.reserve(kResidualDim);
  const auto& masks = g1_2form_masks();
  if (!dir) {
    // condition (ii): theta(E^t)w7 + theta(F^t)w3 + theta(G^t)w4 + (a+d)w7
    std::vector<double> e(x.begin() + 4, x.begin() + 14);
    std::vector<double> f(x.begin() + 14, x.begin() + 24);
    std::vector<double> g(x.begin() + 24, x.begin() + 34);
    KForm<double> ii = theta(on_g1(sp_from_coords(e).transpose()), fixtures::omega7<double>()) +
                       theta(on_g1(sp_from_coords(f).transpose()), fixtures::omega3<double>()) +
                       theta(on_g1(sp_from_coords(g).transpose()), fixtures::omega4<double>()) +
                       ((p.a + p.d) * fixtures::omega7<double>());
    for (unsigned m : masks) out.push_back(ii.coeff_slot(mindex::slot(m)));
    emit(comm(p.A, p.B) - (p.a * p.B) - (p.c * p.C), out);
    emit(comm(p.A, p.C) - (p.b * p.B) - (p.d * p.C), out);
    emit(comm(p.B, p.C), out);
  } else {
    ChartPieces q = split_chart(*dir, false);
    std::vector<double> de(dir->begin() + 4, dir->begin() + 14);
    std::vector<double> df(dir->begin() + 14, dir->begin() + 24);
    std::vector<double> dg(dir->begin() + 24, dir->begin() + 34);
    KForm<double> ii = theta(on_g1(sp_from_coords(de).transpose()), fixtures::omega7<double>()) +
                       theta(on_g1(sp_from_coords(df).transpose()), fixtures::omega3<double>()) +
                       theta(on_g1(sp_from_coords(dg).transpose()), fixtures::omega4<double>()) +
                       ((q.a + q.d) * fixtures::omega7<double>());
    for (unsigned m : masks) out.push_back(ii.coeff_slot(mindex::slot(m)));
    emit(comm(q.A, p.B) + comm(p.A, q.B) - (q.a * p.B) - (p.a * q.B) - (q.c * p.C) - (p.c * q.C),
         out);
    emit(comm(q.A, p.C) + comm(p.A, q.C) - (q.b * p.B) - (p.b * q.B) - (q.d * p.C) - (p.d * q.C),
         out);
    emit(comm(q.B, p.C) + comm(p.B, q.C), out);
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double t : v) s += t * t;
  return std::sqrt(s);
}

} // namespace

std::vector<double> erp_residual(const std::vector<double>& x) {
  return residual_or_directional(x, nullptr);
}

Matrix<double> erp_jacobian(const std::vector<double>& x) {
  Matrix<double> J(kResidualDim, kChartDim);
  for (int k = 0; k < kChartDim; ++k) {
    std::vector<double> dir(kChartDim, 0.0);
    dir[k] = 1.0;
    std::vector<double> col = residual_or_directional(x, &dir);
    for (int r = 0; r < kResidualDim; ++r) J(r, k) = col[r];
  }
  return J;
}

LMOutcome levenberg_marquardt(std::vector<double> x0, const SearchOptions& opt) {
  LMOutcome out;
  std::vector<int> free_idx;
  for (int k = 0; k < kChartDim; ++k)
    if (!opt.frozen.count(k) && !(opt.unimodular && k < 4)) free_idx.push_back(k);
  auto pin = [&](std::vector<double>& x) {
    for (const auto& [k, v] : opt.frozen) x[k] = v;
    if (opt.unimodular)
      for (int k = 0; k < 4; ++k) x[k] = 0.0;
  };
  pin(x0);
  std::vector<double> x = x0;
  std::vector<double> r = erp_residual(x);
  double rn = norm2(r);
  double lambda = opt.lm_lambda0;
  int it = 0;
  for (; it < opt.max_iters && rn > opt.target_residual; ++it) {
    Matrix<double> Jfull = erp_jacobian(x);
    int nf = static_cast<int>(free_idx.size());
    Eigen::MatrixXd J(kResidualDim, nf);
    for (int rr = 0; rr < kResidualDim; ++rr)
      for (int cc = 0; cc < nf; ++cc) J(rr, cc) = Jfull(rr, free_idx[cc]);
    Eigen::VectorXd rv(kResidualDim);
    for (int rr = 0; rr < kResidualDim; ++rr) rv(rr) = r[rr];
    Eigen::MatrixXd H = J.transpose() * J;
    Eigen::VectorXd gr = J.transpose() * rv;
    bool accepted = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      Eigen::MatrixXd Hl = H + lambda * Eigen::MatrixXd::Identity(nf, nf);
      Eigen::VectorXd step = Hl.ldlt().solve(-gr);
      std::vector<double> xt = x;
      for (int cc = 0; cc < nf; ++cc) xt[free_idx[cc]] += step(cc);
      std::vector<double> rt = erp_residual(xt);
      double rtn = norm2(rt);
      if (rtn < rn) {
        x = std::move(xt);
        r = std::move(rt);
        if (rtn > rn) out.monotone = false;
        rn = rtn;
        lambda = std::max(lambda / 10.0, 1e-14);
        accepted = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e14) break;
      }
    }
    if (!accepted) break;
  }
  out.x = std::move(x);
  out.residual_norm = rn;
  out.iters = it;
  out.converged = rn <= opt.target_residual;
  return out;
}

namespace {

// (sorted spectra of A1, A; sorted eigenvalue moduli of B+iC): invariant
// under the symmetry groups up to the sign flips of the g-action.
std::vector<double> orbit_signature(const Quadruple<double>& q) {
  std::vector<double> sig;
  auto eig_sorted_abs2 = [&](const Matrix<double>& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m));
    std::vector<std::pair<double, double>> v;
    for (int i = 0; i < m.rows(); ++i) {
      auto z = es.eigenvalues()(i);
      v.push_back({z.real() * z.real() - z.imag() * z.imag(), std::abs(z)});
    }
    std::sort(v.begin(), v.end());
    for (auto& p : v) {
      sig.push_back(p.first);
      sig.push_back(p.second);
    }
  };
  eig_sorted_abs2(q.A1);
  eig_sorted_abs2(q.A);
  Eigen::MatrixXcd bc = to_eigen(q.B).cast<std::complex<double>>() +
                        std::complex<double>(0, 1) * to_eigen(q.C).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(bc);
  std::vector<double> mods;
  for (int i = 0; i < 4; ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(mods.begin(), mods.end());
  sig.insert(sig.end(), mods.begin(), mods.end());
  return sig;
}

double sig_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
  return s;
}

Matrix<double> expm(const Matrix<double>& m) {
  Eigen::MatrixXd e = to_eigen(m).exp();
  return from_eigen(e);
}

std::vector<Matrix<double>> sampled_group(bool unimodular);

double orbit_aligned_distance(const Quadruple<double>& q1, const Quadruple<double>& q2) {
  bool unimod = std::fabs(q1.A1.trace()) < 1e-6;
  double best = 1e300;
  Bracket<double> mu1 = to_bracket(q1);
  auto chart2 = quad_to_chart(q2, 1e-4);
  for (const auto& h : sampled_group(unimod)) {
    // conjugate mu1 by h and re-read the chart
    Matrix<double> hi = inverse(h);
    Bracket<double> conj;
    for (int i = 1; i <= 7; ++i)
      for (int j = i + 1; j <= 7; ++j) {
        std::array<double, 7> x{}, y{};
        for (int k = 0; k < 7; ++k) {
          x[k] = hi(k, i - 1);
          y[k] = hi(k, j - 1);
        }
        auto v = mu1.apply(x, y);
        for (int k = 1; k <= 7; ++k) {
          double acc = 0;
          for (int l = 0; l < 7; ++l) acc += h(k - 1, l) * v[l];
          if (std::fabs(acc) > 1e-14) conj.set_c(i, j, k, acc);
        }
      }
    try {
      auto c1 = quad_to_chart(quadruple_from_bracket(conj, 1e-6), 1e-4);
      double d = 0;
      for (int k = 0; k < kChartDim; ++k) d = std::max(d, std::fabs(c1[k] - chart2[k]));
      best = std::min(best, d);
    } catch (const BracketError&) {
      // conjugation left the chart; skip this sample
    }
  }
  return best;
}

std::vector<Matrix<double>> sampled_group(bool unimodular) {
  std::vector<Matrix<double>> out;
  auto rot2 = [](double t) {
    Matrix<double> r(2, 2);
    r(0, 0) = std::cos(t);
    r(0, 1) = -std::sin(t);
    r(1, 0) = std::sin(t);
    r(1, 1) = std::cos(t);
    return r;
  };
  const int n = 8;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t1 = 2 * M_PI * i / n, t2 = 2 * M_PI * j / n;
      Matrix<double> h = Matrix<double>::identity(7);
      h.set_block(2, 2, rot2(t1));
      h.set_block(0, 0, rot2(t2));
      h.set_block(4, 4, rot2(-t1 - t2));
      out.push_back(h);
    }
  if (unimodular) {
    // a few exp samples from the 4-dim stabilizer algebra
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int s = 0; s < 24; ++s) {
      double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
      Matrix<double> D(7, 7);
      // section basis (e7,e3,e4 | e1,e2,e5,e6)
      Matrix<double> blk3(3, 3), blk4(4, 4);
      blk3(0, 1) = c;  blk3(0, 2) = -b;
      blk3(1, 0) = -c; blk3(1, 2) = a;
      blk3(2, 0) = b;  blk3(2, 1) = -a;
      blk4(0, 1) = -d;      blk4(0, 2) = b / 2;  blk4(0, 3) = -c / 2;
      blk4(1, 0) = d;       blk4(1, 2) = -c / 2; blk4(1, 3) = -b / 2;
      blk4(2, 0) = -b / 2;  blk4(2, 1) = c / 2;  blk4(2, 3) = -a + d;
      blk4(3, 0) = c / 2;   blk4(3, 1) = b / 2;  blk4(3, 2) = a - d;
      Matrix<double> sec(7, 7);
      sec.set_block(0, 0, blk3);
      sec.set_block(3, 3, blk4);
      out.push_back(expm(fixtures::section_to_std(sec)));
    }
  }
  return out;
}

} // namespace

SearchResult find_erp(const SearchOptions& opt) {
  if (opt.restarts < 1) throw std::invalid_argument("find_erp: restarts must be >= 1");
  SearchResult result;
  std::mutex mtx;
  std::vector<std::pair<int, LMOutcome>> outcomes(opt.restarts);

  auto run_restart = [&](int k) {
    // per-restart stream: reproducible regardless of scheduling
    std::seed_seq seq{static_cast<std::uint64_t>(opt.seed), static_cast<std::uint64_t>(k)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> x0(kChartDim);
    for (double& v : x0) v = U(rng);
    outcomes[k] = {k, levenberg_marquardt(std::move(x0), opt)};
  };

  int nthreads = opt.threads > 0 ? opt.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::min(nthreads, opt.restarts);
  {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          int k = next.fetch_add(1);
          if (k >= opt.restarts) return;
          run_restart(k);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<double>> signatures;
  for (auto& [k, lm] : outcomes) {
    if (!lm.converged) {
      ++result.not_converged;
      continue;
    }
    ++result.converged;
    Quadruple<double> q = chart_to_quad(lm.x);
    // Ricci trace filter (rejects the trivial zero family)
    Matrix<double> SA1 = sym_part(q.A1), SA = sym_part(q.A);
    double tr = (SA1 * SA1).trace() + (SA * SA).trace();
    if (std::fabs(tr - 1.0 / 3.0) > 1e-8) {
      ++result.filtered_trivial;
      continue;
    }
    SearchHit hit;
    hit.restart = k;
    hit.iters = lm.iters;
    hit.residual_norm = lm.residual_norm;
    hit.q = q;
    Bracket<double> mu = to_bracket(q);
    TorsionReport<double> rep =
        check_jacobi(mu, opt.confirm_tol).ok ? torsion(mu, opt.confirm_tol) : TorsionReport<double>{};
    hit.erp_confirmed = rep.erp;
    std::lock_guard<std::mutex> lock(mtx);
    auto sig = orbit_signature(q);
    for (size_t s = 0; s < signatures.size(); ++s) {
      if (sig_distance(sig, signatures[s]) < 1e-5 &&
          orbit_aligned_distance(result.hits[s].q, q) < 1e-4) {
        hit.duplicate_of_earlier = true;
        break;
      }
    }
    signatures.push_back(std::move(sig));
    result.hits.push_back(std::move(hit));
  }
  std::sort(result.hits.begin(), result.hits.end(),
            [](const SearchHit& a, const SearchHit& b) { return a.restart < b.restart; });
  return result;
}

} // namespace erpg2
