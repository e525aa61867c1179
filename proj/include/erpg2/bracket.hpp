#pragma once

#include "erpg2/fixtures.hpp"

#include <optional>

namespace erpg2 {

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lie bracket as the structure-constant tensor c_{ij}^k = <mu(e_i,e_j), e_k>
// on the fixed basis e_1..e_7, antisymmetric in (i,j) by construction.
// Jacobi is checked, never assumed.
template <class S>
class Bracket {
public:
  Bracket() {
    for (auto& row : c_)
      for (auto& v : row) v = scalar_traits<S>::zero();
  }

  static int pair_index(int i, int j) { // 1 <= i < j <= 7
    return (i - 1) * 7 - (i - 1) * i / 2 + (j - i - 1);
  }

  const S& c(int i, int j, int k) const { // requires i < j
    return c_[pair_index(i, j)][k - 1];
  }
  void set_c(int i, int j, int k, const S& v) {
    if (i == j) throw BracketError("set_c: i == j");
    if (i < j)
      c_[pair_index(i, j)][k - 1] = v;
    else
      c_[pair_index(j, i)][k - 1] = -v;
  }
  // mu(e_i, e_j) as a coordinate vector
  std::array<S, 7> apply(int i, int j) const {
    std::array<S, 7> out;
    out.fill(scalar_traits<S>::zero());
    if (i == j) return out;
    int sgn = i < j ? 1 : -1;
    const auto& row = c_[pair_index(std::min(i, j), std::max(i, j))];
    for (int k = 0; k < 7; ++k) out[k] = sgn > 0 ? row[k] : -row[k];
    return out;
  }
  std::array<S, 7> apply(const std::array<S, 7>& x, const std::array<S, 7>& y) const {
    std::array<S, 7> out;
    out.fill(scalar_traits<S>::zero());
    for (int i = 1; i <= 7; ++i) {
      if (scalar_traits<S>::is_zero(x[i - 1])) continue;
      for (int j = 1; j <= 7; ++j) {
        if (i == j || scalar_traits<S>::is_zero(y[j - 1])) continue;
        auto v = apply(i, j);
        for (int k = 0; k < 7; ++k) out[k] += x[i - 1] * y[j - 1] * v[k];
      }
    }
    return out;
  }

  Matrix<S> ad(int i) const { // column j = mu(e_i, e_j)
    Matrix<S> m(7, 7);
    for (int j = 1; j <= 7; ++j) {
      auto v = apply(i, j);
      for (int k = 0; k < 7; ++k) m(k, j - 1) = v[k];
    }
    return m;
  }
  Matrix<S> ad(const std::array<S, 7>& x) const {
    Matrix<S> m(7, 7);
    for (int i = 1; i <= 7; ++i) {
      if (scalar_traits<S>::is_zero(x[i - 1])) continue;
      Matrix<S> a = ad(i);
      for (int r = 0; r < 7; ++r)
        for (int cc = 0; cc < 7; ++cc) m(r, cc) += x[i - 1] * a(r, cc);
    }
    return m;
  }

  S trace_ad(int i) const {
    S t = scalar_traits<S>::zero();
    for (int j = 1; j <= 7; ++j)
      if (j != i) t += apply(i, j)[j - 1];
    return t;
  }

  bool is_zero() const {
    for (const auto& row : c_)
      for (const auto& v : row)
        if (!scalar_traits<S>::is_zero(v)) return false;
    return true;
  }

  // d e^k = -sum_{i<j} c_{ij}^k e^i ^ e^j
  KForm<S> d_one(int k) const {
    KForm<S> f(2);
    for (int i = 1; i <= 7; ++i)
      for (int j = i + 1; j <= 7; ++j) {
        const S& v = c(i, j, k);
        if (!scalar_traits<S>::is_zero(v)) f.add_term({i, j}, -v);
      }
    return f;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& row : c_)
      for (const auto& v : row) m = std::max(m, std::fabs(scalar_traits<S>::to_double(v)));
    return m;
  }

private:
  std::array<std::array<S, 7>, 21> c_;
};

// Chevalley-Eilenberg differential, extended from 1-forms as an antiderivation.
template <class S>
KForm<S> d_mu(const Bracket<S>& mu, const KForm<S>& a) {
  if (a.degree() >= 7) return KForm<S>(7); // top degree: d vanishes (degree 8 impossible)
  std::array<KForm<S>, 8> d1;
  for (int i = 1; i <= 7; ++i) d1[i] = mu.d_one(i);
  KForm<S> r(a.degree() + 1);
  const auto& ms = mindex::masks(a.degree());
  for (int s = 0; s < a.size(); ++s) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(s))) continue;
    unsigned m = ms[s];
    int p = 0;
    for (int i = 1; i <= 7; ++i) {
      unsigned bit = 1u << (i - 1);
      if (!(m & bit)) continue;
      unsigned rest = m ^ bit;
      const KForm<S>& di = d1[i];
      const auto& m2 = mindex::masks(2);
      for (int t = 0; t < di.size(); ++t) {
        if (scalar_traits<S>::is_zero(di.coeff_slot(t))) continue;
        int sg = mindex::merge_sign(m2[t], rest);
        if (sg == 0) continue;
        if (p % 2) sg = -sg;
        S term = a.coeff_slot(s) * di.coeff_slot(t);
        int slot = mindex::slot(m2[t] | rest);
        if (sg > 0)
          r.coeff_slot(slot) += term;
        else
          r.coeff_slot(slot) -= term;
      }
      ++p;
    }
  }
  return r;
}

template <class S>
struct JacobiReport {
  bool ok = true;
  std::array<int, 3> witness{0, 0, 0}; // first violating (e_i, e_j, e_k)
  double max_violation = 0.0;
};

template <class S>
JacobiReport<S> check_jacobi(const Bracket<S>& mu, double tol = 1e-9) {
  JacobiReport<S> rep;
  for (int x = 1; x <= 7; ++x)
    for (int y = x + 1; y <= 7; ++y)
      for (int z = y + 1; z <= 7; ++z) {
        std::array<S, 7> acc;
        acc.fill(scalar_traits<S>::zero());
        auto add = [&](int a, int b, int cc) {
          auto inner = mu.apply(a, b);
          for (int k = 1; k <= 7; ++k) {
            if (scalar_traits<S>::is_zero(inner[k - 1])) continue;
            auto outer = mu.apply(k, cc);
            for (int l = 0; l < 7; ++l) acc[l] += inner[k - 1] * outer[l];
          }
        };
        add(x, y, z);
        add(y, z, x);
        add(z, x, y);
        bool bad = false;
        for (const auto& v : acc) {
          double av = std::fabs(scalar_traits<S>::to_double(v));
          rep.max_violation = std::max(rep.max_violation, av);
          if constexpr (scalar_traits<S>::exact) {
            if (!v.is_zero()) bad = true;
          } else {
            if (av > tol) bad = true;
          }
        }
        if (bad && rep.ok) {
          rep.ok = false;
          rep.witness = {x, y, z};
        }
      }
  return rep;
}

template <class S>
bool is_unimodular(const Bracket<S>& mu, double tol = 1e-9) {
  for (int i = 1; i <= 7; ++i) {
    S t = mu.trace_ad(i);
    if constexpr (scalar_traits<S>::exact) {
      if (!t.is_zero()) return false;
    } else {
      if (std::fabs(t) > tol) return false;
    }
  }
  return true;
}

template <class S>
Subspace<S> derived_algebra(const Bracket<S>& mu, double rank_tol = 1e-8) {
  Matrix<S> rows(21, 7);
  int r = 0;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      auto v = mu.apply(i, j);
      for (int k = 0; k < 7; ++k) rows(r, k) = v[k];
      ++r;
    }
  return Subspace<S>::span(rows, rank_tol);
}

// span of mu(x, s) over x in a row-basis and s in another
template <class S>
Subspace<S> bracket_span(const Bracket<S>& mu, const Matrix<S>& xs, const Matrix<S>& ys,
                         double rank_tol = 1e-8) {
  Matrix<S> rows(xs.rows() * ys.rows(), 7);
  for (int a = 0; a < xs.rows(); ++a)
    for (int b = 0; b < ys.rows(); ++b) {
      std::array<S, 7> x, y;
      for (int k = 0; k < 7; ++k) {
        x[k] = xs(a, k);
        y[k] = ys(b, k);
      }
      auto v = mu.apply(x, y);
      for (int k = 0; k < 7; ++k) rows(a * ys.rows() + b, k) = v[k];
    }
  return Subspace<S>::span(rows, rank_tol);
}

template <class S>
Matrix<S> full_basis7() {
  return Matrix<S>::identity(7);
}

template <class S>
bool is_solvable(const Bracket<S>& mu, double rank_tol = 1e-8) {
  Subspace<S> g = Subspace<S>::span(Matrix<S>::identity(7), rank_tol);
  for (int iter = 0; iter < 8; ++iter) {
    if (g.dim() == 0) return true;
    Subspace<S> next = bracket_span(mu, g.basis(), g.basis(), rank_tol);
    if (next.dim() == g.dim()) return false;
    g = next;
  }
  return false;
}

template <class S>
bool is_ideal(const Bracket<S>& mu, const Subspace<S>& s, double rank_tol = 1e-8) {
  Subspace<S> img = bracket_span(mu, Matrix<S>::identity(7), s.basis(), rank_tol);
  return s.contains(img, rank_tol);
}

// Lower central series of the subalgebra spanned by s reaches zero.
template <class S>
bool is_nilpotent_subalgebra(const Bracket<S>& mu, const Subspace<S>& s, double rank_tol = 1e-8,
                             int* steps = nullptr) {
  Subspace<S> cur = s;
  for (int iter = 1; iter <= 8; ++iter) {
    cur = bracket_span(mu, s.basis(), cur.basis(), rank_tol);
    if (cur.dim() == 0) {
      if (steps) *steps = iter;
      return true;
    }
  }
  return false;
}

template <class S>
bool is_nilpotent_ideal(const Bracket<S>& mu, const Subspace<S>& s, double rank_tol = 1e-8) {
  return is_ideal(mu, s, rank_tol) && is_nilpotent_subalgebra(mu, s, rank_tol);
}

template <class S>
bool is_ad_nilpotent(const Bracket<S>& mu, const std::array<S, 7>& x, double tol = 1e-6) {
  Matrix<S> a = mu.ad(x);
  if constexpr (scalar_traits<S>::exact) {
    Matrix<S> p = a;
    for (int k = 1; k < 7; ++k) p = p * a;
    return p.is_zero();
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a));
    double scale = std::max(1.0, a.max_abs());
    for (int i = 0; i < 7; ++i)
      if (std::abs(es.eigenvalues()(i)) > tol * scale) return false;
    return true;
  }
}

enum class NilradicalVerdict { Pass, Fail, Inconclusive };

template <class S>
struct NilradicalReport {
  NilradicalVerdict verdict = NilradicalVerdict::Inconclusive;
  int dim = 0;
  int nilpotency_steps = 0;
  std::string detail;
};

// Verdict on "candidate == nilradical" for solvable mu. (a) requires a
// nilpotent ideal containing [g,g]. Maximality (b) rests on the solvable-case
// fact that {X : ad X nilpotent} is a subspace containing the nilradical, so
// it must meet any complement W of a maximal candidate trivially. (b) is
// certified when the complement is a line (homogeneity) or when the trace
// form tr(ad u ad v) restricted to W is definite; otherwise the sampled
// directions {+-w_i, w_i+-w_j, 2-plane grids} can only refute, and an
// unrefuted non-certified candidate reports INCONCLUSIVE.
template <class S>
NilradicalReport<S> verify_nilradical(const Bracket<S>& mu, const Subspace<S>& candidate,
                                      double rank_tol = 1e-8, double nil_tol = 1e-6) {
  NilradicalReport<S> rep;
  rep.dim = candidate.dim();
  if (!is_solvable(mu, rank_tol)) throw BracketError("verify_nilradical: bracket is not solvable");
  if (!is_ideal(mu, candidate, rank_tol)) {
    rep.verdict = NilradicalVerdict::Fail;
    rep.detail = "candidate is not an ideal";
    return rep;
  }
  if (!is_nilpotent_subalgebra(mu, candidate, rank_tol, &rep.nilpotency_steps)) {
    rep.verdict = NilradicalVerdict::Fail;
    rep.detail = "candidate is not nilpotent";
    return rep;
  }
  if (!candidate.contains(derived_algebra(mu, rank_tol), rank_tol)) {
    rep.verdict = NilradicalVerdict::Fail;
    rep.detail = "candidate does not contain the derived algebra";
    return rep;
  }

  // complement directions: standard basis vectors outside the candidate span
  std::vector<std::array<S, 7>> w;
  {
    Subspace<S> grow = candidate;
    for (int i = 1; i <= 7 && grow.dim() < 7; ++i) {
      std::vector<S> ei(7, scalar_traits<S>::zero());
      ei[i - 1] = scalar_traits<S>::one();
      if (!grow.contains(ei, rank_tol)) {
        std::array<S, 7> v;
        v.fill(scalar_traits<S>::zero());
        v[i - 1] = scalar_traits<S>::one();
        w.push_back(v);
        Matrix<S> one(1, 7);
        for (int k = 0; k < 7; ++k) one(0, k) = v[k];
        grow = Subspace<S>::sum(grow, Subspace<S>::span(one, rank_tol), rank_tol);
      }
    }
  }
  int m = static_cast<int>(w.size());
  if (m == 0) {
    rep.verdict = NilradicalVerdict::Pass;
    rep.detail = "candidate is the whole algebra";
    return rep;
  }

  auto combo = [&](int i, int j, int si, int sj) {
    std::array<S, 7> v;
    for (int k = 0; k < 7; ++k)
      v[k] = scalar_traits<S>::from_int(si) * w[i][k] +
             (j >= 0 ? scalar_traits<S>::from_int(sj) * w[j][k] : scalar_traits<S>::zero());
    return v;
  };
  std::vector<std::array<S, 7>> samples;
  for (int i = 0; i < m; ++i) {
    samples.push_back(combo(i, -1, 1, 0));
    samples.push_back(combo(i, -1, -1, 0));
  }
  static const int grid[9][2] = {{1, 1},  {1, -1}, {-1, 1}, {-1, -1}, {1, 2},
                                 {2, 1},  {1, -2}, {2, -1}, {-2, 1}};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (const auto& g : grid) samples.push_back(combo(i, j, g[0], g[1]));

  for (const auto& x : samples)
    if (is_ad_nilpotent(mu, x, nil_tol)) {
      rep.verdict = NilradicalVerdict::Fail;
      rep.detail = "ad-nilpotent direction found outside the candidate";
      return rep;
    }

  if (m == 1) {
    rep.verdict = NilradicalVerdict::Pass;
    rep.detail = "complement line certified by homogeneity";
    return rep;
  }
  // trace-form certificate: q(t) = tr(ad(t.w) ad(t.w)) definite on W rules
  // out nilpotent combinations (nilpotent ad has tr(ad^2) = 0)
  Matrix<S> K(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) K(i, j) = (mu.ad(w[i]) * mu.ad(w[j])).trace();
  auto definite = [&](int want) {
    for (int k = 1; k <= m; ++k) {
      S minor = det(K.block(0, 0, k, k));
      int sg;
      if constexpr (scalar_traits<S>::exact)
        sg = minor.sign();
      else
        sg = minor > nil_tol ? 1 : (minor < -nil_tol ? -1 : 0);
      int expect = (want > 0) ? 1 : (k % 2 ? -1 : 1);
      if (sg != expect) return false;
    }
    return true;
  };
  if (definite(+1) || definite(-1)) {
    rep.verdict = NilradicalVerdict::Pass;
    rep.detail = "trace form definite on the complement";
    return rep;
  }
  rep.verdict = NilradicalVerdict::Inconclusive;
  rep.detail = "sampled directions are non-nilpotent but no certificate applies";
  return rep;
}

// Searches the nilradical starting from the derived algebra and absorbing
// ad-nilpotent sample directions. Returns the final candidate's report.
template <class S>
std::pair<Subspace<S>, NilradicalReport<S>> find_nilradical(const Bracket<S>& mu,
                                                            double rank_tol = 1e-8,
                                                            double nil_tol = 1e-6) {
  Subspace<S> cand = derived_algebra(mu, rank_tol);
  for (int round = 0; round < 8; ++round) {
    bool grew = false;
    for (int i = 1; i <= 7; ++i) {
      std::vector<S> ei(7, scalar_traits<S>::zero());
      ei[i - 1] = scalar_traits<S>::one();
      if (cand.contains(ei, rank_tol)) continue;
      std::array<S, 7> v;
      v.fill(scalar_traits<S>::zero());
      v[i - 1] = scalar_traits<S>::one();
      if (is_ad_nilpotent(mu, v, nil_tol)) {
        Matrix<S> one(1, 7);
        for (int k = 0; k < 7; ++k) one(0, k) = v[k];
        Subspace<S> cand2 = Subspace<S>::sum(cand, Subspace<S>::span(one, rank_tol), rank_tol);
        if (is_nilpotent_ideal(mu, cand2, rank_tol)) {
          cand = cand2;
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  return {cand, verify_nilradical(mu, cand, rank_tol, nil_tol)};
}

struct DerivationConstraints {
  bool block_diag = false; // D preserves h1 and g1 and kills e7
  bool su3 = false;        // D skew with theta(D)omega = 0 and theta(D)rho+ = 0
};

// Null space of D -> D mu(.,.) - mu(D.,.) - mu(.,D.), as vectors in gl_7
// flattened row-major, intersected with the optional linear constraints.
template <class S>
Subspace<S> derivations(const Bracket<S>& mu, DerivationConstraints cons = {},
                        double rank_tol = 1e-8) {
  std::vector<std::vector<S>> rows;
  auto new_row = [&]() -> std::vector<S>& {
    rows.emplace_back(49, scalar_traits<S>::zero());
    return rows.back();
  };
  // derivation equations: for i<j, component k
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      auto mij = mu.apply(i, j);
      for (int k = 1; k <= 7; ++k) {
        auto& row = new_row();
        // (D mu(e_i,e_j))_k = sum_l D_{k l} mu(e_i,e_j)_l
        for (int l = 1; l <= 7; ++l) row[(k - 1) * 7 + (l - 1)] += mij[l - 1];
        // -(mu(D e_i, e_j))_k = -sum_l D_{l i} mu(e_l,e_j)_k
        for (int l = 1; l <= 7; ++l) {
          if (l != j) row[(l - 1) * 7 + (i - 1)] -= mu.apply(l, j)[k - 1];
          if (l != i) row[(l - 1) * 7 + (j - 1)] -= mu.apply(i, l)[k - 1];
        }
      }
    }
  if (cons.block_diag) {
    // zero outside (h1 x h1) u (g1 x g1); kill row and column 7
    auto in_h1 = [](int i) { return i == 3 || i == 4; };
    auto in_g1 = [](int i) { return i == 1 || i == 2 || i == 5 || i == 6; };
    for (int i = 1; i <= 7; ++i)
      for (int j = 1; j <= 7; ++j) {
        bool keep = (in_h1(i) && in_h1(j)) || (in_g1(i) && in_g1(j));
        if (!keep) {
          auto& row = new_row();
          row[(i - 1) * 7 + (j - 1)] = scalar_traits<S>::one();
        }
      }
  }
  if (cons.su3) {
    for (int i = 1; i <= 7; ++i)
      for (int j = i; j <= 7; ++j) {
        auto& row = new_row();
        row[(i - 1) * 7 + (j - 1)] += scalar_traits<S>::one();
        row[(j - 1) * 7 + (i - 1)] += scalar_traits<S>::one();
      }
    // theta(D)omega = 0 and theta(D)rho+ = 0, linear in D
    auto add_theta_rows = [&](const KForm<S>& gamma) {
      int deg = gamma.degree();
      int nslots = mindex::binom(7, deg);
      std::vector<std::vector<S>> block(nslots, std::vector<S>(49, scalar_traits<S>::zero()));
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
          Matrix<S> unit(7, 7);
          unit(a, b) = scalar_traits<S>::one();
          KForm<S> th = theta(on_full(unit), gamma);
          for (int s = 0; s < th.size(); ++s)
            if (!scalar_traits<S>::is_zero(th.coeff_slot(s)))
              block[s][a * 7 + b] += th.coeff_slot(s);
        }
      for (auto& r : block) rows.push_back(std::move(r));
    };
    add_theta_rows(fixtures::omega<S>());
    add_theta_rows(fixtures::rho_plus<S>());
  }
  Matrix<S> A(static_cast<int>(rows.size()), 49);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j < 49; ++j) A(static_cast<int>(r), j) = rows[r][j];
  return Subspace<S>::span(nullspace(A, rank_tol), rank_tol);
}

// Ricci operator of the left-invariant metric making e_1..e_7 orthonormal:
// Koszul <nabla_i e_j, e_k> = (c_ijk - c_jki + c_kij)/2, curvature
// R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_{mu(X,Y)},
// Ric(X,Y) = sum_i <R(e_i,X)Y, e_i>.
template <class S>
Matrix<S> ricci(const Bracket<S>& mu) {
  std::array<Matrix<S>, 8> G; // G[i](k,j) = <nabla_{e_i} e_j, e_k>
  auto c3 = [&](int i, int j, int k) -> S {
    if (i == j) return scalar_traits<S>::zero();
    return mu.apply(i, j)[k - 1];
  };
  S half = scalar_traits<S>::one() / scalar_traits<S>::from_int(2);
  for (int i = 1; i <= 7; ++i) {
    G[i] = Matrix<S>(7, 7);
    for (int j = 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k)
        G[i](k - 1, j - 1) = half * (c3(i, j, k) - c3(j, k, i) + c3(k, i, j));
  }
  Matrix<S> ric(7, 7);
  for (int x = 1; x <= 7; ++x)
    for (int y = x; y <= 7; ++y) {
      S s = scalar_traits<S>::zero();
      for (int i = 1; i <= 7; ++i) {
        Matrix<S> R = G[i] * G[x] - G[x] * G[i];
        auto br = mu.apply(i, x);
        for (int l = 1; l <= 7; ++l)
          if (!scalar_traits<S>::is_zero(br[l - 1])) {
            for (int r2 = 0; r2 < 7; ++r2)
              for (int c2 = 0; c2 < 7; ++c2) R(r2, c2) -= br[l - 1] * G[l](r2, c2);
          }
        s += R(i - 1, y - 1);
      }
      ric(x - 1, y - 1) = s;
      ric(y - 1, x - 1) = s;
    }
  return ric;
}

template <class S>
S scalar_curvature(const Matrix<S>& ric) {
  return ric.trace();
}

// Split mu = lambda + mu_A for h = span{e_1..e_6} an ideal; A = ad e_7 |_h.
template <class S>
struct SplitBracket {
  Bracket<S> lambda; // bracket of h, extended by lambda(., e_7) = 0
  Matrix<S> A;       // 6x6
};

template <class S>
bool has_h_ideal(const Bracket<S>& mu, double tol = 1e-9) {
  auto zero = [&](const S& v) {
    if constexpr (scalar_traits<S>::exact)
      return v.is_zero();
    else
      return std::fabs(v) <= tol;
  };
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 7; ++j)
      if (!zero(mu.apply(i, j)[6])) return false;
  return true;
}

template <class S>
SplitBracket<S> split_lambda_A(const Bracket<S>& mu, double tol = 1e-9) {
  if (!has_h_ideal(mu, tol)) throw BracketError("split: h is not an ideal");
  SplitBracket<S> out;
  out.A = Matrix<S>(6, 6);
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      auto v = mu.apply(i, j);
      for (int k = 1; k <= 6; ++k) out.lambda.set_c(i, j, k, v[k - 1]);
    }
  for (int j = 1; j <= 6; ++j) {
    auto v = mu.apply(7, j);
    for (int k = 1; k <= 6; ++k) out.A(k - 1, j - 1) = v[k - 1];
  }
  return out;
}

template <class S>
Bracket<S> join_lambda_A(const Bracket<S>& lambda, const Matrix<S>& A) {
  Bracket<S> mu = lambda;
  for (int j = 1; j <= 6; ++j)
    for (int k = 1; k <= 6; ++k)
      if (!scalar_traits<S>::is_zero(A(k - 1, j - 1))) mu.set_c(7, j, k, A(k - 1, j - 1));
  return mu;
}

template <class S>
Bracket<S> bracket_cast_from_exact(const Bracket<Exact>& b) {
  Bracket<S> r;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k) r.set_c(i, j, k, scalar_traits<S>::from_exact(b.c(i, j, k)));
  return r;
}

} // namespace erpg2
