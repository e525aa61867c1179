#pragma once

#include "erpg2/g2.hpp"

namespace erpg2 {

template <class S>
Bracket<S> conjugate_bracket(const Matrix<S>& h, const Bracket<S>& mu) {
  Matrix<S> hi = inverse(h);
  Bracket<S> out;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      std::array<S, 7> x, y;
      for (int k = 0; k < 7; ++k) {
        x[k] = hi(k, i - 1);
        y[k] = hi(k, j - 1);
      }
      auto v = mu.apply(x, y);
      for (int k = 1; k <= 7; ++k) {
        S acc = scalar_traits<S>::zero();
        for (int l = 0; l < 7; ++l) acc += h(k - 1, l) * v[l];
        if (!scalar_traits<S>::is_zero(acc)) out.set_c(i, j, k, acc);
      }
    }
  return out;
}

// D . mu = D mu(.,.) - mu(D.,.) - mu(.,D.)
template <class S>
Bracket<S> infinitesimal_action(const Matrix<S>& D, const Bracket<S>& mu) {
  Bracket<S> out;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      std::array<S, 7> acc;
      acc.fill(scalar_traits<S>::zero());
      auto mij = mu.apply(i, j);
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) acc[l] += D(l, k) * mij[k];
      for (int l = 1; l <= 7; ++l) {
        if (!scalar_traits<S>::is_zero(D(l - 1, i - 1))) {
          auto v = mu.apply(l, j);
          for (int k = 0; k < 7; ++k) acc[k] -= D(l - 1, i - 1) * v[k];
        }
        if (!scalar_traits<S>::is_zero(D(l - 1, j - 1))) {
          auto v = mu.apply(i, l);
          for (int k = 0; k < 7; ++k) acc[k] -= D(l - 1, j - 1) * v[k];
        }
      }
      for (int k = 1; k <= 7; ++k)
        if (!scalar_traits<S>::is_zero(acc[k - 1])) out.set_c(i, j, k, acc[k - 1]);
    }
  return out;
}

// ---- stabilizer algebras ---------------------------------------------------

// Basis of u_{h,tau} = Lie(U_0): block rotations diag(0, t1 J, t2 J, t3 J)
// on (e3,e4),(e1,e2),(e5,e6) with t1+t2+t3 = 0.
template <class S>
std::vector<Matrix<S>> u_htau_basis() {
  auto J_at = [](Matrix<S>& m, int i0, int sgn) {
    m(i0, i0 + 1) = scalar_traits<S>::from_int(-sgn);
    m(i0 + 1, i0) = scalar_traits<S>::from_int(sgn);
  };
  std::vector<Matrix<S>> out;
  {
    Matrix<S> D(7, 7); // t1 = 1, t2 = 0, t3 = -1
    J_at(D, 2, 1);
    J_at(D, 4, -1);
    out.push_back(D);
  }
  {
    Matrix<S> D(7, 7); // t1 = 0, t2 = 1, t3 = -1
    J_at(D, 0, 1);
    J_at(D, 4, -1);
    out.push_back(D);
  }
  return out;
}

// The 4-parameter family u_{g1,tau}(a,b,c,d), written on the section basis
// (e7,e3,e4 | e1,e2,e5,e6) and re-indexed to the standard one.
template <class S>
Matrix<S> u_g1tau_element(const S& a, const S& b, const S& c, const S& d) {
  S half = scalar_traits<S>::one() / scalar_traits<S>::from_int(2);
  Matrix<S> blk3(3, 3), blk4(4, 4);
  blk3(0, 1) = c;  blk3(0, 2) = -b;
  blk3(1, 0) = -c; blk3(1, 2) = a;
  blk3(2, 0) = b;  blk3(2, 1) = -a;
  blk4(0, 1) = -d;        blk4(0, 2) = half * b;  blk4(0, 3) = -(half * c);
  blk4(1, 0) = d;         blk4(1, 2) = -(half * c); blk4(1, 3) = -(half * b);
  blk4(2, 0) = -(half * b); blk4(2, 1) = half * c; blk4(2, 3) = d - a;
  blk4(3, 0) = half * c;  blk4(3, 1) = half * b;  blk4(3, 2) = a - d;
  Matrix<S> sec(7, 7);
  sec.set_block(0, 0, blk3);
  sec.set_block(3, 3, blk4);
  return fixtures::section_to_std(sec);
}

template <class S>
std::vector<Matrix<S>> u_g1tau_basis() {
  std::vector<Matrix<S>> out;
  S zero = scalar_traits<S>::zero(), one = scalar_traits<S>::one();
  out.push_back(u_g1tau_element(one, zero, zero, zero));
  out.push_back(u_g1tau_element(zero, one, zero, zero));
  out.push_back(u_g1tau_element(zero, zero, one, zero));
  out.push_back(u_g1tau_element(zero, zero, zero, one));
  return out;
}

// Stabilizer subalgebras of g2 recomputed from the defining conditions
// (theta(D)phi = 0, optionally theta(D)tau = 0, optional invariant subspace),
// as subspaces of gl_7 flattened row-major.
enum class InvariantSubspace { None, H, G1 };

template <class S>
Subspace<S> stabilizer_algebra(bool fix_tau, InvariantSubspace inv, double rank_tol = 1e-8) {
  std::vector<std::vector<S>> rows;
  auto add_theta_rows = [&](const KForm<S>& gamma) {
    int nslots = mindex::binom(7, gamma.degree());
    std::vector<std::vector<S>> block(nslots, std::vector<S>(49, scalar_traits<S>::zero()));
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        Matrix<S> unit(7, 7);
        unit(a, b) = scalar_traits<S>::one();
        KForm<S> th = theta(on_full(unit), gamma);
        for (int s = 0; s < th.size(); ++s)
          if (!scalar_traits<S>::is_zero(th.coeff_slot(s))) block[s][a * 7 + b] += th.coeff_slot(s);
      }
    for (auto& r : block) rows.push_back(std::move(r));
  };
  add_theta_rows(fixtures::phi<S>());
  if (fix_tau) add_theta_rows(fixtures::tau_std<S>());
  auto kill = [&](int i, int j) { // D_{ij} = 0 (0-based)
    std::vector<S> r(49, scalar_traits<S>::zero());
    r[i * 7 + j] = scalar_traits<S>::one();
    rows.push_back(std::move(r));
  };
  if (inv == InvariantSubspace::H) {
    for (int j = 0; j < 6; ++j) kill(6, j);
  } else if (inv == InvariantSubspace::G1) {
    for (int j : {0, 1, 4, 5})
      for (int i : {2, 3, 6}) kill(i, j);
  }
  Matrix<S> A(static_cast<int>(rows.size()), 49);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j < 49; ++j) A(static_cast<int>(r), j) = rows[r][j];
  return Subspace<S>::span(nullspace(A, rank_tol), rank_tol);
}

// ---- symmetry group elements on quadruples ---------------------------------

enum class SymTag { U0, G };

template <class S>
struct SymmetryElement {
  SymTag tag;
  Matrix<S> mat{7, 7}; // 7x7, standard basis
  // U0 block data: h1 = rot(c1,s1) on (e3,e4), h3 = rot(c2,s2) on (e1,e2),
  // h4 = rot(c3,s3) on (e5,e6) with angle sum zero.
  S c1, s1, c2, s2, c3, s3;
};

template <class S>
SymmetryElement<S> u0_element(const S& c1, const S& s1, const S& c2, const S& s2) {
  SymmetryElement<S> e{SymTag::U0};
  e.c1 = c1; e.s1 = s1; e.c2 = c2; e.s2 = s2;
  e.c3 = c1 * c2 - s1 * s2;      // cos(-(t1+t2))
  e.s3 = -(s1 * c2 + c1 * s2);   // sin(-(t1+t2))
  auto rot_at = [&](Matrix<S>& m, int i0, const S& c, const S& s) {
    m(i0, i0) = c;
    m(i0, i0 + 1) = -s;
    m(i0 + 1, i0) = s;
    m(i0 + 1, i0 + 1) = c;
  };
  Matrix<S> h = Matrix<S>::identity(7);
  rot_at(h, 2, c1, s1);
  rot_at(h, 0, c2, s2);
  rot_at(h, 4, e.c3, e.s3);
  e.mat = h;
  return e;
}

template <class S>
SymmetryElement<S> g_element() {
  SymmetryElement<S> e{SymTag::G};
  Matrix<S> sec(7, 7);
  S one = scalar_traits<S>::one();
  sec(0, 0) = -one;
  sec(1, 1) = one;
  sec(2, 2) = -one;
  // 4x4 block on (e1,e2,e5,e6)
  sec(3, 5) = one;
  sec(4, 6) = -one;
  sec(5, 3) = -one;
  sec(6, 4) = one;
  e.mat = fixtures::section_to_std(sec);
  return e;
}

// g~ = Diag(-1,1,-1,1,-1,1,-1) on the section basis; fixes phi, flips tau.
template <class S>
Matrix<S> gtilde_matrix() {
  Matrix<S> sec(7, 7);
  for (int i = 0; i < 7; ++i)
    sec(i, i) = scalar_traits<S>::from_int(i % 2 ? 1 : -1);
  return fixtures::section_to_std(sec);
}

struct GroupActionMismatch : std::runtime_error {
  GroupActionMismatch() : std::runtime_error("group_action: formula and conjugation disagree") {}
};

// Action of a tagged symmetry element on a quadruple, by the block formulas;
// cross-checked against conjugating the bracket and re-reading the blocks.
template <class S>
Quadruple<S> group_action(const SymmetryElement<S>& h, const Quadruple<S>& q, double tol = 1e-9) {
  Quadruple<S> out;
  if (h.tag == SymTag::U0) {
    Matrix<S> h1(2, 2), h2(4, 4);
    h1(0, 0) = h.c1; h1(0, 1) = -h.s1; h1(1, 0) = h.s1; h1(1, 1) = h.c1;
    h2(0, 0) = h.c2; h2(0, 1) = -h.s2; h2(1, 0) = h.s2; h2(1, 1) = h.c2;
    h2(2, 2) = h.c3; h2(2, 3) = -h.s3; h2(3, 2) = h.s3; h2(3, 3) = h.c3;
    const S &x = h.c1, &y = h.s1;
    Matrix<S> h1i = inverse(h1), h2i = inverse(h2);
    out.A1 = h1 * q.A1 * h1i;
    out.A = h2 * q.A * h2i;
    out.B = h2 * ((x * q.B) - (y * q.C)) * h2i;
    out.C = h2 * ((y * q.B) + (x * q.C)) * h2i;
  } else {
    Matrix<S> g1(2, 2), g2(4, 4);
    S one = scalar_traits<S>::one();
    g1(0, 0) = one;
    g1(1, 1) = -one;
    g2(0, 2) = one;
    g2(1, 3) = -one;
    g2(2, 0) = -one;
    g2(3, 1) = one;
    Matrix<S> g1i = inverse(g1), g2i = inverse(g2);
    out.A1 = -(g1 * q.A1 * g1i);
    out.A = -(g2 * q.A * g2i);
    out.B = g2 * q.B * g2i;
    out.C = -(g2 * q.C * g2i);
  }
  Quadruple<S> byconj = quadruple_from_bracket(conjugate_bracket(h.mat, to_bracket(q)), tol);
  bool same = matrix_is_zero(out.A1 - byconj.A1, tol) && matrix_is_zero(out.A - byconj.A, tol) &&
              matrix_is_zero(out.B - byconj.B, tol) && matrix_is_zero(out.C - byconj.C, tol);
  if (!same) throw GroupActionMismatch();
  return out;
}

// ---- linearized ERP system -------------------------------------------------

// Chart coordinates of a tangent bracket (no T_i offsets): blocks must be
// quadruple-shaped with the 4x4 parts in sp(g1,tau).
template <class S>
std::vector<S> tangent_chart(const Bracket<S>& sigma, double tol = 1e-9) {
  Quadruple<S> qb = quadruple_from_bracket(sigma, tol);
  for (const Matrix<S>* m : {&qb.A, &qb.B, &qb.C})
    if (!sp_pattern_holds(*m, tol))
      throw BracketError("tangent bracket leaves the sp-chart");
  std::vector<S> x;
  x.reserve(kChartDim);
  x.push_back(qb.A1(0, 0));
  x.push_back(qb.A1(0, 1));
  x.push_back(qb.A1(1, 0));
  x.push_back(qb.A1(1, 1));
  for (const Matrix<S>* m : {&qb.A, &qb.B, &qb.C})
    for (const S& v : sp_coords(*m)) x.push_back(v);
  return x;
}

// Null space of the linearization (tb1)-(tb5) at q, in the 34-coordinate
// chart (Abar1 in gl2; Abar, Bbar, Cbar in sp(g1,tau)).
template <class S>
Subspace<S> tangent_system(const Quadruple<S>& q, double rank_tol = 1e-8, double tol = 1e-9) {
  StructureVerdict v = check_structure_identities(q, tol);
  if (!v.all_pass()) throw BracketError("tangent_system: quadruple is not ERP");
  const Matrix<S>&A = q.A, &B = q.B, &C = q.C;
  const S a = q.A1(0, 0), b = q.A1(0, 1), c = q.A1(1, 0), d = q.A1(1, 1);
  Matrix<S> M(54, kChartDim);
  for (int k = 0; k < kChartDim; ++k) {
    std::vector<S> dir(kChartDim, scalar_traits<S>::zero());
    dir[k] = scalar_traits<S>::one();
    S ab = dir[0], bb = dir[1], cb = dir[2], db = dir[3];
    std::vector<S> ec(dir.begin() + 4, dir.begin() + 14);
    std::vector<S> fc(dir.begin() + 14, dir.begin() + 24);
    std::vector<S> gc(dir.begin() + 24, dir.begin() + 34);
    Matrix<S> Ab = sp_from_coords(ec), Bb = sp_from_coords(fc), Cb = sp_from_coords(gc);
    Matrix<S> tb2 = comm(Ab, B) + comm(A, Bb) - (ab * B) - (a * Bb) - (cb * C) - (c * Cb);
    Matrix<S> tb3 = comm(Ab, C) + comm(A, Cb) - (bb * B) - (b * Bb) - (db * C) - (d * Cb);
    Matrix<S> tb4 = comm(Bb, C) + comm(B, Cb);
    KForm<S> tb5 = theta(on_g1(Ab.transpose()), fixtures::omega7<S>()) +
                   theta(on_g1(Bb.transpose()), fixtures::omega3<S>()) +
                   theta(on_g1(Cb.transpose()), fixtures::omega4<S>()) +
                   ((ab + db) * fixtures::omega7<S>());
    int r = 0;
    for (const Matrix<S>* m : {&tb2, &tb3, &tb4})
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(r++, k) = (*m)(i, j);
    for (unsigned mask : mindex::masks(2))
      if ((mask & ~0x33u) == 0) M(r++, k) = tb5.coeff_slot(mindex::slot(mask));
  }
  return Subspace<S>::span(nullspace(M, rank_tol), rank_tol);
}

// Tangent space of the symmetry-group orbit through q, in the chart. The
// group is u_{g1,tau} for unimodular quadruples and u_{h,tau} otherwise.
template <class S>
Subspace<S> orbit_tangent(const Quadruple<S>& q, double rank_tol = 1e-8, double tol = 1e-9) {
  bool unimod = scalar_is_zero_tol(q.A1.trace(), tol);
  std::vector<Matrix<S>> basis = unimod ? u_g1tau_basis<S>() : u_htau_basis<S>();
  Bracket<S> mu = to_bracket(q);
  Matrix<S> rows(static_cast<int>(basis.size()), kChartDim);
  for (size_t i = 0; i < basis.size(); ++i) {
    auto chart = tangent_chart(infinitesimal_action(basis[i], mu), tol);
    for (int j = 0; j < kChartDim; ++j) rows(static_cast<int>(i), j) = chart[j];
  }
  return Subspace<S>::span(rows, rank_tol);
}

// D_mu: block-diagonal derivations vanishing at e7 and lying in su(3),
// embedded as chart vectors (D1, D2, 0, 0).
template <class S>
Subspace<S> linear_deformation_space(const Quadruple<S>& q, double rank_tol = 1e-8,
                                     double tol = 1e-9) {
  Bracket<S> mu = to_bracket(q);
  DerivationConstraints cons;
  cons.block_diag = true;
  cons.su3 = true;
  Subspace<S> ders = derivations(mu, cons, rank_tol);
  Matrix<S> rows(ders.dim(), kChartDim);
  for (int r = 0; r < ders.dim(); ++r) {
    Matrix<S> D(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) D(i, j) = ders.basis()(r, i * 7 + j);
    Matrix<S> D1 = D.block(2, 2, 2, 2);
    Matrix<S> D2(4, 4);
    const std::vector<int>& g1 = fixtures::g1_indices();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) D2(i, j) = D(g1[i] - 1, g1[j] - 1);
    if (!sp_pattern_holds(D2, tol))
      throw BracketError("linear_deformation_space: derivation block leaves sp(g1,tau)");
    rows(r, 0) = D1(0, 0);
    rows(r, 1) = D1(0, 1);
    rows(r, 2) = D1(1, 0);
    rows(r, 3) = D1(1, 1);
    auto coords = sp_coords(D2);
    for (int j = 0; j < 10; ++j) rows(r, 4 + j) = coords[j];
  }
  return Subspace<S>::span(rows, rank_tol);
}

struct TangentReport {
  int dim_tangent = 0;     // null space of (tb1)-(tb5)
  int dim_orbit = 0;       // u . mu
  int dim_lindef = 0;      // D_mu
  int dim_sum = 0;         // D_mu + u . mu
  bool unimodular = false;
  bool equivariantly_rigid = false; // u.mu == Tbar
  bool rigid = false;               // D_mu + u.mu == Tbar
};

template <class S>
TangentReport rigidity(const Quadruple<S>& q, double rank_tol = 1e-8, double tol = 1e-9) {
  TangentReport rep;
  Subspace<S> tbar = tangent_system(q, rank_tol, tol);
  Subspace<S> orb = orbit_tangent(q, rank_tol, tol);
  Subspace<S> lin = linear_deformation_space(q, rank_tol, tol);
  Subspace<S> sum = Subspace<S>::sum(orb, lin, rank_tol);
  rep.dim_tangent = tbar.dim();
  rep.dim_orbit = orb.dim();
  rep.dim_lindef = lin.dim();
  rep.dim_sum = sum.dim();
  rep.unimodular = scalar_is_zero_tol(q.A1.trace(), tol);
  rep.equivariantly_rigid = tbar.equals(orb, rank_tol);
  rep.rigid = tbar.equals(sum, rank_tol);
  return rep;
}

} // namespace erpg2
