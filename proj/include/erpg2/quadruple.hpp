#pragma once

#include "erpg2/bracket.hpp"

namespace erpg2 {

// ERP normal form data: A1 = ad e7 |_{h1} (2x2 on e3,e4), and
// A = ad e7 |_{g1}, B = ad e3 |_{g1}, C = ad e4 |_{g1} (4x4 on e1,e2,e5,e6).
template <class S>
struct Quadruple {
  Matrix<S> A1{2, 2};
  Matrix<S> A{4, 4};
  Matrix<S> B{4, 4};
  Matrix<S> C{4, 4};

  S trace_A1() const { return A1.trace(); }
};

template <class S>
Quadruple<S> quadruple_cast_from_exact(const Quadruple<Exact>& q) {
  return Quadruple<S>{matrix_cast_from_exact<S>(q.A1), matrix_cast_from_exact<S>(q.A),
                      matrix_cast_from_exact<S>(q.B), matrix_cast_from_exact<S>(q.C)};
}

// sp(g1,tau) = {E : theta(E)tau = 0}: the 10-parameter pattern
//   [ E11  E12  E15  E16 ]
//   [ E21 -E11  E25  E26 ]
//   [ E26 -E16  E55  E56 ]
//   [-E25  E15  E65 -E55 ]
// with free coordinates ordered row-major:
//   (E11,E12,E15,E16,E21,E25,E26,E55,E56,E65).
template <class S>
Matrix<S> sp_from_coords(const std::vector<S>& p) {
  assert(p.size() == 10);
  Matrix<S> E(4, 4);
  const S &E11 = p[0], &E12 = p[1], &E15 = p[2], &E16 = p[3], &E21 = p[4], &E25 = p[5],
          &E26 = p[6], &E55 = p[7], &E56 = p[8], &E65 = p[9];
  E(0, 0) = E11;  E(0, 1) = E12;  E(0, 2) = E15;  E(0, 3) = E16;
  E(1, 0) = E21;  E(1, 1) = -E11; E(1, 2) = E25;  E(1, 3) = E26;
  E(2, 0) = E26;  E(2, 1) = -E16; E(2, 2) = E55;  E(2, 3) = E56;
  E(3, 0) = -E25; E(3, 1) = E15;  E(3, 2) = E65;  E(3, 3) = -E55;
  return E;
}

template <class S>
bool sp_pattern_holds(const Matrix<S>& E, double tol = 1e-9) {
  auto zero = [&](const S& v) {
    if constexpr (scalar_traits<S>::exact)
      return v.is_zero();
    else
      return std::fabs(v) <= tol;
  };
  return zero(E(1, 1) + E(0, 0)) && zero(E(2, 0) - E(1, 3)) && zero(E(2, 1) + E(0, 3)) &&
         zero(E(3, 0) + E(1, 2)) && zero(E(3, 1) - E(0, 2)) && zero(E(3, 3) + E(2, 2));
}

template <class S>
std::vector<S> sp_coords(const Matrix<S>& E) {
  return {E(0, 0), E(0, 1), E(0, 2), E(0, 3), E(1, 0), E(1, 2), E(1, 3), E(2, 2), E(2, 3), E(3, 2)};
}

// Membership in sp(g1,tau), computed both as theta(E)tau = 0 and as the
// pattern match; the two characterizations must agree.
template <class S>
bool sp_membership(const Matrix<S>& E, double tol = 1e-9) {
  KForm<S> th = theta(on_g1(E), fixtures::tau_std<S>());
  bool by_theta;
  if constexpr (scalar_traits<S>::exact)
    by_theta = th.is_zero();
  else
    by_theta = th.max_abs() <= tol;
  bool by_pattern = sp_pattern_holds(E, tol);
  if (by_theta != by_pattern) throw BracketError("sp_membership: characterizations disagree");
  return by_theta;
}

// Nonzero structure constants of the quadruple bracket:
// ad e7 = diag(A1, A), ad e3|g1 = B, ad e4|g1 = C; everything else zero.
template <class S>
Bracket<S> to_bracket(const Quadruple<S>& q) {
  Bracket<S> mu;
  const std::vector<int>& g1 = fixtures::g1_indices();
  const std::vector<int>& h1 = fixtures::h1_indices();
  for (int cj = 0; cj < 2; ++cj)
    for (int ci = 0; ci < 2; ++ci)
      if (!scalar_traits<S>::is_zero(q.A1(ci, cj))) mu.set_c(7, h1[cj], h1[ci], q.A1(ci, cj));
  for (int cj = 0; cj < 4; ++cj)
    for (int ci = 0; ci < 4; ++ci) {
      if (!scalar_traits<S>::is_zero(q.A(ci, cj))) mu.set_c(7, g1[cj], g1[ci], q.A(ci, cj));
      if (!scalar_traits<S>::is_zero(q.B(ci, cj))) mu.set_c(3, g1[cj], g1[ci], q.B(ci, cj));
      if (!scalar_traits<S>::is_zero(q.C(ci, cj))) mu.set_c(4, g1[cj], g1[ci], q.C(ci, cj));
    }
  return mu;
}

// Inverse of to_bracket; throws when the bracket is not quadruple-shaped.
template <class S>
Quadruple<S> quadruple_from_bracket(const Bracket<S>& mu, double tol = 1e-9) {
  auto zero = [&](const S& v) {
    if constexpr (scalar_traits<S>::exact)
      return v.is_zero();
    else
      return std::fabs(v) <= tol;
  };
  auto g1pos = [](int i) -> int {
    switch (i) {
      case 1: return 0;
      case 2: return 1;
      case 5: return 2;
      case 6: return 3;
    }
    return -1;
  };
  Quadruple<S> q;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      auto v = mu.apply(i, j);
      for (int k = 1; k <= 7; ++k) {
        if (zero(v[k - 1])) continue;
        bool ih1 = (i == 3 || i == 4), jg1 = g1pos(j) >= 0, ig1 = g1pos(i) >= 0;
        if (j == 7 && ih1 && (k == 3 || k == 4))
          q.A1(k - 3, i - 3) = -v[k - 1];
        else if (j == 7 && ig1 && g1pos(k) >= 0)
          q.A(g1pos(k), g1pos(i)) = -v[k - 1];
        else if (i == 3 && jg1 && g1pos(k) >= 0)
          q.B(g1pos(k), g1pos(j)) = v[k - 1];
        else if (i == 4 && jg1 && g1pos(k) >= 0)
          q.C(g1pos(k), g1pos(j)) = v[k - 1];
        else if (ig1 && j == 3 && g1pos(k) >= 0)
          q.B(g1pos(k), g1pos(i)) = -v[k - 1];
        else if (ig1 && j == 4 && g1pos(k) >= 0)
          q.C(g1pos(k), g1pos(i)) = -v[k - 1];
        else
          throw BracketError("bracket is not quadruple-shaped at (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
  return q;
}

// The 34-coordinate chart (a,b,c,d | E | F | G), E = A - T7, F = B - T3,
// G = C - T4 in sp coordinates. All subspace comparisons downstream use it.
inline constexpr int kChartDim = 34;

template <class S>
std::vector<S> quad_to_chart(const Quadruple<S>& q, double tol = 1e-9) {
  Matrix<S> E = q.A - matrix_cast_from_exact<S>(fixtures::T7<Exact>().mat);
  Matrix<S> F = q.B - matrix_cast_from_exact<S>(fixtures::T3<Exact>().mat);
  Matrix<S> G = q.C - matrix_cast_from_exact<S>(fixtures::T4<Exact>().mat);
  for (const auto* m : {&E, &F, &G})
    if (!sp_pattern_holds(*m, tol)) throw BracketError("quadruple is not chart-shaped (E,F,G not in sp)");
  std::vector<S> x;
  x.reserve(kChartDim);
  x.push_back(q.A1(0, 0));
  x.push_back(q.A1(0, 1));
  x.push_back(q.A1(1, 0));
  x.push_back(q.A1(1, 1));
  for (const auto* m : {&E, &F, &G})
    for (const S& v : sp_coords(*m)) x.push_back(v);
  return x;
}

template <class S>
Quadruple<S> chart_to_quad(const std::vector<S>& x) {
  assert(x.size() == kChartDim);
  Quadruple<S> q;
  q.A1(0, 0) = x[0];
  q.A1(0, 1) = x[1];
  q.A1(1, 0) = x[2];
  q.A1(1, 1) = x[3];
  std::vector<S> e(x.begin() + 4, x.begin() + 14);
  std::vector<S> f(x.begin() + 14, x.begin() + 24);
  std::vector<S> g(x.begin() + 24, x.begin() + 34);
  q.A = sp_from_coords(e) + matrix_cast_from_exact<S>(fixtures::T7<Exact>().mat);
  q.B = sp_from_coords(f) + matrix_cast_from_exact<S>(fixtures::T3<Exact>().mat);
  q.C = sp_from_coords(g) + matrix_cast_from_exact<S>(fixtures::T4<Exact>().mat);
  return q;
}

template <class S>
Matrix<S> sym_part(const Matrix<S>& m) {
  S half = scalar_traits<S>::one() / scalar_traits<S>::from_int(2);
  return half * (m + m.transpose());
}
template <class S>
Matrix<S> comm(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

// Structure-condition battery of the ERP theorem: sp-membership, the
// linear condition (ii), the Jacobi identities, the closedness identities,
// and the four Ricci constraints.
struct StructureVerdict {
  bool sp_E = false, sp_F = false, sp_G = false;
  bool cond_ii = false;
  bool jac_AB = false, jac_AC = false, jac_BC = false;
  bool clo_1 = false, clo_2 = false, clo_3 = false;
  bool ricci_i = false, ricci_ii = false, ricci_iii = false, ricci_iv = false;
  int nilradical_dim = 0; // 0 = undetermined
  std::string nilradical_verdict;
  bool g2core_erp = false;     // independent cross-check
  bool consistent = false;     // all_pass() == g2core_erp
  bool all_pass() const {
    return sp_E && sp_F && sp_G && cond_ii && jac_AB && jac_AC && jac_BC && clo_1 && clo_2 &&
           clo_3 && ricci_i && ricci_ii && ricci_iii && ricci_iv;
  }
};

template <class S>
bool form_is_zero(const KForm<S>& f, double tol) {
  if constexpr (scalar_traits<S>::exact)
    return f.is_zero();
  else
    return f.max_abs() <= tol;
}
template <class S>
bool matrix_is_zero(const Matrix<S>& m, double tol) {
  if constexpr (scalar_traits<S>::exact)
    return m.is_zero();
  else
    return m.max_abs() <= tol;
}
template <class S>
bool scalar_is_zero_tol(const S& v, double tol) {
  if constexpr (scalar_traits<S>::exact)
    return v.is_zero();
  else
    return std::fabs(v) <= tol;
}

template <class S>
StructureVerdict check_structure_identities(const Quadruple<S>& q, double tol = 1e-9) {
  using fixtures::omega3;
  using fixtures::omega3_bar;
  using fixtures::omega4;
  using fixtures::omega7;
  StructureVerdict v;
  Matrix<S> E = q.A - matrix_cast_from_exact<S>(fixtures::T7<Exact>().mat);
  Matrix<S> F = q.B - matrix_cast_from_exact<S>(fixtures::T3<Exact>().mat);
  Matrix<S> G = q.C - matrix_cast_from_exact<S>(fixtures::T4<Exact>().mat);
  v.sp_E = sp_membership(E, tol);
  v.sp_F = sp_membership(F, tol);
  v.sp_G = sp_membership(G, tol);

  const S a = q.A1(0, 0), b = q.A1(0, 1), c = q.A1(1, 0), d = q.A1(1, 1);
  auto th = [&](const Matrix<S>& M, const KForm<S>& f) { return theta(on_g1(M), f); };

  KForm<S> ii = th(E.transpose(), omega7<S>()) + th(F.transpose(), omega3<S>()) +
                th(G.transpose(), omega4<S>()) + ((a + d) * omega7<S>());
  v.cond_ii = form_is_zero(ii, tol);

  v.jac_AB = matrix_is_zero(comm(q.A, q.B) - (a * q.B) - (c * q.C), tol);
  v.jac_AC = matrix_is_zero(comm(q.A, q.C) - (b * q.B) - (d * q.C), tol);
  v.jac_BC = matrix_is_zero(comm(q.B, q.C), tol);

  S third = scalar_traits<S>::one() / scalar_traits<S>::from_int(3);
  KForm<S> c1 = th(F, omega7<S>()) + (a * omega3<S>()) + (c * omega4<S>()) - th(E, omega3<S>()) +
                third * omega3_bar<S>();
  KForm<S> c2 = th(G, omega7<S>()) + (b * omega3<S>()) + (d * omega4<S>()) - th(E, omega4<S>());
  KForm<S> c3 = th(F, omega4<S>()) - th(G, omega3<S>());
  v.clo_1 = form_is_zero(c1, tol);
  v.clo_2 = form_is_zero(c2, tol);
  v.clo_3 = form_is_zero(c3, tol);

  Matrix<S> SA1 = sym_part(q.A1), SA = sym_part(q.A), SB = sym_part(q.B), SC = sym_part(q.C);
  S tr_aim = (SA1 * SA1).trace() + (SA * SA).trace() - third;
  v.ricci_i = scalar_is_zero_tol(tr_aim, tol);
  S half = scalar_traits<S>::one() / scalar_traits<S>::from_int(2);
  Matrix<S> rii = half * (comm(q.A, q.A.transpose()) + comm(q.B, q.B.transpose()) +
                          comm(q.C, q.C.transpose())) -
                  (q.A1.trace() * SA);
  v.ricci_ii = matrix_is_zero(rii, tol);
  v.ricci_iii = scalar_is_zero_tol((SA * SB).trace(), tol) && scalar_is_zero_tol((SA * SC).trace(), tol);
  Matrix<S> riv(2, 2);
  riv(0, 0) = (SB * SB).trace() - third;
  riv(0, 1) = riv(1, 0) = (SB * SC).trace();
  riv(1, 1) = (SC * SC).trace() - third;
  riv = riv - (half * comm(q.A1, q.A1.transpose())) + (q.A1.trace() * SA1);
  v.ricci_iv = matrix_is_zero(riv, tol);
  return v;
}

} // namespace erpg2
