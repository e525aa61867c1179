#pragma once

#include "erpg2/kform.hpp"

namespace erpg2 {

// The named forms of the fixed G2 frame:
//   phi  = e^127 + e^347 + e^567 + e^135 - e^146 - e^236 - e^245
//        = omega ^ e^7 + rho_plus = omega3^e^3 + omega4^e^4 + omega7^e^7 + e^347
// together with the 2-forms omega_i, their bars, and tau = e^12 - e^56.
namespace fixtures {

template <class S>
KForm<S> from_terms(int degree, std::initializer_list<std::pair<std::initializer_list<int>, int>> terms) {
  KForm<S> f(degree);
  for (const auto& [idx, c] : terms) f.add_term(idx, scalar_traits<S>::from_int(c));
  return f;
}

template <class S>
const KForm<S>& phi() {
  static const KForm<S> f = from_terms<S>(3, {{{1, 2, 7}, 1}, {{3, 4, 7}, 1}, {{5, 6, 7}, 1},
                                              {{1, 3, 5}, 1}, {{1, 4, 6}, -1}, {{2, 3, 6}, -1},
                                              {{2, 4, 5}, -1}});
  return f;
}

// *phi as printed in the source frame: e^3456+e^1256+e^1234-e^2467+e^2357+e^1457+e^1367
template <class S>
const KForm<S>& star_phi() {
  static const KForm<S> f = from_terms<S>(4, {{{3, 4, 5, 6}, 1}, {{1, 2, 5, 6}, 1}, {{1, 2, 3, 4}, 1},
                                              {{2, 4, 6, 7}, -1}, {{2, 3, 5, 7}, 1}, {{1, 4, 5, 7}, 1},
                                              {{1, 3, 6, 7}, 1}});
  return f;
}

template <class S>
const KForm<S>& omega() {
  static const KForm<S> f = from_terms<S>(2, {{{1, 2}, 1}, {{3, 4}, 1}, {{5, 6}, 1}});
  return f;
}
template <class S>
const KForm<S>& rho_plus() {
  static const KForm<S> f =
      from_terms<S>(3, {{{1, 3, 5}, 1}, {{1, 4, 6}, -1}, {{2, 3, 6}, -1}, {{2, 4, 5}, -1}});
  return f;
}
template <class S>
const KForm<S>& rho_minus() {
  static const KForm<S> f =
      from_terms<S>(3, {{{1, 4, 5}, 1}, {{1, 3, 6}, 1}, {{2, 3, 5}, 1}, {{2, 4, 6}, -1}});
  return f;
}
template <class S>
const KForm<S>& omega7() {
  static const KForm<S> f = from_terms<S>(2, {{{1, 2}, 1}, {{5, 6}, 1}});
  return f;
}
template <class S>
const KForm<S>& omega3() {
  static const KForm<S> f = from_terms<S>(2, {{{2, 6}, 1}, {{1, 5}, -1}});
  return f;
}
template <class S>
const KForm<S>& omega4() {
  static const KForm<S> f = from_terms<S>(2, {{{1, 6}, 1}, {{2, 5}, 1}});
  return f;
}
template <class S>
const KForm<S>& omega3_bar() {
  static const KForm<S> f = from_terms<S>(2, {{{2, 6}, 1}, {{1, 5}, 1}});
  return f;
}
template <class S>
const KForm<S>& omega4_bar() {
  static const KForm<S> f = from_terms<S>(2, {{{1, 6}, 1}, {{2, 5}, -1}});
  return f;
}
template <class S>
const KForm<S>& tau_std() {
  static const KForm<S> f = from_terms<S>(2, {{{1, 2}, 1}, {{5, 6}, -1}});
  return f;
}
template <class S>
const KForm<S>& vol7() {
  static const KForm<S> f = from_terms<S>(7, {{{1, 2, 3, 4, 5, 6, 7}, 1}});
  return f;
}

// T_7, T_3, T_4 of the structure theorem, on the ordered basis (e1,e2,e5,e6):
// theta(T_7)tau = 1/3 omega7, theta(T_3)tau = 1/3 omega3, theta(T_4)tau = 1/3 omega4.
template <class S>
Matrix<S> third(std::initializer_list<std::pair<std::pair<int, int>, int>> entries) {
  Matrix<Exact> m(4, 4);
  Exact t = Exact::rational(1, 3);
  for (const auto& [rc, s] : entries) m(rc.first, rc.second) = (s > 0) ? t : -t;
  return matrix_cast_from_exact<S>(m);
}

template <class S>
const IndexedEndo<S>& T7() {
  static const IndexedEndo<S> e = on_g1(third<S>({{{0, 0}, -1}, {{2, 2}, +1}}));
  return e;
}
template <class S>
const IndexedEndo<S>& T3() {
  static const IndexedEndo<S> e = on_g1(third<S>({{{0, 3}, +1}, {{3, 0}, +1}}));
  return e;
}
template <class S>
const IndexedEndo<S>& T4() {
  static const IndexedEndo<S> e = on_g1(third<S>({{{1, 3}, -1}, {{3, 1}, -1}}));
  return e;
}

inline const std::vector<int>& g1_indices() {
  static const std::vector<int> v = {1, 2, 5, 6};
  return v;
}
inline const std::vector<int>& h1_indices() {
  static const std::vector<int> v = {3, 4};
  return v;
}
inline const std::vector<int>& h_indices() {
  static const std::vector<int> v = {1, 2, 3, 4, 5, 6};
  return v;
}
// Matrices of Section "subgroups of G2" are written on this ordered basis.
inline const std::vector<int>& section_basis() {
  static const std::vector<int> v = {7, 3, 4, 1, 2, 5, 6};
  return v;
}

// Re-index a matrix written on section_basis() into standard e1..e7 order.
template <class S>
Matrix<S> section_to_std(const Matrix<S>& m) {
  const auto& sec = section_basis();
  Matrix<S> r(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r(sec[i] - 1, sec[j] - 1) = m(i, j);
  return r;
}

// The orthogonal map carrying the catalog J structure to its alternative
// presentation; lies in G2 (fixes phi), standard basis order.
Matrix<Exact> equivalence_witness_J();

} // namespace fixtures

// Orthogonal split of a 2-form into its 7- and 14-dimensional pieces, through
// the equivariant map L(a) = *(a ^ phi) with spectrum {2 on L7, -1 on L14}.
template <class S>
std::pair<KForm<S>, KForm<S>> project_2forms(const KForm<S>& a) {
  if (a.degree() != 2) throw FormError("project_2forms: need a 2-form");
  KForm<S> L = star7(wedge(a, fixtures::phi<S>()));
  S third = scalar_traits<S>::one() / scalar_traits<S>::from_int(3);
  KForm<S> p7 = third * (L + a);
  KForm<S> p14 = third * ((scalar_traits<S>::from_int(2) * a) - L);
  return {p7, p14};
}

} // namespace erpg2
