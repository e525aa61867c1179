#pragma once

#include "erpg2/quadruple.hpp"

#include <Eigen/Cholesky>

namespace erpg2 {

struct NotPositive : std::runtime_error {
  NotPositive() : std::runtime_error("3-form is not positive") {}
};
struct ExactUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A positive 3-form with its induced metric, volume normalization and an
// oriented g-orthonormal frame (columns of `frame`).
template <class S>
struct G2Structure {
  KForm<S> phi{3};
  Matrix<S> metric{7, 7};
  S vol_coeff = scalar_traits<S>::zero(); // vol = vol_coeff * e^{1..7}
  Matrix<S> frame{7, 7};
  Matrix<S> frame_inv{7, 7};
  bool standard = false; // metric == I, star == star7

  static G2Structure standard_structure() {
    G2Structure s;
    s.phi = fixtures::phi<S>();
    s.metric = Matrix<S>::identity(7);
    s.vol_coeff = scalar_traits<S>::one();
    s.frame = Matrix<S>::identity(7);
    s.frame_inv = Matrix<S>::identity(7);
    s.standard = true;
    return s;
  }
};

// B_ij e^{1..7} = 1/6 i_{e_i}(phi) ^ i_{e_j}(phi) ^ phi
template <class S>
Matrix<S> metric_prenormalized(const KForm<S>& phi) {
  Matrix<S> B(7, 7);
  S sixth = scalar_traits<S>::one() / scalar_traits<S>::from_int(6);
  std::array<KForm<S>, 7> iphi;
  for (int i = 1; i <= 7; ++i) iphi[i - 1] = interior(i, phi);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      KForm<S> top = wedge(wedge(iphi[i], iphi[j]), phi);
      B(i, j) = B(j, i) = sixth * top.coeff_slot(0);
    }
  return B;
}

template <class S>
bool positive_definite(const Matrix<S>& B, double tol = 1e-12) {
  for (int k = 1; k <= B.rows(); ++k) {
    S minor = det(B.block(0, 0, k, k));
    if constexpr (scalar_traits<S>::exact) {
      if (minor.sign() <= 0) return false;
    } else {
      if (minor <= tol) return false;
    }
  }
  return true;
}

// Metric, volume and orthonormalizing frame of a positive 3-form. The
// generic det^{1/9} normalization leaves Q(sqrt2,sqrt3,sqrt5); the exact
// backend therefore only accepts forms inducing the standard metric.
template <class S>
G2Structure<S> induce_metric(const KForm<S>& phi) {
  if (phi.degree() != 3) throw FormError("induce_metric: need a 3-form");
  Matrix<S> B = metric_prenormalized(phi);
  if (!positive_definite(B)) throw NotPositive();
  G2Structure<S> s;
  s.phi = phi;
  if constexpr (scalar_traits<S>::exact) {
    if (!(B == Matrix<S>::identity(7)))
      throw ExactUnsupported("induce_metric: non-standard metric needs the float backend (det^{1/9})");
    s.metric = B;
    s.vol_coeff = scalar_traits<S>::one();
    s.frame = Matrix<S>::identity(7);
    s.frame_inv = Matrix<S>::identity(7);
    s.standard = true;
  } else {
    double detB = det(B);
    double scale = std::pow(detB, -1.0 / 9.0);
    Matrix<S> g = scale * B;
    s.metric = g;
    s.vol_coeff = std::pow(detB, 1.0 / 9.0); // sqrt(det g)
    Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(g));
    if (llt.info() != Eigen::Success) throw NotPositive();
    Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd h = L.transpose().inverse();
    s.frame = from_eigen(h);
    s.frame_inv = from_eigen(h.inverse());
    s.standard = false;
  }
  return s;
}

// Hodge star of the induced metric: transport to the orthonormal frame,
// star there, transport back.
template <class S>
KForm<S> star_g(const G2Structure<S>& s, const KForm<S>& a) {
  if (s.standard) return star7(a);
  return pullback(s.frame_inv, star7(pullback(s.frame, a)));
}

template <class S>
S inner_g(const G2Structure<S>& s, const KForm<S>& a, const KForm<S>& b) {
  KForm<S> pa = s.standard ? a : pullback(s.frame, a);
  KForm<S> pb = s.standard ? b : pullback(s.frame, b);
  S acc = scalar_traits<S>::zero();
  for (int i = 0; i < pa.size(); ++i) acc += pa.coeff_slot(i) * pb.coeff_slot(i);
  return acc;
}

template <class S>
struct TorsionReport {
  bool closed = false;
  KForm<S> tau{2};
  S tau_norm_sq = scalar_traits<S>::zero();
  bool torsion_free = false;
  bool erp = false;
  double closed_residual = 0.0;
  double erp_residual = 0.0;
  // When mu splits as lambda + mu_A against the standard structure, the
  // Prop-3.2 route tau_lambda + tau_A is computed as a cross-check.
  bool split_checked = false;
  bool split_consistent = false;
};

// tau_lambda + tau_A of the split torsion formula:
// tau_lambda = -*_h(d_lambda omega ^ omega) ^ e^7 - *_h d_lambda rho^-,
// tau_A = (tr A) omega + theta(A^t) omega.
template <class S>
KForm<S> torsion_split_route(const SplitBracket<S>& sp) {
  const KForm<S>& om = fixtures::omega<S>();
  KForm<S> e7(1);
  e7.add_term({7}, scalar_traits<S>::one());
  KForm<S> t_lam = -wedge(star6(wedge(d_mu(sp.lambda, om), om)), e7) -
                   star6(d_mu(sp.lambda, fixtures::rho_minus<S>()));
  KForm<S> t_A = (sp.A.trace() * om) + theta(on_h(sp.A.transpose()), om);
  return t_lam + t_A;
}

template <class S>
TorsionReport<S> torsion(const Bracket<S>& mu, const G2Structure<S>& s, double tol = 1e-9) {
  TorsionReport<S> rep;
  KForm<S> dphi = d_mu(mu, s.phi);
  rep.closed_residual = dphi.max_abs();
  rep.closed = form_is_zero(dphi, tol);
  if (!rep.closed) return rep;
  rep.tau = -star_g(s, d_mu(mu, star_g(s, s.phi)));
  rep.tau_norm_sq = inner_g(s, rep.tau, rep.tau);
  rep.torsion_free = form_is_zero(rep.tau, tol);
  // ERP in cleared form: 6 d tau = |tau|^2 phi + *(tau ^ tau)
  KForm<S> resid = (scalar_traits<S>::from_int(6) * d_mu(mu, rep.tau)) -
                   (rep.tau_norm_sq * s.phi) - star_g(s, wedge(rep.tau, rep.tau));
  rep.erp_residual = resid.max_abs();
  rep.erp = !rep.torsion_free && form_is_zero(resid, tol);
  if (s.standard && has_h_ideal(mu, tol)) {
    rep.split_checked = true;
    KForm<S> other = torsion_split_route(split_lambda_A(mu, tol));
    rep.split_consistent = form_is_zero(other - rep.tau, tol);
  }
  return rep;
}

template <class S>
TorsionReport<S> torsion(const Bracket<S>& mu, double tol = 1e-9) {
  return torsion(mu, G2Structure<S>::standard_structure(), tol);
}

// The unique symmetric Q with theta(Q)phi = d_mu tau (standard structure),
// solved on the 28-dim space of symmetric matrices.
template <class S>
Matrix<S> solve_Q(const Bracket<S>& mu, double tol = 1e-9) {
  TorsionReport<S> rep = torsion(mu, tol);
  if (!rep.closed) throw BracketError("solve_Q: structure is not closed");
  KForm<S> rhs = d_mu(mu, rep.tau);
  // columns: theta(S_ab) phi over the symmetric basis ordered (a<=b)
  Matrix<S> M(35, 28);
  int col = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a; b < 7; ++b) {
      Matrix<S> u(7, 7);
      u(a, b) = scalar_traits<S>::one();
      u(b, a) = scalar_traits<S>::one();
      KForm<S> th = theta(on_full(u), fixtures::phi<S>());
      for (int sl = 0; sl < 35; ++sl) M(sl, col) = th.coeff_slot(sl);
      ++col;
    }
  std::vector<S> b35(35);
  for (int sl = 0; sl < 35; ++sl) b35[sl] = rhs.coeff_slot(sl);
  auto x = solve_linear(M, b35, tol);
  if (!x) throw BracketError("solve_Q: d_mu tau is not in theta(sym) phi");
  Matrix<S> Q(7, 7);
  col = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a; b < 7; ++b) {
      Q(a, b) = (*x)[col];
      Q(b, a) = (*x)[col];
      ++col;
    }
  return Q;
}

template <class S>
struct BryantReport {
  S scal_sq = scalar_traits<S>::zero();
  S three_ric_sq = scalar_traits<S>::zero();
  bool equal = false;
};

// Pointwise Bryant pinching quantities: scal^2 vs 3|Ric|^2; ERP structures
// realize equality.
template <class S>
BryantReport<S> bryant_equality(const Bracket<S>& mu, double tol = 1e-9) {
  Matrix<S> ric = ricci(mu);
  S scal = ric.trace();
  S ric2 = (ric * ric.transpose()).trace();
  BryantReport<S> rep;
  rep.scal_sq = scal * scal;
  rep.three_ric_sq = scalar_traits<S>::from_int(3) * ric2;
  rep.equal = scalar_is_zero_tol<S>(rep.scal_sq - rep.three_ric_sq, tol);
  return rep;
}

// ERP Laplacian-flow line phi(t) = phi + c(t) d tau, c = 6/|tau|^2 (e^{|tau|^2 t/6}-1).
// Float backend: the rescaled metric leaves the exact field.
struct FlowSample {
  double t = 0;
  double c = 0;
  G2Structure<double> structure;
  TorsionReport<double> report;
};

inline FlowSample erp_flow(const Bracket<double>& mu, double t, double tol = 1e-8) {
  TorsionReport<double> base = torsion(mu, tol);
  if (!base.erp) throw BracketError("erp_flow: initial structure is not ERP");
  double n2 = base.tau_norm_sq;
  double c = 6.0 / n2 * (std::exp(n2 * t / 6.0) - 1.0);
  KForm<double> phit = fixtures::phi<double>() + (c * d_mu(mu, base.tau));
  FlowSample samp;
  samp.t = t;
  samp.c = c;
  samp.structure = induce_metric(phit); // throws NotPositive if eternality failed
  samp.report = torsion(mu, samp.structure, tol);
  return samp;
}

template <class S>
struct ErpDiagnostics {
  bool tau3_zero = false;       // tau^tau^tau = 0
  bool d_tautau_zero = false;   // d(tau^tau) = 0
  bool d_star_tautau_zero = false;
  Subspace<S> P;                // ker iota(tau^tau), expect dim 3
  Subspace<S> Q;                // ker iota *(tau^tau), expect dim 4
  bool ric_P = false;           // Ric|_P = -1/6 |tau|^2 I
  bool ric_Q = false;           // Ric|_Q = 0
  bool ric_PQ = false;          // <Ric P, Q> = 0
};

template <class S>
Subspace<S> interior_kernel(const KForm<S>& form, double rank_tol = 1e-8) {
  int out_dim = mindex::binom(7, form.degree() - 1);
  Matrix<S> M(out_dim, 7);
  for (int i = 1; i <= 7; ++i) {
    KForm<S> c = interior(i, form);
    for (int sl = 0; sl < out_dim; ++sl) M(sl, i - 1) = c.coeff_slot(sl);
  }
  return Subspace<S>::span(nullspace(M, rank_tol), rank_tol);
}

template <class S>
ErpDiagnostics<S> erp_diagnostics(const Bracket<S>& mu, double tol = 1e-9, double rank_tol = 1e-8) {
  TorsionReport<S> rep = torsion(mu, tol);
  if (!rep.erp) throw BracketError("erp_diagnostics: structure is not ERP");
  ErpDiagnostics<S> diag;
  KForm<S> tt = wedge(rep.tau, rep.tau);
  KForm<S> stt = star7(tt);
  diag.tau3_zero = form_is_zero(wedge(tt, rep.tau), tol);
  diag.d_tautau_zero = form_is_zero(d_mu(mu, tt), tol);
  diag.d_star_tautau_zero = form_is_zero(d_mu(mu, stt), tol);
  diag.P = interior_kernel(tt, rank_tol);
  diag.Q = interior_kernel(stt, rank_tol);
  Matrix<S> ric = ricci(mu);
  S lam = scalar_traits<S>::one() / scalar_traits<S>::from_int(6) * rep.tau_norm_sq;
  auto on_subspace = [&](const Subspace<S>& sub, const S& eigen) {
    // Ric v = eigen * v for all v in sub
    for (int r = 0; r < sub.dim(); ++r) {
      for (int i = 0; i < 7; ++i) {
        S acc = scalar_traits<S>::zero();
        for (int j = 0; j < 7; ++j) acc += ric(i, j) * sub.basis()(r, j);
        acc -= eigen * sub.basis()(r, i);
        if (!scalar_is_zero_tol(acc, tol)) return false;
      }
    }
    return true;
  };
  diag.ric_P = on_subspace(diag.P, -lam);
  diag.ric_Q = on_subspace(diag.Q, scalar_traits<S>::zero());
  bool cross = true;
  for (int r = 0; r < diag.P.dim(); ++r)
    for (int q = 0; q < diag.Q.dim(); ++q) {
      S acc = scalar_traits<S>::zero();
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) acc += diag.P.basis()(r, i) * ric(i, j) * diag.Q.basis()(q, j);
      if (!scalar_is_zero_tol(acc, tol)) cross = false;
    }
  diag.ric_PQ = cross;
  return diag;
}

// Full ERP verdict used as the independent cross-check by the quadruple battery.
template <class S>
StructureVerdict check_structure(const Quadruple<S>& q, double tol = 1e-9) {
  StructureVerdict v = check_structure_identities(q, tol);
  Bracket<S> mu = to_bracket(q);
  JacobiReport<S> jac = check_jacobi(mu, tol);
  bool erp = false;
  if (jac.ok) {
    TorsionReport<S> rep = torsion(mu, tol);
    erp = rep.erp && form_is_zero(rep.tau - fixtures::tau_std<S>(), tol);
  }
  v.g2core_erp = erp;
  v.consistent = (v.all_pass() == erp);
  return v;
}

} // namespace erpg2
