#pragma once

#include "erpg2/linalg.hpp"

#include <array>
#include <bit>
#include <string>

namespace erpg2 {

// Alternating forms on the fixed oriented 7-dim space, coefficients stored
// densely per strictly increasing multi-index (encoded as a 7-bit mask,
// bit i-1 <-> index i).

namespace mindex {

inline constexpr int kDim = 7;

inline int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

struct Tables {
  std::array<std::vector<unsigned>, 8> masks; // per degree, lexicographic
  std::array<int, 128> pos;                   // mask -> slot within its degree

  Tables() {
    for (unsigned m = 0; m < 128; ++m) masks[std::popcount(m)].push_back(m);
    for (int k = 0; k <= 7; ++k) {
      // lexicographic order of index tuples == increasing-as-reversed-binary;
      // sort by tuple comparison
      auto& v = masks[k];
      std::sort(v.begin(), v.end(), [](unsigned a, unsigned b) {
        while (a && b) {
          int la = std::countr_zero(a), lb = std::countr_zero(b);
          if (la != lb) return la < lb;
          a &= a - 1;
          b &= b - 1;
        }
        return false;
      });
      for (size_t i = 0; i < v.size(); ++i) pos[v[i]] = static_cast<int>(i);
    }
  }
};

inline const Tables& tables() {
  static const Tables t;
  return t;
}

inline const std::vector<unsigned>& masks(int degree) { return tables().masks[degree]; }
inline int slot(unsigned mask) { return tables().pos[mask]; }

// sign of e^A ^ e^B as a reordering of e^{A u B}; 0 if A,B intersect
inline int merge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inv = 0;
  unsigned bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));
    bb &= bb - 1;
  }
  return (inv & 1) ? -1 : 1;
}

inline std::string mask_name(unsigned m) {
  std::string s = "e^";
  for (int i = 0; i < 7; ++i)
    if (m & (1u << i)) s += static_cast<char>('1' + i);
  return s;
}

} // namespace mindex

struct FormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
class KForm {
public:
  KForm() : degree_(0), c_(1, scalar_traits<S>::zero()) {}
  explicit KForm(int degree)
      : degree_(degree), c_(mindex::binom(7, degree), scalar_traits<S>::zero()) {
    if (degree < 0 || degree > 7) throw FormError("degree out of range");
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(c_.size()); }
  const S& coeff_slot(int i) const { return c_[i]; }
  S& coeff_slot(int i) { return c_[i]; }

  static unsigned mask_of(std::initializer_list<int> idx) {
    unsigned m = 0;
    for (int i : idx) m |= 1u << (i - 1);
    return m;
  }
  const S& coeff(std::initializer_list<int> idx) const {
    return c_[mindex::slot(mask_of(idx))];
  }
  // Adds c * e^{idx}, resolving permutation sign; repeated indices vanish.
  void add_term(std::initializer_list<int> idx, const S& c) {
    unsigned m = 0;
    int sign = 1;
    unsigned seen = 0;
    for (int i : idx) {
      unsigned bit = 1u << (i - 1);
      if (seen & bit) return;
      sign *= mindex::merge_sign(seen, bit);
      seen |= bit;
      m |= bit;
    }
    if (std::popcount(m) != degree_) throw FormError("index length mismatch");
    c_[mindex::slot(m)] += (sign > 0) ? c : -c;
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!scalar_traits<S>::is_zero(v)) return false;
    return true;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& v : c_) m = std::max(m, std::fabs(scalar_traits<S>::to_double(v)));
    return m;
  }

  friend KForm operator+(const KForm& a, const KForm& b) {
    if (a.degree_ != b.degree_) throw FormError("degree mismatch in +");
    KForm r(a.degree_);
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend KForm operator-(const KForm& a, const KForm& b) {
    if (a.degree_ != b.degree_) throw FormError("degree mismatch in -");
    KForm r(a.degree_);
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  KForm operator-() const {
    KForm r(degree_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }
  friend KForm operator*(const S& c, const KForm& a) {
    KForm r(a.degree_);
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = c * a.c_[i];
    return r;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.degree_ == b.degree_ && a.c_ == b.c_;
  }

  std::string str() const {
    std::string out;
    const auto& ms = mindex::masks(degree_);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (scalar_traits<S>::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      if constexpr (scalar_traits<S>::exact)
        out += "(" + c_[i].str() + ")";
      else
        out += "(" + std::to_string(c_[i]) + ")";
      out += degree_ ? mindex::mask_name(ms[i]) : std::string("");
    }
    return out.empty() ? "0" : out;
  }

private:
  int degree_;
  std::vector<S> c_;
};

template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  if (a.degree() + b.degree() > 7) throw FormError("wedge: degree overflow");
  KForm<S> r(a.degree() + b.degree());
  const auto& ma = mindex::masks(a.degree());
  const auto& mb = mindex::masks(b.degree());
  for (int i = 0; i < a.size(); ++i) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(i))) continue;
    for (int j = 0; j < b.size(); ++j) {
      if (scalar_traits<S>::is_zero(b.coeff_slot(j))) continue;
      int sg = mindex::merge_sign(ma[i], mb[j]);
      if (sg == 0) continue;
      S term = a.coeff_slot(i) * b.coeff_slot(j);
      int slot = mindex::slot(ma[i] | mb[j]);
      if (sg > 0)
        r.coeff_slot(slot) += term;
      else
        r.coeff_slot(slot) -= term;
    }
  }
  return r;
}

// Contraction in the first slot; X given by components on e_1..e_7.
template <class S>
KForm<S> interior(const std::array<S, 7>& X, const KForm<S>& a) {
  if (a.degree() < 1) throw FormError("interior: degree must be >= 1");
  KForm<S> r(a.degree() - 1);
  const auto& ms = mindex::masks(a.degree());
  for (int s = 0; s < a.size(); ++s) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(s))) continue;
    unsigned m = ms[s];
    int p = 0;
    for (int i = 0; i < 7; ++i) {
      unsigned bit = 1u << i;
      if (!(m & bit)) continue;
      if (!scalar_traits<S>::is_zero(X[i])) {
        S term = X[i] * a.coeff_slot(s);
        int slot = mindex::slot(m ^ bit);
        if (p % 2 == 0)
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
KForm<S> interior(int basis_index, const KForm<S>& a) {
  std::array<S, 7> X;
  X.fill(scalar_traits<S>::zero());
  X[basis_index - 1] = scalar_traits<S>::one();
  return interior(X, a);
}

// Hodge star for the standard orthonormal oriented basis e_1..e_7.
template <class S>
KForm<S> star7(const KForm<S>& a) {
  KForm<S> r(7 - a.degree());
  const auto& ms = mindex::masks(a.degree());
  for (int s = 0; s < a.size(); ++s) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(s))) continue;
    unsigned m = ms[s];
    unsigned comp = 0x7Fu ^ m;
    int sg = mindex::merge_sign(m, comp);
    int slot = mindex::slot(comp);
    if (sg > 0)
      r.coeff_slot(slot) += a.coeff_slot(s);
    else
      r.coeff_slot(slot) -= a.coeff_slot(s);
  }
  return r;
}

// Hodge star on span{e_1..e_6}; rejects forms touching e^7. The result is a
// (6-k)-form embedded in the same coefficient space.
template <class S>
KForm<S> star6(const KForm<S>& a) {
  if (a.degree() > 6) throw FormError("star6: degree out of range");
  KForm<S> r(6 - a.degree());
  const auto& ms = mindex::masks(a.degree());
  for (int s = 0; s < a.size(); ++s) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(s))) continue;
    unsigned m = ms[s];
    if (m & 0x40u) throw FormError("star6: form contains e^7");
    unsigned comp = 0x3Fu ^ m;
    int sg = mindex::merge_sign(m, comp);
    int slot = mindex::slot(comp);
    if (sg > 0)
      r.coeff_slot(slot) += a.coeff_slot(s);
    else
      r.coeff_slot(slot) -= a.coeff_slot(s);
  }
  return r;
}

// Endomorphism over an ordered subset of {1..7}; indices outside the subset
// are annihilated when acting on forms.
template <class S>
struct IndexedEndo {
  std::vector<int> idx; // 1-based basis indices
  Matrix<S> mat;        // square, dim = idx.size()

  IndexedEndo() = default;
  IndexedEndo(std::vector<int> indices, Matrix<S> m) : idx(std::move(indices)), mat(std::move(m)) {
    assert(mat.rows() == static_cast<int>(idx.size()) && mat.cols() == mat.rows());
  }

  Matrix<S> embed7() const {
    Matrix<S> f(7, 7);
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) f(idx[a] - 1, idx[b] - 1) = mat(static_cast<int>(a), static_cast<int>(b));
    return f;
  }
  IndexedEndo transpose() const { return IndexedEndo(idx, mat.transpose()); }
};

template <class S>
IndexedEndo<S> on_g1(Matrix<S> m) { return IndexedEndo<S>({1, 2, 5, 6}, std::move(m)); }
template <class S>
IndexedEndo<S> on_h1(Matrix<S> m) { return IndexedEndo<S>({3, 4}, std::move(m)); }
template <class S>
IndexedEndo<S> on_h(Matrix<S> m) { return IndexedEndo<S>({1, 2, 3, 4, 5, 6}, std::move(m)); }
template <class S>
IndexedEndo<S> on_full(Matrix<S> m) { return IndexedEndo<S>({1, 2, 3, 4, 5, 6, 7}, std::move(m)); }

// theta(B)gamma = -sum over slots of gamma(.., B., ..): the derivative of the
// GL-action on forms. theta(B)e^i = -sum_j B_{ij} e^j.
template <class S>
KForm<S> theta(const IndexedEndo<S>& B, const KForm<S>& a) {
  KForm<S> r(a.degree());
  const auto& ms = mindex::masks(a.degree());
  std::array<int, 8> pos_in;
  pos_in.fill(-1);
  for (size_t p = 0; p < B.idx.size(); ++p) pos_in[B.idx[p]] = static_cast<int>(p);
  for (int s = 0; s < a.size(); ++s) {
    if (scalar_traits<S>::is_zero(a.coeff_slot(s))) continue;
    unsigned m = ms[s];
    for (int i = 1; i <= 7; ++i) {
      unsigned bit_i = 1u << (i - 1);
      if (!(m & bit_i)) continue;
      int pi = pos_in[i];
      if (pi < 0) continue;
      unsigned rest = m ^ bit_i;
      for (size_t pj = 0; pj < B.idx.size(); ++pj) {
        const S& c = B.mat(pi, static_cast<int>(pj));
        if (scalar_traits<S>::is_zero(c)) continue;
        int j = B.idx[pj];
        unsigned bit_j = 1u << (j - 1);
        if (rest & bit_j) continue;
        // replace index i by j within the sorted tuple
        int sg = mindex::merge_sign(rest, bit_i) * mindex::merge_sign(rest, bit_j);
        S term = c * a.coeff_slot(s);
        int slot = mindex::slot(rest | bit_j);
        if (sg > 0)
          r.coeff_slot(slot) -= term;
        else
          r.coeff_slot(slot) += term;
      }
    }
  }
  return r;
}

// Pullback along M: (pullback(M,a))(X1..Xk) = a(M X1, .., M Xk), computed
// through k x k minors.
template <class S>
KForm<S> pullback(const Matrix<S>& M, const KForm<S>& a) {
  int k = a.degree();
  KForm<S> r(k);
  if (k == 0) {
    r.coeff_slot(0) = a.coeff_slot(0);
    return r;
  }
  const auto& ms = mindex::masks(k);
  std::vector<std::array<int, 7>> rowsets(ms.size());
  for (size_t s = 0; s < ms.size(); ++s) {
    int t = 0;
    for (int i = 0; i < 7; ++i)
      if (ms[s] & (1u << i)) rowsets[s][t++] = i;
  }
  for (size_t sj = 0; sj < ms.size(); ++sj) {
    S acc = scalar_traits<S>::zero();
    for (size_t si = 0; si < ms.size(); ++si) {
      if (scalar_traits<S>::is_zero(a.coeff_slot(static_cast<int>(si)))) continue;
      Matrix<S> sub(k, k);
      for (int r2 = 0; r2 < k; ++r2)
        for (int c2 = 0; c2 < k; ++c2) sub(r2, c2) = M(rowsets[si][r2], rowsets[sj][c2]);
      acc += a.coeff_slot(static_cast<int>(si)) * det(sub);
    }
    r.coeff_slot(static_cast<int>(sj)) = acc;
  }
  return r;
}

// Group action h . a = a(h^{-1} ., .., h^{-1} .).
template <class S>
KForm<S> gl7_action(const Matrix<S>& h, const KForm<S>& a) {
  return pullback(inverse(h), a);
}

} // namespace erpg2
