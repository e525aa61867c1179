#include "erpg2/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>
#include <numeric>
#include <sstream>

namespace erpg2 {

namespace {

// mult_table[i][j]: sqrt(r_i)*sqrt(r_j) = factor * sqrt(r_k)
struct BasisProduct {
  int factor;
  int index;
};

const std::array<std::array<BasisProduct, 8>, 8>& mult_table() {
  static const auto table = [] {
    std::array<std::array<BasisProduct, 8>, 8> t{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        int m = kRadicands[i], n = kRadicands[j];
        int g = std::gcd(m, n);
        int k = (m / g) * (n / g);
        t[i][j] = BasisProduct{g, radicand_index(k)};
      }
    return t;
  }();
  return table;
}

using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>>;

const std::array<BigFloat, 8>& surd_values() {
  static const auto vals = [] {
    std::array<BigFloat, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = sqrt(BigFloat(kRadicands[i]));
    return v;
  }();
  return vals;
}

} // namespace

Exact operator*(const Exact& a, const Exact& b) {
  Exact r;
  const auto& tab = mult_table();
  for (int i = 0; i < 8; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (b.c_[j].is_zero()) continue;
      const auto& p = tab[i][j];
      r.c_[p.index] += a.c_[i] * b.c_[j] * p.factor;
    }
  }
  return r;
}

Exact operator/(const Exact& a, const Exact& b) {
  if (b.is_zero()) throw ScalarError("division by zero");
  if (b.is_rational()) {
    Exact r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] / b.c_[0];
    return r;
  }
  // Solve the 8x8 rational system M x = a, M = multiplication by b.
  const auto& tab = mult_table();
  Rat M[8][9];
  for (int j = 0; j < 8; ++j) {  // column j = coords of b * basis_j
    for (int i = 0; i < 8; ++i) {
      if (b.c_[i].is_zero()) continue;
      const auto& p = tab[i][j];
      M[p.index][j] += b.c_[i] * p.factor;
    }
  }
  for (int i = 0; i < 8; ++i) M[i][8] = a.c_[i];
  for (int col = 0; col < 8; ++col) {
    int piv = -1;
    for (int row = col; row < 8; ++row)
      if (!M[row][col].is_zero()) { piv = row; break; }
    if (piv < 0) throw ScalarError("singular multiplication matrix");
    if (piv != col)
      for (int k = col; k <= 8; ++k) std::swap(M[piv][k], M[col][k]);
    Rat inv = 1 / M[col][col];
    for (int k = col; k <= 8; ++k) M[col][k] *= inv;
    for (int row = 0; row < 8; ++row) {
      if (row == col || M[row][col].is_zero()) continue;
      Rat f = M[row][col];
      for (int k = col; k <= 8; ++k) M[row][k] -= f * M[col][k];
    }
  }
  Exact x;
  for (int i = 0; i < 8; ++i) x.c_[i] = M[i][8];
  return x;
}

double Exact::to_double() const {
  BigFloat acc = 0;
  const auto& sv = surd_values();
  for (int i = 0; i < 8; ++i) {
    if (c_[i].is_zero()) continue;
    acc += static_cast<BigFloat>(c_[i]) * sv[i];
  }
  return acc.convert_to<double>();
}

int Exact::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sign_of(c_[0]);
  for (unsigned prec = 64; prec <= 16384; prec *= 2) {
    Int scale = Int(1) << prec;
    Rat lo = 0, hi = 0;
    for (int i = 0; i < 8; ++i) {
      if (c_[i].is_zero()) continue;
      Int s = isqrt_floor(Int(kRadicands[i]) * scale * scale);
      Rat l(s, scale), u(s + 1, scale);
      if (sign_of(c_[i]) > 0) {
        lo += c_[i] * l;
        hi += c_[i] * u;
      } else {
        lo += c_[i] * u;
        hi += c_[i] * l;
      }
    }
    if (sign_of(lo) > 0) return 1;
    if (sign_of(hi) < 0) return -1;
  }
  throw ScalarError("sign(): interval refinement failed to separate from zero");
}

std::string Exact::str() const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < 8; ++i) {
    if (c_[i].is_zero()) continue;
    Rat q = c_[i];
    bool neg = sign_of(q) < 0;
    if (neg) q = -q;
    Int n = rat_num(q), d = rat_den(q);
    out << (first ? (neg ? "-" : "") : (neg ? "-" : "+"));
    first = false;
    if (i == 0) {
      out << n;
      if (d != 1) out << "/" << d;
    } else if (n == 1 && d == 1) {
      out << "sqrt(" << kRadicands[i] << ")";
    } else if (n == 1) {
      out << "sqrt(" << kRadicands[i] << ")/" << d;
    } else {
      out << n;
      if (d != 1) out << "/" << d;
      out << "*sqrt(" << kRadicands[i] << ")";
    }
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// Surd literal parser.
//   expr := term (('+'|'-') term)*
//   term := rat '*'? 'sqrt(' uint ')' | rat | 'sqrt(' uint ')' ('/' uint)?
//   rat  := int ('/' uint)?
// plus an optional outer form '(' expr ')' '/' uint.
// ---------------------------------------------------------------------------

namespace {

struct SurdParser {
  const std::string& s;
  size_t pos = 0;

  explicit SurdParser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScalarError("surd syntax error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool lookahead_word(const char* w) {
    skip_ws();
    size_t n = std::string(w).size();
    return s.compare(pos, n, w) == 0;
  }
  Int parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected digits");
    return Int(s.substr(start, pos - start));
  }
  // sqrt(uint) reduced to q * sqrt(squarefree); checks radicand admissibility
  Exact parse_sqrt() {
    skip_ws();
    if (s.compare(pos, 5, "sqrt(") != 0) fail("expected sqrt(");
    pos += 5;
    size_t radpos = pos;
    Int n = parse_uint();
    if (!eat(')')) fail("expected ')'");
    Int square = 1;
    Int k = n;
    for (Int d = 2; d * d <= k;) {
      if (k % (d * d) == 0) {
        k /= d * d;
        square *= d;
      } else {
        ++d;
      }
    }
    if (k == 0) return Exact(Rat(0));
    int idx = (k <= 30) ? radicand_index(static_cast<int>(k)) : -1;
    if (idx < 0) {
      pos = radpos;
      fail("radicand with square-free part " + k.str() + " outside Q(sqrt2,sqrt3,sqrt5)");
    }
    return Exact::surd(Rat(square), kRadicands[idx]);
  }
  Exact parse_term() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      (void)eat('+');
    skip_ws();
    Exact v;
    if (lookahead_word("sqrt(")) {
      v = parse_sqrt();
      if (eat('/')) {
        Int den = parse_uint();
        if (den == 0) fail("zero denominator");
        v = v / Exact(Rat(den));
      }
    } else {
      Int num = parse_uint();
      Rat q(num, 1);
      if (eat('/')) {
        Int den = parse_uint();
        if (den == 0) fail("zero denominator");
        q = Rat(num, den);
      }
      v = Exact(q);
      skip_ws();
      // optional '*' then sqrt, or adjacent sqrt
      if (eat('*')) {
        if (!lookahead_word("sqrt(")) fail("expected sqrt( after '*'");
        v = v * parse_sqrt();
      } else if (lookahead_word("sqrt(")) {
        v = v * parse_sqrt();
      }
    }
    return neg ? -v : v;
  }
  Exact parse_expr() {
    Exact acc = parse_term();
    for (;;) {
      skip_ws();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        char op = s[pos];
        ++pos;
        Exact t = parse_term();
        acc = (op == '+') ? acc + t : acc - t;
      } else {
        break;
      }
    }
    return acc;
  }
  Exact parse_literal() {
    skip_ws();
    Exact v;
    if (eat('(')) {
      v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      if (eat('/')) {
        Int den = parse_uint();
        if (den == 0) fail("zero denominator");
        v = v / Exact(Rat(den));
      }
    } else {
      v = parse_expr();
    }
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return v;
  }
};

} // namespace

Exact parse_surd(const std::string& text) {
  SurdParser p(text);
  return p.parse_literal();
}

} // namespace erpg2
