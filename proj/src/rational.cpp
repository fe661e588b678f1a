#include "momentflow/rational.hpp"

#include <stdexcept>
#include <utility>

namespace momentflow {

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector scaled(const RationalVector& v, const Rational& c) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector subtract(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("subtract: length mismatch");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RationalVector to_rational(const std::vector<int>& v) {
  RationalVector out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

/// Strict decimal integer: optional sign then digits. cpp_int's own string
/// constructor would read a leading 0 as octal.
std::optional<BigInt> parse_decimal_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  BigInt value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  const auto e = text.find_last_not_of(" \t\r\n");
  const std::string s = b == std::string_view::npos ? std::string() : std::string(text.substr(b, e - b + 1));
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const auto p = parse_decimal_integer(std::string_view(s).substr(0, slash));
    const auto q = parse_decimal_integer(std::string_view(s).substr(slash + 1));
    if (!p || !q || *q == 0) throw bad();
    return *q < 0 ? Rational(BigInt(-*p), BigInt(-*q)) : Rational(*p, *q);
  }
  if (auto dot_pos = s.find('.'); dot_pos != std::string::npos) {
    const std::string whole = s.substr(0, dot_pos);
    const std::string frac = s.substr(dot_pos + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
    const bool signed_only = whole == "-" || whole == "+" || whole.empty();
    const auto w = signed_only ? std::optional<BigInt>(0) : parse_decimal_integer(whole);
    const auto f = parse_decimal_integer(frac);
    if (!w || !f) throw bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole.front() == '-';
    const BigInt magnitude = abs(*w) * scale + *f;
    return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
  }
  const auto i = parse_decimal_integer(s);
  if (!i) throw bad();
  return Rational(*i);
}

std::optional<RationalVector> solve_exact(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_exact: rhs length mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("solve_exact: matrix not square");
  if (n == 0) return RationalVector{};

  // Clear denominators row by row so elimination runs over the integers.
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = denominator(b[i]);
    for (const auto& x : a[i]) l = boost::multiprecision::lcm(l, denominator(x));
    for (std::size_t j = 0; j < n; ++j) m[i][j] = numerator(a[i][j]) * (l / denominator(a[i][j]));
    m[i][n] = numerator(b[i]) * (l / denominator(b[i]));
  }

  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != k) std::swap(m[piv], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  RationalVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) s -= Rational(m[ii][j]) * x[j];
    x[ii] = s / Rational(m[ii][ii]);
  }
  return x;
}

}  // namespace momentflow
