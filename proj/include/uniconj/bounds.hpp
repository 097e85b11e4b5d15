#pragma once

// Constant calculators: every named constant function of the hyperbolic
// toolkit, computed symbolically from (delta, #S) and input lengths with
// arbitrary-precision rationals. delta = 0 uses exact free-group
// specializations; the general-delta path assembles conservative closed
// forms from the cited proofs. Formulas whose source proves computability
// without writing a closed form are marked "assembled" in their trace and
// documented next to the code; they are stand-ins, not claims about the
// source material.
//
// Values can be astronomically large. Ball cardinalities saturate beyond an
// exponent guard instead of materializing the integer; saturation propagates
// through dependent constants and is reported, never silently truncated.

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace uniconj::bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_floor(const Rat& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quo = n / d;
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

inline BigInt rat_ceil(const Rat& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quo = n / d;
  if (n > 0 && quo * d != n) ++quo;
  return quo;
}

inline Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool negative = false;
    std::size_t start = 0;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      negative = digits[0] == '-';
      start = 1;
    }
    BigInt n = 0;
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9')
        throw std::invalid_argument("bad rational: " + text);
      n = n * 10 + (digits[i] - '0');
    }
    if (negative) n = -n;
    BigInt d = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) d *= 10;
    return Rat(n, d);
  }
  return Rat(BigInt(text));
}

inline std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

// Exact fraction over cpp_int. cpp_rational normalizes with a full gcd on
// every operation, which is unusable at the sizes these constants reach;
// here denominators stay tiny (powers of two times the delta denominator),
// so we reduce only when the denominator grows past a threshold, and then
// only against the small denominator.
struct Frac {
  BigInt num{0};
  BigInt den{1};

  Frac() = default;
  Frac(BigInt n) : num(std::move(n)) {}
  Frac(long long n) : num(n) {}
  Frac(int n) : num(n) {}
  Frac(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    reduce_if_needed();
  }
  explicit Frac(const Rat& q) : num(numerator(q)), den(denominator(q)) {}

  void reduce_if_needed() {
    if (den == 1) return;
    if (den > (1LL << 32)) reduce();
  }
  void reduce() {
    BigInt g = boost::multiprecision::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return num % den == 0; }

  BigInt floor() const {
    BigInt quo = num / den;
    if (num < 0 && quo * den != num) --quo;
    return quo;
  }
  BigInt ceil() const {
    BigInt quo = num / den;
    if (num > 0 && quo * den != num) ++quo;
    return quo;
  }

  Rat to_rat() const { return Rat(num, den); }

  std::string str() const {
    Frac c = *this;
    c.reduce();
    std::ostringstream os;
    os << c.num;
    if (c.den != 1) os << "/" << c.den;
    return os.str();
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.den == b.den) return Frac(a.num + b.num, a.den);
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    if (a.den == b.den) return Frac(a.num - b.num, a.den);
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw std::invalid_argument("division by zero");
    return Frac(a.num * b.den, a.den * b.num);
  }
  friend bool operator<(const Frac& a, const Frac& b) {
    if (a.den == b.den) return a.num < b.num;
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator==(const Frac& a, const Frac& b) {
    if (a.den == b.den) return a.num == b.num;
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator==(const Frac& a, long long b) {
    return a == Frac(b);
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }
};

// A fraction together with a saturation flag. Saturated means "finite but
// beyond the materialization guard"; it compares as +infinity.
struct Bound {
  Frac v{};
  bool sat = false;

  static Bound saturated() { return Bound{Frac(0), true}; }

  std::string str() const { return sat ? "saturated" : v.str(); }

  friend Bound operator+(const Bound& a, const Bound& b) {
    if (a.sat || b.sat) return saturated();
    return Bound{a.v + b.v};
  }
  friend Bound operator-(const Bound& a, const Frac& b) {
    if (a.sat) return saturated();
    return Bound{a.v - b};
  }
  friend Bound operator*(const Bound& a, const Bound& b) {
    if (a.sat || b.sat) return saturated();
    return Bound{a.v * b.v};
  }
  friend Bound operator/(const Bound& a, const Frac& d) {
    if (a.sat) return saturated();
    return Bound{a.v / d};
  }
  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.sat) return false;
    if (b.sat) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator==(const Bound& a, const Bound& b) {
    return a.sat == b.sat && (a.sat || a.v == b.v);
  }
};

inline Bound bmax(const Bound& a, const Bound& b) { return a < b ? b : a; }

inline Bound from_int(long long n) { return Bound{Frac(n)}; }

inline Bound from_rat(Rat q) { return Bound{Frac(q)}; }

inline Bound bfloor(const Bound& a) {
  if (a.sat) return a;
  return Bound{Frac(a.v.floor())};
}

// Evaluation trace for the CLI's formula-tree output.
struct Trace {
  std::string name;
  std::string args;
  std::string formula;
  std::string value;
  std::vector<Trace> children;
};

inline Trace* trace_child(Trace* parent, std::string name, std::string args) {
  if (!parent) return nullptr;
  parent->children.push_back(
      Trace{std::move(name), std::move(args), "", "", {}});
  return &parent->children.back();
}

inline void trace_set(Trace* t, const std::string& formula,
                      const Bound& value) {
  if (!t) return;
  t->formula = formula;
  t->value = value.str();
}

class BoundContext {
 public:
  BoundContext(Rat delta, int sharp_s,
               std::map<std::string, Rat> overrides = {})
      : delta_(std::move(delta)),
        sharp_s_(sharp_s),
        overrides_(std::move(overrides)) {
    if (delta_ < 0) throw std::invalid_argument("delta must be >= 0");
    if (sharp_s_ < 1) throw std::invalid_argument("sharpS must be >= 1");
  }

  const Rat& delta() const { return delta_; }
  int sharp_s() const { return sharp_s_; }
  bool tree() const { return delta_ == 0; }

  std::optional<Rat> override_for(const std::string& name) const {
    auto it = overrides_.find(name);
    if (it == overrides_.end()) return std::nullopt;
    return it->second;
  }

  // Exponent guard for ball cardinalities: 2(2#S-1)^e is materialized only
  // for e up to this limit.
  long long max_ball_exponent() const { return max_ball_exponent_; }
  void set_max_ball_exponent(long long e) { max_ball_exponent_ = e; }

  Bound memo(const std::string& key,
             const std::function<Bound()>& compute) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    Bound value = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(key, value);
    return value;
  }

 private:
  Rat delta_;
  int sharp_s_;
  std::map<std::string, Rat> overrides_;
  long long max_ball_exponent_ = 1000000;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Bound> cache_;
};

// #B(r) <= 2(2#S-1)^r, the free-group ball bound.
inline Bound ball_size_bound(const BoundContext& ctx, const Bound& radius,
                             Trace* t = nullptr) {
  if (radius.sat) {
    trace_set(t, "2(2#S-1)^r, r saturated", Bound::saturated());
    return Bound::saturated();
  }
  BigInt e = radius.v.floor();
  if (e < 0) e = 0;
  if (e > ctx.max_ball_exponent()) {
    trace_set(t, "2(2#S-1)^r, exponent beyond guard", Bound::saturated());
    return Bound::saturated();
  }
  BigInt base = 2 * BigInt(ctx.sharp_s()) - 1;
  Bound out{
      Frac(BigInt(2 * boost::multiprecision::pow(base, e.convert_to<unsigned>())))};
  trace_set(t, "2(2#S-1)^floor(r)", out);
  return out;
}

inline Bound ball_size_bound(const BoundContext& ctx, long long radius,
                             Trace* t = nullptr) {
  return ball_size_bound(ctx, from_int(radius), t);
}

namespace detail {
inline std::optional<Bound> use_override(const BoundContext& ctx,
                                         const std::string& name, Trace* t) {
  if (auto o = ctx.override_for(name)) {
    Bound b{Frac(*o)};
    trace_set(t, "override", b);
    return b;
  }
  return std::nullopt;
}
}  // namespace detail

// Length bound for a shortest conjugator between conjugate elements of
// length <= m. Exact in a tree; assembled elsewhere (the source only proves
// computability).
inline Bound conj_bound(const BoundContext& ctx, const Bound& m,
                        Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "conj_bound", t)) return *o;
  if (ctx.tree()) {
    trace_set(t, "m  (tree: conjugator <= (|u|+|v|)/2)", m);
    return m;
  }
  Bound ball = ball_size_bound(ctx, from_rat(4 * ctx.delta()) + m + m,
                               trace_child(t, "ball", "4d+2m"));
  Bound out = m + from_rat(4 * ctx.delta()) + ball;
  trace_set(t, "assembled: m + 4d + #B(4d+2m)", out);
  return out;
}

// Quasi-geodesic stability constant R(delta, lambda, epsilon): a bounded
// quasi-geodesic and a geodesic with the same endpoints lie in the
// R-neighborhood of each other. Assembled conservative closed form.
inline Bound qg_stability_R(const BoundContext& ctx, const Bound& lambda,
                            const Bound& epsilon, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "R", t)) return *o;
  Bound out =
      lambda * lambda * (epsilon + from_rat(14 * ctx.delta()) + from_int(2)) +
      from_rat(2 * ctx.delta());
  trace_set(t, "assembled: l^2(e + 14d + 2) + 2d", out);
  return out;
}

struct QgParams {
  Bound lambda;
  Bound epsilon;
};

// Parameters making n -> g^n a (lambda, epsilon)-quasi-geodesic, from |g|
// alone. Tree case: |g^n| >= n, and the conjugate offset contributes
// epsilon = 2*floor(|g|/2). The two general branches are separately
// monotone in |g|; across the |g| = 8 delta boundary the assembly switches,
// so monotonicity grids should stay within a branch.
inline QgParams quasigeodesic_params(const BoundContext& ctx, long long g_len,
                                     Trace* t = nullptr) {
  if (g_len < 1) throw std::invalid_argument("g_len must be >= 1");
  if (ctx.tree()) {
    QgParams p{from_int(1), from_int(2 * (g_len / 2))};
    trace_set(t, "tree: (1, 2*floor(n/2))", p.lambda);
    return p;
  }
  if (Rat(g_len) > 8 * ctx.delta()) {
    // direct branch: a k-local geodesic with k > 8delta is a (3,2delta)
    // quasi-geodesic, so the power map is (3k, 2delta)
    QgParams p{Bound{Frac(3 * g_len)}, from_rat(2 * ctx.delta())};
    trace_set(t, "(3k, 2d), k = |g| > 8d", p.lambda);
    return p;
  }
  // assembled: pass to a power g^r whose shortest conjugate is long, then
  // undo the power and conjugation adjustments
  Bound r_exp = from_int(1) + ball_size_bound(ctx, from_rat(8 * ctx.delta()),
                                              trace_child(t, "ball", "8d"));
  Bound k_up = r_exp * from_int(g_len);
  Bound lambda = from_int(3) * k_up * r_exp;
  Bound h = conj_bound(ctx, k_up, trace_child(t, "conj_bound", "r|g|"));
  Bound epsilon = from_rat(2 * ctx.delta()) + (r_exp - Frac(1)) * from_int(g_len) +
                  from_int(2) * h;
  trace_set(t, "assembled: r=1+#B(8d); (3r^2|g|, 2d+(r-1)|g|+2h)", lambda);
  return QgParams{lambda, epsilon};
}

// mu(|g|): powers of g and geodesics between them lie in mu-neighborhoods of
// each other. Tree value floor(|g|/2) covers the worst witness/overlap.
inline Bound mu(const BoundContext& ctx, long long g_len, Trace* t = nullptr) {
  if (g_len < 1) throw std::invalid_argument("g_len must be >= 1");
  if (auto o = detail::use_override(ctx, "mu", t)) return *o;
  if (ctx.tree()) {
    Bound out = from_int(g_len / 2);
    trace_set(t, "tree: floor(|g|/2)", out);
    return out;
  }
  return ctx.memo("mu:" + std::to_string(g_len), [&] {
    QgParams p = quasigeodesic_params(ctx, g_len, trace_child(t, "qg", "|g|"));
    Bound out =
        qg_stability_R(ctx, p.lambda, p.epsilon, trace_child(t, "R", "d,l,e"));
    trace_set(t, "R(d, lambda(|g|), epsilon(|g|))", out);
    return out;
  });
}

// The general-delta mu formula evaluated regardless of ctx.tree(); used to
// check that the tree specialization never exceeds the assembled form.
inline Bound mu_general(const BoundContext& ctx, long long g_len) {
  QgParams p = ctx.tree()
                   ? QgParams{Bound{Frac(3 * g_len)}, from_rat(2 * ctx.delta())}
                   : quasigeodesic_params(ctx, g_len);
  return qg_stability_R(ctx, p.lambda, p.epsilon);
}

// r(|g|): every axis of a power of g lies in <g> B(r). Tree: |witness| +
// |core| - 1 <= |g| - 1 exactly.
inline Bound r_const(const BoundContext& ctx, long long g_len,
                     Trace* t = nullptr) {
  if (g_len < 1) throw std::invalid_argument("g_len must be >= 1");
  if (auto o = detail::use_override(ctx, "r", t)) return *o;
  if (ctx.tree()) {
    Bound out = from_int(g_len - 1);
    trace_set(t, "tree: |g| - 1", out);
    return out;
  }
  return ctx.memo("r:" + std::to_string(g_len), [&] {
    Bound c = from_rat(ctx.delta()) + mu(ctx, g_len, trace_child(t, "mu", "|g|"));
    Bound case1 = c + c + from_rat(ctx.delta());
    Bound case2 = conj_bound(ctx, case1, trace_child(t, "conj_bound", "2c+d"));
    Bound to_centralizer = bmax(case1, case2);
    Bound s_max = ball_size_bound(ctx, from_rat(4 * ctx.delta()),
                                  trace_child(t, "ball", "4d"));
    Bound to_cyclic =
        from_int(2) * s_max * from_int(g_len) + from_rat(4 * ctx.delta());
    Bound out = from_int(1) + to_centralizer + to_cyclic;
    trace_set(t, "assembled: 1 + max(2c+d, conj(2c+d)) + 2#B(4d)|g| + 4d",
              out);
    return out;
  });
}

inline Bound r_const_general(const BoundContext& ctx, long long g_len) {
  Bound c = from_rat(ctx.delta()) + mu_general(ctx, g_len);
  Bound case1 = c + c + from_rat(ctx.delta());
  Bound case2 = ctx.tree() ? case1 : conj_bound(ctx, case1);
  Bound s_max = ball_size_bound(ctx, from_rat(4 * ctx.delta()));
  return from_int(1) + bmax(case1, case2) +
         from_int(2) * s_max * from_int(g_len) + from_rat(4 * ctx.delta());
}

inline Bound f1(const BoundContext& ctx, long long g_len, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "f1", t)) return *o;
  Bound out = from_int(4) * r_const(ctx, g_len, trace_child(t, "r", "|g|"));
  trace_set(t, "4 r(n)", out);
  return out;
}

inline Bound f2(const BoundContext& ctx, long long g_len, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "f2", t)) return *o;
  Bound out = from_int(2) * r_const(ctx, g_len, trace_child(t, "r", "|g|")) +
              from_int(2) * mu(ctx, g_len, trace_child(t, "mu", "|g|"));
  trace_set(t, "2 r(n) + 2 mu(n)", out);
  return out;
}

inline Bound hbar(const BoundContext& ctx, long long b_len,
                  Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "hbar", t)) return *o;
  Bound part1 = f1(ctx, b_len, trace_child(t, "f1", "n"));
  Bound part2 = f2(ctx, b_len, trace_child(t, "f2", "n"));
  Bound part3 = r_const(ctx, b_len, trace_child(t, "r", "n"));
  Bound out = part1 / Frac(2) + part2 / Frac(2) + from_int(2) * part3 +
              from_rat(21 * ctx.delta()) + from_int(1);
  trace_set(t, "f1/2 + f2/2 + 2r + 21d + 1", out);
  return out;
}

enum class CancellationMode { easy1, circ };

inline CancellationMode cancellation_mode(const std::string& name) {
  if (name == "easy1") return CancellationMode::easy1;
  if (name == "circ") return CancellationMode::circ;
  throw std::invalid_argument("unknown cancellation mode: " + name);
}

inline Bound cancellation_c(const BoundContext& ctx, CancellationMode mode,
                            long long b_len, const Bound& w_len,
                            Trace* t = nullptr) {
  if (b_len < 0) throw std::invalid_argument("negative length");
  if (mode == CancellationMode::easy1) {
    if (auto o = detail::use_override(ctx, "c_easy1", t)) return *o;
    Bound out = from_rat(ctx.delta()) +
                mu(ctx, std::max(b_len, 1LL), trace_child(t, "mu", "|b|"));
    trace_set(t, "d + mu(|b|)", out);
    return out;
  }
  if (auto o = detail::use_override(ctx, "c_circ", t)) return *o;
  Bound out = from_rat(3 * ctx.delta()) +
              mu(ctx, std::max(b_len, 1LL), trace_child(t, "mu", "|b|")) +
              w_len + from_int(1);
  trace_set(t, "3d + mu(|b|) + |w| + 1", out);
  return out;
}

inline Bound cancellation_c(const BoundContext& ctx, CancellationMode mode,
                            long long b_len, long long w_len = 0,
                            Trace* t = nullptr) {
  return cancellation_c(ctx, mode, b_len, from_int(w_len), t);
}

// f(|g|,|v|) with |g^p v g^q| > |g^{p+q}| - f. Tree: 2|v| + 2|g| (each side
// of v eats at most |v| letters of the powers, the witness twice). General:
// f = |v| + 2M', M' = 2(N'+1)(mu+1), N' = #B(2d + 2mu + |v|).
inline Bound cor_length_f(const BoundContext& ctx, long long g_len,
                          const Bound& v_len, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "cor_length_f", t)) return *o;
  if (ctx.tree()) {
    Bound out = from_int(2) * v_len + from_int(2 * g_len);
    trace_set(t, "tree: 2|v| + 2|g|", out);
    return out;
  }
  Bound m = mu(ctx, g_len, trace_child(t, "mu", "|g|"));
  Bound nprime =
      ball_size_bound(ctx, from_rat(2 * ctx.delta()) + from_int(2) * m + v_len,
                      trace_child(t, "ball", "2d+2mu+|v|"));
  Bound mprime = from_int(2) * (nprime + from_int(1)) * (m + from_int(1));
  Bound out = v_len + from_int(2) * mprime;
  trace_set(t, "|v| + 2M', M' = 2(N'+1)(mu+1), N' = #B(2d+2mu+|v|)", out);
  return out;
}

// Least k0 such that |g^k| > threshold for all k >= k0, from the
// quasi-geodesic lower bound |g^k| >= k/lambda - epsilon (tree: |g^k| >= k).
inline Bound power_growth_k0(const BoundContext& ctx, long long g_len,
                             const Bound& threshold, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "k0_growth", t)) return *o;
  if (threshold.sat) return Bound::saturated();
  if (ctx.tree()) {
    Bound out{Frac(threshold.v.floor() + 1)};
    if (out.v < Frac(1)) out.v = Frac(1);
    trace_set(t, "tree: floor(T) + 1", out);
    return out;
  }
  QgParams p = quasigeodesic_params(ctx, g_len, trace_child(t, "qg", "|g|"));
  if (p.lambda.sat || p.epsilon.sat) return Bound::saturated();
  Bound raw = p.lambda * (threshold + p.epsilon + from_int(1));
  Bound out{Frac(raw.v.ceil())};
  if (out.v < Frac(1)) out.v = Frac(1);
  trace_set(t, "ceil(lambda (T + epsilon + 1))", out);
  return out;
}

struct MConstParts {
  Bound m;
  Bound rho;  // radius of the neighborhood of h the conjugators e_k land in
  Bound k0;
};

// M(|b|,|w|): if b* ~ b and w b*^k ~ w b^k for k = 1..M, the two coupled
// conjugator equations admit a witness. General assembly: M = 1 + k0 +
// #B(rho), where rho bounds |h e_k^-1| along the quasi-geodesic comparison
// of the two factorizations. Tree shortcut: the minimal conjugators line up
// along the core corridor, so the ball count collapses to the 2*rho + 1
// corridor positions.
inline MConstParts M_const_parts(const BoundContext& ctx, long long b_len,
                                 const Bound& w_len, Trace* t = nullptr) {
  if (b_len < 1) throw std::invalid_argument("b_len must be >= 1");
  Bound c = cancellation_c(ctx, CancellationMode::circ, b_len, w_len,
                           trace_child(t, "c_circ", "|b|,|w|"));
  Bound f = cor_length_f(ctx, b_len, w_len,
                         trace_child(t, "cor_length_f", "|b|,|w|"));
  Bound threshold = c + c + from_rat(ctx.delta()) + f;
  Bound k0 =
      power_growth_k0(ctx, b_len, threshold, trace_child(t, "k0", "|b|,T"));
  Bound eps_path = from_int(8) * c + from_rat(4 * ctx.delta());
  Bound R = qg_stability_R(ctx, from_int(1), eps_path,
                           trace_child(t, "R", "1,8c+4d"));
  Bound E = w_len + f + from_int(8) * c + from_rat(4 * ctx.delta()) +
            from_int(2) * mu(ctx, b_len, trace_child(t, "mu", "|b|"));
  Bound rho = from_int(2) * R + E;
  Bound count;
  std::string count_formula;
  if (ctx.tree()) {
    count = from_int(2) * bfloor(rho) + from_int(1);
    count_formula = "tree: 1 + k0 + (2 rho + 1)";
  } else {
    count = ball_size_bound(ctx, rho, trace_child(t, "ball", "rho"));
    count_formula = "1 + k0 + #B(rho)";
  }
  Bound m = from_int(1) + k0 + count;
  if (auto o = detail::use_override(ctx, "M", t)) m = *o;
  trace_set(t, count_formula + ", rho = 2R + |w| + f + 8c + 4d + 2mu", m);
  return MConstParts{m, rho, k0};
}

inline Bound M_const(const BoundContext& ctx, long long b_len,
                     const Bound& w_len, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "M", t)) return *o;
  return M_const_parts(ctx, b_len, w_len, t).m;
}

inline Bound M_const(const BoundContext& ctx, long long b_len, long long w_len,
                     Trace* t = nullptr) {
  return M_const(ctx, b_len, from_int(w_len), t);
}

// C(|g|) from the cyclic-subgroup case: C = max(1, C0 + #B(hbar + mu + 2c +
// d)) with c the easy1 constant and C0 the power-growth threshold exponent.
inline Bound C_cyclic(const BoundContext& ctx, long long g_len,
                      Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "C_cyclic", t)) return *o;
  Bound c = cancellation_c(ctx, CancellationMode::easy1, g_len, 0LL,
                           trace_child(t, "c_easy1", "|g|"));
  Bound c0 = power_growth_k0(ctx, g_len, c + c + from_rat(ctx.delta()),
                             trace_child(t, "k0", "|g|,2c+d"));
  Bound radius = hbar(ctx, g_len, trace_child(t, "hbar", "|g|")) +
                 mu(ctx, g_len, trace_child(t, "mu", "|g|")) + c + c +
                 from_rat(ctx.delta());
  Bound out =
      c0 + ball_size_bound(ctx, radius, trace_child(t, "ball", "hbar+mu+2c+d"));
  out = bmax(out, from_int(1));
  trace_set(t, "max(1, C0 + #B(hbar+mu+2c+d))", out);
  return out;
}

// k0(|a|,|b|) making a b^k root-free for k > k0. Cited from external work;
// tree mode uses |a| + |b| + 2, theory mode requires an override.
inline Bound minasyan_k0(const BoundContext& ctx, const Bound& a_len,
                         const Bound& b_len, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "minasyan_k0", t)) return *o;
  if (ctx.tree()) {
    Bound out = a_len + b_len + from_int(2);
    trace_set(t, "tree: |a| + |b| + 2", out);
    return out;
  }
  throw std::invalid_argument(
      "minasyan_k0 requires an override for delta > 0 (no closed form)");
}

// Multiplier from the free-powers proposition: n with <a^n, b^n> free of
// rank <= 2. Tree: 1 (noncyclic two-generator subgroups of free groups are
// free of rank 2 already).
inline Bound free_power_multiplier(const BoundContext& ctx,
                                   const Bound& sum_lens, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "free_power", t)) return *o;
  if (ctx.tree()) {
    trace_set(t, "tree: 1", from_int(1));
    return from_int(1);
  }
  Bound out = from_int(1) + ball_size_bound(ctx, from_rat(4 * ctx.delta()) + sum_lens,
                                            trace_child(t, "ball", "4d+sum"));
  trace_set(t, "assembled: 1 + #B(4d + sum)", out);
  return out;
}

// Least r0 with ||g^k|| > 15 delta for all k >= r0, via ||g^k|| >= |g^k| -
// 2r(|g|). Tree: 1.
inline Bound norm_growth_r0(const BoundContext& ctx, long long g_len,
                            Trace* t = nullptr) {
  if (ctx.tree()) {
    trace_set(t, "tree: 1", from_int(1));
    return from_int(1);
  }
  Bound threshold =
      from_rat(15 * ctx.delta()) +
      from_int(2) * r_const(ctx, g_len, trace_child(t, "r", "|g|"));
  return power_growth_k0(ctx, g_len, threshold,
                         trace_child(t, "k0", "|g|,15d+2r"));
}

struct LTwoParts {
  Bound value;
  Bound n_ball;     // N = #B(hbar(|b|))
  Bound w_max_len;  // longest word in the probe set W
};

// L(|a|,|b|) for the two-word theorem: L >= max{2 + 6N^2, max_W M(|b|,|w|)},
// N = #B(hbar(|b|)), W = {(a^i b)^{2j} : i <= 1+N, j <= 1+3N^2}, preceded by
// the norm-growth and free-power replacements; the cyclic-subgroup case
// contributes C_cyclic.
inline LTwoParts L_two_parts(const BoundContext& ctx, long long a_len,
                             long long b_len, Trace* t = nullptr) {
  if (a_len < 1 || b_len < 1)
    throw std::invalid_argument("lengths must be >= 1");
  Bound r0 = bmax(norm_growth_r0(ctx, a_len, trace_child(t, "r0", "|a|")),
                  norm_growth_r0(ctx, b_len, trace_child(t, "r0", "|b|")));
  Bound p = free_power_multiplier(ctx, from_int(a_len + b_len),
                                  trace_child(t, "free_power", "|a|+|b|"));
  Bound pre = r0 * p;
  const long long cap = 1LL << 24;
  if (pre.sat || pre.v * Frac(std::max(a_len, b_len)) > Frac(cap))
    return LTwoParts{Bound::saturated(), Bound::saturated(),
                     Bound::saturated()};
  // element lengths after replacing a,b by their pre-th powers
  long long a2 = (pre.v * Frac(a_len)).ceil().convert_to<long long>();
  long long b2 = (pre.v * Frac(b_len)).ceil().convert_to<long long>();
  Bound n = ball_size_bound(ctx, hbar(ctx, b2, trace_child(t, "hbar", "|b|")),
                            trace_child(t, "ball", "hbar(|b|)"));
  Bound core;
  Bound wmax;
  if (n.sat) {
    core = Bound::saturated();
    wmax = Bound::saturated();
  } else {
    wmax = from_int(2) * (from_int(1) + from_int(3) * n * n) *
           ((from_int(1) + n) * from_int(a2) + from_int(b2));
    core = from_int(2) + from_int(6) * n * n;
    core = bmax(core, M_const(ctx, b2, wmax, trace_child(t, "M", "|b|,maxW")));
  }
  core = bmax(core, C_cyclic(ctx, std::max(a2, b2),
                             trace_child(t, "C_cyclic", "max(|a|,|b|)")));
  Bound out = pre * core;
  if (auto o = detail::use_override(ctx, "L_two", t)) out = *o;
  trace_set(t, "r0 p max{2+6N^2, max_W M(|b|,|w|), C_cyclic}", out);
  return LTwoParts{out, n, wmax};
}

inline Bound L_two(const BoundContext& ctx, long long a_len, long long b_len,
                   Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "L_two", t)) return *o;
  return L_two_parts(ctx, a_len, b_len, t).value;
}

// The n-word constant, assembled from the coset-intersection argument:
// pairwise two-word constants at the lengths produced by the free-power and
// root-free basis changes, times the word-length multipliers those changes
// cost. Monotone in sum_lens.
inline Bound C_main(const BoundContext& ctx, long long sum_lens, long long n,
                    Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "C_main", t)) return *o;
  if (sum_lens < 1 || n < 1)
    throw std::invalid_argument("C_main needs sum_lens >= 1, n >= 1");
  if (n == 1) {
    trace_set(t, "n = 1: criterion length 1 suffices", from_int(1));
    return from_int(1);
  }
  // every component has length >= 1, so any single component and hence any
  // pair argument is bounded by sum_lens - (n-1)
  long long pair_len = std::max(sum_lens - (n - 1), 1LL);
  Bound pair1 =
      L_two(ctx, pair_len, pair_len, trace_child(t, "L_two", "pair,pair"));
  Bound m = free_power_multiplier(ctx, from_int(2 * pair_len),
                                  trace_child(t, "free_power", "2 pair"));
  const long long cap = 1LL << 24;
  if (m.sat || pair1.sat || m.v * Frac(pair_len) > Frac(cap))
    return Bound::saturated();
  long long base = (m.v * Frac(pair_len)).ceil().convert_to<long long>();
  Bound k = minasyan_k0(ctx, from_int(base), from_int(base),
                        trace_child(t, "minasyan_k0", "m.pair,m.pair")) +
            from_int(1);
  if (k.sat || k.v * (Frac(1) + k.v * (Frac(1) + k.v)) * Frac(base) > Frac(cap))
    return Bound::saturated();
  // lengths of the root-free basis b1 = a1 a2^k, b2 = a2 (a1 a2^k)^k
  long long kk = k.v.ceil().convert_to<long long>();
  long long b1 = base * (1 + kk);
  long long b2 = base * (1 + kk + kk * kk);
  Bound kprime = minasyan_k0(ctx, from_int(b1), from_int(b2),
                             trace_child(t, "minasyan_k0", "|b1|,|b2|")) +
                 from_int(1);
  if (kprime.sat) return Bound::saturated();
  long long kp = kprime.v.ceil().convert_to<long long>();
  if (b2 > cap / (1 + kp + kp * kp)) return Bound::saturated();
  long long c1 = b1 * (1 + kp);
  long long c2 = b2 * (1 + kp + kp * kp);
  Bound pair2 = L_two(ctx, std::max(b1, b2), std::max(c1, c2),
                      trace_child(t, "L_two", "enlarged"));
  Bound out =
      m * (from_int(1) + k) * (from_int(1) + kprime) * bmax(pair1, pair2);
  trace_set(t,
            "assembled: m (1+k)(1+k') max(L_two(pair,pair), L_two(enlarged))",
            out);
  return out;
}

// The pointwise-inner constant: C_main at the generator tuple.
inline Bound C_inner(const BoundContext& ctx, Trace* t = nullptr) {
  if (auto o = detail::use_override(ctx, "C_inner", t)) return *o;
  Bound out = C_main(ctx, ctx.sharp_s(), ctx.sharp_s(),
                     trace_child(t, "C_main", "#S,#S"));
  trace_set(t, "C_main(#S, #S)", out);
  return out;
}

}  // namespace uniconj::bounds
