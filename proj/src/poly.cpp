#include "qo/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qo {

const char* const kVarNames[kNumVars] = {"x", "y", "x2", "y2"};

bool MonoOrder::less(const Mono& a, const Mono& b) const {
  for (const auto& block : blocks_) {
    int da = 0, db = 0;
    for (Var v : block) {
      da += a.e[v];
      db += b.e[v];
    }
    if (da != db) return da < db;
    // graded reverse lex inside the block: larger = smaller power of the
    // *last* variable wins ties, i.e. compare exponents from the back,
    // the one with the larger trailing exponent is smaller.
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      if (a.e[*it] != b.e[*it]) return a.e[*it] > b.e[*it];
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// UPoly

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff((int)i) + o.coeff((int)i);
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff((int)i) - o.coeff((int)i);
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const { return scaled(Rational(-1)); }

UPoly UPoly::scaled(const Rational& r) const {
  if (r.is_zero()) return UPoly();
  std::vector<Rational> c = c_;
  for (auto& x : c) x *= r;
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational((long)i);
  return UPoly(std::move(r));
}

Rational UPoly::eval(const Rational& a) const {
  Rational r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
  UPoly rem = *this;
  std::vector<Rational> q(std::max<int>(degree() - d.degree() + 1, 0), Rational(0));
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    Rational f = rem.lc() / d.lc();
    int k = rem.degree() - d.degree();
    q[k] = f;
    std::vector<Rational> sub(k + d.c_.size(), Rational(0));
    for (size_t i = 0; i < d.c_.size(); ++i) sub[k + i] = d.c_[i] * f;
    rem = rem - UPoly(std::move(sub));
  }
  return {UPoly(std::move(q)), rem};
}

std::pair<Rational, UPoly> UPoly::primitive() const {
  if (is_zero()) return {Rational(0), UPoly()};
  Int den_lcm = 1, num_gcd = 0;
  for (const auto& r : c_) {
    if (r.is_zero()) continue;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.den().get_mpz_t());
  }
  for (const auto& r : c_) {
    if (r.is_zero()) continue;
    Int scaled_num = r.num() * (den_lcm / r.den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  if (lc().sign() < 0) content = -content;
  std::vector<Rational> c = c_;
  for (auto& x : c) x /= content;
  return {content, UPoly(std::move(c))};
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    Rational a = c_[i];
    if (!first) os << (a.sign() > 0 ? " + " : " - ");
    else if (a.sign() < 0) os << "-";
    first = false;
    Rational mag = a.abs();
    if (i == 0 || !mag.is_one()) os << mag.str();
    if (i > 0) {
      if (!mag.is_one()) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

UPoly upoly_squarefree(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return UPoly::constant(1);
  UPoly g = upoly_gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

std::vector<std::pair<UPoly, int>> upoly_squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() == 0) return out;
  // Musser's algorithm.
  UPoly a = upoly_gcd(p, p.derivative());
  UPoly b = p.divmod(a).first.monic();
  int k = 1;
  while (b.degree() > 0) {
    UPoly c = upoly_gcd(b, a);
    UPoly q = b.divmod(c).first.monic();
    if (q.degree() > 0) out.emplace_back(q, k);
    a = a.divmod(c).first;
    b = c;
    ++k;
  }
  return out;
}

namespace {

int sign_variations(const std::vector<UPoly>& seq,
                    const std::optional<Rational>& at, int inf_sign) {
  // inf_sign = -1 for -inf, +1 for +inf when `at` is empty
  int prev = 0, var = 0;
  for (const auto& f : seq) {
    if (f.is_zero()) continue;
    int s;
    if (at) {
      s = f.eval(*at).sign();
    } else {
      s = f.lc().sign();
      if (inf_sign < 0 && (f.degree() % 2 == 1)) s = -s;
    }
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    const UPoly& a = seq[seq.size() - 2];
    const UPoly& b = seq.back();
    UPoly r = a.divmod(b).second;
    seq.push_back(-r);
  }
  seq.pop_back();
  return seq;
}

}  // namespace

int upoly_sturm_count(const UPoly& p, std::optional<Rational> lo,
                      std::optional<Rational> hi) {
  if (p.is_zero()) throw std::domain_error("sturm count of zero polynomial");
  UPoly sf = upoly_squarefree(p);
  if (sf.degree() == 0) return 0;
  auto seq = sturm_sequence(sf);
  int vlo = sign_variations(seq, lo, -1);
  int vhi = sign_variations(seq, hi, +1);
  return vlo - vhi;
}

// ---------------------------------------------------------------------------
// Rational root finding: roots mod a large prime, lifted back to Q by
// rational reconstruction and verified exactly.  A root u/v is recovered as
// long as |u|,|v| <= sqrt(q/2) (about 2^30 here), far above anything this
// problem produces; candidates are always verified so a miss can only make a
// point be reported through its minimal polynomial instead of coordinates.

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 q) { return (u64)((u128)a * b % q); }
u64 powmod(u64 a, u64 e, u64 q) {
  u64 r = 1;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 q) { return powmod(a, q - 2, q); }

using MPoly = std::vector<u64>;  // dense, index = degree, no trailing zeros

void mtrim(MPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

MPoly mmul(const MPoly& a, const MPoly& b, u64 q) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], q)) % q;
  mtrim(r);
  return r;
}

MPoly mmod(MPoly a, const MPoly& b, u64 q) {
  u64 inv = invmod(b.back(), q);
  while (a.size() >= b.size()) {
    u64 f = mulmod(a.back(), inv, q);
    size_t k = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      u64 sub = mulmod(f, b[i], q);
      a[k + i] = (a[k + i] + q - sub) % q;
    }
    mtrim(a);
  }
  return a;
}

MPoly mgcd(MPoly a, MPoly b, u64 q) {
  while (!b.empty()) {
    MPoly r = mmod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv = invmod(a.back(), q);
    for (auto& c : a) c = mulmod(c, inv, q);
  }
  return a;
}

MPoly mpowmod_x(u64 e, const MPoly& mod, u64 q) {
  // x^e mod (mod, q)
  MPoly result{1}, base{0, 1};
  base = mmod(base, mod, q);
  while (e) {
    if (e & 1) result = mmod(mmul(result, base, q), mod, q);
    base = mmod(mmul(base, base, q), mod, q);
    e >>= 1;
  }
  return result;
}

MPoly mpow_poly(MPoly b, u64 e, const MPoly& mod, u64 q) {
  MPoly result{1};
  b = mmod(std::move(b), mod, q);
  while (e) {
    if (e & 1) result = mmod(mmul(result, b, q), mod, q);
    b = mmod(mmul(b, b, q), mod, q);
    e >>= 1;
  }
  return result;
}

void split_roots(const MPoly& g, u64 q, std::vector<u64>& roots, u64& trial) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    // x + g0 (monic) -> root = -g0
    roots.push_back((q - g[0]) % q);
    return;
  }
  for (int attempts = 0; attempts < 256; ++attempts) {
    u64 a = ++trial;
    MPoly w = mpow_poly({a, 1}, (q - 1) / 2, g, q);
    if (w.empty()) continue;
    w[0] = (w[0] + q - 1) % q;
    mtrim(w);
    if (w.empty()) continue;
    MPoly d = mgcd(g, w, q);
    if (d.size() > 1 && d.size() < g.size()) {
      // quotient g/d (both monic)
      MPoly quot;
      {
        MPoly rem = g;
        u64 inv = invmod(d.back(), q);
        quot.assign(g.size() - d.size() + 1, 0);
        while (rem.size() >= d.size()) {
          u64 f = mulmod(rem.back(), inv, q);
          size_t k = rem.size() - d.size();
          quot[k] = f;
          for (size_t i = 0; i < d.size(); ++i) {
            u64 sub = mulmod(f, d[i], q);
            rem[k + i] = (rem[k + i] + q - sub) % q;
          }
          mtrim(rem);
        }
        mtrim(quot);
      }
      split_roots(d, q, roots, trial);
      split_roots(quot, q, roots, trial);
      return;
    }
  }
  // pathological; give up on this prime (caller verifies all candidates)
}

std::vector<u64> roots_mod(const std::vector<Int>& coeffs, u64 q) {
  Int qz((unsigned long)q);
  MPoly p(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Int r = coeffs[i] % qz;
    if (r < 0) r += qz;
    p[i] = mpz_get_ui(r.get_mpz_t());
  }
  mtrim(p);
  if (p.size() <= 1) return {};
  // make monic
  u64 inv = invmod(p.back(), q);
  for (auto& c : p) c = mulmod(c, inv, q);
  MPoly h = mpowmod_x(q, p, q);  // x^q mod p
  // h - x
  if (h.size() < 2) h.resize(2, 0);
  h[1] = (h[1] + q - 1) % q;
  mtrim(h);
  MPoly g = h.empty() ? p : mgcd(p, h, q);
  std::vector<u64> roots;
  u64 trial = 0;
  split_roots(g, q, roots, trial);
  return roots;
}

std::optional<Rational> rational_reconstruct(u64 r, u64 q) {
  // find u/v = r mod q with |u|, |v| <= sqrt(q/2)
  Int qz((unsigned long)q), rz((unsigned long)r);
  Int bound = sqrt(qz / 2);
  Int r0 = qz, r1 = rz, t0 = 0, t1 = 1;
  while (r1 > bound) {
    if (r1 == 0) return std::nullopt;
    Int quot = r0 / r1;
    Int r2 = r0 - quot * r1;
    Int t2 = t0 - quot * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  return Rational(r1, t1);
}

}  // namespace

std::vector<Rational> upoly_rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational roots of zero polynomial");
  std::vector<Rational> out;
  UPoly sf = upoly_squarefree(p);
  if (sf.degree() == 0) return out;
  // strip root zero
  size_t shift = 0;
  auto cs = sf.coeffs();
  while (shift < cs.size() && cs[shift].is_zero()) ++shift;
  if (shift > 0) {
    out.push_back(Rational(0));
    cs.erase(cs.begin(), cs.begin() + shift);
    sf = UPoly(cs);
    if (sf.degree() == 0) return out;
  }
  std::vector<Int> zc;
  {
    auto [content, prim] = sf.primitive();
    (void)content;
    for (const auto& r : prim.coeffs()) zc.push_back(r.num());  // integral after primitive()
  }
  static const u64 primes[2] = {2305843009213693951ull /* 2^61-1 */,
                                9223372036854775783ull /* largest prime < 2^63 */};
  size_t found_zero = out.size();
  for (u64 q : primes) {
    for (u64 r : roots_mod(zc, q)) {
      auto cand = rational_reconstruct(r, q);
      if (!cand) continue;
      if (sf.eval(*cand).is_zero() &&
          std::find(out.begin(), out.end(), *cand) == out.end())
        out.push_back(*cand);
    }
    if ((int)(out.size() - found_zero) == sf.degree()) break;  // all roots found
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Rational, Rational>> upoly_isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("isolate roots of zero polynomial");
  std::vector<std::pair<Rational, Rational>> out;
  UPoly sf = upoly_squarefree(p);
  if (sf.degree() == 0) return out;
  Rational bound = 1;
  for (int i = 0; i < sf.degree(); ++i) {
    Rational t = (sf.coeff(i) / sf.lc()).abs();
    if (t > bound) bound = t;
  }
  bound += 1;
  auto seq = sturm_sequence(sf);
  auto count = [&](const Rational& a, const Rational& b) {
    return sign_variations(seq, a, 0) - sign_variations(seq, b, 0);
  };
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int k = count(a, b);
    if (k == 0) continue;
    if (k == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rational mid = (a + b) / 2;
    if (sf.eval(mid).is_zero()) {
      out.emplace_back(mid, mid);
      // shave the exact root off both halves
      Rational eps = (b - a) / 1024;
      while (sf.eval(mid - eps).is_zero() || sf.eval(mid + eps).is_zero()) eps /= 2;
      work.emplace_back(a, mid - eps);
      work.emplace_back(mid + eps, b);
    } else {
      work.emplace_back(a, mid);
      work.emplace_back(mid, b);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(const Rational& r) {
  if (r.is_zero()) return Poly();
  return Poly({{Mono::one(), r}});
}

Poly Poly::variable(Var v) { return Poly({{Mono::var(v), Rational(1)}}); }

Poly Poly::term(const Mono& m, const Rational& r) {
  if (r.is_zero()) return Poly();
  return Poly({{m, r}});
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::map<uint32_t, std::pair<Mono, Rational>> acc;
  for (auto& [m, c] : ts) {
    auto it = acc.find(m.key());
    if (it == acc.end())
      acc.emplace(m.key(), std::make_pair(m, c));
    else
      it->second.second += c;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [k, mc] : acc)
    if (!mc.second.is_zero()) out.emplace_back(mc.first, mc.second);
  return Poly(std::move(out));
}

Rational Poly::constant_value() const {
  if (t_.empty()) return Rational(0);
  if (t_.size() == 1 && t_[0].first.is_one()) return t_[0].second;
  throw std::logic_error("Poly: constant_value of non-constant");
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.deg());
  return d;
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.deg_in(v));
  return d;
}

Rational Poly::coeff(const Mono& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m.key(),
                             [](const Term& t, uint32_t k) { return t.first.key() < k; });
  if (it != t_.end() && it->first.key() == m.key()) return it->second;
  return Rational(0);
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    uint32_t ka = t_[i].first.key(), kb = o.t_[j].first.key();
    if (ka < kb)
      out.push_back(t_[i++]);
    else if (kb < ka)
      out.push_back(o.t_[j++]);
    else {
      Rational s = t_[i].second + o.t_[j].second;
      if (!s.is_zero()) out.emplace_back(t_[i].first, s);
      ++i;
      ++j;
    }
  }
  while (i < t_.size()) out.push_back(t_[i++]);
  while (j < o.t_.size()) out.push_back(o.t_[j++]);
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Term> out = t_;
  for (auto& [m, c] : out) c = -c;
  return Poly(std::move(out));
}

Poly Poly::scaled(const Rational& r) const {
  if (r.is_zero()) return Poly();
  std::vector<Term> out = t_;
  for (auto& [m, c] : out) c *= r;
  return Poly(std::move(out));
}

Poly Poly::mul_term(const Mono& m, const Rational& r) const {
  if (r.is_zero()) return Poly();
  std::vector<Term> out = t_;
  for (auto& [mm, c] : out) {
    mm = mm * m;
    c *= r;
  }
  return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::map<uint32_t, std::pair<Mono, Rational>> acc;
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : o.t_) {
      Mono m = ma * mb;
      auto it = acc.find(m.key());
      if (it == acc.end())
        acc.emplace(m.key(), std::make_pair(m, ca * cb));
      else
        it->second.second += ca * cb;
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [k, mc] : acc)
    if (!mc.second.is_zero()) out.emplace_back(mc.first, mc.second);
  return Poly(std::move(out));
}

Poly Poly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    if (m.e[v] == 0) continue;
    Mono d = m;
    d.e[v] -= 1;
    out.emplace_back(d, c * Rational(m.e[v]));
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(const std::array<std::optional<Poly>, kNumVars>& repl) const {
  // cache powers of each replacement
  std::array<std::vector<Poly>, kNumVars> powers;
  for (int v = 0; v < kNumVars; ++v)
    if (repl[v]) powers[v] = {Poly::constant(1)};
  Poly out;
  for (const auto& [m, c] : t_) {
    Poly term = Poly::constant(c);
    Mono left = Mono::one();
    for (int v = 0; v < kNumVars; ++v) {
      if (!repl[v]) {
        left.e[v] = m.e[v];
        continue;
      }
      auto& pw = powers[v];
      while ((int)pw.size() <= m.e[v]) pw.push_back(pw.back() * *repl[v]);
      if (m.e[v] > 0) term = term * pw[m.e[v]];
    }
    out += term.mul_term(left, Rational(1));
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& p) const {
  std::array<std::optional<Poly>, kNumVars> repl;
  repl[v] = p;
  return substitute(repl);
}

Rational Poly::eval2(const Rational& x, const Rational& y) const {
  Rational out = 0;
  for (const auto& [m, c] : t_) {
    if (m.e[VX2] || m.e[VY2])
      throw std::logic_error("Poly::eval2 on polynomial with auxiliary variables");
    out += c * x.pow(m.e[VX]) * y.pow(m.e[VY]);
  }
  return out;
}

const Poly::Term& Poly::leading_term(const MonoOrder& ord) const {
  if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
  const Term* best = &t_[0];
  for (const auto& t : t_)
    if (ord.less(best->first, t.first)) best = &t;
  return *best;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& [m, c] : t_) {
    Mono rest = m;
    int k = rest.e[v];
    rest.e[v] = 0;
    out[k] += Poly::term(rest, c);
  }
  return out;
}

Poly Poly::from_coeffs_in(Var v, const std::vector<Poly>& coeffs) {
  Poly out;
  for (size_t k = 0; k < coeffs.size(); ++k)
    out += coeffs[k].mul_term(Mono::var(v, (int)k), Rational(1));
  return out;
}

UPoly Poly::to_upoly(Var v) const {
  std::vector<Rational> c(degree_in(v) + 1, Rational(0));
  for (const auto& [m, co] : t_) {
    for (int i = 0; i < kNumVars; ++i)
      if (i != v && m.e[i] != 0)
        throw std::logic_error("Poly::to_upoly: polynomial not univariate");
    c[m.e[v]] = co;
  }
  return UPoly(std::move(c));
}

Poly Poly::from_upoly(const UPoly& u, Var v) {
  std::vector<Term> ts;
  for (int i = 0; i <= u.degree(); ++i)
    if (!u.coeff(i).is_zero()) ts.emplace_back(Mono::var(v, i), u.coeff(i));
  return from_terms(std::move(ts));
}

std::pair<Rational, Poly> Poly::primitive() const {
  if (is_zero()) return {Rational(0), Poly()};
  Int den_lcm = 1, num_gcd = 0;
  for (const auto& [m, c] : t_)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  for (const auto& [m, c] : t_) {
    Int n = c.num() * (den_lcm / c.den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  if (t_.back().second.sign() < 0) content = -content;  // canonical-key leading coeff > 0
  return {content, scaled(content.inverse())};
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c.sign() > 0 ? " + " : " - ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rational mag = c.abs();
    bool printed = false;
    if (m.is_one() || !mag.is_one()) {
      os << mag.str();
      printed = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (m.e[v] == 0) continue;
      if (printed) os << "*";
      os << kVarNames[v];
      if (m.e[v] > 1) os << "^" << int(m.e[v]);
      printed = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact division, resultants, gcds

Poly divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (a.is_zero()) return Poly();
  static const MonoOrder ord = MonoOrder::degrevlex({VX, VY, VX2, VY2});
  Poly rem = a, quot;
  const auto& [lm, lc] = b.leading_term(ord);
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term(ord);
    if (!lm.divides(rm))
      throw std::domain_error("divide_exact: not divisible");
    Mono qm = lm.quotient_into(rm);
    Rational qc = rc / lc;
    quot += Poly::term(qm, qc);
    rem -= b.mul_term(qm, qc);
  }
  return quot;
}

namespace {

// Fraction-free determinant over the polynomial ring (Bareiss).
Poly det_bareiss(std::vector<std::vector<Poly>> m) {
  const size_t n = m.size();
  if (n == 0) return Poly::constant(1);
  Poly prev = Poly::constant(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return Poly();
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(num, prev);
      }
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

Poly resultant(const Poly& p, const Poly& q, Var var) {
  if (p.is_zero() || q.is_zero())
    throw std::domain_error("resultant: zero polynomial input");
  int dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp == 0 && dq == 0)
    throw std::domain_error("resultant: both inputs constant in variable");
  if (dp == 0) {
    // res(c, q) = c^deg(q)
    Poly r = Poly::constant(1);
    for (int i = 0; i < dq; ++i) r = r * p;
    return r;
  }
  if (dq == 0) {
    Poly r = Poly::constant(1);
    for (int i = 0; i < dp; ++i) r = r * q;
    return r;
  }
  auto pc = p.coeffs_in(var), qc = q.coeffs_in(var);
  const int n = dp + dq;
  std::vector<std::vector<Poly>> syl(n, std::vector<Poly>(n));
  for (int r = 0; r < dq; ++r)
    for (int i = 0; i <= dp; ++i) syl[r][r + (dp - i)] = pc[i];
  for (int r = 0; r < dp; ++r)
    for (int i = 0; i <= dq; ++i) syl[dq + r][r + (dq - i)] = qc[i];
  return det_bareiss(std::move(syl));
}

namespace {

// content of p with respect to `main`: gcd in Q[other] of the coefficients
UPoly main_content(const Poly& p, Var main, Var other) {
  UPoly g;
  for (const auto& c : p.coeffs_in(main)) {
    if (c.is_zero()) continue;
    g = upoly_gcd(g, c.to_upoly(other));
    if (g.degree() == 0) return UPoly::constant(1);
  }
  return g;
}

// pseudo-remainder of a by b in `main` over Q[other]
Poly pseudo_rem(Poly a, const Poly& b, Var main) {
  int db = b.degree_in(main);
  Poly lb = b.coeffs_in(main)[db];
  while (!a.is_zero() && a.degree_in(main) >= db) {
    int da = a.degree_in(main);
    Poly la = a.coeffs_in(main)[da];
    a = a * lb - b * la.mul_term(Mono::var(main, da - db), Rational(1));
  }
  return a;
}

}  // namespace

Poly biv_gcd(const Poly& a0, const Poly& b0, Var main, Var other) {
  for (const Poly* p : {&a0, &b0})
    for (const auto& [m, c] : p->terms())
      for (int v = 0; v < kNumVars; ++v)
        if (v != main && v != other && m.e[v])
          throw std::logic_error("biv_gcd: more than two active variables");
  if (a0.is_zero()) return b0.primitive_part();
  if (b0.is_zero()) return a0.primitive_part();
  UPoly ca = main_content(a0, main, other), cb = main_content(b0, main, other);
  Poly a = divide_exact(a0, Poly::from_upoly(ca, other));
  Poly b = divide_exact(b0, Poly::from_upoly(cb, other));
  UPoly cont = upoly_gcd(ca, cb);
  if (a.degree_in(main) < b.degree_in(main)) std::swap(a, b);
  while (true) {
    if (b.is_zero()) break;
    if (b.degree_in(main) == 0) {
      // nonzero content-free element of Q[other]: primitive gcd is trivial
      return Poly::from_upoly(cont, other).primitive_part();
    }
    Poly r = pseudo_rem(a, b, main);
    a = b;
    if (r.is_zero()) {
      b = Poly();
    } else {
      b = divide_exact(r, Poly::from_upoly(main_content(r, main, other), other));
    }
  }
  Poly g = divide_exact(a, Poly::from_upoly(main_content(a, main, other), other));
  return (Poly::from_upoly(cont, other) * g).primitive_part();
}

namespace {

Var other_active_var(const Poly& p, Var main) {
  for (int v = 0; v < kNumVars; ++v)
    if (v != main && p.degree_in((Var)v) > 0) return (Var)v;
  return main == VX ? VY : VX;
}

}  // namespace

Poly squarefree_part(const Poly& p, Var v) {
  if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (p.degree_in(v) == 0) return Poly::constant(1);
  Var other = other_active_var(p, v);
  Poly g = biv_gcd(p, p.derivative(v), v, other);
  return divide_exact(p, g).primitive_part();
}

std::vector<std::pair<Poly, int>> multiplicity_factorization(const Poly& p, Var v) {
  if (p.is_zero()) throw std::domain_error("factorization of zero polynomial");
  std::vector<std::pair<Poly, int>> out;
  if (p.degree_in(v) == 0) return out;
  Var other = other_active_var(p, v);
  Poly a = biv_gcd(p, p.derivative(v), v, other);
  Poly b = divide_exact(p, a).primitive_part();
  int k = 1;
  while (b.degree_in(v) > 0) {
    Poly c = biv_gcd(b, a, v, other);
    Poly q = divide_exact(b, c).primitive_part();
    if (q.degree_in(v) > 0) out.emplace_back(q, k);
    a = divide_exact(a, c);
    b = c;
    ++k;
  }
  return out;
}

std::vector<std::pair<Poly, int>> plane_squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("decomposition of zero polynomial");
  auto gcd3 = [](const Poly& f) {
    Poly fx = f.derivative(VX), fy = f.derivative(VY);
    Poly g;
    if (fx.is_zero())
      g = fy;
    else if (fy.is_zero())
      g = fx;
    else
      g = biv_gcd(fx, fy, VX, VY);
    if (g.is_zero()) return Poly::constant(1);  // f constant
    return biv_gcd(f, g, VX, VY);
  };
  // filtration P_k = prod q^{max(m-k,0)}
  std::vector<Poly> filt{p.primitive_part()};
  while (filt.back().total_degree() > 0) filt.push_back(gcd3(filt.back()));
  // S_k = P_k / P_{k+1} = prod of factors with multiplicity > k
  std::vector<Poly> s;
  for (size_t i = 0; i + 1 < filt.size(); ++i)
    s.push_back(divide_exact(filt[i], filt[i + 1]).primitive_part());
  std::vector<std::pair<Poly, int>> out;
  for (size_t k = 0; k < s.size(); ++k) {
    Poly level = (k + 1 < s.size()) ? divide_exact(s[k], s[k + 1]).primitive_part() : s[k];
    if (level.total_degree() > 0) out.emplace_back(level, (int)k + 1);
  }
  return out;
}

Poly plane_squarefree_part(const Poly& p) {
  Poly out = Poly::constant(1);
  for (const auto& [f, m] : plane_squarefree_decomposition(p)) out = out * f;
  return out.primitive_part();
}

int sturm_count(const Poly& p, Var v, std::optional<Rational> lo,
                std::optional<Rational> hi) {
  return upoly_sturm_count(p.to_upoly(v), std::move(lo), std::move(hi));
}

}  // namespace qo
