#include "qo/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qo {

namespace {

struct GPoly {
  Poly p;
  Mono lm;
  int sugar = 0;
};

GPoly make_gpoly(const Poly& p, const MonoOrder& ord, int sugar) {
  const auto& lt = p.leading_term(ord);
  return GPoly{p.scaled(lt.second.inverse()), lt.first, sugar};
}

// Full normal form of p modulo the (monic) polys in G.
Poly normal_form_impl(Poly h, const std::vector<GPoly>& g, const MonoOrder& ord) {
  Poly r;
  while (!h.is_zero()) {
    const auto& [hm, hc] = h.leading_term(ord);
    bool reduced = false;
    for (const auto& gi : g) {
      if (gi.lm.divides(hm)) {
        h -= gi.p.mul_term(gi.lm.quotient_into(hm), hc);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      r += Poly::term(hm, hc);
      h -= Poly::term(hm, hc);
    }
  }
  return r;
}

}  // namespace

GroebnerBasis GroebnerBasis::compute(std::vector<Poly> gens, MonoOrder ord) {
  std::vector<GPoly> g;
  for (const auto& f : gens)
    if (!f.is_zero()) g.push_back(make_gpoly(f, ord, f.total_degree()));

  struct Pair {
    int i, j, sugar, lcm_deg;
    bool operator<(const Pair& o) const {
      if (sugar != o.sugar) return sugar > o.sugar;  // min-heap by sugar
      if (lcm_deg != o.lcm_deg) return lcm_deg > o.lcm_deg;
      if (j != o.j) return j > o.j;
      return i > o.i;
    }
  };
  std::vector<Pair> queue;
  std::set<std::pair<int, int>> handled;
  auto push_pairs_with = [&](int j) {
    for (int i = 0; i < j; ++i) {
      Mono l = Mono::lcm(g[i].lm, g[j].lm);
      int sugar = std::max(g[i].sugar + l.deg() - g[i].lm.deg(),
                           g[j].sugar + l.deg() - g[j].lm.deg());
      queue.push_back(Pair{i, j, sugar, l.deg()});
      std::push_heap(queue.begin(), queue.end());
    }
  };
  for (int j = 0; j < (int)g.size(); ++j) push_pairs_with(j);

  while (!queue.empty()) {
    std::pop_heap(queue.begin(), queue.end());
    Pair pr = queue.back();
    queue.pop_back();
    handled.insert({pr.i, pr.j});
    const GPoly &a = g[pr.i], &b = g[pr.j];
    Mono l = Mono::lcm(a.lm, b.lm);
    // Buchberger's first criterion: coprime leading monomials.
    if (l.deg() == a.lm.deg() + b.lm.deg()) continue;
    // Chain criterion.
    bool skip = false;
    for (int k = 0; k < (int)g.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!g[k].lm.divides(l)) continue;
      auto key1 = std::minmax(pr.i, k), key2 = std::minmax(pr.j, k);
      if (handled.count({key1.first, key1.second}) &&
          handled.count({key2.first, key2.second}))
        skip = true;
    }
    if (skip) continue;
    Poly s = a.p.mul_term(a.lm.quotient_into(l), Rational(1)) -
             b.p.mul_term(b.lm.quotient_into(l), Rational(1));
    Poly r = normal_form_impl(std::move(s), g, ord);
    if (!r.is_zero()) {
      g.push_back(make_gpoly(r, ord, pr.sugar));
      push_pairs_with((int)g.size() - 1);
    }
  }

  // Minimalize: drop generators whose leading monomial is divisible by
  // another one's.
  std::vector<GPoly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (g[j].lm.divides(g[i].lm) && !(g[i].lm == g[j].lm && j > i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Interreduce tails.
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = normal_form_impl(minimal[i].p, others, ord);
    if (!r.is_zero()) minimal[i] = make_gpoly(r, ord, minimal[i].sugar);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const GPoly& a, const GPoly& b) { return ord.less(a.lm, b.lm); });
  std::vector<Poly> out;
  out.reserve(minimal.size());
  for (auto& gp : minimal) out.push_back(std::move(gp.p));
  return GroebnerBasis(std::move(out), std::move(ord));
}

Poly GroebnerBasis::normal_form(const Poly& p) const {
  std::vector<GPoly> g;
  g.reserve(basis_.size());
  for (const auto& f : basis_) g.push_back(make_gpoly(f, ord_, 0));
  return normal_form_impl(p, g, ord_);
}

bool GroebnerBasis::contains_one() const {
  return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

std::optional<long> GroebnerBasis::quotient_dimension(const std::vector<Var>& vars) const {
  if (contains_one()) return 0;
  if (basis_.empty()) return std::nullopt;
  std::vector<Mono> lms;
  for (const auto& f : basis_) lms.push_back(f.leading_term(ord_).first);
  // finite iff every variable has a pure power among the leading monomials
  std::vector<int> bound(vars.size(), -1);
  for (size_t k = 0; k < vars.size(); ++k) {
    for (const auto& m : lms) {
      if (m.deg_in(vars[k]) == m.deg()) {  // pure power of vars[k]
        int e = m.deg_in(vars[k]);
        if (bound[k] < 0 || e < bound[k]) bound[k] = e;
      }
    }
    if (bound[k] < 0) return std::nullopt;
  }
  // count standard monomials by direct enumeration
  long count = 0;
  std::vector<int> exp(vars.size(), 0);
  while (true) {
    Mono m;
    for (size_t k = 0; k < vars.size(); ++k) m.e[vars[k]] = (uint8_t)exp[k];
    bool divisible = false;
    for (const auto& lm : lms)
      if (lm.divides(m)) {
        divisible = true;
        break;
      }
    if (!divisible) ++count;
    size_t k = 0;
    while (k < vars.size()) {
      if (++exp[k] < bound[k]) break;
      exp[k] = 0;
      ++k;
    }
    if (k == vars.size()) break;
  }
  return count;
}

std::vector<Poly> GroebnerBasis::eliminate(const std::vector<Var>& drop) const {
  std::vector<Poly> out;
  for (const auto& f : basis_) {
    bool free = true;
    for (Var v : drop)
      if (f.degree_in(v) > 0) free = false;
    if (free) out.push_back(f);
  }
  return out;
}

Ideal groebner_basis(const Ideal& ideal) {
  auto gb = GroebnerBasis::compute(ideal.gens, ideal.order);
  return Ideal{gb.basis(), ideal.order};
}

std::optional<long> quotient_dimension(const Ideal& ideal, const std::vector<Var>& vars) {
  return GroebnerBasis::compute(ideal.gens, ideal.order).quotient_dimension(vars);
}

Poly plane_eliminant(const std::vector<Poly>& gens, Var keep, Var drop) {
  auto gb = GroebnerBasis::compute(gens, MonoOrder::elim({drop}, {keep}));
  Poly best;
  for (const auto& f : gb.eliminate({drop})) {
    if (f.is_zero()) continue;
    if (best.is_zero() || f.degree_in(keep) < best.degree_in(keep)) best = f;
  }
  return best.is_zero() ? Poly() : best.primitive_part();
}

int local_multiplicity(const std::vector<Poly>& gens, const Rational& px,
                       const Rational& py) {
  for (const auto& f : gens)
    if (!f.eval2(px, py).is_zero())
      throw std::domain_error("local_multiplicity: point is not a zero of the ideal");
  Poly mx = Poly::variable(VX) - Poly::constant(px);
  Poly my = Poly::variable(VY) - Poly::constant(py);
  std::vector<Poly> xpows{Poly::constant(1)}, ypows{Poly::constant(1)};
  for (int i = 1; i <= 8; ++i) {
    xpows.push_back(xpows.back() * mx);
    ypows.push_back(ypows.back() * my);
  }
  long prev = -1;
  for (int n = 1; n <= 8; ++n) {
    std::vector<Poly> aug = gens;
    for (int i = 0; i <= n; ++i) aug.push_back(xpows[i] * ypows[n - i]);
    auto gb = GroebnerBasis::compute(aug, MonoOrder::degrevlex({VX, VY}));
    auto dim = gb.quotient_dimension({VX, VY});
    if (!dim) throw std::logic_error("local_multiplicity: unexpectedly infinite");
    if (*dim == prev) return (int)prev;
    prev = *dim;
  }
  return (int)prev;
}

long distinct_point_count(const std::vector<Poly>& gens) {
  Poly gx = plane_eliminant(gens, VX, VY);
  Poly gy = plane_eliminant(gens, VY, VX);
  if (gx.is_zero() || gy.is_zero())
    throw std::domain_error("distinct_point_count: ideal not zero-dimensional");
  std::vector<Poly> rad = gens;
  rad.push_back(Poly::from_upoly(upoly_squarefree(gx.to_upoly(VX)), VX));
  rad.push_back(Poly::from_upoly(upoly_squarefree(gy.to_upoly(VY)), VY));
  auto dim = GroebnerBasis::compute(rad, MonoOrder::degrevlex({VX, VY}))
                 .quotient_dimension({VX, VY});
  if (!dim) throw std::logic_error("distinct_point_count: radical not zero-dimensional");
  return *dim;
}

// ---------------------------------------------------------------------------
// Colon-and-eliminate

namespace {

// Change coordinates (x2,y2) -> (x-u, y-v), reusing the x2/y2 slots for u,v.
// The diagonal becomes <u, v> and all the quotient machinery is linear
// algebra against one Groebner basis.
std::vector<Poly> to_difference_coords(const std::vector<Poly>& gens) {
  std::array<std::optional<Poly>, kNumVars> repl;
  repl[VX2] = Poly::variable(VX) - Poly::variable(VX2);
  repl[VY2] = Poly::variable(VY) - Poly::variable(VY2);
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    Poly t = g.substitute(repl);
    if (!t.is_zero()) out.push_back(t);
  }
  return out;
}

std::vector<Mono> monos_up_to(int cap, bool plane_only) {
  std::vector<Mono> out;
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b) {
      if (plane_only) {
        Mono m;
        m.e[VX] = (uint8_t)a;
        m.e[VY] = (uint8_t)b;
        out.push_back(m);
      } else {
        for (int c = 0; a + b + c <= cap; ++c)
          for (int d = 0; a + b + c + d <= cap; ++d) {
            Mono m;
            m.e[VX] = (uint8_t)a;
            m.e[VY] = (uint8_t)b;
            m.e[VX2] = (uint8_t)c;
            m.e[VY2] = (uint8_t)d;
            out.push_back(m);
          }
      }
    }
  std::sort(out.begin(), out.end(),
            [](const Mono& a, const Mono& b) {
              if (a.deg() != b.deg()) return a.deg() < b.deg();
              return a.key() < b.key();
            });
  return out;
}

// Nullspace basis of the linear conditions NF(m*u) = NF(m*v) = 0 over the
// candidate monomials.  Returns coefficient vectors.
std::vector<std::vector<Rational>> colon_nullspace(const GroebnerBasis& gb,
                                                   const std::vector<Mono>& candidates) {
  const Poly u = Poly::variable(VX2), v = Poly::variable(VY2);
  std::map<uint32_t, size_t> row_of;
  std::vector<std::vector<Rational>> cols;  // per candidate: stacked (u|v) rows
  std::vector<std::pair<Poly, Poly>> nfs;
  nfs.reserve(candidates.size());
  for (const auto& m : candidates) {
    Poly mu = gb.normal_form(u.mul_term(m, Rational(1)));
    Poly mv = gb.normal_form(v.mul_term(m, Rational(1)));
    for (const auto& [mm, c] : mu.terms()) row_of.emplace(mm.key(), 0);
    for (const auto& [mm, c] : mv.terms()) row_of.emplace(mm.key(), 0);
    nfs.emplace_back(std::move(mu), std::move(mv));
  }
  size_t nrows = 0;
  for (auto& [k, idx] : row_of) idx = nrows++;
  const size_t ncols = candidates.size();
  std::vector<std::vector<Rational>> mat(2 * nrows, std::vector<Rational>(ncols, Rational(0)));
  for (size_t c = 0; c < ncols; ++c) {
    for (const auto& [mm, co] : nfs[c].first.terms()) mat[row_of[mm.key()]][c] = co;
    for (const auto& [mm, co] : nfs[c].second.terms())
      mat[nrows + row_of[mm.key()]][c] = co;
  }
  // exact Gauss; find nullspace
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(ncols, false);
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < mat.size(); ++c) {
    size_t pr = r;
    while (pr < mat.size() && mat[pr][c].is_zero()) ++pr;
    if (pr == mat.size()) continue;
    std::swap(mat[pr], mat[r]);
    Rational inv = mat[r][c].inverse();
    for (size_t j = c; j < ncols; ++j) mat[r][j] *= inv;
    for (size_t i = 0; i < mat.size(); ++i) {
      if (i == r || mat[i][c].is_zero()) continue;
      Rational f = mat[i][c];
      for (size_t j = c; j < ncols; ++j) mat[i][j] -= f * mat[r][j];
    }
    pivot_col_of_row.push_back((int)c);
    is_pivot[c] = true;
    ++r;
  }
  std::vector<std::vector<Rational>> null_basis;
  for (size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> vec(ncols, Rational(0));
    vec[c] = 1;
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
      vec[pivot_col_of_row[i]] = -mat[i][c];
    null_basis.push_back(std::move(vec));
  }
  return null_basis;
}

Poly vec_to_poly(const std::vector<Rational>& vec, const std::vector<Mono>& candidates) {
  std::vector<Poly::Term> ts;
  for (size_t i = 0; i < vec.size(); ++i)
    if (!vec[i].is_zero()) ts.emplace_back(candidates[i], vec[i]);
  return Poly::from_terms(std::move(ts));
}

}  // namespace

namespace detail {

ColonEliminateResult colon_and_eliminate_capped(const std::vector<Poly>& fiber_gens,
                                                int degree_cap) {
  ColonEliminateResult res;
  auto diff = to_difference_coords(fiber_gens);
  if (diff.empty()) {
    res.kind = ColonEliminateResult::Kind::Zero;  // zero ideal: colon is zero
    return res;
  }
  auto gb = GroebnerBasis::compute(diff, MonoOrder::degrevlex({VX, VY, VX2, VY2}));
  if (gb.contains(Poly::variable(VX2)) && gb.contains(Poly::variable(VY2))) {
    res.kind = ColonEliminateResult::Kind::Unit;
    return res;
  }
  // smallest degree with a nonzero solution
  for (int d = 1; d <= degree_cap; ++d) {
    auto cands = monos_up_to(d, /*plane_only=*/true);
    auto null_basis = colon_nullspace(gb, cands);
    if (null_basis.empty()) continue;
    Poly gen = vec_to_poly(null_basis[0], cands).primitive_part();
    // principality: at the cap the solution space must be exactly the
    // multiples of gen
    auto cap_cands = monos_up_to(degree_cap, true);
    auto cap_null = colon_nullspace(gb, cap_cands);
    long expected = (long)(degree_cap - gen.total_degree() + 1) *
                    (degree_cap - gen.total_degree() + 2) / 2;
    if ((long)cap_null.size() != expected)
      throw NotPrincipalError("colon_and_eliminate: eliminated ideal not principal");
    res.kind = ColonEliminateResult::Kind::Curve;
    res.generator = gen;
    return res;
  }
  res.kind = ColonEliminateResult::Kind::Zero;
  return res;
}

}  // namespace detail

namespace {

void check_diagonal(const Ideal& diagonal) {
  const Poly dx = Poly::variable(VX) - Poly::variable(VX2);
  const Poly dy = Poly::variable(VY) - Poly::variable(VY2);
  bool ok = diagonal.gens.size() == 2 &&
            ((diagonal.gens[0] == dx && diagonal.gens[1] == dy) ||
             (diagonal.gens[0] == dy && diagonal.gens[1] == dx));
  if (!ok)
    throw std::domain_error("colon machinery requires the diagonal ideal <x-x2, y-y2>");
}

}  // namespace

ColonEliminateResult colon_and_eliminate(const Ideal& fiber_ideal, const Ideal& diagonal) {
  check_diagonal(diagonal);
  return detail::colon_and_eliminate_capped(fiber_ideal.gens, 4);
}

std::optional<Poly> colon_fold_locus(const Ideal& fiber_ideal, const Ideal& diagonal) {
  check_diagonal(diagonal);
  auto diff = to_difference_coords(fiber_ideal.gens);
  if (diff.empty()) return std::nullopt;
  auto gb = GroebnerBasis::compute(diff, MonoOrder::degrevlex({VX, VY, VX2, VY2}));
  const int cap = 4;
  auto cands = monos_up_to(cap, /*plane_only=*/false);
  auto null_basis = colon_nullspace(gb, cands);
  std::array<std::optional<Poly>, kNumVars> at_zero;
  at_zero[VX2] = Poly::zero();
  at_zero[VY2] = Poly::zero();
  Poly g;
  for (const auto& vec : null_basis) {
    Poly img = vec_to_poly(vec, cands).substitute(at_zero);
    if (img.is_zero()) continue;
    g = g.is_zero() ? img : biv_gcd(g, img, VX, VY);
    if (g.is_constant()) return std::nullopt;  // locus empty
  }
  if (g.is_zero() || g.is_constant() || g.total_degree() == 0) return std::nullopt;
  return g.primitive_part();
}

}  // namespace qo
