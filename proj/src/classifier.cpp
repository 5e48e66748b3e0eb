#include "qo/classifier.hpp"

#include <algorithm>
#include <sstream>

namespace qo {

AmbientReduction reduce_ambient(const QuadMap& F) {
  const int n = F.n;
  // Row-reduce the n x 6 coefficient matrix, pivoting on the nonconstant
  // columns first so that a component surviving only as a constant is also
  // cleared (by the translation part of L).
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(6));
  for (int i = 0; i < n; ++i)
    m[i] = {F.comps[i].a, F.comps[i].b, F.comps[i].c,
            F.comps[i].d, F.comps[i].e, F.comps[i].g};
  AffineMap L = AffineMap::identity(n);
  auto row_scale = [&](int r, const Rational& f) {
    for (auto& v : m[r]) v *= f;
    for (auto& v : L.A[r]) v *= f;
    L.t[r] *= f;
  };
  auto row_axpy = [&](int dst, const Rational& f, int src) {
    for (int j = 0; j < 6; ++j) m[dst][j] += f * m[src][j];
    for (int j = 0; j < n; ++j) L.A[dst][j] += f * L.A[src][j];
    L.t[dst] += f * L.t[src];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(m[a], m[b]);
    std::swap(L.A[a], L.A[b]);
    std::swap(L.t[a], L.t[b]);
  };
  int rank = 0;
  for (int c = 0; c < 5 && rank < n; ++c) {  // nonconstant columns only
    int p = rank;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) continue;
    row_swap(p, rank);
    row_scale(rank, m[rank][c].inverse());
    for (int i = 0; i < n; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      row_axpy(i, -m[i][c], rank);
    }
    ++rank;
  }
  // clear leftover constants below the pivot rows via the translation
  for (int i = rank; i < n; ++i) {
    L.t[i] -= m[i][5];
    m[i][5] = 0;
  }
  QuadMap reduced_full = act(AffinePair{L, AffineMap::identity(2)}, F);
  int n_red = std::max(3, rank);
  QuadMap out;
  out.field = F.field;
  out.n = n_red;
  for (int i = 0; i < n_red; ++i)
    out.comps.push_back(i < n ? reduced_full.comps[i] : QuadComponent{});
  return AmbientReduction{std::move(out), std::move(L)};
}

namespace {

// degree of the product of the distinct irreducible factors (factors living
// in only one of the two variables count too, so this is not the same as a
// one-variable squarefree part)
int plane_squarefree_degree(const Poly& p) {
  int deg = 0;
  for (const auto& [f, m] : plane_squarefree_decomposition(p))
    deg += f.total_degree();
  return deg;
}

InvariantVector compute_invariants(const QuadMap& original, const QuadMap& red,
                                   uint64_t seed) {
  InvariantVector v;
  v.dim_a = dim_affine(red);
  v.dim_q = dim_quadratic(red);
  v.mu = topological_degree(red, seed);
  auto crit = critical_scheme(red);
  v.crit_kind = crit.kind;
  if (crit.kind == CritKind::Finite) v.crit_partition = crit.multiplicity_partition();
  if (crit.kind == CritKind::Curve) {
    v.crit_curve_deg = {crit.curve_poly.total_degree(),
                        plane_squarefree_degree(crit.curve_poly)};
  }
  if (v.mu.is_one()) {
    auto si = self_intersection(red, seed);
    if (si.empty) {
      v.si_deg = {0, 0};
    } else {
      v.si_deg = {si.eliminant.total_degree(),
                  plane_squarefree_degree(si.eliminant)};
    }
  }
  v.orbit_dim_reduced = orbit_dimension(red);
  v.orbit_dim_original =
      original.n == red.n ? v.orbit_dim_reduced : orbit_dimension(original);
  if (red.field == Field::R) v.real = real_signatures(red);
  return v;
}

// the stored complex key of a record, in the same shape
struct RowKey {
  int dim_a, dim_q;
  bool mu_finite;
  long mu;
  CritKind kind;
  std::vector<int> partition;
  std::pair<int, int> curve_deg;
  std::optional<std::pair<int, int>> si_deg;
  int orbit_dim;
};

RowKey row_key(const OrbitRecord& r) {
  RowKey k;
  k.dim_a = r.dim_a;
  k.dim_q = r.dim_q;
  k.mu_finite = r.mu.cls == MuClass::Finite;
  k.mu = r.mu.value;
  k.kind = r.crit.kind;
  k.partition = r.crit.partition;
  k.curve_deg = {0, 0};
  if (r.crit.kind == CritKind::Curve) {
    k.curve_deg = {r.crit.curve.total_degree(),
                   plane_squarefree_degree(r.crit.curve)};
  }
  if (k.mu_finite && k.mu == 1) {
    if (r.si.kind == SIDescriptor::Kind::Empty) {
      k.si_deg = {0, 0};
    } else if (r.si.kind == SIDescriptor::Kind::Curve) {
      k.si_deg = {r.si.eliminant.total_degree(),
                  plane_squarefree_degree(r.si.eliminant)};
    }
  }
  k.orbit_dim = r.orbit_dim_min;
  return k;
}

bool key_matches(const RowKey& row, const InvariantVector& v) {
  if (row.dim_a != v.dim_a || row.dim_q != v.dim_q) return false;
  if (row.mu_finite != v.mu.finite) return false;
  if (row.mu_finite && row.mu != v.mu.value) return false;
  if (row.kind != v.crit_kind) return false;
  if (row.kind == CritKind::Finite && row.partition != v.crit_partition)
    return false;
  if (row.kind == CritKind::Curve && row.curve_deg != v.crit_curve_deg)
    return false;
  if (row.si_deg.has_value() != v.si_deg.has_value()) return false;
  if (row.si_deg && *row.si_deg != *v.si_deg) return false;
  if (row.orbit_dim != v.orbit_dim_reduced) return false;
  return true;
}

LabelId resolve_real_split(const OrbitRecord& rec, const InvariantVector& v) {
  if (!rec.real_split) return rec.label;
  const RealSplit& s = *rec.real_split;
  const RealSignatures& sig = *v.real;
  auto pick = [&](int which) { return which == 0 ? rec.label : s.primed; };
  switch (s.test) {
    case RealSplit::Test::CritCount:
      if (!sig.real_critical_count)
        throw UnclassifiableError("real split needs a critical point count");
      for (int w : {0, 1})
        if (*sig.real_critical_count == s.expect_count[w]) return pick(w);
      break;
    case RealSplit::Test::Conic:
      if (!sig.critical_conic)
        throw UnclassifiableError("real split needs a critical conic type");
      for (int w : {0, 1})
        if (*sig.critical_conic == s.expect_conic[w]) return pick(w);
      break;
    case RealSplit::Test::BinaryForm:
      if (!sig.form_type)
        throw UnclassifiableError("real split needs a binary form type");
      for (int w : {0, 1})
        if (*sig.form_type == s.expect_form[w]) return pick(w);
      break;
    case RealSplit::Test::Pencil:
      if (!sig.pencil)
        throw UnclassifiableError("real split needs a pencil signature");
      for (int w : {0, 1})
        if (*sig.pencil == s.expect_pencil[w]) return pick(w);
      break;
  }
  throw UnclassifiableError("real signature matches neither side of the split " +
                            label_name(rec.label) + "/" + label_name(s.primed));
}

}  // namespace

ClassificationReport classify(const QuadMap& F, uint64_t seed) {
  if (F.n < 1) throw std::domain_error("classify: target dimension must be >= 1");
  auto red = reduce_ambient(F);
  InvariantVector v = compute_invariants(F, red.reduced, seed);

  std::vector<const OrbitRecord*> matches;
  for (const auto& r : orbit_records()) {
    if (label_is_primed(r.label)) continue;  // complex rows carry the key
    if (r.n_min != red.reduced.n) continue;
    if (key_matches(row_key(r), v)) matches.push_back(&r);
  }
  if (matches.size() != 1) {
    std::ostringstream os;
    os << "classify: " << matches.size() << " table rows match " << F.str();
    throw UnclassifiableError(os.str());
  }
  const OrbitRecord& rec = *matches[0];

  LabelId final_label = rec.label;
  if (F.field == Field::R) final_label = resolve_real_split(rec, v);

  ClassificationReport rep;
  rep.label = OrbitLabel{final_label, F.n, F.field};
  rep.invariants = std::move(v);
  rep.topological_type = topological_type(rep.label);
  rep.expected_orbit_dim = qo::expected_orbit_dim(final_label, F.n);
  if (rep.invariants.orbit_dim_original != rep.expected_orbit_dim) {
    std::ostringstream os;
    os << "classify: computed orbit dimension "
       << rep.invariants.orbit_dim_original << " of " << F.str()
       << " disagrees with the closed form " << rep.expected_orbit_dim
       << " for " << label_name(final_label);
    throw UnclassifiableError(os.str());
  }
  return rep;
}

int topological_type(const OrbitLabel& label) {
  const auto& rec = lookup(label.base);
  if (label.field == Field::C) {
    if (label_is_primed(label.base))
      throw std::domain_error("primed labels are real-only");
    return rec.topo_type_complex;
  }
  return rec.topo_type_real;
}

int expected_orbit_dim(const OrbitLabel& label) {
  return expected_orbit_dim(label.base, label.ambient_n);
}

}  // namespace qo
