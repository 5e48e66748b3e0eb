#include "qo/mapdoc.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

#include "qo/invariants.hpp"

namespace qo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rational parse_entry(const json& v, const std::string& where) {
  if (v.is_number_integer())
    return Rational((long)v.get<long long>());
  if (v.is_string()) {
    auto r = Rational::parse(v.get<std::string>());
    if (r) return *r;
    throw MapDocError("unparsable rational at " + where + ": \"" +
                      v.get<std::string>() + "\"");
  }
  throw MapDocError("expected integer or \"p/q\" string at " + where);
}

}  // namespace

QuadMap parse_map_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw MapDocError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MapDocError("document must be a JSON object");
  if (!doc.contains("field") || !doc["field"].is_string())
    throw MapDocError("missing \"field\" (\"C\" or \"R\")");
  std::string f = doc["field"].get<std::string>();
  if (f != "C" && f != "R") throw MapDocError("\"field\" must be \"C\" or \"R\"");
  if (!doc.contains("components") || !doc["components"].is_array())
    throw MapDocError("missing \"components\" array");
  const auto& comps = doc["components"];
  if (comps.empty()) throw MapDocError("\"components\" must be nonempty");
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() ||
        doc["n"].get<long long>() != (long long)comps.size())
      throw MapDocError("\"n\" disagrees with the number of components");
  }
  std::vector<QuadComponent> cs;
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto& row = comps[i];
    std::string where = "components[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != 6)
      throw MapDocError(where + " must be a 6-element array [a,b,c,d,e,g]");
    Rational v[6];
    for (size_t k = 0; k < 6; ++k)
      v[k] = parse_entry(row[k], where + "[" + std::to_string(k) + "]");
    cs.push_back(QuadComponent{v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return QuadMap::make(f == "C" ? Field::C : Field::R, std::move(cs));
}

std::string serialize_map_document(const QuadMap& F) {
  ordered_json j;
  j["field"] = F.field == Field::C ? "C" : "R";
  j["n"] = F.n;
  j["components"] = ordered_json::array();
  for (const auto& c : F.comps) {
    ordered_json row = ordered_json::array();
    for (const Rational* r : {&c.a, &c.b, &c.c, &c.d, &c.e, &c.g})
      row.push_back(r->str());
    j["components"].push_back(row);
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Expression syntax

namespace {

struct ExprParser {
  std::string_view s;
  size_t pos = 0;
  int component = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "component " << component + 1 << ", offset " << pos << ": " << msg;
    throw MapDocError(os.str());
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  Poly parse_expr() {
    Poly acc = parse_term();
    while (true) {
      if (eat('+')) acc += parse_term();
      else if (eat('-')) acc -= parse_term();
      else return acc;
    }
  }
  Poly parse_term() {
    Poly acc = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        acc = acc * parse_factor();
      } else if (eat('/')) {
        Rational d = parse_number();
        if (d.is_zero()) fail("division by zero");
        acc = acc.scaled(d.inverse());
      } else if (pos < s.size() &&
                 (s[pos] == 'x' || s[pos] == 'y' || s[pos] == '(' ||
                  std::isdigit((unsigned char)s[pos]))) {
        acc = acc * parse_factor();  // juxtaposition
      } else {
        return acc;
      }
    }
  }
  Poly parse_factor() {
    Poly base = parse_base();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) fail("expected an exponent");
      int e = std::stoi(std::string(s.substr(start, pos - start)));
      Poly acc = Poly::constant(1);
      for (int i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }
  Rational parse_number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (start == pos) fail("expected a number");
    Int num(std::string(s.substr(start, pos - start)));
    if (eat('/')) {
      skip_ws();
      size_t dstart = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (dstart == pos) fail("expected a denominator");
      Int den(std::string(s.substr(dstart, pos - dstart)));
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num, Int(1));
  }
  Poly parse_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly inner = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos;
      return Poly::variable(VX);
    }
    if (c == 'y') {
      ++pos;
      return Poly::variable(VY);
    }
    if (std::isdigit((unsigned char)c)) return Poly::constant(parse_number());
    if (c == '-') {
      ++pos;
      return -parse_base();
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

QuadMap parse_expr_map(const std::string& expr, Field field) {
  // split on top-level commas
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : expr) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::vector<Poly> comps;
  for (size_t i = 0; i < parts.size(); ++i) {
    ExprParser p{parts[i], 0, (int)i};
    Poly poly = p.parse_expr();
    p.skip_ws();
    if (p.pos != parts[i].size()) p.fail("trailing characters");
    if (poly.total_degree() > 2)
      throw MapDocError("component " + std::to_string(i + 1) +
                        ": degree above 2");
    comps.push_back(poly);
  }
  return QuadMap::from_polys(field, comps);
}

// ---------------------------------------------------------------------------
// Report rendering

namespace {

ordered_json invariant_vector_json(const InvariantVector& v) {
  ordered_json j;
  j["dim_a"] = v.dim_a;
  j["dim_q"] = v.dim_q;
  j["mu"] = v.mu.finite ? ordered_json(v.mu.value) : ordered_json("infinite");
  switch (v.crit_kind) {
    case CritKind::Empty: j["critical"] = "empty"; break;
    case CritKind::Plane: j["critical"] = "plane"; break;
    case CritKind::Finite: {
      ordered_json c;
      c["kind"] = "finite";
      c["partition"] = v.crit_partition;
      j["critical"] = c;
      break;
    }
    case CritKind::Curve: {
      ordered_json c;
      c["kind"] = "curve";
      c["degree"] = v.crit_curve_deg.first;
      c["squarefree_degree"] = v.crit_curve_deg.second;
      j["critical"] = c;
      break;
    }
  }
  if (v.si_deg) {
    if (v.si_deg->first == 0) {
      j["si"] = "empty";
    } else {
      ordered_json s;
      s["degree"] = v.si_deg->first;
      s["squarefree_degree"] = v.si_deg->second;
      j["si"] = s;
    }
  } else {
    j["si"] = nullptr;
  }
  j["orbit_dim"] = v.orbit_dim_original;
  j["orbit_dim_reduced"] = v.orbit_dim_reduced;
  if (v.real) {
    ordered_json r;
    if (v.real->real_critical_count)
      r["real_critical_count"] = *v.real->real_critical_count;
    if (v.real->critical_conic) {
      const char* names[] = {"line",      "ellipse",        "empty-ellipse",
                             "hyperbola", "parabola",       "real-line-pair",
                             "complex-line-pair", "double-line"};
      r["critical_conic"] = names[(int)*v.real->critical_conic];
    }
    if (v.real->form_type) {
      const char* names[] = {"zero", "square", "real-product", "irreducible"};
      r["binary_form_type"] = names[(int)*v.real->form_type];
    }
    if (v.real->pencil) {
      const char* names[] = {"two-real-degenerate", "none-real-degenerate",
                             "shared-factor"};
      r["pencil_signature"] = names[(int)*v.real->pencil];
    }
    j["real_signatures"] = r;
  }
  return j;
}

}  // namespace

std::string classification_json(const QuadMap& F, const ClassificationReport& rep,
                                bool timings, double elapsed_ms) {
  ordered_json j;
  j["label"] = rep.label.str();
  j["ambient_n"] = rep.label.ambient_n;
  j["field"] = rep.label.field == Field::C ? "C" : "R";
  j["invariants"] = invariant_vector_json(rep.invariants);
  j["topological_type"] = rep.topological_type;
  j["expected_orbit_dim"] = rep.expected_orbit_dim;
  if (timings) j["elapsed_ms"] = elapsed_ms;
  return j.dump(2) + "\n";
}

std::string invariants_json(const QuadMap& F, uint64_t seed) {
  ordered_json j;
  j["map"] = ordered_json::parse(serialize_map_document(F));
  j["dim_a"] = dim_affine(F);
  j["dim_q"] = dim_quadratic(F);
  auto crit = critical_scheme(F);
  switch (crit.kind) {
    case CritKind::Empty: j["critical"] = "empty"; break;
    case CritKind::Plane: j["critical"] = "plane"; break;
    case CritKind::Curve: {
      ordered_json c;
      c["kind"] = "curve";
      c["poly"] = crit.curve_poly.str();
      j["critical"] = c;
      break;
    }
    case CritKind::Finite: {
      ordered_json c;
      c["kind"] = "finite";
      c["total_multiplicity"] = crit.total_multiplicity;
      c["points"] = ordered_json::array();
      for (const auto& p : crit.rational_points) {
        ordered_json pt;
        pt["x"] = p.x.str();
        pt["y"] = p.y.str();
        pt["multiplicity"] = p.mult;
        c["points"].push_back(pt);
      }
      if (crit.irrational_count) {
        ordered_json irr;
        irr["count"] = crit.irrational_count;
        irr["multiplicity_each"] = crit.irrational_mult_each;
        irr["eliminant_x"] = crit.elim_x.str("x");
        irr["eliminant_y"] = crit.elim_y.str("y");
        c["beyond_rationals"] = irr;
      }
      j["critical"] = c;
      break;
    }
  }
  auto mu = topological_degree(F, seed);
  j["mu"] = mu.finite ? ordered_json(mu.value) : ordered_json("infinite");
  if (mu.is_one()) {
    auto si = self_intersection(F, seed);
    if (si.empty) {
      j["si"] = "empty";
    } else {
      ordered_json s;
      s["eliminant"] = si.eliminant.str();
      s["factors"] = ordered_json::array();
      for (const auto& f : si.factors) {
        ordered_json fj;
        fj["factor"] = f.factor.str();
        fj["multiplicity"] = f.multiplicity;
        fj["real_curve"] = f.real_curve;
        s["factors"].push_back(fj);
      }
      j["si"] = s;
    }
  } else if (mu.finite) {
    auto fold = fold_locus(F);
    if (fold) j["fold_locus"] = fold->str();
  }
  j["orbit_dim"] = orbit_dimension(F);
  if (F.field == Field::R) {
    auto sig = real_signatures(F);
    InvariantVector v;
    v.real = sig;
    v.dim_a = dim_affine(F);
    v.dim_q = dim_quadratic(F);
    auto full = invariant_vector_json(v);
    j["real_signatures"] = full.contains("real_signatures")
                               ? full["real_signatures"]
                               : ordered_json::object();
  }
  return j.dump(2) + "\n";
}

std::string witness_json(const QuadMap& F, const WitnessReport& rep,
                         const std::string& label) {
  ordered_json j;
  j["label"] = label;
  j["route"] = rep.route;
  j["exact"] = rep.exact;
  j["residual"] = rep.residual;
  auto render_exact = [](const AffineMap& m) {
    ordered_json out;
    out["matrix"] = ordered_json::array();
    for (const auto& row : m.A) {
      ordered_json r = ordered_json::array();
      for (const auto& v : row) r.push_back(v.str());
      out["matrix"].push_back(r);
    }
    out["translation"] = ordered_json::array();
    for (const auto& v : m.t) out["translation"].push_back(v.str());
    return out;
  };
  auto render_complex = [](const ComplexAffineMap& m) {
    ordered_json out;
    out["matrix"] = ordered_json::array();
    for (const auto& row : m.A) {
      ordered_json r = ordered_json::array();
      for (const auto& v : row) r.push_back({v.real(), v.imag()});
      out["matrix"].push_back(r);
    }
    out["translation"] = ordered_json::array();
    for (const auto& v : m.t) out["translation"].push_back({v.real(), v.imag()});
    return out;
  };
  if (rep.exact && rep.exact_pair) {
    j["L"] = render_exact(rep.exact_pair->L);
    j["R"] = render_exact(rep.exact_pair->R);
  } else if (rep.approx_pair) {
    j["L"] = render_complex(rep.approx_pair->L);
    j["R"] = render_complex(rep.approx_pair->R);
  }
  return j.dump(2) + "\n";
}

}  // namespace qo
