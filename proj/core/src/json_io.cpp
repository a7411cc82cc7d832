#include "pfmirror/json_io.hpp"

#include <cmath>
#include <limits>

#include "pfmirror/errors.hpp"

namespace pfm::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with key \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  return a;
}

int positive_int(const json& j, const char* what) {
  const std::int64_t v = int_from_json(j);
  if (v < 1 || v > std::numeric_limits<int>::max()) {
    throw InputError(std::string(what) + " must be a positive integer, got " + std::to_string(v));
  }
  return static_cast<int>(v);
}

template <class F>
auto read_vector(const json& j, int n, const char* what, F read) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  if (n >= 0 && static_cast<int>(j.size()) != n) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(j.size()) + ", expected " +
                         std::to_string(n));
  }
  std::vector<decltype(read(j))> out;
  for (const auto& e : j) out.push_back(read(e));
  return out;
}

// Rows of a rectangular array of arrays.
template <class S, class F>
Matrix<S> read_matrix(const json& j, const char* what, F read) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw InputError(std::string(what) + " must be an array of rows");
  const std::size_t cols = j[0].size();
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw DimensionError(std::string(what) + " is ragged");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = read(j[i][k]);
  }
  return m;
}

}  // namespace

PiComplex number_from_json(const json& j) {
  if (j.is_number_integer()) return PiComplex(PiLinear(Rational(j.get<std::int64_t>())));
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw InputError("non-finite number");
    return PiComplex(PiLinear(rational_from_double(d)));
  }
  if (j.is_string()) return parse_number(j.get<std::string>());
  if (j.is_object() && j.contains("re")) {
    const PiLinear re = real_from_json(j.at("re"));
    const PiLinear im = j.contains("im") ? real_from_json(j.at("im")) : PiLinear();
    return {re, im};
  }
  throw InputError("expected a number, got " + j.dump());
}

PiLinear real_from_json(const json& j) {
  const PiComplex z = number_from_json(j);
  if (!z.im.is_zero()) throw InputError("expected a real number, got " + j.dump());
  return z.re;
}

Rational rational_from_json(const json& j) {
  const PiLinear x = real_from_json(j);
  if (!x.is_rational()) throw InputError("expected a rational number, got " + j.dump());
  return x.rat;
}

std::int64_t int_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  const Rational q = rational_from_json(j);
  if (denominator(q) != 1) throw InputError("expected an integer, got " + j.dump());
  const BigInt v = numerator(q);
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw InputError("integer out of range: " + j.dump());
  }
  return v.convert_to<std::int64_t>();
}

IntMatrix int_matrix_from_json(const json& j) {
  if (j.is_string()) return int_matrix_from_text(j.get<std::string>());
  return read_matrix<std::int64_t>(j, "integer matrix", int_from_json);
}

IntMatrix int_matrix_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("cannot parse matrix \"" + text + "\": " + e.what());
  }
  if (j.is_string()) throw InputError("matrix text must be a JSON array");
  return int_matrix_from_json(j);
}

TorusData torus_from_json(const json& j) {
  const json& t = field(j, "T");
  const Matrix<PiComplex> raw = read_matrix<PiComplex>(t, "T", number_from_json);
  if (!raw.square()) throw DimensionError("T must be square, got " + raw.shape());
  if (j.contains("n") && int_from_json(j.at("n")) != static_cast<std::int64_t>(raw.rows())) {
    throw DimensionError("n = " + j.at("n").dump() + " does not match T of shape " + raw.shape());
  }
  bool exact = true;
  for (std::size_t a = 0; a < raw.rows(); ++a)
    for (std::size_t b = 0; b < raw.cols(); ++b) exact = exact && raw(a, b).pi_free();
  if (exact) return TorusData(raw.map([](const PiComplex& z) { return z.rational_part(); }));
  return TorusData(raw.map([](const PiComplex& z) { return z.to_complex(); }));
}

namespace {

Cyclotomic cyclo_entry(const json& e, const std::shared_ptr<const CyclotomicField>& field) {
  if (e.is_array()) {
    std::vector<Rational> c;
    for (const auto& x : e) c.push_back(rational_from_json(x));
    if (static_cast<int>(c.size()) > field->degree()) {
      // Longer coefficient lists are reduced modulo the cyclotomic polynomial.
      Cyclotomic acc = Cyclotomic(field, std::vector<Rational>(field->degree(), Rational(0)));
      for (std::size_t k = 0; k < c.size(); ++k) acc += Cyclotomic::zeta_power(field, static_cast<long long>(k)) * Cyclotomic(c[k]);
      return acc;
    }
    c.resize(field->degree(), Rational(0));
    return {field, c};
  }
  if (e.is_object() && e.contains("zeta")) {
    const Rational coeff = e.contains("coeff") ? rational_from_json(e.at("coeff")) : Rational(1);
    return Cyclotomic::zeta_power(field, int_from_json(e.at("zeta"))) * Cyclotomic(coeff);
  }
  const Rational q = rational_from_json(e);
  std::vector<Rational> c(field->degree(), Rational(0));
  c[0] = q;
  return {field, c};
}

}  // namespace

CocycleSet cocycle_from_json(const json& j, int default_order) {
  CocycleSet set;
  set.order = j.contains("order") ? positive_int(j.at("order"), "order") : default_order;
  const auto field = CyclotomicField::get(set.order);
  auto read = [&](const char* key) {
    std::vector<CycloMatrix> out;
    for (const auto& m : array_field(j, key)) {
      out.push_back(read_matrix<Cyclotomic>(m, key, [&](const json& e) { return cyclo_entry(e, field); }));
    }
    return out;
  };
  set.V = read("V");
  set.U = read("U");
  if (j.contains("rank")) {
    set.rank = positive_int(j.at("rank"), "rank");
  } else if (!set.V.empty()) {
    set.rank = static_cast<int>(set.V[0].rows());
  }
  set.check_shapes();
  return set;
}

BundleData bundle_from_json(const json& j, const TorusData& torus) {
  BundleData b;
  b.r = positive_int(field(j, "r"), "r");
  b.A = int_matrix_from_json(field(j, "A"));
  const int n = torus.n();
  if (!b.A.square() || static_cast<int>(b.A.rows()) != n) {
    throw DimensionError("A has shape " + b.A.shape() + ", torus has n = " + std::to_string(n));
  }
  const json& mu = field(j, "mu");
  if (mu.is_array()) {
    b.mu = read_vector(mu, n, "mu", number_from_json);
  } else if (mu.is_object() && mu.contains("p")) {
    const auto p = read_vector(mu.at("p"), n, "mu.p", real_from_json);
    const auto q = read_vector(field(mu, "q"), n, "mu.q", real_from_json);
    b.mu = mu_from_pq(p, q, torus);
  } else if (mu.is_object() && mu.contains("re")) {
    const auto re = read_vector(mu.at("re"), n, "mu.re", real_from_json);
    const auto im = read_vector(field(mu, "im"), n, "mu.im", real_from_json);
    for (int i = 0; i < n; ++i) b.mu.emplace_back(re[i], im[i]);
  } else {
    throw InputError("mu must be an array or an object with re/im or p/q");
  }
  if (j.contains("cocycle") && !j.at("cocycle").is_null()) b.cocycle = cocycle_from_json(j.at("cocycle"), b.r);
  b.check(n);
  return b;
}

AffineLagrangian lagrangian_from_json(const json& j) {
  AffineLagrangian l;
  l.r = positive_int(field(j, "r"), "r");
  l.A = int_matrix_from_json(field(j, "A"));
  const int n = static_cast<int>(l.A.rows());
  l.p = read_vector(field(j, "p"), n, "p", real_from_json);
  l.q = j.contains("q") ? read_vector(j.at("q"), n, "q", real_from_json) : std::vector<PiLinear>(n);
  l.check();
  return l;
}

LatticeVector lattice_from_json(const json& j, int n) {
  LatticeVector v;
  v.m = read_vector(field(j, "m"), n, "m", int_from_json);
  v.n_prime = read_vector(field(j, "n_prime"), n, "n_prime", int_from_json);
  return v;
}

CVector point_from_json(const json& j, int n) {
  CVector z;
  for (const auto& e : read_vector(j, n, "point", number_from_json)) z.push_back(e.to_complex());
  return z;
}

json to_json(const Rational& q) { return to_string(q); }
json to_json(const QComplex& z) { return format(z); }
json to_json(const PiLinear& x) { return format(x); }
json to_json(const PiComplex& z) { return format(z); }
json to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

namespace {
template <class S>
json matrix_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if constexpr (std::is_same_v<S, std::int64_t>) {
        row.push_back(m(i, k));
      } else {
        row.push_back(to_json(m(i, k)));
      }
    }
    rows.push_back(row);
  }
  return rows;
}
}  // namespace

json to_json(const IntMatrix& m) { return matrix_json(m); }
json to_json(const QCMatrix& m) { return matrix_json(m); }
json to_json(const RatMatrix& m) { return matrix_json(m); }
json to_json(const CMatrix& m) { return matrix_json(m); }

json to_json(const Cyclotomic& c) {
  json out = json::array();
  for (const auto& q : c.coefficients()) out.push_back(to_string(q));
  return out;
}
json to_json(const CycloMatrix& m) { return matrix_json(m); }

json to_json(const exterior::FormElement& f) {
  return json{{"form", f.is_zero() ? std::string("0") : f.to_string()},
              {"inverse_4pi2_power", f.inv_4pi2_power()},
              {"degree", f.degree()}};
}

json to_json(const TorusValidation& v) {
  json out{{"valid", v.valid()},
           {"im_positive_definite", v.im_positive_definite},
           {"nonsingular", v.nonsingular},
           {"determinant", v.determinant}};
  if (v.failing_minor_order) {
    out["failing_minor"] = {{"order", *v.failing_minor_order}, {"value", v.failing_minor_value.value_or("")}};
  }
  return out;
}

json to_json(const HolomorphyReport& h) {
  return json{{"holomorphic", h.holomorphic},
              {"curvature02_symmetric", h.curvature02_symmetric},
              {"exact", h.exact},
              {"at_residual_max", max_abs(h.at_residual)},
              {"curvature02_residual_max", max_abs(h.curvature02_residual)}};
}

json to_json(const GeneratorPairings& g) {
  json out{{"n", g.n},
           {"exact", g.exact},
           {"r_real_symmetric", g.r_real_symmetric},
           {"imaginary_parts_match", g.imaginary_parts_match}};
  if (g.exact) {
    out["over_pi"] = {{"gamma_gamma", to_json(g.gamma_gamma)},
                      {"gammap_gammap", to_json(g.gammap_gammap)},
                      {"gamma_gammap", to_json(g.gamma_gammap)},
                      {"gammap_gamma", to_json(g.gammap_gamma)}};
  } else {
    out["max_deviation"] = g.max_deviation;
  }
  out["numeric"] = {{"gamma_gamma", to_json(g.gamma_gamma_num)},
                    {"gammap_gammap", to_json(g.gammap_gammap_num)},
                    {"gamma_gammap", to_json(g.gamma_gammap_num)},
                    {"gammap_gamma", to_json(g.gammap_gamma_num)}};
  return out;
}

json to_json(const CocycleReport& c) {
  json v = json::array();
  for (const auto& x : c.violations) v.push_back({{"j", x.j}, {"k", x.k}, {"relation", x.relation}});
  return json{{"valid", c.valid}, {"violations", v}};
}

json to_json(const CocycleSet& c) {
  json V = json::array(), U = json::array();
  for (const auto& m : c.V) V.push_back(to_json(m));
  for (const auto& m : c.U) U.push_back(to_json(m));
  return json{{"rank", c.rank}, {"order", c.order}, {"V", V}, {"U", U}};
}

json to_json(const ScriptA& a) {
  json out{{"symmetric", a.symmetric}, {"t2", a.t2}, {"t5", a.t5}, {"t6", a.t6}};
  if (a.exact) out["exact"] = to_json(*a.exact);
  out["numeric"] = to_json(a.numeric);
  return out;
}

json to_json(const Theorem36Constants& c) {
  auto vec = [](const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
  };
  return json{{"c", vec(c.c)},
              {"c_prime", vec(c.c_prime)},
              {"c_exponent", vec(c.c_exponent)},
              {"c_prime_exponent", vec(c.c_prime_exponent)}};
}

json to_json(const GaugeReport& g) {
  return json{{"t1_residual_max", g.t1_residual_max},
              {"t1_fd_residual_max", g.t1_fd_residual_max},
              {"conjugation_residual_max", g.conjugation_residual_max},
              {"t2", g.t2},
              {"t5", g.t5},
              {"t6", g.t6},
              {"samples", g.samples}};
}

json to_json(const MinorsReport& m) {
  json nz = json::array();
  for (const auto& q : m.nonzero) nz.push_back(json::array({q[0], q[1], q[2], q[3]}));
  return json{{"vanish", m.vanish}, {"rank", m.rank}, {"nonzero", nz}};
}

json to_json(const IntersectionResult& r) {
  json out{{"empty", r.empty},
           {"alpha_rank", r.alpha_rank},
           {"minors_vanish", r.minors_vanish},
           {"authoritative", r.authoritative}};
  if (!r.empty) out["codim"] = r.codim;
  if (!r.note.empty()) out["note"] = r.note;
  json beta = json::array();
  for (const auto& b : r.beta_used) beta.push_back(to_json(b));
  out["beta"] = beta;
  if (r.witness) {
    const auto& w = *r.witness;
    json coeffs = json::array(), part = json::array();
    for (const auto& q : w.row_coefficients) coeffs.push_back(to_json(q));
    for (const auto& x : w.particular) part.push_back(to_json(x));
    json wit{{"particular", part}, {"kernel", to_json(w.kernel)}};
    if (w.pivot_row > 0) {
      wit["pivot"] = {{"row", w.pivot_row}, {"col", w.pivot_col}};
      wit["row_coefficients"] = coeffs;
      wit["row_constant"] = to_json(w.row_constant);
    }
    out["witness"] = wit;
  }
  return out;
}

json to_json(const Theorem41Report& r) {
  return json{{"cone_pf_possible", r.cone_pf_possible},
              {"intersection", to_json(r.codim)},
              {"theorem_satisfied", r.theorem_satisfied},
              {"outside_hypothesis", r.outside_hypothesis}};
}

json to_json(const ConeFlatness& c) {
  return json{{"projectively_flat", c.pf}, {"c2_form", to_json(c.c2_form)}, {"minors", to_json(c.minors)}};
}

json to_json(const ChernChain& c) {
  return json{{"c0", c.c0},
              {"c1", c.c1},
              {"c2", c.c2},
              {"c2_prime", c.c2_prime},
              {"c2_double_prime", c.c2_double_prime},
              {"c2_reduction_consistent", c.c2_reduction_consistent}};
}

json to_json(const CiFactorization& c) {
  return json{{"factorization_holds", c.factorization_holds},
              {"matches_chern_difference", c.matches_chern_difference},
              {"left", to_json(c.left)},
              {"right", to_json(c.right)}};
}

json to_json(const Section5Report& s) {
  return json{{"eta", to_json(s.eta)},
              {"cocycle_verified", s.cocycle_verified},
              {"cone_target_ok", s.cone_target_ok},
              {"chern_ok", s.chern_ok},
              {"codim_one", s.codim_one},
              {"target_holomorphic", s.target_holomorphic},
              {"cocycle", to_json(s.cocycle)},
              {"mirror", to_json(s.mirror)},
              {"pass", s.all()}};
}

}  // namespace pfm::io
